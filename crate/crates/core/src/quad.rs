//! Composite Gauss–Legendre quadrature for kernel rows `s ↦ G(t,s)·w(s)`.
//!
//! The kernel is only piecewise smooth: it has seams at `s = t` and `s = η`,
//! and just left of each seam the factor `(seam − s)^{α−1}` has an unbounded
//! derivative when α < 2. Every seam is therefore a mandatory breakpoint, and
//! the panel abutting a seam from the left is replaced by a geometric
//! refinement toward it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::green::ModelParams;

/// Nodes per panel.
pub const GL_NODES: usize = 4;

const GL_X: [f64; GL_NODES] = [
    -0.861_136_311_594_052_6,
    -0.339_981_043_584_856_3,
    0.339_981_043_584_856_3,
    0.861_136_311_594_052_6,
];
const GL_W: [f64; GL_NODES] = [
    0.347_854_845_137_453_86,
    0.652_145_154_862_546_1,
    0.652_145_154_862_546_1,
    0.347_854_845_137_453_86,
];

const GRADING_RATIO: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadSpec {
    panels_per_segment: usize,
    grading_levels: usize,
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec {
            panels_per_segment: 8,
            grading_levels: 16,
        }
    }
}

impl QuadSpec {
    pub fn new(panels_per_segment: usize, grading_levels: usize) -> Result<Self> {
        if panels_per_segment == 0 {
            return Err(Error::domain("panels_per_segment must be at least 1"));
        }
        Ok(QuadSpec {
            panels_per_segment,
            grading_levels,
        })
    }

    pub fn panels_per_segment(&self) -> usize {
        self.panels_per_segment
    }

    pub fn grading_levels(&self) -> usize {
        self.grading_levels
    }
}

/// A closed integration panel `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Panel {
    pub a: f64,
    pub b: f64,
}

impl Panel {
    /// Gauss–Legendre nodes and weights mapped onto the panel.
    #[inline]
    pub fn nodes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let mid = 0.5 * (self.a + self.b);
        let half = 0.5 * (self.b - self.a);
        GL_X.iter()
            .zip(GL_W.iter())
            .map(move |(x, w)| (mid + half * x, half * w))
    }
}

/// Splits `[a, b]` into uniform panels; when `graded` the last panel is
/// replaced by a geometric sequence shrinking toward `b`.
pub(crate) fn segment_panels(a: f64, b: f64, graded: bool, q: &QuadSpec, out: &mut Vec<Panel>) {
    let n = q.panels_per_segment;
    let width = (b - a) / n as f64;
    let uniform = if graded { n - 1 } else { n };
    for i in 0..uniform {
        let lo = a + width * i as f64;
        let hi = if i + 1 == n {
            b
        } else {
            a + width * (i + 1) as f64
        };
        out.push(Panel { a: lo, b: hi });
    }
    if graded {
        let start = if n == 1 {
            a
        } else {
            a + width * (n - 1) as f64
        };
        let len = b - start;
        let mut lo = start;
        for level in 1..=q.grading_levels {
            let hi = b - len * GRADING_RATIO.powi(level as i32);
            out.push(Panel { a: lo, b: hi });
            lo = hi;
        }
        out.push(Panel { a: lo, b });
    }
}

/// Sorted, deduplicated breakpoints of `[0, 1]`: the endpoints plus every
/// given point inside the open interval.
pub(crate) fn breakpoints(points: impl IntoIterator<Item = f64>) -> Vec<f64> {
    let mut bp = vec![0.0, 1.0];
    bp.extend(points.into_iter().filter(|&x| x > 0.0 && x < 1.0));
    bp.sort_by(f64::total_cmp);
    bp.dedup();
    bp
}

/// Panels covering `[0, 1]` for the kernel row at `t`.
pub(crate) fn kernel_panels(t: f64, eta: f64, q: &QuadSpec) -> Vec<Panel> {
    let bp = breakpoints([t, eta]);
    let mut panels = Vec::new();
    for pair in bp.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let graded = b == t || b == eta;
        segment_panels(a, b, graded, q, &mut panels);
    }
    panels
}

/// `∫₀¹ G(t,s)·w(s) ds`.
///
/// `w` is only sampled at interior Gauss nodes, never on a seam.
pub fn integrate_kernel<W>(p: &ModelParams, t: f64, w: W, q: &QuadSpec) -> Result<f64>
where
    W: Fn(f64) -> f64,
{
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::domain(format!("t must lie in [0, 1], got {t}")));
    }
    let mut sum = 0.0;
    for panel in kernel_panels(t, p.eta(), q) {
        for (s, weight) in panel.nodes() {
            let ws = w(s);
            if !ws.is_finite() {
                return Err(Error::NonFiniteIntegrand { s, value: ws });
            }
            sum += weight * p.green(t, s) * ws;
        }
    }
    Ok(sum)
}

/// Plain composite Gauss–Legendre `∫ₐᵇ w(s) ds` with `panels_per_segment` panels.
pub fn integrate<W>(a: f64, b: f64, w: W, q: &QuadSpec) -> Result<f64>
where
    W: Fn(f64) -> f64,
{
    if !(a.is_finite() && b.is_finite() && a <= b) {
        return Err(Error::domain(format!("bad interval [{a}, {b}]")));
    }
    let mut panels = Vec::with_capacity(q.panels_per_segment);
    segment_panels(a, b, false, q, &mut panels);
    let mut sum = 0.0;
    for panel in &panels {
        for (s, weight) in panel.nodes() {
            let ws = w(s);
            if !ws.is_finite() {
                return Err(Error::NonFiniteIntegrand { s, value: ws });
            }
            sum += weight * ws;
        }
    }
    Ok(sum)
}
