//! Nyström discretisation of `(Tu)(t) = λ ∫₀¹ G(t,s) f(s, u(s)) ds`.
//!
//! `u` enters through its piecewise-linear interpolant, so every grid node is
//! a quadrature breakpoint along with `η`. All rows share one node set; the
//! only row-specific nodes are the graded panel just left of `t_i`. Kernel
//! weights are computed once per operator and reused across iterations.

use rayon::prelude::*;

use super::grid::GridFunction;
use super::source::SourceFunction;
use crate::error::{Error, Result};
use crate::green::ModelParams;
use crate::quad::{breakpoints, segment_panels, Panel, QuadSpec, GL_NODES};

#[derive(Debug, Clone, Copy)]
struct Node {
    s: f64,
    cell: usize,
    theta: f64,
}

#[derive(Debug, Clone)]
struct Row {
    /// `ω_k·G(t_i, s_k)` for every shared node.
    weights: Vec<f64>,
    /// Graded replacement nodes with their kernel-weighted quadrature weights.
    extra: Vec<(Node, f64)>,
}

/// The operator `T` on a fixed uniform grid.
#[derive(Debug, Clone)]
pub struct HammersteinOperator {
    params: ModelParams,
    n: usize,
    quad: QuadSpec,
    shared: Vec<Node>,
    rows: Vec<Row>,
}

impl HammersteinOperator {
    pub fn new(params: &ModelParams, n: usize, quad: &QuadSpec) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain(format!("grid needs n >= 2, got {n}")));
        }
        let eta = params.eta();
        let locate = |s: f64| {
            let x = s * n as f64;
            let cell = (x.floor() as usize).min(n - 1);
            Node {
                s,
                cell,
                theta: x - cell as f64,
            }
        };

        let bp = breakpoints((1..n).map(|i| i as f64 / n as f64).chain([eta]));
        let mut shared_panels: Vec<Panel> = Vec::new();
        // For each segment: (a, b, first node index of its last panel), only
        // for segments whose last panel is not already graded.
        let mut ungraded_tail: Vec<(f64, f64, usize)> = Vec::new();
        for pair in bp.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let graded = b == eta;
            segment_panels(a, b, graded, quad, &mut shared_panels);
            if !graded {
                let tail = (shared_panels.len() - 1) * GL_NODES;
                ungraded_tail.push((a, b, tail));
            }
        }
        let mut shared = Vec::with_capacity(shared_panels.len() * GL_NODES);
        let mut omega = Vec::with_capacity(shared_panels.len() * GL_NODES);
        for panel in &shared_panels {
            for (s, w) in panel.nodes() {
                shared.push(locate(s));
                omega.push(w);
            }
        }

        let rows = (0..=n)
            .into_par_iter()
            .map(|i| {
                let t = i as f64 / n as f64;
                let mut weights: Vec<f64> = shared
                    .iter()
                    .zip(&omega)
                    .map(|(node, w)| w * params.green(t, node.s))
                    .collect();
                let mut extra = Vec::new();
                if let Some(&(a, b, tail)) = ungraded_tail.iter().find(|seg| seg.1 == t) {
                    weights[tail..tail + GL_NODES].fill(0.0);
                    let mut graded = Vec::new();
                    segment_panels(a, b, true, quad, &mut graded);
                    for panel in &graded[quad.panels_per_segment() - 1..] {
                        for (s, w) in panel.nodes() {
                            extra.push((locate(s), w * params.green(t, s)));
                        }
                    }
                }
                Row { weights, extra }
            })
            .collect();

        Ok(HammersteinOperator {
            params: *params,
            n,
            quad: *quad,
            shared,
            rows,
        })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn quad(&self) -> &QuadSpec {
        &self.quad
    }

    /// `Tu` on the operator's grid.
    pub fn apply(&self, f: &SourceFunction, u: &GridFunction) -> Result<GridFunction> {
        if u.n() != self.n {
            return Err(Error::GridMismatch {
                left: self.n,
                right: u.n(),
            });
        }
        // The interpolant lies between neighbouring node values, and every
        // catalog domain is an interval, so checking nodes suffices.
        if let Some((i, &ui)) = u.values().iter().enumerate().find(|(_, &v)| !f.admits(v)) {
            return Err(Error::SourceDomain {
                source_fn: f.to_string(),
                t: u.t(i),
                u: ui,
                grid_index: Some(i),
            });
        }
        let vals = u.values();
        let eval = |node: &Node| {
            let ub = (1.0 - node.theta) * vals[node.cell] + node.theta * vals[node.cell + 1];
            f.eval_unchecked(node.s, ub)
        };
        let fvals: Vec<f64> = self.shared.iter().map(eval).collect();
        let lambda = self.params.lambda();
        let out: Vec<f64> = self
            .rows
            .par_iter()
            .map(|row| {
                let mut acc = 0.0;
                for (w, fv) in row.weights.iter().zip(&fvals) {
                    acc += w * fv;
                }
                for (node, w) in &row.extra {
                    acc += w * eval(node);
                }
                lambda * acc
            })
            .collect();
        GridFunction::new(out)
    }
}

/// One application of `T`; builds a throwaway operator.
pub fn apply_t(
    p: &ModelParams,
    f: &SourceFunction,
    u: &GridFunction,
    q: &QuadSpec,
) -> Result<GridFunction> {
    HammersteinOperator::new(p, u.n(), q)?.apply(f, u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::green::{bound_k, kernel_integral_closed};
    use crate::quad::integrate_kernel;

    fn ex() -> ModelParams {
        ModelParams::new(1.5, 0.8, 0.5, 3.2).unwrap()
    }

    #[test]
    fn constant_source_matches_closed_form() {
        let q = QuadSpec::default();
        for (p, n) in [
            (ex(), 64),
            (ModelParams::new(1.3, 1.1, 0.37, 2.0).unwrap(), 50),
        ] {
            let u = GridFunction::from_fn(n, |t| t.sin()).unwrap();
            let tu = apply_t(&p, &SourceFunction::Constant(2.0), &u, &q).unwrap();
            for (i, &v) in tu.values().iter().enumerate() {
                let want = p.lambda() * 2.0 * kernel_integral_closed(&p, u.t(i)).unwrap();
                assert!(((v - want) / want).abs() < 1e-7, "i = {i}: {v} vs {want}");
            }
        }
    }

    #[test]
    fn unit_source_at_t_one() {
        let p = ex();
        let u = GridFunction::zeros(32).unwrap();
        let tu = apply_t(&p, &SourceFunction::Constant(1.0), &u, &QuadSpec::default()).unwrap();
        let last = *tu.values().last().unwrap();
        assert!((last - 3.2 * bound_k(&p)).abs() < 1e-7);
        assert!((last - 1.003_867_975_052_63).abs() < 1e-7);
    }

    #[test]
    fn zero_input_affine_source() {
        let p = ex();
        let u = GridFunction::zeros(16).unwrap();
        let f = SourceFunction::affine(0.0, 1.0).unwrap();
        let tu = apply_t(&p, &f, &u, &QuadSpec::default()).unwrap();
        assert!(tu.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn agrees_with_direct_kernel_quadrature() {
        // Integrand is piecewise linear in s, so the direct rule with grid
        // breakpoints would be exact; the plain rule without them only
        // approximately so. Compare on a smooth u where both are accurate.
        let p = ModelParams::new(1.7, 0.9, 0.25, 1.5).unwrap();
        let q = QuadSpec::default();
        let n = 200;
        let u = GridFunction::from_fn(n, |t| 1.0 + 0.5 * t * t).unwrap();
        let f = SourceFunction::affine(0.5, 0.2).unwrap();
        let tu = apply_t(&p, &f, &u, &q).unwrap();
        for i in [0, 37, 50, 123, 200] {
            let t = u.t(i);
            let direct =
                p.lambda() * integrate_kernel(&p, t, |s| 0.5 + 0.2 * u.interpolate(s), &q).unwrap();
            assert!((tu.values()[i] - direct).abs() < 1e-6, "i = {i}");
        }
    }

    #[test]
    fn domain_violation_names_grid_point() {
        let p = ex();
        let mut vals = vec![0.0; 17];
        vals[5] = 25.0;
        let u = GridFunction::new(vals).unwrap();
        match apply_t(&p, &SourceFunction::Reference, &u, &QuadSpec::default()) {
            Err(Error::SourceDomain { grid_index, .. }) => assert_eq!(grid_index, Some(5)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn grid_mismatch_is_rejected() {
        let op = HammersteinOperator::new(&ex(), 8, &QuadSpec::default()).unwrap();
        let u = GridFunction::zeros(16).unwrap();
        assert!(matches!(
            op.apply(&SourceFunction::Constant(1.0), &u),
            Err(Error::GridMismatch { .. })
        ));
    }

    #[test]
    fn output_nonnegative_for_nonnegative_source() {
        let p = ModelParams::new(1.2, 0.95, 0.9, 1.0).unwrap();
        let u = GridFunction::from_fn(40, |t| (7.0 * t).cos()).unwrap();
        let f = SourceFunction::affine(1.0, 1.0).unwrap();
        // f(s, ū(s)) ≥ 0 since ū ≥ -1
        let tu = apply_t(&p, &f, &u, &QuadSpec::default()).unwrap();
        assert!(tu.min() >= 0.0);
    }
}
