use serde::Serialize;

use crate::error::{Error, Result};

/// Real values on the uniform grid `t_i = i/n`, `i = 0..=n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridFunction {
    n: usize,
    values: Vec<f64>,
}

impl GridFunction {
    /// `values.len()` must be `n + 1` with `n ≥ 2`, all finite.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 3 {
            return Err(Error::domain(format!(
                "a grid function needs at least 3 nodes, got {}",
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::domain(format!(
                "grid value {i} is not finite: {}",
                values[i]
            )));
        }
        Ok(GridFunction {
            n: values.len() - 1,
            values,
        })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::constant(n, 0.0)
    }

    pub fn constant(n: usize, c: f64) -> Result<Self> {
        Self::new(vec![c; n + 1])
    }

    /// Samples `f` at every node.
    pub fn from_fn(n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new((0..=n).map(|i| f(i as f64 / n as f64)).collect())
    }

    /// Number of intervals.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> f64 {
        1.0 / self.n as f64
    }

    pub fn t(&self, i: usize) -> f64 {
        i as f64 / self.n as f64
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn nodes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.values.iter().enumerate().map(|(i, &v)| (self.t(i), v))
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Cell index `j` and local coordinate `θ ∈ [0, 1]` with `t = (j + θ)/n`.
    #[inline]
    pub(crate) fn locate(&self, t: f64) -> (usize, f64) {
        let x = (t.clamp(0.0, 1.0) * self.n as f64).min(self.n as f64);
        let j = (x.floor() as usize).min(self.n - 1);
        (j, x - j as f64)
    }

    /// Piecewise-linear interpolant at `t`, clamped to `[0, 1]`.
    pub fn interpolate(&self, t: f64) -> f64 {
        let (j, theta) = self.locate(t);
        (1.0 - theta) * self.values[j] + theta * self.values[j + 1]
    }
}

/// `max_i |u_i − v_i|`.
pub fn sup_norm_distance(u: &GridFunction, v: &GridFunction) -> Result<f64> {
    if u.n != v.n {
        return Err(Error::GridMismatch {
            left: u.n,
            right: v.n,
        });
    }
    Ok(u.values
        .iter()
        .zip(&v.values)
        .fold(0.0, |m, (a, b)| m.max((a - b).abs())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distances() {
        let z = GridFunction::zeros(10).unwrap();
        let three = GridFunction::constant(10, 3.0).unwrap();
        assert_eq!(sup_norm_distance(&z, &z).unwrap(), 0.0);
        assert_eq!(sup_norm_distance(&z, &three).unwrap(), 3.0);
        let t = GridFunction::from_fn(100, |t| t).unwrap();
        let t2 = GridFunction::from_fn(100, |t| t * t).unwrap();
        assert!((sup_norm_distance(&t, &t2).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn grid_mismatch() {
        let a = GridFunction::zeros(4).unwrap();
        let b = GridFunction::zeros(8).unwrap();
        assert!(matches!(
            sup_norm_distance(&a, &b),
            Err(Error::GridMismatch { left: 4, right: 8 })
        ));
    }

    #[test]
    fn rejects_bad_values() {
        assert!(GridFunction::new(vec![0.0, 1.0]).is_err());
        assert!(GridFunction::new(vec![0.0, f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn interpolation_is_exact_for_lines() {
        let u = GridFunction::from_fn(7, |t| 2.0 - 3.0 * t).unwrap();
        for i in 0..=100 {
            let t = i as f64 / 100.0;
            assert!((u.interpolate(t) - (2.0 - 3.0 * t)).abs() < 1e-14);
        }
        assert_eq!(u.interpolate(1.0), u.values()[7]);
    }

    #[test]
    fn norms() {
        let u = GridFunction::new(vec![1.0, -4.0, 2.0]).unwrap();
        assert_eq!(u.sup_norm(), 4.0);
        assert_eq!(u.min(), -4.0);
        assert_eq!(u.max(), 2.0);
        assert_eq!(u.h(), 0.5);
    }
}
