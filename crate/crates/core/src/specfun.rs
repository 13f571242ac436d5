//! Gamma function.
//!
//! Lanczos approximation with g = 7 and nine coefficients. Relative error
//! stays below 1e-13 on (0.5, 10], which covers every argument the kernel
//! formulas need (Γ(α), Γ(α+1), Γ(2-μ), Γ(3-α) for 1 < α ≤ 2).

use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;

// Published coefficients, kept digit-for-digit.
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(x) for finite x > 0.
pub fn gamma(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::domain(format!(
            "gamma requires a finite positive argument, got {x}"
        )));
    }
    Ok(lanczos(x))
}

pub(crate) fn lanczos(x: f64) -> f64 {
    if x < 0.5 {
        // Only reached for tiny positive arguments; reflection keeps the
        // series in its accurate range.
        return PI / ((PI * x).sin() * lanczos(1.0 - x));
    }
    let z = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let w = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * w.powf(z + 0.5) * (-w).exp() * acc
}
