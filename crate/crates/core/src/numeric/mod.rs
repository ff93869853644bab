//! Double-precision evaluation of the Hurwitz-type multiple zeta series, the
//! two-sided function `ζ_Û(s; t₊, t₋)` built from it, and a numerical check
//! of the depth-lowering identity at a non-positive integer slot.
//!
//! Every evaluation returns an [`Estimate`]: the truncated value together
//! with an estimate of the truncation error obtained by comparing the tail
//! with an integral.

mod hurwitz;
mod lattice;
mod slot;
mod identity;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use hurwitz::{hurwitz_mzv_series, zeta_hatu_numeric};
pub use lattice::{LatticePoint, Side};
pub use slot::{f_ab_closed, zeta_hatu_at_negative_slot, zeta_hatu_nonpositive};
pub use identity::{check_identity, sample_points, IdentityCase, IdentityCheck, IdentitySample};

/// A truncated value with its estimated truncation error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub budget: f64,
}

/// Arguments and shift parameters of `ζ_Û`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPoint {
    s: Vec<Complex64>,
    t_plus: Complex64,
    t_minus: Complex64,
}

impl ComplexPoint {
    /// Checks `t₊ ∉ (-∞, -1]` and `t₋ ∉ [1, ∞)`.
    pub fn new(s: Vec<Complex64>, t_plus: Complex64, t_minus: Complex64) -> Result<Self> {
        if t_plus.im == 0.0 && t_plus.re <= -1.0 {
            return Err(Error::Domain(format!("t₊ = {t_plus} lies on (-∞, -1]")));
        }
        check_shift(t_minus)?;
        Ok(Self { s, t_plus, t_minus })
    }

    pub fn s(&self) -> &[Complex64] {
        &self.s
    }

    pub fn t_plus(&self) -> Complex64 {
        self.t_plus
    }

    pub fn t_minus(&self) -> Complex64 {
        self.t_minus
    }

    pub fn depth(&self) -> usize {
        self.s.len()
    }
}

/// A series shift `t` must avoid `[1, ∞)`.
fn check_shift(t: Complex64) -> Result<()> {
    if t.im == 0.0 && t.re >= 1.0 {
        return Err(Error::Domain(format!("shift {t} lies on [1, ∞)")));
    }
    Ok(())
}

/// `z^k` with `0^0 = 1`.
fn cpow_u(z: Complex64, k: u32) -> Complex64 {
    (0..k).fold(Complex64::new(1.0, 0.0), |acc, _| acc * z)
}

/// `(-1)^s = e^{πis}`.
fn sign_power(s: Complex64) -> Complex64 {
    (Complex64::i() * std::f64::consts::PI * s).exp()
}

/// `min_{n≥1} |n - t| / n`, so that `|n - t| ≥ δ n` for every `n ≥ 1`.
fn distance_ratio(t: Complex64) -> f64 {
    let mut best: f64 = 1.0;
    for n in 1..=64u32 {
        let n = n as f64;
        best = best.min((Complex64::new(n, 0.0) - t).norm() / n);
    }
    best
}

/// Bound on `|(n - t)^{-s}| · n^{Re s}` over `n ≥ 1`.
fn term_constant(s: Complex64, delta: f64) -> f64 {
    delta.powf(-s.re).max(1.0) * (std::f64::consts::PI * s.im.abs()).exp()
}
