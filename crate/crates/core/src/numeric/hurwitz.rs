use num_complex::Complex64;

use super::{check_shift, distance_ratio, sign_power, term_constant, ComplexPoint, Estimate};
use crate::error::{Error, Result};

/// Smallest excess `Σ_{l≥j} Re s_l - (r - j)` over the convergence bound of
/// the depth-`r` series (0-based `j`).
fn margin(s: &[Complex64]) -> f64 {
    let r = s.len();
    let mut tail = 0.0;
    let mut best = f64::INFINITY;
    for j in (0..r).rev() {
        tail += s[j].re;
        best = best.min(tail - (r - j) as f64);
    }
    best
}

/// Truncation-error estimate for `ζ(s; t)` cut at `n_r ≤ n`; requires a
/// convergence margin of at least 1.
fn series_budget(s: &[Complex64], t: Complex64, n: u64) -> Result<f64> {
    if s.is_empty() {
        return Ok(0.0);
    }
    let m = margin(s);
    if m < 1.0 - 1e-12 {
        return Err(Error::Domain(format!(
            "series arguments {s:?} need real tail sums at least 1 above the convergence bound (margin {m:.3})"
        )));
    }
    let delta = distance_ratio(t);
    let k: f64 = 2.0 * s.iter().map(|&sl| term_constant(sl, delta)).product::<f64>();
    let n = n.max(1) as f64;
    Ok(k * n.powf(-m) / m * (1.0 + n.ln()).powi(s.len() as i32 - 1))
}

/// `[ζ(s_1..s_i; t)]_{i=0..r}` truncated at `n_i ≤ n`, by the nested DP
/// `S_j(m) = S_j(m-1) + (m - t)^{-s_j} S_{j-1}(m-1)`.
fn prefix_values(s: &[Complex64], t: Complex64, n: u64) -> Vec<Complex64> {
    let r = s.len();
    let mut acc = vec![Complex64::new(0.0, 0.0); r + 1];
    acc[0] = Complex64::new(1.0, 0.0);
    for m in 1..=n {
        let lg = (m as f64 - t).ln();
        for j in (1..=r).rev() {
            let prev = acc[j - 1];
            if prev != Complex64::new(0.0, 0.0) {
                acc[j] += (-s[j - 1] * lg).exp() * prev;
            }
        }
    }
    acc
}

/// `ζ(s_1, …, s_r; t) = Σ_{0<n_1<⋯<n_r} Π (n_j - t)^{-s_j}` truncated at
/// `n_r ≤ n`, with principal-branch powers.
pub fn hurwitz_mzv_series(s: &[Complex64], t: Complex64, n: u64) -> Result<Estimate> {
    check_shift(t)?;
    let budget = series_budget(s, t, n)?;
    let value = prefix_values(s, t, n)[s.len()];
    Ok(Estimate { value, budget })
}

/// `ζ_Û(s; t₊, t₋) = Σ_{i=0}^{r} (-1)^{s_{i+1}+⋯+s_r} ζ(s_1..s_i; -t₊) ζ(s_r..s_{i+1}; t₋)`
/// with every factor truncated at `n`.
pub fn zeta_hatu_numeric(pt: &ComplexPoint, n: u64) -> Result<Estimate> {
    let s = pt.s();
    let r = s.len();
    let reversed: Vec<Complex64> = s.iter().rev().copied().collect();
    let t_left = -pt.t_plus();
    let t_right = pt.t_minus();
    let left = prefix_values(s, t_left, n);
    let right = prefix_values(&reversed, t_right, n);
    let mut value = Complex64::new(0.0, 0.0);
    let mut budget = 0.0;
    for i in 0..=r {
        let phase = sign_power(s[i..].iter().sum());
        let (l, r_val) = (left[i], right[r - i]);
        let bl = series_budget(&s[..i], t_left, n)?;
        let br = series_budget(&reversed[..r - i], t_right, n)?;
        value += phase * l * r_val;
        budget += phase.norm() * (bl * r_val.norm() + br * l.norm() + bl * br);
    }
    Ok(Estimate { value, budget })
}
