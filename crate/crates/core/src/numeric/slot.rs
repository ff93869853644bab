use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::{cpow_u, distance_ratio, term_constant, ComplexPoint, Estimate, LatticePoint};
use crate::arith::bernoulli::faulhaber_weights;
use crate::error::{Error, Result};

fn weights(k: u32) -> Vec<f64> {
    faulhaber_weights(k).iter().map(|w| w.to_f64().expect("finite weight")).collect()
}

/// `Σ_j w_j (-1)^j b^{k+1-j}`, the upper-endpoint half of the closed form.
fn upper(w: &[f64], k: u32, b: Complex64) -> Complex64 {
    w.iter()
        .enumerate()
        .map(|(j, wj)| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            cpow_u(b, k + 1 - j as u32) * (wj * sign)
        })
        .sum()
}

/// `Σ_j w_j a^{k+1-j}`, the lower-endpoint half of the closed form.
fn lower(w: &[f64], k: u32, a: Complex64) -> Complex64 {
    w.iter().enumerate().map(|(j, wj)| cpow_u(a, k + 1 - j as u32) * *wj).sum()
}

/// `F_a^b(-k) = Σ_{a≺c≺b} c^k` in closed form,
/// `(1/(k+1)) Σ_j C(k+1,j) B_j ((-1)^j b^{k+1-j} - a^{k+1-j})`.
pub fn f_ab_closed(
    k: u32,
    a: LatticePoint,
    b: LatticePoint,
    t_plus: Complex64,
    t_minus: Complex64,
) -> Result<Complex64> {
    if a >= b {
        return Err(Error::OrderViolation);
    }
    let w = weights(k);
    Ok(upper(&w, k, b.value(t_plus, t_minus)) - lower(&w, k, a.value(t_plus, t_minus)))
}

/// Reads a slot value `-k` with `k` a non-negative integer.
fn nonpositive_slot(v: Complex64) -> Result<u32> {
    let k = -v.re;
    if v.im != 0.0 || k < 0.0 || k.fract() != 0.0 || k > u32::MAX as f64 {
        return Err(Error::Domain(format!("slot value {v} is not a non-positive integer")));
    }
    Ok(k as u32)
}

/// `ζ_Û(s; t₊, t₋)` with `s[slot] = -k`, from the ordered-tuple sum
///
/// ```text
/// Σ_{t₊≺a_1≺⋯≺a_{i-1}≺a_{i+1}≺⋯≺a_r≺t₋} F_{a_{i-1}}^{a_{i+1}}(-k) / Π_{j≠i} a_j^{s_j}
/// ```
///
/// over the lattice truncated at `n` points per side (`slot` is 0-based,
/// `a_0 = t₊`, `a_{r+1} = t₋`). Chains to the left and right of the slot
/// are accumulated by prefix-sum DPs; the pairs of neighbours are split by
/// side. When both neighbours lie on the same side, `F` is the literal
/// finite power sum; when they straddle, it is the closed form.
///
/// Requires `Re s_j > k + 2` for every `j ≠ slot`.
pub fn zeta_hatu_at_negative_slot(pt: &ComplexPoint, slot: usize, n: u64) -> Result<Estimate> {
    let s = pt.s();
    let r = s.len();
    if slot >= r {
        return Err(Error::Domain(format!("slot {slot} out of range for depth {r}")));
    }
    let k = nonpositive_slot(s[slot])?;
    if let Some(bad) = s.iter().enumerate().find(|&(j, sj)| j != slot && sj.re <= k as f64 + 2.0) {
        return Err(Error::Domain(format!(
            "Re s_{} = {} must exceed {}",
            bad.0 + 1,
            bad.1.re,
            k + 2
        )));
    }
    let (tp, tm) = (pt.t_plus(), pt.t_minus());
    let w = weights(k);
    let size = 2 * n as usize + 2;
    let last = size - 1;
    let nn = n as usize;
    let point = |p: usize| -> LatticePoint {
        if p <= nn {
            LatticePoint::plus(p as u64)
        } else {
            LatticePoint::minus((last - p) as u64)
        }
    };
    let zero = Complex64::new(0.0, 0.0);

    let mut left = vec![zero; size];
    left[0] = Complex64::new(1.0, 0.0);
    for &sj in &s[..slot] {
        let mut acc = zero;
        let mut next = vec![zero; size];
        for p in 1..last {
            acc += left[p - 1];
            next[p] = point(p).inv_pow(sj, tp, tm) * acc;
        }
        left = next;
    }
    let mut right = vec![zero; size];
    right[last] = Complex64::new(1.0, 0.0);
    for &sj in s[slot + 1..].iter().rev() {
        let mut acc = zero;
        let mut next = vec![zero; size];
        for p in (1..last).rev() {
            acc += right[p + 1];
            next[p] = point(p).inv_pow(sj, tp, tm) * acc;
        }
        right = next;
    }
    let power = |p: usize| cpow_u(point(p).value(tp, tm), k);

    // both neighbours on the plus side: F = S(q-1) - S(p), S a prefix sum from t₊
    let mut plus_block = zero;
    let (mut mass, mut weighted, mut prefix) = (left[0], zero, zero);
    for q in 1..=nn {
        plus_block += right[q] * (prefix * mass - weighted);
        prefix += power(q);
        mass += left[q];
        weighted += left[q] * prefix;
    }

    // both on the minus side: F = T(p+1) - T(q), T a suffix sum towards t₋
    let mut minus_block = zero;
    let (mut mass, mut weighted, mut suffix) = (right[last], zero, zero);
    for p in (nn + 1..last).rev() {
        minus_block += left[p] * (suffix * mass - weighted);
        suffix += power(p);
        mass += right[p];
        weighted += right[p] * suffix;
    }

    // straddling pairs: F = upper(b) - lower(a) separates
    let (mut l_sum, mut l_low) = (zero, zero);
    for (p, lp) in left.iter().enumerate().take(nn + 1) {
        l_sum += lp;
        l_low += lp * lower(&w, k, point(p).value(tp, tm));
    }
    let (mut r_sum, mut r_up) = (zero, zero);
    for (q, rq) in right.iter().enumerate().skip(nn + 1) {
        r_sum += rq;
        r_up += rq * upper(&w, k, point(q).value(tp, tm));
    }
    let value = plus_block + minus_block + l_sum * r_up - l_low * r_sum;
    Ok(Estimate { value, budget: slot_budget(pt, slot, k, n) })
}

/// Tail estimate: a neighbour `c` beyond `n` contributes at most about
/// `|F| |c|^{-Re s} ≤ Σ|w_j| |c|^{k+1-Re s}`, summing to `n^{k+2-σ}` with
/// `σ` the smallest real part off the slot; the remaining chains converge
/// absolutely and are bounded by `Π (1 + 1/(σ_j - 1))`.
fn slot_budget(pt: &ComplexPoint, slot: usize, k: u32, n: u64) -> f64 {
    let s = pt.s();
    if s.len() == 1 {
        return 0.0;
    }
    let delta = distance_ratio(-pt.t_plus()).min(distance_ratio(pt.t_minus()));
    let others: Vec<Complex64> =
        s.iter().enumerate().filter(|&(j, _)| j != slot).map(|(_, sj)| *sj).collect();
    let sigma = others.iter().map(|sj| sj.re).fold(f64::INFINITY, f64::min);
    let excess = sigma - k as f64 - 2.0;
    let scale = 1.0 + pt.t_plus().norm().max(pt.t_minus().norm());
    let weight: f64 = weights(k).iter().map(|w| w.abs()).sum();
    let chains: f64 = others
        .iter()
        .map(|sj| term_constant(*sj, delta) * (1.0 + 1.0 / (sj.re - 1.0)))
        .product();
    let n = n.max(1) as f64;
    2.0 * weight * scale.powi(k as i32 + 1) * chains * n.powf(-excess) / excess
}

/// `ζ_Û(-k_1, …, -k_r; t₊, t₋)` by composing closed-form `F` factors from
/// the right: the inner sums are polynomials in the left endpoint, so the
/// whole value is a finite computation valid for any shifts.
pub fn zeta_hatu_nonpositive(k: &[u32], t_plus: Complex64, t_minus: Complex64) -> Complex64 {
    // coefficients of a polynomial in the left endpoint, constant first
    let mut q = vec![Complex64::new(1.0, 0.0)];
    for &kj in k.iter().rev() {
        let top = q.len() as u32 + kj;
        let mut next = vec![Complex64::new(0.0, 0.0); top as usize + 1];
        for (m, qm) in q.iter().enumerate() {
            let e = kj + m as u32;
            let w = weights(e);
            next[0] += qm * upper(&w, e, t_minus);
            for (j, wj) in w.iter().enumerate() {
                next[(e + 1) as usize - j] -= qm * *wj;
            }
        }
        q = next;
    }
    q.iter().enumerate().map(|(m, c)| c * cpow_u(t_plus, m as u32)).sum()
}
