use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::slot::zeta_hatu_at_negative_slot;
use super::{cpow_u, zeta_hatu_numeric, ComplexPoint, Estimate};
use crate::arith::bernoulli::faulhaber_weights;
use crate::error::{Error, Result};
use num_traits::ToPrimitive;

/// Which slot carries the non-positive integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IdentityCase {
    Head,
    Middle,
    Tail,
}

impl IdentityCase {
    pub const ALL: [IdentityCase; 3] = [IdentityCase::Head, IdentityCase::Middle, IdentityCase::Tail];

    fn of_slot(slot: usize, depth: usize) -> Self {
        if slot == 0 {
            IdentityCase::Head
        } else if slot + 1 == depth {
            IdentityCase::Tail
        } else {
            IdentityCase::Middle
        }
    }
}

impl fmt::Display for IdentityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IdentityCase::Head => "head",
            IdentityCase::Middle => "middle",
            IdentityCase::Tail => "tail",
        })
    }
}

impl FromStr for IdentityCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "head" => Ok(IdentityCase::Head),
            "middle" => Ok(IdentityCase::Middle),
            "tail" => Ok(IdentityCase::Tail),
            other => Err(Error::Parse { position: 0, message: format!("unknown case '{other}'") }),
        }
    }
}

/// Outcome of comparing both sides of the identity at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IdentityCheck {
    pub case: IdentityCase,
    pub lhs: Estimate,
    pub rhs: Estimate,
    pub residual: f64,
    /// Combined truncation budget of both sides.
    pub budget: f64,
}

fn shifted(s: &[Complex64], pos: usize, by: i64) -> Vec<Complex64> {
    let mut out = s.to_vec();
    out[pos] += by as f64;
    out
}

fn hatu(s: Vec<Complex64>, pt: &ComplexPoint, n: u64) -> Result<Estimate> {
    zeta_hatu_numeric(&ComplexPoint::new(s, pt.t_plus(), pt.t_minus())?, n)
}

/// Right side of the depth-lowering identity: a Bernoulli-weighted sum of
/// depth `r-1` values.
fn rhs(pt: &ComplexPoint, slot: usize, k: u32, n: u64) -> Result<Estimate> {
    let s = pt.s();
    let r = s.len();
    let mut rest = s.to_vec();
    rest.remove(slot);
    let w: Vec<f64> = faulhaber_weights(k).iter().map(|x| x.to_f64().expect("finite")).collect();
    let mut value = Complex64::new(0.0, 0.0);
    let mut budget = 0.0;
    let mut add = |coef: Complex64, e: Estimate| {
        value += coef * e.value;
        budget += coef.norm() * e.budget;
    };
    let case = IdentityCase::of_slot(slot, r);
    let plain = match case {
        IdentityCase::Middle => None,
        _ => Some(hatu(rest.clone(), pt, n)?),
    };
    for (j, &wj) in w.iter().enumerate() {
        let sign = if j % 2 == 0 { wj } else { -wj };
        let drop = j as i64 - k as i64 - 1;
        let e = k + 1 - j as u32;
        match case {
            IdentityCase::Head => {
                add(Complex64::new(sign, 0.0), hatu(shifted(&rest, 0, drop), pt, n)?);
                add(-cpow_u(pt.t_plus(), e) * wj, plain.expect("head uses the plain value"));
            }
            IdentityCase::Middle => {
                add(Complex64::new(sign, 0.0), hatu(shifted(&rest, slot, drop), pt, n)?);
                add(Complex64::new(-wj, 0.0), hatu(shifted(&rest, slot - 1, drop), pt, n)?);
            }
            IdentityCase::Tail => {
                add(cpow_u(pt.t_minus(), e) * sign, plain.expect("tail uses the plain value"));
                add(Complex64::new(-wj, 0.0), hatu(shifted(&rest, r - 2, drop), pt, n)?);
            }
        }
    }
    Ok(Estimate { value, budget })
}

/// Evaluates both sides of the depth-lowering identity for `ζ_Û` at a
/// point with `s[slot] = -k` (0-based slot) and reports the residual.
///
/// The left side is the ordered-tuple sum of
/// [`zeta_hatu_at_negative_slot`]; the right side is assembled from
/// [`zeta_hatu_numeric`] evaluations. Requires depth at least 2 and
/// `Re s_j > k + 3` off the slot.
pub fn check_identity(pt: &ComplexPoint, slot: usize, n: u64) -> Result<IdentityCheck> {
    let r = pt.depth();
    if r < 2 {
        return Err(Error::Domain("the identity needs depth at least 2".into()));
    }
    if slot >= r {
        return Err(Error::Domain(format!("slot {slot} out of range for depth {r}")));
    }
    let lhs = zeta_hatu_at_negative_slot(pt, slot, n)?;
    let k = (-pt.s()[slot].re) as u32;
    if let Some(sj) = pt.s().iter().enumerate().find(|&(j, sj)| j != slot && sj.re <= k as f64 + 3.0) {
        return Err(Error::Domain(format!("Re s_{} = {} must exceed {}", sj.0 + 1, sj.1.re, k + 3)));
    }
    let rhs = rhs(pt, slot, k, n)?;
    Ok(IdentityCheck {
        case: IdentityCase::of_slot(slot, r),
        lhs,
        rhs,
        residual: (lhs.value - rhs.value).norm(),
        budget: lhs.budget + rhs.budget,
    })
}

/// A sampled parameter set for [`check_identity`].
#[derive(Clone, Debug, PartialEq)]
pub struct IdentitySample {
    pub case: IdentityCase,
    pub point: ComplexPoint,
    pub slot: usize,
    pub k: u32,
    pub trunc: u64,
}

const T_PLUS: [(f64, f64); 3] = [(0.0, 0.0), (0.25, 0.0), (0.1, 0.2)];
const T_MINUS: [(f64, f64); 3] = [(0.0, 0.0), (-0.25, 0.0), (-0.1, -0.2)];

/// Deterministic parameter sets for one case: `k` cycles through 0, 1, 2,
/// the shifts through fixed grids, and the other arguments have real parts
/// in `[max(5, k+4), 9]` and imaginary parts in `[-1/4, 1/4]`. Head and
/// tail alternate depth 2 (`n = 10⁵`) and depth 3 (`n = 10⁴`); middle is
/// always depth 3.
pub fn sample_points(case: IdentityCase, count: usize, seed: u64) -> Vec<IdentitySample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (case as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    (0..count)
        .map(|idx| {
            let k = (idx % 3) as u32;
            let depth = match case {
                IdentityCase::Middle => 3,
                _ if idx % 2 == 0 => 2,
                _ => 3,
            };
            let trunc = if depth == 2 { 100_000 } else { 10_000 };
            let slot = match case {
                IdentityCase::Head => 0,
                IdentityCase::Middle => 1,
                IdentityCase::Tail => depth - 1,
            };
            let lo = (k as f64 + 4.0).max(5.0);
            let s = (0..depth)
                .map(|j| {
                    if j == slot {
                        Complex64::new(0.0 - k as f64, 0.0)
                    } else {
                        Complex64::new(rng.gen_range(lo..=9.0), rng.gen_range(-0.25..=0.25))
                    }
                })
                .collect();
            let (pr, pi) = T_PLUS[rng.gen_range(0..T_PLUS.len())];
            let (mr, mi) = T_MINUS[rng.gen_range(0..T_MINUS.len())];
            let point = ComplexPoint::new(s, Complex64::new(pr, pi), Complex64::new(mr, mi))
                .expect("sampled shifts are in range");
            IdentitySample { case, point, slot, k, trunc }
        })
        .collect()
}
