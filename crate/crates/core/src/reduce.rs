//! Depth-lowering rewrite of indices with non-positive entries.
//!
//! An entry `k_i = -k` (`k >= 0`) is summed out with Faulhaber's closed form
//! `Σ_{u<n<v} n^k = Σ_j w_j ((-1)^j v^{k+1-j} - u^{k+1-j})`,
//! `w_j = C(k+1,j) B_j / (k+1)`, where `u`, `v` are the neighbouring summation
//! variables or the range endpoints. The powers of a neighbour are absorbed
//! into its entry; powers of an endpoint become coefficients in `x₊` (lower)
//! or `x₋` (upper). Repeating this until every key is positive gives a
//! combination of positive indices with coefficients in `Q[x₊, x₋]`.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{bernoulli::faulhaber_weights, modular::ModResidue, Rational};
use crate::combination::Combination;
use crate::error::{Error, Result};
use crate::index::Index;
use crate::poly2::Poly2;
use crate::trunc::{zeta_trunc_exact, zeta_trunc_mod, TruncationRange};

/// Which non-positive entry [`reduce_full`] eliminates first.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    #[default]
    Leftmost,
    Rightmost,
}

impl Strategy {
    pub const ALL: [Strategy; 2] = [Strategy::Leftmost, Strategy::Rightmost];

    fn pick(self, k: &Index) -> Option<usize> {
        match self {
            Strategy::Leftmost => k.non_positive_positions().next(),
            Strategy::Rightmost => k.non_positive_positions().last(),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Leftmost => "leftmost",
            Strategy::Rightmost => "rightmost",
        })
    }
}

impl std::str::FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "leftmost" => Ok(Strategy::Leftmost),
            "rightmost" => Ok(Strategy::Rightmost),
            _ => Err(Error::Parse { position: 0, message: format!("unknown strategy {s:?}") }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseTag {
    /// First entry; the lower endpoint supplies the `x₊` powers.
    Head,
    /// Interior entry; both neighbours are shifted.
    Middle,
    /// Last entry; the upper endpoint supplies the `x₋` powers.
    Tail,
    /// Depth one; both endpoints.
    Base,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    pub index: Index,
    /// 0-based position of the eliminated entry.
    pub position: usize,
    pub case: CaseTag,
}

/// Log of a full reduction.
///
/// Steps are recorded in processing order, deepest keys first, so the depth
/// along `steps` never increases and every step lowers its own key's depth
/// by one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub result: Combination,
}

fn shifted(entries: &[i64], remove: usize, shift_at: Option<usize>, by: i64) -> Index {
    let mut out: Vec<i64> = entries.to_vec();
    if let Some(pos) = shift_at {
        out[pos] -= by;
    }
    out.remove(remove);
    Index::new(out)
}

/// One elimination step at the 0-based `position`.
///
/// Requires depth at least 2 and a non-positive entry at `position`.
pub fn reduce_entry(k: &Index, position: usize) -> Result<Combination> {
    let r = k.depth();
    if r < 2 {
        return Err(Error::InvalidReduction(format!("depth {r} is below 2")));
    }
    let Some(&entry) = k.entries().get(position) else {
        return Err(Error::InvalidReduction(format!("position {position} out of range for depth {r}")));
    };
    if entry > 0 {
        return Err(Error::InvalidReduction(format!("entry {entry} at position {position} is positive")));
    }
    let power = entry.unsigned_abs() as u32;
    let e = k.entries();
    let mut out = Combination::new();
    for (j, w) in faulhaber_weights(power).iter().enumerate() {
        if w.is_zero() {
            continue;
        }
        let drop = (power + 1) as i64 - j as i64;
        let upper_w = if j % 2 == 0 { w.clone() } else { -w.clone() };
        let lower_w = -w.clone();
        let d = drop as u32;
        if position == 0 {
            out.add_term(shifted(e, 0, Some(1), drop), &Poly2::constant(upper_w));
            out.add_term(shifted(e, 0, None, 0), &Poly2::monomial(d, 0, lower_w));
        } else if position == r - 1 {
            out.add_term(shifted(e, position, None, 0), &Poly2::monomial(0, d, upper_w));
            out.add_term(shifted(e, position, Some(position - 1), drop), &Poly2::constant(lower_w));
        } else {
            out.add_term(shifted(e, position, Some(position + 1), drop), &Poly2::constant(upper_w));
            out.add_term(shifted(e, position, Some(position - 1), drop), &Poly2::constant(lower_w));
        }
    }
    Ok(out)
}

/// Coefficient of the empty index for the depth-one index `(entry)`,
/// `entry <= 0`: the closed form of `Σ_{x₊<n<x₋} n^{-entry}`.
pub fn reduce_depth1(entry: i64) -> Result<Poly2> {
    if entry > 0 {
        return Err(Error::InvalidReduction(format!("entry {entry} is positive")));
    }
    let power = entry.unsigned_abs() as u32;
    let mut p = Poly2::zero();
    for (j, w) in faulhaber_weights(power).iter().enumerate() {
        let d = power + 1 - j as u32;
        let upper_w = if j % 2 == 0 { w.clone() } else { -w.clone() };
        p.add_term(0, d, upper_w);
        p.add_term(d, 0, -w.clone());
    }
    Ok(p)
}

/// Rewrites `k` into a combination of positive indices.
///
/// Positive indices come back unchanged with coefficient 1.
pub fn reduce_full(k: &Index, strategy: Strategy) -> ReductionTrace {
    let mut done = Combination::new();
    let mut pending = Combination::new();
    let mut steps = Vec::new();
    if k.is_positive() {
        done.add_term(k.clone(), &Poly2::one());
    } else {
        pending.add_term(k.clone(), &Poly2::one());
    }
    while let Some(key) = pending.keys().max_by_key(|l| l.depth()).cloned() {
        let coeff = pending.remove(&key).expect("key just listed");
        let position = strategy.pick(&key).expect("pending keys are not positive");
        let (case, image) = if key.depth() == 1 {
            let p = reduce_depth1(key.entries()[0]).expect("entry is non-positive");
            (CaseTag::Base, Combination::term(Index::empty(), p))
        } else {
            let case = match position {
                0 => CaseTag::Head,
                p if p + 1 == key.depth() => CaseTag::Tail,
                _ => CaseTag::Middle,
            };
            (case, reduce_entry(&key, position).expect("valid elimination"))
        };
        steps.push(ReductionStep { index: key, position, case });
        for (l, q) in image.iter() {
            let c = &coeff * q;
            if l.is_positive() {
                done.add_term(l.clone(), &c);
            } else {
                pending.add_term(l.clone(), &c);
            }
        }
    }
    ReductionTrace { steps, result: done }
}

/// `Σ_l c_l(a, b) · ζ(l; a, b) mod p^n`.
///
/// Each rational coefficient is embedded separately, so this fails with
/// [`Error::DenominatorCollision`] exactly when `p` divides one of the
/// coefficient denominators.
pub fn evaluate_combination(c: &Combination, p: u64, n: u32, a: u64, b: u64) -> Result<ModResidue> {
    let range = TruncationRange::new(a, b)?;
    let mut acc = ModResidue::zero(p, n)?;
    for (l, q) in c.iter() {
        acc = acc + q.eval_mod(a, b, p, n)? * zeta_trunc_mod(l, p, n, range)?;
    }
    Ok(acc)
}

/// `Σ_l c_l(a, b) · ζ(l; a, b)` exactly, for `a < b`.
pub fn evaluate_combination_exact(c: &Combination, a: u64, b: u64) -> Result<Rational> {
    if a >= b {
        return Err(Error::InvalidRange { lower: a.into(), upper: b.into() });
    }
    let range = TruncationRange::new(a, b)?;
    let (ra, rb) = (Rational::from_integer(a.into()), Rational::from_integer(b.into()));
    Ok(c.iter()
        .map(|(l, q)| q.eval(&ra, &rb) * zeta_trunc_exact(l, range))
        .fold(Rational::zero(), |acc, t| acc + t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{mod_embed, rat, rat_frac};
    use crate::index::classify;
    use crate::poly2::VarNames;
    use crate::trunc::zeta_trunc_bruteforce;

    fn c(terms: &[(&[i64], Poly2)]) -> Combination {
        terms.iter().map(|(k, p)| (Index::new(k.to_vec()), p.clone())).collect()
    }

    fn q(n: i64, d: i64) -> Poly2 {
        Poly2::constant(rat_frac(n, d))
    }

    fn half_x2_minus_x(plus: bool) -> Poly2 {
        let (x2, x1) = if plus { (Poly2::xplus(2), Poly2::xplus(1)) } else { (Poly2::xminus(2), Poly2::xminus(1)) };
        (&x2 - &x1).scale(&rat_frac(1, 2))
    }

    #[test]
    fn tail_example() {
        let got = reduce_entry(&Index::from([3, -1]), 1).unwrap();
        let want = c(&[(&[3], half_x2_minus_x(false)), (&[2], q(-1, 2)), (&[1], q(-1, 2))]);
        assert_eq!(got, want);
    }

    #[test]
    fn head_example() {
        let got = reduce_entry(&Index::from([-1, 3]), 0).unwrap();
        let plus = (&Poly2::xplus(2) + &Poly2::xplus(1)).scale(&rat_frac(-1, 2));
        let want = c(&[(&[1], q(1, 2)), (&[2], q(-1, 2)), (&[3], plus)]);
        assert_eq!(got, want);
        assert_eq!(evaluate_combination_exact(&got, 0, 5).unwrap(), rat_frac(95, 288));
    }

    #[test]
    fn middle_example_frozen() {
        // k = 0: weights (1, 1/2); j=0 gives ζ(1,0) - ζ(0,1), j=1 gives -ζ(1,1)
        let got = reduce_entry(&Index::from([1, 0, 1]), 1).unwrap();
        let want = c(&[(&[1, 0], q(1, 1)), (&[0, 1], q(-1, 1)), (&[1, 1], q(-1, 1))]);
        assert_eq!(got, want);
        for b in 1..12u64 {
            for a in 0..b {
                let lhs = zeta_trunc_bruteforce(&Index::from([1, 0, 1]), TruncationRange::new(a, b).unwrap()).unwrap();
                assert_eq!(evaluate_combination_exact(&got, a, b).unwrap(), lhs);
            }
        }
    }

    #[test]
    fn entry_errors() {
        assert!(reduce_entry(&Index::from([-1]), 0).is_err());
        assert!(reduce_entry(&Index::from([2, 1]), 1).is_err());
        assert!(reduce_entry(&Index::from([2, -1]), 2).is_err());
        assert!(reduce_depth1(3).is_err());
    }

    #[test]
    fn depth1_examples() {
        let xm = |d| Poly2::xminus(d);
        let xp = |d| Poly2::xplus(d);
        assert_eq!(reduce_depth1(0).unwrap(), &(&xm(1) - &xp(1)) - &Poly2::one());
        let want = (&(&(&xm(2) - &xp(2)) - &xm(1)) - &xp(1)).scale(&rat_frac(1, 2));
        assert_eq!(reduce_depth1(-1).unwrap(), want);
        let want = &(&(&xm(3) - &xp(3)).scale(&rat_frac(1, 3)) - &(&xm(2) + &xp(2)).scale(&rat_frac(1, 2)))
            + &(&xm(1) - &xp(1)).scale(&rat_frac(1, 6));
        assert_eq!(reduce_depth1(-2).unwrap(), want);
        for p in 2..=31u64 {
            let v = reduce_depth1(-2).unwrap().eval(&rat(0), &rat(p as i64));
            assert_eq!(v, zeta_trunc_exact(&Index::from([-2]), TruncationRange::up_to(p)));
        }
    }

    #[test]
    fn depth1_bernoulli_polynomial_form() {
        use crate::arith::bernoulli::bernoulli_polynomial;
        for k in 0..=10u32 {
            let b = bernoulli_polynomial(k + 1);
            let scale = rat_frac(1, (k + 1) as i64);
            let sign = if k % 2 == 0 { rat(1) } else { rat(-1) };
            let mut want = Poly2::zero();
            for (d, c) in b.terms() {
                want.add_term(0, d, c * &scale);
                let refl = if d % 2 == 0 { c.clone() } else { -c.clone() };
                want.add_term(d, 0, refl * &scale * &sign);
            }
            assert_eq!(reduce_depth1(-(k as i64)).unwrap(), want, "k={k}");
        }
    }

    #[test]
    fn full_examples() {
        let t = reduce_full(&Index::from([4, -1]), Strategy::Leftmost);
        let want = c(&[(&[4], half_x2_minus_x(false)), (&[3], q(-1, 2)), (&[2], q(-1, 2))]);
        assert_eq!(t.result.specialize_single(), want);
        assert_eq!(t.steps.len(), 1);
        assert_eq!(t.steps[0].case, CaseTag::Tail);

        let t = reduce_full(&Index::from([2]), Strategy::Leftmost);
        assert_eq!(t.result, Combination::unit(Index::from([2])));
        assert!(t.steps.is_empty());

        let t = reduce_full(&Index::from([-1, -1]), Strategy::Leftmost);
        assert_eq!(t.result.len(), 1);
        let p = t.result.get(&Index::empty()).unwrap();
        assert_eq!(p.eval(&rat(0), &rat(5)), rat(35));
    }

    #[test]
    fn single_variable_display() {
        let t = reduce_full(&Index::from([3, -1]), Strategy::Leftmost);
        assert_eq!(
            t.result.specialize_single().display_with(VarNames::SINGLE),
            "(1): -1/2\n(2): -1/2\n(3): 1/2*x^2 - 1/2*x\n"
        );
    }

    #[test]
    fn trace_depths_do_not_increase() {
        let t = reduce_full(&Index::from([2, -1, 0, -2]), Strategy::Leftmost);
        let depths: Vec<_> = t.steps.iter().map(|s| s.index.depth()).collect();
        assert!(depths.windows(2).all(|w| w[0] >= w[1]));
        assert!(t.result.keys().all(|k| k.is_positive()));
    }

    #[test]
    fn modular_evaluation_examples() {
        let c1 = reduce_full(&Index::from([3, -1]), Strategy::Leftmost).result;
        let lhs = zeta_trunc_mod(&Index::from([3, -1]), 7, 1, TruncationRange::up_to(7)).unwrap();
        assert_eq!(evaluate_combination(&c1, 7, 1, 0, 7).unwrap(), lhs);

        assert_eq!(evaluate_combination(&Combination::unit(Index::empty()), 5, 2, 0, 5).unwrap().value(), 1);

        let c2 = reduce_full(&Index::from([-1, 3]), Strategy::Leftmost).result;
        assert_eq!(
            evaluate_combination(&c2, 5, 1, 0, 5).unwrap(),
            mod_embed(&rat_frac(95, 288), 5, 1).unwrap()
        );
        // C(5,4) B_4 / 5 = -1/30 brings in the prime 5
        let c3 = reduce_full(&Index::from([2, -4]), Strategy::Leftmost).result;
        assert_eq!(evaluate_combination(&c3, 5, 1, 0, 5), Err(Error::DenominatorCollision { prime: 5 }));
    }

    #[test]
    fn exact_evaluation_examples() {
        let c = reduce_full(&Index::from([3, -1]), Strategy::Leftmost).result;
        assert_eq!(
            evaluate_combination_exact(&c, 0, 5).unwrap(),
            zeta_trunc_bruteforce(&Index::from([3, -1]), TruncationRange::up_to(5)).unwrap()
        );
        let e = reduce_full(&Index::empty(), Strategy::Leftmost).result;
        assert_eq!(evaluate_combination_exact(&e, 0, 2).unwrap(), rat(1));
        assert!(evaluate_combination_exact(&e, 2, 2).is_err());
    }

    #[test]
    fn positive_fixpoint_and_bounds() {
        for k in [vec![1], vec![2, 1, 3], vec![]] {
            let k = Index::new(k);
            assert_eq!(reduce_full(&k, Strategy::Rightmost).result, Combination::unit(k.clone()));
        }
        for k in [vec![3, -2, 2], vec![-1, 4, 0, 1], vec![0, 0, 5]] {
            let k = Index::new(k);
            let cls = classify(&k);
            for s in Strategy::ALL {
                for l in reduce_full(&k, s).result.keys() {
                    let lc = classify(l);
                    assert!(lc.depth <= cls.positive_count);
                    assert!(lc.weight.unwrap() <= cls.positive_sum);
                }
            }
        }
    }

    #[test]
    fn strategies_agree_under_evaluation() {
        for k in [vec![2, -1, 0, 3], vec![-2, -1, 1], vec![1, 0, -1, 2]] {
            let k = Index::new(k);
            let l = reduce_full(&k, Strategy::Leftmost).result;
            let r = reduce_full(&k, Strategy::Rightmost).result;
            for b in 1..=12u64 {
                for a in 0..b {
                    assert_eq!(
                        evaluate_combination_exact(&l, a, b).unwrap(),
                        evaluate_combination_exact(&r, a, b).unwrap()
                    );
                }
            }
        }
    }
}
