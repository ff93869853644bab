//! Formal linear combinations of indices with [`Poly2`] coefficients.

use std::collections::BTreeMap;

use crate::index::Index;
use crate::poly2::{Poly2, VarNames};

/// `Σ_l c_l(x₊, x₋) ζ(l)` as a finite map from index to coefficient.
///
/// Keys are compared by their exact entry sequence and zero coefficients
/// are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Combination {
    terms: BTreeMap<Index, Poly2>,
}

impl Combination {
    pub fn new() -> Self {
        Self::default()
    }

    /// The single term `1 · ζ(k)`.
    pub fn unit(k: Index) -> Self {
        Self::term(k, Poly2::one())
    }

    pub fn term(k: Index, coeff: Poly2) -> Self {
        let mut c = Self::new();
        c.add_term(k, &coeff);
        c
    }

    pub fn add_term(&mut self, k: Index, coeff: &Poly2) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(k) {
            Entry::Vacant(v) => {
                v.insert(coeff.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn remove(&mut self, k: &Index) -> Option<Poly2> {
        self.terms.remove(k)
    }

    pub fn get(&self, k: &Index) -> Option<&Poly2> {
        self.terms.get(k)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Index, &Poly2)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &Index> {
        self.terms.keys()
    }

    pub fn add(&self, other: &Combination) -> Combination {
        let mut out = self.clone();
        for (k, p) in other.iter() {
            out.add_term(k.clone(), p);
        }
        out
    }

    pub fn scale(&self, factor: &Poly2) -> Combination {
        let mut out = Combination::new();
        for (k, p) in self.iter() {
            out.add_term(k.clone(), &(factor * p));
        }
        out
    }

    /// Substitutes `x₊ = 0`, leaving coefficients in `x₋` alone.
    pub fn specialize_single(&self) -> Combination {
        let mut out = Combination::new();
        for (k, p) in self.iter() {
            out.add_term(k.clone(), &p.specialize_single());
        }
        out
    }

    /// Human-readable rendering, one `(index): coefficient` term per line.
    pub fn display_with(&self, names: VarNames) -> String {
        if self.is_empty() {
            return "0\n".into();
        }
        self.iter()
            .map(|(k, p)| format!("({k}): {}\n", p.display_with(names)))
            .collect()
    }
}

impl FromIterator<(Index, Poly2)> for Combination {
    fn from_iter<I: IntoIterator<Item = (Index, Poly2)>>(iter: I) -> Self {
        let mut c = Combination::new();
        for (k, p) in iter {
            c.add_term(k, &p);
        }
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_frac};
    use proptest::prelude::*;

    fn small_poly() -> impl Strategy<Value = Poly2> {
        prop::collection::vec(((0u32..3, 0u32..3), -5i64..=5, 1i64..=4), 0..4).prop_map(|t| {
            Poly2::from_terms(t.into_iter().map(|(e, n, d)| (e, rat_frac(n, d))))
        })
    }

    fn small_comb() -> impl Strategy<Value = Combination> {
        prop::collection::vec((prop::collection::vec(-2i64..=3, 0..3), small_poly()), 0..4)
            .prop_map(|t| t.into_iter().map(|(k, p)| (Index::new(k), p)).collect())
    }

    #[test]
    fn scalar_and_cancellation() {
        let c = Combination::term(Index::from([1]), Poly2::constant(rat(3)));
        assert_eq!(
            c.scale(&Poly2::constant(rat(2))),
            Combination::term(Index::from([1]), Poly2::constant(rat(6)))
        );
        let a = Combination::unit(Index::from([1]));
        let b = Combination::term(Index::from([1]), Poly2::constant(rat(-1)));
        assert!(a.add(&b).is_empty());
    }

    #[test]
    fn specialize_example() {
        let coeff = &Poly2::from_terms([((0, 2), rat_frac(1, 2)), ((0, 1), rat_frac(-1, 2))])
            - &Poly2::xplus(1);
        let c = Combination::term(Index::from([3]), coeff);
        let s = c.specialize_single();
        assert_eq!(s.display_with(VarNames::SINGLE), "(3): 1/2*x^2 - 1/2*x\n");
    }

    #[test]
    fn specialize_can_cancel_terms() {
        let c = Combination::term(Index::from([2]), Poly2::xplus(3));
        assert!(c.specialize_single().is_empty());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn module_laws(a in small_comb(), b in small_comb(), c in small_comb(),
                       p in small_poly(), q in small_poly()) {
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.add(&b).scale(&p), a.scale(&p).add(&b.scale(&p)));
            prop_assert_eq!(a.scale(&(&p + &q)), a.scale(&p).add(&a.scale(&q)));
            prop_assert_eq!(a.scale(&q).scale(&p), a.scale(&(&p * &q)));
            prop_assert!(a.iter().all(|(_, p)| !p.is_zero()));
        }
    }
}
