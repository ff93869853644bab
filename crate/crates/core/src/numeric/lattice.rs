use std::cmp::Ordering;

use num_complex::Complex64;

use super::sign_power;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Plus,
    Minus,
}

/// A point `n + t₊` (plus side) or `-n + t₋` (minus side) of the two-sided
/// lattice. `Plus(0)` and `Minus(0)` are the endpoints `t₊` and `t₋`.
///
/// Ordering: the plus side ascending in `n`, then the minus side descending
/// in `n`, so `t₊` is the least and `t₋` the greatest point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LatticePoint {
    pub side: Side,
    pub n: u64,
}

impl LatticePoint {
    pub fn plus(n: u64) -> Self {
        Self { side: Side::Plus, n }
    }

    pub fn minus(n: u64) -> Self {
        Self { side: Side::Minus, n }
    }

    pub fn value(&self, t_plus: Complex64, t_minus: Complex64) -> Complex64 {
        match self.side {
            Side::Plus => t_plus + self.n as f64,
            Side::Minus => t_minus - self.n as f64,
        }
    }

    /// `1/a^s`, with `1/a^s = (-1)^s / (n - t₋)^s` on the minus side.
    pub fn inv_pow(&self, s: Complex64, t_plus: Complex64, t_minus: Complex64) -> Complex64 {
        match self.side {
            Side::Plus => (-s * (t_plus + self.n as f64).ln()).exp(),
            Side::Minus => sign_power(s) * (-s * (self.n as f64 - t_minus).ln()).exp(),
        }
    }
}

impl Ord for LatticePoint {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.side, other.side) {
            (Side::Plus, Side::Plus) => self.n.cmp(&other.n),
            (Side::Minus, Side::Minus) => other.n.cmp(&self.n),
            (Side::Plus, Side::Minus) => Ordering::Less,
            (Side::Minus, Side::Plus) => Ordering::Greater,
        }
    }
}

impl PartialOrd for LatticePoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
