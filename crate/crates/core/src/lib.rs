//! Finite multiple zeta values of general integer indices.
//!
//! The crate computes the truncated multiple harmonic sums
//! `Σ_{a<n_1<…<n_r<b} n_1^{-k_1}⋯n_r^{-k_r}` exactly and modulo prime powers,
//! rewrites indices containing non-positive entries into combinations of
//! positive indices with polynomial coefficients, builds the generating
//! series of the values at non-positive integer points, and evaluates the
//! two-sided Hurwitz-type multiple zeta function numerically.
//!
//! Module map:
//!
//! * [`arith`]: rationals, Bernoulli numbers, Faulhaber sums, residues mod `p^n`
//! * [`index`], [`poly2`], [`combination`]: the index vocabulary and the
//!   linear-combination algebra the reduction emits into
//! * [`trunc`]: truncated sums (DP, modular DP, brute force)
//! * [`reduce`]: the depth-lowering rewrite and evaluation of its output
//! * [`genfun`]: truncated multivariate series and the `P_r` tables
//! * [`numeric`]: complex floating-point evaluation and identity checks
//! * [`verify`]: prime sweeps and report types shared with the CLI
//! * [`json`]: the versioned JSON/CSV output schema

pub mod arith;
pub mod combination;
mod error;
pub mod genfun;
pub mod index;
pub mod json;
pub mod numeric;
pub mod poly2;
pub mod reduce;
pub mod trunc;
pub mod verify;

pub use arith::{
    bernoulli::{bernoulli_number, bernoulli_numbers, bernoulli_polynomial, faulhaber_closed},
    modular::{mod_embed, ModResidue},
    poly::PolyQ,
    Rational,
};
pub use combination::Combination;
pub use error::{Error, Result};
pub use genfun::{
    extract_p, extract_p_from, g1_series, gr_closed_form, gr_recurrence, gr_series, integer_powersum_oracle,
    PTable, TruncSeries,
};
pub use index::{classify, Index, IndexClass};
pub use poly2::Poly2;
pub use reduce::{
    evaluate_combination, evaluate_combination_exact, reduce_depth1, reduce_entry, reduce_full,
    CaseTag, ReductionStep, ReductionTrace, Strategy,
};
pub use trunc::{zeta_trunc_bruteforce, zeta_trunc_exact, zeta_trunc_mod, TruncationRange};
pub use verify::{check_reduce, SweepConfig, SweepReport};
