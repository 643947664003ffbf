//! Nested-sum series for the even powers of π.
//!
//! For every depth `n ≥ 1`,
//!
//! ```text
//! π^(2n) / (2n+1)!  =  Σ_{1 ≤ ℓ₁ < ℓ₂ < ⋯ < ℓₙ}  1 / (ℓ₁² ℓ₂² ⋯ ℓₙ²)
//! ```
//!
//! which is the elementary symmetric polynomial `σ_{∞,n}` evaluated at
//! `x_ℓ = 1/ℓ²`. This crate provides:
//!
//! * [`exactnum`]: exact rationals and guarded fixed-point decimals,
//! * [`symmetric`]: symbolic elementary symmetric polynomials, the
//!   product expansion `∏(1 + x_k t)` and its mechanical cross-check,
//! * [`series`]: partial sums `Sₙ(N)` by an `O(N·n)` sweep, the literal
//!   nested-loop and Newton's-identities oracles, tail bounds, the
//!   convergence driver and the truncated sinc product/series,
//! * [`reference`]: π (Machin), factorials, `π^(2n)/(2n+1)!`,
//!   `(π²/6)^n` and `sin(πx)/(πx)` at arbitrary precision.
//!
//! The crate is `no_std` and only needs `alloc`. IO, the command line and
//! the output formats live in the `pipow` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod error;
pub mod exactnum;
pub mod reference;
pub mod series;
pub mod symmetric;

pub use error::{Error, Result};
pub use exactnum::{fixed_from_rational, fixed_recip_square, rat, BigRational, FixedDecimal};
pub use reference::{basel_power, factorial, pi_digits, reference_value, sin_over_pix, PiCache};
pub use series::{
    converge, newton_cross_check, partial_sum, partial_sum_naive, sinc_product, sinc_series,
    tail_bound, Mode, SeriesResult, SeriesValue, SigmaRow, SincEval,
};
pub use symmetric::{
    expand_product, sigma_naive, sigma_recurrence, substitute, term_count, verify_theorem1,
    Monomial, ProductExpansion, SparsePolynomial, TheoremReport,
};
