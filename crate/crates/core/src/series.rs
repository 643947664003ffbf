//! Nested partial sums `Sₙ(N) = Σ_{1 ≤ ℓ₁ < ⋯ < ℓₙ ≤ N} 1/(ℓ₁²⋯ℓₙ²)`.
//!
//! `Sₙ(N)` is `σ_{N,n}` at `x_ℓ = 1/ℓ²` and increases to `π^(2n)/(2n+1)!`.
//! The production path is a one-row sweep over `ℓ = 1..N` applying
//! `s_k ← s_k + s_{k-1}/ℓ²` for `k` descending, which costs `N·n` ring
//! operations. Two independent oracles compute the same exact rationals:
//! the literal nested loops ([`partial_sum_naive`]) and Newton's identities
//! on power sums ([`newton_cross_check`]).
//!
//! Truncation error: every omitted tuple has `ℓₙ > N`; dropping the
//! ordering of the inner indices gives
//! `Sₙ(∞) − Sₙ(N) ≤ (π²/6)^(n−1) · Σ_{ℓ>N} 1/ℓ² < (π²/6)^(n−1) / N`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Zero};

use crate::exactnum::{div_ceil, guard_digits, pow10};
use crate::reference::{PiCache, CONSTANT_GUARD};
use crate::symmetric::{for_each_increasing_tuple, term_count};
use crate::{fixed_from_rational, BigRational, Error, FixedDecimal, Result};

/// Refuse the literal nested loops above this many index tuples.
pub const NAIVE_TUPLE_CEILING: u64 = 10_000_000;

/// Default cap on the truncation `N` the convergence driver may choose.
pub const DEFAULT_WORK_CEILING: u64 = 100_000_000;

/// Above this truncation exact rationals get expensive; fixed mode is the default.
pub const EXACT_MODE_MAX_TRUNCATION: u64 = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    /// Guarded fixed point at `digits` requested decimals.
    Fixed {
        digits: u32,
    },
}

impl Mode {
    /// Exact up to [`EXACT_MODE_MAX_TRUNCATION`], fixed above.
    pub fn default_for(truncation: u64, digits: u32) -> Self {
        if truncation <= EXACT_MODE_MAX_TRUNCATION {
            Mode::Exact
        } else {
            Mode::Fixed { digits }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Fixed { .. } => "fixed",
        }
    }
}

/// A partial sum in either number semantics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesValue {
    Exact(BigRational),
    Fixed(FixedDecimal),
}

impl SeriesValue {
    pub fn to_rational(&self) -> BigRational {
        match self {
            SeriesValue::Exact(q) => q.clone(),
            SeriesValue::Fixed(x) => x.to_rational(),
        }
    }

    /// Decimal view at `digits` requested decimals plus `guard`.
    pub fn to_fixed(&self, digits: u32, guard: u32) -> FixedDecimal {
        match self {
            SeriesValue::Exact(q) => fixed_from_rational(q, digits, guard),
            SeriesValue::Fixed(x) => x.rescale(digits + guard, guard),
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            SeriesValue::Exact(q) => Some(q),
            SeriesValue::Fixed(_) => None,
        }
    }

    pub fn as_fixed(&self) -> Option<&FixedDecimal> {
        match self {
            SeriesValue::Exact(_) => None,
            SeriesValue::Fixed(x) => Some(x),
        }
    }
}

/// `p/q` for exact values, decimal text for fixed ones.
impl fmt::Display for SeriesValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesValue::Exact(q) => write!(f, "{q}"),
            SeriesValue::Fixed(x) => write!(f, "{x}"),
        }
    }
}

/// Ring element the sweep can update with `self += prev / ℓ²`.
pub trait SweepValue: Clone {
    fn add_recip_square_multiple(&mut self, prev: &Self, ell: u64);
}

impl SweepValue for BigRational {
    fn add_recip_square_multiple(&mut self, prev: &Self, ell: u64) {
        if prev.is_zero() {
            return;
        }
        let ell = BigInt::from(ell);
        let step =
            BigRational::new(prev.numer().clone(), prev.denom() * &ell * &ell).expect("ℓ ≥ 1");
        *self = &*self + &step;
    }
}

impl SweepValue for FixedDecimal {
    fn add_recip_square_multiple(&mut self, prev: &Self, ell: u64) {
        let square = match ell.checked_mul(ell) {
            Some(sq) => BigInt::from(sq),
            None => BigInt::from(ell) * BigInt::from(ell),
        };
        self.add_div_assign(prev, &square);
    }
}

/// The row `[σ_{N,0}, …, σ_{N,k_max}]` at `x_ℓ = 1/ℓ²`, after `N` variables.
#[derive(Clone, Debug)]
pub struct SigmaRow<T> {
    values: Vec<T>,
    processed: u64,
}

impl<T: SweepValue> SigmaRow<T> {
    /// Row for `N = 0`: `[1, 0, …, 0]`.
    pub fn new(zero: T, one: T, k_max: usize) -> Self {
        let mut values = vec![zero; k_max + 1];
        values[0] = one;
        Self {
            values,
            processed: 0,
        }
    }

    /// Brings in the next variable `x_{N+1} = 1/(N+1)²`.
    pub fn advance(&mut self) {
        let ell = self.processed + 1;
        for k in (1..self.values.len()).rev() {
            let (lower, upper) = self.values.split_at_mut(k);
            upper[0].add_recip_square_multiple(&lower[k - 1], ell);
        }
        self.processed = ell;
    }

    pub fn advance_to(&mut self, truncation: u64) {
        while self.processed < truncation {
            self.advance();
        }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn get(&self, k: usize) -> &T {
        &self.values[k]
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    /// `N`, the number of variables swept in so far.
    pub fn processed(&self) -> u64 {
        self.processed
    }

    pub fn k_max(&self) -> usize {
        self.values.len() - 1
    }

    /// Ring updates performed so far, `N · k_max`.
    pub fn ring_ops(&self) -> u64 {
        self.processed * self.k_max() as u64
    }
}

impl SigmaRow<BigRational> {
    pub fn exact(k_max: usize) -> Self {
        Self::new(BigRational::zero(), BigRational::one(), k_max)
    }
}

impl SigmaRow<FixedDecimal> {
    pub fn fixed(k_max: usize, digits: u32, guard: u32) -> Self {
        let scale = digits + guard;
        Self::new(
            FixedDecimal::zero(scale, guard),
            FixedDecimal::one(scale, guard),
            k_max,
        )
    }
}

/// `Sₙ(N)` exactly.
pub fn partial_sum_exact(n: usize, truncation: u64) -> BigRational {
    let mut row = SigmaRow::exact(n);
    row.advance_to(truncation);
    row.into_values().swap_remove(n)
}

/// `Sₙ(N)` in fixed point with the guard policy of [`guard_digits`].
pub fn partial_sum_fixed(n: usize, truncation: u64, digits: u32) -> FixedDecimal {
    let mut row = SigmaRow::fixed(n, digits, guard_digits(truncation, n));
    row.advance_to(truncation);
    row.into_values().swap_remove(n)
}

/// `Sₙ(N)` by the sweep. `S₀ = 1`, and `Sₙ(N) = 0` when `N < n`.
pub fn partial_sum(n: usize, truncation: u64, mode: Mode) -> SeriesValue {
    match mode {
        Mode::Exact => SeriesValue::Exact(partial_sum_exact(n, truncation)),
        Mode::Fixed { digits } => SeriesValue::Fixed(partial_sum_fixed(n, truncation, digits)),
    }
}

/// Upper bound, in units of the last place, on the rounding error of a
/// fixed-point sweep to depth `n` over `N` variables.
///
/// Each update rounds once (≤ ½ ulp) and divides the error inherited from
/// the row below by `ℓ²`, so the error at depth `k` is at most
/// `N/2 · Σ_{j<k} (π²/6)^j ≤ N · 2^(k−1)`.
pub fn rounding_allowance_ulps(n: usize, truncation: u64) -> BigUint {
    (BigUint::from(truncation) + 1u32) << n
}

/// [`rounding_allowance_ulps`] as a value at `scale` decimals.
pub fn rounding_allowance(n: usize, truncation: u64, scale: u32) -> BigRational {
    BigRational::new(
        BigInt::from(rounding_allowance_ulps(n, truncation)),
        pow10(scale),
    )
    .expect("nonzero")
}

/// `Sₙ(N)` by `n` literal nested loops over `1 ≤ ℓ₁ < ⋯ < ℓₙ ≤ N`.
///
/// Every term `1/∏ℓᵢ²` is accumulated over the common denominator `(N!)²`.
/// Refuses when `C(N, n)` exceeds [`NAIVE_TUPLE_CEILING`].
pub fn partial_sum_naive(n: usize, truncation: u64) -> Result<BigRational> {
    let tuples = term_count(truncation, n as u64);
    if tuples > BigUint::from(NAIVE_TUPLE_CEILING) {
        return Err(Error::NaiveCeiling {
            depth: n,
            upto: truncation,
            tuples,
            ceiling: NAIVE_TUPLE_CEILING,
        });
    }
    if n == 0 {
        return Ok(BigRational::one());
    }
    let factorial = (1..=truncation).fold(BigUint::one(), |acc, l| acc * l);
    let mut numerator = BigUint::zero();
    for_each_increasing_tuple(truncation, n, |tuple| {
        let product = tuple.iter().fold(BigUint::one(), |acc, &l| acc * l);
        let cofactor = &factorial / product;
        numerator += &cofactor * &cofactor;
    });
    let denominator = &factorial * &factorial;
    Ok(BigRational::new(BigInt::from(numerator), BigInt::from(denominator)).expect("N! > 0"))
}

/// `e_n(1/1², …, 1/N²)` from the power sums `p_j = Σ_{ℓ≤N} ℓ^(−2j)` via
/// Newton's identities `k·e_k = Σ_{i=1}^{k} (−1)^(i−1) e_{k−i} p_i`.
pub fn newton_cross_check(n: usize, truncation: u64) -> BigRational {
    let power_sums: Vec<BigRational> = (1..=n as u32)
        .map(|j| {
            (1..=truncation)
                .map(|l| BigRational::recip_square(l).expect("ℓ ≥ 1").pow(j))
                .sum()
        })
        .collect();
    let mut e = vec![BigRational::one()];
    for k in 1..=n {
        let mut acc = BigRational::zero();
        for i in 1..=k {
            let term = &e[k - i] * &power_sums[i - 1];
            acc = if i % 2 == 1 { acc + term } else { acc - term };
        }
        e.push(acc / BigRational::from(k as i64));
    }
    e.swap_remove(n)
}

/// `B(n, N) = (π²/6)^(n−1) / N`, rounded up at `digits` (+ guard) decimals.
///
/// When `N < n` the partial sum is empty, and the whole series value is
/// bounded by `(π²/6)^n` instead. Depth 0 has no tail.
pub fn tail_bound(n: usize, truncation: u64, digits: u32) -> FixedDecimal {
    tail_bound_with(&mut PiCache::new(), n, truncation, digits)
}

pub(crate) fn tail_bound_with(
    pi: &mut PiCache,
    n: usize,
    truncation: u64,
    digits: u32,
) -> FixedDecimal {
    let scale = digits + CONSTANT_GUARD;
    if n == 0 {
        return FixedDecimal::zero(scale, CONSTANT_GUARD);
    }
    if truncation < n as u64 {
        let whole = pi.basel_power(n as u32, digits);
        return FixedDecimal::from_parts(whole.mantissa() + 1u32, scale, CONSTANT_GUARD);
    }
    // (π²/6)^(n−1) scaled, made an upper bound by one unit (it is exact for n = 1).
    let numerator = if n == 1 {
        pow10(scale)
    } else {
        pi.basel_power(n as u32 - 1, digits).mantissa() + 1u32
    };
    let mantissa = div_ceil(&numerator, &BigInt::from(truncation));
    FixedDecimal::from_parts(mantissa, scale, CONSTANT_GUARD)
}

/// One convergence computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesResult {
    pub depth: usize,
    pub truncation: u64,
    pub mode: Mode,
    pub value: SeriesValue,
    /// Upper bound on `reference − value` from truncation alone.
    pub tail_bound: FixedDecimal,
    /// `π^(2n)/(2n+1)!`.
    pub reference: Option<FixedDecimal>,
    /// `|reference − value|`, present iff `reference` is.
    pub abs_error: Option<FixedDecimal>,
}

impl SeriesResult {
    /// Evaluates `Sₙ(N)` in `mode` and attaches the tail bound, the
    /// reference value and the absolute error, all at `digits` decimals.
    pub fn evaluate(n: usize, truncation: u64, mode: Mode, digits: u32) -> Self {
        Self::evaluate_with(&mut PiCache::new(), n, truncation, mode, digits)
    }

    pub fn evaluate_with(
        pi: &mut PiCache,
        n: usize,
        truncation: u64,
        mode: Mode,
        digits: u32,
    ) -> Self {
        let value = partial_sum(n, truncation, mode);
        Self::assemble(pi, n, truncation, mode, digits, value)
    }

    /// Attaches bound, reference and error to an already computed `Sₙ(N)`.
    pub fn assemble(
        pi: &mut PiCache,
        n: usize,
        truncation: u64,
        mode: Mode,
        digits: u32,
        value: SeriesValue,
    ) -> Self {
        let tail = tail_bound_with(pi, n, truncation, digits);
        let reference = pi.reference_value(n as u32, digits);
        let abs_error = fixed_from_rational(
            &(reference.to_rational() - value.to_rational()).abs(),
            digits,
            reference.guard(),
        );
        Self {
            depth: n,
            truncation,
            mode,
            value,
            tail_bound: tail,
            reference: Some(reference),
            abs_error: Some(abs_error),
        }
    }

    /// Rounding slack of the value: zero in exact mode.
    pub fn rounding_allowance(&self) -> BigRational {
        match &self.value {
            SeriesValue::Exact(_) => BigRational::zero(),
            SeriesValue::Fixed(x) => rounding_allowance(self.depth, self.truncation, x.scale()),
        }
    }
}

/// Smallest `N ≥ n` whose rounded-up bound is below `10^-digits`.
fn required_truncation(pi: &mut PiCache, n: usize, digits: u32) -> BigUint {
    let scale = digits + CONSTANT_GUARD;
    let numerator = if n == 1 {
        BigUint::from(10u32).pow(scale)
    } else {
        pi.basel_power(n as u32 - 1, digits)
            .mantissa()
            .to_biguint()
            .expect("positive")
            + 1u32
    };
    // ceil(numerator / N) < 10^guard  ⇔  numerator ≤ N · (10^guard − 1).
    let limit = BigUint::from(10u32).pow(CONSTANT_GUARD) - 1u32;
    let smallest = num_integer::Integer::div_ceil(&numerator, &limit);
    smallest.max(BigUint::from(n as u64))
}

/// Chooses the smallest `N` with `B(n, N) < 10^-digits`, sums in fixed
/// point and reports the error against `π^(2n)/(2n+1)!`.
///
/// Fails with [`Error::WorkCeiling`] when that `N` exceeds `work_ceiling`.
pub fn converge(n: usize, digits: u32, work_ceiling: u64) -> Result<SeriesResult> {
    converge_with(&mut PiCache::new(), n, digits, work_ceiling)
}

pub fn converge_with(
    pi: &mut PiCache,
    n: usize,
    digits: u32,
    work_ceiling: u64,
) -> Result<SeriesResult> {
    if n == 0 || digits == 0 {
        return Err(Error::Domain(alloc::format!(
            "converge needs depth ≥ 1 and digits ≥ 1 (got depth {n}, digits {digits})"
        )));
    }
    let required = required_truncation(pi, n, digits);
    if required > BigUint::from(work_ceiling) {
        return Err(Error::WorkCeiling {
            depth: n,
            digits,
            required,
            ceiling: work_ceiling,
        });
    }
    let truncation = u64::try_from(&required).expect("bounded by the work ceiling");
    Ok(SeriesResult::evaluate_with(
        pi,
        n,
        truncation,
        Mode::Fixed { digits },
        digits,
    ))
}

/// `∏_{k=1}^{M} (1 − x²/k²)` in guarded fixed point.
pub fn sinc_product(x: &BigRational, factors: u64, digits: u32) -> FixedDecimal {
    let guard = guard_digits(factors, 1);
    let scale = digits + guard;
    let mut acc = FixedDecimal::one(scale, guard);
    let p2 = x.numer() * x.numer();
    let q2 = x.denom() * x.denom();
    for k in 1..=factors {
        let kq2 = &q2 * BigInt::from(k) * BigInt::from(k);
        let num = &kq2 - &p2;
        if num.is_zero() {
            return FixedDecimal::zero(scale, guard);
        }
        acc = acc.mul_rational(&BigRational::new(num, kq2).expect("k ≥ 1"));
    }
    acc
}

/// `Σ_{j=0}^{n_max} (−1)^j Sⱼ(N) x^(2j)`, the truncated power series of
/// `sin(πx)/(πx)` with nested-sum coefficients.
pub fn sinc_series(x: &BigRational, n_max: usize, truncation: u64, digits: u32) -> FixedDecimal {
    let x2 = x * x;
    // Coefficient errors are amplified by up to |x|^(2 n_max).
    let x_ceil = (x.numer().magnitude() + x.denom().magnitude() - 1u32) / x.denom().magnitude();
    let amplification = num_traits::pow(x_ceil.max(BigUint::one()), 2 * n_max);
    let extra = amplification.to_str_radix(10).len() as u32;
    let guard = guard_digits(truncation, n_max.max(1)) + extra;
    let scale = digits + guard;

    let mut row = SigmaRow::fixed(n_max, digits, guard);
    row.advance_to(truncation);
    let mut sum = FixedDecimal::zero(scale, guard);
    let mut power = BigRational::one();
    for (j, coeff) in row.values().iter().enumerate() {
        let term = coeff.mul_rational(&power);
        sum = if j % 2 == 0 {
            &sum + &term
        } else {
            &sum - &term
        };
        power = &power * &x2;
    }
    sum
}

/// Truncated sinc product, truncated nested-sum series and the Taylor
/// reference at one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SincEval {
    pub x: BigRational,
    /// Product factors and coefficient truncation `N`.
    pub terms: u64,
    /// Highest power `x^(2 n_max)` kept in the series.
    pub n_max: usize,
    pub product_value: FixedDecimal,
    pub series_value: FixedDecimal,
    pub reference: FixedDecimal,
}

impl SincEval {
    pub fn compute(x: &BigRational, terms: u64, n_max: usize, digits: u32) -> Self {
        Self {
            x: x.clone(),
            terms,
            n_max,
            product_value: sinc_product(x, terms, digits),
            series_value: sinc_series(x, n_max, terms, digits),
            reference: crate::sin_over_pix(x, digits),
        }
    }
}
