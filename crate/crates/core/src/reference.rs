//! High-precision constants the series are judged against.
//!
//! π comes from Machin's relation `π = 16·atan(1/5) − 4·atan(1/239)` with
//! integer-scaled arctangent series. Every constant is returned as a
//! [`FixedDecimal`] carrying [`CONSTANT_GUARD`] guard digits and is accurate
//! to better than one unit in its last guarded place.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactnum::{div_round_half_even, pow10};
use crate::{BigRational, Error, FixedDecimal, Result};

/// Guard digits carried by every constant beyond the requested precision.
pub const CONSTANT_GUARD: u32 = 10;

pub const MAX_PI_DIGITS: u32 = 100_000;

fn decimal_len(x: u64) -> u32 {
    x.checked_ilog10().unwrap_or(0) + 1
}

/// `atan(1/m) · one`, summing truncated terms until they vanish.
fn arctan_recip(m: u32, one: &BigInt) -> BigInt {
    let m2 = u64::from(m) * u64::from(m);
    let mut power = one / m;
    let mut sum = power.clone();
    let mut k: u64 = 1;
    loop {
        power /= m2;
        if power.is_zero() {
            return sum;
        }
        let term = &power / (2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
}

/// `π · 10^scale` rounded to an integer; the error is below one unit.
fn machin_pi_scaled(scale: u32) -> BigInt {
    // Each truncated series term is off by < 1 unit of the working scale and
    // there are fewer than `scale` of them per arctangent.
    let extra = 10 + decimal_len(u64::from(scale));
    let one = pow10(scale + extra);
    let pi = arctan_recip(5, &one) * 16u32 - arctan_recip(239, &one) * 4u32;
    div_round_half_even(&pi, &pow10(extra))
}

/// π to `digits` decimals (error < `10^-digits`), plus guard digits.
pub fn pi_digits(digits: u32) -> Result<FixedDecimal> {
    PiCache::new().pi(digits)
}

/// Exact `m!`.
pub fn factorial(m: u32) -> BigUint {
    (1..=m).fold(BigUint::one(), |acc, i| acc * i)
}

/// `π^(2n) / (2n+1)!`, the value of the depth-`n` nested series.
pub fn reference_value(n: u32, digits: u32) -> FixedDecimal {
    PiCache::new().reference_value(n, digits)
}

/// `(π²/6)^n`, the comparison bound on every depth-`n` nested sum.
pub fn basel_power(n: u32, digits: u32) -> FixedDecimal {
    PiCache::new().basel_power(n, digits)
}

/// `sin(πx)/(πx)`, with the value 1 at `x = 0`.
pub fn sin_over_pix(x: &BigRational, digits: u32) -> FixedDecimal {
    PiCache::new().sin_over_pix(x, digits)
}

/// π memoized at the highest precision requested so far.
///
/// Requests at or below the cached precision are served by rounding the
/// cached value; larger requests recompute and replace it.
#[derive(Clone, Debug, Default)]
pub struct PiCache {
    cached: Option<(u32, BigInt)>,
}

impl PiCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Scale (in decimal places) of the cached value, if any.
    pub fn cached_scale(&self) -> Option<u32> {
        self.cached.as_ref().map(|(s, _)| *s)
    }

    /// `π · 10^scale` with error below one unit.
    fn pi_scaled(&mut self, scale: u32) -> BigInt {
        match &self.cached {
            Some((s, v)) if *s == scale => v.clone(),
            // Dropping at least one digit: error ≤ 0.5 + 0.51/10 < 1.
            Some((s, v)) if *s > scale => div_round_half_even(v, &pow10(s - scale)),
            _ => {
                let v = machin_pi_scaled(scale);
                self.cached = Some((scale, v.clone()));
                v
            }
        }
    }

    pub fn pi(&mut self, digits: u32) -> Result<FixedDecimal> {
        if !(1..=MAX_PI_DIGITS).contains(&digits) {
            return Err(Error::DigitsOutOfRange {
                digits,
                max: MAX_PI_DIGITS,
            });
        }
        let scale = digits + CONSTANT_GUARD;
        Ok(FixedDecimal::from_parts(
            self.pi_scaled(scale),
            scale,
            CONSTANT_GUARD,
        ))
    }

    /// `π^power / divisor` at `scale`, with a single final rounding.
    fn pi_power_over(&mut self, power: u32, divisor: &BigInt, scale: u32) -> BigInt {
        if power == 0 {
            return div_round_half_even(&pow10(scale), divisor);
        }
        // d(π^p) = p·π^(p-1)·dπ and π^(p-1) < 10^(p/2).
        let working = scale + power / 2 + decimal_len(u64::from(power)) + 3;
        let pi = self.pi_scaled(working);
        let raw = num_traits::pow(pi, power as usize);
        let shift = pow10(working * power - scale);
        div_round_half_even(&raw, &(shift * divisor))
    }

    pub fn reference_value(&mut self, n: u32, digits: u32) -> FixedDecimal {
        let scale = digits + CONSTANT_GUARD;
        let divisor = BigInt::from(factorial(2 * n + 1));
        FixedDecimal::from_parts(
            self.pi_power_over(2 * n, &divisor, scale),
            scale,
            CONSTANT_GUARD,
        )
    }

    pub fn basel_power(&mut self, n: u32, digits: u32) -> FixedDecimal {
        let scale = digits + CONSTANT_GUARD;
        let divisor = num_traits::pow(BigInt::from(6u32), n as usize);
        FixedDecimal::from_parts(
            self.pi_power_over(2 * n, &divisor, scale),
            scale,
            CONSTANT_GUARD,
        )
    }

    /// Taylor series `Σ (−1)^j y^(2j)/(2j+1)!` at `y = πx`.
    pub fn sin_over_pix(&mut self, x: &BigRational, digits: u32) -> FixedDecimal {
        let scale = digits + CONSTANT_GUARD;
        if x.is_zero() {
            return FixedDecimal::one(scale, CONSTANT_GUARD);
        }
        // Terms peak near e^|y|, so that many leading digits cancel.
        let x_ceil = (x.numer().abs() + x.denom() - 1u32) / x.denom();
        let y_bound = x_ceil.to_u64().unwrap_or(u64::MAX / 8).saturating_mul(4);
        let cancel = u32::try_from(y_bound.saturating_mul(45) / 100 + 1).unwrap_or(u32::MAX / 4);
        let working = scale + cancel + 5;

        let pi_extra = 3 + decimal_len(y_bound);
        let pi_scale = working + pi_extra;
        let pi = FixedDecimal::from_parts(self.pi_scaled(pi_scale), pi_scale, 0);
        let y = pi.mul_rational(x).rescale(working, 0);
        let y2 = &y * &y;

        let mut term = FixedDecimal::one(working, 0);
        let mut sum = term.clone();
        let mut j: u64 = 1;
        loop {
            term = (&term * &y2).div_u64((2 * j) * (2 * j + 1));
            if term.is_zero() {
                break;
            }
            sum = if j % 2 == 1 {
                &sum - &term
            } else {
                &sum + &term
            };
            j += 1;
        }
        sum.rescale(scale, CONSTANT_GUARD)
    }
}
