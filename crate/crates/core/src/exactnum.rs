//! Number semantics shared by every other module.
//!
//! Two representations are used:
//!
//! * [`BigRational`]: exact, always reduced, positive denominator.
//! * [`FixedDecimal`]: `mantissa · 10^(-scale)` where the last `guard`
//!   digits of the scale are guard digits beyond the precision the caller
//!   asked for. Every digit that gets dropped is dropped with
//!   round-half-even, so one elementary operation adds at most half a unit
//!   in the last (guarded) place.
//!
//! Binary floating point is never used for values.

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Exact arbitrary-precision rational, stored in lowest terms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BigRational(Ratio<BigInt>);

/// Builds `num/den`, reduced, with the sign carried by the numerator.
pub fn rat(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<BigRational> {
    BigRational::new(num, den)
}

impl BigRational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self(Ratio::new(num.into(), den)))
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        Self(Ratio::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        Self(Ratio::zero())
    }

    pub fn one() -> Self {
        Self(Ratio::one())
    }

    /// `1/ℓ²`, the specialization of the symmetric variables used throughout.
    pub fn recip_square(ell: u64) -> Result<Self> {
        if ell == 0 {
            return Err(Error::Domain("1/ℓ² is undefined at ℓ = 0".to_string()));
        }
        let ell = BigInt::from(ell);
        Ok(Self(Ratio::new_raw(BigInt::one(), &ell * &ell)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always strictly positive.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self(self.0.recip()))
    }

    pub fn pow(&self, exp: u32) -> Self {
        Self(Pow::pow(&self.0, exp))
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }
}

impl Default for BigRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for BigRational {
    fn from(value: i64) -> Self {
        Self::from_integer(value)
    }
}

impl From<BigInt> for BigRational {
    fn from(value: BigInt) -> Self {
        Self::from_integer(value)
    }
}

/// Prints `p/q`, or just `p` when the denominator is 1.
impl fmt::Display for BigRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// Accepts `p/q` or a bare integer.
impl FromStr for BigRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse = |t: &str| {
            BigInt::from_str(t.trim()).map_err(|_| {
                Error::Domain(alloc::format!("`{s}` is not a rational (p/q or integer)"))
            })
        };
        match s.split_once('/') {
            Some((num, den)) => Self::new(parse(num)?, parse(den)?),
            None => Ok(Self::from_integer(parse(s)?)),
        }
    }
}

macro_rules! forward_rational_op {
    ($trait:ident, $method:ident) => {
        impl $trait<&BigRational> for &BigRational {
            type Output = BigRational;
            fn $method(self, rhs: &BigRational) -> BigRational {
                BigRational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<BigRational> for BigRational {
            type Output = BigRational;
            fn $method(self, rhs: BigRational) -> BigRational {
                BigRational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&BigRational> for BigRational {
            type Output = BigRational;
            fn $method(self, rhs: &BigRational) -> BigRational {
                BigRational(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_rational_op!(Add, add);
forward_rational_op!(Sub, sub);
forward_rational_op!(Mul, mul);
// Panics on a zero divisor, like integer division.
forward_rational_op!(Div, div);

impl Neg for BigRational {
    type Output = BigRational;
    fn neg(self) -> BigRational {
        BigRational(-self.0)
    }
}

impl Neg for &BigRational {
    type Output = BigRational;
    fn neg(self) -> BigRational {
        BigRational(-&self.0)
    }
}

impl core::iter::Sum for BigRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

pub(crate) fn pow10(exp: u32) -> BigInt {
    Pow::pow(BigInt::from(10u32), exp)
}

/// `num / den` rounded to the nearest integer, ties to even. `den > 0`.
pub(crate) fn div_round_half_even(num: &BigInt, den: &BigInt) -> BigInt {
    debug_assert!(den.is_positive());
    let (q, r) = num.div_mod_floor(den);
    match (r << 1u32).cmp(den) {
        Ordering::Less => q,
        Ordering::Greater => q + 1,
        Ordering::Equal if q.is_odd() => q + 1,
        Ordering::Equal => q,
    }
}

/// Same as [`div_round_half_even`] with a machine-word divisor.
pub(crate) fn div_round_half_even_u64(num: &BigInt, den: u64) -> BigInt {
    debug_assert!(den > 0);
    let mag = num.magnitude();
    let q = mag / den;
    let r = (mag % den).to_u64().expect("remainder below a u64 divisor");
    let twice = u128::from(r) << 1;
    let round_up = match twice.cmp(&u128::from(den)) {
        Ordering::Less => false,
        Ordering::Greater => true,
        Ordering::Equal => q.is_odd(),
    };
    let q = if round_up { q + 1u32 } else { q };
    BigInt::from_biguint(num.sign(), q)
}

/// `ceil(num / den)`, `den > 0`.
pub(crate) fn div_ceil(num: &BigInt, den: &BigInt) -> BigInt {
    -((-num).div_floor(den))
}

/// Guard digits for a computation at depth `depth` truncated at `truncation`:
/// `10 + ceil(log10(N·n + 1))`.
///
/// A sweep performs at most `N·n` roundings, so this keeps the accumulated
/// error ten orders of magnitude below the last requested digit.
pub fn guard_digits(truncation: u64, depth: usize) -> u32 {
    let ops = u128::from(truncation) * depth as u128 + 1;
    let mut k = 0u32;
    let mut p = 1u128;
    while p < ops {
        p *= 10;
        k += 1;
    }
    10 + k
}

/// How a dropped tail of digits is folded into the kept ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    HalfEven,
    /// Toward +∞; used when a printed value must remain an upper bound.
    Ceiling,
}

/// Scaled decimal: value = `mantissa · 10^(-scale)`.
///
/// `guard ≤ scale` counts the trailing digits that are carried beyond the
/// requested precision, so [`FixedDecimal::digits`] is `scale - guard`.
/// Equality and ordering compare values, not representations.
#[derive(Clone, Debug)]
pub struct FixedDecimal {
    mantissa: BigInt,
    scale: u32,
    guard: u32,
}

impl FixedDecimal {
    pub fn from_parts(mantissa: BigInt, scale: u32, guard: u32) -> Self {
        Self {
            mantissa,
            scale,
            guard: guard.min(scale),
        }
    }

    pub fn zero(scale: u32, guard: u32) -> Self {
        Self::from_parts(BigInt::zero(), scale, guard)
    }

    pub fn one(scale: u32, guard: u32) -> Self {
        Self::from_parts(pow10(scale), scale, guard)
    }

    pub fn from_integer(value: impl Into<BigInt>, scale: u32, guard: u32) -> Self {
        Self::from_parts(value.into() * pow10(scale), scale, guard)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn guard(&self) -> u32 {
        self.guard
    }

    /// Requested precision, excluding guard digits.
    pub fn digits(&self) -> u32 {
        self.scale - self.guard
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn abs(&self) -> Self {
        Self::from_parts(self.mantissa.abs(), self.scale, self.guard)
    }

    /// One unit in the last (guarded) place.
    pub fn ulp(&self) -> BigRational {
        BigRational(Ratio::new_raw(BigInt::one(), pow10(self.scale)))
    }

    /// The exact value this decimal represents.
    pub fn to_rational(&self) -> BigRational {
        BigRational(Ratio::new(self.mantissa.clone(), pow10(self.scale)))
    }

    /// Re-expresses the value at another scale; shrinking rounds half-even.
    pub fn rescale(&self, scale: u32, guard: u32) -> Self {
        let mantissa = match scale.cmp(&self.scale) {
            Ordering::Equal => self.mantissa.clone(),
            Ordering::Greater => &self.mantissa * pow10(scale - self.scale),
            Ordering::Less => div_round_half_even(&self.mantissa, &pow10(self.scale - scale)),
        };
        Self::from_parts(mantissa, scale, guard)
    }

    /// Like [`FixedDecimal::rescale`] but rounds toward +∞ when shrinking.
    pub fn rescale_up(&self, scale: u32, guard: u32) -> Self {
        if scale >= self.scale {
            return self.rescale(scale, guard);
        }
        let mantissa = div_ceil(&self.mantissa, &pow10(self.scale - scale));
        Self::from_parts(mantissa, scale, guard)
    }

    /// `self / d`, rounded half-even at the current scale.
    pub fn div_u64(&self, d: u64) -> Self {
        assert!(d > 0, "division by zero");
        Self::from_parts(
            div_round_half_even_u64(&self.mantissa, d),
            self.scale,
            self.guard,
        )
    }

    /// `self · q`, rounded half-even at the current scale.
    pub fn mul_rational(&self, q: &BigRational) -> Self {
        let num = &self.mantissa * q.numer();
        Self::from_parts(div_round_half_even(&num, q.denom()), self.scale, self.guard)
    }

    /// `self += other / d` in place with one rounding. Both operands must
    /// share a scale; this is the inner step of the fixed-point sweep.
    pub fn add_div_assign(&mut self, other: &FixedDecimal, d: &BigInt) {
        assert_eq!(self.scale, other.scale, "scale mismatch in add_div_assign");
        let term = match d.to_u64() {
            Some(small) if small > 0 => div_round_half_even_u64(&other.mantissa, small),
            _ => div_round_half_even(&other.mantissa, d),
        };
        self.mantissa += term;
    }

    /// Decimal text with exactly `display_digits` fractional digits.
    pub fn to_decimal_string(&self, display_digits: u32) -> String {
        self.to_decimal_string_with(display_digits, Rounding::HalfEven)
    }

    pub fn to_decimal_string_with(&self, display_digits: u32, rounding: Rounding) -> String {
        let shown = match rounding {
            Rounding::HalfEven => self.rescale(display_digits, 0),
            Rounding::Ceiling => self.rescale_up(display_digits, 0),
        };
        format_scaled(&shown.mantissa, display_digits)
    }

    fn aligned(&self, other: &Self) -> (BigInt, BigInt, u32, u32) {
        let scale = self.scale.max(other.scale);
        let guard = self.guard.max(other.guard);
        let a = self.rescale(scale, guard).mantissa;
        let b = other.rescale(scale, guard).mantissa;
        (a, b, scale, guard)
    }
}

fn format_scaled(mantissa: &BigInt, frac_digits: u32) -> String {
    let mut digits = mantissa.magnitude().to_str_radix(10);
    let frac = frac_digits as usize;
    if digits.len() <= frac {
        let pad = frac + 1 - digits.len();
        digits.insert_str(0, &"0".repeat(pad));
    }
    let mut out = String::with_capacity(digits.len() + 2);
    if mantissa.sign() == Sign::Minus {
        out.push('-');
    }
    let split = digits.len() - frac;
    out.push_str(&digits[..split]);
    if frac > 0 {
        out.push('.');
        out.push_str(&digits[split..]);
    }
    out
}

/// Shows the value at its requested precision (guard digits rounded away).
impl fmt::Display for FixedDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string(self.digits()))
    }
}

/// Parses plain decimal text (`-12.034`); the scale is the number of
/// fractional digits and there are no guard digits.
impl FromStr for FixedDecimal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(alloc::format!("`{s}` is not a plain decimal number"));
        let t = s.trim();
        let (negative, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part
            .bytes()
            .chain(frac_part.bytes())
            .all(|b| b.is_ascii_digit())
        {
            return Err(bad());
        }
        let mut all = String::with_capacity(int_part.len() + frac_part.len());
        all.push_str(int_part);
        all.push_str(frac_part);
        let mag = BigUint::from_str(if all.is_empty() { "0" } else { &all }).map_err(|_| bad())?;
        let sign = if negative { Sign::Minus } else { Sign::Plus };
        let scale = u32::try_from(frac_part.len()).map_err(|_| bad())?;
        Ok(Self::from_parts(BigInt::from_biguint(sign, mag), scale, 0))
    }
}

impl PartialEq for FixedDecimal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for FixedDecimal {}

impl PartialOrd for FixedDecimal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FixedDecimal {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl Add for &FixedDecimal {
    type Output = FixedDecimal;
    fn add(self, rhs: &FixedDecimal) -> FixedDecimal {
        let (a, b, scale, guard) = self.aligned(rhs);
        FixedDecimal::from_parts(a + b, scale, guard)
    }
}

impl Sub for &FixedDecimal {
    type Output = FixedDecimal;
    fn sub(self, rhs: &FixedDecimal) -> FixedDecimal {
        let (a, b, scale, guard) = self.aligned(rhs);
        FixedDecimal::from_parts(a - b, scale, guard)
    }
}

/// Product at the larger of the two scales, rounded half-even.
impl Mul for &FixedDecimal {
    type Output = FixedDecimal;
    fn mul(self, rhs: &FixedDecimal) -> FixedDecimal {
        let scale = self.scale.max(rhs.scale);
        let guard = self.guard.max(rhs.guard);
        let raw = &self.mantissa * &rhs.mantissa;
        let drop = self.scale + rhs.scale - scale;
        FixedDecimal::from_parts(div_round_half_even(&raw, &pow10(drop)), scale, guard)
    }
}

impl Neg for &FixedDecimal {
    type Output = FixedDecimal;
    fn neg(self) -> FixedDecimal {
        FixedDecimal::from_parts(-&self.mantissa, self.scale, self.guard)
    }
}

/// `round-half-even(q · 10^(digits+guard)) · 10^(-(digits+guard))`.
pub fn fixed_from_rational(q: &BigRational, digits: u32, guard: u32) -> FixedDecimal {
    let scale = digits + guard;
    let num = q.numer() * pow10(scale);
    FixedDecimal::from_parts(div_round_half_even(&num, q.denom()), scale, guard)
}

/// `1/ℓ²` to within half a unit in the guarded last place.
pub fn fixed_recip_square(ell: u64, digits: u32, guard: u32) -> Result<FixedDecimal> {
    if ell == 0 {
        return Err(Error::Domain("1/ℓ² is undefined at ℓ = 0".to_string()));
    }
    let scale = digits + guard;
    let square = BigInt::from(ell) * BigInt::from(ell);
    Ok(FixedDecimal::from_parts(
        div_round_half_even(&pow10(scale), &square),
        scale,
        guard,
    ))
}

/// See [`FixedDecimal::to_decimal_string`].
pub fn to_decimal_string(x: &FixedDecimal, display_digits: u32) -> String {
    x.to_decimal_string(display_digits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> BigRational {
        rat(n, d).unwrap()
    }

    #[test]
    fn rat_reduces_and_normalizes_sign() {
        assert_eq!(r(2, 4).to_string(), "1/2");
        assert_eq!(r(3, -6).to_string(), "-1/2");
        let zero = r(0, 7);
        assert_eq!(zero.numer(), &BigInt::zero());
        assert_eq!(zero.denom(), &BigInt::one());
        assert_eq!(rat(1, 0), Err(Error::ZeroDenominator));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!("7/18".parse::<BigRational>().unwrap(), r(7, 18));
        assert_eq!(" -3 ".parse::<BigRational>().unwrap(), r(-3, 1));
        assert_eq!("2/-4".parse::<BigRational>().unwrap(), r(-1, 2));
        assert!("1/0".parse::<BigRational>().is_err());
        assert!("x".parse::<BigRational>().is_err());
        assert!("1.5".parse::<BigRational>().is_err());
    }

    #[test]
    fn fixed_from_rational_examples() {
        assert_eq!(
            fixed_from_rational(&r(1, 4), 3, 0).to_decimal_string(3),
            "0.250"
        );
        assert_eq!(
            fixed_from_rational(&r(1, 3), 4, 0).to_decimal_string(4),
            "0.3333"
        );
        // 7/18 = 0.3888…, long division: 7000000 / 18 = 388888 rem 16 → rounds up.
        assert_eq!(
            fixed_from_rational(&r(7, 18), 6, 0).to_decimal_string(6),
            "0.388889"
        );
        assert_eq!(
            fixed_from_rational(&r(-7, 18), 6, 0).to_decimal_string(6),
            "-0.388889"
        );
    }

    #[test]
    fn round_half_even_ties() {
        // 1/8 = 0.125 exactly: tie at two digits rounds to the even 0.12.
        assert_eq!(
            fixed_from_rational(&r(1, 8), 2, 0).to_decimal_string(2),
            "0.12"
        );
        assert_eq!(
            fixed_from_rational(&r(3, 8), 2, 0).to_decimal_string(2),
            "0.38"
        );
        assert_eq!(
            fixed_from_rational(&r(-1, 8), 2, 0).to_decimal_string(2),
            "-0.12"
        );
        assert_eq!(
            div_round_half_even_u64(&BigInt::from(25), 10),
            BigInt::from(2)
        );
        assert_eq!(
            div_round_half_even_u64(&BigInt::from(35), 10),
            BigInt::from(4)
        );
        assert_eq!(
            div_round_half_even_u64(&BigInt::from(-35), 10),
            BigInt::from(-4)
        );
    }

    #[test]
    fn recip_square_examples() {
        assert_eq!(
            fixed_recip_square(1, 10, 0).unwrap().to_decimal_string(10),
            "1.0000000000"
        );
        assert_eq!(
            fixed_recip_square(2, 10, 0).unwrap().to_decimal_string(10),
            "0.2500000000"
        );
        assert_eq!(
            fixed_recip_square(3, 10, 0).unwrap().to_decimal_string(10),
            "0.1111111111"
        );
        assert!(matches!(
            fixed_recip_square(0, 10, 0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn decimal_string_examples() {
        let quarter = fixed_from_rational(&r(1, 4), 3, 0);
        assert_eq!(to_decimal_string(&quarter, 2), "0.25");
        let third = fixed_from_rational(&r(1, 3), 10, 0);
        assert_eq!(to_decimal_string(&third, 5), "0.33333");
        assert_eq!(
            to_decimal_string(&FixedDecimal::from_integer(-12, 2, 0), 3),
            "-12.000"
        );
        assert_eq!(to_decimal_string(&FixedDecimal::zero(4, 0), 2), "0.00");
        // -0.001 rounds to zero without a sign.
        let tiny = FixedDecimal::from_parts(BigInt::from(-1), 3, 0);
        assert_eq!(tiny.to_decimal_string(2), "0.00");
    }

    #[test]
    fn ceiling_rounding_keeps_upper_bounds() {
        let x = fixed_from_rational(&r(1, 3), 10, 0);
        assert_eq!(x.to_decimal_string_with(4, Rounding::Ceiling), "0.3334");
        assert_eq!(
            (-&x).to_decimal_string_with(4, Rounding::Ceiling),
            "-0.3333"
        );
    }

    #[test]
    fn decimal_parsing() {
        let x: FixedDecimal = "0.81174242528335364363700277240587592708106321393904"
            .parse()
            .unwrap();
        assert_eq!(x.scale(), 50);
        assert_eq!(
            x.to_decimal_string(50),
            "0.81174242528335364363700277240587592708106321393904"
        );
        let y: FixedDecimal = "-3".parse().unwrap();
        assert_eq!(y, FixedDecimal::from_integer(-3, 5, 0));
        assert!("1e5".parse::<FixedDecimal>().is_err());
        assert!("".parse::<FixedDecimal>().is_err());
        assert!("-".parse::<FixedDecimal>().is_err());
    }

    #[test]
    fn guard_policy() {
        assert_eq!(guard_digits(0, 0), 10);
        assert_eq!(guard_digits(9, 1), 11);
        assert_eq!(guard_digits(1_000_000, 1), 17);
        assert_eq!(guard_digits(100_000, 2), 16);
    }

    #[test]
    fn value_equality_across_scales() {
        assert_eq!(FixedDecimal::from_integer(1, 3, 0), FixedDecimal::one(7, 2));
        assert!(
            FixedDecimal::from_parts(BigInt::from(5), 1, 0)
                > FixedDecimal::from_parts(BigInt::from(49), 2, 0)
        );
    }

    fn small_rational() -> impl Strategy<Value = BigRational> {
        (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| r(n, d))
    }

    proptest! {
        // Exact arithmetic then one conversion vs. fixed-point arithmetic:
        // conversions contribute ≤ 1/2 ulp each and the operation ≤ 1/2 ulp
        // (times the operand magnitudes for products).
        #[test]
        fn fixed_tracks_exact(p in small_rational(), q in small_rational(),
                              digits in prop::sample::select(vec![10u32, 20]),
                              guard in prop::sample::select(vec![0u32, 5])) {
            let fp = fixed_from_rational(&p, digits, guard);
            let fq = fixed_from_rational(&q, digits, guard);
            let ulp = fp.ulp();

            let sum_exact = fixed_from_rational(&(&p + &q), digits, guard);
            let sum_fixed = &fp + &fq;
            let err = (sum_exact.to_rational() - sum_fixed.to_rational()).abs();
            prop_assert!(err <= &ulp * &BigRational::from(2));

            let prod_exact = fixed_from_rational(&(&p * &q), digits, guard);
            let prod_fixed = &fp * &fq;
            let err = (prod_exact.to_rational() - prod_fixed.to_rational()).abs();
            let half = r(1, 2);
            let allowance = &ulp * &(&(&p.abs() + &q.abs()) * &half + BigRational::from(2));
            prop_assert!(err <= allowance);
        }

        #[test]
        fn exact_decimals_round_trip(k in -1_000_000i64..1_000_000, d in 0u32..6, extra in 0u32..4) {
            let q = rat(k, pow10(d)).unwrap();
            let x = fixed_from_rational(&q, d.max(1) + extra, 0);
            prop_assert_eq!(x.to_rational(), q);
        }

        // Refining the display never contradicts the coarser rounding.
        #[test]
        fn display_is_monotone(p in small_rational(), shorter in 1u32..15, more in 1u32..10) {
            let x = fixed_from_rational(&p, 30, 0);
            let coarse: FixedDecimal = x.to_decimal_string(shorter).parse().unwrap();
            let fine: FixedDecimal = x.to_decimal_string(shorter + more).parse().unwrap();
            let half = r(1, 2);
            let diff = (x.to_rational() - coarse.to_rational()).abs();
            prop_assert!(diff <= &coarse.ulp() * &half);
            // Double rounding can move a tie, never further than that.
            let drift = (fine.to_rational() - coarse.to_rational()).abs();
            prop_assert!(drift <= &(coarse.ulp() + fine.ulp()) * &half);
        }
    }
}
