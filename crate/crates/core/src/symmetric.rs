//! Elementary symmetric polynomials over the variables `x_1..x_M`.
//!
//! `σ_{M,k}` is the sum of all products of `k` distinct variables. It is
//! built three independent ways:
//!
//! * [`sigma_naive`] enumerates every index tuple `1 ≤ ℓ₁ < ⋯ < ℓ_k ≤ M`,
//! * [`sigma_recurrence`] sweeps `σ_{m,k} = σ_{m-1,k} + x_m σ_{m-1,k-1}`,
//! * [`expand_product`] multiplies out `∏_{k=1}^{M} (1 + x_k t)`.
//!
//! [`verify_theorem1`] checks that the coefficient of `t^k` in the product
//! equals `σ_{M,k}` from both constructions.
//!
//! Variable indices are 1-based.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::{BigRational, Error, Result};

/// Product of variables with positive exponents, sorted by variable index.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial {
    factors: Vec<(u32, u32)>,
}

impl Monomial {
    /// The empty product.
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(index: u32) -> Self {
        Self {
            factors: vec![(index, 1)],
        }
    }

    /// Squarefree product of the given variables.
    pub fn from_vars(indices: &[u32]) -> Self {
        let mut m = Self::one();
        for &i in indices {
            m = &m * &Self::var(i);
        }
        m
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut m = Self::one();
        for (var, exp) in factors {
            m.multiply_var(var, exp);
        }
        m
    }

    fn multiply_var(&mut self, var: u32, exp: u32) {
        if exp == 0 {
            return;
        }
        match self.factors.binary_search_by_key(&var, |&(v, _)| v) {
            Ok(pos) => self.factors[pos].1 += exp,
            Err(pos) => self.factors.insert(pos, (var, exp)),
        }
    }

    /// `(variable, exponent)` pairs in ascending variable order.
    pub fn factors(&self) -> &[(u32, u32)] {
        &self.factors
    }

    pub fn variables(&self) -> impl Iterator<Item = u32> + '_ {
        self.factors.iter().map(|&(v, _)| v)
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// Renames every variable through `map`.
    pub fn permute(&self, map: impl Fn(u32) -> u32) -> Self {
        Self::from_factors(self.factors.iter().map(|&(v, e)| (map(v), e)))
    }
}

impl Mul for &Monomial {
    type Output = Monomial;
    fn mul(self, rhs: &Monomial) -> Monomial {
        let mut out = self.clone();
        for &(v, e) in &rhs.factors {
            out.multiply_var(v, e);
        }
        out
    }
}

/// `x_1*x_2*x_3`, or `1` for the empty product.
impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, &(v, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "x_{v}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Multivariate polynomial with integer coefficients; zero terms are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SparsePolynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl SparsePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_monomial(Monomial::one())
    }

    pub fn var(index: u32) -> Self {
        Self::from_monomial(Monomial::var(index))
    }

    pub fn from_monomial(m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, BigInt::one());
        p
    }

    pub fn add_term(&mut self, m: Monomial, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order (ascending lexicographic index sequences).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn permute_variables(&self, map: impl Fn(u32) -> u32) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.permute(&map), c.clone());
        }
        out
    }

    /// Exact value at the given point.
    pub fn substitute(&self, assignment: &BTreeMap<u32, BigRational>) -> Result<BigRational> {
        substitute(self, assignment)
    }
}

impl Add for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn add(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Mul for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn mul(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        let mut out = SparsePolynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma * mb, ca * cb);
            }
        }
        out
    }
}

/// Terms joined by ` + `, each `c·x_i*x_j` with the coefficient omitted when 1.
impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else if c.is_negative() && c.magnitude().is_one() {
                write!(f, "-{m}")?;
            } else {
                write!(f, "{c}·{m}")?;
            }
        }
        Ok(())
    }
}

/// Coefficients of `∏_{k=1}^{M}(1 + x_k t)`, indexed by the power of `t`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProductExpansion {
    pub coefficients_by_power: Vec<SparsePolynomial>,
}

impl ProductExpansion {
    pub fn num_vars(&self) -> usize {
        self.coefficients_by_power.len() - 1
    }
}

/// Visits every strictly increasing `k`-tuple drawn from `1..=m`.
pub(crate) fn for_each_increasing_tuple(m: u64, k: usize, mut visit: impl FnMut(&[u64])) {
    if k == 0 {
        visit(&[]);
        return;
    }
    if (k as u64) > m {
        return;
    }
    let mut idx: Vec<u64> = (1..=k as u64).collect();
    loop {
        visit(&idx);
        // Rightmost position that can still move up.
        let mut pos = k;
        while pos > 0 {
            pos -= 1;
            if idx[pos] < m - (k - 1 - pos) as u64 {
                idx[pos] += 1;
                for j in pos + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
            if pos == 0 {
                return;
            }
        }
    }
}

/// `σ_{M,k}` by direct enumeration of `1 ≤ ℓ₁ < ⋯ < ℓ_k ≤ M`.
pub fn sigma_naive(m: u32, k: u32) -> SparsePolynomial {
    let mut p = SparsePolynomial::zero();
    for_each_increasing_tuple(u64::from(m), k as usize, |tuple| {
        let vars: Vec<u32> = tuple.iter().map(|&v| v as u32).collect();
        p.add_term(Monomial::from_vars(&vars), BigInt::one());
    });
    p
}

/// `[σ_{M,0}, …, σ_{M,k_max}]` by the one-row sweep: for each new variable
/// `x_m`, update `k = k_max, …, 1` in place with `row[k] += x_m · row[k-1]`.
pub fn sigma_recurrence(m: u32, k_max: u32) -> Vec<SparsePolynomial> {
    let mut row = vec![SparsePolynomial::zero(); k_max as usize + 1];
    row[0] = SparsePolynomial::one();
    for var in 1..=m {
        let x = SparsePolynomial::var(var);
        for k in (1..=k_max as usize).rev() {
            let shifted = &x * &row[k - 1];
            row[k] = &row[k] + &shifted;
        }
    }
    row
}

/// Multiplies out `∏_{k=1}^{M}(1 + x_k t)` factor by factor, as polynomials in `t`.
pub fn expand_product(m: u32) -> ProductExpansion {
    let mut coeffs = vec![SparsePolynomial::one()];
    for var in 1..=m {
        let factor = [SparsePolynomial::one(), SparsePolynomial::var(var)];
        let mut next = vec![SparsePolynomial::zero(); coeffs.len() + factor.len() - 1];
        for (i, a) in coeffs.iter().enumerate() {
            for (j, b) in factor.iter().enumerate() {
                next[i + j] = &next[i + j] + &(a * b);
            }
        }
        coeffs = next;
    }
    ProductExpansion {
        coefficients_by_power: coeffs,
    }
}

/// Above this many variables the symbolic check grows combinatorially.
pub const THEOREM_PRACTICAL_CEILING: u32 = 12;

/// First coefficient where the three constructions disagree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mismatch {
    pub k: u32,
    pub expansion: SparsePolynomial,
    pub nested_sum: SparsePolynomial,
    pub recurrence: SparsePolynomial,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TheoremReport {
    pub m: u32,
    /// Number of `t`-powers compared (`M + 1` on success).
    pub checked: u32,
    pub mismatch: Option<Mismatch>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }

    pub fn beyond_practical_ceiling(&self) -> bool {
        self.m > THEOREM_PRACTICAL_CEILING
    }
}

/// Compares, for every `0 ≤ k ≤ M`, the `t^k` coefficient of the product
/// expansion with `σ_{M,k}` from enumeration and from the recurrence.
pub fn verify_theorem1(m: u32) -> TheoremReport {
    let expansion = expand_product(m);
    let recurrence = sigma_recurrence(m, m);
    let mut checked = 0;
    for k in 0..=m {
        let ku = k as usize;
        let expanded = expansion
            .coefficients_by_power
            .get(ku)
            .cloned()
            .unwrap_or_default();
        let nested = sigma_naive(m, k);
        let swept = recurrence[ku].clone();
        if expanded != nested || nested != swept {
            return TheoremReport {
                m,
                checked,
                mismatch: Some(Mismatch {
                    k,
                    expansion: expanded,
                    nested_sum: nested,
                    recurrence: swept,
                }),
            };
        }
        checked += 1;
    }
    TheoremReport {
        m,
        checked,
        mismatch: None,
    }
}

/// Number of monomials in `σ_{M,k}`, i.e. `C(M, k)`.
pub fn term_count(m: u64, k: u64) -> BigUint {
    if k > m {
        return BigUint::zero();
    }
    let k = k.min(m - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= m - i;
        acc /= i + 1;
    }
    acc
}

/// Exact evaluation of `p` with `x_ℓ ↦ assignment[ℓ]`.
pub fn substitute(
    p: &SparsePolynomial,
    assignment: &BTreeMap<u32, BigRational>,
) -> Result<BigRational> {
    let mut total = BigRational::zero();
    for (m, c) in p.terms() {
        let mut term = BigRational::from_integer(c.clone());
        for &(var, exp) in m.factors() {
            let value = assignment.get(&var).ok_or(Error::MissingVariable(var))?;
            term = term * value.pow(exp);
        }
        total = total + term;
    }
    Ok(total)
}

/// The assignment `x_ℓ = 1/ℓ²` for `ℓ = 1..=m`.
pub fn reciprocal_squares(m: u32) -> BTreeMap<u32, BigRational> {
    (1..=m)
        .map(|l| (l, BigRational::recip_square(u64::from(l)).expect("ℓ ≥ 1")))
        .collect()
}

/// Renders a polynomial for human-facing output; see the `Display` impl.
pub fn render(p: &SparsePolynomial) -> String {
    alloc::format!("{p}")
}
