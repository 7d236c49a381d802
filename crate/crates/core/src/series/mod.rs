//! Truncated power series over ℚ and the wreath product generating functions.

mod lattice;
mod wreath_series;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{as_integer, fmt_q, Q};

pub use lattice::{subgroup_count, sublattice_count_brute};
pub use wreath_series::{lhs_wreath_series, macdonald_dimension_check, LhsSeries, MacdonaldReport, Route, WreathKind};

/// `c₀ + c₁q + ⋯ + c_N q^N`, exact and closed at order `N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Q>,
}

impl TruncatedSeries {
    /// Coefficients `c₀..c_N`; an empty list is the zero series of order 0.
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Q::zero());
        }
        TruncatedSeries { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Q::from_integer(c.into())).collect())
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries { coeffs: vec![Q::zero(); order + 1] }
    }

    pub fn constant(c: Q, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Q::one(), order)
    }

    /// `c · q^k`, zero if `k > order`.
    pub fn monomial(c: Q, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Q {
        &self.coeffs[n]
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::TruncationMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(TruncatedSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(TruncatedSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() })
    }

    pub fn scale(&self, c: &Q) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.order();
        let mut out = vec![Q::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }

    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NonInvertibleSeries);
        }
        let n = self.order();
        let mut out: Vec<Q> = Vec::with_capacity(n + 1);
        out.push(c0.recip());
        for k in 1..=n {
            let s = (1..=k).fold(Q::zero(), |acc, i| acc + &self.coeffs[i] * &out[k - i]);
            out.push(-s / c0);
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Integer power; negative exponents need a nonzero constant term.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one(self.order());
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul_unchecked(&sq);
            }
        }
        Ok(acc)
    }

    /// `exp(f)` for `f(0) = 0`, from `n eₙ = Σ_{k=1}^{n} k fₖ e_{n−k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ExpNonzeroConstant);
        }
        let n = self.order();
        let mut out = vec![Q::one()];
        for m in 1..=n {
            let s = (1..=m).fold(Q::zero(), |acc, k| acc + Q::from_integer(k.into()) * &self.coeffs[k] * &out[m - k]);
            out.push(s / Q::from_integer(m.into()));
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// `log(f)` for `f(0) = 1`, from `n lₙ = n fₙ − Σ_{k=1}^{n−1} k lₖ f_{n−k}`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::LogNonunitConstant);
        }
        let n = self.order();
        let mut out = vec![Q::zero()];
        for m in 1..=n {
            let s = (1..m).fold(Q::zero(), |acc, k| acc + Q::from_integer(k.into()) * &out[k] * &self.coeffs[m - k]);
            let mq = Q::from_integer(m.into());
            out.push((&mq * &self.coeffs[m] - s) / mq);
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// `f(q^r)`
    pub fn substitute_q_power(&self, r: usize) -> Self {
        let n = self.order();
        let mut out = vec![Q::zero(); n + 1];
        if r == 0 {
            out[0] = self.coeffs.iter().fold(Q::zero(), |a, b| a + b);
        } else {
            for (i, c) in self.coeffs.iter().enumerate() {
                if i * r <= n {
                    out[i * r] = c.clone();
                } else {
                    break;
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }

    /// `(1 − q^r)^e`
    pub fn one_minus_q_power(r: usize, e: i64, order: usize) -> Result<Self> {
        let base = Self::one(order).sub(&Self::monomial(Q::one(), r, order))?;
        base.pow(e)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(fmt_q).collect()
    }

    /// Index of the first differing coefficient among the first `len` coefficients.
    pub fn first_mismatch(a: &[Q], b: &[Q]) -> Option<usize> {
        a.iter().zip(b).position(|(x, y)| x != y)
    }
}

fn integer_exponent(chi: &Q) -> Result<i64> {
    as_integer(chi).ok_or_else(|| Error::NonIntegerExponent(fmt_q(chi)))
}

/// `Π_{r≥1} (1 − q^r)^{−J_{r,m} χ}`
pub fn rhs_main_formula(m: usize, chi: &Q, order: usize) -> Result<TruncatedSeries> {
    let e = integer_exponent(chi)?;
    let mut acc = TruncatedSeries::one(order);
    for r in 1..=order {
        let j = subgroup_count(r, m);
        if j == 0 || e == 0 {
            continue;
        }
        let j = i64::try_from(j).map_err(|_| Error::NonIntegerExponent(j.to_string()))?;
        acc = acc.mul_unchecked(&TruncatedSeries::one_minus_q_power(r, -j * e, order)?);
    }
    Ok(acc)
}

/// The same product indexed by `(j₁, …, j_m)` with exponent `j₂ j₃² ⋯ j_m^{m−1}`.
pub fn rhs_multi_index_formula(m: usize, chi: &Q, order: usize) -> Result<TruncatedSeries> {
    let e = integer_exponent(chi)?;
    let mut acc = TruncatedSeries::one(order);
    let mut js = Vec::with_capacity(m);
    fn rec(
        m: usize,
        order: usize,
        e: i64,
        prod: usize,
        js: &mut Vec<usize>,
        acc: &mut TruncatedSeries,
    ) -> Result<()> {
        if js.len() == m {
            let weight: i64 = js.iter().enumerate().map(|(i, &j)| (j as i64).pow(i as u32)).product();
            *acc = acc.mul_unchecked(&TruncatedSeries::one_minus_q_power(prod, -weight * e, order)?);
            return Ok(());
        }
        for j in 1..=order / prod {
            js.push(j);
            rec(m, order, e, prod * j, js, acc)?;
            js.pop();
        }
        Ok(())
    }
    if e != 0 {
        rec(m, order, e, 1, &mut js, &mut acc)?;
    }
    Ok(acc)
}

/// `exp(χ_ES · q)`
pub fn rhs_exp_formula(chi_es: &Q, order: usize) -> TruncatedSeries {
    TruncatedSeries::monomial(chi_es.clone(), 1, order).exp().expect("zero constant term")
}

/// The Euler-Satake generating function for `χ^{ES}_{(m)}`: the exponential
/// formula for `m = 0` and `Π (1 − q^r)^{−J_{r,m−1} χ^{ES}_{(m)}}` for `m ≥ 1`,
/// using `χ^{ES}_{(m)} = χ_{(m−1)}`.
pub fn rhs_es_formula(m: usize, chi_es: &Q, order: usize) -> Result<TruncatedSeries> {
    if m == 0 {
        Ok(rhs_exp_formula(chi_es, order))
    } else {
        rhs_main_formula(m - 1, chi_es, order)
    }
}

/// Coefficient-wise comparison of a computed left side with a formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentityReport {
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
    /// Largest `n` with coefficients `0..=n` equal, if the constant terms agree.
    pub equal_up_to: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mismatch_index: Option<usize>,
}

impl IdentityReport {
    /// Compares the available left-side coefficients with the right side.
    pub fn compare(lhs: &[Q], rhs: &TruncatedSeries) -> Self {
        let len = lhs.len().min(rhs.coeffs().len());
        let mismatch = TruncatedSeries::first_mismatch(&lhs[..len], &rhs.coeffs()[..len]);
        let equal_up_to = match mismatch {
            Some(0) => None,
            Some(i) => Some(i - 1),
            None => len.checked_sub(1),
        };
        IdentityReport {
            lhs: lhs.iter().map(fmt_q).collect(),
            rhs: rhs.to_strings(),
            equal_up_to,
            mismatch_index: mismatch,
        }
    }

    /// Equal through the full right-side order.
    pub fn passed(&self) -> bool {
        self.mismatch_index.is_none() && self.lhs.len() >= self.rhs.len()
    }
}

pub(crate) fn q_from_u128(num: u128, den: u128) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q_frac, q_int};

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        s.coeffs().iter().map(|c| as_integer(c).unwrap()).collect()
    }

    #[test]
    fn arithmetic_examples() {
        let e = TruncatedSeries::monomial(q_int(1), 1, 4).exp().unwrap();
        assert_eq!(e.coeffs(), &[q_int(1), q_int(1), q_frac(1, 2), q_frac(1, 6), q_frac(1, 24)]);
        let s = TruncatedSeries::one_minus_q_power(1, -2, 4).unwrap();
        assert_eq!(ints(&s), vec![1, 2, 3, 4, 5]);
        let a = TruncatedSeries::one_minus_q_power(2, -1, 4).unwrap();
        let b = TruncatedSeries::one_minus_q_power(1, -1, 4).unwrap();
        assert_eq!(ints(&a.mul(&b).unwrap()), vec![1, 1, 2, 2, 3]);
        assert!(matches!(TruncatedSeries::one(2).exp(), Err(Error::ExpNonzeroConstant)));
        assert!(matches!(TruncatedSeries::zero(2).pow(-1), Err(Error::NonInvertibleSeries)));
        assert!(matches!(TruncatedSeries::zero(2).add(&TruncatedSeries::zero(3)), Err(Error::TruncationMismatch(2, 3))));
        let f = TruncatedSeries::from_integers(&[1, 1, 0, 0]);
        assert_eq!(f.substitute_q_power(2).coeffs(), &[q_int(1), q_int(0), q_int(1), q_int(0)]);
        let l = f.log().unwrap();
        assert_eq!(l.coeffs(), &[q_int(0), q_int(1), q_frac(-1, 2), q_frac(1, 3)]);
        assert_eq!(l.exp().unwrap(), f);
    }

    #[test]
    fn formula_examples() {
        assert_eq!(ints(&rhs_main_formula(0, &q_int(1), 4).unwrap()), vec![1, 1, 1, 1, 1]);
        assert_eq!(ints(&rhs_main_formula(1, &q_int(1), 6).unwrap()), vec![1, 1, 2, 3, 5, 7, 11]);
        assert_eq!(ints(&rhs_main_formula(1, &q_int(2), 6).unwrap()), vec![1, 2, 5, 10, 20, 36, 65]);
        assert_eq!(ints(&rhs_main_formula(3, &q_int(0), 3).unwrap()), vec![1, 0, 0, 0]);
        assert!(matches!(rhs_main_formula(1, &q_frac(1, 2), 3), Err(Error::NonIntegerExponent(_))));
        let e = rhs_exp_formula(&q_frac(1, 2), 3);
        assert_eq!(e.coeffs(), &[q_int(1), q_frac(1, 2), q_frac(1, 8), q_frac(1, 48)]);
        let e = rhs_exp_formula(&q_int(2), 3);
        assert_eq!(e.coeffs(), &[q_int(1), q_int(2), q_int(2), q_frac(4, 3)]);
        for m in 0..=3 {
            for chi in [-2, 1, 3] {
                assert_eq!(
                    rhs_main_formula(m, &q_int(chi), 8).unwrap(),
                    rhs_multi_index_formula(m, &q_int(chi), 8).unwrap()
                );
            }
        }
    }

    #[test]
    fn identity_report() {
        let rhs = TruncatedSeries::from_integers(&[1, 2, 5]);
        let r = IdentityReport::compare(&[q_int(1), q_int(2), q_int(5)], &rhs);
        assert!(r.passed());
        assert_eq!(r.equal_up_to, Some(2));
        let r = IdentityReport::compare(&[q_int(1), q_int(3)], &rhs);
        assert_eq!(r.mismatch_index, Some(1));
        assert_eq!(r.equal_up_to, Some(0));
        assert!(!r.passed());
        let r = IdentityReport::compare(&[q_int(1), q_int(2)], &rhs);
        assert!(!r.passed());
    }
}
