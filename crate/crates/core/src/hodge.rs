//! Shift numbers and shifted Hodge polynomials of wreath products, from
//! abstract sector data.
//!
//! A sector datum describes one component of one twisted sector of `M ⋊ G`:
//! its bigraded Hodge dimensions and the rotation angles of the twisting
//! element on the normal directions. The wreath product `Mⁿ ⋊ (G ≀ Sₙ)` has
//! one sector per type `ρ = (m_{r,α})` over the data labels `α`; its
//! cohomology is the tensor product of super-symmetric powers
//! `SP^{m_{r,α}}(H_α)`, shifted by `F_ρ = Σ m_{r,α} (F_α + d(r − 1)/2)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rational::{as_integer, binomial, fmt_q, q_frac, q_int, Q};
use crate::series::TruncatedSeries;
use crate::wreath::{enumerate_types, TypeFunction};

/// Nonnegative dimensions `h^{s,t}`.
pub type BigradedDims = BTreeMap<(u32, u32), u64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorHodgeDatum {
    pub class: String,
    pub component: usize,
    pub dims: BigradedDims,
    /// Rotation angles in `(0, 1]` on the normal directions.
    pub angles: Vec<Q>,
    /// Complex dimension of the component.
    pub d: usize,
}

impl SectorHodgeDatum {
    pub fn validate(&self) -> Result<()> {
        shift_number(&self.angles)?;
        if let Some(&(s, t)) = self.dims.keys().find(|&&(s, t)| s as usize > self.d || t as usize > self.d) {
            return Err(Error::Parse(format!(
                "dimension at ({s},{t}) exceeds the component dimension {} in sector {} component {}",
                self.d, self.class, self.component
            )));
        }
        Ok(())
    }

    pub fn shift(&self) -> Result<Q> {
        shift_number(&self.angles)
    }

    fn integer_shift(&self) -> Result<i64> {
        let f = self.shift()?;
        as_integer(&f).ok_or_else(|| Error::NonIntegerShift(fmt_q(&f)))
    }
}

/// `F = Σ θ`
pub fn shift_number(angles: &[Q]) -> Result<Q> {
    let mut f = Q::zero();
    for a in angles {
        if !a.is_positive() || *a > Q::one() {
            return Err(Error::AngleOutOfRange(fmt_q(a)));
        }
        f += a;
    }
    Ok(f)
}

/// `F + d(r − 1)/2`, the shift of an `r`-cycle whose cycle product has shift `F`.
pub fn wreath_cycle_shift(f: &Q, d: usize, r: usize) -> Q {
    f + q_frac((d * (r.max(1) - 1)) as i64, 2)
}

/// `F_ρ = Σ m_{r,α} (F_α + d(r − 1)/2)`, type labels indexing `data`.
pub fn wreath_type_shift(ty: &TypeFunction, data: &[SectorHodgeDatum], d: usize) -> Result<Q> {
    let mut total = Q::zero();
    for ((alpha, r), m) in ty.entries() {
        let datum = data.get(alpha).ok_or_else(|| Error::InvalidType(format!("label {alpha} has no sector datum")))?;
        total += wreath_cycle_shift(&datum.shift()?, d, r) * q_int(m as i64);
    }
    Ok(total)
}

/// A polynomial in `x, y` with exact rational coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct HodgePolynomial {
    terms: BTreeMap<(i64, i64), Q>,
}

impl HodgePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, Q::one())
    }

    pub fn monomial(s: i64, t: i64, c: Q) -> Self {
        let mut p = Self::zero();
        p.add_term(s, t, c);
        p
    }

    pub fn add_term(&mut self, s: i64, t: i64, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((s, t)).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(s, t));
        }
    }

    /// Nonzero terms `((s, t), c)` in increasing `(s, t)`.
    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, s: i64, t: i64) -> Q {
        self.terms.get(&(s, t)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(s, t), c) in &other.terms {
            out.add_term(s, t, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(s1, t1), a) in &self.terms {
            for (&(s2, t2), b) in &other.terms {
                out.add_term(s1 + s2, t1 + t2, a * b);
            }
        }
        out
    }

    /// Multiplies by `(xy)^k`.
    pub fn shift(&self, k: i64) -> Self {
        HodgePolynomial { terms: self.terms.iter().map(|(&(s, t), c)| ((s + k, t + k), c.clone())).collect() }
    }

    /// `p(−x, −y)`
    pub fn negate_variables(&self) -> Self {
        HodgePolynomial {
            terms: self
                .terms
                .iter()
                .map(|(&(s, t), c)| ((s, t), if (s + t) % 2 == 0 { c.clone() } else { -c.clone() }))
                .collect(),
        }
    }

    pub fn evaluate(&self, x: &Q, y: &Q) -> Q {
        self.terms.iter().fold(Q::zero(), |acc, (&(s, t), c)| acc + c * qpow(x, s) * qpow(y, t))
    }

    /// Terms as `"s,t" → "p/q"`.
    pub fn to_json(&self) -> BTreeMap<String, String> {
        self.terms.iter().map(|(&(s, t), c)| (format!("{s},{t}"), fmt_q(c))).collect()
    }
}

fn qpow(x: &Q, e: i64) -> Q {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

/// `Σ_n pₙ(x, y) qⁿ` truncated at a fixed order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeSeries {
    coeffs: Vec<HodgePolynomial>,
}

impl HodgeSeries {
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![HodgePolynomial::zero(); order + 1];
        coeffs[0] = HodgePolynomial::one();
        HodgeSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[HodgePolynomial] {
        &self.coeffs
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.order() != other.order() {
            return Err(Error::TruncationMismatch(self.order(), other.order()));
        }
        let n = self.order();
        let mut coeffs = vec![HodgePolynomial::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                if !other.coeffs[j].is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&self.coeffs[i].mul(&other.coeffs[j]));
                }
            }
        }
        Ok(HodgeSeries { coeffs })
    }

    /// The q-series obtained by evaluating every coefficient at `(x, y)`.
    pub fn evaluate(&self, x: &Q, y: &Q) -> TruncatedSeries {
        TruncatedSeries::new(self.coeffs.iter().map(|p| p.evaluate(x, y)).collect())
    }

    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        self.coeffs.iter().zip(&other.coeffs).position(|(a, b)| a != b)
    }
}

/// `h_CR(x, y) = Σ_α (xy)^{F_α} Σ h_α^{s,t} x^s y^t`
pub fn h_cr_polynomial(data: &[SectorHodgeDatum]) -> Result<HodgePolynomial> {
    let mut out = HodgePolynomial::zero();
    for datum in data {
        datum.validate()?;
        let f = datum.integer_shift()?;
        for (&(s, t), &h) in &datum.dims {
            out.add_term(s as i64 + f, t as i64 + f, q_int(h as i64));
        }
    }
    Ok(out)
}

/// Bigraded dimensions of the `m`-th super-symmetric power of a bigraded
/// space: basis vectors of odd total degree appear at most once.
///
/// Counts multisets of basis vectors directly, one bidegree at a time.
pub fn super_symmetric_power(dims: &BigradedDims, m: usize) -> HodgePolynomial {
    // poly[k] = polynomial of multisets of size k drawn from the bidegrees seen so far
    let mut poly: Vec<HodgePolynomial> = vec![HodgePolynomial::zero(); m + 1];
    poly[0] = HodgePolynomial::one();
    for (&(s, t), &h) in dims {
        let odd = (s + t) % 2 == 1;
        // choices of j vectors from an h-dimensional space in this bidegree
        let ways = |j: usize| -> BigInt {
            if odd {
                binomial(h as i64, j)
            } else {
                binomial(h as i64 + j as i64 - 1, j)
            }
        };
        let mut next = vec![HodgePolynomial::zero(); m + 1];
        for (k, p) in poly.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for j in 0..=m - k {
                let w = ways(j);
                if w.is_zero() {
                    if odd || h == 0 {
                        break;
                    }
                    continue;
                }
                let mono = HodgePolynomial::monomial((s as i64) * j as i64, (t as i64) * j as i64, Q::from_integer(w));
                next[k + j] = next[k + j].add(&p.mul(&mono));
            }
        }
        poly = next;
    }
    poly.swap_remove(m)
}

fn integer_xy_exponent(d: usize, r: usize) -> Result<i64> {
    let num = d * (r - 1);
    if num % 2 != 0 {
        return Err(Error::NonIntegerExponentOfXy(format!("{num}/2")));
    }
    Ok((num / 2) as i64)
}

/// `Π_{r=1}^{N} Π_{s,t} (1 − x^s y^t q^r (xy)^{(r−1)d/2})^{−(−1)^{s+t} h_CR^{s,t}}`
pub fn hodge_product_rhs(data: &[SectorHodgeDatum], d: usize, order: usize) -> Result<HodgeSeries> {
    let h = h_cr_polynomial(data)?;
    let mut acc = HodgeSeries::one(order);
    for r in 1..=order {
        let e = integer_xy_exponent(d, r)?;
        for (&(s, t), c) in h.terms() {
            let c = c.to_integer();
            let sign = if (s + t) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            // (1 − z)^a with a = −sign·c, z = x^{s+e} y^{t+e} q^r
            let a: i64 = (-(sign * c)).try_into().map_err(|_| Error::NonIntegerExponent("exponent too large".into()))?;
            let mut factor = HodgeSeries { coeffs: vec![HodgePolynomial::zero(); order + 1] };
            for j in 0..=order / r {
                let coeff = binomial(a, j) * if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                factor.coeffs[j * r]
                    .add_term((s + e) * j as i64, (t + e) * j as i64, Q::from_integer(coeff));
            }
            acc = acc.mul(&factor)?;
        }
    }
    Ok(acc)
}

/// `Σ_n h_CR(Mⁿ ⋊ (G ≀ Sₙ); −x, −y) qⁿ` assembled sector by sector over
/// all wreath types.
pub fn hodge_product_lhs(data: &[SectorHodgeDatum], d: usize, order: usize) -> Result<HodgeSeries> {
    for datum in data {
        datum.validate()?;
        datum.integer_shift()?;
    }
    for r in 1..=order {
        integer_xy_exponent(d, r)?;
    }
    let coeffs = (0..=order)
        .into_par_iter()
        .map(|n| {
            let mut total = HodgePolynomial::zero();
            for ty in enumerate_types(data.len(), n) {
                let shift = wreath_type_shift(&ty, data, d)?;
                let shift = as_integer(&shift).ok_or_else(|| Error::NonIntegerShift(fmt_q(&shift)))?;
                let mut p = HodgePolynomial::one();
                for ((alpha, _), m) in ty.entries() {
                    p = p.mul(&super_symmetric_power(&data[alpha].dims, m));
                }
                total = total.add(&p.shift(shift));
            }
            Ok(total.negate_variables())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HodgeSeries { coeffs })
}

/// Sector data for `M ⋊ G` together with `d = dim_ℂ M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeDataset {
    pub name: String,
    pub d: usize,
    pub sectors: Vec<SectorHodgeDatum>,
}

impl HodgeDataset {
    /// `d` is the largest component dimension (that of the untwisted sector).
    pub fn from_sectors(name: &str, sectors: Vec<SectorHodgeDatum>) -> Self {
        let d = sectors.iter().map(|s| s.d).max().unwrap_or(0);
        HodgeDataset { name: name.to_string(), d, sectors }
    }
}

fn dims(entries: &[((u32, u32), u64)]) -> BigradedDims {
    entries.iter().copied().collect()
}

fn datum(class: &str, component: usize, d: usize, entries: &[((u32, u32), u64)], angles: &[(i64, i64)]) -> SectorHodgeDatum {
    SectorHodgeDatum {
        class: class.to_string(),
        component,
        dims: dims(entries),
        angles: angles.iter().map(|&(p, q)| q_frac(p, q)).collect(),
        d,
    }
}

pub const HODGE_DATASETS: &[&str] = &["point", "two-sector", "abelian-surface", "kummer"];

/// Bundled sector data:
///
/// * `point`: a point with trivial group.
/// * `two-sector`: `ℙ¹ × ℙ¹` with an involution having one isolated fixed
///   point, angles `(1/2, 1/2)`, so shifts `0` and `1`.
/// * `abelian-surface`: a complex 2-torus with trivial group (odd classes).
/// * `kummer`: a 2-torus modulo `−1`: the invariant even cohomology plus
///   sixteen fixed points of shift `1`.
pub fn builtin_hodge_dataset(name: &str) -> Result<HodgeDataset> {
    let sectors = match name {
        "point" => vec![datum("1", 0, 0, &[((0, 0), 1)], &[])],
        "two-sector" => vec![
            datum("1", 0, 2, &[((0, 0), 1), ((1, 1), 2), ((2, 2), 1)], &[]),
            datum("g", 0, 0, &[((0, 0), 1)], &[(1, 2), (1, 2)]),
        ],
        "abelian-surface" => vec![datum(
            "1",
            0,
            2,
            &[((0, 0), 1), ((1, 0), 2), ((0, 1), 2), ((2, 0), 1), ((1, 1), 4), ((0, 2), 1), ((2, 1), 2), ((1, 2), 2), ((2, 2), 1)],
            &[],
        )],
        "kummer" => {
            let mut v = vec![datum("1", 0, 2, &[((0, 0), 1), ((2, 0), 1), ((1, 1), 4), ((0, 2), 1), ((2, 2), 1)], &[])];
            v.extend((0..16).map(|j| datum("-1", j, 0, &[((0, 0), 1)], &[(1, 2), (1, 2)])));
            v
        }
        _ => return Err(Error::Parse(format!("unknown Hodge dataset {name:?}"))),
    };
    Ok(HodgeDataset::from_sectors(name, sectors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rhs_main_formula;

    #[test]
    fn shifts() {
        assert_eq!(shift_number(&[]).unwrap(), q_int(0));
        assert_eq!(shift_number(&[q_frac(1, 3), q_frac(2, 3)]).unwrap(), q_int(1));
        assert_eq!(shift_number(&[q_frac(1, 2)]).unwrap(), q_frac(1, 2));
        assert!(matches!(shift_number(&[q_int(0)]), Err(Error::AngleOutOfRange(_))));
        assert!(matches!(shift_number(&[q_frac(3, 2)]), Err(Error::AngleOutOfRange(_))));
        assert_eq!(wreath_cycle_shift(&q_int(3), 5, 1), q_int(3));
        assert_eq!(wreath_cycle_shift(&q_frac(1, 2), 1, 2), q_int(1));
        assert_eq!(wreath_cycle_shift(&q_int(0), 2, 3), q_int(2));
        let data = builtin_hodge_dataset("two-sector").unwrap().sectors;
        assert_eq!(wreath_type_shift(&TypeFunction::default(), &data, 2).unwrap(), q_int(0));
        assert_eq!(wreath_type_shift(&TypeFunction::from_counts([((1, 1), 1)]), &data, 2).unwrap(), q_int(1));
        assert_eq!(wreath_type_shift(&TypeFunction::from_counts([((1, 2), 1)]), &data, 2).unwrap(), q_int(2));
        let a = TypeFunction::from_counts([((0, 1), 2)]);
        let b = TypeFunction::from_counts([((1, 3), 1)]);
        let ab = TypeFunction::from_counts([((0, 1), 2), ((1, 3), 1)]);
        assert_eq!(
            wreath_type_shift(&ab, &data, 2).unwrap(),
            wreath_type_shift(&a, &data, 2).unwrap() + wreath_type_shift(&b, &data, 2).unwrap()
        );
    }

    #[test]
    fn h_cr_examples() {
        let pt = builtin_hodge_dataset("point").unwrap();
        assert_eq!(h_cr_polynomial(&pt.sectors).unwrap(), HodgePolynomial::one());
        let two = vec![datum("1", 0, 0, &[((0, 0), 1)], &[]), datum("g", 0, 0, &[((0, 0), 1)], &[])];
        assert_eq!(h_cr_polynomial(&two).unwrap(), HodgePolynomial::monomial(0, 0, q_int(2)));
        let shifted = vec![datum("g", 0, 0, &[((0, 0), 1)], &[(1, 2), (1, 2)])];
        assert_eq!(h_cr_polynomial(&shifted).unwrap(), HodgePolynomial::monomial(1, 1, q_int(1)));
        let bad = vec![datum("g", 0, 0, &[((0, 0), 1)], &[(1, 2)])];
        assert!(matches!(h_cr_polynomial(&bad), Err(Error::NonIntegerShift(_))));
        let k = builtin_hodge_dataset("kummer").unwrap();
        assert_eq!(h_cr_polynomial(&k.sectors).unwrap().coefficient(1, 1), q_int(20));
    }

    #[test]
    fn rhs_examples() {
        let pt = builtin_hodge_dataset("point").unwrap();
        let r = hodge_product_rhs(&pt.sectors, 0, 6).unwrap();
        let p: Vec<Q> = r.coeffs().iter().map(|c| c.coefficient(0, 0)).collect();
        assert_eq!(p, [1, 1, 2, 3, 5, 7, 11].map(q_int));
        assert_eq!(hodge_product_rhs(&[], 0, 3).unwrap(), HodgeSeries::one(3));
        let one = vec![datum("1", 0, 1, &[((1, 1), 1)], &[])];
        let r = hodge_product_rhs(&one, 0, 2).unwrap();
        assert_eq!(r.coeffs()[1], HodgePolynomial::monomial(1, 1, q_int(1)));
        let mut c2 = HodgePolynomial::monomial(2, 2, q_int(1));
        c2.add_term(1, 1, q_int(1));
        assert_eq!(r.coeffs()[2], c2);
        let odd = vec![datum("1", 0, 1, &[((0, 0), 1)], &[])];
        assert!(matches!(hodge_product_rhs(&odd, 1, 2), Err(Error::NonIntegerExponentOfXy(_))));
    }

    #[test]
    fn lhs_equals_rhs() {
        for name in HODGE_DATASETS {
            let ds = builtin_hodge_dataset(name).unwrap();
            let order = if *name == "kummer" { 2 } else { 4 };
            let lhs = hodge_product_lhs(&ds.sectors, ds.d, order).unwrap();
            let rhs = hodge_product_rhs(&ds.sectors, ds.d, order).unwrap();
            assert_eq!(lhs, rhs, "{name}");
            // x = y = 1 recovers the m = 1 Euler characteristic product
            let chi = h_cr_polynomial(&ds.sectors).unwrap().negate_variables().evaluate(&q_int(1), &q_int(1));
            assert_eq!(lhs.evaluate(&q_int(1), &q_int(1)), rhs_main_formula(1, &chi, order).unwrap());
        }
        let pt = builtin_hodge_dataset("point").unwrap();
        assert_eq!(hodge_product_lhs(&pt.sectors, 0, 0).unwrap(), HodgeSeries::one(0));
    }

    #[test]
    fn super_symmetric_powers() {
        // one odd vector: exterior powers
        let odd = dims(&[((1, 0), 1)]);
        assert_eq!(super_symmetric_power(&odd, 1), HodgePolynomial::monomial(1, 0, q_int(1)));
        assert!(super_symmetric_power(&odd, 2).is_zero());
        let even = dims(&[((0, 0), 2)]);
        assert_eq!(super_symmetric_power(&even, 3), HodgePolynomial::monomial(0, 0, q_int(4)));
        let odd3 = dims(&[((1, 0), 3)]);
        assert_eq!(super_symmetric_power(&odd3, 2), HodgePolynomial::monomial(2, 0, q_int(3)));
        assert!(super_symmetric_power(&odd3, 4).is_zero());
        // mixed parity: SP²(⟨e₀⟩ ⊕ ⟨o₁⟩) = e₀² + e₀o₁
        let mixed = dims(&[((0, 0), 1), ((0, 1), 1)]);
        let mut expect = HodgePolynomial::monomial(0, 0, q_int(1));
        expect.add_term(0, 1, q_int(1));
        assert_eq!(super_symmetric_power(&mixed, 2), expect);
    }
}
