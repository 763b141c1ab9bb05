//! Truncated bivariate power series in `D1, D2` over the rationals,
//! optionally modulo `D1 * D2 = 0`.

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::{inv_factorial, Rational};
use crate::error::{domain, Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Relation {
    #[default]
    None,
    /// Mixed monomials `D1^i D2^j` with `i, j >= 1` vanish.
    MixedVanish,
}

/// Coefficients of `D1^i D2^j` with `i + j <= order`; zero coefficients are
/// not stored.
#[derive(Clone, PartialEq, Eq)]
pub struct BiSeries {
    coeffs: BTreeMap<(u32, u32), Rational>,
    order: u32,
    relation: Relation,
}

impl BiSeries {
    pub fn zero(order: u32, relation: Relation) -> Self {
        BiSeries { coeffs: BTreeMap::new(), order, relation }
    }

    pub fn constant(order: u32, relation: Relation, c: Rational) -> Self {
        let mut s = Self::zero(order, relation);
        s.add_coeff(0, 0, c);
        s
    }

    pub fn one(order: u32, relation: Relation) -> Self {
        Self::constant(order, relation, Rational::one())
    }

    /// `c * D1^i * D2^j`.
    pub fn monomial(order: u32, relation: Relation, i: u32, j: u32, c: Rational) -> Self {
        let mut s = Self::zero(order, relation);
        s.add_coeff(i, j, c);
        s
    }

    pub fn d1(order: u32, relation: Relation) -> Self {
        Self::monomial(order, relation, 1, 0, Rational::one())
    }

    pub fn d2(order: u32, relation: Relation) -> Self {
        Self::monomial(order, relation, 0, 1, Rational::one())
    }

    /// `sum_k coeffs[k] * (c1 D1 + c2 D2)^k`.
    pub fn from_univariate(order: u32, relation: Relation, coeffs: &[Rational], c1: &Rational, c2: &Rational) -> Self {
        let linear = Self::d1(order, relation).scale(c1).add(&Self::d2(order, relation).scale(c2)).expect("same shape");
        let mut power = Self::one(order, relation);
        let mut out = Self::zero(order, relation);
        for c in coeffs.iter().take(order as usize + 1) {
            out = out.add(&power.scale(c)).expect("same shape");
            power = power.mul(&linear).expect("same shape");
        }
        out
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn relation(&self) -> Relation {
        self.relation
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn keeps(&self, i: u32, j: u32) -> bool {
        i + j <= self.order && !(self.relation == Relation::MixedVanish && i > 0 && j > 0)
    }

    fn add_coeff(&mut self, i: u32, j: u32, c: Rational) {
        if c.is_zero() || !self.keeps(i, j) {
            return;
        }
        let slot = self.coeffs.entry((i, j)).or_insert_with(Rational::zero);
        *slot += &c;
        if slot.is_zero() {
            self.coeffs.remove(&(i, j));
        }
    }

    fn check(&self, other: &BiSeries) -> Result<()> {
        if self.order != other.order || self.relation != other.relation {
            return domain("series differ in truncation order or relation");
        }
        Ok(())
    }

    /// Homogeneous part of total degree `d`.
    pub fn degree_part(&self, d: u32) -> BiSeries {
        let mut out = Self::zero(self.order, self.relation);
        for (&(i, j), c) in &self.coeffs {
            if i + j == d {
                out.add_coeff(i, j, c.clone());
            }
        }
        out
    }

    /// Same coefficients at a lower truncation order.
    pub fn truncate(&self, order: u32) -> BiSeries {
        let mut out = Self::zero(order, self.relation);
        for (&(i, j), c) in &self.coeffs {
            out.add_coeff(i, j, c.clone());
        }
        out
    }

    pub fn add(&self, other: &BiSeries) -> Result<BiSeries> {
        self.check(other)?;
        let mut out = self.clone();
        for (&(i, j), c) in &other.coeffs {
            out.add_coeff(i, j, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &BiSeries) -> Result<BiSeries> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> BiSeries {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> BiSeries {
        let mut out = Self::zero(self.order, self.relation);
        for (&(i, j), v) in &self.coeffs {
            out.add_coeff(i, j, v * c);
        }
        out
    }

    pub fn mul(&self, other: &BiSeries) -> Result<BiSeries> {
        self.check(other)?;
        let mut out = Self::zero(self.order, self.relation);
        for (&(i1, j1), c1) in &self.coeffs {
            for (&(i2, j2), c2) in &other.coeffs {
                out.add_coeff(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse of a series with nonzero constant term.
    pub fn inverse(&self) -> Result<BiSeries> {
        let c0 = self.coeff(0, 0);
        if c0.is_zero() {
            return domain("series inverse needs a nonzero constant term");
        }
        let inv_c0 = c0.recip()?;
        // 1/f = (1/c0) * sum_k (-u)^k with u = (f - c0)/c0 of positive order
        let u = self.sub(&Self::constant(self.order, self.relation, c0))?.scale(&inv_c0);
        let minus_u = u.neg();
        let mut acc = Self::one(self.order, self.relation);
        let mut power = Self::one(self.order, self.relation);
        for _ in 0..self.order {
            power = power.mul(&minus_u)?;
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power)?;
        }
        Ok(acc.scale(&inv_c0))
    }

    pub fn div(&self, other: &BiSeries) -> Result<BiSeries> {
        self.mul(&other.inverse()?)
    }

    /// `exp(f)` for `f` with zero constant term.
    pub fn exp(&self) -> Result<BiSeries> {
        if !self.coeff(0, 0).is_zero() {
            return domain("exp needs a series with zero constant term");
        }
        let mut acc = Self::one(self.order, self.relation);
        let mut power = Self::one(self.order, self.relation);
        for k in 1..=self.order {
            power = power.mul(self)?;
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power.scale(&inv_factorial(k)))?;
        }
        Ok(acc)
    }

    /// Exact division by `D1` of a series in `D1` alone, lowering the order by one.
    pub fn div_d1_univariate(&self) -> Result<BiSeries> {
        let mut out = Self::zero(self.order.saturating_sub(1), self.relation);
        for (&(i, j), c) in &self.coeffs {
            if j != 0 || i == 0 {
                return Err(Error::Domain("series is not divisible by D1 in one variable".into()));
            }
            out.add_coeff(i - 1, 0, c.clone());
        }
        Ok(out)
    }

    /// Coefficients `[f_0, f_1, ...]` of a series in `D1` alone.
    pub fn univariate_coeffs(&self) -> Result<Vec<Rational>> {
        let mut v = vec![Rational::zero(); self.order as usize + 1];
        for (&(i, j), c) in &self.coeffs {
            if j != 0 {
                return domain("series involves D2");
            }
            v[i as usize] = c.clone();
        }
        Ok(v)
    }
}

impl fmt::Debug for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.coeffs.iter().map(|((i, j), c)| format!("({c})D1^{i}D2^{j}")).collect();
        write!(f, "BiSeries[O({}), {:?}]: {}", self.order, self.relation, terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;
    use proptest::prelude::*;

    #[test]
    fn exp_of_d1() {
        let e = BiSeries::d1(2, Relation::None).exp().unwrap();
        assert_eq!(e.coeff(0, 0), q(1, 1));
        assert_eq!(e.coeff(1, 0), q(1, 1));
        assert_eq!(e.coeff(2, 0), q(1, 2));
        assert_eq!(e.terms().count(), 3);
    }

    #[test]
    fn one_minus_exp_minus_d1() {
        let n = 4;
        let s = BiSeries::one(n, Relation::None).sub(&BiSeries::d1(n, Relation::None).neg().exp().unwrap()).unwrap();
        assert_eq!(s.coeff(0, 0), q(0, 1));
        assert_eq!(s.coeff(1, 0), q(1, 1));
        assert_eq!(s.coeff(2, 0), q(-1, 2));
        assert_eq!(s.coeff(3, 0), q(1, 6));
        assert_eq!(s.coeff(4, 0), q(-1, 24));
    }

    #[test]
    fn unit_round_trip() {
        let n = 8;
        let s = BiSeries::one(n + 1, Relation::None)
            .sub(&BiSeries::d1(n + 1, Relation::None).neg().exp().unwrap())
            .unwrap();
        let u = s.div_d1_univariate().unwrap();
        let back = u.inverse().unwrap().mul(&u).unwrap();
        assert_eq!(back, BiSeries::one(n, Relation::None));
    }

    #[test]
    fn domain_errors() {
        let d1 = BiSeries::d1(3, Relation::None);
        assert!(d1.inverse().is_err());
        assert!(BiSeries::one(3, Relation::None).exp().is_err());
        assert!(d1.add(&BiSeries::d1(4, Relation::None)).is_err());
        assert!(d1.mul(&BiSeries::d1(3, Relation::MixedVanish)).is_err());
        assert!(BiSeries::d2(3, Relation::None).div_d1_univariate().is_err());
    }

    #[test]
    fn relation_drops_mixed_terms() {
        let r = Relation::MixedVanish;
        let p = BiSeries::d1(4, r).mul(&BiSeries::d2(4, r)).unwrap();
        assert!(p.is_zero());
        let s = BiSeries::d1(4, r).add(&BiSeries::d2(4, r)).unwrap();
        let sq = s.mul(&s).unwrap();
        assert_eq!(sq.terms().count(), 2);
    }

    fn series() -> impl Strategy<Value = BiSeries> {
        prop::collection::vec((0u32..4, 0u32..4, -5i64..5, 1i64..4), 0..6).prop_map(|ts| {
            let mut s = BiSeries::zero(5, Relation::None);
            for (i, j, p, d) in ts {
                s = s.add(&BiSeries::monomial(5, Relation::None, i, j, q(p, d))).unwrap();
            }
            s
        })
    }

    proptest! {
        #[test]
        fn multiplication_laws(a in series(), b in series(), c in series()) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        }

        #[test]
        fn inverse_is_inverse(a in series(), c in 1i64..5) {
            let f = a.sub(&BiSeries::constant(5, Relation::None, a.coeff(0, 0))).unwrap()
                .add(&BiSeries::constant(5, Relation::None, q(c, 1))).unwrap();
            prop_assert_eq!(f.mul(&f.inverse().unwrap()).unwrap(), BiSeries::one(5, Relation::None));
        }
    }
}
