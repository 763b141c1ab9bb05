//! Machine checks of the power series identities behind the
//! Grothendieck-Riemann-Roch computation of the cotangent bundle.
//!
//! Everything is rebuilt from `exp`, products and inverses of truncated
//! series; closed-form coefficients only appear on the side being checked.

use crate::arith::{a_coeff, bernoulli, inv_factorial, q, Rational};
use crate::error::{domain, Result};
use crate::series::{BiSeries, Relation};

/// Which sign the `a_m` correction carries in the kappa series.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum KappaSeries {
    /// `- sum_{m>=3} a_m`; gives kappa_2/3 and -kappa_3/12 in the tangent character.
    #[default]
    MinusA,
    /// `+ sum_{m>=3} a_m`, the sign forced by the Todd expansion.
    PlusA,
}

impl KappaSeries {
    pub(crate) fn a_sign(self) -> Rational {
        match self {
            KappaSeries::MinusA => -Rational::one(),
            KappaSeries::PlusA => Rational::one(),
        }
    }
}

/// `(1 - e^{-t}) / t` as a series in `D1`, built from `exp`.
fn one_minus_exp_neg_over_t(order: u32, relation: Relation) -> Result<Vec<Rational>> {
    let t = BiSeries::d1(order + 1, relation);
    let s = BiSeries::one(order + 1, relation).sub(&t.neg().exp()?)?;
    s.div_d1_univariate()?.univariate_coeffs()
}

/// `(e^t - 1) / t` as a series in `D1`, built from `exp`.
fn exp_minus_one_over_t(order: u32, relation: Relation) -> Result<Vec<Rational>> {
    let t = BiSeries::d1(order + 1, relation);
    let s = t.exp()?.sub(&BiSeries::one(order + 1, relation))?;
    s.div_d1_univariate()?.univariate_coeffs()
}

/// `(1 - e^{-D1})(1 - e^{-D2})`, the Chern character of the structure sheaf
/// of `D1 . D2`.
pub fn ch_oy(order: u32) -> Result<BiSeries> {
    let r = Relation::None;
    let one = BiSeries::one(order, r);
    let f1 = one.sub(&BiSeries::d1(order, r).neg().exp()?)?;
    let f2 = one.sub(&BiSeries::d2(order, r).neg().exp()?)?;
    f1.mul(&f2)
}

/// `[D1 D2 / (D1 + D2)] (1 - e^{-D1-D2}) / [(1 - e^{-D1})(1 - e^{-D2})]`,
/// computed as `u(D1 + D2) / (u(D1) u(D2))` with the unit `u(t) = (1 - e^{-t})/t`.
pub fn tdinv_oy(order: u32) -> Result<BiSeries> {
    let r = Relation::None;
    let u = one_minus_exp_neg_over_t(order, r)?;
    let one = Rational::one();
    let zero = Rational::zero();
    let us = BiSeries::from_univariate(order, r, &u, &one, &one);
    let u1 = BiSeries::from_univariate(order, r, &u, &one, &zero);
    let u2 = BiSeries::from_univariate(order, r, &u, &zero, &one);
    us.div(&u1)?.div(&u2)
}

/// `sum_{j>=1} (-1)^{j-1} (D1 + D2)^{j-1} / j!`.
pub fn theta_series(order: u32) -> BiSeries {
    let r = Relation::None;
    let s = BiSeries::d1(order, r).add(&BiSeries::d2(order, r)).expect("same shape");
    let mut out = BiSeries::zero(order, r);
    let mut power = BiSeries::one(order, r);
    for j in 1..=order + 1 {
        out = out.add(&power.scale(&(Rational::sign_power(j as u64 - 1) * inv_factorial(j)))).expect("same shape");
        power = power.mul(&s).expect("same shape");
    }
    out
}

/// Checks `ch(O_Y) Td^v(O_Y)^{-1} = D1 D2 Theta` through total degree `order`.
pub fn verify_theta(order: u32) -> Result<bool> {
    verify_theta_against(&theta_series(order.saturating_sub(2)), order)
}

/// Same check with a caller-supplied candidate for `Theta`.
pub fn verify_theta_against(theta: &BiSeries, order: u32) -> Result<bool> {
    if order < 4 {
        return domain(format!("theta check needs order >= 4, got {order}"));
    }
    let lhs = ch_oy(order)?.mul(&tdinv_oy(order)?)?;
    let d1d2 = BiSeries::monomial(order, Relation::None, 1, 1, Rational::one());
    let rhs = d1d2.mul(&theta.truncate(order))?;
    Ok(lhs == rhs)
}

/// Coefficients of `t / (e^t - 1)` obtained by inverting `(e^t - 1)/t`.
pub fn todd_coefficients(order: u32) -> Result<Vec<Rational>> {
    let r = Relation::None;
    let e = exp_minus_one_over_t(order, r)?;
    let one = Rational::one();
    let zero = Rational::zero();
    BiSeries::from_univariate(order, r, &e, &one, &zero).inverse()?.univariate_coeffs()
}

/// Checks `t/(e^t - 1) = 1 - t/2 + sum_{j>=1} B_{2j} t^{2j} / (2j)!` through degree `order`.
pub fn verify_todd_bernoulli(order: u32) -> Result<bool> {
    if order < 2 {
        return domain(format!("Todd check needs order >= 2, got {order}"));
    }
    let lhs = todd_coefficients(order)?;
    let mut rhs = vec![Rational::zero(); order as usize + 1];
    rhs[0] = Rational::one();
    rhs[1] = q(-1, 2);
    for j in 1..=order / 2 {
        rhs[2 * j as usize] = bernoulli(2 * j as i64)? * inv_factorial(2 * j);
    }
    Ok(lhs == rhs)
}

/// `[(D - psi) / (e^{D - psi} - 1)] (e^psi - 1)` modulo `D psi = 0`, with
/// `D1 = D` and `D2 = psi`.
pub fn kappa_series_lhs(order: u32) -> Result<BiSeries> {
    let r = Relation::MixedVanish;
    let todd = todd_coefficients(order)?;
    let f = BiSeries::from_univariate(order, r, &todd, &Rational::one(), &-Rational::one());
    let e = BiSeries::d2(order, r).exp()?.sub(&BiSeries::one(order, r))?;
    f.mul(&e)
}

/// `sum_j psi^j/j! + 1/2 sum_t psi^{t+1}/t! -/+ sum_{m>=3} a_m psi^m`.
pub fn kappa_series_rhs(order: u32, sign: KappaSeries) -> Result<BiSeries> {
    let r = Relation::MixedVanish;
    let mut out = BiSeries::zero(order, r);
    for j in 1..=order {
        out = out.add(&BiSeries::monomial(order, r, 0, j, inv_factorial(j)))?;
    }
    for t in 1..order {
        out = out.add(&BiSeries::monomial(order, r, 0, t + 1, q(1, 2) * inv_factorial(t)))?;
    }
    for m in 3..=order {
        out = out.add(&BiSeries::monomial(order, r, 0, m, sign.a_sign() * a_coeff(m as i64)?))?;
    }
    Ok(out)
}

/// The kappa-series identity with the default `- a_m` sign.
pub fn verify_kappa_series(order: u32) -> Result<bool> {
    verify_kappa_series_with(order, KappaSeries::MinusA)
}

pub fn verify_kappa_series_with(order: u32, sign: KappaSeries) -> Result<bool> {
    if order < 3 {
        return domain(format!("kappa-series check needs order >= 3, got {order}"));
    }
    Ok(kappa_series_lhs(order)? == kappa_series_rhs(order, sign)?)
}
