//! Exact rational scalars, factorials, binomials and Bernoulli numbers.
//!
//! Every coefficient in the crate is a [`Rational`]. Bernoulli numbers follow
//! the convention `x/(e^x - 1) = sum B_k x^k / k!`, so `B_1 = -1/2`.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num.into(), den.into())))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    pub fn integer(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, other: &Rational) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &other.0))
    }

    pub fn pow(&self, exp: u32) -> Self {
        Rational(num_traits::pow(self.0.clone(), exp as usize))
    }

    /// `(-1)^k` as a rational.
    pub fn sign_power(k: u64) -> Self {
        if k.is_multiple_of(2) {
            Rational::one()
        } else {
            -Rational::one()
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }
}

/// Renders as `p/q`, or `p` when the denominator is one.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                Rational::from_big(p, q)
            }
            None => Ok(Rational::from(s.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

/// Panics on a zero divisor; use [`Rational::checked_div`] for a fallible
/// version.
impl Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        self.checked_div(rhs).expect("rational division by zero")
    }
}

impl Div<Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        &self / &rhs
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.0.is_integer() && self.0.numer() == &BigInt::from(*other)
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.0.partial_cmp(&BigRational::from_integer((*other).into()))
    }
}

/// Shorthand for `Rational::new(p, q).unwrap()` with a nonzero literal
/// denominator.
pub fn q(p: i64, d: i64) -> Rational {
    Rational::new(p, d).expect("nonzero denominator")
}

fn factorial_cache() -> &'static RwLock<Vec<BigInt>> {
    static CACHE: OnceLock<RwLock<Vec<BigInt>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(vec![BigInt::one()]))
}

/// `n!` as a big integer, memoized.
pub fn factorial_int(n: u32) -> BigInt {
    let n = n as usize;
    {
        let cache = factorial_cache().read().expect("factorial cache poisoned");
        if let Some(v) = cache.get(n) {
            return v.clone();
        }
    }
    let mut cache = factorial_cache().write().expect("factorial cache poisoned");
    while cache.len() <= n {
        let k = cache.len();
        let next = &cache[k - 1] * BigInt::from(k);
        cache.push(next);
    }
    cache[n].clone()
}

pub fn factorial(n: u32) -> Rational {
    Rational::from(factorial_int(n))
}

/// `1/n!`
pub fn inv_factorial(n: u32) -> Rational {
    Rational(BigRational::new(BigInt::one(), factorial_int(n)))
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial_int(n) / (factorial_int(k) * factorial_int(n - k))
}

fn bernoulli_cache() -> &'static RwLock<Vec<Rational>> {
    static CACHE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(vec![Rational::one()]))
}

/// Bernoulli number `B_k` with `B_1 = -1/2`.
///
/// Computed from `sum_{i=0}^{n} C(n+1, i) B_i = 0`. Odd `k > 1` give zero.
pub fn bernoulli(k: i64) -> Result<Rational> {
    if k < 0 {
        return domain(format!("Bernoulli index must be non-negative, got {k}"));
    }
    let k = k as usize;
    if k > 1 && k % 2 == 1 {
        return Ok(Rational::zero());
    }
    {
        let cache = bernoulli_cache().read().expect("bernoulli cache poisoned");
        if let Some(b) = cache.get(k) {
            return Ok(b.clone());
        }
    }
    let mut cache = bernoulli_cache().write().expect("bernoulli cache poisoned");
    while cache.len() <= k {
        let n = cache.len() as u32;
        let s: Rational = (0..n).map(|i| Rational::from(binomial(n + 1, i)) * &cache[i as usize]).sum();
        let b = -(s / Rational::integer(n as i64 + 1));
        cache.push(b);
    }
    Ok(cache[k].clone())
}

/// `a_m = sum_{h=1}^{floor((m-1)/2)} B_{2h} / ((2h)! (m-2h)!)`, defined for `m >= 3`.
pub fn a_coeff(m: i64) -> Result<Rational> {
    if m < 3 {
        return domain(format!("a_m is defined for m >= 3, got m = {m}"));
    }
    let m = m as u32;
    let mut acc = Rational::zero();
    for h in 1..=(m - 1) / 2 {
        let b = bernoulli(2 * h as i64)?;
        acc += &(b * inv_factorial(2 * h) * inv_factorial(m - 2 * h));
    }
    Ok(acc)
}
