use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::sync::Arc;

use crate::arith::Rational;
use crate::error::{domain, Error, Result};
use crate::taut::generator::Generator;
use crate::taut::spec::ModuliSpec;

/// Product of generator powers, kept sorted by the generator order with
/// merged exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    factors: Vec<(Generator, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    /// Canonical monomial, or `None` if some factor vanishes on `spec`.
    pub fn new(spec: &ModuliSpec, factors: impl IntoIterator<Item = (Generator, u32)>) -> Option<Self> {
        let mut merged: BTreeMap<Generator, u32> = BTreeMap::new();
        for (g, e) in factors {
            if e == 0 {
                continue;
            }
            let g = g.canonical(spec)?;
            *merged.entry(g).or_insert(0) += e;
        }
        Some(Monomial { factors: merged.into_iter().collect() })
    }

    pub fn factors(&self) -> &[(Generator, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(g, e)| g.degree() * e).sum()
    }

    pub fn exponent(&self, gen: &Generator) -> u32 {
        self.factors.iter().find(|(g, _)| g == gen).map_or(0, |(_, e)| *e)
    }

    pub fn contains(&self, gen: &Generator) -> bool {
        self.exponent(gen) > 0
    }

    /// Product of two canonical monomials.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut merged: BTreeMap<Generator, u32> = self.factors.iter().cloned().collect();
        for (g, e) in &other.factors {
            *merged.entry(g.clone()).or_insert(0) += e;
        }
        Monomial { factors: merged.into_iter().collect() }
    }

    /// `self / gen`, if `gen` divides `self`.
    pub fn divide_by(&self, gen: &Generator) -> Option<Monomial> {
        let mut factors = self.factors.clone();
        let pos = factors.iter().position(|(g, _)| g == gen)?;
        if factors[pos].1 == 1 {
            factors.remove(pos);
        } else {
            factors[pos].1 -= 1;
        }
        Some(Monomial { factors })
    }

    pub fn times_gen(&self, gen: &Generator) -> Monomial {
        self.mul(&Monomial { factors: vec![(gen.clone(), 1)] })
    }
}

/// Graded formal sum of monomials with rational coefficients, truncated
/// above `order` (and above the dimension in concrete mode).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TautExpr {
    spec: Arc<ModuliSpec>,
    order: u32,
    terms: BTreeMap<Monomial, Rational>,
}

impl TautExpr {
    pub fn zero(spec: &Arc<ModuliSpec>, order: u32) -> Self {
        TautExpr { spec: Arc::clone(spec), order, terms: BTreeMap::new() }
    }

    pub fn constant(spec: &Arc<ModuliSpec>, order: u32, c: Rational) -> Self {
        let mut e = Self::zero(spec, order);
        e.add_term(Monomial::one(), c);
        e
    }

    pub fn one(spec: &Arc<ModuliSpec>, order: u32) -> Self {
        Self::constant(spec, order, Rational::one())
    }

    /// A single generator with coefficient one.
    pub fn gen(spec: &Arc<ModuliSpec>, order: u32, gen: Generator) -> Result<Self> {
        Self::term(spec, order, Rational::one(), [(gen, 1)])
    }

    /// `c * prod gen^e`.
    pub fn term(
        spec: &Arc<ModuliSpec>,
        order: u32,
        c: Rational,
        factors: impl IntoIterator<Item = (Generator, u32)>,
    ) -> Result<Self> {
        let factors: Vec<_> = factors.into_iter().collect();
        for (g, _) in &factors {
            g.validate(spec)?;
        }
        let mut e = Self::zero(spec, order);
        if let Some(m) = Monomial::new(spec, factors) {
            e.add_term(m, c);
        }
        Ok(e)
    }

    pub fn spec(&self) -> &Arc<ModuliSpec> {
        &self.spec
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree_bound(&self) -> u32 {
        self.spec.degree_bound(self.order)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in rendering order: by degree, then by monomial order.
    pub fn terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|(m, _)| m.degree());
        v
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of a single generator (the linear term).
    pub fn coeff_of(&self, gen: &Generator) -> Rational {
        match Monomial::new(&self.spec, [(gen.clone(), 1)]) {
            Some(m) => self.coeff(&m),
            None => Rational::zero(),
        }
    }

    /// Adds `c * m`; `m` must already be canonical for this spec.
    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() || m.degree() > self.degree_bound() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds `c * prod factors`, canonicalizing the factors first.
    pub(crate) fn add_raw(&mut self, c: Rational, factors: impl IntoIterator<Item = (Generator, u32)>) {
        if let Some(m) = Monomial::new(&self.spec, factors) {
            self.add_term(m, c);
        }
    }

    fn check_compatible(&self, other: &TautExpr) -> Result<()> {
        if self.spec != other.spec || self.order != other.order {
            return Err(Error::SpecMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &TautExpr) -> Result<TautExpr> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TautExpr) -> Result<TautExpr> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TautExpr {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> TautExpr {
        let mut out = TautExpr::zero(&self.spec, self.order);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    /// Distributive product, dropping everything above the degree bound.
    pub fn mul(&self, other: &TautExpr) -> Result<TautExpr> {
        self.check_compatible(other)?;
        let bound = self.degree_bound();
        let mut out = TautExpr::zero(&self.spec, self.order);
        for (m1, c1) in &self.terms {
            let d1 = m1.degree();
            for (m2, c2) in &other.terms {
                if d1 + m2.degree() > bound {
                    continue;
                }
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<TautExpr> {
        let mut acc = TautExpr::one(&self.spec, self.order);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Homogeneous component of degree `d`.
    pub fn component(&self, d: u32) -> TautExpr {
        self.filter(|m| m.degree() == d)
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> TautExpr {
        TautExpr {
            spec: Arc::clone(&self.spec),
            order: self.order,
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Highest degree present, `None` for zero.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Degree if every term shares one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    /// Multiplies each degree-`d` term by `f(d)`.
    pub fn map_by_degree(&self, f: impl Fn(u32) -> Rational) -> TautExpr {
        let mut out = TautExpr::zero(&self.spec, self.order);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * &f(m.degree()));
        }
        out
    }

    /// Same terms under a different truncation order.
    pub fn with_order(&self, order: u32) -> TautExpr {
        let mut out = TautExpr::zero(&self.spec, order);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    /// Moves the terms onto other moduli data, recanonicalizing generators.
    pub(crate) fn rehome(&self, spec: &Arc<ModuliSpec>) -> TautExpr {
        let mut out = TautExpr::zero(spec, self.order);
        for (m, c) in &self.terms {
            out.add_raw(c.clone(), m.factors().iter().cloned());
        }
        out
    }

    /// Replaces every occurrence of `source` by `replacement`, which must be
    /// homogeneous of the same degree (or zero).
    pub fn substitute(&self, source: &Generator, replacement: &TautExpr) -> Result<TautExpr> {
        self.check_compatible(replacement)?;
        if let Some(d) = replacement.homogeneous_degree() {
            if d != source.degree() {
                return domain(format!(
                    "substitution of {source:?} (degree {}) by an expression of degree {d}",
                    source.degree()
                ));
            }
        } else if !replacement.is_zero() {
            return domain("substitution rule is not homogeneous");
        }
        let Some(source) = source.canonical(&self.spec) else {
            return Ok(self.clone());
        };
        self.substitute_with(|g| (*g == source).then(|| replacement.clone()))
    }

    /// Rebuilds every monomial, replacing generators for which `rule`
    /// returns an expression.
    pub(crate) fn substitute_with(&self, rule: impl Fn(&Generator) -> Option<TautExpr>) -> Result<TautExpr> {
        let mut out = TautExpr::zero(&self.spec, self.order);
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut product = TautExpr::constant(&self.spec, self.order, c.clone());
            for (g, e) in m.factors() {
                match rule(g) {
                    Some(rep) => product = product.mul(&rep.pow(*e)?)?,
                    None => kept.push((g.clone(), *e)),
                }
            }
            let kept = TautExpr::term(&self.spec, self.order, Rational::one(), kept)?;
            out = out.add(&product.mul(&kept)?)?;
        }
        Ok(out)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }
}
