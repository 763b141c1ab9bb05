//! Boundary divisors, the total boundary class, and the passage from the
//! aggregated generic form to per-divisor concrete atoms.

use std::sync::Arc;

use crate::arith::{q, Rational};
use crate::error::{domain, Result};
use crate::taut::expr::TautExpr;
use crate::taut::generator::Generator;
use crate::taut::spec::ModuliSpec;

/// One boundary divisor of a concrete moduli stack. Separating divisors are
/// stored as the canonical member of `{(h, A), (g - h, A^c)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundaryDivisor {
    Irreducible,
    Separating { h: u32, side: u64 },
}

/// Every ordered pair `(h, A)` with both sides stable. Exponential in `n`.
pub fn ordered_separating_sides(spec: &ModuliSpec) -> Vec<(u32, u64)> {
    let mut out = Vec::new();
    for h in 0..=spec.genus() {
        for side in 0..=spec.full_mask() {
            if spec.separating_side_is_stable(h, side.count_ones() as usize) {
                out.push((h, side));
            }
        }
    }
    out
}

/// Lists the boundary divisors: the irreducible one when `g >= 1`, then one
/// per unordered stable splitting.
pub fn enumerate_boundary(spec: &ModuliSpec) -> Result<Vec<BoundaryDivisor>> {
    if !spec.is_concrete() {
        return domain("boundary enumeration needs concrete moduli data");
    }
    let mut out = Vec::new();
    if spec.has_irreducible_divisor() {
        out.push(BoundaryDivisor::Irreducible);
    }
    let full = spec.full_mask();
    for (h, side) in ordered_separating_sides(spec) {
        let (ch, cside) = (h, side).min((spec.genus() - h, !side & full));
        if (ch, cside) == (h, side) {
            out.push(BoundaryDivisor::Separating { h, side });
        }
    }
    Ok(out)
}

/// `delta` written through boundary atoms:
/// `1/2 xi_irr_*(1) + 1/2 sum_{h,A} xi_{h,A *}(1)`.
pub fn delta_atoms(spec: &Arc<ModuliSpec>, order: u32) -> TautExpr {
    let mut e = TautExpr::zero(spec, order);
    e.add_raw(q(1, 2), [(Generator::BoundaryIrr(0, 0), 1)]);
    e.add_raw(q(1, 2), [(Generator::BoundarySepAll(0, 0), 1)]);
    expand_if_concrete(&e)
}

/// `psi = sum_p psi_p`.
pub fn psi_total(spec: &Arc<ModuliSpec>, order: u32) -> TautExpr {
    let mut e = TautExpr::zero(spec, order);
    e.add_raw(Rational::one(), [(Generator::PsiPow(1), 1)]);
    expand_if_concrete(&e)
}

pub(crate) fn expand_if_concrete(e: &TautExpr) -> TautExpr {
    if e.spec().is_concrete() {
        expand_concrete(e, &Arc::clone(e.spec())).expect("same concrete spec")
    } else {
        e.clone()
    }
}

/// Rewrites an expression on concrete moduli data: `delta`, the aggregated
/// separating atoms and the power sums `sum_p psi_p^m` become explicit sums
/// over divisors and labels. Terms above the dimension are dropped.
pub fn expand_concrete(e: &TautExpr, spec: &Arc<ModuliSpec>) -> Result<TautExpr> {
    if !spec.is_concrete() {
        return domain("expand_concrete needs concrete moduli data");
    }
    if e.spec().genus() != spec.genus() || e.spec().n() != spec.n() {
        return domain("expression and target moduli data differ in g or n");
    }
    let homed = e.rehome(spec);
    let order = homed.order();
    let sides = ordered_separating_sides(spec);
    let sep_sum = |a: u32, b: u32, c: Rational| {
        let mut out = TautExpr::zero(spec, order);
        for &(h, side) in &sides {
            out.add_raw(c.clone(), [(Generator::BoundarySep { h, side, a, b }, 1)]);
            if a != b {
                out.add_raw(c.clone(), [(Generator::BoundarySep { h, side, a: b, b: a }, 1)]);
            }
        }
        out
    };
    homed.substitute_with(|g| match *g {
        Generator::Delta => {
            let mut d = sep_sum(0, 0, q(1, 2));
            d.add_raw(q(1, 2), [(Generator::BoundaryIrr(0, 0), 1)]);
            Some(d)
        }
        Generator::BoundarySepAll(a, b) => Some(sep_sum(a, b, Rational::one())),
        Generator::PsiPow(m) => {
            let mut s = TautExpr::zero(spec, order);
            for i in 0..spec.n() {
                s.add_raw(Rational::one(), [(Generator::Psi(i), m)]);
            }
            Some(s)
        }
        _ => None,
    })
}

/// Collects boundary atoms back into `delta` wherever a monomial multiple
/// of the full `delta` pattern appears.
pub fn fold_delta(e: &TautExpr) -> TautExpr {
    let pattern: Vec<(Generator, Rational)> =
        delta_atoms(e.spec(), e.order()).iter().map(|(m, c)| (m.factors()[0].0.clone(), c.clone())).collect();
    let Some((lead, lead_c)) = pattern.first().cloned() else {
        return e.clone();
    };
    let mut current = e.clone();
    loop {
        let mut bases: Vec<_> = current.iter().filter_map(|(m, _)| m.divide_by(&lead)).collect();
        bases.sort();
        bases.dedup();
        let mut changed = false;
        for base in bases {
            let r = &current.coeff(&base.times_gen(&lead)) / &lead_c;
            if r.is_zero() {
                continue;
            }
            let matches = pattern.iter().all(|(g, c)| current.coeff(&base.times_gen(g)) == &r * c);
            if !matches {
                continue;
            }
            for (g, c) in &pattern {
                current.add_term(base.times_gen(g), -(&r * c));
            }
            current.add_raw(r, base.factors().iter().cloned().chain([(Generator::Delta, 1)]));
            changed = true;
        }
        if !changed {
            return current;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(g: u32, n: usize) -> usize {
        enumerate_boundary(&ModuliSpec::concrete_n(g, n).unwrap()).unwrap().len()
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(count(0, 5), 10);
        assert_eq!(count(1, 1), 1);
        assert_eq!(count(2, 0), 2);
        assert_eq!(count(0, 4), 3);
        assert_eq!(count(0, 6), 25);
        assert_eq!(count(0, 3), 0);
        assert!(enumerate_boundary(&ModuliSpec::generic(0, 5).unwrap()).is_err());
    }

    #[test]
    fn delta_on_one_one() {
        let s = ModuliSpec::concrete_n(1, 1).unwrap();
        let d = delta_atoms(&s, 3);
        assert_eq!(d.len(), 1);
        assert_eq!(d.coeff_of(&Generator::BoundaryIrr(0, 0)), q(1, 2));
    }

    #[test]
    fn delta_on_zero_four() {
        let s = ModuliSpec::concrete_n(0, 4).unwrap();
        let d = delta_atoms(&s, 1);
        assert_eq!(d.len(), 3);
        for (m, c) in d.iter() {
            assert_eq!(c, &Rational::one());
            match m.factors()[0].0 {
                Generator::BoundarySep { h: 0, side, .. } => assert_eq!(side.count_ones(), 2),
                ref other => panic!("unexpected atom {other:?}"),
            }
        }
    }

    #[test]
    fn delta_on_genus_two() {
        // the (1, {}) | (1, {}) splitting is its own conjugate and appears once
        // in the ordered sum
        let s = ModuliSpec::concrete_n(2, 0).unwrap();
        let d = delta_atoms(&s, 2);
        assert_eq!(d.coeff_of(&Generator::BoundaryIrr(0, 0)), q(1, 2));
        assert_eq!(d.coeff_of(&Generator::BoundarySep { h: 1, side: 0, a: 0, b: 0 }), q(1, 2));
    }

    #[test]
    fn psi_expansion() {
        let s = ModuliSpec::concrete_n(0, 4).unwrap();
        let psi = psi_total(&s, 1);
        assert_eq!(psi.len(), 4);
        assert!((0..4).all(|i| psi.coeff_of(&Generator::Psi(i)) == Rational::one()));
    }

    #[test]
    fn sep_all_expansion_counts() {
        let g = ModuliSpec::generic(0, 5).unwrap();
        let s = ModuliSpec::concrete_n(0, 5).unwrap();
        let e = TautExpr::gen(&g, 2, Generator::BoundarySepAll(1, 0)).unwrap();
        let x = expand_concrete(&e, &s).unwrap();
        // each of the 10 divisors carries psi on either branch with weight 2
        assert_eq!(x.len(), 20);
        assert!(x.iter().all(|(_, c)| *c == Rational::integer(2)));
    }

    #[test]
    fn fold_round_trip() {
        for (g, n) in [(0, 4), (1, 1), (2, 0), (2, 1), (3, 2)] {
            for spec in [ModuliSpec::generic(g, n).unwrap(), ModuliSpec::concrete_n(g, n).unwrap()] {
                let d = delta_atoms(&spec, 3);
                let lam = TautExpr::gen(&spec, 3, Generator::lambda()).unwrap();
                let e = lam.sub(&d.scale(&q(2, 1))).unwrap();
                let folded = fold_delta(&e);
                let expected = lam.sub(&TautExpr::gen(&spec, 3, Generator::Delta).unwrap().scale(&q(2, 1))).unwrap();
                assert_eq!(folded, expected, "({g},{n}) {:?}", spec.mode());
                // products of delta with another class fold too
                let prod = d.mul(&lam).unwrap();
                let folded = fold_delta(&prod);
                assert_eq!(folded, TautExpr::gen(&spec, 3, Generator::Delta).unwrap().mul(&lam).unwrap());
            }
        }
    }

    #[test]
    fn partial_patterns_do_not_fold() {
        let s = ModuliSpec::generic(2, 1).unwrap();
        let e = TautExpr::gen(&s, 2, Generator::BoundaryIrr(0, 0)).unwrap();
        assert_eq!(fold_delta(&e), e);
    }
}
