use crate::error::{domain, Result};
use crate::taut::spec::ModuliSpec;

/// A generator of the graded tautological algebra.
///
/// The declaration order is the canonical total order used for monomials.
/// Boundary atoms take the pushforward argument in the monomial symmetric
/// basis: `(a, b)` with `a >= b` means `x^a y^b + x^b y^a` (or `x^a y^a`),
/// where `x, y` are the cotangent classes at the two branches of the node.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// `kappa_m`, `m >= 1`.
    Kappa(u32),
    /// `kappa~_m = pi_*(c_1(omega)^{m+1})`.
    KappaTilde(u32),
    /// `sum_p psi_p^m`.
    PsiPow(u32),
    /// `psi_p` for the label at this index.
    Psi(usize),
    /// `ch_k(E)` of the Hodge bundle, `k` odd; `ch_1(E) = lambda`.
    ChE(u32),
    Delta,
    /// `xi_irr_*(m_{(a,b)}(psi_q1, psi_q2))`.
    BoundaryIrr(u32, u32),
    /// `sum_{h,A} xi_{h,A *}(m_{(a,b)}(psi_r1, psi_r2))` over all ordered stable `(h, A)`.
    BoundarySepAll(u32, u32),
    /// `xi_{h,A *}(psi_r1^a (x) psi_r2^b)` for one stable side; `side` is a label bitmask.
    BoundarySep {
        h: u32,
        side: u64,
        a: u32,
        b: u32,
    },
}

impl Generator {
    pub fn degree(&self) -> u32 {
        match *self {
            Generator::Kappa(m) | Generator::KappaTilde(m) | Generator::PsiPow(m) => m,
            Generator::Psi(_) | Generator::Delta => 1,
            Generator::ChE(k) => k,
            Generator::BoundaryIrr(a, b) | Generator::BoundarySepAll(a, b) => a + b + 1,
            Generator::BoundarySep { a, b, .. } => a + b + 1,
        }
    }

    pub fn lambda() -> Generator {
        Generator::ChE(1)
    }

    pub fn is_boundary_atom(&self) -> bool {
        matches!(self, Generator::BoundaryIrr(..) | Generator::BoundarySepAll(..) | Generator::BoundarySep { .. })
    }

    /// Checks index ranges against the moduli data.
    pub fn validate(&self, spec: &ModuliSpec) -> Result<()> {
        match *self {
            Generator::Kappa(0) | Generator::KappaTilde(0) | Generator::PsiPow(0) => {
                domain(format!("{self:?}: index must be at least 1"))
            }
            Generator::Psi(i) if i >= spec.n() => domain(format!("psi index {i} out of range")),
            Generator::ChE(k) if k % 2 == 0 => domain(format!("ch_{k}(E): only odd positive degrees are nonzero")),
            Generator::BoundarySep { h, side, .. } => {
                if side & !spec.full_mask() != 0 {
                    return domain("separating side mentions unknown labels");
                }
                if !spec.separating_side_is_stable(h, side.count_ones() as usize) {
                    return domain(format!("separating side (h = {h}, mask = {side:#b}) is unstable"));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Canonical representative, or `None` when the generator is zero on
    /// this moduli data (no markings, no irreducible divisor, no separating
    /// divisor).
    pub fn canonical(&self, spec: &ModuliSpec) -> Option<Generator> {
        let sorted = |a: u32, b: u32| if a >= b { (a, b) } else { (b, a) };
        match *self {
            Generator::PsiPow(_) | Generator::Psi(_) if spec.n() == 0 => None,
            Generator::BoundaryIrr(a, b) => spec.has_irreducible_divisor().then(|| {
                let (a, b) = sorted(a, b);
                Generator::BoundaryIrr(a, b)
            }),
            Generator::BoundarySepAll(a, b) => spec.has_separating_divisors().then(|| {
                let (a, b) = sorted(a, b);
                Generator::BoundarySepAll(a, b)
            }),
            Generator::BoundarySep { h, side, a, b } => {
                let (h, side, a, b) = canonical_side(spec, h, side, a, b);
                Some(Generator::BoundarySep { h, side, a, b })
            }
            ref other => Some(other.clone()),
        }
    }
}

/// Chooses the smaller of `(h, A, a, b)` and `(g - h, A^c, b, a)`, which
/// name the same pushforward.
pub fn canonical_side(spec: &ModuliSpec, h: u32, side: u64, a: u32, b: u32) -> (u32, u64, u32, u32) {
    let this = (h, side, a, b);
    let other = (spec.genus() - h, !side & spec.full_mask(), b, a);
    this.min(other)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees() {
        assert_eq!(Generator::Kappa(3).degree(), 3);
        assert_eq!(Generator::BoundaryIrr(2, 1).degree(), 4);
        assert_eq!(Generator::BoundarySep { h: 0, side: 3, a: 0, b: 0 }.degree(), 1);
        assert_eq!(Generator::lambda().degree(), 1);
    }

    #[test]
    fn order_follows_declaration() {
        let mut v = vec![
            Generator::BoundarySepAll(0, 0),
            Generator::Delta,
            Generator::ChE(1),
            Generator::Psi(0),
            Generator::PsiPow(1),
            Generator::KappaTilde(1),
            Generator::Kappa(2),
            Generator::BoundaryIrr(0, 0),
            Generator::Kappa(1),
        ];
        v.sort();
        assert_eq!(v[0], Generator::Kappa(1));
        assert_eq!(v[1], Generator::Kappa(2));
        assert_eq!(v[2], Generator::KappaTilde(1));
        assert_eq!(v[6], Generator::Delta);
        assert_eq!(v[7], Generator::BoundaryIrr(0, 0));
        assert_eq!(v[8], Generator::BoundarySepAll(0, 0));
    }

    #[test]
    fn canonical_forms() {
        let s = ModuliSpec::concrete_n(0, 4).unwrap();
        assert_eq!(Generator::BoundaryIrr(1, 0).canonical(&s), None);
        assert_eq!(Generator::BoundarySepAll(0, 1).canonical(&s), Some(Generator::BoundarySepAll(1, 0)));
        let a = Generator::BoundarySep { h: 0, side: 0b0011, a: 1, b: 0 }.canonical(&s);
        let b = Generator::BoundarySep { h: 0, side: 0b1100, a: 0, b: 1 }.canonical(&s);
        assert_eq!(a, b);
        let g2 = ModuliSpec::concrete_n(2, 0).unwrap();
        let x = Generator::BoundarySep { h: 1, side: 0, a: 2, b: 0 }.canonical(&g2);
        assert_eq!(x, Some(Generator::BoundarySep { h: 1, side: 0, a: 0, b: 2 }));
    }

    #[test]
    fn validation() {
        let s = ModuliSpec::concrete_n(0, 4).unwrap();
        assert!(Generator::ChE(2).validate(&s).is_err());
        assert!(Generator::Kappa(0).validate(&s).is_err());
        assert!(Generator::Psi(4).validate(&s).is_err());
        assert!(Generator::BoundarySep { h: 0, side: 0b0001, a: 0, b: 0 }.validate(&s).is_err());
        assert!(Generator::BoundarySep { h: 0, side: 0b0011, a: 0, b: 0 }.validate(&s).is_ok());
    }
}
