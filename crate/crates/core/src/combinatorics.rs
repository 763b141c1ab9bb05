//! Integer partitions, the partition coefficient of the `ch -> c`
//! conversion, and the two symmetric bivariate polynomial families that get
//! pushed forward along boundary maps.

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::{binomial, factorial, Rational};
use crate::error::{domain, Result};

/// A partition of a positive integer, parts stored in weakly decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from parts in any order. Zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return domain("a partition needs at least one part and all parts positive");
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Map from part value `r` to its multiplicity `m_r`.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `j`, in reverse-lexicographic order: `(j)` first,
/// `(1,...,1)` last.
pub fn partitions(j: i64) -> Result<Vec<Partition>> {
    if j <= 0 {
        return domain(format!("partitions need a positive weight, got {j}"));
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(j as u32, j as u32, &mut current, &mut out);
    Ok(out)
}

fn fill(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition { parts: current.clone() });
        return;
    }
    for part in (1..=remaining.min(max_part)).rev() {
        current.push(part);
        fill(remaining - part, part, current, out);
        current.pop();
    }
}

/// `(-1)^{j - l(mu)} prod_r ((r-1)!)^{m_r} / m_r!`, the weight of `ch_mu` in `c_j`.
pub fn chern_partition_coeff(mu: &Partition) -> Rational {
    let j = mu.weight() as u64;
    let l = mu.len() as u64;
    let mut c = Rational::sign_power(j - l);
    for (r, m) in mu.multiplicities() {
        c = c * factorial(r - 1).pow(m) / factorial(m);
    }
    c
}

/// Symmetric polynomial in two variables written in the monomial symmetric
/// basis: key `(a, b)` with `a >= b` stands for `x^a y^b + x^b y^a` when
/// `a > b` and for `x^a y^a` when `a == b`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymPoly2 {
    coeffs: BTreeMap<(u32, u32), Rational>,
}

impl SymPoly2 {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `c * m_{(a,b)}`; the key is reordered so that `a >= b`.
    pub fn add_term(&mut self, a: u32, b: u32, c: Rational) {
        let key = if a >= b { (a, b) } else { (b, a) };
        let slot = self.coeffs.entry(key).or_insert_with(Rational::zero);
        *slot += &c;
        if slot.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn coeff(&self, a: u32, b: u32) -> Rational {
        let key = if a >= b { (a, b) } else { (b, a) };
        self.coeffs.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scaled(&self, c: &Rational) -> SymPoly2 {
        let mut out = SymPoly2::new();
        for (&(a, b), v) in &self.coeffs {
            out.add_term(a, b, v * c);
        }
        out
    }

    /// Total degree `a + b` if every key shares it.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.coeffs.keys().map(|&(a, b)| a + b);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Value at `(x, y)`.
    pub fn evaluate(&self, x: &Rational, y: &Rational) -> Rational {
        self.coeffs
            .iter()
            .map(|(&(a, b), c)| {
                let mono = if a == b { x.pow(a) * y.pow(b) } else { x.pow(a) * y.pow(b) + x.pow(b) * y.pow(a) };
                c * &mono
            })
            .sum()
    }
}

/// `(x + y)^k` in the monomial symmetric basis.
pub fn power_sym(k: u32) -> SymPoly2 {
    let mut p = SymPoly2::new();
    for b in 0..=k / 2 {
        p.add_term(k - b, b, Rational::from(binomial(k, b)));
    }
    p
}

/// `x^k - x^{k-1} y + ... + y^k` for even `k`, in the monomial symmetric basis.
pub fn alternating_sym(k: u32) -> Result<SymPoly2> {
    if k % 2 == 1 {
        return domain(format!("the alternating sum is only symmetric for even k, got {k}"));
    }
    let mut p = SymPoly2::new();
    for b in 0..=k / 2 {
        p.add_term(k - b, b, Rational::sign_power(b as u64));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{inv_factorial, q};

    fn parts(v: &[Partition]) -> Vec<Vec<u32>> {
        v.iter().map(|p| p.parts().to_vec()).collect()
    }

    #[test]
    fn partitions_examples() {
        assert_eq!(parts(&partitions(3).unwrap()), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        assert_eq!(parts(&partitions(1).unwrap()), vec![vec![1]]);
        assert_eq!(partitions(5).unwrap().len(), 7);
        assert!(partitions(0).is_err());
        assert!(partitions(-2).is_err());
        let four: Vec<String> = partitions(4).unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(four.join(" "), "(4) (3,1) (2,2) (2,1,1) (1,1,1,1)");
    }

    // Independent generator: every weakly decreasing sequence reachable by
    // splitting off one part at a time, deduplicated through a set.
    fn brute_force(j: u32) -> std::collections::BTreeSet<Vec<u32>> {
        let mut set = std::collections::BTreeSet::new();
        let mut stack = vec![vec![j]];
        while let Some(p) = stack.pop() {
            if !set.insert(p.clone()) {
                continue;
            }
            for i in 0..p.len() {
                for cut in 1..p[i] {
                    let mut next = p.clone();
                    next[i] -= cut;
                    next.push(cut);
                    next.sort_unstable_by(|a, b| b.cmp(a));
                    stack.push(next);
                }
            }
        }
        set
    }

    #[test]
    fn partition_counts_match_brute_force() {
        for j in 1..=12 {
            let fast = partitions(j as i64).unwrap();
            let slow = brute_force(j);
            assert_eq!(fast.len(), slow.len(), "j = {j}");
            let fast_set: std::collections::BTreeSet<Vec<u32>> = fast.iter().map(|p| p.parts().to_vec()).collect();
            assert_eq!(fast_set, slow);
            for p in &fast {
                let m = p.multiplicities();
                assert_eq!(m.iter().map(|(r, c)| r * c).sum::<u32>(), j);
                assert_eq!(m.values().sum::<u32>() as usize, p.len());
            }
        }
    }

    #[test]
    fn partition_constructor_sorts() {
        let p = Partition::new(vec![1, 3, 2, 1]).unwrap();
        assert_eq!(p.parts(), &[3, 2, 1, 1]);
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn partition_coeff_examples() {
        let c = |v: Vec<u32>| chern_partition_coeff(&Partition::new(v).unwrap());
        assert_eq!(c(vec![1, 1]), q(1, 2));
        assert_eq!(c(vec![2]), q(-1, 1));
        assert_eq!(c(vec![3]), q(2, 1));
        assert_eq!(c(vec![2, 1]), q(-1, 1));
        assert_eq!(c(vec![1, 1, 1]), q(1, 6));
    }

    #[test]
    fn partition_coeff_on_a_line_bundle() {
        // ch_r = x^r / r!; only the coefficient of x^j survives, so c_j is the
        // scalar sum_mu coeff(mu) prod 1/mu_i!.
        for j in 1..=8i64 {
            let total: Rational = partitions(j)
                .unwrap()
                .iter()
                .map(|mu| {
                    chern_partition_coeff(mu) * mu.parts().iter().map(|&r| inv_factorial(r)).product::<Rational>()
                })
                .sum();
            let expected = if j == 1 { Rational::one() } else { Rational::zero() };
            assert_eq!(total, expected, "j = {j}");
        }
    }

    #[test]
    fn power_sym_examples() {
        let p0 = power_sym(0);
        assert_eq!(p0.terms().count(), 1);
        assert_eq!(p0.coeff(0, 0), q(1, 1));
        let p2 = power_sym(2);
        assert_eq!((p2.coeff(2, 0), p2.coeff(1, 1)), (q(1, 1), q(2, 1)));
        assert_eq!(p2.terms().count(), 2);
        let p3 = power_sym(3);
        assert_eq!((p3.coeff(3, 0), p3.coeff(2, 1)), (q(1, 1), q(3, 1)));
        assert_eq!(p3.terms().count(), 2);
    }

    #[test]
    fn alternating_sym_examples() {
        assert_eq!(alternating_sym(0).unwrap().coeff(0, 0), q(1, 1));
        let a2 = alternating_sym(2).unwrap();
        assert_eq!((a2.coeff(2, 0), a2.coeff(1, 1)), (q(1, 1), q(-1, 1)));
        let a4 = alternating_sym(4).unwrap();
        assert_eq!((a4.coeff(4, 0), a4.coeff(3, 1), a4.coeff(2, 2)), (q(1, 1), q(-1, 1), q(1, 1)));
        assert!(alternating_sym(3).is_err());
    }

    #[test]
    fn symmetric_families_at_one_one() {
        let one = Rational::one();
        for k in 0..12u32 {
            assert_eq!(power_sym(k).evaluate(&one, &one), Rational::integer(1 << k));
            assert_eq!(power_sym(k).homogeneous_degree(), Some(k));
            if k % 2 == 0 {
                assert_eq!(alternating_sym(k).unwrap().evaluate(&one, &one), one);
            }
        }
    }

    #[test]
    fn keys_are_ordered() {
        let mut p = SymPoly2::new();
        p.add_term(0, 3, q(1, 2));
        p.add_term(3, 0, q(1, 2));
        assert_eq!(p.coeff(3, 0), q(1, 1));
        p.add_term(3, 0, q(-1, 1));
        assert!(p.is_zero());
    }
}
