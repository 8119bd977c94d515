//! Canonical PBW monomials and the bigrading.
//!
//! A normal monomial is a product of x1 modes followed by x12 modes, each
//! block weakly increasing by degree. Any fixed order would do since the
//! commutator corrections are central; this one matches the usual ordered
//! displays.

use std::cmp::Ordering;
use std::fmt;

use crate::mode::{Mode, Root};
use crate::quarter::QuarterInt;

/// Bidegree (charge, weight). Charge counts 1 per x1 mode and 2 per x12
/// mode; weight is the negated degree sum.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Bidegree {
    pub charge: i64,
    pub weight: QuarterInt,
}

impl Bidegree {
    pub const VACUUM: Bidegree = Bidegree { charge: 0, weight: QuarterInt::ZERO };

    pub fn new(charge: i64, weight: QuarterInt) -> Self {
        Bidegree { charge, weight }
    }

    pub fn weight4(self) -> i64 {
        self.weight.quarters()
    }

    pub fn is_nonnegative(self) -> bool {
        self.charge >= 0 && !self.weight.is_negative()
    }
}

impl std::ops::Add for Bidegree {
    type Output = Bidegree;
    fn add(self, rhs: Bidegree) -> Bidegree {
        Bidegree { charge: self.charge + rhs.charge, weight: self.weight + rhs.weight }
    }
}

impl std::ops::Sub for Bidegree {
    type Output = Bidegree;
    fn sub(self, rhs: Bidegree) -> Bidegree {
        Bidegree { charge: self.charge - rhs.charge, weight: self.weight - rhs.weight }
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.charge, self.weight)
    }
}

/// A canonical ordered monomial: ascending x1 block, then ascending x12
/// block. The empty monomial is the identity of the enveloping algebra.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NormalMonomial {
    a1: Vec<QuarterInt>,
    a12: Vec<QuarterInt>,
}

impl NormalMonomial {
    pub fn identity() -> Self {
        NormalMonomial { a1: Vec::new(), a12: Vec::new() }
    }

    /// Build from the two degree lists; sorts each block.
    pub fn new(mut a1: Vec<QuarterInt>, mut a12: Vec<QuarterInt>) -> Self {
        debug_assert!(a1.iter().all(|d| d.is_x1_degree()));
        debug_assert!(a12.iter().all(|d| d.is_x12_degree()));
        a1.sort_unstable();
        a12.sort_unstable();
        NormalMonomial { a1, a12 }
    }

    pub fn from_mode(m: Mode) -> Self {
        match m.root {
            Root::A1 => NormalMonomial { a1: vec![m.degree], a12: Vec::new() },
            Root::A12 => NormalMonomial { a1: Vec::new(), a12: vec![m.degree] },
        }
    }

    pub fn is_identity(&self) -> bool {
        self.a1.is_empty() && self.a12.is_empty()
    }

    pub fn a1_degrees(&self) -> &[QuarterInt] {
        &self.a1
    }

    pub fn a12_degrees(&self) -> &[QuarterInt] {
        &self.a12
    }

    pub fn charge(&self) -> i64 {
        self.a1.len() as i64 + 2 * self.a12.len() as i64
    }

    pub fn weight(&self) -> QuarterInt {
        -(self.a1.iter().copied().sum::<QuarterInt>() + self.a12.iter().copied().sum())
    }

    pub fn bidegree(&self) -> Bidegree {
        Bidegree::new(self.charge(), self.weight())
    }

    /// Contains a mode of nonnegative degree. Such monomials lie in the
    /// right ideal generated by nonnegative modes and annihilate every
    /// cyclic vector considered here.
    pub fn is_plus_class(&self) -> bool {
        // blocks are ascending, so it suffices to look at the last entries
        self.a1.last().is_some_and(|d| !d.is_negative())
            || self.a12.last().is_some_and(|d| !d.is_negative())
    }

    pub fn is_all_negative(&self) -> bool {
        !self.is_plus_class()
    }

    /// The monomial as an operator word, x1 block first.
    pub fn word(&self) -> Vec<Mode> {
        self.a1
            .iter()
            .map(|&d| Mode::x1(d))
            .chain(self.a12.iter().map(|&d| Mode::x12(d)))
            .collect()
    }
}

impl Ord for NormalMonomial {
    /// Monomials with fewer x12 modes first, then lexicographic on the
    /// degree blocks. This is the elimination order of the engine.
    fn cmp(&self, other: &Self) -> Ordering {
        self.a12
            .len()
            .cmp(&other.a12.len())
            .then_with(|| self.a1.cmp(&other.a1))
            .then_with(|| self.a12.cmp(&other.a12))
    }
}

impl PartialOrd for NormalMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for NormalMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        let mut first = true;
        for &d in &self.a1 {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "x1({d})")?;
            first = false;
        }
        for &d in &self.a12 {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "x12({d})")?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> QuarterInt {
        QuarterInt::from_quarters(n)
    }

    #[test]
    fn bidegree_bookkeeping() {
        let m = NormalMonomial::new(vec![q(-1), q(-3)], vec![QuarterInt::from_int(-1)]);
        assert_eq!(m.charge(), 4);
        assert_eq!(m.weight(), q(8));
        assert_eq!(NormalMonomial::identity().bidegree(), Bidegree::VACUUM);
    }

    #[test]
    fn plus_class_detection() {
        let m = NormalMonomial::new(vec![q(-3), q(1)], vec![]);
        assert!(m.is_plus_class());
        let m = NormalMonomial::new(vec![q(-3)], vec![QuarterInt::from_int(0)]);
        assert!(m.is_plus_class());
        let m = NormalMonomial::new(vec![q(-3), q(-1)], vec![QuarterInt::from_int(-1)]);
        assert!(m.is_all_negative());
        assert!(NormalMonomial::identity().is_all_negative());
    }

    #[test]
    fn canonical_text_rendering() {
        let m = NormalMonomial::new(vec![q(-1), q(-3)], vec![QuarterInt::from_int(-1)]);
        assert_eq!(m.to_string(), "x1(-3/4) x1(-1/4) x12(-1)");
        assert_eq!(NormalMonomial::identity().to_string(), "1");
    }

    #[test]
    fn order_puts_pure_x1_monomials_first() {
        let a = NormalMonomial::new(vec![q(-3), q(-1)], vec![]);
        let b = NormalMonomial::new(vec![], vec![QuarterInt::from_int(-1)]);
        assert!(a < b);
    }
}
