//! Exact elements of (1/4)ℤ, the degree domain for twisted modes.
//!
//! A [`QuarterInt`] stores its value in quarter units, so all arithmetic,
//! ordering and residue-class queries are exact integer operations.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use serde::{Deserialize, Serialize};

/// An element of (1/4)ℤ, stored as `quarters / 4`.
#[derive(
    Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default, Serialize, Deserialize,
)]
pub struct QuarterInt {
    quarters: i64,
}

impl QuarterInt {
    pub const ZERO: QuarterInt = QuarterInt { quarters: 0 };

    /// Value `q / 4`.
    pub fn from_quarters(q: i64) -> Self {
        QuarterInt { quarters: q }
    }

    pub fn from_int(n: i64) -> Self {
        QuarterInt { quarters: 4 * n }
    }

    pub fn quarters(self) -> i64 {
        self.quarters
    }

    pub fn is_negative(self) -> bool {
        self.quarters < 0
    }

    pub fn is_integer(self) -> bool {
        self.quarters.rem_euclid(4) == 0
    }

    /// Degrees carried by x1 modes: elements of 1/4 + (1/2)ℤ, i.e. odd quarters.
    pub fn is_x1_degree(self) -> bool {
        self.quarters.rem_euclid(2) == 1
    }

    /// Degrees carried by x12 modes: integers.
    pub fn is_x12_degree(self) -> bool {
        self.is_integer()
    }

    /// Residue of the value mod 1, in quarter units (0, 1, 2 or 3).
    pub fn residue_mod_one(self) -> i64 {
        self.quarters.rem_euclid(4)
    }

    /// Residue of the value mod 1/2, in quarter units (0 or 1).
    pub fn residue_mod_half(self) -> i64 {
        self.quarters.rem_euclid(2)
    }

    pub fn checked_int(self) -> Option<i64> {
        self.is_integer().then_some(self.quarters / 4)
    }
}

impl Add for QuarterInt {
    type Output = QuarterInt;
    fn add(self, rhs: QuarterInt) -> QuarterInt {
        QuarterInt { quarters: self.quarters + rhs.quarters }
    }
}

impl AddAssign for QuarterInt {
    fn add_assign(&mut self, rhs: QuarterInt) {
        self.quarters += rhs.quarters;
    }
}

impl Sub for QuarterInt {
    type Output = QuarterInt;
    fn sub(self, rhs: QuarterInt) -> QuarterInt {
        QuarterInt { quarters: self.quarters - rhs.quarters }
    }
}

impl Neg for QuarterInt {
    type Output = QuarterInt;
    fn neg(self) -> QuarterInt {
        QuarterInt { quarters: -self.quarters }
    }
}

impl std::iter::Sum for QuarterInt {
    fn sum<I: Iterator<Item = QuarterInt>>(iter: I) -> Self {
        iter.fold(QuarterInt::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for QuarterInt {
    /// Reduced fraction with denominator 1, 2 or 4.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.quarters;
        if q % 4 == 0 {
            write!(f, "{}", q / 4)
        } else if q % 2 == 0 {
            write!(f, "{}/2", q / 2)
        } else {
            write!(f, "{q}/4")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residues_and_classes() {
        let m = QuarterInt::from_quarters(-3); // -3/4
        assert!(m.is_x1_degree());
        assert!(!m.is_integer());
        assert_eq!(m.residue_mod_one(), 1); // -3/4 ≡ 1/4 (mod 1)
        assert_eq!(QuarterInt::from_quarters(-1).residue_mod_one(), 3); // -1/4 ≡ 3/4
        assert_eq!(QuarterInt::from_quarters(-5).residue_mod_one(), 3); // -5/4 ≡ 3/4
        assert!(QuarterInt::from_int(-2).is_x12_degree());
        assert!(!QuarterInt::from_quarters(-2).is_x12_degree());
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = QuarterInt::from_quarters(-3);
        let b = QuarterInt::from_quarters(-1);
        assert_eq!(a + b, QuarterInt::from_int(-1));
        assert_eq!(-(a - b), QuarterInt::from_quarters(2));
        assert!(a < b);
    }

    #[test]
    fn display_reduces_fractions() {
        assert_eq!(QuarterInt::from_quarters(-3).to_string(), "-3/4");
        assert_eq!(QuarterInt::from_quarters(2).to_string(), "1/2");
        assert_eq!(QuarterInt::from_quarters(-8).to_string(), "-2");
        assert_eq!(QuarterInt::ZERO.to_string(), "0");
    }
}
