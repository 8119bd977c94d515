//! Generators of the twisted nilpotent algebra and their commutators.
//!
//! Two families of modes generate the algebra:
//!
//! * `x1(m)` with `m ∈ 1/4 + (1/2)ℤ`, the modes attached to a short root;
//! * `x12(n)` with `n ∈ ℤ`, central modes attached to the long root.
//!
//! The only nonzero brackets are `[x1(m), x1(n)] = c(m)·x12(m+n)` when
//! `m + n` is an integer, with `c(m) = -1/2` for `m ≡ 1/4 (mod 1)` and
//! `c(m) = +1/2` for `m ≡ 3/4 (mod 1)`. Everything involving an x12 mode
//! commutes, so the algebra is two-step nilpotent.
//!
//! Modes of the second short root are not stored: they coincide with x1
//! modes up to sign, see [`alpha2_mode`].

use std::fmt;

use crate::error::Error;
use crate::quarter::QuarterInt;
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Root {
    A1,
    A12,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Mode {
    pub root: Root,
    pub degree: QuarterInt,
}

impl Mode {
    pub fn x1(degree: QuarterInt) -> Mode {
        assert!(degree.is_x1_degree(), "x1 degree must lie in 1/4 + (1/2)Z, got {degree}");
        Mode { root: Root::A1, degree }
    }

    pub fn x12(degree: QuarterInt) -> Mode {
        assert!(degree.is_x12_degree(), "x12 degree must be an integer, got {degree}");
        Mode { root: Root::A12, degree }
    }

    /// x1 mode with degree given in quarters.
    pub fn x1q(quarters: i64) -> Mode {
        Mode::x1(QuarterInt::from_quarters(quarters))
    }

    /// x12 mode with integer degree.
    pub fn x12n(n: i64) -> Mode {
        Mode::x12(QuarterInt::from_int(n))
    }

    /// Eigenvalue of the charge grading: 1 for x1 modes, 2 for x12 modes.
    pub fn charge(self) -> i64 {
        match self.root {
            Root::A1 => 1,
            Root::A12 => 2,
        }
    }

    /// Weight contribution, the negative of the degree.
    pub fn weight(self) -> QuarterInt {
        -self.degree
    }

    pub fn is_negative(self) -> bool {
        self.degree.is_negative()
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.root {
            Root::A1 => write!(f, "x1({})", self.degree),
            Root::A12 => write!(f, "x12({})", self.degree),
        }
    }
}

/// The bracket constant `c(m) = -(i/4)(i^{-4m} - (-i)^{-4m})` for an x1
/// degree `m`, evaluated by residue class: `-1/2` when `m ≡ 1/4 (mod 1)`
/// and `+1/2` when `m ≡ 3/4 (mod 1)`.
pub fn bracket_constant(m: QuarterInt) -> Scalar {
    debug_assert!(m.is_x1_degree());
    match m.residue_mod_one() {
        1 => Scalar::from_ratio(-1, 2),
        3 => Scalar::from_ratio(1, 2),
        _ => unreachable!("x1 degrees are odd quarters"),
    }
}

/// `[m1, m2]` as an optional scalar multiple of an x12 mode. `None` means
/// the bracket vanishes.
pub fn bracket_mode(m1: Mode, m2: Mode) -> Option<(Scalar, Mode)> {
    if m1.root != Root::A1 || m2.root != Root::A1 {
        return None; // x12 modes are central
    }
    let sum = m1.degree + m2.degree;
    if !sum.is_integer() {
        return None;
    }
    Some((bracket_constant(m1.degree), Mode::x12(sum)))
}

/// Express a mode of the second short root through x1 modes:
/// `x2(m) = +x1(m)` for `m ≡ 1/4 (mod 1)` and `x2(m) = -x1(m)` for
/// `m ≡ 3/4 (mod 1)`.
pub fn alpha2_mode(m: QuarterInt) -> Result<(i8, Mode), Error> {
    if !m.is_x1_degree() {
        return Err(Error::InvalidDegree {
            degree: m.to_string(),
            reason: "x2 modes require a degree in 1/4 + (1/2)Z".into(),
        });
    }
    let sign = if m.residue_mod_one() == 1 { 1 } else { -1 };
    Ok((sign, Mode::x1(m)))
}
