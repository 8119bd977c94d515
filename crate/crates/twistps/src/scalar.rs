//! Exact Gaussian-rational scalars.
//!
//! The coefficient field is ℚ(i). Bracket constants are real, but the
//! shifting automorphism introduces powers of i, so both parts are kept.
//! Values are always in canonical reduced form (that is what
//! [`num::BigRational`] guarantees), hence equality is plain structural
//! equality.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Scalar {
    pub re: BigRational,
    pub im: BigRational,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        Scalar { re: BigRational::one(), im: BigRational::zero() }
    }

    pub fn i() -> Self {
        Scalar { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar { re: BigRational::from_integer(n.into()), im: BigRational::zero() }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar {
            re: BigRational::new(num.into(), den.into()),
            im: BigRational::zero(),
        }
    }

    /// i^exp for any (possibly negative) integer exponent.
    pub fn i_pow(exp: i64) -> Self {
        match exp.rem_euclid(4) {
            0 => Scalar::one(),
            1 => Scalar::i(),
            2 => -Scalar::one(),
            _ => -Scalar::i(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        let norm = &self.re * &self.re + &self.im * &self.im;
        Scalar { re: &self.re / &norm, im: -&self.im / &norm }
    }

    /// Crude size measure used for pivot selection during elimination.
    pub fn complexity(&self) -> u64 {
        fn bits(r: &BigRational) -> u64 {
            r.numer().bits() + r.denom().bits()
        }
        bits(&self.re) + bits(&self.im)
    }

    /// Least common multiple of the two denominators, for clearing a row
    /// to Gaussian integers.
    pub fn denom_lcm(&self) -> BigInt {
        num::integer::lcm(self.re.denom().clone(), self.im.denom().clone())
    }

    /// Render one rational part the way reports expect: `p` or `p/q`.
    pub fn part_string(r: &BigRational) -> String {
        if r.denom().is_one() {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    }

    pub fn re_string(&self) -> String {
        Self::part_string(&self.re)
    }

    pub fn im_string(&self) -> String {
        Self::part_string(&self.im)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re, im: -self.im }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -&self.re, im: -&self.im }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let im_abs = self.im.abs();
        let im_str = if im_abs.is_one() {
            "i".to_string()
        } else {
            format!("{}i", Self::part_string(&im_abs))
        };
        if self.im.is_zero() {
            write!(f, "{}", self.re_string())
        } else if self.re.is_zero() {
            if self.im.numer().sign() == Sign::Minus {
                write!(f, "-{im_str}")
            } else {
                write!(f, "{im_str}")
            }
        } else if self.im.numer().sign() == Sign::Minus {
            write!(f, "{}-{im_str}", self.re_string())
        } else {
            write!(f, "{}+{im_str}", self.re_string())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_operations() {
        let a = Scalar::from_ratio(1, 2);
        let b = Scalar::i();
        let prod = &a * &b; // i/2
        assert_eq!(prod.to_string(), "1/2i");
        let sum = &prod + &a;
        assert_eq!(sum.to_string(), "1/2+1/2i");
        let inv = sum.inv();
        assert!((&sum * &inv).is_one());
    }

    #[test]
    fn powers_of_i_cycle() {
        assert_eq!(Scalar::i_pow(0), Scalar::one());
        assert_eq!(Scalar::i_pow(-1), -Scalar::i());
        assert_eq!(Scalar::i_pow(2), -Scalar::one());
        assert_eq!(Scalar::i_pow(-4), Scalar::one());
        // (-i)^r = i^{-r}
        let minus_i = -Scalar::i();
        let mut acc = Scalar::one();
        for r in 0..8 {
            assert_eq!(acc, Scalar::i_pow(-r));
            acc = &acc * &minus_i;
        }
    }

    #[test]
    fn rendering_is_canonical() {
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!((-Scalar::i()).to_string(), "-i");
        assert_eq!(Scalar::from_ratio(-4, 8).to_string(), "-1/2");
        assert_eq!(Scalar::from_ratio(-4, 8).re_string(), "-1/2");
    }
}
