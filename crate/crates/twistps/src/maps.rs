//! The shifting automorphism and its companion map.
//!
//! Forward direction: `x1(m) ↦ (-i)·x1(m + 1/2)`, `x12(n) ↦ x12(n + 1)`,
//! extended multiplicatively; the inverse substitutes `(+i)` and shifts
//! down. Both are graded algebra automorphisms. The companion map is
//! `psi(a) = tau_inverse(a)·x1(-1/4)`, so that `psi(tau(a)) = a·x1(-1/4)`.

use crate::element::{normal_order, Element};
use crate::mode::Mode;
use crate::monomial::NormalMonomial;
use crate::quarter::QuarterInt;
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TauDirection {
    Forward,
    Inverse,
}

/// Apply the shifting automorphism monomial-wise.
pub fn tau(a: &Element, direction: TauDirection) -> Element {
    let (a1_shift, a12_shift, i_exp_per_a1): (QuarterInt, QuarterInt, i64) = match direction {
        TauDirection::Forward => (QuarterInt::from_quarters(2), QuarterInt::from_int(1), -1),
        TauDirection::Inverse => (QuarterInt::from_quarters(-2), QuarterInt::from_int(-1), 1),
    };
    let mut out = Element::zero();
    for (m, c) in a.terms() {
        let a1: Vec<QuarterInt> = m.a1_degrees().iter().map(|&d| d + a1_shift).collect();
        let a12: Vec<QuarterInt> = m.a12_degrees().iter().map(|&d| d + a12_shift).collect();
        let phase = Scalar::i_pow(i_exp_per_a1 * a1.len() as i64);
        out.add_term(NormalMonomial::new(a1, a12), c * &phase);
    }
    out
}

/// `psi(a) = tau_inverse(a) · x1(-1/4)`, normal-ordered.
pub fn psi(a: &Element) -> Element {
    let shifted = tau(a, TauDirection::Inverse);
    let mut out = Element::zero();
    for (m, c) in shifted.terms() {
        let mut word = m.word();
        word.push(Mode::x1q(-1));
        out = out.add(&normal_order(&word, c.clone()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::NormalMonomial;

    fn q(n: i64) -> QuarterInt {
        QuarterInt::from_quarters(n)
    }

    #[test]
    fn forward_shift_of_a_single_mode() {
        // tau(x1(-3/4)) = (-i)·x1(-1/4)
        let a = Element::from_mode(Mode::x1q(-3));
        let image = tau(&a, TauDirection::Forward);
        let expected = Element::from_term(
            NormalMonomial::new(vec![q(-1)], vec![]),
            -Scalar::i(),
        );
        assert_eq!(image, expected);
        // identity is fixed
        assert_eq!(tau(&Element::identity(), TauDirection::Forward), Element::identity());
    }

    #[test]
    fn inverse_shift_of_x12() {
        let a = Element::from_mode(Mode::x12n(0));
        assert_eq!(tau(&a, TauDirection::Inverse), Element::from_mode(Mode::x12n(-1)));
    }

    #[test]
    fn tau_round_trips() {
        let a = normal_order(
            &[Mode::x1q(-1), Mode::x1q(-3), Mode::x12n(-2)],
            Scalar::from_ratio(3, 2),
        );
        let fwd = tau(&a, TauDirection::Forward);
        assert_eq!(tau(&fwd, TauDirection::Inverse), a);
    }

    #[test]
    fn psi_examples() {
        // psi(1) = x1(-1/4)
        assert_eq!(
            psi(&Element::identity()),
            Element::from_monomial(NormalMonomial::new(vec![q(-1)], vec![]))
        );
        // psi(tau(x1(-1/4))) = x1(-1/4)^2
        let a = Element::from_mode(Mode::x1q(-1));
        let img = psi(&tau(&a, TauDirection::Forward));
        assert_eq!(
            img,
            Element::from_monomial(NormalMonomial::new(vec![q(-1), q(-1)], vec![]))
        );
        // psi((-i)·x1(-1/4)) = x1(-3/4) x1(-1/4)
        let b = a.scale(&-Scalar::i());
        assert_eq!(
            psi(&b),
            Element::from_monomial(NormalMonomial::new(vec![q(-3), q(-1)], vec![]))
        );
    }

    #[test]
    fn psi_after_tau_appends_a_mode() {
        // psi(tau(a)) = a·x1(-1/4) for a general element
        let a = normal_order(&[Mode::x1q(-5), Mode::x1q(-1), Mode::x12n(-1)], Scalar::one());
        let lhs = psi(&tau(&a, TauDirection::Forward));
        let rhs = a.mul(&Element::from_mode(Mode::x1q(-1)));
        assert_eq!(lhs, rhs);
    }
}
