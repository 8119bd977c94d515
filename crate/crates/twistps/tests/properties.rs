//! Property tests for the algebraic core.

use proptest::prelude::*;
use twistps::*;

fn arb_x1() -> impl Strategy<Value = Mode> {
    (-10i64..10).prop_map(|j| Mode::x1(QuarterInt::from_quarters(2 * j + 1)))
}

fn arb_x12() -> impl Strategy<Value = Mode> {
    (-5i64..=5).prop_map(|n| Mode::x12(QuarterInt::from_int(n)))
}

fn arb_mode() -> impl Strategy<Value = Mode> {
    prop_oneof![3 => arb_x1(), 1 => arb_x12()]
}

fn arb_word() -> impl Strategy<Value = Vec<Mode>> {
    proptest::collection::vec(arb_mode(), 0..=6)
}

proptest! {
    /// bracket(a, b) + bracket(b, a) = 0
    #[test]
    fn bracket_is_antisymmetric(a in arb_mode(), b in arb_mode()) {
        prop_assert!(bracket(a, b).add(&bracket(b, a)).is_zero());
    }

    /// Brackets land in the center: [a, [b, c]] = 0
    #[test]
    fn double_brackets_vanish(a in arb_mode(), b in arb_mode(), c in arb_mode()) {
        let inner = bracket(b, c);
        let ea = Element::from_mode(a);
        prop_assert!(ea.mul(&inner).sub(&inner.mul(&ea)).is_zero());
    }

    /// Leftmost-first and rightmost-first exchanges agree
    #[test]
    fn normal_ordering_is_confluent(word in arb_word()) {
        prop_assert_eq!(
            normal_order(&word, Scalar::one()),
            normal_order_rightmost(&word, Scalar::one())
        );
    }

    /// Every term of a normal-ordered word carries the word's bidegree
    #[test]
    fn bidegrees_are_additive(word in arb_word()) {
        let charge: i64 = word.iter().map(|m| m.charge()).sum();
        let weight: QuarterInt = word.iter().map(|m| m.weight()).sum();
        let e = normal_order(&word, Scalar::one());
        for (m, _) in e.terms() {
            prop_assert_eq!(m.bidegree(), Bidegree::new(charge, weight));
        }
    }

    /// The shift map is an algebra automorphism:
    /// tau(normal_order(w)) = normal_order of the shifted word
    #[test]
    fn tau_is_an_automorphism(word in arb_word()) {
        let lhs = tau(&normal_order(&word, Scalar::one()), TauDirection::Forward);
        // shift the word mode-wise, collecting one (-i) per x1 mode
        let mut coeff = Scalar::one();
        let shifted: Vec<Mode> = word
            .iter()
            .map(|m| match m.root {
                Root::A1 => {
                    coeff = &coeff * &(-Scalar::i());
                    Mode::x1(m.degree + QuarterInt::from_quarters(2))
                }
                Root::A12 => Mode::x12(m.degree + QuarterInt::from_int(1)),
            })
            .collect();
        prop_assert_eq!(lhs, normal_order(&shifted, coeff));
    }

    /// Forward composed with inverse is the identity on elements
    #[test]
    fn tau_round_trips(word in arb_word()) {
        let e = normal_order(&word, Scalar::from_ratio(3, 7));
        prop_assert_eq!(tau(&tau(&e, TauDirection::Forward), TauDirection::Inverse), e);
    }

    /// Multiplication in the enveloping algebra is associative
    #[test]
    fn element_product_is_associative(
        w1 in proptest::collection::vec(arb_mode(), 0..=3),
        w2 in proptest::collection::vec(arb_mode(), 0..=3),
        w3 in proptest::collection::vec(arb_mode(), 0..=3),
    ) {
        let a = normal_order(&w1, Scalar::one());
        let b = normal_order(&w2, Scalar::from_ratio(1, 2));
        let c = normal_order(&w3, Scalar::one());
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }
}

/// Larger ideals have smaller quotients: dims are monotone in the twist
/// index.
#[test]
fn quotient_dims_decrease_with_the_twist_index() {
    let box_ = TruncationBox::new(4, 10);
    for conv in [Convention::MNeg, Convention::ArgNeg] {
        for k in 1..=2u32 {
            let engines: Vec<Engine> = (0..=k)
                .map(|i| {
                    let spec = IdealSpec::new(k, i, conv, ExtraForm::SumFamily).unwrap();
                    Engine::new(spec, box_, None)
                })
                .collect();
            for b in box_.bidegrees() {
                for i in 0..k as usize {
                    let larger = engines[i].quotient_dim(b).unwrap();
                    let smaller = engines[i + 1].quotient_dim(b).unwrap();
                    assert!(
                        smaller <= larger,
                        "dims must not grow with i at {b} (k={k}, i={i}, {conv:?})"
                    );
                }
            }
        }
    }
}
