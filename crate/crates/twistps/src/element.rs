//! Elements of the enveloping algebra and normal ordering.
//!
//! An [`Element`] is a finite linear combination of canonical monomials
//! over the Gaussian rationals, with no zero coefficients stored.
//! [`normal_order`] rewrites an arbitrary mode word into this form:
//! exchanging two adjacent x1 modes introduces the central correction
//! `c(a)·x12(a+b)` whenever the degree sum is an integer, and x12 modes
//! sort freely. The result does not depend on the exchange strategy; the
//! rightmost-first variant exists to cross-check that confluence.

use std::collections::BTreeMap;
use std::fmt;

use crate::mode::{bracket_mode, Mode, Root};
use crate::monomial::{Bidegree, NormalMonomial};
use crate::quarter::QuarterInt;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Element {
    terms: BTreeMap<NormalMonomial, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element { terms: BTreeMap::new() }
    }

    pub fn identity() -> Self {
        Element::from_monomial(NormalMonomial::identity())
    }

    pub fn from_monomial(m: NormalMonomial) -> Self {
        Element::from_term(m, Scalar::one())
    }

    pub fn from_mode(m: Mode) -> Self {
        Element::from_monomial(NormalMonomial::from_mode(m))
    }

    pub fn from_term(m: NormalMonomial, c: Scalar) -> Self {
        let mut e = Element::zero();
        e.add_term(m, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NormalMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &NormalMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: NormalMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
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

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        let mut out = Element::zero();
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    pub fn neg(&self) -> Element {
        self.scale(&(-Scalar::one()))
    }

    /// Product in the enveloping algebra: concatenate words and reorder.
    pub fn mul(&self, other: &Element) -> Element {
        let mut out = Element::zero();
        for (m1, c1) in &self.terms {
            let w1 = m1.word();
            for (m2, c2) in &other.terms {
                let mut word = w1.clone();
                word.extend(m2.word());
                out = out.add(&normal_order(&word, c1 * c2));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Element {
        let mut out = Element::identity();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// The common bidegree if the element is bihomogeneous (zero counts as
    /// bihomogeneous of no particular bidegree).
    pub fn bidegree(&self) -> Option<Bidegree> {
        let mut it = self.terms.keys();
        let first = it.next()?.bidegree();
        it.all(|m| m.bidegree() == first).then_some(first)
    }

    /// Split into bihomogeneous components, keyed by bidegree.
    pub fn split_bidegrees(&self) -> BTreeMap<Bidegree, Element> {
        let mut out: BTreeMap<Bidegree, Element> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.bidegree()).or_default().add_term(m.clone(), c.clone());
        }
        out
    }

    /// Drop every monomial containing a nonnegative-degree mode.
    pub fn drop_plus_class(&self) -> Element {
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            if m.is_all_negative() {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c})·{m}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExchangeStrategy {
    LeftmostFirst,
    RightmostFirst,
}

/// Bracket of two modes as an element: `c(m1)·x12(m1+m2)` for x1 modes
/// with integer degree sum, zero otherwise. Antisymmetric.
pub fn bracket(m1: Mode, m2: Mode) -> Element {
    match bracket_mode(m1, m2) {
        Some((c, m)) => Element::from_term(NormalMonomial::from_mode(m), c),
        None => Element::zero(),
    }
}

/// Normal-order an arbitrary word with the given coefficient
/// (leftmost-first exchanges).
pub fn normal_order(word: &[Mode], coeff: Scalar) -> Element {
    normal_order_with(word, coeff, ExchangeStrategy::LeftmostFirst)
}

/// Rightmost-first variant, used to verify that the rewriting is
/// confluent.
pub fn normal_order_rightmost(word: &[Mode], coeff: Scalar) -> Element {
    normal_order_with(word, coeff, ExchangeStrategy::RightmostFirst)
}

pub fn normal_order_with(word: &[Mode], coeff: Scalar, strategy: ExchangeStrategy) -> Element {
    // x12 modes are central: peel them off right away and only rewrite the
    // x1 subword.
    let mut a1: Vec<QuarterInt> = Vec::new();
    let mut a12: Vec<QuarterInt> = Vec::new();
    for m in word {
        match m.root {
            Root::A1 => a1.push(m.degree),
            Root::A12 => a12.push(m.degree),
        }
    }
    let mut out = Element::zero();
    let mut stack: Vec<(Vec<QuarterInt>, Vec<QuarterInt>, Scalar)> = vec![(a1, a12, coeff)];
    while let Some((a1, a12, c)) = stack.pop() {
        if c.is_zero() {
            continue;
        }
        let inversion = {
            let mut found = None;
            let idxs: Vec<usize> = (0..a1.len().saturating_sub(1)).collect();
            let iter: Box<dyn Iterator<Item = usize>> = match strategy {
                ExchangeStrategy::LeftmostFirst => Box::new(idxs.into_iter()),
                ExchangeStrategy::RightmostFirst => Box::new(idxs.into_iter().rev()),
            };
            for i in iter {
                if a1[i] > a1[i + 1] {
                    found = Some(i);
                    break;
                }
            }
            found
        };
        match inversion {
            None => out.add_term(NormalMonomial::new(a1, a12), c),
            Some(i) => {
                // x1(a) x1(b) = x1(b) x1(a) + c(a) x12(a+b)
                let (da, db) = (a1[i], a1[i + 1]);
                let mut swapped = a1.clone();
                swapped.swap(i, i + 1);
                if (da + db).is_integer() {
                    let mut shorter = a1.clone();
                    shorter.drain(i..=i + 1);
                    let mut longer_a12 = a12.clone();
                    longer_a12.push(da + db);
                    stack.push((shorter, longer_a12, &c * &crate::mode::bracket_constant(da)));
                }
                stack.push((swapped, a12, c));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x1(q: i64) -> Mode {
        Mode::x1q(q)
    }
    fn x12(n: i64) -> Mode {
        Mode::x12n(n)
    }
    fn q(n: i64) -> QuarterInt {
        QuarterInt::from_quarters(n)
    }

    #[test]
    fn bracket_is_antisymmetric_on_examples() {
        let b = bracket(x1(-3), x1(-1));
        let expected = Element::from_term(
            NormalMonomial::from_mode(x12(-1)),
            Scalar::from_ratio(-1, 2),
        );
        assert_eq!(b, expected);
        assert_eq!(bracket(x1(-1), x1(-3)), expected.neg());
        assert!(bracket(x1(-1), x1(-1)).is_zero());
        assert!(bracket(x12(-1), x1(-1)).is_zero());
    }

    #[test]
    fn normal_order_single_exchange() {
        // x1(-1/4) x1(-3/4) = x1(-3/4) x1(-1/4) + (1/2) x12(-1)
        let e = normal_order(&[x1(-1), x1(-3)], Scalar::one());
        let sorted = NormalMonomial::new(vec![q(-3), q(-1)], vec![]);
        let central = NormalMonomial::new(vec![], vec![QuarterInt::from_int(-1)]);
        assert_eq!(e.coefficient(&sorted), Scalar::one());
        assert_eq!(e.coefficient(&central), Scalar::from_ratio(1, 2));
        assert_eq!(e.num_terms(), 2);
    }

    #[test]
    fn normal_order_central_resort() {
        let e = normal_order(&[x12(-2), x1(-1)], Scalar::one());
        assert_eq!(
            e,
            Element::from_monomial(NormalMonomial::new(vec![q(-1)], vec![QuarterInt::from_int(-2)]))
        );
    }

    #[test]
    fn normal_order_positive_degrees() {
        // x1(3/4) x1(-7/4) = x1(-7/4) x1(3/4) + (1/2) x12(-1)
        let e = normal_order(&[x1(3), x1(-7)], Scalar::one());
        let sorted = NormalMonomial::new(vec![q(-7), q(3)], vec![]);
        let central = NormalMonomial::new(vec![], vec![QuarterInt::from_int(-1)]);
        assert_eq!(e.coefficient(&sorted), Scalar::one());
        assert_eq!(e.coefficient(&central), Scalar::from_ratio(1, 2));
    }

    #[test]
    fn strategies_agree_on_a_longer_word() {
        let word = [x1(-1), x1(-3), x1(-1), x12(-1), x1(-7), x1(3)];
        let l = normal_order(&word, Scalar::one());
        let r = normal_order_rightmost(&word, Scalar::one());
        assert_eq!(l, r);
        // every term shares the word's bidegree
        let charge: i64 = word.iter().map(|m| m.charge()).sum();
        let weight: QuarterInt = word.iter().map(|m| m.weight()).sum();
        for (m, _) in l.terms() {
            assert_eq!(m.bidegree(), Bidegree::new(charge, weight));
        }
    }

    #[test]
    fn product_of_elements() {
        let a = Element::from_mode(x1(-1));
        let b = Element::from_mode(x1(-3));
        let ab = a.mul(&b);
        let ba = b.mul(&a);
        // ab - ba = [x1(-1/4), x1(-3/4)] = (1/2) x12(-1)
        assert_eq!(ab.sub(&ba), bracket(x1(-1), x1(-3)));
        assert_eq!(a.pow(2), Element::from_monomial(NormalMonomial::new(vec![q(-1), q(-1)], vec![])));
    }

    #[test]
    fn split_and_drop() {
        let mixed = Element::from_monomial(NormalMonomial::new(vec![q(-3), q(-1)], vec![]))
            .add(&Element::from_monomial(NormalMonomial::new(vec![q(-1), q(-1)], vec![])));
        assert!(mixed.bidegree().is_none());
        let parts = mixed.split_bidegrees();
        assert_eq!(parts.len(), 2);
        let plus = Element::from_monomial(NormalMonomial::new(vec![q(-3), q(1)], vec![]));
        assert!(plus.drop_plus_class().is_zero());
    }
}
