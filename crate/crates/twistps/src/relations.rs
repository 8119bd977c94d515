//! Truncated relation families and the graded ideals they generate.
//!
//! For level `k` there are mixed families indexed by `r = 0..=k` (words of
//! `k+1-r` x1 modes and `r` x12 modes, with half-integer shift tuples
//! summing to `(k-r)(k-r+1)/4`) and a pure x12 family (words of `k+1` x12
//! modes). A family member at weight `t` is the sum over all admissible
//! index tuples of the corresponding word, normal-ordered, with plus-class
//! monomials discarded.
//!
//! Two truncation conventions are implemented. `MNeg` requires the mode
//! seeds to be negative, `ArgNeg` requires the shifted operator arguments
//! to be negative. They genuinely differ (see the tests for a frozen
//! example) and are adjudicated empirically against the module side.

use serde::{Deserialize, Serialize};

use crate::element::{normal_order, Element};
use crate::error::Error;
use crate::mode::Mode;
use crate::monomial::Bidegree;
use crate::quarter::QuarterInt;
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    MNeg,
    ArgNeg,
}

impl Convention {
    pub fn as_str(self) -> &'static str {
        match self {
            Convention::MNeg => "m-neg",
            Convention::ArgNeg => "arg-neg",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtraForm {
    SumFamily,
    PowerForm,
}

impl ExtraForm {
    pub fn as_str(self) -> &'static str {
        match self {
            ExtraForm::SumFamily => "sum-family",
            ExtraForm::PowerForm => "power-form",
        }
    }
}

/// Identifies one ideal `I_{k,i}` together with the truncation reading and
/// the shape of its extra generator family.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct IdealSpec {
    pub k: u32,
    pub i: u32,
    pub convention: Convention,
    pub extra_form: ExtraForm,
}

impl IdealSpec {
    pub fn new(k: u32, i: u32, convention: Convention, extra_form: ExtraForm) -> Result<Self, Error> {
        if k == 0 {
            return Err(Error::InvalidConfig("level k must be positive".into()));
        }
        if i > k {
            return Err(Error::InvalidConfig(format!("i = {i} exceeds k = {k}")));
        }
        Ok(IdealSpec { k, i, convention, extra_form })
    }

    /// Stable string used in cache paths and report headers.
    pub fn key(&self) -> String {
        format!(
            "k{}-i{}-{}-{}",
            self.k,
            self.i,
            self.convention.as_str(),
            self.extra_form.as_str()
        )
    }
}

impl std::fmt::Display for IdealSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.key())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum RelationFamily {
    /// Mixed family with `r` x12 modes, `0 <= r <= k`. Generator charge is
    /// `k + 1 + r`.
    MixedR(u32),
    /// Pure x12 family of charge `2(k+1)`, integer weights `t >= k+1`.
    PureA12,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct RelationId {
    pub family: RelationFamily,
    pub t: QuarterInt,
}

impl RelationId {
    /// Enforce the weight bounds of the defining sums.
    pub fn validate(&self, k: u32) -> Result<(), Error> {
        match self.family {
            RelationFamily::MixedR(r) => {
                if r > k {
                    return Err(Error::InvalidConfig(format!("relation index r = {r} exceeds k = {k}")));
                }
                let min4 = (k + 1 + 3 * r) as i64;
                if self.t.quarters() < min4 {
                    return Err(Error::InvalidConfig(format!(
                        "weight t = {} below the bound {}/4 for the mixed family r = {r}",
                        self.t, min4
                    )));
                }
            }
            RelationFamily::PureA12 => {
                if !self.t.is_integer() || self.t.quarters() < 4 * (k as i64 + 1) {
                    return Err(Error::InvalidConfig(format!(
                        "pure x12 family needs integer t >= {}, got {}",
                        k + 1,
                        self.t
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn charge(&self, k: u32) -> i64 {
        match self.family {
            RelationFamily::MixedR(r) => (k + 1 + r) as i64,
            RelationFamily::PureA12 => 2 * (k as i64 + 1),
        }
    }
}

/// Shift tuples `(i_1, ..., i_n)` in quarter units, each from
/// `{0, 1/2, 1, ..., cap4/4}` in half-integer steps, summing to `total4`.
fn shift_tuples(n: usize, cap4: i64, total4: i64) -> Vec<Vec<i64>> {
    fn rec(slots: usize, cap4: i64, remaining: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if slots == 0 {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let max_rest = cap4 * (slots as i64 - 1);
        let mut v = 0;
        while v <= cap4 {
            let rest = remaining - v;
            if rest >= 0 && rest <= max_rest {
                cur.push(v);
                rec(slots - 1, cap4, rest, cur, out);
                cur.pop();
            }
            v += 2; // half-integer steps
        }
    }
    let mut out = Vec::new();
    rec(n, cap4, total4, &mut Vec::with_capacity(n), &mut out);
    out
}

/// One seed slot: values congruent to `residue` mod `step`, at most `ub`.
#[derive(Clone, Copy)]
struct Slot {
    ub: i64,
    step: i64,
    residue: i64,
}

/// Ordered seed tuples in quarter units summing to `total4`. Entries are
/// unbounded below; the fixed sum plus the per-slot upper bounds keep the
/// enumeration finite.
fn seed_tuples(slots: &[Slot], total4: i64) -> Vec<Vec<i64>> {
    let n = slots.len();
    if n == 0 {
        return if total4 == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut suffix_ub = vec![0i64; n + 1];
    for i in (0..n).rev() {
        suffix_ub[i] = suffix_ub[i + 1] + slots[i].ub;
    }
    fn rec(
        idx: usize,
        slots: &[Slot],
        suffix_ub: &[i64],
        remaining: i64,
        cur: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if idx == slots.len() {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let s = slots[idx];
        let lower = remaining - suffix_ub[idx + 1];
        let mut v = s.ub - (s.ub - s.residue).rem_euclid(s.step);
        while v >= lower {
            cur.push(v);
            rec(idx + 1, slots, suffix_ub, remaining - v, cur, out);
            cur.pop();
            v -= s.step;
        }
    }
    let mut out = Vec::new();
    rec(0, slots, &suffix_ub, total4, &mut Vec::with_capacity(n), &mut out);
    out
}

/// The bihomogeneous components of one truncated relation-family member:
/// the normal-ordered tuple sum with plus-class monomials removed. The
/// construction is bihomogeneous of charge `id.charge(k)` and weight `t`,
/// so the list has at most one entry; an empty index set yields an empty
/// list.
pub fn r0_generator(k: u32, id: &RelationId, convention: Convention) -> Result<Vec<Element>, Error> {
    id.validate(k)?;
    let t4 = id.t.quarters();
    let mut sum = Element::zero();
    match id.family {
        RelationFamily::PureA12 => {
            let slots = vec![Slot { ub: -4, step: 4, residue: 0 }; (k + 1) as usize];
            for tuple in seed_tuples(&slots, -t4) {
                let word: Vec<Mode> =
                    tuple.iter().map(|&m4| Mode::x12(QuarterInt::from_quarters(m4))).collect();
                sum = sum.add(&normal_order(&word, Scalar::one()));
            }
        }
        RelationFamily::MixedR(r) => {
            let n1 = (k + 1 - r) as usize;
            let n2 = r as usize;
            let kr = (k - r) as i64;
            let shift_total4 = kr * (kr + 1);
            let seed_total4 = -t4 - shift_total4;
            for shift in shift_tuples(n1, 2 * kr, shift_total4) {
                let mut slots: Vec<Slot> = shift
                    .iter()
                    .map(|&i4| Slot {
                        ub: match convention {
                            Convention::MNeg => -1,
                            Convention::ArgNeg => -1 - i4,
                        },
                        step: 2,
                        residue: 1,
                    })
                    .collect();
                slots.extend(std::iter::repeat_n(Slot { ub: -4, step: 4, residue: 0 }, n2));
                for tuple in seed_tuples(&slots, seed_total4) {
                    let mut word: Vec<Mode> = tuple[..n1]
                        .iter()
                        .zip(&shift)
                        .map(|(&m4, &i4)| Mode::x1(QuarterInt::from_quarters(m4 + i4)))
                        .collect();
                    word.extend(tuple[n1..].iter().map(|&m4| Mode::x12(QuarterInt::from_quarters(m4))));
                    sum = sum.add(&normal_order(&word, Scalar::one()));
                }
            }
        }
    }
    let truncated = sum.drop_plus_class();
    if truncated.is_zero() {
        return Ok(Vec::new());
    }
    debug_assert_eq!(
        truncated.bidegree(),
        Some(Bidegree::new(id.charge(k), id.t)),
        "family members are bihomogeneous by construction"
    );
    Ok(truncated.split_bidegrees().into_values().collect())
}

/// The extra generators of `I_{k,i}` beyond `I_{k,0}`: for `SumFamily`
/// the monomials `x1(-1/4)^l x12(-1)^{k+1-i-l}` for `l = 0..=k+1-i`, for
/// `PowerForm` the single monomial `x1(-1/4)^{k+1-i}`. `i = 0` has none.
pub fn extra_generators(spec: &IdealSpec) -> Vec<Element> {
    if spec.i == 0 {
        return Vec::new();
    }
    let total = (spec.k + 1 - spec.i) as usize;
    let x1deg = QuarterInt::from_quarters(-1);
    let x12deg = QuarterInt::from_int(-1);
    match spec.extra_form {
        ExtraForm::PowerForm => {
            vec![Element::from_monomial(crate::monomial::NormalMonomial::new(
                vec![x1deg; total],
                Vec::new(),
            ))]
        }
        ExtraForm::SumFamily => (0..=total)
            .map(|l| {
                Element::from_monomial(crate::monomial::NormalMonomial::new(
                    vec![x1deg; l],
                    vec![x12deg; total - l],
                ))
            })
            .collect(),
    }
}

/// JSON export of one relation-family member: family tag, weight as a
/// quarter count, and the bihomogeneous components with their term lists
/// `[monomial, re, im]`.
pub fn r0_generator_json(
    k: u32,
    id: &RelationId,
    convention: Convention,
) -> Result<serde_json::Value, Error> {
    let (family, r) = match id.family {
        RelationFamily::MixedR(r) => ("mixed", Some(r)),
        RelationFamily::PureA12 => ("pure-x12", None),
    };
    let components: Vec<serde_json::Value> = r0_generator(k, id, convention)?
        .iter()
        .map(|g| {
            let b = g.bidegree().expect("bihomogeneous");
            let terms: Vec<serde_json::Value> = g
                .terms()
                .map(|(m, c)| {
                    serde_json::json!([m.to_string(), c.re_string(), c.im_string()])
                })
                .collect();
            serde_json::json!({
                "bidegree": [b.charge, b.weight4()],
                "terms": terms,
            })
        })
        .collect();
    Ok(serde_json::json!({
        "family": family,
        "r": r,
        "t": id.t.quarters(),
        "convention": convention.as_str(),
        "components": components,
    }))
}

/// The derivation `ad(x1(a))` applied to an element: every x1 mode whose
/// degree sums with `a` to an integer is replaced, one occurrence at a
/// time, by the central correction `c(a)·x12(a + m)`.
pub fn ad_x1(e: &Element, a: QuarterInt) -> Element {
    debug_assert!(a.is_x1_degree());
    let c_a = crate::mode::bracket_constant(a);
    let mut out = Element::zero();
    for (m, coeff) in e.terms() {
        let degs = m.a1_degrees();
        let mut idx = 0;
        while idx < degs.len() {
            // count equal degrees once, with multiplicity
            let d = degs[idx];
            let mult = degs[idx..].iter().take_while(|&&x| x == d).count();
            idx += mult;
            if !(d + a).is_integer() {
                continue;
            }
            let mut a1: Vec<QuarterInt> = degs.to_vec();
            let pos = a1.iter().position(|&x| x == d).unwrap();
            a1.remove(pos);
            let mut a12 = m.a12_degrees().to_vec();
            a12.push(d + a);
            let scale = &Scalar::from_int(mult as i64) * &c_a;
            out.add_term(
                crate::monomial::NormalMonomial::new(a1, a12),
                coeff * &scale,
            );
        }
    }
    out
}

/// Close a generator list under the derivations by nonnegative x1 modes.
/// Left multiplication by a plus-class monomial reduces, modulo the
/// plus-class span, to such derivation chains, so the closure makes the
/// per-bidegree span of `U·g` exact with all-negative left factors only.
/// Charge grows by one per derivation and weight drops, so the closure is
/// finite within a truncation box.
pub fn ad_closure(
    gens: Vec<(Bidegree, Element)>,
    max_charge: i64,
) -> Vec<(Bidegree, Element)> {
    let mut out = Vec::new();
    let mut queue: std::collections::VecDeque<(Bidegree, Element)> = gens.into_iter().collect();
    while let Some((b, g)) = queue.pop_front() {
        out.push((b, g.clone()));
        if b.charge + 1 > max_charge {
            continue;
        }
        // a ranges over nonnegative x1 degrees; the image weight t - a
        // must stay nonnegative for the result to matter
        let mut a4 = 1;
        while a4 <= b.weight4() {
            let img = ad_x1(&g, QuarterInt::from_quarters(a4)).drop_plus_class();
            if !img.is_zero() {
                let nb = Bidegree::new(b.charge + 1, b.weight - QuarterInt::from_quarters(a4));
                debug_assert_eq!(img.bidegree(), Some(nb));
                queue.push_back((nb, img));
            }
            a4 += 2;
        }
    }
    out
}

/// All generators of the ideal with weight at most `max_weight4` quarters,
/// in a fixed deterministic order: mixed families by `(r, t)`, then the
/// pure x12 family by `t`, then the extra generators.
pub fn all_generators(spec: &IdealSpec, max_weight4: i64) -> Vec<(Bidegree, Element)> {
    let mut out = Vec::new();
    let k = spec.k;
    for r in 0..=k {
        let min4 = (k + 1 + 3 * r) as i64;
        for t4 in min4..=max_weight4 {
            let id = RelationId { family: RelationFamily::MixedR(r), t: QuarterInt::from_quarters(t4) };
            for g in r0_generator(k, &id, spec.convention).expect("validated in-range id") {
                let b = g.bidegree().expect("bihomogeneous");
                out.push((b, g));
            }
        }
    }
    let mut t4 = 4 * (k as i64 + 1);
    while t4 <= max_weight4 {
        let id = RelationId { family: RelationFamily::PureA12, t: QuarterInt::from_quarters(t4) };
        for g in r0_generator(k, &id, spec.convention).expect("validated in-range id") {
            let b = g.bidegree().expect("bihomogeneous");
            out.push((b, g));
        }
        t4 += 4;
    }
    for g in extra_generators(spec) {
        let b = g.bidegree().expect("monomial");
        if b.weight4() <= max_weight4 {
            out.push((b, g));
        }
    }
    out
}
