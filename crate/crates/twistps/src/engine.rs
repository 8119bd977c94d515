//! Exact linear algebra over graded pieces: monomial enumeration, ideal
//! spans per bidegree, quotient dimensions and a persistent dimension
//! cache.
//!
//! Everything is graded by [`Bidegree`]. Inside one bidegree the free
//! module on all-negative canonical monomials is the ambient space;
//! monomials containing a nonnegative mode are ideal members themselves
//! and form their own complement, so they are projected away on both sides
//! of every rank computation.

use std::collections::HashMap;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::sync::{Arc, RwLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::element::Element;
use crate::error::Error;
use crate::linalg::{rank_fraction_free, Rref};
use crate::monomial::{Bidegree, NormalMonomial};
use crate::quarter::QuarterInt;
use crate::relations::{all_generators, IdealSpec};
use crate::scalar::Scalar;
use crate::table::DimTable;

/// Truncation box: charges up to `max_charge`, weights up to
/// `max_weight4 / 4`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TruncationBox {
    pub max_charge: i64,
    pub max_weight4: i64,
}

impl TruncationBox {
    pub fn new(max_charge: i64, max_weight4: i64) -> Self {
        TruncationBox { max_charge, max_weight4 }
    }

    /// Default box for level `k`: charge up to `2(k+2)`, `4·weight` up to 20.
    pub fn default_for_level(k: u32) -> Self {
        TruncationBox { max_charge: 2 * (k as i64 + 2), max_weight4: 20 }
    }

    pub fn contains(&self, b: Bidegree) -> bool {
        b.charge >= 0
            && !b.weight.is_negative()
            && b.charge <= self.max_charge
            && b.weight4() <= self.max_weight4
    }

    pub fn check(&self, b: Bidegree) -> Result<(), Error> {
        if self.contains(b) {
            Ok(())
        } else {
            Err(Error::TruncationExceeded {
                charge: b.charge,
                weight4: b.weight4(),
                max_charge: self.max_charge,
                max_weight4: self.max_weight4,
            })
        }
    }

    /// All bidegrees of the box, charge-major.
    pub fn bidegrees(&self) -> Vec<Bidegree> {
        let mut out = Vec::new();
        for c in 0..=self.max_charge {
            for w4 in 0..=self.max_weight4 {
                out.push(Bidegree::new(c, QuarterInt::from_quarters(w4)));
            }
        }
        out
    }
}

/// Ascending degree lists for one block: `count` degrees congruent to
/// `residue` mod `step` (quarter units), each in `[floor4, ub]`, summing
/// to `sum4`.
fn degree_lists(
    count: usize,
    sum4: i64,
    ub: i64,
    step: i64,
    residue: i64,
    floor4: i64,
) -> Vec<Vec<QuarterInt>> {
    fn rec(
        count: usize,
        sum4: i64,
        min_deg: i64,
        ub: i64,
        step: i64,
        residue: i64,
        out: &mut Vec<Vec<QuarterInt>>,
        cur: &mut Vec<QuarterInt>,
    ) {
        if count == 0 {
            if sum4 == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let n = count as i64;
        // the remaining degrees are >= d and <= ub, bounding d both ways
        let tight = sum4 - (n - 1) * ub;
        let mut d = min_deg.max(tight);
        d += (residue - d).rem_euclid(step);
        while d <= ub && n * d <= sum4 {
            cur.push(QuarterInt::from_quarters(d));
            rec(count - 1, sum4 - d, d, ub, step, residue, out, cur);
            cur.pop();
            d += step;
        }
    }
    if count == 0 {
        return if sum4 == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(count, sum4, floor4, ub, step, residue, &mut out, &mut Vec::with_capacity(count));
    out
}

/// All canonical monomials of bidegree `b`. With `negative_only` every
/// degree is negative (the PBW spanning set of the all-negative part);
/// otherwise degrees range over the window `[-window4, window4]`, which is
/// only used for diagnostics since the unwindowed set is infinite.
pub fn enumerate_monomials(b: Bidegree, negative_only: bool, window4: i64) -> Vec<NormalMonomial> {
    let mut out = Vec::new();
    if b.charge < 0 {
        return out;
    }
    if b.charge == 0 {
        if b.weight4() == 0 {
            out.push(NormalMonomial::identity());
        }
        return out;
    }
    let total = -b.weight4();
    let (a1_ub, a12_ub, floor4) = if negative_only {
        if total >= 0 {
            return out; // positive charge needs positive weight
        }
        // a single degree cannot be more negative than the whole sum
        (-1i64, -4i64, total)
    } else {
        (window4 - (window4 - 1).rem_euclid(2), window4 - window4.rem_euclid(4), -window4)
    };
    for d in 0..=(b.charge / 2) {
        let a1_count = (b.charge - 2 * d) as usize;
        let a12_count = d as usize;
        // the x12 block sum runs over multiples of 4
        let hi = if a12_count == 0 {
            0
        } else {
            (a12_count as i64 * a12_ub).min(total - a1_count as i64 * floor4)
        };
        let lo = if a12_count == 0 {
            0
        } else {
            (a12_count as i64 * floor4).max(total - a1_count as i64 * a1_ub)
        };
        let mut s12 = hi - hi.rem_euclid(4);
        loop {
            if a12_count > 0 && s12 < lo {
                break;
            }
            let s1 = total - s12;
            let a12_lists = degree_lists(a12_count, s12, a12_ub, 4, 0, floor4);
            if !a12_lists.is_empty() {
                let a1_lists = degree_lists(a1_count, s1, a1_ub, 2, 1, floor4);
                for a1 in &a1_lists {
                    for a12 in &a12_lists {
                        out.push(NormalMonomial::new(a1.clone(), a12.clone()));
                    }
                }
            }
            if a12_count == 0 {
                break;
            }
            s12 -= 4;
        }
    }
    out.sort_unstable();
    out
}

pub fn enumerate_negative_monomials(b: Bidegree) -> Vec<NormalMonomial> {
    enumerate_monomials(b, true, 0)
}

/// Exact rank of a family of bihomogeneous elements of bidegree `b`, by
/// fraction-free elimination on their coefficient matrix.
pub fn rank(elements: &[Element], b: Bidegree) -> Result<usize, Error> {
    let mut columns: Vec<NormalMonomial> = Vec::new();
    for e in elements {
        for (m, _) in e.terms() {
            if m.bidegree() != b {
                return Err(Error::BidegreeMismatch {
                    expected: b.to_string(),
                    got: m.bidegree().to_string(),
                });
            }
            columns.push(m.clone());
        }
    }
    columns.sort_unstable();
    columns.dedup();
    let index: HashMap<&NormalMonomial, usize> =
        columns.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let rows: Vec<Vec<Scalar>> = elements
        .iter()
        .map(|e| {
            let mut row = vec![Scalar::zero(); columns.len()];
            for (m, c) in e.terms() {
                row[index[m]] = c.clone();
            }
            row
        })
        .collect();
    Ok(rank_fraction_free(&rows))
}

/// Echelonized span of one graded piece of an ideal, in the coordinates of
/// the all-negative monomials of that bidegree.
pub struct Reducer {
    bidegree: Bidegree,
    columns: Vec<NormalMonomial>,
    index: HashMap<NormalMonomial, usize>,
    rref: Rref,
}

impl Reducer {
    fn new(bidegree: Bidegree, columns: Vec<NormalMonomial>, rows: Vec<Vec<Scalar>>) -> Self {
        let index = columns.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let rref = Rref::new(columns.len(), rows);
        Reducer { bidegree, columns, index, rref }
    }

    pub fn bidegree(&self) -> Bidegree {
        self.bidegree
    }

    pub fn columns(&self) -> &[NormalMonomial] {
        &self.columns
    }

    pub fn rank(&self) -> usize {
        self.rref.rank()
    }

    pub fn dim(&self) -> usize {
        self.columns.len() - self.rref.rank()
    }

    /// The quotient basis: non-pivot all-negative monomials, in
    /// lexicographic elimination order.
    pub fn basis(&self) -> Vec<NormalMonomial> {
        self.rref.free_columns().into_iter().map(|c| self.columns[c].clone()).collect()
    }

    /// Project a bihomogeneous element onto the all-negative coordinates,
    /// dropping plus-class monomials (they are ideal members).
    pub fn project(&self, e: &Element) -> Result<Vec<Scalar>, Error> {
        let mut out = vec![Scalar::zero(); self.columns.len()];
        for (m, c) in e.terms() {
            if m.bidegree() != self.bidegree {
                return Err(Error::BidegreeMismatch {
                    expected: self.bidegree.to_string(),
                    got: m.bidegree().to_string(),
                });
            }
            if m.is_plus_class() {
                continue;
            }
            let idx = *self.index.get(m).expect("all-negative monomial of the right bidegree");
            out[idx] = c.clone();
        }
        Ok(out)
    }

    pub fn is_member(&self, e: &Element) -> Result<bool, Error> {
        let v = self.project(e)?;
        Ok(self.rref.contains(&v))
    }

    /// Coordinates of the class of `e` on the quotient basis.
    pub fn coordinates(&self, e: &Element) -> Result<Vec<Scalar>, Error> {
        let mut v = self.project(e)?;
        self.rref.reduce(&mut v);
        Ok(self.rref.free_columns().into_iter().map(|c| v[c].clone()).collect())
    }
}

#[derive(Serialize, Deserialize, Debug)]
struct CacheEntry {
    dim: usize,
    rank: usize,
    monomials: usize,
}

/// The graded quotient engine for one ideal.
pub struct Engine {
    spec: IdealSpec,
    box_: TruncationBox,
    cache_dir: Option<PathBuf>,
    generators: Vec<(Bidegree, Element)>,
    reducers: RwLock<HashMap<Bidegree, Arc<Reducer>>>,
}

impl Engine {
    pub fn new(spec: IdealSpec, box_: TruncationBox, cache_dir: Option<PathBuf>) -> Self {
        let family = all_generators(&spec, box_.max_weight4);
        let generators = crate::relations::ad_closure(family, box_.max_charge);
        Engine { spec, box_, cache_dir, generators, reducers: RwLock::new(HashMap::new()) }
    }

    pub fn spec(&self) -> &IdealSpec {
        &self.spec
    }

    pub fn truncation(&self) -> TruncationBox {
        self.box_
    }

    pub fn generators(&self) -> &[(Bidegree, Element)] {
        &self.generators
    }

    /// The spanning elements of the graded piece `(I)_b` modulo the
    /// plus-class part: every `u·g` for a generator `g` and an all-negative
    /// monomial `u` of the complementary bidegree, normal-ordered, in a
    /// deterministic order. Plus-class monomials of the bidegree complete
    /// the span but are left implicit.
    pub fn ideal_span_in_bidegree(&self, b: Bidegree) -> Result<Vec<Element>, Error> {
        self.box_.check(b)?;
        let mut rows = Vec::new();
        for (bg, g) in &self.generators {
            let diff = b - *bg;
            if diff.charge < 0 || diff.weight.is_negative() {
                continue;
            }
            for u in enumerate_negative_monomials(diff) {
                let prod = Element::from_monomial(u).mul(g);
                if !prod.is_zero() {
                    rows.push(prod);
                }
            }
        }
        Ok(rows)
    }

    pub fn reducer(&self, b: Bidegree) -> Result<Arc<Reducer>, Error> {
        if let Some(r) = self.reducers.read().unwrap().get(&b) {
            return Ok(r.clone());
        }
        let columns = enumerate_negative_monomials(b);
        let rows = self.ideal_span_in_bidegree(b)?;
        let index: HashMap<&NormalMonomial, usize> =
            columns.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let dense: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|e| {
                let mut row = vec![Scalar::zero(); columns.len()];
                for (m, c) in e.terms() {
                    if m.is_all_negative() {
                        row[index[m]] = c.clone();
                    }
                }
                row
            })
            .collect();
        let reducer = Arc::new(Reducer::new(b, columns, dense));
        self.write_cache(b, &reducer)?;
        self.reducers.write().unwrap().insert(b, reducer.clone());
        Ok(reducer)
    }

    fn cache_path(&self, b: Bidegree) -> Option<PathBuf> {
        self.cache_dir
            .as_ref()
            .map(|d| d.join(self.spec.key()).join(format!("c{}-w{}.json", b.charge, b.weight4())))
    }

    fn read_cache(&self, b: Bidegree) -> Result<Option<CacheEntry>, Error> {
        let Some(path) = self.cache_path(b) else { return Ok(None) };
        if !path.exists() {
            return Ok(None);
        }
        let key = path.display().to_string();
        let text = fs::read_to_string(&path)?;
        let entry: CacheEntry = serde_json::from_str(&text)
            .map_err(|e| Error::CacheCorruption { key: key.clone(), reason: e.to_string() })?;
        if entry.dim + entry.rank != entry.monomials {
            return Err(Error::CacheCorruption {
                key,
                reason: format!(
                    "inconsistent entry: dim {} + rank {} != monomials {}",
                    entry.dim, entry.rank, entry.monomials
                ),
            });
        }
        Ok(Some(entry))
    }

    fn write_cache(&self, b: Bidegree, reducer: &Reducer) -> Result<(), Error> {
        let Some(path) = self.cache_path(b) else { return Ok(()) };
        let parent = path.parent().expect("cache path has a parent");
        fs::create_dir_all(parent)?;
        let entry = CacheEntry {
            dim: reducer.dim(),
            rank: reducer.rank(),
            monomials: reducer.columns().len(),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(parent)?;
        tmp.write_all(serde_json::to_string(&entry).expect("serializable").as_bytes())?;
        tmp.persist(&path).map_err(|e| Error::Io(e.error))?;
        Ok(())
    }

    /// Graded dimension of the quotient by the ideal at `b`; resumable
    /// from the cache.
    pub fn quotient_dim(&self, b: Bidegree) -> Result<usize, Error> {
        self.box_.check(b)?;
        if let Some(r) = self.reducers.read().unwrap().get(&b) {
            return Ok(r.dim());
        }
        if let Some(entry) = self.read_cache(b)? {
            return Ok(entry.dim);
        }
        Ok(self.reducer(b)?.dim())
    }

    /// Quotient dimensions over the whole box. Bidegrees are independent,
    /// so they are computed in parallel; assembly order is fixed.
    pub fn dim_table(&self) -> Result<DimTable, Error> {
        let bidegrees = self.box_.bidegrees();
        let dims: Result<Vec<(Bidegree, usize)>, Error> = bidegrees
            .par_iter()
            .map(|&b| self.quotient_dim(b).map(|d| (b, d)))
            .collect();
        let mut entries: Vec<[i64; 3]> =
            dims?.into_iter().map(|(b, d)| [b.charge, b.weight4(), d as i64]).collect();
        entries.sort_unstable();
        Ok(DimTable {
            side: "presentation".into(),
            k: self.spec.k,
            i: self.spec.i,
            j: 0,
            convention: self.spec.convention.as_str().into(),
            extra_form: self.spec.extra_form.as_str().into(),
            box_: [self.box_.max_charge, self.box_.max_weight4],
            entries,
        })
    }

    /// Membership test: every bihomogeneous component must lie in the span
    /// of its graded piece.
    pub fn member_of_ideal(&self, e: &Element) -> Result<bool, Error> {
        for (b, component) in e.split_bidegrees() {
            // a component that is entirely plus-class is always a member
            let trimmed = component.drop_plus_class();
            if trimmed.is_zero() {
                continue;
            }
            if !self.reducer(b)?.is_member(&trimmed)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
