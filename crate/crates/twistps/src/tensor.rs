//! Tensor products of level-one factors, the diagonal action, and
//! breadth-first spanning of the cyclic subspaces.
//!
//! A tensor vector lives in one bidegree of the product grading,
//! normalized so the joint cyclic vector sits at `(0, 0)` (factor offsets
//! are subtracted). The spanned subspace is generated by the cyclic vector
//! under negative modes only: canonical ordering pushes nonnegative modes
//! to the right where they annihilate every cyclic vector used here.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::path::PathBuf;
use std::sync::Arc;

use crate::element::Element;
use crate::engine::TruncationBox;
use crate::error::Error;
use crate::factor::{Factor, FactorKind};
use crate::linalg::Rref;
use crate::monomial::Bidegree;
use crate::quarter::QuarterInt;
use crate::relations::{Convention, ExtraForm};
use crate::scalar::Scalar;
use crate::table::DimTable;

/// One composition of a total bidegree into per-factor native bidegrees.
#[derive(Clone, Debug)]
struct Block {
    natives: Vec<Bidegree>,
    dims: Vec<usize>,
    /// flat offset of this block inside the graded piece
    start: usize,
}

impl Block {
    fn len(&self) -> usize {
        self.dims.iter().product()
    }

    /// Row-major strides over the slots.
    fn strides(&self) -> Vec<usize> {
        let mut s = vec![1usize; self.dims.len()];
        for j in (0..self.dims.len().saturating_sub(1)).rev() {
            s[j] = s[j + 1] * self.dims[j + 1];
        }
        s
    }
}

pub struct Layout {
    blocks: Vec<Block>,
    /// lookup from the native composition to the block index
    index: HashMap<Vec<Bidegree>, usize>,
    total: usize,
}

impl Layout {
    pub fn dim(&self) -> usize {
        self.total
    }
}

pub struct TensorSpace {
    factors: Vec<Arc<Factor>>,
    box_: TruncationBox,
    layouts: std::sync::RwLock<HashMap<Bidegree, Arc<Layout>>>,
}

impl TensorSpace {
    pub fn new(factors: Vec<Arc<Factor>>, box_: TruncationBox) -> Self {
        TensorSpace { factors, box_, layouts: std::sync::RwLock::new(HashMap::new()) }
    }

    pub fn truncation(&self) -> TruncationBox {
        self.box_
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    /// Enumerate the compositions of `b` (in the v-normalized grading)
    /// into nonzero factor pieces.
    pub fn layout(&self, b: Bidegree) -> Result<Arc<Layout>, Error> {
        if let Some(l) = self.layouts.read().unwrap().get(&b) {
            return Ok(l.clone());
        }
        let mut compositions: Vec<Vec<Bidegree>> = Vec::new();
        let mut cur: Vec<Bidegree> = Vec::with_capacity(self.factors.len());
        self.compose(b, 0, &mut cur, &mut compositions)?;
        compositions.sort_unstable_by(|a, b| {
            a.iter()
                .map(|x| (x.charge, x.weight4()))
                .collect::<Vec<_>>()
                .cmp(&b.iter().map(|x| (x.charge, x.weight4())).collect::<Vec<_>>())
        });
        let mut blocks = Vec::new();
        let mut index = HashMap::new();
        let mut start = 0usize;
        for natives in compositions {
            let mut dims = Vec::with_capacity(natives.len());
            for (f, &nb) in self.factors.iter().zip(&natives) {
                dims.push(f.dim_native(nb)?);
            }
            let block = Block { natives: natives.clone(), dims, start };
            let len = block.len();
            if len == 0 {
                continue;
            }
            index.insert(natives, blocks.len());
            blocks.push(block);
            start += len;
        }
        let layout = Arc::new(Layout { blocks, index, total: start });
        self.layouts.write().unwrap().insert(b, layout.clone());
        Ok(layout)
    }

    fn compose(
        &self,
        remaining: Bidegree,
        slot: usize,
        cur: &mut Vec<Bidegree>,
        out: &mut Vec<Vec<Bidegree>>,
    ) -> Result<(), Error> {
        if slot == self.factors.len() {
            if remaining == Bidegree::VACUUM {
                out.push(cur.clone());
            }
            return Ok(());
        }
        // later slots contribute v-degrees >= -offset (native >= 0), so an
        // upper bound on what this slot may take is remaining + sum of
        // later offsets
        let later_off = self.factors[slot + 1..]
            .iter()
            .fold(Bidegree::VACUUM, |acc, f| acc + f.offset());
        let f = &self.factors[slot];
        let off = f.offset();
        let max_c = remaining.charge + later_off.charge + off.charge;
        let max_w4 = remaining.weight4() + later_off.weight4() + off.weight4();
        for &native in f.support()? {
            if native.charge > max_c || native.weight4() > max_w4 {
                continue;
            }
            cur.push(native);
            self.compose(remaining - (native - off), slot + 1, cur, out)?;
            cur.pop();
        }
        Ok(())
    }

    /// The joint cyclic vector, at v-normalized bidegree `(0, 0)`.
    pub fn cyclic_vector(&self) -> Result<(Bidegree, Vec<Scalar>), Error> {
        let b = Bidegree::VACUUM;
        let layout = self.layout(b)?;
        let natives: Vec<Bidegree> = self.factors.iter().map(|f| f.offset()).collect();
        let block_idx = *layout.index.get(&natives).expect("cyclic composition present");
        let block = &layout.blocks[block_idx];
        let strides = block.strides();
        let mut out = vec![Scalar::zero(); layout.total];
        // tensor product of the factor cyclic coordinates
        let mut stack = vec![(0usize, Scalar::one(), 0usize)]; // (slot, coeff, flat)
        while let Some((slot, coeff, flat)) = stack.pop() {
            if slot == self.factors.len() {
                out[block.start + flat] = coeff;
                continue;
            }
            for (j, c) in self.factors[slot].cyclic_coords().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                stack.push((slot + 1, &coeff * c, flat + j * strides[slot]));
            }
        }
        Ok((b, out))
    }

    /// Diagonal action of one mode: the sum over slots of the factor-local
    /// action.
    pub fn diagonal_act(
        &self,
        mode: crate::mode::Mode,
        b: Bidegree,
        vec: &[Scalar],
    ) -> Result<(Bidegree, Vec<Scalar>), Error> {
        let delta = Bidegree::new(mode.charge(), mode.weight());
        let target = b + delta;
        self.box_.check(target)?;
        let src_layout = self.layout(b)?;
        let tgt_layout = self.layout(target)?;
        let mut out = vec![Scalar::zero(); tgt_layout.total];
        for block in &src_layout.blocks {
            let strides = block.strides();
            for slot in 0..self.factors.len() {
                let native_target = block.natives[slot] + delta;
                let mut natives = block.natives.clone();
                natives[slot] = native_target;
                let Some(&tb_idx) = tgt_layout.index.get(&natives) else { continue };
                let tblock = &tgt_layout.blocks[tb_idx];
                let tstrides = tblock.strides();
                let matrix = self.factors[slot].action(mode, block.natives[slot])?;
                // iterate the source multi-index
                let mut multi = vec![0usize; self.factors.len()];
                'grid: loop {
                    let src_flat: usize =
                        multi.iter().zip(&strides).map(|(i, s)| i * s).sum();
                    let coeff = &vec[block.start + src_flat];
                    if !coeff.is_zero() {
                        let row = &matrix[multi[slot]];
                        let base: usize = multi
                            .iter()
                            .enumerate()
                            .filter(|(j, _)| *j != slot)
                            .map(|(j, i)| i * tstrides[j])
                            .sum();
                        for (t, entry) in row.iter().enumerate() {
                            if !entry.is_zero() {
                                out[tblock.start + base + t * tstrides[slot]] += &(coeff * entry);
                            }
                        }
                    }
                    // odometer increment, rightmost slot fastest
                    let mut j = self.factors.len();
                    while j > 0 {
                        j -= 1;
                        multi[j] += 1;
                        if multi[j] < block.dims[j] {
                            continue 'grid;
                        }
                        multi[j] = 0;
                    }
                    break;
                }
            }
        }
        Ok((target, out))
    }

    /// Apply a bihomogeneous element of the enveloping algebra to the
    /// cyclic vector. Monomials act rightmost mode first.
    pub fn apply_element_to_cyclic(&self, e: &Element) -> Result<Option<(Bidegree, Vec<Scalar>)>, Error> {
        let mut acc: Option<(Bidegree, Vec<Scalar>)> = None;
        for (m, c) in e.terms() {
            let (mut b, mut v) = self.cyclic_vector()?;
            for mode in m.word().into_iter().rev() {
                let (nb, nv) = self.diagonal_act(mode, b, &v)?;
                b = nb;
                v = nv;
            }
            match &mut acc {
                None => {
                    for x in v.iter_mut() {
                        *x = &*x * c;
                    }
                    acc = Some((b, v));
                }
                Some((ab, av)) => {
                    assert_eq!(*ab, b, "element must be bihomogeneous");
                    for (x, y) in av.iter_mut().zip(&v) {
                        *x += &(y * c);
                    }
                }
            }
        }
        Ok(acc)
    }
}

/// One spanning vector together with the word that produced it. The word
/// acts left-to-right, rightmost mode first.
#[derive(Clone, Debug)]
pub struct SpanVector {
    pub word: Vec<crate::mode::Mode>,
    pub bidegree: Bidegree,
    pub coords: Vec<Scalar>,
}

impl SpanVector {
    /// The word as an element of the enveloping algebra.
    pub fn word_element(&self) -> Element {
        crate::element::normal_order(&self.word, Scalar::one())
    }
}

/// The spanned cyclic subspace: per-bidegree dimensions, an independent
/// set of representative vectors, and the full generated family (kept and
/// discarded), which witnesses the linear dependencies used by the exact
/// sequence checks.
pub struct TensorState {
    pub space: TensorSpace,
    pub dims: BTreeMap<Bidegree, usize>,
    pub kept: BTreeMap<Bidegree, Vec<SpanVector>>,
    pub generated: BTreeMap<Bidegree, Vec<SpanVector>>,
}

impl TensorState {
    pub fn dim(&self, b: Bidegree) -> usize {
        self.dims.get(&b).copied().unwrap_or(0)
    }

    pub fn dim_table(&self, k: u32, i: u32, j: u32, convention: Convention, extra_form: ExtraForm) -> DimTable {
        let box_ = self.space.truncation();
        let mut map: BTreeMap<Bidegree, usize> = BTreeMap::new();
        for b in box_.bidegrees() {
            map.insert(b, self.dim(b));
        }
        DimTable::from_map(
            "module",
            k,
            i,
            j,
            convention.as_str(),
            extra_form.as_str(),
            [box_.max_charge, box_.max_weight4],
            &map,
        )
    }
}

/// All negative modes whose weight fits the box.
pub fn negative_modes(box_: TruncationBox) -> Vec<crate::mode::Mode> {
    let mut modes = Vec::new();
    let mut q = -1;
    while -q <= box_.max_weight4 {
        modes.push(crate::mode::Mode::x1q(q));
        q -= 2;
    }
    let mut n = -4;
    while -n <= box_.max_weight4 {
        modes.push(crate::mode::Mode::x12(QuarterInt::from_quarters(n)));
        n -= 4;
    }
    modes
}

/// Breadth-first closure of the cyclic vector under negative modes.
pub fn span_cyclic(space: TensorSpace) -> Result<TensorState, Error> {
    let box_ = space.truncation();
    let modes = negative_modes(box_);
    let mut rrefs: HashMap<Bidegree, Rref> = HashMap::new();
    let mut kept: BTreeMap<Bidegree, Vec<SpanVector>> = BTreeMap::new();
    let mut generated: BTreeMap<Bidegree, Vec<SpanVector>> = BTreeMap::new();
    let mut queue: VecDeque<SpanVector> = VecDeque::new();

    let (b0, v0) = space.cyclic_vector()?;
    assert!(v0.iter().any(|c| !c.is_zero()), "cyclic vector must be nonzero");
    let root = SpanVector { word: Vec::new(), bidegree: b0, coords: v0.clone() };
    let dim0 = space.layout(b0)?.dim();
    let mut r0 = Rref::new(dim0, Vec::new());
    r0.insert(v0);
    rrefs.insert(b0, r0);
    kept.entry(b0).or_default().push(root.clone());
    generated.entry(b0).or_default().push(root.clone());
    queue.push_back(root);

    while let Some(sv) = queue.pop_front() {
        for &mode in &modes {
            let target = sv.bidegree + Bidegree::new(mode.charge(), mode.weight());
            if !box_.contains(target) {
                continue;
            }
            let (tb, tv) = space.diagonal_act(mode, sv.bidegree, &sv.coords)?;
            let mut word = vec![mode];
            word.extend(sv.word.iter().copied());
            let child = SpanVector { word, bidegree: tb, coords: tv.clone() };
            generated.entry(tb).or_default().push(child.clone());
            let rref = match rrefs.entry(tb) {
                std::collections::hash_map::Entry::Occupied(o) => o.into_mut(),
                std::collections::hash_map::Entry::Vacant(v) => {
                    v.insert(Rref::new(space.layout(tb)?.dim(), Vec::new()))
                }
            };
            if rref.insert(tv) {
                kept.entry(tb).or_default().push(child.clone());
                queue.push_back(child);
            }
        }
    }

    let dims = rrefs.iter().map(|(&b, r)| (b, r.rank())).collect();
    Ok(TensorState { space, dims, kept, generated })
}

/// Build the factor list for the cyclic subspace with `k - i - j` vacuum
/// slots, `i` charge-one slots and `j` re-pointed slots, then span it.
pub fn span_virtual(
    k: u32,
    i: u32,
    j: u32,
    box_: TruncationBox,
    convention: Convention,
    extra_form: ExtraForm,
    cache_dir: Option<PathBuf>,
) -> Result<TensorState, Error> {
    if i + j > k {
        return Err(Error::InvalidConfig(format!("i + j = {} exceeds k = {k}", i + j)));
    }
    // every slot's native bidegree is bounded by the total plus the other
    // slots' offsets, so all factors share one enlarged native box
    let native_box = TruncationBox::new(
        box_.max_charge + 2 * j as i64,
        box_.max_weight4 + 4 * j as i64,
    );
    let mut cache = HashMap::new();
    let mut factor = |kind: FactorKind| -> Result<Arc<Factor>, Error> {
        if let Some(f) = cache.get(&kind) {
            let f: &Arc<Factor> = f;
            return Ok(f.clone());
        }
        let f = Factor::build(kind, native_box, convention, extra_form, cache_dir.clone())?;
        cache.insert(kind, f.clone());
        Ok(f)
    };
    let mut factors = Vec::with_capacity(k as usize);
    for _ in 0..(k - i - j) {
        factors.push(factor(FactorKind::Vacuum)?);
    }
    for _ in 0..i {
        factors.push(factor(FactorKind::EAlpha)?);
    }
    for _ in 0..j {
        factors.push(factor(FactorKind::X12Vec)?);
    }
    span_cyclic(TensorSpace::new(factors, box_))
}
