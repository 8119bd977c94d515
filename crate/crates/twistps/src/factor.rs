//! Level-one cyclic modules realized as graded ideal quotients.
//!
//! Three factor kinds feed the tensor constructions: the vacuum module
//! (cyclic vector the identity class, annihilated by `I_{1,0}`), the
//! charge-one module (annihilated by `I_{1,1}`), and the vacuum module
//! re-pointed at the class of `x12(-1)`, whose cyclic vector natively sits
//! at bidegree `(2, 1)` and is shifted to `(0, 0)` in reports.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, RwLock};

use crate::element::{normal_order, Element};
use crate::engine::{Engine, TruncationBox};
use crate::error::Error;
use crate::mode::Mode;
use crate::monomial::Bidegree;
use crate::quarter::QuarterInt;
use crate::relations::{Convention, ExtraForm, IdealSpec};
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FactorKind {
    Vacuum,
    EAlpha,
    X12Vec,
}

impl FactorKind {
    fn annihilator_i(self) -> u32 {
        match self {
            FactorKind::Vacuum | FactorKind::X12Vec => 0,
            FactorKind::EAlpha => 1,
        }
    }
}

/// Action of one mode on one graded piece: row `j` holds the image
/// coordinates of the `j`-th basis vector in the target piece.
pub type ActionMatrix = Arc<Vec<Vec<Scalar>>>;

pub struct Factor {
    kind: FactorKind,
    engine: Engine,
    offset: Bidegree,
    cyclic: Vec<Scalar>,
    actions: RwLock<HashMap<(Mode, Bidegree), ActionMatrix>>,
    support: std::sync::OnceLock<Vec<Bidegree>>,
}

impl Factor {
    /// Build a factor over its own native truncation box.
    pub fn build(
        kind: FactorKind,
        native_box: TruncationBox,
        convention: Convention,
        extra_form: ExtraForm,
        cache_dir: Option<PathBuf>,
    ) -> Result<Arc<Factor>, Error> {
        let spec = IdealSpec::new(1, kind.annihilator_i(), convention, extra_form)?;
        let engine = Engine::new(spec, native_box, cache_dir);
        let (offset, cyclic) = match kind {
            FactorKind::Vacuum | FactorKind::EAlpha => {
                let reducer = engine.reducer(Bidegree::VACUUM)?;
                (Bidegree::VACUUM, reducer.coordinates(&Element::identity())?)
            }
            FactorKind::X12Vec => {
                let native = Bidegree::new(2, QuarterInt::from_int(1));
                let reducer = engine.reducer(native)?;
                let coords = reducer.coordinates(&Element::from_mode(Mode::x12n(-1)))?;
                assert!(
                    coords.iter().any(|c| !c.is_zero()),
                    "the class of x12(-1) must not vanish in the vacuum module"
                );
                (native, coords)
            }
        };
        Ok(Arc::new(Factor {
            kind,
            engine,
            offset,
            cyclic,
            actions: RwLock::new(HashMap::new()),
            support: std::sync::OnceLock::new(),
        }))
    }

    pub fn kind(&self) -> FactorKind {
        self.kind
    }

    /// Native bidegree of the cyclic vector; subtracted everywhere so the
    /// cyclic vector sits at `(0, 0)`.
    pub fn offset(&self) -> Bidegree {
        self.offset
    }

    pub fn native_box(&self) -> TruncationBox {
        self.engine.truncation()
    }

    pub fn cyclic_coords(&self) -> &[Scalar] {
        &self.cyclic
    }

    pub fn dim_native(&self, b: Bidegree) -> Result<usize, Error> {
        if !b.is_nonnegative() {
            return Ok(0);
        }
        self.engine.quotient_dim(b)
    }

    /// Native bidegrees with a nonzero graded piece, charge-major.
    pub fn support(&self) -> Result<&[Bidegree], Error> {
        if let Some(s) = self.support.get() {
            return Ok(s);
        }
        let mut s = Vec::new();
        for b in self.engine.truncation().bidegrees() {
            if self.engine.quotient_dim(b)? > 0 {
                s.push(b);
            }
        }
        Ok(self.support.get_or_init(|| s))
    }

    /// Action of `mode` on the graded piece at native bidegree `b`,
    /// memoized. The target piece is `b + (charge, -degree)`.
    pub fn action(&self, mode: Mode, b: Bidegree) -> Result<ActionMatrix, Error> {
        if let Some(m) = self.actions.read().unwrap().get(&(mode, b)) {
            return Ok(m.clone());
        }
        let target = b + Bidegree::new(mode.charge(), mode.weight());
        if !target.is_nonnegative() {
            // negative weight has no all-negative monomials: the zero space
            let rows = vec![Vec::new(); self.dim_native(b)?];
            let matrix: ActionMatrix = Arc::new(rows);
            self.actions.write().unwrap().insert((mode, b), matrix.clone());
            return Ok(matrix);
        }
        let source_reducer = self.engine.reducer(b)?;
        let target_reducer = self.engine.reducer(target)?;
        let mut rows = Vec::with_capacity(source_reducer.dim());
        for m in source_reducer.basis() {
            let mut word = vec![mode];
            word.extend(m.word());
            let image = normal_order(&word, Scalar::one());
            rows.push(target_reducer.coordinates(&image)?);
        }
        let matrix: ActionMatrix = Arc::new(rows);
        self.actions.write().unwrap().insert((mode, b), matrix.clone());
        Ok(matrix)
    }

    /// Apply `mode` to a coordinate vector at native bidegree `b`.
    pub fn apply(&self, mode: Mode, b: Bidegree, coords: &[Scalar]) -> Result<(Bidegree, Vec<Scalar>), Error> {
        let target = b + Bidegree::new(mode.charge(), mode.weight());
        let matrix = self.action(mode, b)?;
        let target_dim = self.dim_native(target)?;
        let mut out = vec![Scalar::zero(); target_dim];
        for (j, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (t, entry) in matrix[j].iter().enumerate() {
                if !entry.is_zero() {
                    out[t] += &(c * entry);
                }
            }
        }
        Ok((target, out))
    }
}
