//! Exact computations with the twisted nilpotent algebra behind level-k
//! principal subspaces of type A2(2): canonical normal ordering in its
//! enveloping algebra, graded ideal quotients, tensor-module spans,
//! bigraded characters, and q-series identities (Nahm sums over the
//! inverse tadpole Cartan matrix and congruence-conditioned Euler
//! products).
//!
//! The crate computes every dimension twice, by independent routes:
//!
//! * the presentation side builds the graded ideals from truncated
//!   relation families and eliminates exactly over the Gaussian
//!   rationals;
//! * the module side realizes level-one quotients as cyclic modules,
//!   forms k-fold tensor products with the diagonal action, and spans the
//!   cyclic subspaces breadth-first.
//!
//! Agreement of the two tables, the exact-sequence rank conditions, the
//! character recursions, and the specialized-character comparisons are
//! exposed as [`verify`] drivers with machine-readable [`report`]s.
//!
//! See the `book/` directory for a guided tour; its code snippets run as
//! doc-tests of this crate.

pub mod element;
pub mod engine;
pub mod error;
pub mod factor;
pub mod linalg;
pub mod maps;
pub mod mode;
pub mod monomial;
pub mod qseries;
pub mod quarter;
pub mod relations;
pub mod report;
pub mod scalar;
pub mod table;
pub mod tensor;
pub mod verify;

pub use num;

pub use element::{bracket, normal_order, normal_order_rightmost, Element};
pub use engine::{enumerate_monomials, enumerate_negative_monomials, rank, Engine, TruncationBox};
pub use error::Error;
pub use factor::{Factor, FactorKind};
pub use maps::{psi, tau, TauDirection};
pub use mode::{alpha2_mode, Mode, Root};
pub use monomial::{Bidegree, NormalMonomial};
pub use qseries::{
    character, check_conjecture, gga_product, nahm_sum, tadpole_inverse, tadpole_matrix,
    verify_recursions, BiSeries, QSeries,
};
pub use quarter::QuarterInt;
pub use relations::{
    ad_closure, ad_x1, extra_generators, r0_generator, r0_generator_json, Convention, ExtraForm,
    IdealSpec, RelationFamily, RelationId,
};
pub use report::{Report, Status};
pub use scalar::Scalar;
pub use table::DimTable;
pub use tensor::{span_virtual, TensorSpace, TensorState};
pub use verify::{
    module_table, presentation_table, verify_conjectured_sequence, verify_exact_sequences,
    verify_presentation, verify_proposition, verify_shift_lemmas, VerifyOptions,
};

// The guide chapters double as doc-tests so the book cannot drift from
// the library.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/modes-and-normal-ordering.md")]
    mod modes_and_normal_ordering {}
    #[doc = include_str!("../../../book/src/ideals-and-dimensions.md")]
    mod ideals_and_dimensions {}
    #[doc = include_str!("../../../book/src/tensor-modules.md")]
    mod tensor_modules {}
    #[doc = include_str!("../../../book/src/characters-and-q-series.md")]
    mod characters_and_q_series {}
}
