//! Exact computations with biquivers and their matrix representations.
//!
//! A biquiver is a directed multigraph whose arrows are either *full*
//! (carrying linear maps) or *dashed* (carrying semilinear maps, which
//! conjugate scalars). This crate classifies biquivers as finite, tame or
//! wild, enumerates roots of the Tits form, and works with matrix
//! representations over the Gaussian rationals: base change, conjugation
//! at a vertex, morphism spaces, isomorphism certificates and direct-sum
//! decomposition.

pub mod classifier;
pub mod conjugation;
pub mod error;
pub mod gadgets;
pub mod linalg;
pub mod matrix;
pub mod model;
pub mod morphisms;
pub mod representation;
pub mod roots;
pub mod scalar;
pub mod semilinear;
pub mod tits;

pub use classifier::{diagram_shape, representation_type, Diagram, RepKind, RepType};
pub use error::{Error, Result};
pub use matrix::CMatrix;
pub use model::{Arrow, ArrowKind, Biquiver, DimensionVector};
pub use scalar::{GaussianRational, Rational};
pub use tits::{definiteness, evaluate, gram_matrix, radical_vector, Definiteness, TitsGram};
pub use conjugation::{conjugate_biquiver, conjugate_representation, dash_elimination_plan, transport_isomorphism};
pub use morphisms::{are_isomorphic, decompose, end_algebra, hom_basis, krull_schmidt_compare, IsoVerdict, SamplingConfig};
pub use representation::{apply_base_change, direct_sum, random_representation, MatrixRepresentation};
pub use gadgets::{gadget_cycle, gadget_loop_arrow, gadget_two_loops, SmallWild};
