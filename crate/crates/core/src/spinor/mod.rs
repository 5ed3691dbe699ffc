//! Exact algebra of the spin-½ Galilean wave operator and the second-rank
//! spinor Lagrangians built from it.

pub mod bispinor;
pub mod boost;
pub mod coupling;
pub mod generators;
pub mod lagrangian;

use thiserror::Error;

pub use bispinor::{
    parametrize_bispinor, parametrize_bispinor_augmented, FieldComponentLabel, FieldKind, FieldName,
    ParametrizedBispinor, Symmetry,
};
pub use boost::{build_boost_matrix, BoostParameters};
pub use coupling::{coupling_analysis, CouplingReport};
pub use generators::{build_generators, build_wave_operator, Generators};
pub use lagrangian::{
    compare_with_reference, expand_trace_lagrangian, omitted_component_terms, reference_expansion,
    BilinearLagrangian,
};

#[derive(Debug, Error, PartialEq)]
pub enum SpinorError {
    #[error("rotation is not orthogonal (max |RᵀR - 1| = {defect:e})")]
    NonOrthogonal { defect: f64 },
    #[error("rotation has determinant {det}, expected +1")]
    ImproperRotation { det: f64 },
    #[error("multispinor rank {0} outside 1..=8")]
    RankOutOfRange(usize),
    #[error("integration by parts needs a single first-order derivative")]
    NotFirstOrder,
}
