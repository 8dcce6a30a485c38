//! Exact computations around rigid local systems on the projective line.
//!
//! The crate is organised bottom-up:
//!
//! * [`rational`], [`matrix`], [`linalg`], [`poly`], [`similarity`]: exact
//!   linear algebra over the rationals (ranks, kernels, centralizer
//!   dimensions, unit-eigenvalue Jordan data, invariant factors).
//! * [`theta`]: pairs of vector spaces `(E, F, u, v)` modelling germs of
//!   perverse complexes on a disk, with the `j_!`, `j_*` and `Rj_*`
//!   constructions and minimal extension.
//! * [`local_system`]: monodromy tuples, the Katz rigidity index and an
//!   irreducibility test.
//! * [`fourier`]: local data of the Fourier transform obtained by
//!   stationary phase, its rigidity index and the preservation check.
//!
//! Everything is computed with exact rationals; no floating point is used.

pub mod error;
pub mod fourier;
pub mod linalg;
pub mod local_system;
pub mod matrix;
pub mod poly;
pub mod random;
pub mod rational;
pub mod similarity;
mod sparse;
pub mod theta;

pub use error::{Error, Result, ValidationError};
pub use fourier::{
    stationary_phase, verify_preservation, ExponentialComponent, FourierLocalData, PointIdentity,
    PreservationReport,
};
pub use linalg::{
    centralizer_dimension, fixed_space_dim, rref_decompose, restrict_to_image, split_unit_part,
    unit_block_partition, RrefDecomposition, UnitBlockPartition,
};
pub use local_system::{
    random_tuple, FinitePoint, MonodromyTuple, PointIndex, RigidityReport, TupleSpec,
};
pub use matrix::QMatrix;
pub use poly::QPoly;
pub use rational::Rational;
pub use similarity::{invariant_factors, similar, SimilarityInvariant};
pub use theta::ThetaPair;
