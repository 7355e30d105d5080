//! Symmetry-constrained polynomial bases and their recursive evaluation.
//!
//! The crate enumerates the index sets of invariant product bases for the
//! torus, SO(2), O(3) and O(3) with an extra scalar feature, classifies basis
//! tuples as dependent or independent, builds evaluation DAGs in which every
//! product basis function costs a single multiplication, and evaluates those
//! DAGs on particle configurations.
//!
//! ```
//! use acegraph::{build, stats, Algorithm, DegreeSpec, Group};
//!
//! let g = build(Group::T, DegreeSpec::total(6), 3, Algorithm::Original).unwrap();
//! assert_eq!(stats(&g).num_aux, 4);
//! ```

pub mod dependency;
pub mod error;
pub mod evaluator;
pub mod graph;
pub mod indexsets;
pub mod partitions;
pub mod scalar;
pub mod verify;

pub use dependency::{classify, count_sets, invariant_decompositions, Decomposition, Dependence, SetCounts};
pub use error::{Error, Result};
pub use graph::{build, seed_graph, stats, Algorithm, EvalGraph, GraphMeta, GraphNode, GraphStats};
pub use indexsets::{
    degree, enumerate_e_slice, enumerate_k, satisfies_constraints, BasisTuple, DegreeSpec, Group, Norm,
    OneParticleIndex,
};
pub use scalar::Scalar;

/// Double-precision particle configuration.
pub type ParticleConfig64 = evaluator::ParticleConfig<f64>;
/// Single-precision particle configuration.
pub type ParticleConfig32 = evaluator::ParticleConfig<f32>;
/// Double-precision pooled features.
pub type PooledBasis64 = evaluator::PooledBasis<f64>;
/// Double-precision model coefficients.
pub type Coefficients64 = evaluator::CoefficientVector<f64>;
/// Complex double.
pub type Complex64 = num_complex::Complex<f64>;
