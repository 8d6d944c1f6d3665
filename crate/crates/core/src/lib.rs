//! Exact computation of gap vectors and quadratic deficiency for
//! parametrized real projective varieties.
//!
//! A variety `X ⊆ P^m` is given by homogeneous polynomial maps. Every
//! dimension the library reports is the rank of an evaluation table built
//! from generic points of `X`, computed exactly over the rationals or over a
//! 62-bit prime field.
//!
//! The modules build on each other bottom-up:
//!
//! * [`exactalg`]: fields, dense matrices, rank and kernels, seeded sampling.
//! * [`variety`]: parametrizations, standard families, points and jets.
//! * [`dims`]: `dim R₂`, `ε(X)`, face dimensions and the gap vector.
//! * [`properties`]: structural checks on a finished [`GapReport`].

pub mod dims;
pub mod error;
pub mod exactalg;
pub mod properties;
pub mod variety;

pub use dims::{gap_vector, FaceDims, GapReport, RankConfig};
pub use error::{Error, Result};
pub use exactalg::{DenseMatrix, Field, FieldContext, PrimeField, Rationals, SeededSampler};
pub use properties::{classify, verify_gap_properties, CheckResult, CheckValue, GapClass};
pub use variety::{Parametrization, PointSample, VarietyInfo};
