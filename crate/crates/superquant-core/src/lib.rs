//! Exact symbolic engine for natural, projectively invariant quantization on
//! supermanifolds of dimension (n|m).
//!
//! Everything is computed over one graded coordinate chart with multivariate
//! polynomial coefficients and exact rational arithmetic: the supercommutative
//! function algebra, supersymmetric tensors with density weights, torsion-free
//! superconnections and their curvature, the one-dimension-bigger bundle with
//! its lifted connection, divergence-free lifts of symbols, and the resulting
//! symbol-to-operator quantization map.
//!
//! The crate is organized bottom-up:
//!
//! * [`superfield`] — charts, Grassmann-polynomial functions, parsing,
//!   supermatrices and the Berezinian;
//! * [`supertensor`] — supersymmetric contravariant/covariant tensors,
//!   interior products and the pairing;
//! * [`connection`] — superconnections, curvature data, covariant derivatives,
//!   divergence, coordinate changes and Lie derivatives;
//! * [`projective`] — the fundamental descriptive invariant, projective
//!   perturbations and the criticality bookkeeping;
//! * [`thomas`] — the lifted connection in the horizontal frame, the descent
//!   map and the divergence-free lift;
//! * [`quantize`] — the quantization map, operator normal forms, the special
//!   low-superdimension formulas and the degree-2 ansatz solver;
//! * [`sample`] — seeded random generation of test data;
//! * [`checks`] — verification routines shared by the CLI and test suites.

pub mod checks;
pub mod connection;
pub mod error;
pub(crate) mod num;
pub mod projective;
pub mod quantize;
pub mod sample;
pub mod superfield;
pub mod supertensor;
pub mod thomas;

pub use error::{Error, Result};
pub use superfield::{ChartSpec, MultiIndex, Parity, Rat, SuperFunction, SuperMatrix};
pub use supertensor::{ContraSymbol, CovTensor, IndexWord, OneForm, WeightedDensity};
pub use connection::{CoordinateChange, CurvaturePackage, SuperConnection, VectorField};
pub use projective::{CriticalityReport, GammaContext, PiTable};
pub use thomas::{FrameConnection, LiftedCovTensor, LiftedTensor};
pub use quantize::{AnsatzReport, DifferentialOperator};
