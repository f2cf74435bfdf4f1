//! Dynatomic polynomials for `x^2 + t`, portrait graphs, and the curves
//! parametrizing quadratic maps with a prescribed rational preperiodic
//! structure.

pub mod algebra;
pub mod curves;
pub mod dynamics;
pub mod dynatomic;
pub mod error;
pub mod graph;

pub use algebra::{fmt_rational, parse_rational, MultiPoly, Rational, UniPoly, Var};
pub use curves::{CurveSystem, EquationSystem, PointStatus};
pub use dynamics::RationalPreperSet;
pub use dynatomic::{default_cache, DynatomicCache};
pub use error::{Error, Result};
pub use graph::{Classification, GeneratorData, Portrait, PortraitGraph};
