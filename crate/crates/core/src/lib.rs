//! Slice regular and slice monogenic power series over Clifford algebras `R_n`
//! and the quaternions, with numerical checks of their modulus identities,
//! growth and distortion bounds and the one-quarter covering property.

pub mod clifford;
pub mod error;
pub mod json;
pub mod rng;
pub mod series;
pub mod slice;
pub mod splitting;
pub mod suite;
pub mod verify;

pub use clifford::{context, CliffordContext, Multivector};
pub use error::{Error, Result};
pub use series::{ext, CoeffBound, ComplexSeries, SliceSeries};
pub use slice::{SlicePoint, SliceStructure, StructureKind};
pub use splitting::{splitting, SplittingResult};
pub use suite::{run_suite, RunConfig, SuiteReport};
pub use verify::CheckReport;
