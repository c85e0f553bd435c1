//! Exact computations with Poisson algebra extensions: crossed systems,
//! crossed products, equivalence of extensions and classification over
//! small prime fields.

pub mod algebra;
pub mod cli;
pub mod coflag;
pub mod crossed;
pub mod equivalence;
pub mod metabelian;
pub mod error;
pub mod format;
pub mod report;
pub mod scalar;

pub use algebra::{BilinearTable, PoissonAlgebra};
pub use coflag::{AbelianCoflag, CoflagDatum, NonabelianCoflag};
pub use crossed::{PreCrossedDatum, Section};
pub use equivalence::{ClassificationResult, Decision, Witness};
pub use error::{Error, Result};
pub use report::{AxiomReport, Violation};
pub use scalar::{Field, Matrix, Scalar, SolutionSet};
