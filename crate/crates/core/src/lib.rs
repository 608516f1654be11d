//! Exact de Rham, Dolbeault and Bott-Chern cohomology of compact Vaisman
//! manifolds, computed twice: by linear algebra on a finite bigraded
//! bidifferential model, and from closed-form Lefschetz dimension counts.

pub mod cli;
pub mod engine;
pub mod error;
pub mod formulas;
pub mod input;
pub mod lefschetz;
pub mod linalg;
pub mod model;
pub mod render;
pub mod report;
pub mod ring;

pub use error::{Error, Result};
pub use input::{build_ring, ManifoldSpec, Transversal};
pub use report::{assemble_report, CohomologyReport};
