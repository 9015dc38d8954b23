pub mod error;
pub mod grid;
pub mod heatkernel;
pub mod potential;
pub mod probe;
pub mod quad;
pub mod regions;
pub mod relations;
pub mod specfun;

pub use error::{Error, Result};
pub use heatkernel::{KernelPoint, Setting};
pub use specfun::{MultiIndex, Scaled, TypeIndex};
pub use grid::{GridFunction, Measure, Source};
pub use potential::{PotentialRequest, QuadratureSpec};
