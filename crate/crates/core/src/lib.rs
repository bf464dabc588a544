//! Desk-scale workbench for algorithmic information theory: a concrete
//! reference machine with exact minimal-program search, resource-bounded
//! Kolmogorov / conditional / decision complexities, exact dyadic measure
//! transduction (CDF sampling and inversion), lower approximations of the
//! universal semimeasure, and mutual-information and entropy-rate
//! experiments over exactly specified sources.

pub mod bits;
pub mod complexity;
pub mod dyadic;
pub mod infotheory;
pub mod interval;
pub mod machine;
pub mod measure;
pub mod semimeasure;
pub mod verify;

pub use bits::Bits;
pub use dyadic::Dyadic;
pub use machine::{Budget, Mode, Program, RunOutcome, Status};
