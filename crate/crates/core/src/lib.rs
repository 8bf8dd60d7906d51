//! Exact and numerical computations for abelian Chern-Simons theory and
//! classical theta functions.

pub mod cli;
pub mod cyclo;
pub mod dft;
pub mod error;
pub mod heis;
pub mod link;
pub mod matrix;
pub mod rt;
pub mod symplectic;
pub mod theta_num;
pub mod verify;

pub use cyclo::{Cyclo, CycloRing, ScaledCyclotomic};
pub use error::{Error, Result};
pub use link::FramedLinkData;
pub use matrix::CycloMatrix;
pub use symplectic::{Lagrangian, SymplecticMatrix};
