//! Geometry of cycles over elliptic, parabolic and hyperbolic numbers, the
//! covariant functional calculus of matrices, and the numerics of the Hardy
//! space on the circle.

pub mod conic;
pub mod cycle;
pub mod error;
pub mod hardy;
pub mod hypercomplex;
pub mod invariants;
pub mod jet;
pub mod matrix_text;
pub mod metric;
pub mod render;
pub mod sampling;
pub mod scene;
pub mod verify;

pub use cycle::{Cycle, FsccMatrix, FsccParams, Point};
pub use error::{Error, Result};
pub use hypercomplex::{GroupElement, HyperNumber, IwasawaFactors, Sigma};
