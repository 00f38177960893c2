//! Finite-dimensional Hilbert-Schmidt and trace-class toolkit.

pub mod cli;
pub mod conjspace;
pub mod error;
pub mod linalg;
pub mod norms;
pub mod psum;
pub mod sampling;
pub mod states;
pub mod teleport;
pub mod tensor;
pub mod verify;

pub use conjspace::{Bra, Ket, Space};
pub use error::{Error, Result};
pub use linalg::{Complex, ComplexMatrix};
pub use tensor::TensorElement;
