//! Exact shuffle/concatenation tensor algebra over words, with the spaces of
//! conjugation, loop and closure invariants of iterated-integrals
//! signatures and an exact piecewise-linear signature engine to test them
//! against.

pub mod combinat;
pub mod error;
pub mod evidence;
pub mod fuzz;
pub mod linalg;
pub mod operators;
pub mod path;
pub mod rational;
pub mod relations;
pub mod spaces;
pub mod tensor;
pub mod word;

pub use error::{Error, Result};
pub use linalg::{Budget, LevelVector, Subspace};
pub use rational::Rational;
pub use tensor::TensorElement;
pub use word::Word;
