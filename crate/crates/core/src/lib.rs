//! Cyclic codes generated by cyclotomic polynomials over finite fields.
//!
//! The crate builds `C_n = <Q_n(x)>`, `C_(n,1) = <Q_n(x) Q_1(x)>`, repetition
//! codes and their Euclidean duals over any `F_q` with `q <= 2^16`, measures
//! their parameters exactly, and checks the CRT/tensor-product structure of the
//! duals.

pub mod arith;
pub mod code;
pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod poly;
pub mod tensor;
pub mod verify;

pub use code::{CyclicCode, GenMatrix, LinearCode};
pub use error::{Error, Result};
pub use field::{Extension, Fe, FieldCtx};
pub use poly::Poly;
