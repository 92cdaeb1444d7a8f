//! Exact linear algebra kernel.
//!
//! Scalars are exact (ℚ or 𝔽_p), all values are immutable after
//! construction, and every operation is pure and deterministic: the pivot
//! rule (leftmost column, lowest row) fixes every derived basis, section and
//! report bit for bit.

mod matrix;
mod scalar;
mod space;
mod tensor;

pub use matrix::{Matrix, Vector};
pub use scalar::{FieldSpec, Scalar};
pub use space::{invert, kernel_image, rref, solve, Quotient, Subspace};
pub use tensor::{BlockSpace, Shape, TensorSpace};
