//! Exact-arithmetic Hochschild and cyclic homology of Hopf crossed products.
//!
//! Given finite-dimensional structure-constant data — an algebra `A`, a Hopf
//! algebra `H`, a weak action, a cocycle `f`, and a subalgebra `K ⊆ A` —
//! this crate builds the crossed product `E = A#_f H` and computes the
//! Hochschild, cyclic, negative and periodic homology of `E` relative to `K`
//! from three independently constructed mixed complexes:
//!
//! * the canonical normalized mixed complex of the `K`-algebra `E`,
//! * an intermediate complex on the spaces `X̂_{rs}` obtained from a small
//!   resolution by comparison maps and the perturbation lemma,
//! * a simplified complex on `(E ⊗ Ā^⊗r)♮ ⊗ H̄^⊗s`, available when the
//!   cocycle is convolution invertible.
//!
//! Every closed formula, homotopy identity and spectral-sequence page the
//! construction provides is cross-checked in exact arithmetic; nothing is
//! floating point and nothing is asserted with a tolerance.

pub mod algebra;
pub mod crossed;
pub mod exactlin;
pub mod homcore;
pub mod hopf;
pub mod instance;
pub mod report;
pub mod resolution;
pub mod simplified;
pub mod spectral;

pub mod guide;
