//! Numerical laboratory for trace and Schatten-norm inequalities on
//! positive semidefinite, Hermitian and general complex matrices.
//!
//! The crate is organized as:
//! - [`mat`], [`eig`], [`svd`], [`herm`]: a self-contained dense complex
//!   linear-algebra core (Jacobi eigensolver, SVD, matrix functions,
//!   Loewner-order testing);
//! - [`norms`]: Schatten p-(quasi)norms, trace powers, the Ky Fan constant;
//! - [`ineq`]: one checker per inequality, producing structured reports;
//! - [`sampling`]: deterministic seeded random-matrix ensembles;
//! - [`probe`]: gradient-free tightness search for near-equality witnesses;
//! - [`campaign`]: grid-driven falsification campaigns with JSONL/CSV output;
//! - [`matfile`]: the on-disk matrix and witness formats.

pub mod campaign;
pub mod eig;
pub mod error;
pub mod herm;
pub mod ineq;
pub mod mat;
pub mod matfile;
pub mod norms;
pub mod probe;
pub mod sampling;
pub mod svd;

pub use eig::{hermitian_eig, EigenDecomposition, JacobiConfig};
pub use error::{Error, Result};
pub use herm::{
    block_dilation, contraction_factor, jordan, loewner_leq, psd_power, HermitianMatrix, PsdMatrix,
};
pub use ineq::{IneqId, IneqParams, IneqReport, Verdict};
pub use mat::ComplexMatrix;
pub use norms::{kyfan_constant, operator_norm, schatten, trace_power, SchattenIndex};
pub use svd::{modulus, polar, svd, SingularDecomposition};
