//! Computations in the affine symmetric group: Bruhat order, Poincaré
//! polynomials, classical pattern containment, and the classification of
//! rationally smooth affine Schubert varieties with machine-checkable
//! witnesses.

pub mod bruhat;
pub mod enumerate;
pub mod error;
pub mod parabolic;
pub mod patterns;
pub mod perm;
pub mod pictures;
pub mod poly;
pub mod smoothness;
pub mod witness;

pub use error::{Error, Result};
pub use perm::{AffinePermutation, Transposition, Word};
pub use poly::UnivariatePolynomial;
