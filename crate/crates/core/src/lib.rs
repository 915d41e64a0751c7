//! Exact arithmetic for three twisted prehomogeneous vector spaces: relative
//! invariants, splitting-field classification, orbit representatives,
//! stabilizers, and exhaustive orbit censuses over small finite fields.
//!
//! Everything is generic over a [`Scalar`] base field. The concrete fields
//! used in practice are the rationals [`Q`] and the prime fields [`F2`] .. [`F31`].

pub mod arith;
pub mod error;

pub use arith::algebra::{Alg, AlgElem, EtaleAlgebra};
pub use arith::factor::{factor_binary_form, factor_binary_form_ext, Factorization};
pub use arith::form::{binary_form_disc, BinaryForm};
pub use arith::fp::Fp;
pub use arith::label::{splitting_label, ErLabel, GaloisType};
pub use arith::matrix::Matrix;
pub use arith::poly::Poly;
pub use arith::rational::{is_norm_quadratic_rational, squarefree_core};
pub use arith::scalar::{Ring, Scalar};
pub use error::{Error, Result};

pub type Q = num_rational::BigRational;
pub type F2 = Fp<2>;
pub type F3 = Fp<3>;
pub type F5 = Fp<5>;
pub type F7 = Fp<7>;
pub type F11 = Fp<11>;
pub type F13 = Fp<13>;
pub type F17 = Fp<17>;
pub type F19 = Fp<19>;
pub type F23 = Fp<23>;
pub type F29 = Fp<29>;
pub type F31 = Fp<31>;

pub mod case1;
pub mod case2;
pub mod case3;
pub mod herm;
pub mod json;
pub mod oracle;
