//! Exact arithmetic: base fields, polynomials, matrices, étale algebras,
//! binary forms and splitting-field labels.

pub mod algebra;
pub mod factor;
pub mod form;
pub mod fp;
pub mod label;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod scalar;
