//! List decoding of multiplicity codes and folded Reed-Solomon codes.

pub mod affine;
pub mod algebra;
pub mod codes;
pub mod decode;
pub mod error;
pub mod funcsolve;
pub mod interpolation;
pub mod odesolve;
pub mod operators;
pub mod polylattice;
pub mod rootfind;
pub mod selftest;

pub use error::{Error, Result};
