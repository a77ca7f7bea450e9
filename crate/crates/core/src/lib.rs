//! Witt groups of equivariant quadratic forms over finite fields of
//! characteristic two.

pub mod catalog;
pub mod equiforms;
pub mod error;
pub mod exactla;
pub mod generators;
pub mod gfield;
pub mod group;
pub mod io;
pub mod meataxe;
pub mod poly;
pub mod quadspace;
pub mod rep;
pub mod sampling;
pub mod wittgroup;

pub use error::{Error, Result};
pub use gfield::{FieldSpec, Scalar};
