//! Finite models of affine spaces, affine systems and institutions.
//!
//! Everything is desk scale: algebras are explicit operation tables, point
//! sets are labelled lists, and every categorical law is checked by
//! exhaustive enumeration under an explicit [`Budget`].

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod budget;
pub mod cat;
pub mod catalog;
pub mod cli;
pub mod dsl;
pub mod error;
pub mod functor;
pub mod institution;
pub mod outcome;
pub mod topology;

pub use budget::Budget;
pub use error::{Error, Result};
pub use outcome::Outcome;
