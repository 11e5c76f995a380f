//! Representations of bound quiver algebras over the rationals, tilting
//! checks, and the summand bijection between two tilting modules together
//! with explicit extension witnesses.

pub mod algebra;
pub mod bijection;
pub mod corpus;
pub mod error;
pub mod exactlin;
pub mod io;
pub mod modrep;
pub mod tiltcheck;
pub mod witness;

pub use error::{Error, Result};
