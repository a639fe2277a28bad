//! q-Kneser graphs and the finite projective geometry behind their colourings.
//!
//! The crate builds qK_{v:k} over GF(q), the incidence structure of PG(v-1,q),
//! explicit colourings and covers, the standard homomorphisms between
//! q-Kneser graphs, and exact solvers that certify chromatic and independence
//! numbers at small parameters.

pub mod acceptance;
pub mod error;
pub mod geometry;
pub mod gf;
pub mod homs;
pub mod kneser;
pub mod qcombin;
pub mod solve;
pub mod subspaces;

pub use error::{Error, Result};
