//! Monoid actions realized as equivariant étale posets over coset posets, and
//! as étale posets over Alexandrov groupoids, computed on finite windows of
//! the ambient groups.

pub mod error;
pub mod group;
pub mod groupoid;
pub mod io;
pub mod monoid;
pub mod poset;
pub mod render;
pub mod report;
pub mod sample;
pub mod converse;
pub mod corpus;
pub mod verify;
pub mod cli;
pub mod coset;
pub mod equivariant;

pub use error::{Error, Result};
