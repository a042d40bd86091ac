//! Exact verification toolkit for two-dimensional compatible pre-Lie
//! algebras and their degenerations.

pub mod algebra;
pub mod catalog;
pub mod error;
pub mod exactmath;
pub mod geometry;
pub mod morphisms;

pub use error::{Error, Result};
