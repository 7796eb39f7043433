//! Exact computations with Bott-Samelson modules on Bruhat moment graphs of
//! finite and affine Weyl groups.

#![allow(clippy::needless_range_loop)]

pub mod bstree;
pub mod cli;
pub mod defect;
pub mod error;
pub mod exactalg;
pub mod hecke;
pub mod momentgraph;
pub mod rootsys;
pub mod weyl;

pub use error::{Error, Result};
