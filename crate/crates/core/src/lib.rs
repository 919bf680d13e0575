//! Exact computations with crossed products of finite-dimensional C*-algebras
//! by partial automorphisms.

pub mod algebra_core;
pub mod coaction;
pub mod corpus;
pub mod crossed_product;
pub mod error;
pub mod linalg;
pub mod matrix;
pub mod partial_system;
pub mod scalar;
pub mod star_engine;
pub mod suite;

pub use algebra_core::{Block, BlockAlgebra, IdealSet};
pub use error::{Error, Result};
pub use partial_system::{Direction, PartialInjection, PartialSystem};
