//! Finite groups, first-order sentences about them, and the structure
//! theory needed to evaluate those sentences exhaustively.

pub mod aee;
pub mod analysis;
pub mod arith;
pub mod catalog;
pub mod constructions;
pub mod corpus;
pub mod error;
pub mod group;
pub mod limits;
pub mod logic;
pub mod supplement;

pub use error::{Error, Result};
pub use group::{Elem, FiniteGroup, Subset};
pub use limits::Limits;
