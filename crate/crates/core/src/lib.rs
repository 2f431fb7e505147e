//! Executable group theory for Andrews-Curtis style questions at desk scale.
//!
//! Finite groups are explicit multiplication tables ([`GroupTable`]). On top
//! of them the crate classifies Nielsen, AC and M-transformation classes of
//! (normally) generating tuples by exhaustive breadth-first search, computes
//! recalcitrance and M-graph diameters, and checks coessentiality of unit maps
//! `R^x -> (R / (1 - alpha) R)^x` by exact arithmetic.

pub mod abelian;
pub mod arith;
pub mod builtin;
pub mod error;
pub mod graph;
pub mod group;
pub mod limits;
pub mod matrix;
pub mod moves;
pub mod perm;
pub mod poly;
pub mod spec;
pub mod suite;
pub mod units;
pub mod wreath;

pub use error::{Error, Result};
pub use group::{GroupTable, SubgroupSet};
pub use limits::Limits;
