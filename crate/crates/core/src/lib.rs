pub mod algebra;
pub mod cli;
pub mod error;
pub mod filters;
pub mod limits;
pub mod poset_product;
pub mod posets;
pub mod semantics;
pub mod structure;
pub mod syntax;

#[cfg(test)]
mod testing;

pub use algebra::{Elem, FiniteResiduatedLattice, RawAlgebra};
pub use error::{Error, Result, Violation};
pub use limits::Limits;
