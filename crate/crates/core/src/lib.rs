//! Two-term silting theory over finite-dimensional algebras, computed
//! exactly over prime fields.
//!
//! The two-term homotopy category of projectives is the concrete model:
//! silting objects, their mutations and completions, the bijection with
//! support tau-tilting pairs, and silting reduction are all computed from
//! explicit complexes and modules.

pub mod algebra;
pub mod cli;
pub mod complexes;
pub mod corpus;
mod error;
pub mod exactlinalg;
pub mod krull;
pub mod modules;
pub mod poset;
pub mod reduction;
pub mod session;
pub mod silting;
pub mod verify;

pub use error::{Error, Result};

#[cfg(test)]
pub(crate) mod testing {
    use crate::algebra::Algebra;

    pub fn corpus_algebra(name: &str) -> Algebra {
        crate::corpus::load(name, None).unwrap()
    }
}
