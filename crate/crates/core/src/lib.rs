//! Logic-based argumentation over Boolean constraint languages.
//!
//! The crate decides whether a knowledge base supports a claim (ARG), whether
//! a given support is an argument (ARG-Check), whether some argument uses a
//! given formula (ARG-Rel), and implication (IMP), for formulas built from a
//! finite set of Boolean relations. It also detects the structural properties
//! of relations that drive the choice of algorithm, and reports the
//! parameterized complexity of each problem for a given language.

pub mod argumentation;
pub mod classify;
pub mod coclone;
pub mod entailment;
pub mod error;
pub mod formulas;
pub mod limits;
pub mod relations;
pub mod xcheck;

pub use error::{Error, Result};
