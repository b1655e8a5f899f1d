//! Exact localization engine for the quantum group action on the
//! equivariant K-theory of based Laumon quasiflag spaces.

pub mod characters;
pub mod error;
pub mod fixedpoints;
pub mod par;
pub mod qtoda;
pub mod report;
pub mod suites;
pub mod symbolic;
pub mod umodule;
pub mod whittaker;

pub use error::{Error, Result};
