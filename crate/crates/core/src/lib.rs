//! Exact-probability replay of game-based security reductions for the
//! Blum-Blum-Shub generator and the Goldwasser-Micali scheme.
//!
//! Games are finite distributions ([`dist::Dist`]) with exact rational
//! weights. Every rewriting step of the two reductions is an explicit game
//! program in [`proofreplay`], and consecutive steps are compared by exact
//! distribution equality at small, fully enumerable moduli.

pub mod dist;
pub mod error;
pub mod games;
pub mod numth;
pub mod primitives;
pub mod prob;
pub mod proofreplay;

pub use dist::{advantage, dist_eq, indist, resample_check, Canonical, Dist, DistError};
pub use error::{Error, Result};
pub use numth::{BlumModulus, Residue, SemiprimeModulus};
pub use prob::Prob;
