//! Involution classes, cubes and mod-2 cohomological invariant pairings
//! for finite crystallographic reflection (Weyl) groups.

pub mod atlas;
pub mod error;
pub mod invariant;
pub mod rational;
pub mod reps;
pub mod root_system;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
