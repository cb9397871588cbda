//! Generalised tree modules over zero-relation algebras.
//!
//! Push-downs of tree morphisms into a bound quiver, pullback networks of
//! pairs of such morphisms, generalised graph maps spanning the Hom-space,
//! ghost detection, and indecomposability verdicts, including the catalog of
//! indecomposables for type D quivers.

pub mod cli;
pub mod dynkin;
pub mod graphmap;
pub mod indec;
pub mod linalg;
pub mod network;
pub mod quiver;

#[cfg(test)]
mod testing;
