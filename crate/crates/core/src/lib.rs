//! Finite groupoids, their actions and linear representations, with exact
//! checks of the counting identities for groupoid double cosets.

pub mod action;
pub mod builder;
pub mod coset;
pub mod fnspace;
pub mod format;
pub mod groupoid;
pub mod linalg;
pub mod linrep;
pub mod random;
pub mod scalar;
pub mod verify;

pub use groupoid::{FiniteGroupoid, Mor, Obj, Subgroupoid};
pub use scalar::GaussQ;
