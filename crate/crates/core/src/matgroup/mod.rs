//! Finite matrix groups over cyclotomic fields.

mod element;
mod group;
pub mod json;

pub use element::GroupElement;
pub use group::{FiniteMatrixGroup, DEFAULT_CAP};
