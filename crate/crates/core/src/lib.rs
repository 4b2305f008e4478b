//! Finite duality for distributive lattices, De Morgan and Kleene algebras,
//! with deciders for projectivity and the unification type of finite instances.
//!
//! Algebras are handled through their duals: finite posets for bounded
//! distributive lattices and finite posets with an antitone involution for
//! De Morgan and Kleene algebras.

mod bits;
pub mod algebra;
pub mod duality;
pub mod error;
pub mod involutive;
pub mod order;
pub mod projectivity;
pub mod unification;
mod search;

pub use error::{Error, Result};
