//! Separating filtrations on PL manifolds, rainbow censuses of the induced
//! colorings, the ball-volume inequalities they satisfy and the resulting
//! simplicial-volume bounds, plus a finite model of measured Cantor actions.

pub mod complex;
pub mod bounds;
pub mod cantor;
pub mod error;
pub mod filtration;
pub mod pipeline;
pub mod rainbow;
mod perm;

pub use error::{Error, Result};
