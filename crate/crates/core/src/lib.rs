#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod base;
pub mod construct;
pub mod delta;
pub mod error;
pub mod linalg;
pub mod padic;
pub mod sen;
pub mod series;
pub mod witt;
pub mod zpoly;

pub use base::{BaseRing, PolyRing};
pub use error::{Error, Result};
pub use padic::PAdic;
pub use zpoly::ZPoly;
