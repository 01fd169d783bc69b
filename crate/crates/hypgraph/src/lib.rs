//! Exact hyperbolicity constants for finite metric graphs and their direct
//! products. All lengths are integer sixteenths of a unit edge, so every
//! reported quantity is an exact rational.

pub mod cycles;
pub mod delta;
pub mod dist;
pub mod error;
pub mod families;
pub mod geodesic;
pub mod graph;
pub mod parity;
pub mod product;
pub mod qi;
pub mod reports;
pub mod triangle;

pub use dist::{Dist16, Rat, RatOrInf};
pub use error::{Error, Result};
pub use graph::{Graph, HopMatrix, Point};
