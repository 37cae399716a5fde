//! Minimal helicoids, catenoids and the entire minimal graph in the Lie group Sol₃,
//! with the numerical machinery that certifies their defining properties.

pub mod catenoid;
pub mod error;
pub mod export;
pub mod geometry;
pub mod helicoid;
pub mod jet;
pub mod limits;
pub mod ode;
pub mod verify;
pub mod weierstrass;

pub use error::{Error, Result};
