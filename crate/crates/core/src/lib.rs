//! Model engines for three cell-biology systems: aerotactic band formation,
//! growth-cone gradient sensing, and viscoelastic deformation of endothelial
//! cells, together with the small numerical kernels they share.

// `!(x > 0.0)` guards are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// numerical kernels index several parallel arrays at once
#![allow(clippy::needless_range_loop)]

pub mod aerotaxis;
pub mod error;
pub mod growthcone;
pub mod kelvin;
pub mod numerics;

pub use error::{Error, Result};
pub use numerics::{Bracket, Grid1D, Trajectory};
