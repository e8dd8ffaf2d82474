pub mod analysis;
pub mod colouring;
pub mod error;
pub mod model;
pub mod pbit;
pub mod problems;
pub mod rng;
pub mod solvers;
pub mod transforms;

pub use error::{Error, Result};
pub use model::{Clamp, ClampMask, EnergyModel, ModelBuilder, State};
