//! Large-time asymptotics for linear thermoelasticity with Fourier heat
//! conduction, computed in frequency space.

pub mod cli;
pub mod datum;
pub mod error;
pub mod model;
pub mod norms;
pub mod profiles;
pub mod rates;
pub mod scenario;
pub mod spectral;

pub use error::{Error, Result};
