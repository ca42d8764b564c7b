//! Spectral scattering on rank-one Riemannian symmetric spaces of the
//! noncompact type: the Harish-Chandra c-function, radial eigenfunctions and
//! their boundary values, the resolvent kernel and its continuation,
//! resonances, and the scattering matrix.

pub mod boundary;
pub mod cfunction;
pub mod error;
pub mod model_h2;
mod ode;
mod quad;
pub mod radial;
pub mod resolvent;
pub mod resonances;
pub mod scattering;
pub mod space;
pub mod special;

pub use cfunction::{CFunction, Laurent};
pub use error::{Error, Result};
pub use quad::Extrapolated;
pub use radial::{Provenance, RadialSample, RadialSolution};
pub use resonances::ResonanceRecord;
pub use scattering::{PoleKind, ScatteringPole};
pub use space::RankOneSpace;
