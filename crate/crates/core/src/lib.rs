//! Quantum-noise spectra for the optical-lever measurement of a suspended
//! mirror's angular motion, and the analogous translational channel.
//!
//! The library models the measurement entirely at the level of real 2×2
//! quadrature transfer matrices: the reflected 10-mode vacuum field is
//! ponderomotively squeezed with coupling κ₁, the Gouy phase accumulated
//! between mirror and detector acts as the homodyne angle, and the noise
//! spectral density follows from a vacuum PSD quadratic form. Closed forms,
//! the composed pipeline, and a Monte Carlo sampler provide three
//! independent routes to every spectrum.

pub mod beam;
pub mod constants;
pub mod error;
pub mod hg;
pub mod mc;
pub mod quadrature;
pub mod rotation;
pub mod solver;
pub mod translation;

pub use beam::BeamParams;
pub use error::{Error, Result};
pub use hg::{DisplacementTilt, ModeDecomposition, ModeIndex};
pub use mc::McReport;
pub use quadrature::{PsdMatrix, QuadratureVector, TwoPhotonTransfer};
pub use rotation::{GridScale, LeverConfig, MirrorSetup, NoiseSpectrum};
pub use translation::TranslationSetup;
