//! Analytic machinery for exceptional points (EPs) of two-level
//! non-Hermitian Hamiltonians H = H₀ + λH₁ under time-reversal symmetry
//! breaking: model construction, closed-form spectra, EP location via
//! three independent routes, coalesced eigenvectors with their phase
//! structure, polarization classification, and branch-point monodromy.

pub mod eplocate;
pub mod epvector;
pub mod error;
pub mod matkit;
pub mod monodromy;
pub mod sample;
pub mod spectral;
pub mod types;

pub use eplocate::{CrossValidation, EPSolution, Route};
pub use epvector::{
    GeneralEpVector, Handedness, PhaseTriple, PolarizationDescriptor, PolarizationKind,
};
pub use error::{Error, Result};
pub use matkit::ModelParams;
pub use monodromy::{DoubleLoopReport, LoopTrace, Permutation};
pub use spectral::{Radical, Spectrum};
pub use types::{Branch, CMatrix2, CVector2};
