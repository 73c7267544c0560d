//! Finite-gap KdV and scalar NLS toolkit: exact hierarchies, spectral curves,
//! auxiliary-spectrum flows and the identities tying them together.
// `!(x > 0.0)` guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::needless_range_loop)]

pub mod abel;
pub mod diffpoly;
pub mod dubrovin;
pub mod elliptic;
pub mod kdv;
pub mod nls;
pub mod quad;
pub mod spectral;
pub mod symmetry;

pub use abel::{AbelAccumulator, AbelError};
pub use diffpoly::{DiffPoly, DiffPolyError, GaussianRational, LambdaPoly, Rational};
pub use dubrovin::{AuxiliaryTrajectory, DubrovinError, FieldGrid};
pub use elliptic::{CnoidalParams, EllipticError, ProfileJet};
pub use kdv::{KdvError, SolitonCombination};
pub use nls::{ComplexProfile, EFPoly, NlsError};
pub use spectral::{AuxiliaryPoint, SpectralCurveNumeric, SpectralError};
pub use symmetry::{RationalVector, SymmetryError};

/// Version tag carried by every JSON document.
pub const SCHEMA: &str = "soliton-forge/1";

/// Any error raised by the library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    DiffPoly(#[from] DiffPolyError),
    #[error(transparent)]
    Kdv(#[from] KdvError),
    #[error(transparent)]
    Elliptic(#[from] EllipticError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Dubrovin(#[from] DubrovinError),
    #[error(transparent)]
    Abel(#[from] AbelError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Nls(#[from] NlsError),
}
