//! Plane-wave dispersion: matrices, root solving and labeled branches.

mod branch;
mod matrix;
mod roots;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use branch::{
    default_k_grid, default_k_max, detect_asymptote, linear_k_grid, sample_branches, BranchPoint,
    BranchSet, DispersionBranch, MonotonicityWarning, DEFAULT_ASYMPTOTE_TOLERANCE, DEFAULT_SAMPLES,
    MIN_BRANCH_SAMPLES,
};
pub use matrix::{
    build_longitudinal_matrix, build_transverse_matrix, determinant_coefficients,
    transverse_matrix_for, DispersionMatrix, Polarization, WaveFamily,
};
pub use roots::{coupled_omegas, uncoupled_omega, IMAG_TOLERANCE, NEGATIVE_CLAMP};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DispersionError {
    #[error("{family:?} determinant at k = {k} rad/m has a complex root pair (s = {re} ± {im}i)")]
    ComplexRootPair {
        family: WaveFamily,
        k: f64,
        re: f64,
        im: f64,
    },
    #[error("{family:?} determinant at k = {k} rad/m has a negative squared frequency {value}")]
    NegativeSquaredFrequency {
        family: WaveFamily,
        k: f64,
        value: f64,
    },
    #[error("{family:?} determinant at k = {k} rad/m could not be solved")]
    RootExtraction { family: WaveFamily, k: f64 },
    #[error("uncoupled branches have closed forms; use uncoupled_omega")]
    NotCoupled,
    #[error("wavenumber must be finite and non-negative, got {0}")]
    InvalidWavenumber(f64),
    #[error("k-grid must start at 0 and increase strictly")]
    InvalidGrid,
    #[error("asymptote detection needs at least {needed} samples, got {got}")]
    InsufficientSamples { needed: usize, got: usize },
}

/// Branch names, following the usual acoustic/optic naming of each family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BranchLabel {
    LA,
    LO1,
    LO2,
    TA,
    TO1,
    TO2,
    /// Rotational optic, carried by `P_[23]`.
    TRO,
    /// Shear optic, carried by `P_(23)`.
    TSO,
    /// Constant-volume optic, carried by `P^V`.
    TCVO,
}

impl BranchLabel {
    /// Sampling order: longitudinal, transverse, then uncoupled.
    pub const ALL: [BranchLabel; 9] = [
        BranchLabel::LA,
        BranchLabel::LO1,
        BranchLabel::LO2,
        BranchLabel::TA,
        BranchLabel::TO1,
        BranchLabel::TO2,
        BranchLabel::TRO,
        BranchLabel::TSO,
        BranchLabel::TCVO,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BranchLabel::LA => "LA",
            BranchLabel::LO1 => "LO1",
            BranchLabel::LO2 => "LO2",
            BranchLabel::TA => "TA",
            BranchLabel::TO1 => "TO1",
            BranchLabel::TO2 => "TO2",
            BranchLabel::TRO => "TRO",
            BranchLabel::TSO => "TSO",
            BranchLabel::TCVO => "TCVO",
        }
    }

    pub fn family(self) -> WaveFamily {
        match self {
            BranchLabel::LA | BranchLabel::LO1 | BranchLabel::LO2 => WaveFamily::Longitudinal,
            BranchLabel::TA | BranchLabel::TO1 | BranchLabel::TO2 => WaveFamily::Transverse,
            BranchLabel::TRO | BranchLabel::TSO | BranchLabel::TCVO => WaveFamily::Uncoupled,
        }
    }

    /// Number of physical polarizations the branch stands for.
    pub fn multiplicity(self) -> u8 {
        match self.family() {
            WaveFamily::Transverse => 2,
            _ => 1,
        }
    }

    pub fn is_acoustic(self) -> bool {
        matches!(self, BranchLabel::LA | BranchLabel::TA)
    }
}

impl fmt::Display for BranchLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}
