//! Coefficient machinery for analytic functions built by quasi-subordination
//! and for their inverses.
//!
//! A function `F = φ · (ψ ∘ ω)` is determined by a fixed pair `(φ, ψ)` and a
//! holomorphic self-map `ω` of the unit disk with `ω(0) = 0`. This crate
//! computes, at the level of truncated Taylor jets:
//!
//! - ordinary Bell polynomials and their determinant representation
//!   ([`bell`]),
//! - Schur parameters of `ω` in both directions, with the Blaschke
//!   termination rule ([`schur`]),
//! - the Taylor coefficients of `F` and of `G = F⁻¹`, and the polynomial
//!   maps carrying Schur parameters onto inverse-coefficient tuples
//!   ([`families`]),
//! - closed-form disk ranges for the inverse coefficients `b₂`, `b₃`, …,
//!   and sharp Fekete–Szegő bounds over several classical families
//!   ([`bounds`]),
//! - a deterministic sampling harness that stress-tests every bound and
//!   probes attainment and rigidity ([`verify`]).
//!
//! The `coeffbody` binary exposes all of it with JSON output; the crate's
//! `examples/` directory walks through each capability.

pub mod bell;
pub mod bounds;
pub mod cli;
pub mod families;
pub mod schur;
pub mod series;
pub mod verify;

pub use bounds::{BoundReport, DiskRange};
pub use families::FamilySpec;
pub use schur::SchurSequence;
pub use series::TruncatedSeries;

use num_complex::Complex64;

/// Errors produced by jet arithmetic and the bound/sweep layers.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("series needs at least one coefficient")]
    EmptySeries,
    #[error("coefficient {index} is not finite")]
    NonFiniteCoefficient { index: usize },
    #[error("constant term must vanish, got {value}")]
    NonzeroConstantTerm { value: Complex64 },
    #[error("linear term must be nonzero")]
    ZeroLinearTerm,
    #[error("jet order {got} too small, need at least {needed}")]
    InsufficientOrder { needed: usize, got: usize },
    #[error("Bell index k={k} outside 1..=n for n={n}")]
    BellIndexOutOfRange { n: usize, k: usize },
    #[error("input of length {got} too short, need {needed}")]
    InputTooShort { needed: usize, got: usize },
    #[error("φ must vanish at the origin")]
    PhiConstantTermNonzero,
    #[error("φ'(0) must be nonzero")]
    PhiLinearTermZero,
    #[error("ψ(0) must be nonzero")]
    PsiConstantTermZero,
    #[error("operation requires φ(z) = z")]
    PhiNotIdentity,
    #[error("parameter {name}={value} outside {constraint}")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },
    #[error("|γ| = {modulus} outside the closed unit disk")]
    GammaOutsideClosedDisk { modulus: f64 },
    #[error("γ_{index} has |γ| = {modulus}, need it strictly inside the disk")]
    GammaNotInterior { index: usize, modulus: f64 },
    #[error("need {needed} Schur parameters, got {got}")]
    NotEnoughGammas { needed: usize, got: usize },
    #[error("unknown preset '{name}'")]
    UnknownPreset { name: String },
    #[error("unsupported combination: {detail}")]
    UnsupportedCombination { detail: String },
    #[error("sweep skipped {skipped} of {total} samples, above the 0.1% cap")]
    SkipCapExceeded { skipped: u64, total: u64 },
    #[error("cannot parse '{input}' as a complex number (expected forms like 1.5, -2i, 0.5-1.25i)")]
    ParseComplex { input: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable name, used by the CLI on domain errors.
    pub fn name(&self) -> &'static str {
        match self {
            Error::EmptySeries => "empty_series",
            Error::NonFiniteCoefficient { .. } => "non_finite_coefficient",
            Error::NonzeroConstantTerm { .. } => "nonzero_constant_term",
            Error::ZeroLinearTerm => "zero_linear_term",
            Error::InsufficientOrder { .. } => "insufficient_order",
            Error::BellIndexOutOfRange { .. } => "bell_index_out_of_range",
            Error::InputTooShort { .. } => "input_too_short",
            Error::PhiConstantTermNonzero => "phi_constant_term_nonzero",
            Error::PhiLinearTermZero => "phi_linear_term_zero",
            Error::PsiConstantTermZero => "psi_constant_term_zero",
            Error::PhiNotIdentity => "phi_not_identity",
            Error::ParameterOutOfRange { .. } => "parameter_out_of_range",
            Error::GammaOutsideClosedDisk { .. } => "gamma_outside_closed_disk",
            Error::GammaNotInterior { .. } => "gamma_not_interior",
            Error::NotEnoughGammas { .. } => "not_enough_gammas",
            Error::UnknownPreset { .. } => "unknown_preset",
            Error::UnsupportedCombination { .. } => "unsupported_combination",
            Error::SkipCapExceeded { .. } => "skip_cap_exceeded",
            Error::ParseComplex { .. } => "parse_complex",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
