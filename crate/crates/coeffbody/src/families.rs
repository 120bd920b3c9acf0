//! The function families `F = φ · (ψ∘ω)` and their inverses.
//!
//! A pair `(φ, ψ)` with `φ(0) = 0`, `φ'(0) ≠ 0`, `ψ(0) ≠ 0` fixes a family:
//! running over all self-maps `ω` with `ω(0) = 0` produces every member `F`,
//! and every `F` is locally invertible at the origin with `G = F⁻¹`,
//! `G'(0) = b = 1/(φ'(0)ψ(0))`. This module computes the Taylor coefficients
//! of `F` and `G` and the polynomial maps that carry self-map coefficients
//! (or Schur parameters) onto coefficient tuples of `G` — the parametric
//! description of the family's coefficient bodies.

use num_complex::Complex64;

use crate::bell::bell_partial;
use crate::schur::{schur_to_taylor, SchurSequence};
use crate::series::TruncatedSeries;
use crate::{Error, Result};

/// Stable names of the bundled `φ` jets.
pub const PHI_PRESETS: &[&str] = &["identity", "koebe", "convex"];
/// Stable names of the bundled `ψ` jets.
pub const PSI_PRESETS: &[&str] = &["psi_delta", "koebe_squared_quotient", "ex58"];

/// Parameters consumed by the parameterized presets.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PresetParams {
    /// Half-plane offset for `psi_delta`, in `[0, 1)`.
    pub delta: f64,
    /// `ψ(0)` for `ex58`.
    pub beta0: Complex64,
    /// Common early coefficient for `ex58`, nonzero.
    pub beta: Complex64,
}

impl Default for PresetParams {
    fn default() -> Self {
        PresetParams {
            delta: 0.0,
            beta0: Complex64::ONE,
            beta: Complex64::ONE,
        }
    }
}

/// A validated family pair `(φ, ψ)` with the derived constant `b = 1/(α₁β₀)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    phi: TruncatedSeries,
    psi: TruncatedSeries,
    b: Complex64,
}

impl FamilySpec {
    pub fn new(phi: TruncatedSeries, psi: TruncatedSeries) -> Result<Self> {
        if phi.coeff(0) != Complex64::ZERO {
            return Err(Error::PhiConstantTermNonzero);
        }
        if phi.order() < 1 || phi.coeff(1) == Complex64::ZERO {
            return Err(Error::PhiLinearTermZero);
        }
        if psi.coeff(0) == Complex64::ZERO {
            return Err(Error::PsiConstantTermZero);
        }
        let b = Complex64::ONE / (phi.coeff(1) * psi.coeff(0));
        Ok(FamilySpec { phi, psi, b })
    }

    /// Builds a pair from named presets, each to the given jet order.
    pub fn from_presets(
        phi_name: &str,
        psi_name: &str,
        params: &PresetParams,
        order: usize,
    ) -> Result<Self> {
        FamilySpec::new(
            preset_phi(phi_name, order)?,
            preset_psi(psi_name, params, order)?,
        )
    }

    pub fn phi(&self) -> &TruncatedSeries {
        &self.phi
    }

    pub fn psi(&self) -> &TruncatedSeries {
        &self.psi
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    /// `α_k`, zero beyond the stored order.
    pub fn alpha(&self, k: usize) -> Complex64 {
        self.phi.coeff(k)
    }

    /// `β_k`, zero beyond the stored order.
    pub fn beta(&self, k: usize) -> Complex64 {
        self.psi.coeff(k)
    }

    /// `2α₂² − α₁α₃`.
    pub fn alpha_tilde(&self) -> Complex64 {
        2.0 * self.alpha(2) * self.alpha(2) - self.alpha(1) * self.alpha(3)
    }

    /// `2β₁² − β₀β₂`.
    pub fn beta_tilde(&self) -> Complex64 {
        2.0 * self.beta(1) * self.beta(1) - self.beta(0) * self.beta(2)
    }

    /// True when `φ` is exactly the identity jet `z`.
    pub fn phi_is_identity(&self) -> bool {
        self.phi.coeff(1) == Complex64::ONE
            && self
                .phi
                .coeffs()
                .iter()
                .enumerate()
                .all(|(k, &a)| k == 1 || a == Complex64::ZERO)
    }
}

/// Named `φ` jets: `identity` is `z`, `koebe` is `z/(1−z)² = Σ k zᵏ`
/// (starlike), `convex` is `z/(1−z) = Σ zᵏ`.
pub fn preset_phi(name: &str, order: usize) -> Result<TruncatedSeries> {
    let order = order.max(1);
    let mut coeffs = vec![Complex64::ZERO; order + 1];
    match name {
        "identity" => coeffs[1] = Complex64::ONE,
        "koebe" => {
            for (k, c) in coeffs.iter_mut().enumerate().skip(1) {
                *c = Complex64::new(k as f64, 0.0);
            }
        }
        "convex" => {
            for c in coeffs.iter_mut().skip(1) {
                *c = Complex64::ONE;
            }
        }
        _ => {
            return Err(Error::UnknownPreset {
                name: name.to_string(),
            })
        }
    }
    TruncatedSeries::new(coeffs)
}

/// Named `ψ` jets:
///
/// - `psi_delta`: `(1−δ)(1+z)/(1−z) + δ` mapping the disk onto `Re w > δ`;
///   `β₀ = 1`, `β_j = 2(1−δ)` for `j ≥ 1`.
/// - `koebe_squared_quotient`: `((1+z)/(1−z))² = 1 + Σ 4n zⁿ`.
/// - `ex58`: `β₀ + β·z/(1−z)`, i.e. `β_j = β` for every `j ≥ 1`; only
///   `β₀..β₃` enter any reported bound, so the tail choice is immaterial.
pub fn preset_psi(name: &str, params: &PresetParams, order: usize) -> Result<TruncatedSeries> {
    let mut coeffs = vec![Complex64::ZERO; order + 1];
    match name {
        "psi_delta" => {
            if !(0.0..1.0).contains(&params.delta) {
                return Err(Error::ParameterOutOfRange {
                    name: "delta",
                    value: params.delta,
                    constraint: "0 <= delta < 1",
                });
            }
            coeffs[0] = Complex64::ONE;
            for c in coeffs.iter_mut().skip(1) {
                *c = Complex64::new(2.0 * (1.0 - params.delta), 0.0);
            }
        }
        "koebe_squared_quotient" => {
            coeffs[0] = Complex64::ONE;
            for (n, c) in coeffs.iter_mut().enumerate().skip(1) {
                *c = Complex64::new(4.0 * n as f64, 0.0);
            }
        }
        "ex58" => {
            if params.beta0 == Complex64::ZERO {
                return Err(Error::PsiConstantTermZero);
            }
            if params.beta == Complex64::ZERO {
                return Err(Error::ParameterOutOfRange {
                    name: "beta",
                    value: 0.0,
                    constraint: "beta != 0",
                });
            }
            coeffs[0] = params.beta0;
            for c in coeffs.iter_mut().skip(1) {
                *c = params.beta;
            }
        }
        _ => {
            return Err(Error::UnknownPreset {
                name: name.to_string(),
            })
        }
    }
    TruncatedSeries::new(coeffs)
}

fn check_orders(spec: &FamilySpec, omega_order: usize, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ParameterOutOfRange {
            name: "n",
            value: 0.0,
            constraint: "n >= 1",
        });
    }
    if spec.phi.order() < n {
        return Err(Error::InsufficientOrder {
            needed: n,
            got: spec.phi.order(),
        });
    }
    if spec.psi.order() + 1 < n {
        return Err(Error::InsufficientOrder {
            needed: n - 1,
            got: spec.psi.order(),
        });
    }
    if omega_order + 1 < n {
        return Err(Error::InsufficientOrder {
            needed: n - 1,
            got: omega_order,
        });
    }
    Ok(())
}

/// Taylor jet `(0, a₁, …, a_n)` of `F = φ·(ψ∘ω)`:
/// `a₁ = α₁β₀` and, for `p ≥ 2`,
/// `a_p = α_p β₀ + Σ_{m=1}^{p−1} Σ_{k=1}^{m} α_{p−m} β_k B°_{m,k}(c₁,…,c_{m−k+1})`.
///
/// Coefficientwise equal to `multiply(φ, compose(ψ, ω))`, which the tests use
/// as the independent route.
pub fn forward_coeffs(
    spec: &FamilySpec,
    omega: &TruncatedSeries,
    n: usize,
) -> Result<TruncatedSeries> {
    if omega.coeff(0) != Complex64::ZERO {
        return Err(Error::NonzeroConstantTerm {
            value: omega.coeff(0),
        });
    }
    check_orders(spec, omega.order(), n)?;
    let c = &omega.coeffs()[1..];
    let mut coeffs = vec![Complex64::ZERO; n + 1];
    coeffs[1] = spec.alpha(1) * spec.beta(0);
    for p in 2..=n {
        let mut acc = spec.alpha(p) * spec.beta(0);
        for m in 1..p {
            let alpha = spec.alpha(p - m);
            if alpha == Complex64::ZERO {
                continue;
            }
            for k in 1..=m {
                let beta = spec.beta(k);
                if beta == Complex64::ZERO {
                    continue;
                }
                acc += alpha * beta * bell_partial(m, k, &c[..m - k + 1])?;
            }
        }
        coeffs[p] = acc;
    }
    TruncatedSeries::new(coeffs)
}

/// Taylor jet `(0, b, b₂, …, b_n)` of `G = F⁻¹` for `F = φ·(ψ∘ω)`.
pub fn inverse_coeffs(
    spec: &FamilySpec,
    omega: &TruncatedSeries,
    n: usize,
) -> Result<TruncatedSeries> {
    forward_coeffs(spec, omega, n)?.invert()
}

/// The map `(c₁,…,c_{n−1}) ↦ (a₂,…,a_n)` sending self-map coefficients to
/// coefficients of `F`. Triangular: `S_p − α₁β₁c_{p−1}` depends only on
/// `c₁..c_{p−2}`.
pub fn body_map_s(spec: &FamilySpec, c: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = c.len() + 1;
    check_orders(spec, c.len(), n)?;
    let mut omega = vec![Complex64::ZERO; c.len() + 1];
    omega[1..].copy_from_slice(c);
    let jet = forward_coeffs(spec, &TruncatedSeries::new(omega)?, n)?;
    Ok(jet.coeffs()[2..].to_vec())
}

/// The map `(c₁,…,c_{n−1}) ↦ (b₂,…,b_n)` sending self-map coefficients to
/// coefficients of the inverse `G`; the reversion step applied after
/// [`body_map_s`].
pub fn body_map_k(spec: &FamilySpec, c: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = c.len() + 1;
    check_orders(spec, c.len(), n)?;
    let mut omega = vec![Complex64::ZERO; c.len() + 1];
    omega[1..].copy_from_slice(c);
    let jet = inverse_coeffs(spec, &TruncatedSeries::new(omega)?, n)?;
    Ok(jet.coeffs()[2..].to_vec())
}

/// The composite parameterization of the inverse coefficient body:
/// `(γ₁,…,γ_{n−1}) ↦ (b₂,…,b_n)` through the Schur recursion followed by
/// [`body_map_k`].
pub fn body_point(spec: &FamilySpec, gammas: &SchurSequence, n: usize) -> Result<Vec<Complex64>> {
    if n < 2 {
        return Err(Error::ParameterOutOfRange {
            name: "n",
            value: n as f64,
            constraint: "n >= 2",
        });
    }
    let omega = schur_to_taylor(gammas, n - 1)?;
    let jet = inverse_coeffs(spec, &omega, n)?;
    Ok(jet.coeffs()[2..].to_vec())
}
