//! Closed-form coefficient ranges and Fekete–Szegő bounds.
//!
//! Everything here evaluates a formula — no sampling. Disk ranges describe
//! where an inverse coefficient can live given earlier Schur data; the
//! `bound_*` functions return the sharp (or best-proved) constant for a
//! Fekete–Szegő functional `Φ_n(f,λ) = f_n f_{n+2} − λ f_{n+1}²` over a
//! family, together with the branch taken and the extremal witness family
//! when one attains the bound.

use num_complex::Complex64;

use crate::families::{body_point, FamilySpec};
use crate::schur::SchurSequence;
use crate::series::TruncatedSeries;
use crate::{Error, Result};

/// A closed disk `|z − center| ≤ radius` in ℂ.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct DiskRange {
    pub center: Complex64,
    pub radius: f64,
}

impl DiskRange {
    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        (z - self.center).norm() <= self.radius + tol
    }

    /// `radius − |z − center|`: positive inside, ≈0 on the circle.
    pub fn boundary_distance(&self, z: Complex64) -> f64 {
        self.radius - (z - self.center).norm()
    }

    /// Largest modulus over the disk, `|center| + radius`.
    pub fn sup_abs(&self) -> f64 {
        self.center.norm() + self.radius
    }
}

/// Extremal self-map families that can attain a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// `ω(z) = e^{iθ}z`
    Rotation,
    /// `ω(z) = e^{iθ}z²`
    SquaredRotation,
    /// `ω(z) = z(γ₁+γ₂z)/(1+conj(γ₁)γ₂z)` with `|γ₂| = 1` phase-aligned
    Degree2Aligned,
}

/// A bound value plus how it was obtained.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct BoundReport {
    pub value: f64,
    /// Which case of the underlying estimate fired.
    pub branch: String,
    /// Extremal family, present exactly when `sharp` is true.
    pub witness: Option<Witness>,
    /// Whether equality is attained by the witness family.
    pub sharp: bool,
}

/// `Φ_n(f,λ) = f_n f_{n+2} − λ f_{n+1}²`. At `λ = 1` this is the second-order
/// Hankel determinant. Needs the jet through order `n+2`.
pub fn fekete_szego(f: &TruncatedSeries, n: usize, lambda: Complex64) -> Result<Complex64> {
    if f.order() < n + 2 {
        return Err(Error::InsufficientOrder {
            needed: n + 2,
            got: f.order(),
        });
    }
    Ok(f.coeff(n) * f.coeff(n + 2) - lambda * f.coeff(n + 1) * f.coeff(n + 1))
}

/// `max_{x∈[0,1]} (Ax² + 2Bx + C)`: the interior maximum `C − B²/A` when
/// `A+B<0` and `B>0`, otherwise the larger endpoint `max(A+2B+C, C)`.
pub fn quad_max(a: f64, b: f64, c: f64) -> f64 {
    if a + b < 0.0 && b > 0.0 {
        c - b * b / a
    } else {
        (a + 2.0 * b + c).max(c)
    }
}

/// `Φ₀(ψ,λ) = β₀β₂ − λβ₁²`.
fn phi0_psi(spec: &FamilySpec, lambda: Complex64) -> Complex64 {
    spec.beta(0) * spec.beta(2) - lambda * spec.beta(1) * spec.beta(1)
}

/// `Φ₁(ψ,λ) = β₁β₃ − λβ₂²`.
fn phi1_psi(spec: &FamilySpec, lambda: Complex64) -> Complex64 {
    spec.beta(1) * spec.beta(3) - lambda * spec.beta(2) * spec.beta(2)
}

const DELTA_REGION_GUARD: f64 = 1e-12;

/// The exact maximum of `(|1−2λ(1−δ)|−1)x² + 2|1−2λ|x + 1` over `x ∈ [0,1]`,
/// split by membership of `λ` in `{|1−2λ(1−δ)| + |1−2λ| < 1}`. On the 1e−12
/// guard band around the membership boundary both branch formulas are
/// evaluated and the max returned; they agree there in the limit.
fn kappa(delta: f64, lambda: Complex64) -> (f64, &'static str) {
    let u = (Complex64::ONE - 2.0 * lambda * (1.0 - delta)).norm();
    let v = (Complex64::ONE - 2.0 * lambda).norm();
    let s = u + v;
    let outside = u + 2.0 * v;
    let inside = if 1.0 - u > 0.0 {
        1.0 + v * v / (1.0 - u)
    } else {
        outside
    };
    if s < 1.0 - DELTA_REGION_GUARD {
        (inside, "inside_delta_region")
    } else if s > 1.0 + DELTA_REGION_GUARD {
        (outside, "outside_delta_region")
    } else {
        (outside.max(inside), "delta_region_guard_band")
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if !(0.0..1.0).contains(&delta) {
        return Err(Error::ParameterOutOfRange {
            name: "delta",
            value: delta,
            constraint: "0 <= delta < 1",
        });
    }
    Ok(())
}

/// Bound on `|Φ₁(F,λ)|` over `F = φ·(ψ_δ∘ω)` with `φ` univalent starlike:
/// `max(1,|4λ−3|) + 2(1−δ)·κ(λ)`. The starlike hypothesis enters only
/// through `|α₂| ≤ 2`, so no `φ` argument is taken.
pub fn bound_fs_star(delta: f64, lambda: Complex64) -> Result<BoundReport> {
    check_delta(delta)?;
    let (kap, branch) = kappa(delta, lambda);
    let head = 1.0f64.max((4.0 * lambda - Complex64::new(3.0, 0.0)).norm());
    Ok(BoundReport {
        value: head + 2.0 * (1.0 - delta) * kap,
        branch: branch.to_string(),
        witness: None,
        sharp: false,
    })
}

/// Bound on `|Φ₁(F,λ)|` over `F = φ·(ψ₀∘ω)` with `φ` univalent convex
/// (`|α₂| ≤ 1`), split on `|λ − 1/2|` against `1/3`.
pub fn bound_fs_convex(lambda: Complex64) -> BoundReport {
    let a = (lambda - Complex64::ONE).norm();
    let b = (Complex64::ONE - 2.0 * lambda).norm();
    if (lambda - Complex64::new(0.5, 0.0)).norm() < 1.0 / 3.0 {
        BoundReport {
            value: a + 2.0 + b * b / (2.0 * (1.0 - b)),
            branch: "lambda_near_half".to_string(),
            witness: None,
            sharp: false,
        }
    } else {
        BoundReport {
            value: a + 4.0 * b,
            branch: "lambda_far_from_half".to_string(),
            witness: None,
            sharp: false,
        }
    }
}

/// Bound on `|Φ₁(f,λ)|` over normalized close-to-convex `f` with
/// `Re(zf'(z)/φ(z)) > δ` for some starlike `φ`:
/// `max(1/3, |1−λ|) + (2(1−δ)/3)·κ(3λ/4)`.
pub fn bound_fs_close_to_convex(delta: f64, lambda: Complex64) -> Result<BoundReport> {
    check_delta(delta)?;
    let (kap, branch) = kappa(delta, 0.75 * lambda);
    let head = (1.0f64 / 3.0).max((Complex64::ONE - lambda).norm());
    Ok(BoundReport {
        value: head + 2.0 * (1.0 - delta) / 3.0 * kap,
        branch: branch.to_string(),
        witness: None,
        sharp: false,
    })
}

/// Sharp bound `|Φ₁(F,λ)| ≤ max(|β₀β₁|, |β₀β₂ − λβ₁²|)` over `F = z·(ψ∘ω)`.
///
/// Equality cases: `β₁ = 0` → rotations; `β₀β₂ = λβ₁²` → squared rotations;
/// otherwise the degree-2 Blaschke family with the phase-aligned `γ₂` from
/// [`aligned_degree2_gamma2`].
pub fn bound_phi1_id(spec: &FamilySpec, lambda: Complex64) -> Result<BoundReport> {
    if !spec.phi_is_identity() {
        return Err(Error::PhiNotIdentity);
    }
    if spec.psi().order() < 2 {
        return Err(Error::InsufficientOrder {
            needed: 2,
            got: spec.psi().order(),
        });
    }
    let t1 = (spec.beta(0) * spec.beta(1)).norm();
    let p0 = phi0_psi(spec, lambda);
    let scale =
        (spec.beta(0) * spec.beta(2)).norm() + (lambda * spec.beta(1) * spec.beta(1)).norm();
    let (branch, witness) = if spec.beta(1) == Complex64::ZERO {
        ("beta1_zero", Witness::Rotation)
    } else if p0.norm() <= 1e-12 * scale {
        ("phi0_vanishes", Witness::SquaredRotation)
    } else {
        ("generic", Witness::Degree2Aligned)
    };
    Ok(BoundReport {
        value: t1.max(p0.norm()),
        branch: branch.to_string(),
        witness: Some(witness),
        sharp: true,
    })
}

/// The unimodular `γ₂` that aligns the two addends of
/// `Φ₁(F,λ) = (β₀β₂−λβ₁²)γ₁² + β₀β₁γ₂(1−|γ₁|²)` to a common argument:
/// `γ₂ = (β₀β₂−λβ₁²)γ₁²·|β₀β₁| / (β₀β₁·|(β₀β₂−λβ₁²)γ₁²|)`.
pub fn aligned_degree2_gamma2(
    spec: &FamilySpec,
    lambda: Complex64,
    gamma1: Complex64,
) -> Result<Complex64> {
    let bb = spec.beta(0) * spec.beta(1);
    let p0 = phi0_psi(spec, lambda);
    let num = p0 * gamma1 * gamma1;
    if bb == Complex64::ZERO || num == Complex64::ZERO {
        return Err(Error::UnsupportedCombination {
            detail: "phase alignment needs β₁ ≠ 0, β₀β₂ ≠ λβ₁² and γ₁ ≠ 0".to_string(),
        });
    }
    Ok(num * bb.norm() / (bb * num.norm()))
}

/// Bound on `|Φ₂(F,λ)|` over `F = z·(ψ∘ω)`:
/// `max(|Φ₁(ψ,λ)|, |1−λ||β₁β₂| + C/2, C)` with `C = |β₁|²max(1,|λ|)` — the
/// endpoint majorant of the quadratic in `x = |γ₁|²` behind the estimate,
/// valid for every complex `λ`.
///
/// For `β₁ = β₂ = β₃` a sharper constant `|β₁|²·max(|λ|, |1−λ|, 1)` is
/// sometimes quoted, but it fails off the real axis (e.g. at `λ = 1/3 + i`
/// the true supremum exceeds it), so it is not used here.
pub fn bound_phi2_id(spec: &FamilySpec, lambda: Complex64) -> Result<BoundReport> {
    if !spec.phi_is_identity() {
        return Err(Error::PhiNotIdentity);
    }
    if spec.psi().order() < 3 {
        return Err(Error::InsufficientOrder {
            needed: 3,
            got: spec.psi().order(),
        });
    }
    let c = spec.beta(1).norm_sqr() * 1.0f64.max(lambda.norm());
    let mid = ((Complex64::ONE - lambda) * spec.beta(1) * spec.beta(2)).norm() + 0.5 * c;
    let value = phi1_psi(spec, lambda).norm().max(mid).max(c);
    Ok(BoundReport {
        value,
        branch: "three_term_max".to_string(),
        witness: None,
        sharp: false,
    })
}

/// Which inverse-side Fekete–Szegő functional to bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InverseFunctional {
    Phi1,
    Phi2,
}

/// Bounds for `|Φ_n(G,λ)|` over the inverses `G = F⁻¹`, `F = z·(ψ∘ω)`.
///
/// `Phi1` transfers the sharp forward bound through
/// `Φ₁(G,λ) = −b⁶Φ₁(F,2−λ)`: value `|β₀|⁻⁶·max(|β₀β₁|, |Φ₀(ψ,2−λ)|)`,
/// still sharp. `Phi2` uses `|β₁²/β₀⁸|·max(C,D,E)` with `C = max(1,|λ|)`,
/// `D = |Φ₁(ψ,λ)/β₁² + (4λ−5)Φ₀(ψ)/β₀²|`,
/// `E = |4λ−5||β₁/β₀|/2 + |1−λ||β₂/β₁| + C/2`; for `β₁ = 0` those quotients
/// are undefined and the composite transfer bound of
/// [`bound_phi2_inverse_composite`] is returned instead.
pub fn bound_phi_inverse(
    spec: &FamilySpec,
    which: InverseFunctional,
    lambda: Complex64,
) -> Result<BoundReport> {
    if !spec.phi_is_identity() {
        return Err(Error::PhiNotIdentity);
    }
    match which {
        InverseFunctional::Phi1 => {
            let inner = bound_phi1_id(spec, Complex64::new(2.0, 0.0) - lambda)?;
            Ok(BoundReport {
                value: inner.value / spec.beta(0).norm().powi(6),
                branch: format!("transfer_{}", inner.branch),
                witness: inner.witness,
                sharp: true,
            })
        }
        InverseFunctional::Phi2 => {
            if spec.beta(1) == Complex64::ZERO {
                let mut report = bound_phi2_inverse_composite(spec, lambda)?;
                report.branch = "composite_beta1_zero".to_string();
                return Ok(report);
            }
            let b0 = spec.beta(0);
            let b1 = spec.beta(1);
            let b2 = spec.beta(2);
            let four_l_five = 4.0 * lambda - Complex64::new(5.0, 0.0);
            let c = 1.0f64.max(lambda.norm());
            let d = (phi1_psi(spec, lambda) / (b1 * b1)
                + four_l_five * phi0_psi(spec, Complex64::ONE) / (b0 * b0))
                .norm();
            let e = 0.5 * four_l_five.norm() * (b1 / b0).norm()
                + (Complex64::ONE - lambda).norm() * (b2 / b1).norm()
                + 0.5 * c;
            let scale = b1.norm_sqr() / b0.norm().powi(8);
            Ok(BoundReport {
                value: scale * c.max(d).max(e),
                branch: "cde_max".to_string(),
                witness: None,
                sharp: false,
            })
        }
    }
}

/// The transfer-chain bound
/// `|Φ₂(G,λ)| ≤ |β₀|⁻⁸·bound|Φ₂(F,λ)| + |4λ−5||β₁|²|β₀|⁻¹⁰·max(|β₀β₁|,|Φ₀(ψ)|)`,
/// valid for every ψ; usually looser than the `max(C,D,E)` form.
pub fn bound_phi2_inverse_composite(spec: &FamilySpec, lambda: Complex64) -> Result<BoundReport> {
    let forward = bound_phi2_id(spec, lambda)?;
    let head = forward.value / spec.beta(0).norm().powi(8);
    let tail = (4.0 * lambda - Complex64::new(5.0, 0.0)).norm() * spec.beta(1).norm_sqr()
        / spec.beta(0).norm().powi(10)
        * (spec.beta(0) * spec.beta(1))
            .norm()
            .max(phi0_psi(spec, Complex64::ONE).norm());
    Ok(BoundReport {
        value: head + tail,
        branch: "composite_transfer".to_string(),
        witness: None,
        sharp: false,
    })
}

/// Disk range of the second inverse coefficient:
/// `b₂ ∈ D(−α₂β₀b³, |α₁β₁||b|³)`. Degenerates to a point when `β₁ = 0`.
pub fn range_b2(spec: &FamilySpec) -> DiskRange {
    let b = spec.b();
    DiskRange {
        center: -spec.alpha(2) * spec.beta(0) * b.powu(3),
        radius: (spec.alpha(1) * spec.beta(1)).norm() * b.norm().powi(3),
    }
}

/// Disk range of `b₃` given the first Schur parameter `γ₁`.
///
/// With `β₁ ≠ 0` the center is
/// `b⁵β₀²(2α₂²−α₁α₃) + 3α₂β₁γ₁b⁴ + b⁵α₁²(2β₁²−β₀β₂)γ₁²` and the radius
/// `|b|⁴|α₁β₁|(1−|γ₁|²)`. With `β₁ = 0` the `γ₂` direction collapses: the
/// whole range over `γ₁` is the disk of radius `|b|⁴|α₁β₂|` about
/// `b⁵β₀²(2α₂²−α₁α₃)` (a point when also `β₂ = 0`), and `γ₁` is ignored.
pub fn range_b3(spec: &FamilySpec, gamma1: Complex64) -> Result<DiskRange> {
    let modulus = gamma1.norm();
    if modulus > 1.0 + 1e-12 {
        return Err(Error::GammaOutsideClosedDisk { modulus });
    }
    let b = spec.b();
    let base = b.powu(5) * spec.beta(0) * spec.beta(0) * spec.alpha_tilde();
    if spec.beta(1) != Complex64::ZERO {
        let center = base
            + 3.0 * spec.alpha(2) * spec.beta(1) * gamma1 * b.powu(4)
            + b.powu(5) * spec.alpha(1) * spec.alpha(1) * spec.beta_tilde() * gamma1 * gamma1;
        let radius = b.norm().powi(4)
            * (spec.alpha(1) * spec.beta(1)).norm()
            * (1.0 - gamma1.norm_sqr()).max(0.0);
        Ok(DiskRange { center, radius })
    } else {
        Ok(DiskRange {
            center: base,
            radius: b.norm().powi(4) * (spec.alpha(1) * spec.beta(2)).norm(),
        })
    }
}

/// Disk range of `b_n` given interior parameters `γ₁..γ_{n−2}`, obtained from
/// the affine dependence of `b_n` on the last free parameter `γ_{n−1}`:
/// center at `γ_{n−1} = 0`, radius from the probe `γ_{n−1} = 1`.
///
/// For `n = 2, 3` (and `β₁ ≠ 0`) this reproduces [`range_b2`] / [`range_b3`].
pub fn range_generic(spec: &FamilySpec, gammas: &SchurSequence, n: usize) -> Result<DiskRange> {
    if n < 2 {
        return Err(Error::ParameterOutOfRange {
            name: "n",
            value: n as f64,
            constraint: "n >= 2",
        });
    }
    let mut prefix = Vec::with_capacity(n - 1);
    for j in 1..=n - 2 {
        let g = gammas.gamma(j).ok_or(Error::NotEnoughGammas {
            needed: n - 2,
            got: gammas.len(),
        })?;
        if g.norm() >= 1.0 {
            return Err(Error::GammaNotInterior {
                index: j,
                modulus: g.norm(),
            });
        }
        prefix.push(g);
    }

    let mut at_zero = prefix.clone();
    at_zero.push(Complex64::ZERO);
    let center = body_point(spec, &SchurSequence::from_gammas(at_zero), n)?[n - 2];

    let mut at_one = prefix;
    at_one.push(Complex64::ONE);
    let edge = body_point(spec, &SchurSequence::from_gammas(at_one), n)?[n - 2];

    Ok(DiskRange {
        center,
        radius: (edge - center).norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::PresetParams;
    use crate::schur::{blaschke_witness, sample_schur, schur_to_taylor, BlaschkeKind};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn id_spec(psi: &str, order: usize) -> FamilySpec {
        FamilySpec::from_presets("identity", psi, &PresetParams::default(), order).unwrap()
    }

    #[test]
    fn fekete_szego_values() {
        let f = TruncatedSeries::from_real(&[1.0, 1.0, 1.0]).unwrap();
        assert_eq!(
            fekete_szego(&f, 0, Complex64::ONE).unwrap(),
            Complex64::ZERO
        );
        let f = TruncatedSeries::from_real(&[0.0, 1.0, 1.0, 0.0]).unwrap();
        for lambda in [c(0.3, 0.0), c(1.0, -2.0)] {
            let got = fekete_szego(&f, 1, lambda).unwrap();
            assert!((got + lambda).norm() < 1e-15);
        }
        let psi0 = id_spec("psi_delta", 4);
        let lam = c(0.7, 0.2);
        let got = fekete_szego(psi0.psi(), 0, lam).unwrap();
        assert!((got - (c(2.0, 0.0) - 4.0 * lam)).norm() < 1e-15);
        assert!(fekete_szego(&f, 2, Complex64::ONE).is_err());
    }

    #[test]
    fn quad_max_cases() {
        assert_eq!(quad_max(-1.0, 0.0, 1.0), 1.0);
        assert_eq!(quad_max(-2.0, 1.0, 0.0), 0.5);
        assert_eq!(quad_max(1.0, 0.0, 0.0), 1.0);
    }

    #[test]
    fn quad_max_dominated_by_three_terms() {
        let mut state = 0x1234u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 6.0 - 3.0
        };
        for _ in 0..500 {
            let (a, b, cc) = (next(), next(), next());
            let q = quad_max(a, b, cc);
            let cap = (a + 2.0 * b + cc).max(b + cc).max(cc);
            assert!(q <= cap + 1e-12, "A={a} B={b} C={cc}: {q} > {cap}");
            // And it really is the max over a fine grid.
            let grid = (0..=1000)
                .map(|i| {
                    let x = i as f64 / 1000.0;
                    a * x * x + 2.0 * b * x + cc
                })
                .fold(f64::MIN, f64::max);
            assert!(q >= grid - 1e-9);
            assert!(q <= grid + 1e-3 + 1e-9);
        }
    }

    #[test]
    fn star_bound_examples() {
        // λ = 3/4 sits exactly on the membership boundary (both branch
        // formulas give 3/2), so the guard band fires and still yields 4.
        let r = bound_fs_star(0.0, c(0.75, 0.0)).unwrap();
        assert!((r.value - 4.0).abs() < 1e-12);
        assert_eq!(r.branch, "delta_region_guard_band");

        let r = bound_fs_star(0.0, c(0.8, 0.0)).unwrap();
        assert_eq!(r.branch, "outside_delta_region");
        assert!((r.value - (1.0 + 2.0 * (0.6 + 1.2))).abs() < 1e-12);

        let r = bound_fs_star(0.0, c(0.5, 0.0)).unwrap();
        assert!((r.value - 3.0).abs() < 1e-12);
        assert_eq!(r.branch, "inside_delta_region");

        let lam = c(1.3, -0.4);
        let r = bound_fs_star(1.0 - 1e-11, lam).unwrap();
        let head = 1.0f64.max((4.0 * lam - c(3.0, 0.0)).norm());
        assert!((r.value - head).abs() < 1e-9);
    }

    #[test]
    fn convex_bound_examples() {
        let r = bound_fs_convex(c(0.5, 0.0));
        assert!((r.value - 2.5).abs() < 1e-12);
        assert_eq!(r.branch, "lambda_near_half");
        let r = bound_fs_convex(c(1.0, 0.0));
        assert!((r.value - 4.0).abs() < 1e-12);
        assert_eq!(r.branch, "lambda_far_from_half");
        // Continuity across the split at |λ−1/2| = 1/3.
        let lo = bound_fs_convex(c(0.5 + 1.0 / 3.0 - 1e-9, 0.0)).value;
        let hi = bound_fs_convex(c(0.5 + 1.0 / 3.0 + 1e-9, 0.0)).value;
        assert!((lo - hi).abs() < 1e-6);
    }

    #[test]
    fn close_to_convex_examples() {
        let r = bound_fs_close_to_convex(1.0 - 1e-12, c(1.0, 0.0)).unwrap();
        assert!((r.value - 1.0 / 3.0).abs() < 1e-9);
        let r = bound_fs_close_to_convex(0.0, c(0.0, 0.0)).unwrap();
        assert!((r.value - 3.0).abs() < 1e-12);
        let r = bound_fs_close_to_convex(0.0, c(4.0 / 3.0, 0.0)).unwrap();
        assert!((r.value - 7.0 / 3.0).abs() < 1e-12);
        assert!(bound_fs_close_to_convex(1.0, Complex64::ONE).is_err());
    }

    #[test]
    fn phi1_forward_bound() {
        let psi0 = id_spec("psi_delta", 4);
        let r = bound_phi1_id(&psi0, Complex64::ONE).unwrap();
        assert!((r.value - 2.0).abs() < 1e-14);
        assert!(r.sharp);
        assert_eq!(r.witness, Some(Witness::Degree2Aligned));

        // β₁ = β₂ = β₃ = β: value = |β|·max(|β₀|, |β₀−λβ|)
        let ex = FamilySpec::from_presets(
            "identity",
            "ex58",
            &PresetParams {
                beta0: c(1.2, -0.4),
                beta: c(0.8, 0.6),
                ..Default::default()
            },
            4,
        )
        .unwrap();
        for lam in [c(0.0, 0.0), c(1.7, 0.3), c(-0.5, -1.0)] {
            let r = bound_phi1_id(&ex, lam).unwrap();
            let beta0 = ex.beta(0);
            let beta = ex.beta(1);
            let want = beta.norm() * beta0.norm().max((beta0 - lam * beta).norm());
            assert!((r.value - want).abs() < 1e-12);
        }

        // β₁ = 0 forces the rotation witness and value |β₀β₂|.
        let psi = TruncatedSeries::from_real(&[1.0, 0.0, 3.0, 1.0]).unwrap();
        let spec = FamilySpec::new(TruncatedSeries::identity(4), psi).unwrap();
        let r = bound_phi1_id(&spec, c(0.4, 0.1)).unwrap();
        assert_eq!(r.witness, Some(Witness::Rotation));
        assert!((r.value - 3.0).abs() < 1e-14);
    }

    #[test]
    fn phi1_alignment_construction() {
        // The constructed γ₂ is unimodular and makes |t₁ + t₂| = |t₁| + |t₂|.
        let spec = id_spec("koebe_squared_quotient", 4);
        let lam = c(0.65, -0.35);
        for (g_re, g_im) in [(0.5, 0.2), (-0.3, 0.6), (0.1, -0.8)] {
            let gamma1 = c(g_re, g_im);
            let gamma2 = aligned_degree2_gamma2(&spec, lam, gamma1).unwrap();
            assert!((gamma2.norm() - 1.0).abs() < 1e-14);
            let t1 = (spec.beta(0) * spec.beta(2) - lam * spec.beta(1) * spec.beta(1))
                * gamma1
                * gamma1;
            let t2 = spec.beta(0) * spec.beta(1) * gamma2 * (1.0 - gamma1.norm_sqr());
            assert!(((t1 + t2).norm() - (t1.norm() + t2.norm())).abs() < 1e-10);
        }
        assert!(aligned_degree2_gamma2(&spec, lam, Complex64::ZERO).is_err());
    }

    #[test]
    fn phi2_forward_bound() {
        // Non-equal early coefficients: three-term max.
        let ksq = id_spec("koebe_squared_quotient", 4);
        let r = bound_phi2_id(&ksq, Complex64::ONE).unwrap();
        // Φ₁(ψ,1) = 48−64 = −16, C = 16, middle = C/2.
        assert!((r.value - 16.0).abs() < 1e-12);
        assert_eq!(r.branch, "three_term_max");

        // Equal early coefficients: max(|β²(1−λ)|, |1−λ||β|² + C/2, C).
        let ex = id_spec("ex58", 4);
        for lam in [c(0.0, 0.0), c(0.5, 0.0), c(3.0, 1.0), c(-1.0, -1.0)] {
            let r = bound_phi2_id(&ex, lam).unwrap();
            let cc = 1.0f64.max(lam.norm());
            let want = (Complex64::ONE - lam)
                .norm()
                .max((Complex64::ONE - lam).norm() + 0.5 * cc)
                .max(cc);
            assert!((r.value - want).abs() < 1e-12, "λ={lam}");
        }

        // β₁ = 0 leaves only the Φ₁(ψ,λ) term, |λ||β₂|².
        let psi = TruncatedSeries::from_real(&[1.0, 0.0, 2.0, 0.0]).unwrap();
        let spec = FamilySpec::new(TruncatedSeries::identity(4), psi).unwrap();
        let lam = c(0.8, -0.2);
        let r = bound_phi2_id(&spec, lam).unwrap();
        assert!((r.value - lam.norm() * 4.0).abs() < 1e-12);
    }

    #[test]
    fn inverse_bounds_match_known_constants() {
        let ksq = id_spec("koebe_squared_quotient", 4);
        for k in 0..35 {
            let lam = c(
                -1.0 + 4.0 * (k % 7) as f64 / 6.0,
                -1.0 + (k / 7) as f64 * 0.5,
            );
            // |Φ₁(G,λ)| ≤ 8·max(1/2, |2λ−3|)
            let r = bound_phi_inverse(&ksq, InverseFunctional::Phi1, lam).unwrap();
            let want = 8.0 * 0.5f64.max((2.0 * lam - c(3.0, 0.0)).norm());
            assert!((r.value - want).abs() < 1e-12, "λ={lam}");
            assert!(r.sharp);

            // |Φ₂(G,λ)| ≤ 16·max{C, |43−36λ|, E}
            let r = bound_phi_inverse(&ksq, InverseFunctional::Phi2, lam).unwrap();
            let cc = 1.0f64.max(lam.norm());
            let d = (c(43.0, 0.0) - 36.0 * lam).norm();
            let e = 2.0 * (4.0 * lam - c(5.0, 0.0)).norm()
                + 2.0 * (Complex64::ONE - lam).norm()
                + 0.5 * cc;
            let want = 16.0 * cc.max(d).max(e);
            assert!((r.value - want).abs() < 1e-12, "λ={lam}");
        }

        // λ = 2 on the half-plane family: max(2, |Φ₀(ψ,0)|) = 2.
        let psi0 = id_spec("psi_delta", 4);
        let r = bound_phi_inverse(&psi0, InverseFunctional::Phi1, c(2.0, 0.0)).unwrap();
        assert!((r.value - 2.0).abs() < 1e-14);

        // β₁ = 0 routes Phi2 through the composite transfer chain.
        let psi = TruncatedSeries::from_real(&[1.0, 0.0, 2.0, 1.0]).unwrap();
        let spec = FamilySpec::new(TruncatedSeries::identity(4), psi).unwrap();
        let lam = c(1.5, 0.5);
        let r = bound_phi_inverse(&spec, InverseFunctional::Phi2, lam).unwrap();
        assert_eq!(r.branch, "composite_beta1_zero");
        let want = bound_phi2_id(&spec, lam).unwrap().value;
        assert!((r.value - want).abs() < 1e-12);
    }

    #[test]
    fn b2_range_presets() {
        let spec = FamilySpec::from_presets("koebe", "psi_delta", &Default::default(), 3).unwrap();
        let disk = range_b2(&spec);
        assert!((disk.center - c(-2.0, 0.0)).norm() < 1e-14);
        assert!((disk.radius - 2.0).abs() < 1e-14);

        let spec = id_spec("koebe_squared_quotient", 3);
        let disk = range_b2(&spec);
        assert!(disk.center.norm() < 1e-14);
        assert!((disk.radius - 4.0).abs() < 1e-14);
        assert!((disk.sup_abs() - 4.0).abs() < 1e-14);

        // β₁ = 0 pins b₂ exactly.
        let psi = TruncatedSeries::from_real(&[1.0, 0.0, 1.0, 0.0]).unwrap();
        let spec = FamilySpec::new(preset_phi_for_test("koebe", 3), psi).unwrap();
        assert_eq!(range_b2(&spec).radius, 0.0);
    }

    fn preset_phi_for_test(name: &str, order: usize) -> TruncatedSeries {
        crate::families::preset_phi(name, order).unwrap()
    }

    #[test]
    fn b3_range_branches() {
        // Quotient-square family: center 24γ₁², radius 4(1−|γ₁|²).
        let spec = id_spec("koebe_squared_quotient", 4);
        let g1 = c(0.35, -0.2);
        let disk = range_b3(&spec, g1).unwrap();
        assert!((disk.center - 24.0 * g1 * g1).norm() < 1e-12);
        assert!((disk.radius - 4.0 * (1.0 - g1.norm_sqr())).abs() < 1e-12);

        // Unimodular γ₁ collapses the radius.
        let disk = range_b3(&spec, Complex64::from_polar(1.0, 0.3)).unwrap();
        assert!(disk.radius.abs() < 1e-12);

        // β₁ = 0, β₂ ≠ 0: fixed disk, γ₁ ignored.
        let psi = TruncatedSeries::from_real(&[1.0, 0.0, 2.0, 1.0]).unwrap();
        let spec2 = FamilySpec::new(preset_phi_for_test("koebe", 4), psi).unwrap();
        let d1 = range_b3(&spec2, c(0.0, 0.0)).unwrap();
        let d2 = range_b3(&spec2, c(0.7, 0.1)).unwrap();
        assert_eq!(d1, d2);
        assert!((d1.radius - 2.0).abs() < 1e-12); // |b|⁴|α₁β₂| = 1·1·2

        // β₁ = β₂ = 0 pins b₃ = b⁵β₀²(2α₂²−α₁α₃).
        let psi = TruncatedSeries::from_real(&[1.0, 0.0, 0.0, 5.0]).unwrap();
        let spec3 = FamilySpec::new(preset_phi_for_test("koebe", 4), psi).unwrap();
        let d = range_b3(&spec3, c(0.3, 0.3)).unwrap();
        assert_eq!(d.radius, 0.0);
        assert!((d.center - spec3.b().powu(5) * spec3.alpha_tilde()).norm() < 1e-12);

        assert!(range_b3(&spec, c(1.2, 0.0)).is_err());
    }

    #[test]
    fn b3_sup_reproduces_equal_coefficient_family() {
        // sup over γ₁ of |center|+radius = (|β|/|β₀|⁵)·max(|β₀|, |2β−β₀|),
        // affine in |γ₁|², so the extremes sit at |γ₁| ∈ {0, 1}.
        for (beta0, beta) in [(c(1.0, 0.0), c(2.0, 0.0)), (c(1.3, -0.5), c(0.4, 0.3))] {
            let spec = FamilySpec::from_presets(
                "identity",
                "ex58",
                &PresetParams {
                    beta0,
                    beta,
                    ..Default::default()
                },
                4,
            )
            .unwrap();
            let want = beta.norm() / beta0.norm().powi(5)
                * beta0.norm().max((2.0 * beta - beta0).norm());
            let mut sup: f64 = 0.0;
            for i in 0..=10 {
                let m = i as f64 / 10.0;
                for k in 0..24 {
                    let g1 = Complex64::from_polar(m, std::f64::consts::TAU * k as f64 / 24.0);
                    sup = sup.max(range_b3(&spec, g1).unwrap().sup_abs());
                }
            }
            assert!((sup - want).abs() < 1e-10, "{sup} vs {want}");
        }
    }

    #[test]
    fn generic_range_agrees_with_closed_forms() {
        for (phi_name, psi_name) in [
            ("koebe", "psi_delta"),
            ("convex", "psi_delta"),
            ("identity", "koebe_squared_quotient"),
            ("identity", "ex58"),
        ] {
            let spec =
                FamilySpec::from_presets(phi_name, psi_name, &Default::default(), 5).unwrap();
            // n = 2 needs no parameters.
            let empty = SchurSequence::from_gammas(vec![]);
            let generic = range_generic(&spec, &empty, 2).unwrap();
            let closed = range_b2(&spec);
            assert!((generic.center - closed.center).norm() < 1e-10);
            assert!((generic.radius - closed.radius).abs() < 1e-10);

            for seed in 0..40u64 {
                let g1 = sample_schur(1, 0.97, seed).unwrap().gammas()[0];
                let generic =
                    range_generic(&spec, &SchurSequence::from_gammas(vec![g1]), 3).unwrap();
                let closed = range_b3(&spec, g1).unwrap();
                assert!(
                    (generic.center - closed.center).norm() < 1e-10,
                    "{phi_name}/{psi_name} seed {seed}"
                );
                assert!((generic.radius - closed.radius).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn generic_range_contains_samples_n4() {
        let spec =
            FamilySpec::from_presets("identity", "psi_delta", &Default::default(), 5).unwrap();
        let prefix = SchurSequence::from_gammas(vec![Complex64::ZERO, Complex64::ZERO]);
        let disk = range_generic(&spec, &prefix, 4).unwrap();
        assert!(disk.radius.is_finite());
        for seed in 0..200u64 {
            let g3 = sample_schur(1, 1.0, seed).unwrap().gammas()[0];
            let gam = SchurSequence::from_gammas(vec![Complex64::ZERO, Complex64::ZERO, g3]);
            let b4 = body_point(&spec, &gam, 4).unwrap()[2];
            assert!(disk.contains(b4, 1e-9), "seed {seed}");
        }
        // Interior requirement on the prefix.
        let edge = SchurSequence::from_gammas(vec![Complex64::ONE, Complex64::ZERO]);
        assert!(matches!(
            range_generic(&spec, &edge, 4),
            Err(Error::GammaNotInterior { .. })
        ));
    }

    #[test]
    fn degree2_witnesses_land_on_the_b3_circle() {
        for (phi_name, psi_name) in
            [("koebe", "psi_delta"), ("identity", "koebe_squared_quotient")]
        {
            let spec =
                FamilySpec::from_presets(phi_name, psi_name, &Default::default(), 4).unwrap();
            for seed in 0..20u64 {
                let g1 = sample_schur(1, 0.9, seed).unwrap().gammas()[0];
                let theta = 0.31 * seed as f64;
                let omega =
                    blaschke_witness(BlaschkeKind::Degree2 { gamma1: g1, theta }, 3).unwrap();
                let b3 = crate::families::inverse_coeffs(&spec, &omega, 3)
                    .unwrap()
                    .coeff(3);
                let disk = range_b3(&spec, g1).unwrap();
                assert!(
                    disk.boundary_distance(b3).abs() < 1e-9,
                    "{phi_name}/{psi_name} seed {seed}: {}",
                    disk.boundary_distance(b3)
                );
            }
        }
    }

    #[test]
    fn containment_of_sampled_coefficients() {
        for (phi_name, psi_name) in [("koebe", "psi_delta"), ("identity", "ex58")] {
            let spec =
                FamilySpec::from_presets(phi_name, psi_name, &Default::default(), 4).unwrap();
            let b2_disk = range_b2(&spec);
            for seed in 0..500u64 {
                let gam = sample_schur(2, 1.0, seed).unwrap();
                let omega = schur_to_taylor(&gam, 2).unwrap();
                let inv = crate::families::inverse_coeffs(&spec, &omega, 3).unwrap();
                assert!(b2_disk.contains(inv.coeff(2), 1e-12));
                let b3_disk = range_b3(&spec, gam.gammas()[0]).unwrap();
                assert!(b3_disk.contains(inv.coeff(3), 1e-12));
            }
        }
    }
}
