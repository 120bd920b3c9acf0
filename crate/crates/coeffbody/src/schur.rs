//! Schur parameters of disk self-maps vanishing at the origin.
//!
//! For `ω` with `ω(0) = 0`, iterating the Schur transform
//! `(σω)(z) = (1/z)·(ω(z) − ω(0))/(1 − conj(ω(0))·ω(z))` produces the
//! parameter sequence `γ_n = (σⁿω)(0)`. Always `|γ_j| ≤ 1`; if `|γ_k| = 1`
//! the sequence stops there and `ω` is a Blaschke product of order `k`.
//! Both directions are computed at jet level: each σ step consumes one
//! order of the jet, so `n` parameters require a jet of order at least `n`.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::series::TruncatedSeries;
use crate::{Error, Result};

/// Modulus slack deciding `|γ_k| = 1` termination.
pub const EPS_BLASCHKE: f64 = 1e-10;

/// Schur parameters `γ₁..γ_m` (`γ₀ = 0` is implicit).
///
/// `terminated_at = Some(k)` records that `|γ_k| = 1` was reached; nothing
/// is stored past `k`, and every later parameter is zero by convention.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SchurSequence {
    gammas: Vec<Complex64>,
    terminated_at: Option<usize>,
}

impl SchurSequence {
    /// An untruncated sequence (no Blaschke termination).
    pub fn from_gammas(gammas: Vec<Complex64>) -> Self {
        SchurSequence {
            gammas,
            terminated_at: None,
        }
    }

    /// A sequence ending with a unimodular parameter at 1-based index `at`;
    /// everything past `at` is dropped and implicitly zero.
    pub fn terminated(mut gammas: Vec<Complex64>, at: usize) -> Self {
        gammas.truncate(at);
        debug_assert!(
            !gammas.is_empty() && (gammas[at.min(gammas.len()) - 1].norm() - 1.0).abs() < 1e-9,
            "termination index must carry a unimodular parameter"
        );
        SchurSequence {
            terminated_at: Some(gammas.len()),
            gammas,
        }
    }

    pub fn gammas(&self) -> &[Complex64] {
        &self.gammas
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }

    pub fn terminated_at(&self) -> Option<usize> {
        self.terminated_at
    }

    /// `γ_j` (1-based). Zero past a termination point, `None` when the
    /// sequence simply carries no information that far.
    pub fn gamma(&self, j: usize) -> Option<Complex64> {
        if j == 0 {
            return Some(Complex64::ZERO);
        }
        if j <= self.gammas.len() {
            return Some(self.gammas[j - 1]);
        }
        self.terminated_at.map(|_| Complex64::ZERO)
    }

    /// First index whose parameter lies outside the closed unit disk by more
    /// than `eps` — a certificate that the source was not a disk self-map.
    pub fn self_map_violation(&self, eps: f64) -> Option<usize> {
        self.gammas
            .iter()
            .position(|g| g.norm() > 1.0 + eps)
            .map(|i| i + 1)
    }
}

/// Coefficients `(c₁,…,c_n)` of the self-map with Schur parameters `γ`,
/// through the recursion
/// `F₁(z₁) = z₁`,
/// `F_m(z₁,…,z_m) = (1−|z₁|²)·F_{m−1}(z₂,…,z_m)
///                  − conj(z₁)·Σ_{k=2}^{m−1} F_{m−k}(z₂,…,z_{m−k+1})·F_k(z₁,…,z_k)`.
///
/// Returns the jet `0 + c₁z + … + c_n zⁿ`. Needs `n` parameters (a
/// terminated sequence is zero-padded).
pub fn schur_to_taylor(gammas: &SchurSequence, n: usize) -> Result<TruncatedSeries> {
    if n == 0 {
        return Err(Error::ParameterOutOfRange {
            name: "n",
            value: 0.0,
            constraint: "n >= 1",
        });
    }
    let g: Vec<Complex64> = (1..=n)
        .map(|j| {
            gammas.gamma(j).ok_or(Error::NotEnoughGammas {
                needed: n,
                got: gammas.len(),
            })
        })
        .collect::<Result<_>>()?;

    // table[s][m] = F_m(γ_{s+1}, …, γ_{s+m}); valid for s + m ≤ n.
    let mut table = vec![vec![Complex64::ZERO; n + 1]; n];
    for s in 0..n {
        table[s][1] = g[s];
    }
    for m in 2..=n {
        for s in 0..=n - m {
            let head = g[s];
            let mut value = (1.0 - head.norm_sqr()) * table[s + 1][m - 1];
            let mut cross = Complex64::ZERO;
            for k in 2..m {
                cross += table[s + 1][m - k] * table[s][k];
            }
            value -= head.conj() * cross;
            table[s][m] = value;
        }
    }

    let mut coeffs = vec![Complex64::ZERO; n + 1];
    for m in 1..=n {
        coeffs[m] = table[0][m];
    }
    TruncatedSeries::new(coeffs)
}

/// Schur parameters of `ω` recovered by iterating the σ transform on jets.
///
/// A jet of order `n` yields up to `n` parameters; the iteration stops early
/// when `|γ_k| ≥ 1 − EPS_BLASCHKE` (recorded in `terminated_at`). Parameters
/// beyond the unit disk are not an error — inspect
/// [`SchurSequence::self_map_violation`] for the certificate.
pub fn taylor_to_schur(omega: &TruncatedSeries) -> Result<SchurSequence> {
    if omega.coeff(0) != Complex64::ZERO {
        return Err(Error::NonzeroConstantTerm {
            value: omega.coeff(0),
        });
    }
    let n = omega.order();
    let mut gammas = Vec::with_capacity(n);
    let mut terminated_at = None;
    // Jet of σ^j ω shifted down by z: starts as ω/z.
    let mut jet: Vec<Complex64> = omega.coeffs()[1..].to_vec();
    for index in 1..=n {
        let gamma = jet[0];
        gammas.push(gamma);
        if gamma.norm() >= 1.0 - EPS_BLASCHKE {
            terminated_at = Some(index);
            break;
        }
        if jet.len() == 1 {
            break;
        }
        // σ step: (jet − γ)/(z·(1 − conj(γ)·jet)), one order shorter.
        let len = jet.len() - 1;
        let num = TruncatedSeries::new(jet[1..].to_vec())?;
        let mut den = vec![Complex64::ZERO; len];
        den[0] = Complex64::new(1.0 - gamma.norm_sqr(), 0.0);
        for (j, d) in den.iter_mut().enumerate().skip(1) {
            *d = -gamma.conj() * jet[j];
        }
        let den = TruncatedSeries::new(den)?;
        jet = num.divide(&den)?.coeffs().to_vec();
    }
    Ok(SchurSequence {
        gammas,
        terminated_at,
    })
}

/// `n` independent parameters, uniform in squared modulus (area-uniform) and
/// uniform in argument on the disk of radius `radius_cap`. Deterministic for
/// a fixed seed; see [`sample_schur_shard`] for splitting sweeps.
pub fn sample_schur(n: usize, radius_cap: f64, rng_seed: u64) -> Result<SchurSequence> {
    sample_schur_shard(n, radius_cap, rng_seed, 0)
}

/// Like [`sample_schur`] but on an independent stream per `shard`, so a
/// sweep over sample indices can run on any number of workers and still
/// draw identical values per index.
pub fn sample_schur_shard(
    n: usize,
    radius_cap: f64,
    rng_seed: u64,
    shard: u64,
) -> Result<SchurSequence> {
    if n == 0 {
        return Err(Error::ParameterOutOfRange {
            name: "n",
            value: 0.0,
            constraint: "n >= 1",
        });
    }
    if !(radius_cap > 0.0 && radius_cap <= 1.0) {
        return Err(Error::ParameterOutOfRange {
            name: "radius_cap",
            value: radius_cap,
            constraint: "0 < radius_cap <= 1",
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    rng.set_stream(shard);
    let gammas = (0..n)
        .map(|_| {
            let r = radius_cap * rng.gen::<f64>().sqrt();
            let theta = std::f64::consts::TAU * rng.gen::<f64>();
            Complex64::from_polar(r, theta)
        })
        .collect();
    Ok(SchurSequence::from_gammas(gammas))
}

/// The Blaschke-product self-maps that realize every boundary/rigidity case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BlaschkeKind {
    /// `ω(z) = e^{iθ} z`
    Rotation { theta: f64 },
    /// `ω(z) = e^{iθ} z²`
    SquaredRotation { theta: f64 },
    /// `ω(z) = z·(γ₁ + z e^{iθ})/(1 + conj(γ₁) z e^{iθ})`, `|γ₁| < 1`
    Degree2 { gamma1: Complex64, theta: f64 },
}

/// Jet of the chosen Blaschke product to the requested order.
pub fn blaschke_witness(kind: BlaschkeKind, order: usize) -> Result<TruncatedSeries> {
    match kind {
        BlaschkeKind::Rotation { theta } => {
            if order < 1 {
                return Err(Error::InsufficientOrder {
                    needed: 1,
                    got: order,
                });
            }
            let mut coeffs = vec![Complex64::ZERO; order + 1];
            coeffs[1] = Complex64::from_polar(1.0, theta);
            TruncatedSeries::new(coeffs)
        }
        BlaschkeKind::SquaredRotation { theta } => {
            if order < 2 {
                return Err(Error::InsufficientOrder {
                    needed: 2,
                    got: order,
                });
            }
            let mut coeffs = vec![Complex64::ZERO; order + 1];
            coeffs[2] = Complex64::from_polar(1.0, theta);
            TruncatedSeries::new(coeffs)
        }
        BlaschkeKind::Degree2 { gamma1, theta } => {
            if gamma1.norm() >= 1.0 {
                return Err(Error::GammaOutsideClosedDisk {
                    modulus: gamma1.norm(),
                });
            }
            if order < 1 {
                return Err(Error::InsufficientOrder {
                    needed: 1,
                    got: order,
                });
            }
            let u = Complex64::from_polar(1.0, theta);
            let inner_order = order - 1;
            let mut num = vec![Complex64::ZERO; inner_order + 1];
            num[0] = gamma1;
            if inner_order >= 1 {
                num[1] = u;
            }
            let mut den = vec![Complex64::ZERO; inner_order + 1];
            den[0] = Complex64::ONE;
            if inner_order >= 1 {
                den[1] = gamma1.conj() * u;
            }
            let quotient = TruncatedSeries::new(num)?.divide(&TruncatedSeries::new(den)?)?;
            let mut coeffs = vec![Complex64::ZERO; order + 1];
            for j in 0..=inner_order {
                coeffs[j + 1] = quotient.coeff(j);
            }
            TruncatedSeries::new(coeffs)
        }
    }
}
