//! Sampling harness: stress-tests every bound, probes attainment at the
//! extremal witnesses, and reports empirical suprema with argmax witnesses.
//!
//! Sweeps are deterministic: sample `i` of a sweep draws from an RNG stream
//! keyed by `(seed, i)`, and all reductions (sup, counts, argmax with
//! lowest-index tie-break) are exact and order-independent, so the result is
//! bitwise identical for any worker count. Random sampling alone cannot hit
//! the extremal sets — they are Blaschke products, a null set under any
//! absolutely continuous measure — so every sweep also walks explicit
//! θ-grids over the witness families.

use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::bounds::{
    bound_fs_convex, bound_fs_star, bound_phi1_id, bound_phi2_id, bound_phi_inverse, fekete_szego,
    range_b2, range_b3, range_generic, BoundReport, DiskRange, InverseFunctional, Witness,
};
use crate::families::{forward_coeffs, inverse_coeffs, FamilySpec, PresetParams};
use crate::schur::{sample_schur_shard, schur_to_taylor, taylor_to_schur, SchurSequence};
use crate::{Error, Result};

/// Slack applied to every never-exceed comparison in sweeps.
pub const VIOLATION_TOL: f64 = 1e-9;

/// A named `(φ, ψ)` pair plus preset parameters; resolvable to a
/// [`FamilySpec`] at any jet order.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PresetSpecId {
    pub phi: String,
    pub psi: String,
    pub params: PresetParams,
}

impl PresetSpecId {
    pub fn new(phi: &str, psi: &str) -> Self {
        PresetSpecId {
            phi: phi.to_string(),
            psi: psi.to_string(),
            params: PresetParams::default(),
        }
    }

    pub fn with_params(phi: &str, psi: &str, params: PresetParams) -> Self {
        PresetSpecId {
            phi: phi.to_string(),
            psi: psi.to_string(),
            params,
        }
    }

    pub fn resolve(&self, order: usize) -> Result<FamilySpec> {
        FamilySpec::from_presets(&self.phi, &self.psi, &self.params, order)
    }

    pub fn label(&self) -> String {
        format!("{}/{}", self.phi, self.psi)
    }
}

/// What a sweep measures per sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Functional {
    B2,
    B3,
    Phi1F,
    Phi2F,
    Phi1G,
    Phi2G,
    BodyCoord(usize),
}

impl Functional {
    /// How many Schur parameters one evaluation consumes.
    pub fn gammas_needed(&self) -> usize {
        match self {
            Functional::B2 => 1,
            Functional::B3 | Functional::Phi1F | Functional::Phi1G => 2,
            Functional::Phi2F | Functional::Phi2G => 3,
            Functional::BodyCoord(n) => n.saturating_sub(1),
        }
    }

    fn jet_order(&self) -> usize {
        match self {
            Functional::B2 => 2,
            Functional::B3 | Functional::Phi1F | Functional::Phi1G => 3,
            Functional::Phi2F | Functional::Phi2G => 4,
            Functional::BodyCoord(n) => *n,
        }
    }
}

/// One sweep: preset, functional, and sampling parameters.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SweepConfig {
    pub spec: PresetSpecId,
    pub functional: Functional,
    pub lambda: Complex64,
    pub samples: usize,
    pub radius_cap: f64,
    pub seed: u64,
    pub grid_theta: usize,
}

/// Sweep outcome. Every field except `runtime_ms` is bitwise reproducible
/// for a fixed config, independent of worker count.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SweepResult {
    pub empirical_sup: f64,
    pub bound_value: f64,
    pub violation_count: u64,
    pub skipped_count: u64,
    pub argmax_witness: SchurSequence,
    /// `bound_value − empirical_sup`; negative only within numerical slack.
    pub attainment_gap: f64,
    pub runtime_ms: u128,
}

/// Per-sample record for the optional CSV dump.
#[derive(Debug, Clone)]
pub struct SampleRecord {
    pub index: u64,
    pub gammas: Vec<Complex64>,
    pub value: f64,
    pub contained: bool,
}

enum Envelope {
    /// One fixed disk for every sample.
    Disk(DiskRange),
    /// Disk depends on the sample's leading parameters.
    PerSample,
    /// Scalar never-exceed bound.
    Scalar(f64),
}

struct Evaluator {
    spec: FamilySpec,
    functional: Functional,
    lambda: Complex64,
    envelope: Envelope,
}

struct Evaluation {
    value: f64,
    contained: bool,
    /// Largest modulus the active disk permits (or the scalar bound); the
    /// sample's own value when no disk applies.
    envelope_sup: f64,
}

impl Evaluator {
    fn new(id: &PresetSpecId, functional: Functional, lambda: Complex64) -> Result<Self> {
        let order = functional.jet_order().max(4);
        let spec = id.resolve(order)?;
        let envelope = match functional {
            Functional::B2 => Envelope::Disk(range_b2(&spec)),
            Functional::B3 | Functional::BodyCoord(_) => Envelope::PerSample,
            Functional::Phi1F | Functional::Phi2F | Functional::Phi1G | Functional::Phi2G => {
                Envelope::Scalar(resolve_scalar_bound(id, &spec, functional, lambda)?.value)
            }
        };
        Ok(Evaluator {
            spec,
            functional,
            lambda,
            envelope,
        })
    }

    fn eval(&self, gammas: &SchurSequence) -> Result<Evaluation> {
        let value;
        let mut contained = true;
        let mut envelope_sup;
        match self.functional {
            Functional::B2 => {
                let omega = schur_to_taylor(gammas, 1)?;
                let b2 = inverse_coeffs(&self.spec, &omega, 2)?.coeff(2);
                value = b2.norm();
                let Envelope::Disk(disk) = &self.envelope else {
                    unreachable!()
                };
                contained = disk.contains(b2, VIOLATION_TOL);
                envelope_sup = disk.sup_abs();
            }
            Functional::B3 => {
                let omega = schur_to_taylor(gammas, 2)?;
                let b3 = inverse_coeffs(&self.spec, &omega, 3)?.coeff(3);
                value = b3.norm();
                let g1 = gammas.gamma(1).unwrap_or(Complex64::ZERO);
                let disk = range_b3(&self.spec, g1)?;
                contained = disk.contains(b3, VIOLATION_TOL);
                envelope_sup = disk.sup_abs();
            }
            Functional::BodyCoord(n) => {
                let omega = schur_to_taylor(gammas, n - 1)?;
                let bn = inverse_coeffs(&self.spec, &omega, n)?.coeff(n);
                value = bn.norm();
                let interior = (1..=n.saturating_sub(2))
                    .all(|j| gammas.gamma(j).map(|g| g.norm() < 1.0).unwrap_or(false));
                if interior {
                    let disk = range_generic(&self.spec, gammas, n)?;
                    contained = disk.contains(bn, VIOLATION_TOL);
                    envelope_sup = disk.sup_abs();
                } else {
                    // Boundary prefix: no disk to test; the point itself
                    // extends the recorded envelope.
                    envelope_sup = value;
                }
            }
            Functional::Phi1F | Functional::Phi2F | Functional::Phi1G | Functional::Phi2G => {
                let (n_fs, inverse) = match self.functional {
                    Functional::Phi1F => (1, false),
                    Functional::Phi2F => (2, false),
                    Functional::Phi1G => (1, true),
                    _ => (2, true),
                };
                let order = n_fs + 2;
                let omega = schur_to_taylor(gammas, order - 1)?;
                let jet = if inverse {
                    inverse_coeffs(&self.spec, &omega, order)?
                } else {
                    forward_coeffs(&self.spec, &omega, order)?
                };
                value = fekete_szego(&jet, n_fs, self.lambda)?.norm();
                let Envelope::Scalar(bound) = self.envelope else {
                    unreachable!()
                };
                contained = value <= bound + VIOLATION_TOL;
                envelope_sup = bound;
            }
        }
        if !value.is_finite() {
            return Err(Error::NonFiniteCoefficient { index: 0 });
        }
        if !envelope_sup.is_finite() {
            envelope_sup = value;
        }
        Ok(Evaluation {
            value,
            contained,
            envelope_sup,
        })
    }
}

/// The never-exceed bound matching `(preset, functional, λ)`.
///
/// Identity-`φ` presets use the quasi-subordination bounds; `koebe`
/// (starlike) and `convex` pair with the half-plane target `psi_delta` for
/// the forward `Φ₁` estimate. Anything else has no proved bound here and
/// errors.
pub fn resolve_scalar_bound(
    id: &PresetSpecId,
    spec: &FamilySpec,
    functional: Functional,
    lambda: Complex64,
) -> Result<BoundReport> {
    let unsupported = || Error::UnsupportedCombination {
        detail: format!("no bound for {:?} over {}", functional, id.label()),
    };
    match functional {
        Functional::Phi1F => match id.phi.as_str() {
            "identity" => bound_phi1_id(spec, lambda),
            "koebe" if id.psi == "psi_delta" => bound_fs_star(id.params.delta, lambda),
            "convex" if id.psi == "psi_delta" && id.params.delta == 0.0 => {
                Ok(bound_fs_convex(lambda))
            }
            _ => Err(unsupported()),
        },
        Functional::Phi2F if id.phi == "identity" => bound_phi2_id(spec, lambda),
        Functional::Phi1G if id.phi == "identity" => {
            bound_phi_inverse(spec, InverseFunctional::Phi1, lambda)
        }
        Functional::Phi2G if id.phi == "identity" => {
            bound_phi_inverse(spec, InverseFunctional::Phi2, lambda)
        }
        _ => Err(unsupported()),
    }
}

fn theta_grid(count: usize) -> impl Iterator<Item = f64> {
    (0..count).map(move |k| std::f64::consts::TAU * k as f64 / count as f64)
}

/// Boundary-witness parameter sequences walked by every sweep in addition to
/// the random samples: rotations, squared rotations, and a coarse polar grid
/// of degree-2 Blaschke products. Empty when `grid_theta = 0`.
fn witness_sequences(grid_theta: usize) -> Vec<SchurSequence> {
    let mut out = Vec::new();
    if grid_theta == 0 {
        return out;
    }
    for theta in theta_grid(grid_theta) {
        out.push(SchurSequence::terminated(
            vec![Complex64::from_polar(1.0, theta)],
            1,
        ));
    }
    for theta in theta_grid(grid_theta) {
        out.push(SchurSequence::terminated(
            vec![Complex64::ZERO, Complex64::from_polar(1.0, theta)],
            2,
        ));
    }
    for theta in theta_grid(grid_theta.clamp(1, 72)) {
        for im in 1..=4 {
            let m = im as f64 / 5.0;
            for ia in 0..8 {
                let a = std::f64::consts::TAU * ia as f64 / 8.0;
                out.push(SchurSequence::terminated(
                    vec![
                        Complex64::from_polar(m, a),
                        Complex64::from_polar(1.0, theta),
                    ],
                    2,
                ));
            }
        }
    }
    out
}

#[derive(Clone)]
struct Accumulator {
    sup: f64,
    sup_index: u64,
    sup_witness: Option<SchurSequence>,
    envelope: f64,
    violations: u64,
    skipped: u64,
}

impl Accumulator {
    fn empty() -> Self {
        Accumulator {
            sup: f64::NEG_INFINITY,
            sup_index: u64::MAX,
            sup_witness: None,
            envelope: f64::NEG_INFINITY,
            violations: 0,
            skipped: 0,
        }
    }

    fn absorb(mut self, index: u64, gammas: &SchurSequence, eval: Result<Evaluation>) -> Self {
        match eval {
            Ok(e) => {
                if e.value > self.sup || (e.value == self.sup && index < self.sup_index) {
                    self.sup = e.value;
                    self.sup_index = index;
                    self.sup_witness = Some(gammas.clone());
                }
                self.envelope = self.envelope.max(e.envelope_sup);
                if !e.contained {
                    self.violations += 1;
                }
            }
            Err(_) => self.skipped += 1,
        }
        self
    }

    fn combine(a: Self, b: Self) -> Self {
        let (sup, sup_index, sup_witness) =
            if b.sup > a.sup || (b.sup == a.sup && b.sup_index < a.sup_index) {
                (b.sup, b.sup_index, b.sup_witness)
            } else {
                (a.sup, a.sup_index, a.sup_witness)
            };
        Accumulator {
            sup,
            sup_index,
            sup_witness,
            envelope: a.envelope.max(b.envelope),
            violations: a.violations + b.violations,
            skipped: a.skipped + b.skipped,
        }
    }
}

/// Runs a sweep on the global thread pool.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepResult> {
    run_sweep_inner(cfg, None)
}

/// Runs a sweep on a dedicated pool of `threads` workers. The numeric fields
/// of the result do not depend on the worker count.
pub fn run_sweep_with_threads(cfg: &SweepConfig, threads: usize) -> Result<SweepResult> {
    run_sweep_inner(cfg, Some(threads))
}

fn validate_cfg(cfg: &SweepConfig) -> Result<()> {
    if cfg.samples == 0 {
        return Err(Error::ParameterOutOfRange {
            name: "samples",
            value: 0.0,
            constraint: "samples >= 1",
        });
    }
    if !(cfg.radius_cap > 0.0 && cfg.radius_cap <= 1.0) {
        return Err(Error::ParameterOutOfRange {
            name: "radius_cap",
            value: cfg.radius_cap,
            constraint: "0 < radius_cap <= 1",
        });
    }
    if let Functional::BodyCoord(n) = cfg.functional {
        if n < 2 {
            return Err(Error::ParameterOutOfRange {
                name: "n",
                value: n as f64,
                constraint: "n >= 2",
            });
        }
    }
    Ok(())
}

fn run_sweep_inner(cfg: &SweepConfig, threads: Option<usize>) -> Result<SweepResult> {
    validate_cfg(cfg)?;
    let start = Instant::now();
    let evaluator = Evaluator::new(&cfg.spec, cfg.functional, cfg.lambda)?;
    let n_gammas = cfg.functional.gammas_needed().max(1);

    let sample_one = |i: u64| -> Accumulator {
        let acc = Accumulator::empty();
        match sample_schur_shard(n_gammas, cfg.radius_cap, cfg.seed, i) {
            Ok(gammas) => acc.absorb(i, &gammas, evaluator.eval(&gammas)),
            Err(_) => {
                let mut a = acc;
                a.skipped += 1;
                a
            }
        }
    };

    let run_parallel = || {
        (0..cfg.samples as u64)
            .into_par_iter()
            .fold(Accumulator::empty, |acc, i| {
                Accumulator::combine(acc, sample_one(i))
            })
            .reduce(Accumulator::empty, Accumulator::combine)
    };
    let mut acc = match threads {
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .map_err(|e| Error::UnsupportedCombination {
                    detail: format!("thread pool: {e}"),
                })?;
            pool.install(run_parallel)
        }
        None => run_parallel(),
    };

    // Deterministic boundary grids, indexed after the random samples.
    for (j, seq) in witness_sequences(cfg.grid_theta).into_iter().enumerate() {
        let index = cfg.samples as u64 + j as u64;
        acc = acc.absorb(index, &seq, evaluator.eval(&seq));
    }

    let total = cfg.samples as u64;
    if acc.skipped * 1000 > total {
        return Err(Error::SkipCapExceeded {
            skipped: acc.skipped,
            total,
        });
    }

    let bound_value = match &evaluator.envelope {
        Envelope::Scalar(b) => *b,
        Envelope::Disk(d) => d.sup_abs(),
        Envelope::PerSample => acc.envelope,
    };
    let empirical_sup = if acc.sup.is_finite() { acc.sup } else { 0.0 };
    Ok(SweepResult {
        empirical_sup,
        bound_value,
        violation_count: acc.violations,
        skipped_count: acc.skipped,
        argmax_witness: acc
            .sup_witness
            .unwrap_or_else(|| SchurSequence::from_gammas(vec![])),
        attainment_gap: bound_value - empirical_sup,
        runtime_ms: start.elapsed().as_millis(),
    })
}

/// Like [`run_sweep`] but also returns per-sample records (random samples
/// only, in index order) for CSV export.
pub fn run_sweep_with_records(cfg: &SweepConfig) -> Result<(SweepResult, Vec<SampleRecord>)> {
    let result = run_sweep_inner(cfg, None)?;
    let evaluator = Evaluator::new(&cfg.spec, cfg.functional, cfg.lambda)?;
    let n_gammas = cfg.functional.gammas_needed().max(1);
    let mut records = Vec::with_capacity(cfg.samples);
    for i in 0..cfg.samples as u64 {
        if let Ok(gammas) = sample_schur_shard(n_gammas, cfg.radius_cap, cfg.seed, i) {
            if let Ok(eval) = evaluator.eval(&gammas) {
                records.push(SampleRecord {
                    index: i,
                    gammas: gammas.gammas().to_vec(),
                    value: eval.value,
                    contained: eval.contained,
                });
            }
        }
    }
    Ok((result, records))
}

/// Witness families a caller can probe for attainment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessProbe {
    Rotation,
    SquaredRotation,
    Degree2,
}

/// Outcome of evaluating a functional over one witness family.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct AttainmentRecord {
    pub functional: Functional,
    pub witness: WitnessProbe,
    pub lambda: Complex64,
    pub bound_value: f64,
    pub max_abs: f64,
    /// `(bound − max)/max(1, bound)`.
    pub rel_gap: f64,
    /// `rel_gap ≤ 1e−9`.
    pub attained: bool,
    pub argmax_theta: f64,
}

/// Rejects witness families that the fired bound branch rules out, then
/// evaluates the functional over a θ-grid (plus a γ₁ polar grid for the
/// degree-2 family, including the phase-aligned `γ₂` points for `Φ₁`) and
/// reports the maximum and its gap to the bound.
pub fn check_attainment(
    id: &PresetSpecId,
    functional: Functional,
    lambda: Complex64,
    witness: WitnessProbe,
    grid_theta: usize,
) -> Result<AttainmentRecord> {
    let evaluator = Evaluator::new(id, functional, lambda)?;
    let spec = evaluator.spec.clone();
    let bound_value = match functional {
        Functional::B2 => range_b2(&spec).sup_abs(),
        Functional::B3 => {
            // Global sup over the closed disk of first parameters; the
            // per-γ₁ sup is affine in |γ₁|² along each ray, so a polar
            // grid with both endpoints suffices.
            let mut sup: f64 = 0.0;
            for im in 0..=64 {
                let m = im as f64 / 64.0;
                for theta in theta_grid(512) {
                    let disk = range_b3(&spec, Complex64::from_polar(m, theta))?;
                    sup = sup.max(disk.sup_abs());
                }
            }
            sup
        }
        Functional::BodyCoord(_) => {
            return Err(Error::UnsupportedCombination {
                detail: "body coordinates have no closed-form bound to attain".to_string(),
            })
        }
        _ => resolve_scalar_bound(id, &spec, functional, lambda)?.value,
    };

    reject_inapplicable(&spec, functional, lambda, witness)?;

    let grid_theta = grid_theta.max(1);
    let mut max_abs = f64::NEG_INFINITY;
    let mut argmax_theta = 0.0;
    let mut consider = |theta: f64, seq: &SchurSequence| -> Result<()> {
        let eval = evaluator.eval(seq)?;
        if eval.value > max_abs {
            max_abs = eval.value;
            argmax_theta = theta;
        }
        Ok(())
    };

    match witness {
        WitnessProbe::Rotation => {
            for theta in theta_grid(grid_theta) {
                let seq = SchurSequence::terminated(vec![Complex64::from_polar(1.0, theta)], 1);
                consider(theta, &seq)?;
            }
        }
        WitnessProbe::SquaredRotation => {
            for theta in theta_grid(grid_theta) {
                let seq = SchurSequence::terminated(
                    vec![Complex64::ZERO, Complex64::from_polar(1.0, theta)],
                    2,
                );
                consider(theta, &seq)?;
            }
        }
        WitnessProbe::Degree2 => {
            for theta in theta_grid(grid_theta.clamp(1, 180)) {
                for im in 1..=6 {
                    let m = im as f64 / 7.0;
                    for ia in 0..12 {
                        let a = std::f64::consts::TAU * ia as f64 / 12.0;
                        let g1 = Complex64::from_polar(m, a);
                        let seq = SchurSequence::terminated(
                            vec![g1, Complex64::from_polar(1.0, theta)],
                            2,
                        );
                        consider(theta, &seq)?;
                        if matches!(functional, Functional::Phi1F | Functional::Phi1G) {
                            let lam_fwd = match functional {
                                Functional::Phi1G => Complex64::new(2.0, 0.0) - lambda,
                                _ => lambda,
                            };
                            if let Ok(g2) = crate::bounds::aligned_degree2_gamma2(&spec, lam_fwd, g1)
                            {
                                let seq = SchurSequence::terminated(vec![g1, g2], 2);
                                consider(g2.arg(), &seq)?;
                            }
                        }
                    }
                }
            }
        }
    }

    let rel_gap = (bound_value - max_abs) / 1.0f64.max(bound_value);
    Ok(AttainmentRecord {
        functional,
        witness,
        lambda,
        bound_value,
        max_abs,
        rel_gap,
        attained: rel_gap <= 1e-9,
        argmax_theta,
    })
}

fn reject_inapplicable(
    spec: &FamilySpec,
    functional: Functional,
    lambda: Complex64,
    witness: WitnessProbe,
) -> Result<()> {
    let reject = |why: &str| {
        Err(Error::UnsupportedCombination {
            detail: why.to_string(),
        })
    };
    match functional {
        Functional::B2 => {
            // The b₂ circle needs |γ₁| = 1: only full rotations reach it.
            if witness != WitnessProbe::Rotation {
                return reject("the b2 boundary is reached by rotations only");
            }
        }
        Functional::B3 => {
            if spec.beta(1) == Complex64::ZERO && witness != WitnessProbe::Rotation {
                return reject("with psi'(0) = 0 the b3 circle is reached by rotations only");
            }
        }
        Functional::Phi1F | Functional::Phi1G => {
            let lam = match functional {
                Functional::Phi1G => Complex64::new(2.0, 0.0) - lambda,
                _ => lambda,
            };
            if spec.phi_is_identity() {
                let report = bound_phi1_id(spec, lam)?;
                match report.witness {
                    Some(Witness::Rotation) if witness != WitnessProbe::Rotation => {
                        return reject("this branch is attained by rotations only");
                    }
                    Some(Witness::SquaredRotation) if witness == WitnessProbe::Rotation => {
                        return reject("this branch is attained with gamma1 = 0, not rotations");
                    }
                    _ => {}
                }
            }
        }
        _ => {}
    }
    Ok(())
}

/// Which coefficient a rigidity probe inspects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RigidityCoefficient {
    B2,
    B3,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct RigidityEntry {
    /// Deficiency `1 − |γ|` planted in the probed parameter.
    pub epsilon: f64,
    /// Worst observed distance from the coefficient to its boundary circle.
    pub max_boundary_distance: f64,
    /// Worst recovered deficiency `1 − |γ̂|` of the probed parameter.
    pub max_recovered_deficiency: f64,
}

/// Boundary-approach scaling: recovered parameter deficiency against planted
/// deficiency, with a log-log slope (≈ 1 means the boundary characterization
/// is linearly stable).
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct RigidityReport {
    pub coefficient: RigidityCoefficient,
    pub entries: Vec<RigidityEntry>,
    pub fitted_slope: f64,
    /// Recovered parameter moduli for a well-interior point: none may come
    /// close to the unit circle.
    pub interior_max_modulus: f64,
    pub interior_ok: bool,
}

/// Plants parameters at distance `ε` from the unit circle (`ε` laddered from
/// 1e−2 down to `tolerance`), runs the full pipeline, and verifies the
/// boundary characterization numerically: coefficients land `O(ε)` from
/// their circle and the re-extracted parameter has deficiency `O(ε)` —
/// `|γ₁| → 1` for `b₂`; `|γ₂| → 1` for `b₃` with `γ₁` held away from 1.
pub fn rigidity_probe(
    id: &PresetSpecId,
    coefficient: RigidityCoefficient,
    tolerance: f64,
) -> Result<RigidityReport> {
    if !(tolerance > 0.0 && tolerance < 1e-2) {
        return Err(Error::ParameterOutOfRange {
            name: "tolerance",
            value: tolerance,
            constraint: "0 < tolerance < 1e-2",
        });
    }
    let spec = id.resolve(4)?;
    if spec.beta(1) == Complex64::ZERO {
        return Err(Error::UnsupportedCombination {
            detail: "rigidity probes need psi'(0) != 0".to_string(),
        });
    }

    let mut entries = Vec::new();
    let mut eps = 1e-2;
    while eps >= tolerance * (1.0 - 1e-12) {
        let mut entry = RigidityEntry {
            epsilon: eps,
            max_boundary_distance: 0.0,
            max_recovered_deficiency: 0.0,
        };
        for theta in theta_grid(32) {
            let planted = Complex64::from_polar(1.0 - eps, theta);
            match coefficient {
                RigidityCoefficient::B2 => {
                    let seq = SchurSequence::from_gammas(vec![planted, Complex64::ZERO]);
                    let omega = schur_to_taylor(&seq, 2)?;
                    let b2 = inverse_coeffs(&spec, &omega, 2)?.coeff(2);
                    let disk = range_b2(&spec);
                    entry.max_boundary_distance = entry
                        .max_boundary_distance
                        .max(disk.boundary_distance(b2).abs());
                    let recovered = taylor_to_schur(&omega)?;
                    let deficiency = 1.0 - recovered.gammas()[0].norm();
                    entry.max_recovered_deficiency =
                        entry.max_recovered_deficiency.max(deficiency.abs());
                }
                RigidityCoefficient::B3 => {
                    let g1 = Complex64::from_polar(0.4, 0.7);
                    let seq = SchurSequence::from_gammas(vec![g1, planted, Complex64::ZERO]);
                    let omega = schur_to_taylor(&seq, 3)?;
                    let b3 = inverse_coeffs(&spec, &omega, 3)?.coeff(3);
                    let disk = range_b3(&spec, g1)?;
                    entry.max_boundary_distance = entry
                        .max_boundary_distance
                        .max(disk.boundary_distance(b3).abs());
                    let recovered = taylor_to_schur(&omega)?;
                    let deficiency = 1.0 - recovered.gammas()[1].norm();
                    entry.max_recovered_deficiency =
                        entry.max_recovered_deficiency.max(deficiency.abs());
                }
            }
        }
        entries.push(entry);
        eps /= 10.0;
    }

    // Least-squares slope of ln(deficiency) against ln(ε).
    let points: Vec<(f64, f64)> = entries
        .iter()
        .filter(|e| e.max_recovered_deficiency > 0.0)
        .map(|e| (e.epsilon.ln(), e.max_recovered_deficiency.ln()))
        .collect();
    let fitted_slope = if points.len() >= 2 {
        let n = points.len() as f64;
        let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
        let my = points.iter().map(|p| p.1).sum::<f64>() / n;
        let num: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let den: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
        num / den
    } else {
        f64::NAN
    };

    // An interior point must not pull any parameter near the circle.
    let interior = SchurSequence::from_gammas(vec![
        Complex64::from_polar(0.3, 0.2),
        Complex64::from_polar(0.25, -1.1),
        Complex64::ZERO,
    ]);
    let omega = schur_to_taylor(&interior, 3)?;
    let recovered = taylor_to_schur(&omega)?;
    let interior_max_modulus = recovered
        .gammas()
        .iter()
        .take(2)
        .map(|g| g.norm())
        .fold(0.0f64, f64::max);

    Ok(RigidityReport {
        coefficient,
        entries,
        fitted_slope,
        interior_max_modulus,
        interior_ok: interior_max_modulus < 0.9,
    })
}
