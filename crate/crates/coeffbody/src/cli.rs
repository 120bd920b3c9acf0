//! The `coeffbody` command line: one subcommand per library operation
//! family, JSON on stdout by default.
//!
//! Exit codes: 0 success, 1 domain error (precondition violations, reported
//! on stderr with the stable error name), 2 usage error.

use std::io::Write;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::bell::{bell_complete, bell_partial, bell_weighted_det};
use crate::bounds::{
    bound_fs_close_to_convex, bound_fs_convex, bound_fs_star, range_b2, range_b3, range_generic,
};
use crate::families::{forward_coeffs, inverse_coeffs};
use crate::schur::{schur_to_taylor, taylor_to_schur, SchurSequence};
use crate::series::TruncatedSeries;
use crate::verify::{
    check_attainment, resolve_scalar_bound, run_sweep, run_sweep_with_records,
    run_sweep_with_threads, Functional, PresetSpecId, SweepConfig, WitnessProbe,
};
use crate::{Error, Result};

/// Parses complex literals of the forms `1.5`, `-2e-3`, `i`, `-2.5i`,
/// `1.5+0.25i`, `1e2-3e-4i`. Printing with [`format_complex`] round-trips
/// losslessly.
pub fn parse_complex(input: &str) -> Result<Complex64> {
    let s = input.trim();
    let fail = || Error::ParseComplex {
        input: input.to_string(),
    };
    if s.is_empty() {
        return Err(fail());
    }
    let parse_real = |t: &str| t.trim().parse::<f64>().map_err(|_| fail());
    if !s.ends_with('i') {
        return Ok(Complex64::new(parse_real(s)?, 0.0));
    }
    let body = &s[..s.len() - 1];
    // Split at the last sign that is not a leading sign or an exponent sign.
    let bytes = body.as_bytes();
    let mut split = None;
    for idx in (1..bytes.len()).rev() {
        if (bytes[idx] == b'+' || bytes[idx] == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
            split = Some(idx);
            break;
        }
    }
    let imag_part = |t: &str| match t {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        other => parse_real(other),
    };
    match split {
        Some(idx) => Ok(Complex64::new(
            parse_real(&body[..idx])?,
            imag_part(&body[idx..])?,
        )),
        None => Ok(Complex64::new(0.0, imag_part(body)?)),
    }
}

/// Shortest-round-trip rendering in the `a+bi` form accepted by
/// [`parse_complex`]. A vanishing imaginary part prints as a plain real.
pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}i", z.im)
    } else if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

fn parse_complex_list(input: &str) -> Result<Vec<Complex64>> {
    input.split(',').map(parse_complex).collect()
}

fn complex_arg(s: &str) -> std::result::Result<Complex64, String> {
    parse_complex(s).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Parser)]
#[command(
    name = "coeffbody",
    version,
    about = "Coefficient disks, Schur parameters and Fekete-Szego bounds for inverse functions"
)]
struct Cli {
    /// Output format for results on stdout
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct FamilyArgs {
    /// φ preset: identity, koebe, convex
    #[arg(long, default_value = "identity")]
    phi: String,
    /// ψ preset: psi_delta, koebe_squared_quotient, ex58
    #[arg(long)]
    psi: Option<String>,
    /// Shorthand for --psi (φ stays at its default/flag value)
    #[arg(long)]
    preset: Option<String>,
    /// Half-plane offset δ for psi_delta
    #[arg(long, default_value_t = 0.0)]
    delta: f64,
    /// ψ(0) for the ex58 preset
    #[arg(long, value_parser = complex_arg, default_value = "1")]
    beta0: Complex64,
    /// Common coefficient β for the ex58 preset
    #[arg(long, value_parser = complex_arg, default_value = "1")]
    beta: Complex64,
}

impl FamilyArgs {
    fn spec_id(&self) -> Result<PresetSpecId> {
        let psi = self
            .psi
            .clone()
            .or_else(|| self.preset.clone())
            .ok_or_else(|| Error::UnknownPreset {
                name: "(missing --psi/--preset)".to_string(),
            })?;
        Ok(PresetSpecId::with_params(
            &self.phi,
            &psi,
            crate::families::PresetParams {
                delta: self.delta,
                beta0: self.beta0,
                beta: self.beta,
            },
        ))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Ordinary Bell polynomial B°(n,k), or the complete one without --k
    Bell {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        /// Comma-separated complex list x1,x2,…
        #[arg(long)]
        x: String,
    },
    /// Weighted Bell sum against its determinant representation
    DetIdentity {
        #[arg(long)]
        p: usize,
        #[arg(long, value_parser = complex_arg, default_value = "1")]
        w: Complex64,
        /// Comma-separated complex list c1,c2,…
        #[arg(long)]
        c: String,
    },
    /// Schur parameters from a jet, or a jet from parameters
    #[command(group(ArgGroup::new("dir").required(true).args(["gammas", "omega"])))]
    Schur {
        /// Parameters γ1,γ2,… (to Taylor coefficients)
        #[arg(long)]
        gammas: Option<String>,
        /// Jet c0,c1,… with c0 = 0 (to Schur parameters)
        #[arg(long)]
        omega: Option<String>,
        /// Output jet order (defaults to the parameter count)
        #[arg(long)]
        n: Option<usize>,
    },
    /// Taylor coefficients of F = φ·(ψ∘ω)
    #[command(group(ArgGroup::new("src").required(true).args(["gammas", "omega"])))]
    Coeffs {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        gammas: Option<String>,
        #[arg(long)]
        omega: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Taylor coefficients of the inverse G = F⁻¹
    #[command(group(ArgGroup::new("src").required(true).args(["gammas", "omega"])))]
    Inverse {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        gammas: Option<String>,
        #[arg(long)]
        omega: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Disk range of an inverse coefficient
    Range {
        #[command(flatten)]
        family: FamilyArgs,
        /// b2, b3 or bn
        #[arg(long)]
        coeff: String,
        /// First Schur parameter (b3)
        #[arg(long, value_parser = complex_arg, default_value = "0")]
        gamma1: Complex64,
        /// Interior parameters γ1..γ(n−2) (bn)
        #[arg(long)]
        gammas: Option<String>,
        /// Coefficient index for bn
        #[arg(long)]
        n: Option<usize>,
    },
    /// Fekete-Szego bound evaluators
    FsBound {
        #[command(flatten)]
        family: FamilyArgs,
        /// phi1F, phi2F, phi1G, phi2G, star, convex, close-to-convex
        #[arg(long)]
        which: String,
        #[arg(long, value_parser = complex_arg, default_value = "1")]
        lambda: Complex64,
    },
    /// Randomized + θ-grid never-exceed sweep
    Sweep {
        #[command(flatten)]
        family: FamilyArgs,
        /// b2, b3, phi1F, phi2F, phi1G, phi2G, body
        #[arg(long)]
        functional: String,
        /// Coefficient index for the body functional
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_parser = complex_arg, default_value = "1")]
        lambda: Complex64,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 1.0)]
        radius_cap: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 720)]
        grid_theta: usize,
        /// Worker count (default: rayon's choice; results are identical)
        #[arg(long)]
        threads: Option<usize>,
        /// Write per-sample records to this CSV file
        #[arg(long)]
        csv: Option<std::path::PathBuf>,
    },
    /// Evaluate a functional over an extremal witness family
    Attain {
        #[command(flatten)]
        family: FamilyArgs,
        /// b2, b3, phi1F, phi2F, phi1G, phi2G
        #[arg(long)]
        functional: String,
        #[arg(long, value_parser = complex_arg, default_value = "1")]
        lambda: Complex64,
        /// rotation, squared-rotation, degree2
        #[arg(long)]
        witness: String,
        #[arg(long, default_value_t = 720)]
        grid_theta: usize,
    },
}

fn parse_functional(name: &str, n: Option<usize>) -> Result<Functional> {
    match name.to_ascii_lowercase().as_str() {
        "b2" => Ok(Functional::B2),
        "b3" => Ok(Functional::B3),
        "phi1f" => Ok(Functional::Phi1F),
        "phi2f" => Ok(Functional::Phi2F),
        "phi1g" => Ok(Functional::Phi1G),
        "phi2g" => Ok(Functional::Phi2G),
        "body" => {
            let n = n.ok_or(Error::ParameterOutOfRange {
                name: "n",
                value: 0.0,
                constraint: "--n required for the body functional",
            })?;
            Ok(Functional::BodyCoord(n))
        }
        _ => Err(Error::UnsupportedCombination {
            detail: format!("unknown functional '{name}'"),
        }),
    }
}

fn parse_witness(name: &str) -> Result<WitnessProbe> {
    match name.to_ascii_lowercase().as_str() {
        "rotation" => Ok(WitnessProbe::Rotation),
        "squared-rotation" | "squared_rotation" => Ok(WitnessProbe::SquaredRotation),
        "degree2" => Ok(WitnessProbe::Degree2),
        _ => Err(Error::UnsupportedCombination {
            detail: format!("unknown witness '{name}'"),
        }),
    }
}

fn complex_value(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn series_value(s: &TruncatedSeries) -> Value {
    Value::Array(s.coeffs().iter().map(|&c| complex_value(c)).collect())
}

fn parse_omega(input: &str) -> Result<TruncatedSeries> {
    TruncatedSeries::new(parse_complex_list(input)?)
}

fn gamma_seq(input: &str) -> Result<SchurSequence> {
    Ok(SchurSequence::from_gammas(parse_complex_list(input)?))
}

/// Resolve the self-map jet for `coeffs`/`inverse` and the order to use.
fn resolve_omega(
    gammas: &Option<String>,
    omega: &Option<String>,
    n: Option<usize>,
) -> Result<(TruncatedSeries, usize)> {
    if let Some(g) = gammas {
        let seq = gamma_seq(g)?;
        let n = n.unwrap_or(seq.len() + 1);
        let jet = schur_to_taylor(&seq, n.saturating_sub(1).max(1))?;
        Ok((jet, n))
    } else {
        let jet = parse_omega(omega.as_ref().expect("clap group"))?;
        let n = n.unwrap_or(jet.order() + 1);
        Ok((jet, n))
    }
}

fn execute(command: Command) -> Result<Value> {
    match command {
        Command::Bell { n, k, x } => {
            let xs = parse_complex_list(&x)?;
            let value = match k {
                Some(k) => bell_partial(n, k, &xs)?,
                None => bell_complete(n, &xs)?,
            };
            Ok(json!({
                "n": n,
                "k": k,
                "value": complex_value(value),
            }))
        }
        Command::DetIdentity { p, w, c } => {
            let cs = parse_complex_list(&c)?;
            if cs.len() < p {
                return Err(Error::InputTooShort {
                    needed: p,
                    got: cs.len(),
                });
            }
            let det = bell_weighted_det(p, w, &cs)?;
            let mut sum = Complex64::ZERO;
            for k in 1..=p {
                sum += w.powu((k - 1) as u32) * bell_partial(p, k, &cs[..p - k + 1])?;
            }
            Ok(json!({
                "p": p,
                "w": complex_value(w),
                "bell_sum": complex_value(sum),
                "determinant": complex_value(det),
                "abs_difference": (sum - det).norm(),
            }))
        }
        Command::Schur { gammas, omega, n } => {
            if let Some(g) = gammas {
                let seq = gamma_seq(&g)?;
                let n = n.unwrap_or(seq.len());
                let jet = schur_to_taylor(&seq, n)?;
                Ok(json!({ "omega": series_value(&jet) }))
            } else {
                let jet = parse_omega(&omega.expect("clap group"))?;
                let seq = taylor_to_schur(&jet)?;
                Ok(json!({
                    "gammas": seq.gammas().iter().map(|&g| complex_value(g)).collect::<Vec<_>>(),
                    "terminated_at": seq.terminated_at(),
                    "self_map_violation": seq.self_map_violation(1e-9),
                }))
            }
        }
        Command::Coeffs {
            family,
            gammas,
            omega,
            n,
        } => {
            let (jet, n) = resolve_omega(&gammas, &omega, n)?;
            let spec = family.spec_id()?.resolve(n.max(1))?;
            let out = forward_coeffs(&spec, &jet, n)?;
            Ok(json!({ "a": series_value(&out) }))
        }
        Command::Inverse {
            family,
            gammas,
            omega,
            n,
        } => {
            let (jet, n) = resolve_omega(&gammas, &omega, n)?;
            let spec = family.spec_id()?.resolve(n.max(1))?;
            let out = inverse_coeffs(&spec, &jet, n)?;
            Ok(json!({ "b": series_value(&out) }))
        }
        Command::Range {
            family,
            coeff,
            gamma1,
            gammas,
            n,
        } => {
            let id = family.spec_id()?;
            let disk = match coeff.to_ascii_lowercase().as_str() {
                "b2" => range_b2(&id.resolve(4)?),
                "b3" => range_b3(&id.resolve(4)?, gamma1)?,
                "bn" => {
                    let n = n.ok_or(Error::ParameterOutOfRange {
                        name: "n",
                        value: 0.0,
                        constraint: "--n required for bn",
                    })?;
                    let seq = match gammas {
                        Some(g) => gamma_seq(&g)?,
                        None => SchurSequence::from_gammas(vec![]),
                    };
                    range_generic(&id.resolve(n.max(4))?, &seq, n)?
                }
                other => {
                    return Err(Error::UnsupportedCombination {
                        detail: format!("unknown coefficient '{other}'"),
                    })
                }
            };
            Ok(json!({
                "coeff": coeff,
                "center": complex_value(disk.center),
                "radius": disk.radius,
                "sup_abs": disk.sup_abs(),
            }))
        }
        Command::FsBound {
            family,
            which,
            lambda,
        } => {
            let report = match which.to_ascii_lowercase().as_str() {
                "star" => bound_fs_star(family.delta, lambda)?,
                "convex" => bound_fs_convex(lambda),
                "close-to-convex" | "close_to_convex" | "ctc" => {
                    bound_fs_close_to_convex(family.delta, lambda)?
                }
                other => {
                    let functional = parse_functional(other, None)?;
                    let id = family.spec_id()?;
                    resolve_scalar_bound(&id, &id.resolve(4)?, functional, lambda)?
                }
            };
            Ok(json!({
                "which": which,
                "lambda": complex_value(lambda),
                "report": serde_json::to_value(&report).expect("serializable"),
            }))
        }
        Command::Sweep {
            family,
            functional,
            n,
            lambda,
            samples,
            radius_cap,
            seed,
            grid_theta,
            threads,
            csv,
        } => {
            let cfg = SweepConfig {
                spec: family.spec_id()?,
                functional: parse_functional(&functional, n)?,
                lambda,
                samples,
                radius_cap,
                seed,
                grid_theta,
            };
            let result = match (&csv, threads) {
                (Some(path), _) => {
                    let (result, records) = run_sweep_with_records(&cfg)?;
                    let mut file = std::fs::File::create(path)?;
                    let width = cfg.functional.gammas_needed().max(1);
                    let mut header = String::from("index");
                    for j in 1..=width {
                        header.push_str(&format!(",gamma{j}_re,gamma{j}_im"));
                    }
                    header.push_str(",value,contained");
                    writeln!(file, "{header}")?;
                    for r in &records {
                        let mut line = r.index.to_string();
                        for j in 0..width {
                            let g = r.gammas.get(j).copied().unwrap_or(Complex64::ZERO);
                            line.push_str(&format!(",{},{}", g.re, g.im));
                        }
                        line.push_str(&format!(",{},{}", r.value, r.contained));
                        writeln!(file, "{line}")?;
                    }
                    result
                }
                (None, Some(t)) => run_sweep_with_threads(&cfg, t)?,
                (None, None) => run_sweep(&cfg)?,
            };
            Ok(json!({
                "config": serde_json::to_value(&cfg).expect("serializable"),
                "result": serde_json::to_value(&result).expect("serializable"),
            }))
        }
        Command::Attain {
            family,
            functional,
            lambda,
            witness,
            grid_theta,
        } => {
            let record = check_attainment(
                &family.spec_id()?,
                parse_functional(&functional, None)?,
                lambda,
                parse_witness(&witness)?,
                grid_theta,
            )?;
            Ok(serde_json::to_value(&record).expect("serializable"))
        }
    }
}

/// True when a JSON object is a serialized complex number.
fn as_complex(value: &Value) -> Option<Complex64> {
    let obj = value.as_object()?;
    if obj.len() == 2 {
        let re = obj.get("re")?.as_f64()?;
        let im = obj.get("im")?.as_f64()?;
        return Some(Complex64::new(re, im));
    }
    None
}

fn plain_scalar(value: &Value) -> String {
    if let Some(z) = as_complex(value) {
        return format_complex(z);
    }
    match value {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(plain_scalar).collect::<Vec<_>>().join(","),
        other => other.to_string(),
    }
}

fn render_plain(value: &Value, prefix: &str, out: &mut String) {
    match value {
        Value::Object(map) if as_complex(value).is_none() => {
            for (key, v) in map {
                let path = if prefix.is_empty() {
                    key.clone()
                } else {
                    format!("{prefix}.{key}")
                };
                render_plain(v, &path, out);
            }
        }
        other => {
            out.push_str(prefix);
            out.push_str(" = ");
            out.push_str(&plain_scalar(other));
            out.push('\n');
        }
    }
}

fn flatten_csv(value: &Value, prefix: &str, cols: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) if as_complex(value).is_none() => {
            for (key, v) in map {
                let path = if prefix.is_empty() {
                    key.clone()
                } else {
                    format!("{prefix}.{key}")
                };
                flatten_csv(v, &path, cols);
            }
        }
        other => cols.push((prefix.to_string(), plain_scalar(other))),
    }
}

fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("serializable"),
        Format::Plain => {
            let mut out = String::new();
            render_plain(value, "", &mut out);
            out.trim_end().to_string()
        }
        Format::Csv => {
            let mut cols = Vec::new();
            flatten_csv(value, "", &mut cols);
            let header: Vec<_> = cols.iter().map(|(k, _)| k.clone()).collect();
            let row: Vec<_> = cols
                .iter()
                .map(|(_, v)| {
                    if v.contains(',') || v.contains('"') {
                        format!("\"{}\"", v.replace('"', "\"\""))
                    } else {
                        v.clone()
                    }
                })
                .collect();
            format!("{}\n{}", header.join(","), row.join(","))
        }
    }
}

/// Parses `argv` and runs one command. Returns the process exit code; output
/// goes to stdout, diagnostics to stderr.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(value) => {
            println!("{}", render(&value, cli.format));
            0
        }
        Err(e) => {
            eprintln!("error[{}]: {}", e.name(), e);
            1
        }
    }
}
