//! Command-line surface for `fusion-mult`.
//!
//! Every command prints one JSON envelope (or a CSV table with `--format csv`)
//! to stdout. Exit codes: 0 success (whatever the verdict), 2 usage error,
//! 3 validation or schema error, 4 numeric failure.

pub mod output;
pub mod schema;
pub mod text;

use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fusion_mult::builders::build_tlj_ainf_exact;
use fusion_mult::fusion::invariants::validate_ring;
use fusion_mult::multiplier::convolve;
use fusion_mult::scalar::parse_rational;
use fusion_mult::spectral::{
    amenability_report, norm_estimate, DEFAULT_AMENABILITY_TOL, DEFAULT_POWER_TOL,
};
use fusion_mult::tlj::{
    admissibility_from_moments, chebyshev_v_table, l1_range_check, moments, omega_bound, plancherel_pair,
    reduced_norm, to_polynomial, universal_norm, AdmissibilityVerdict, QuadratureParams, DEFAULT_PSD_TOL,
};
use fusion_mult::{Complex64, FusionError, FusionRing, Label, Multiplier, Rational, RealScalar};
use serde_json::{json, Value};

use crate::output::{format_f64, to_json_string, Envelope, Table};
use crate::schema::{read_multiplier_spec, read_ring_spec, MultiplierSpec, RingSpec, SpecScalar};
use crate::text::{parse_element, parse_label_list};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;

const ADMISSIBLE_SEMANTICS: &str = "admissible(N) certifies the moment, shifted and localizing Hankel \
matrices PSD up to level N only; rejected is conclusive";

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            kind: "usage",
            message: message.into(),
        }
    }
}

impl From<FusionError> for CliError {
    fn from(e: FusionError) -> Self {
        let (code, kind) = match &e {
            FusionError::Numeric { .. } => (EXIT_NUMERIC, "numeric"),
            FusionError::InexactDimension { .. } => (EXIT_NUMERIC, "numeric"),
            FusionError::Parse { .. } => (EXIT_VALIDATION, "schema"),
            _ => (EXIT_VALIDATION, "validation"),
        };
        CliError {
            code,
            kind,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "fusion-mult", version, about = "Fusion rings, cp-multipliers and TLJ representation theory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fusion ring data
    #[command(subcommand)]
    Ring(RingCommand),
    /// Multiplier evaluation and convolution
    #[command(subcommand)]
    Mult(MultCommand),
    /// Temperley-Lieb-Jones A_∞ analysis
    #[command(subcommand)]
    Tlj(TljCommand),
    /// Regular representation norms and amenability
    #[command(subcommand)]
    Spectral(SpectralCommand),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct RingArg {
    /// Ring spec: a JSON file path or inline JSON
    #[arg(long)]
    ring: String,
}

#[derive(Subcommand, Debug)]
enum RingCommand {
    /// Labels, dimensions, conjugates and the invariant check
    Describe {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long, default_value_t = 3)]
        level: usize,
    },
    /// Decompose a ⊗ b
    Fuse {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Dimensions of all labels up to a level
    Dims {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long, default_value_t = 3)]
        level: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Subcommand, Debug)]
enum MultCommand {
    /// Evaluate a multiplier on labels
    Eval {
        #[command(flatten)]
        ring: RingArg,
        /// Multiplier spec: a JSON file path or inline JSON
        #[arg(long)]
        mult: String,
        /// Labels separated by `;` (default: all labels up to --level)
        #[arg(long, allow_hyphen_values = true)]
        labels: Option<String>,
        #[arg(long, default_value_t = 3)]
        level: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Evaluate the convolution φ_{x,y}
    Convolve {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        mult: String,
        /// Element `c@label; c@label; ...` (or `X` on TLJ rings)
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, allow_hyphen_values = true)]
        labels: Option<String>,
        #[arg(long, default_value_t = 3)]
        level: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args, Debug)]
struct TljMultArgs {
    /// Index λ⁻¹ ≥ 4 (decimal or p/q, read exactly)
    #[arg(long, value_parser = exact_number)]
    lambda_inv: Rational,
    /// Point multiplier φ_t
    #[arg(long, value_parser = exact_number, allow_hyphen_values = true, conflicts_with = "mult")]
    t: Option<Rational>,
    /// Multiplier spec (file path or inline JSON)
    #[arg(long)]
    mult: Option<String>,
    /// Use floating point instead of exact rationals
    #[arg(long)]
    float: bool,
}

#[derive(Subcommand, Debug)]
enum TljCommand {
    /// Truncated moment test for complete positivity
    Admissible {
        #[command(flatten)]
        args: TljMultArgs,
        #[arg(long, default_value_t = 8)]
        level: usize,
        #[arg(long, default_value_t = DEFAULT_PSD_TOL)]
        tol: f64,
    },
    /// Moments m_k = ω_φ(X^k)
    Moments {
        #[command(flatten)]
        args: TljMultArgs,
        /// Highest moment index
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// ∫ V_n V_m dμ for the Plancherel measure on [0, 4]
    Plancherel {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 16)]
        initial_nodes: usize,
        #[arg(long, default_value_t = 16)]
        max_doublings: u32,
    },
    /// Polynomial, universal, reduced and ω-bound norms of an element
    Norms {
        #[arg(long, value_parser = exact_number)]
        lambda_inv: Rational,
        /// Element `c@label; ...` or `X`
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Scan |V_n(t)| ≤ V_n(λ⁻¹)
    L1range {
        #[arg(long, value_parser = exact_number)]
        lambda_inv: Rational,
        #[arg(long, value_parser = exact_number, allow_hyphen_values = true)]
        t: Rational,
        #[arg(long, default_value_t = 200)]
        n_max: usize,
    },
}

#[derive(Subcommand, Debug)]
enum SpectralCommand {
    /// Lower bounds for ‖Θ₀(x)‖ from truncations
    Norm {
        #[command(flatten)]
        ring: RingArg,
        /// Element `c@label; ...`, a label, or `X`
        #[arg(long, allow_hyphen_values = true)]
        generator: String,
        #[arg(long, default_value_t = 100)]
        truncation: usize,
        #[arg(long)]
        max_iterations: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_POWER_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Compare ‖Θ₀(x)‖ with d(x)
    Amenability {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long, allow_hyphen_values = true)]
        generator: String,
        #[arg(long, default_value_t = 100)]
        truncation: usize,
        #[arg(long, default_value_t = DEFAULT_AMENABILITY_TOL)]
        tol: f64,
    },
}

fn exact_number(text: &str) -> Result<Rational, String> {
    parse_rational(text).ok_or_else(|| format!("`{text}` is not a decimal or rational number"))
}

fn read_source(source: &str) -> CliResult<String> {
    let trimmed = source.trim_start();
    if trimmed.starts_with('{') {
        return Ok(source.to_string());
    }
    std::fs::read_to_string(Path::new(source)).map_err(|e| CliError::usage(format!("cannot read {source}: {e}")))
}

fn load_ring(arg: &RingArg) -> CliResult<(RingSpec, FusionRing)> {
    let spec = read_ring_spec(&read_source(&arg.ring)?)?;
    let ring = spec.build()?;
    Ok((spec, ring))
}

fn load_mult(source: &str) -> CliResult<MultiplierSpec> {
    Ok(read_multiplier_spec(&read_source(source)?)?)
}

fn exact_json(r: &Rational) -> Value {
    json!({"value": RealScalar::to_f64(r), "exact": r.to_string()})
}

fn dimension_json(ring: &FusionRing, label: &Label) -> CliResult<Value> {
    let d = ring.dim(label)?;
    Ok(match d.as_exact() {
        Some(r) => exact_json(r),
        None => json!({"value": d.value()}),
    })
}

fn labels_for(ring: &FusionRing, labels: &Option<String>, level: usize) -> CliResult<Vec<Label>> {
    Ok(match labels {
        Some(text) => parse_label_list(ring, text)?,
        None => ring.labels_up_to_level(level),
    })
}

/// Runs the CLI on `args` (including the program name), writing the report to
/// `out` and diagnostics to `err`. Returns the exit status.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let target: &mut dyn Write = if code == EXIT_OK { out } else { err };
            let _ = target.write_all(text.as_bytes());
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(e) => {
            let report = json!({"error": {"kind": e.kind, "message": e.message, "exit_code": e.code}});
            let _ = err.write_all(to_json_string(&report).as_bytes());
            e.code
        }
    }
}

fn dispatch(command: Command) -> CliResult<String> {
    match command {
        Command::Ring(c) => ring_command(c),
        Command::Mult(c) => mult_command(c),
        Command::Tlj(c) => tlj_command(c),
        Command::Spectral(c) => spectral_command(c),
    }
}

fn ring_command(command: RingCommand) -> CliResult<String> {
    match command {
        RingCommand::Describe { ring, level } => {
            let (spec, ring) = load_ring(&ring)?;
            let report = validate_ring(&ring, level, level.min(2))?;
            let mut labels = Vec::new();
            for l in ring.labels_up_to_level(level) {
                labels.push(json!({
                    "label": l.to_string(),
                    "level": ring.level(&l)?,
                    "dimension": dimension_json(&ring, &l)?,
                    "conjugate": ring.conjugate(&l)?.to_string(),
                }));
            }
            let result = json!({
                "name": ring.name(),
                "unit": ring.unit().to_string(),
                "finite": ring.is_finite(),
                "label_count": ring.label_count(),
                "labels": labels,
                "invariants": {
                    "checked_labels": report.labels,
                    "checked_pairs": report.pairs,
                    "checked_triples": report.triples,
                    "status": "passed",
                },
            });
            let env = Envelope::new("ring describe", json!({"ring": spec.to_value(true), "level": level}), result);
            Ok(to_json_string(&env))
        }
        RingCommand::Fuse { ring, a, b } => {
            let (spec, ring) = load_ring(&ring)?;
            let (la, lb) = (ring.parse_label(&a)?, ring.parse_label(&b)?);
            let outcome = ring.fuse(&la, &lb)?;
            let mut terms = Vec::new();
            let mut total = 0.0;
            for (l, m) in outcome.iter() {
                let d = ring.dim(l)?.value();
                total += m as f64 * d;
                terms.push(json!({"label": l.to_string(), "multiplicity": m, "dimension": dimension_json(&ring, l)?}));
            }
            let result = json!({
                "a": la.to_string(),
                "b": lb.to_string(),
                "terms": terms,
                "total_dimension": total,
                "product_of_dimensions": ring.dim(&la)?.value() * ring.dim(&lb)?.value(),
            });
            let env = Envelope::new("ring fuse", json!({"ring": spec.to_value(true), "a": a, "b": b}), result);
            Ok(to_json_string(&env))
        }
        RingCommand::Dims { ring, level, format } => {
            let (spec, ring) = load_ring(&ring)?;
            let mut table = Table::new(&["label", "level", "dimension", "exact"]);
            let mut rows = Vec::new();
            for l in ring.labels_up_to_level(level) {
                let d = ring.dim(&l)?;
                let exact = d.as_exact().map(|r| r.to_string()).unwrap_or_default();
                table.push(vec![l.to_string(), ring.level(&l)?.to_string(), format_f64(d.value()), exact]);
                rows.push(json!({"label": l.to_string(), "level": ring.level(&l)?, "dimension": dimension_json(&ring, &l)?}));
            }
            Ok(match format {
                Format::Csv => table.to_csv(),
                Format::Json => to_json_string(&Envelope::new(
                    "ring dims",
                    json!({"ring": spec.to_value(true), "level": level}),
                    json!({"labels": rows}),
                )),
            })
        }
    }
}

fn complex_row(label: &Label, dim: f64, z: Complex64) -> Vec<String> {
    vec![label.to_string(), format_f64(dim), format_f64(z.re), format_f64(z.im)]
}

fn mult_command(command: MultCommand) -> CliResult<String> {
    match command {
        MultCommand::Eval {
            ring,
            mult,
            labels,
            level,
            format,
        } => {
            let (spec, ring) = load_ring(&ring)?;
            let mspec = load_mult(&mult)?;
            let phi: Multiplier<Complex64> = mspec.build(&ring)?;
            let labels = labels_for(&ring, &labels, level)?;
            let mut table = Table::new(&["label", "dimension", "re", "im"]);
            let mut rows = Vec::new();
            for l in &labels {
                let z = phi.eval(l)?;
                let d = ring.dim(l)?.value();
                table.push(complex_row(l, d, z));
                rows.push(json!({"label": l.to_string(), "re": z.re, "im": z.im}));
            }
            Ok(match format {
                Format::Csv => table.to_csv(),
                Format::Json => to_json_string(&Envelope::new(
                    "mult eval",
                    json!({"ring": spec.to_value(true), "mult": mspec.to_value(true), "level": level}),
                    json!({"description": phi.description(), "claimed_cp": phi.claimed_cp(), "values": rows}),
                )),
            })
        }
        MultCommand::Convolve {
            ring,
            mult,
            x,
            y,
            labels,
            level,
            format,
        } => {
            let (spec, ring) = load_ring(&ring)?;
            let mspec = load_mult(&mult)?;
            let phi: Multiplier<Complex64> = mspec.build(&ring)?;
            let xe = parse_element::<Complex64>(&ring, &x)?;
            let ye = parse_element::<Complex64>(&ring, &y)?;
            let conv = convolve(&phi, &xe, &ye)?;
            let labels = labels_for(&ring, &labels, level)?;
            let mut table = Table::new(&["label", "dimension", "re", "im"]);
            let mut rows = Vec::new();
            for l in &labels {
                let z = conv.eval(l)?;
                let d = ring.dim(l)?.value();
                table.push(complex_row(l, d, z));
                rows.push(json!({"label": l.to_string(), "re": z.re, "im": z.im}));
            }
            Ok(match format {
                Format::Csv => table.to_csv(),
                Format::Json => to_json_string(&Envelope::new(
                    "mult convolve",
                    json!({"ring": spec.to_value(true), "mult": mspec.to_value(true), "x": x, "y": y, "level": level}),
                    json!({"values": rows}),
                )),
            })
        }
    }
}

fn tlj_ring(lambda_inv: &Rational) -> CliResult<FusionRing> {
    Ok(build_tlj_ainf_exact(lambda_inv.clone())?)
}

fn tlj_multiplier<S: SpecScalar>(ring: &FusionRing, args: &TljMultArgs) -> CliResult<(Multiplier<S>, Value)> {
    match (&args.t, &args.mult) {
        (Some(t), None) => {
            let spec = MultiplierSpec::Point { t: t.clone() };
            Ok((spec.build(ring)?, spec.to_value(true)))
        }
        (None, Some(source)) => {
            let spec = load_mult(source)?;
            Ok((spec.build(ring)?, spec.to_value(true)))
        }
        _ => Err(CliError::usage("exactly one of --t and --mult is required")),
    }
}

fn tlj_inputs(args: &TljMultArgs, mult: Value) -> Value {
    json!({
        "lambda_inv": exact_json(&args.lambda_inv),
        "mult": mult,
        "mode": if args.float { "float" } else { "exact" },
    })
}

fn verdict_json(verdict: &AdmissibilityVerdict) -> (Value, Value) {
    let witnesses = match verdict {
        AdmissibilityVerdict::Rejected(w) => json!([w]),
        _ => json!([]),
    };
    (serde_json::to_value(verdict).expect("verdict serializes"), witnesses)
}

fn admissible<S: SpecScalar + RealScalar>(args: &TljMultArgs, level: usize, tol: f64) -> CliResult<String> {
    let ring = tlj_ring(&args.lambda_inv)?;
    let (phi, mult) = tlj_multiplier::<S>(&ring, args)?;
    let seq = moments(&phi, 2 * level + 1)?;
    let verdict = admissibility_from_moments(&seq, level, tol)?;
    let (result, witnesses) = verdict_json(&verdict);
    let mut inputs = tlj_inputs(args, mult);
    inputs["level"] = json!(level);
    let env = Envelope::new("tlj admissible", inputs, json!({"verdict": result, "semantics": ADMISSIBLE_SEMANTICS}))
        .with_witnesses(witnesses)
        .with_tolerances(json!({"psd_relative": tol, "exact_arithmetic": !args.float}));
    Ok(to_json_string(&env))
}

fn moment_report<S: SpecScalar + RealScalar>(args: &TljMultArgs, count: usize, format: Format, exact: impl Fn(&S) -> Option<String>) -> CliResult<String> {
    let ring = tlj_ring(&args.lambda_inv)?;
    let (phi, mult) = tlj_multiplier::<S>(&ring, args)?;
    let seq = moments(&phi, count)?;
    let dims = chebyshev_v_table(count, &S::from_rational(&args.lambda_inv));
    let mut table = Table::new(&["k", "moment", "exact", "dimension", "phi"]);
    let mut rows = Vec::new();
    for (k, m) in seq.values.iter().enumerate() {
        let phi_k = phi.eval(&Label::Tlj(k as u32))?;
        let exact_m = exact(m).unwrap_or_default();
        table.push(vec![
            k.to_string(),
            format_f64(m.to_f64()),
            exact_m.clone(),
            format_f64(dims[k].to_f64()),
            format_f64(phi_k.to_f64()),
        ]);
        let mut row = json!({"k": k, "moment": m.to_f64(), "dimension": dims[k].to_f64(), "phi": phi_k.to_f64()});
        if !exact_m.is_empty() {
            row["exact"] = json!(exact_m);
        }
        rows.push(row);
    }
    let mut inputs = tlj_inputs(args, mult);
    inputs["count"] = json!(count);
    Ok(match format {
        Format::Csv => table.to_csv(),
        Format::Json => to_json_string(&Envelope::new("tlj moments", inputs, json!({"moments": rows}))),
    })
}

fn tlj_command(command: TljCommand) -> CliResult<String> {
    match command {
        TljCommand::Admissible { args, level, tol } => {
            if args.float {
                admissible::<f64>(&args, level, tol)
            } else {
                admissible::<Rational>(&args, level, tol)
            }
        }
        TljCommand::Moments { args, count, format } => {
            if args.float {
                moment_report::<f64>(&args, count, format, |_| None)
            } else {
                moment_report::<Rational>(&args, count, format, |r| Some(r.to_string()))
            }
        }
        TljCommand::Plancherel {
            n,
            m,
            tol,
            initial_nodes,
            max_doublings,
        } => {
            let params = QuadratureParams {
                initial_nodes,
                tol,
                max_doublings,
            };
            let value = plancherel_pair(n, m, &params)?;
            let env = Envelope::new(
                "tlj plancherel",
                json!({"n": n, "m": m}),
                json!({"value": value, "measure": "(2π)^-1 √((4−t)/t) dt on [0,4]"}),
            )
            .with_tolerances(json!({"quadrature_relative": tol, "initial_nodes": initial_nodes, "max_doublings": max_doublings}));
            Ok(to_json_string(&env))
        }
        TljCommand::Norms { lambda_inv, element } => {
            let ring = tlj_ring(&lambda_inv)?;
            let x = parse_element::<Rational>(&ring, &element)?;
            let poly = to_polynomial(&x)?;
            let universal = universal_norm(&x)?;
            let reduced = reduced_norm(&x)?;
            let bound = omega_bound(&x)?;
            let norm_json = |n: &fusion_mult::tlj::SupNorm<Rational>| {
                let mut v = json!({"value": RealScalar::to_f64(&n.value), "argmax": n.argmax, "exact": n.exact});
                if n.exact {
                    v["exact_value"] = json!(n.value.to_string());
                }
                v
            };
            let result = json!({
                "polynomial": poly.iter().map(exact_json).collect::<Vec<_>>(),
                "universal_norm": norm_json(&universal),
                "reduced_norm": norm_json(&reduced),
                "omega_bound": exact_json(&bound),
            });
            let env = Envelope::new(
                "tlj norms",
                json!({"lambda_inv": exact_json(&lambda_inv), "element": element}),
                result,
            )
            .with_tolerances(json!({"sup_grid_nodes": fusion_mult::tlj::norms::SUP_GRID_NODES}));
            Ok(to_json_string(&env))
        }
        TljCommand::L1range { lambda_inv, t, n_max } => {
            let outcome = l1_range_check(&lambda_inv, &t, n_max)?;
            let lower = Rational::from_integer(4.into()) - lambda_inv.clone();
            let result = json!({
                "outcome": outcome,
                "interval": [exact_json(&lower), exact_json(&lambda_inv)],
            });
            let witnesses = match outcome.first_violation() {
                Some(n) => json!([{"n": n}]),
                None => json!([]),
            };
            let env = Envelope::new(
                "tlj l1range",
                json!({"lambda_inv": exact_json(&lambda_inv), "t": exact_json(&t), "n_max": n_max}),
                result,
            )
            .with_witnesses(witnesses)
            .with_tolerances(json!({"exact_arithmetic": true}));
            Ok(to_json_string(&env))
        }
    }
}

fn spectral_command(command: SpectralCommand) -> CliResult<String> {
    match command {
        SpectralCommand::Norm {
            ring,
            generator,
            truncation,
            max_iterations,
            tol,
            format,
        } => {
            let (spec, ring) = load_ring(&ring)?;
            let x = parse_element::<Complex64>(&ring, &generator)?;
            let estimate = norm_estimate(&x, truncation, max_iterations, tol)?;
            let mut table = Table::new(&["size", "estimate"]);
            for t in &estimate.truncations {
                table.push(vec![t.size.to_string(), format_f64(t.lower_bound)]);
            }
            Ok(match format {
                Format::Csv => table.to_csv(),
                Format::Json => to_json_string(
                    &Envelope::new(
                        "spectral norm",
                        json!({"ring": spec.to_value(true), "generator": generator, "truncation": truncation}),
                        serde_json::to_value(&estimate).expect("estimate serializes"),
                    )
                    .with_tolerances(json!({"power_relative": tol, "max_iterations": max_iterations})),
                ),
            })
        }
        SpectralCommand::Amenability {
            ring,
            generator,
            truncation,
            tol,
        } => {
            let (spec, ring) = load_ring(&ring)?;
            let x = parse_element::<Complex64>(&ring, &generator)?;
            let report = amenability_report(&x, truncation, tol)?;
            let env = Envelope::new(
                "spectral amenability",
                json!({"ring": spec.to_value(true), "generator": generator, "truncation": truncation}),
                serde_json::to_value(&report).expect("report serializes"),
            )
            .with_tolerances(json!({"amenability_relative": tol, "power_relative": DEFAULT_POWER_TOL}));
            Ok(to_json_string(&env))
        }
    }
}
