//! `slice-bergman`: kernels, transforms, norms and the verification suite
//! from the command line. Results go to stdout as JSON.

mod function;
mod output;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use slice_bergman::kernels;
use slice_bergman::quadrature::{
    delta_volume_norm_sq_reduced, slice_norm_sq, volume_norm_sq_mc, volume_norm_sq_reduced, McConfig, RuleParams,
    WeightId,
};
use slice_bergman::transforms::{bergman_fueter_transform, fueter_contour_transform, reproduce, RuleInfo, TransformReport};
use slice_bergman::verify::{run_suite, Bound, Suite, VerifyConfig};
use slice_bergman::{DomainId, KernelId, Quaternion, UnitImaginary};

use output::{append_csv, to_json, CsvRow};

#[derive(Debug)]
pub enum CliError {
    Lib(slice_bergman::Error),
    Function(String),
    Input(String),
    Io(String),
    Usage(String),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Lib(e) => e.kind(),
            CliError::Function(_) => "FunctionError",
            CliError::Input(_) => "InputError",
            CliError::Io(_) => "IoError",
            CliError::Usage(_) => "UsageError",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Function(s) | CliError::Input(s) | CliError::Io(s) | CliError::Usage(s) => f.write_str(s),
        }
    }
}

impl From<slice_bergman::Error> for CliError {
    fn from(e: slice_bergman::Error) -> Self {
        CliError::Lib(e)
    }
}

#[derive(Debug, Parser)]
#[command(name = "slice-bergman", version, about = "Second-kind Bergman kernels and transforms over the quaternions")]
struct Cli {
    /// Worker threads for quadrature (results do not depend on it).
    #[arg(long, global = true, env = "SLICE_BERGMAN_THREADS")]
    threads: Option<usize>,

    /// Append a result row to this CSV file.
    #[arg(long, global = true)]
    csv: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a closed-form kernel.
    Kernel(KernelArgs),
    /// Reproducing integral of a function over one slice.
    Reproduce(ReproduceArgs),
    /// Bergman-Fueter transform (area form on the unit disk slice).
    BfTransform(BfArgs),
    /// Fueter contour transform on a circle in one slice.
    Contour(ContourArgs),
    /// Slice, reduced volume or Monte Carlo norms.
    Norm(NormArgs),
    /// Run acceptance checks.
    Verify(VerifyArgs),
}

fn parse_quaternion(s: &str) -> Result<Quaternion, String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [w, x, y, z] => Ok(Quaternion::new(w, x, y, z)),
        _ => Err(format!("expected 4 comma-separated numbers w,x,y,z, got {}", parts.len())),
    }
}

fn parse_unit(s: &str) -> Result<UnitImaginary, String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [a, b, c] => UnitImaginary::new(a, b, c).map_err(|e| e.to_string()),
        _ => Err(format!("expected 3 comma-separated numbers, got {}", parts.len())),
    }
}

fn parse_domain(s: &str) -> Result<DomainId, String> {
    match s {
        "ball" => Ok(DomainId::UnitBall),
        "half" | "halfspace" | "half-space" => Ok(DomainId::HalfSpace),
        other => Err(format!("unknown domain `{other}` (ball | half)")),
    }
}

fn domain_name(d: DomainId) -> &'static str {
    match d {
        DomainId::UnitBall => "ball",
        DomainId::HalfSpace => "half",
    }
}

#[derive(Debug, Args)]
struct KernelArgs {
    /// disk, ball, ball_I, ball_II, half, half_A, half_B, q_factor, bf
    #[arg(long)]
    kernel: String,
    #[arg(long, value_parser = parse_quaternion, allow_hyphen_values = true)]
    q: Quaternion,
    #[arg(long, value_parser = parse_quaternion, allow_hyphen_values = true)]
    r: Quaternion,
    /// I or II for the ball, A or B for the half-space.
    #[arg(long)]
    form: Option<String>,
}

#[derive(Debug, Args)]
struct RuleArgs {
    #[arg(long = "nr")]
    n_r: Option<usize>,
    #[arg(long = "ntheta")]
    n_theta: Option<usize>,
    /// Half-plane truncation radius; derived from a tail bound when absent.
    #[arg(long)]
    extent: Option<f64>,
    /// Also integrate on the doubled rule and fail on a >10% change.
    #[arg(long)]
    divergence_check: bool,
}

impl RuleArgs {
    fn params(&self, n_r: usize, n_theta: usize) -> RuleParams {
        let mut p = RuleParams::new(self.n_r.unwrap_or(n_r), self.n_theta.unwrap_or(n_theta));
        p.extent = self.extent;
        p.with_divergence_check(self.divergence_check)
    }
}

#[derive(Debug, Args)]
struct ReproduceArgs {
    /// Function as JSON, or @file.
    #[arg(long = "fn")]
    function: String,
    #[arg(long, value_parser = parse_quaternion, allow_hyphen_values = true)]
    q: Quaternion,
    #[arg(long, value_parser = parse_domain, default_value = "ball")]
    domain: DomainId,
    #[arg(long, value_parser = parse_unit, allow_hyphen_values = true, default_value = "1,0,0")]
    slice: UnitImaginary,
    #[command(flatten)]
    rule: RuleArgs,
}

#[derive(Debug, Args)]
struct BfArgs {
    #[arg(long = "fn")]
    function: String,
    #[arg(long, value_parser = parse_quaternion, allow_hyphen_values = true)]
    q: Quaternion,
    #[arg(long, value_parser = parse_unit, allow_hyphen_values = true, default_value = "1,0,0")]
    slice: UnitImaginary,
    #[command(flatten)]
    rule: RuleArgs,
}

#[derive(Debug, Args)]
struct ContourArgs {
    #[arg(long = "fn")]
    function: String,
    #[arg(long, value_parser = parse_quaternion, allow_hyphen_values = true)]
    q: Quaternion,
    #[arg(long, value_parser = parse_unit, allow_hyphen_values = true, default_value = "1,0,0")]
    slice: UnitImaginary,
    #[arg(long, default_value_t = 0.8)]
    rho: f64,
    #[arg(long, default_value_t = 256)]
    nodes: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum NormKind {
    Slice,
    Volume,
    Mc,
}

#[derive(Debug, Args)]
struct NormArgs {
    #[arg(long = "fn")]
    function: String,
    #[arg(long, value_parser = parse_domain, default_value = "ball")]
    domain: DomainId,
    #[arg(long, value_parser = parse_unit, allow_hyphen_values = true, default_value = "1,0,0")]
    slice: UnitImaginary,
    /// none, rho or delta
    #[arg(long, default_value = "none")]
    weight: String,
    /// Integrate over the upper half of the slice only.
    #[arg(long)]
    half: bool,
    #[arg(long, value_enum, default_value = "slice")]
    kind: NormKind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1_000_000)]
    samples: usize,
    /// Edge of the half-space sampling box.
    #[arg(long, default_value_t = 10.0)]
    box_extent: f64,
    #[command(flatten)]
    rule: RuleArgs,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    /// Multiplies every tolerance.
    #[arg(long, default_value_t = 1.0)]
    tol_scale: f64,
    #[arg(long)]
    seed: Option<u64>,
}

/// What a command produced: the JSON document and its CSV rows.
struct Outcome {
    json: Value,
    rows: Vec<CsvRow>,
    failed: bool,
}

fn q_json(q: Quaternion) -> Value {
    json!(q.to_array())
}

fn rule_json(rule: RuleInfo) -> Value {
    match rule {
        RuleInfo::Area { n_r, n_theta, extent } => json!({ "kind": "area", "n_r": n_r, "n_theta": n_theta, "extent": extent }),
        RuleInfo::Contour { radius, nodes } => json!({ "kind": "contour", "radius": radius, "nodes": nodes }),
    }
}

fn report_outcome(command: &str, inputs: &str, rep: TransformReport, extra: Value, ms: f64) -> Outcome {
    let mut rule = rule_json(rep.rule);
    if let (Value::Object(r), Value::Object(e)) = (&mut rule, extra) {
        r.extend(e);
    }
    Outcome {
        json: json!({
            "value": q_json(rep.value),
            "error": { "reference": q_json(rep.reference), "abs": rep.abs_error, "rel": rep.rel_error },
            "rule": rule,
        }),
        rows: vec![CsvRow {
            command: command.into(),
            inputs: inputs.into(),
            value: rep.value.to_array().map(Some),
            abs_err: Some(rep.abs_error),
            rel_err: Some(rep.rel_error),
            ms,
        }],
        failed: false,
    }
}

fn resolve_kernel(name: &str, form: Option<&str>) -> Result<KernelId, CliError> {
    let id = match (name, form) {
        ("ball", Some("I") | None) => KernelId::BallFormI,
        ("ball", Some("II")) => KernelId::BallFormII,
        ("half" | "halfspace", Some("A") | None) => KernelId::HalfSpaceA,
        ("half" | "halfspace", Some("B")) => KernelId::HalfSpaceB,
        (other, form) => {
            let id: KernelId = other.parse()?;
            let ok = matches!(
                (id, form),
                (_, None)
                    | (KernelId::BallFormI, Some("I"))
                    | (KernelId::BallFormII, Some("II"))
                    | (KernelId::HalfSpaceA, Some("A"))
                    | (KernelId::HalfSpaceB, Some("B"))
            );
            if !ok {
                return Err(CliError::Input(format!("form {form:?} does not apply to kernel `{other}`")));
            }
            id
        }
    };
    Ok(id)
}

fn run_kernel(a: &KernelArgs, inputs: &str) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let id = resolve_kernel(&a.kernel, a.form.as_deref())?;
    let v = kernels::evaluate(id, a.q, a.r)?;
    let ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(Outcome {
        json: json!({ "value": q_json(v), "error": null, "rule": { "kind": "closed_form", "kernel": id.name() } }),
        rows: vec![CsvRow {
            command: "kernel".into(),
            inputs: inputs.into(),
            value: v.to_array().map(Some),
            abs_err: None,
            rel_err: None,
            ms,
        }],
        failed: false,
    })
}

fn run_reproduce(a: &ReproduceArgs, inputs: &str) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let f = function::parse_function(&a.function)?;
    let rep = reproduce(&f, a.q, a.domain, a.slice, &a.rule.params(64, 128))?;
    let extra = json!({ "domain": domain_name(a.domain), "slice": a.slice.components() });
    Ok(report_outcome("reproduce", inputs, rep, extra, start.elapsed().as_secs_f64() * 1e3))
}

fn run_bf(a: &BfArgs, inputs: &str) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let f = function::parse_function(&a.function)?;
    let rep = bergman_fueter_transform(&f, a.q, a.slice, &a.rule.params(96, 192))?;
    let extra = json!({ "slice": a.slice.components() });
    Ok(report_outcome("bf-transform", inputs, rep, extra, start.elapsed().as_secs_f64() * 1e3))
}

fn run_contour(a: &ContourArgs, inputs: &str) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let f = function::parse_function(&a.function)?;
    let rep = fueter_contour_transform(&f, a.q, a.slice, a.rho, a.nodes)?;
    let extra = json!({ "slice": a.slice.components() });
    Ok(report_outcome("contour", inputs, rep, extra, start.elapsed().as_secs_f64() * 1e3))
}

fn run_norm(a: &NormArgs, inputs: &str) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let f = function::parse_function(&a.function)?;
    let weight: WeightId = a.weight.parse()?;
    let params = a.rule.params(64, 128);
    let (value, stderr, rule) = match a.kind {
        NormKind::Slice => {
            let v = slice_norm_sq(&f, a.domain, a.slice, weight, a.half, &params)?;
            (v, None, json!({ "kind": "slice", "n_r": params.n_r, "n_theta": params.n_theta, "weight": weight.to_string(), "half": a.half }))
        }
        NormKind::Volume => {
            let v = match weight {
                WeightId::None => volume_norm_sq_reduced(&f, a.domain, a.slice, &params)?,
                WeightId::Delta => delta_volume_norm_sq_reduced(&f, a.domain, a.slice, &params)?,
                WeightId::Rho => return Err(CliError::Input("the rho weight applies to slice norms only".into())),
            };
            (v, None, json!({ "kind": "volume_reduced", "n_r": params.n_r, "n_theta": params.n_theta, "weight": weight.to_string() }))
        }
        NormKind::Mc => {
            if weight != WeightId::None {
                return Err(CliError::Input("Monte Carlo norms are unweighted".into()));
            }
            let cfg = McConfig { samples: a.samples, seed: a.seed, halfspace_extent: a.box_extent };
            let e = volume_norm_sq_mc(&f, a.domain, &cfg)?;
            (e.estimate, Some(e.stderr), json!({ "kind": "mc", "samples": e.samples, "seed": a.seed }))
        }
    };
    let mut rule = rule;
    rule["domain"] = json!(domain_name(a.domain));
    let ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(Outcome {
        json: json!({
            "value": value,
            "norm": value.max(0.0).sqrt(),
            "error": stderr.map(|s| json!({ "stderr": s })),
            "rule": rule,
        }),
        rows: vec![CsvRow {
            command: "norm".into(),
            inputs: inputs.into(),
            value: [Some(value), None, None, None],
            abs_err: stderr,
            rel_err: None,
            ms,
        }],
        failed: false,
    })
}

fn run_verify(a: &VerifyArgs, inputs: &str) -> Result<Outcome, CliError> {
    let suite: Suite = a.suite.parse()?;
    if !(a.tol_scale > 0.0 && a.tol_scale.is_finite()) {
        return Err(CliError::Input("--tol-scale must be positive".into()));
    }
    let mut cfg = VerifyConfig { tol_scale: a.tol_scale, ..VerifyConfig::default() };
    if let Some(seed) = a.seed {
        cfg.seed = seed;
    }
    let outcomes = run_suite(suite, &cfg);
    let mut checks = Vec::new();
    let mut rows = Vec::new();
    for o in &outcomes {
        eprint!("{o}");
        let measurements: Vec<Value> = o
            .measurements
            .iter()
            .map(|m| {
                let kind = match m.kind {
                    Bound::AtMost => "at_most",
                    Bound::AtLeast => "at_least",
                };
                json!({ "label": m.label, "value": m.value, "bound": m.bound, "kind": kind, "passed": m.passed() })
            })
            .collect();
        checks.push(json!({
            "id": o.id,
            "name": o.name,
            "passed": o.passed(),
            "measurements": measurements,
            "notes": o.notes,
            "error": o.error,
        }));
        rows.push(CsvRow {
            command: "verify".into(),
            inputs: format!("{inputs} criterion={}", o.id),
            value: [Some(if o.passed() { 1.0 } else { 0.0 }), None, None, None],
            abs_err: None,
            rel_err: None,
            ms: o.seconds * 1e3,
        });
    }
    let passed = outcomes.iter().all(|o| o.passed());
    Ok(Outcome {
        json: json!({ "suite": a.suite, "tol_scale": a.tol_scale, "seed": cfg.seed, "passed": passed, "checks": checks }),
        rows,
        failed: !passed,
    })
}

fn error_json(e: &CliError) -> String {
    to_json(&json!({ "error": { "kind": e.kind(), "detail": e.to_string() } }))
}

/// argv without the program name and the `--csv` option.
fn inputs_string() -> String {
    let mut out = Vec::new();
    let mut args = std::env::args().skip(1);
    while let Some(a) = args.next() {
        if a == "--csv" {
            args.next();
        } else if !a.starts_with("--csv=") {
            out.push(a);
        }
    }
    out.join(" ")
}

fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Input(format!("--threads: {e}")))?;
    }
    let inputs = inputs_string();
    let outcome = match &cli.command {
        Command::Kernel(a) => run_kernel(a, &inputs),
        Command::Reproduce(a) => run_reproduce(a, &inputs),
        Command::BfTransform(a) => run_bf(a, &inputs),
        Command::Contour(a) => run_contour(a, &inputs),
        Command::Norm(a) => run_norm(a, &inputs),
        Command::Verify(a) => run_verify(a, &inputs),
    }?;
    if let Some(path) = &cli.csv {
        append_csv(path, &outcome.rows).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.render().to_string();
            println!("{}", error_json(&CliError::Usage(msg.trim_end().to_string())));
            return ExitCode::from(2);
        }
    };
    match execute(&cli) {
        Ok(out) => {
            println!("{}", to_json(&out.json));
            if out.failed {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            println!("{}", error_json(&e));
            ExitCode::from(2)
        }
    }
}
