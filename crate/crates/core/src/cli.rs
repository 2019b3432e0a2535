//! The `tenshull` command line.
//!
//! Exit codes: 0 for `Yes` or a completed analysis, 2 for `CertifiedNo`,
//! 3 for `NoCounterexampleFound` or an inconclusive boundary case, 1 for
//! usage and input errors. `verify` exits 0 on success and 1 on failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::classify::{self, ClassifyOptions, Label, Property, SearchBudget, Verdict};
use crate::error::{Error, Result};
use crate::interval::{self, HullVerdict, IntervalHull};
use crate::io::{self, Format};
use crate::oracle;
use crate::report::{self, CertificateRecord, Input, Report, Subject};
use crate::spectral::{spectral_radius, SpectralOptions};
use crate::structure::{
    is_irreducible, is_weakly_irreducible, weakly_irreducible_partition, IRREDUCIBLE_CAP,
};
use crate::tensor::Tensor;

#[derive(Parser, Debug)]
#[command(name = "tenshull", version, about = "Tensor spectra, M/P/PSD classification and interval-hull certification")]
struct Cli {
    /// Write the machine-readable report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    json_out: Option<PathBuf>,
    /// Worker threads (default: available cores).
    #[arg(long, global = true, env = "TENSHULL_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Spectral radius, Perron vector and irreducibility structure.
    Analyze {
        file: PathBuf,
        /// Compare against the brute-force oracles.
        #[arg(long)]
        cross_check: bool,
    },
    /// Test one tensor for a class.
    Classify {
        file: PathBuf,
        #[arg(long, value_enum)]
        class: ClassArg,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        cross_check: bool,
    },
    /// Certify a class for every member of the hull between two tensors.
    Interval {
        #[arg(long)]
        lower: PathBuf,
        #[arg(long)]
        upper: PathBuf,
        #[arg(long, value_enum)]
        class: ClassArg,
        /// Only interior members (strong-m only).
        #[arg(long)]
        interior: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Generate a tensor file.
    Gen {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Probability that a random entry is zero.
        #[arg(long, default_value_t = 0.0)]
        sparsity: f64,
        #[arg(long, value_enum, default_value = "dense")]
        format: FormatArg,
        /// Output file; `random-hull` writes `<stem>_lower.json` and `<stem>_upper.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check every certificate in a report.
    Verify { report: PathBuf },
}

#[derive(Args, Debug, Clone, Copy)]
struct BudgetArgs {
    /// Multi-start count for counterexample searches.
    #[arg(long, default_value_t = 64)]
    starts: usize,
    /// Descent iterations per start.
    #[arg(long, default_value_t = 500)]
    iters: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        SearchBudget { starts: self.starts, max_iters: self.iters, seed: self.seed, ..SearchBudget::default() }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ClassArg {
    M,
    StrongM,
    P,
    P0,
    Psd,
    Pd,
}

impl From<ClassArg> for Property {
    fn from(c: ClassArg) -> Property {
        match c {
            ClassArg::M => Property::M,
            ClassArg::StrongM => Property::StrongM,
            ClassArg::P => Property::P,
            ClassArg::P0 => Property::P0,
            ClassArg::Psd => Property::Psd,
            ClassArg::Pd => Property::Pd,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Zero,
    Identity,
    Ones,
    RandomNonneg,
    RandomZ,
    RandomHull,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum FormatArg {
    Dense,
    Coo,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Dense => Format::Dense,
            FormatArg::Coo => Format::Coo,
        }
    }
}

/// Runs the command line with the process arguments and standard streams.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the command line against explicit arguments and output streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let echo = command_echo(&args);
    let mut buf: Vec<u8> = Vec::new();
    let result = match cli.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Format(format!("thread pool: {e}")))
            .and_then(|pool| pool.install(|| dispatch(&cli, echo, &mut buf))),
        None => dispatch(&cli, echo, &mut buf),
    };
    let _ = out.write_all(&buf);
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

// Arguments after the program name, minus the flags that do not affect results.
fn command_echo(args: &[OsString]) -> Vec<String> {
    let mut echo = Vec::new();
    let mut skip = false;
    for a in args.iter().skip(1) {
        let s = a.to_string_lossy().into_owned();
        if skip {
            skip = false;
            continue;
        }
        if s == "--json-out" || s == "--threads" {
            skip = true;
            continue;
        }
        if s.starts_with("--json-out=") || s.starts_with("--threads=") {
            continue;
        }
        echo.push(s);
    }
    echo
}

fn io_err(e: std::io::Error) -> Error {
    Error::Format(format!("output: {e}"))
}

fn dispatch(cli: &Cli, echo: Vec<String>, out: &mut dyn Write) -> Result<i32> {
    let start = Instant::now();
    let (report, code) = match &cli.command {
        Command::Analyze { file, cross_check } => analyze(file, *cross_check, echo, out)?,
        Command::Classify { file, class, budget, cross_check } => {
            classify_cmd(file, (*class).into(), &budget.budget(), *cross_check, echo, out)?
        }
        Command::Interval { lower, upper, class, interior, budget } => {
            interval_cmd(lower, upper, (*class).into(), *interior, &budget.budget(), echo, out)?
        }
        Command::Gen { order, dim, kind, seed, sparsity, format, out: path } => {
            return gen(*order, *dim, *kind, *seed, *sparsity, (*format).into(), path.as_deref(), out);
        }
        Command::Verify { report } => return verify_cmd(report, out),
    };
    writeln!(out, "elapsed: {:.3} ms", start.elapsed().as_secs_f64() * 1e3).map_err(io_err)?;
    if let Some(path) = &cli.json_out {
        std::fs::write(path, report.to_json()).map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    }
    Ok(code)
}

fn exit_code(answer: Label, inconclusive: bool) -> i32 {
    match answer {
        _ if inconclusive => 3,
        Label::Yes => 0,
        Label::CertifiedNo => 2,
        _ => 3,
    }
}

fn fmt_label(l: Label) -> String {
    serde_json::to_value(l).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default()
}

fn analyze(file: &Path, cross_check: bool, echo: Vec<String>, out: &mut dyn Write) -> Result<(Report, i32)> {
    let a = io::read_tensor(file)?;
    let spec = spectral_radius(&a, &SpectralOptions::default())?;
    let weak = is_weakly_irreducible(&a)?;
    let irreducible = if a.dim() <= IRREDUCIBLE_CAP { Some(is_irreducible(&a)?) } else { None };
    let blocks = weakly_irreducible_partition(&a)?;
    let block_list: Vec<&[usize]> = blocks.blocks.iter().map(|b| b.as_slice()).collect();

    let mut result = json!({
        "rho": spec.rho,
        "bracket": [spec.lower, spec.upper],
        "iterations": spec.iterations,
        "converged": spec.converged,
        "perron": spec.perron,
        "weakly_irreducible": weak,
        "irreducible": irreducible,
        "blocks": block_list,
    });
    writeln!(out, "rho: {} (bracket [{}, {}], {} iterations{})", spec.rho, spec.lower, spec.upper, spec.iterations,
        if spec.converged { "" } else { ", not converged" }).map_err(io_err)?;
    if let Some(p) = &spec.perron {
        writeln!(out, "perron vector: {p:?}").map_err(io_err)?;
    }
    writeln!(out, "weakly irreducible: {weak}").map_err(io_err)?;
    match irreducible {
        Some(v) => writeln!(out, "irreducible: {v}"),
        None => writeln!(out, "irreducible: not checked (dimension above {IRREDUCIBLE_CAP})"),
    }
    .map_err(io_err)?;
    writeln!(out, "blocks: {block_list:?}").map_err(io_err)?;

    if cross_check {
        let mut cc = serde_json::Map::new();
        if let Some(m) = a.to_matrix().filter(|m| m.nrows() <= oracle::MATRIX_CAP) {
            let r = oracle::matrix_rho(&m)?;
            cc.insert("matrix_rho".into(), json!(r));
            writeln!(out, "cross-check: matrix oracle rho {r} (difference {:e})", (r - spec.rho).abs()).map_err(io_err)?;
        } else if weak && a.dim() <= 6 {
            let b = oracle::cw_refine(&a, 2000)?;
            cc.insert("cw_bracket".into(), json!([b.lo, b.hi]));
            writeln!(out, "cross-check: oracle bracket [{}, {}]", b.lo, b.hi).map_err(io_err)?;
        }
        if a.dim() <= oracle::SUBSET_CAP {
            let s = oracle::subset_irreducible(&a)?;
            cc.insert("subset_irreducible".into(), json!(s));
            writeln!(out, "cross-check: subset enumeration irreducible {s}").map_err(io_err)?;
        }
        result["cross_check"] = Value::Object(cc);
    }

    let mut report = Report::new(echo, 0);
    report.inputs.push(Input::new(file.display().to_string(), &a));
    report.result = result;
    Ok((report, 0))
}

fn verdict_json(v: &Verdict, property: Property) -> Value {
    json!({
        "property": property.name(),
        "answer": v.answer_for(property),
        "label": v.label,
        "s": v.s,
        "margin": v.margin,
        "bracket": v.bracket.map(|(lo, hi)| [lo, hi]),
        "inconclusive": v.inconclusive,
    })
}

fn run_classifier(a: &Tensor, property: Property, budget: &SearchBudget) -> Verdict {
    match property {
        Property::M | Property::StrongM => classify::classify_m(a, &ClassifyOptions::default()),
        Property::P => classify::is_p(a, budget),
        Property::P0 => classify::is_p0(a, budget),
        Property::Psd => classify::is_psd(a, budget),
        Property::Pd => classify::is_pd(a, budget),
    }
}

fn classify_cmd(
    file: &Path,
    property: Property,
    budget: &SearchBudget,
    cross_check: bool,
    echo: Vec<String>,
    out: &mut dyn Write,
) -> Result<(Report, i32)> {
    let a = io::read_tensor(file)?;
    let v = run_classifier(&a, property, budget);
    let answer = v.answer_for(property);
    let mut result = verdict_json(&v, property);
    write!(out, "{}: {}", property.name(), fmt_label(answer)).map_err(io_err)?;
    if answer != v.label {
        write!(out, " ({})", fmt_label(v.label)).map_err(io_err)?;
    }
    writeln!(out).map_err(io_err)?;
    if let Some(m) = v.margin {
        writeln!(out, "margin: {m}").map_err(io_err)?;
    }
    if let Some((lo, hi)) = v.bracket {
        writeln!(out, "rho(D) bracket: [{lo}, {hi}]").map_err(io_err)?;
    }
    if v.inconclusive {
        writeln!(out, "inconclusive: the bracket does not separate s from rho(D)").map_err(io_err)?;
    }
    if let Some(c) = &v.certificate {
        writeln!(out, "certificate: {}", serde_json::to_string(c).expect("serializable")).map_err(io_err)?;
    }
    if cross_check {
        if let Some(cc) = cross_check_classify(&a, property, &v) {
            writeln!(out, "cross-check: {cc}").map_err(io_err)?;
            result["cross_check"] = cc;
        }
    }

    let mut report = Report::new(echo, budget.seed);
    report.inputs.push(Input::new(file.display().to_string(), &a));
    report.result = result;
    if let Some(c) = v.certificate.clone() {
        report.certificates.push(CertificateRecord {
            subject: Subject::Input(0),
            claim: format!("{}: {}", property.name(), fmt_label(v.label)),
            certificate: c,
            member: None,
        });
    }
    Ok((report, exit_code(answer, v.inconclusive)))
}

fn cross_check_classify(a: &Tensor, property: Property, v: &Verdict) -> Option<Value> {
    let m = a.to_matrix().filter(|m| m.nrows() <= oracle::MATRIX_CAP);
    match property {
        Property::P | Property::P0 => {
            let class = oracle::p_matrix_minors(&m?).ok()?;
            Some(json!({ "minor_class": format!("{class:?}") }))
        }
        Property::Psd | Property::Pd => {
            if let Some(m) = m {
                let class = oracle::matrix_definiteness(&m, 0.0).ok()?;
                Some(json!({ "definiteness": format!("{class:?}") }))
            } else if a.dim() <= oracle::GRID_CAP {
                Some(json!({ "grid_min_form": oracle::grid_min_form(a, 0.01).ok()? }))
            } else {
                None
            }
        }
        Property::M | Property::StrongM => {
            let s = v.s?;
            let d = a.scale_shift(-1.0, -s);
            if let Some(dm) = d.to_matrix().filter(|m| m.nrows() <= oracle::MATRIX_CAP) {
                Some(json!({ "rho_d": oracle::matrix_rho(&dm).ok()? }))
            } else {
                let b = oracle::cw_refine(&d, 2000).ok()?;
                Some(json!({ "rho_d_bracket": [b.lo, b.hi] }))
            }
        }
    }
}

fn interval_cmd(
    lower: &Path,
    upper: &Path,
    property: Property,
    interior: bool,
    budget: &SearchBudget,
    echo: Vec<String>,
    out: &mut dyn Write,
) -> Result<(Report, i32)> {
    let a = io::read_tensor(lower)?;
    let b = io::read_tensor(upper)?;
    let hull = IntervalHull::new(a.clone(), b.clone())?;
    let opts = ClassifyOptions::default();
    let hv: HullVerdict = match (property, interior) {
        (Property::StrongM, false) => interval::hull_is_strong_m(&hull, &opts),
        (Property::StrongM, true) => interval::interior_is_strong_m(&hull, &opts),
        (_, true) => return Err(Error::Format("--interior is only supported with --class strong-m".into())),
        (Property::M, false) => {
            return Err(Error::Format("hull certification supports strong-m, p, p0, psd and pd".into()))
        }
        (p, false) => interval::vertex_reduction(&hull, budget, p)?,
    };

    writeln!(out, "{}{}: {}", property.name(), if interior { " (interior)" } else { "" }, fmt_label(hv.label))
        .map_err(io_err)?;
    for e in &hv.endpoints {
        writeln!(out, "  {}: {}", e.member, fmt_label(e.verdict.label)).map_err(io_err)?;
    }
    if !hv.vertices.is_empty() {
        writeln!(out, "  {} vertex records", hv.vertices.len()).map_err(io_err)?;
    }
    for r in &hv.vertices {
        writeln!(out, "    z = {:?}: {}", r.z.as_slice(), fmt_label(r.verdict.label)).map_err(io_err)?;
    }
    if let Some(w) = &hv.witness {
        writeln!(out, "  witness {}: {}", w.member, fmt_label(w.verdict.label)).map_err(io_err)?;
        if let Some(x) = w.verdict.certificate.as_ref().and_then(|c| c.vector()) {
            writeln!(out, "  witness vector: {x:?}").map_err(io_err)?;
        }
    }

    let mut report = Report::new(echo, budget.seed);
    report.inputs.push(Input::new(lower.display().to_string(), &a));
    report.inputs.push(Input::new(upper.display().to_string(), &b));
    let vertices: Vec<Value> = hv
        .vertices
        .iter()
        .map(|r| json!({ "z": r.z, "label": r.verdict.label, "margin": r.verdict.margin }))
        .collect();
    let endpoints: Vec<Value> =
        hv.endpoints.iter().map(|e| json!({ "member": e.member, "verdict": verdict_json(&e.verdict, property) })).collect();
    report.result = json!({
        "property": property.name(),
        "interior": interior,
        "answer": hv.label,
        "witness": hv.witness.as_ref().map(|w| json!({ "member": w.member, "verdict": verdict_json(&w.verdict, property) })),
        "endpoints": endpoints,
        "vertices": vertices,
        "inconclusive_vertices": hv.inconclusive,
    });

    let mut push = |member: &interval::Member, verdict: &Verdict| -> Result<()> {
        if let Some(c) = verdict.certificate.clone() {
            let embedded = match member {
                interval::Member::Lower | interval::Member::Upper => None,
                m => Some(io::tensor_to_value(&hull.member(m)?, Format::Dense)),
            };
            report.certificates.push(CertificateRecord {
                subject: Subject::for_member(member),
                claim: format!("{}: {}", property.name(), fmt_label(verdict.label)),
                certificate: c,
                member: embedded,
            });
        }
        Ok(())
    };
    if let Some(w) = &hv.witness {
        push(&w.member, &w.verdict)?;
    }
    for e in &hv.endpoints {
        push(&e.member, &e.verdict)?;
    }
    Ok((report, exit_code(hv.label, false)))
}

/// Deterministic generator behind the `gen` subcommand.
pub fn generate(order: usize, dim: usize, kind: &str, seed: u64, sparsity: f64) -> Result<Vec<Tensor>> {
    if order == 0 || dim == 0 {
        return Err(Error::EmptyShape { order, dim });
    }
    if !(0.0..=1.0).contains(&sparsity) {
        return Err(Error::Format(format!("sparsity {sparsity} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |lo: f64, hi: f64| -> f64 {
        let keep = sparsity == 0.0 || rng.gen::<f64>() >= sparsity;
        let v = rng.gen_range(lo..hi);
        if keep {
            v
        } else {
            0.0
        }
    };
    let diag_scale = (dim as f64).powi(order as i32 - 1);
    Ok(match kind {
        "zero" => vec![Tensor::zeros(order, dim)],
        "identity" => vec![Tensor::identity(order, dim)],
        "ones" => vec![Tensor::ones(order, dim)],
        "random-nonneg" => vec![Tensor::from_fn(order, dim, |_| draw(0.0, 1.0))],
        "random-z" => vec![Tensor::from_fn(order, dim, |i| {
            if Tensor::is_diagonal_index(i) {
                draw(0.0, diag_scale)
            } else {
                -draw(0.0, 1.0)
            }
        })],
        "random-hull" => {
            let lower = Tensor::from_fn(order, dim, |_| draw(-1.0, 1.0));
            let gap = Tensor::from_fn(order, dim, |_| draw(0.0, 1.0));
            let upper = lower.add(&gap)?;
            vec![lower, upper]
        }
        other => return Err(Error::Format(format!("unknown kind {other}"))),
    })
}

#[allow(clippy::too_many_arguments)]
fn gen(
    order: usize,
    dim: usize,
    kind: Kind,
    seed: u64,
    sparsity: f64,
    format: Format,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32> {
    let name = kind.to_possible_value().expect("no skipped variants").get_name().to_owned();
    let tensors = generate(order, dim, &name, seed, sparsity)?;
    match (tensors.as_slice(), path) {
        ([t], Some(p)) => io::write_tensor(p, t, format)?,
        ([t], None) => write!(out, "{}", io::emit_tensor(t, format)?).map_err(io_err)?,
        ([lower, upper], Some(p)) => {
            let stem = p.with_extension("");
            let with_suffix = |s: &str| {
                let mut name = stem.file_name().unwrap_or_default().to_os_string();
                name.push(s);
                stem.with_file_name(name)
            };
            let (lp, up) = (with_suffix("_lower.json"), with_suffix("_upper.json"));
            io::write_tensor(&lp, lower, format)?;
            io::write_tensor(&up, upper, format)?;
            writeln!(out, "wrote {} and {}", lp.display(), up.display()).map_err(io_err)?;
        }
        (_, None) => return Err(Error::Format("random-hull needs --out".into())),
        _ => unreachable!("generators return one or two tensors"),
    }
    Ok(0)
}

fn verify_cmd(path: &Path, out: &mut dyn Write) -> Result<i32> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    let r = Report::from_json(&text)?;
    let v = report::verify(&r);
    if v.passed() {
        if v.checked == 0 {
            writeln!(out, "nothing to verify").map_err(io_err)?;
        } else {
            writeln!(out, "verified {} certificate(s) and {} input digest(s)", v.checked, r.inputs.len()).map_err(io_err)?;
        }
        Ok(0)
    } else {
        for f in &v.failures {
            writeln!(out, "FAIL {f}").map_err(io_err)?;
        }
        Ok(1)
    }
}
