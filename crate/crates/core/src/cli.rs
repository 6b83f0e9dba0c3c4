//! The `polyspace` command line.
//!
//! Every command prints one record: JSON by default, `key: value` lines
//! with `--plain`, or comma-separated rows with `--csv`. Exact integers are
//! always rendered as decimal strings.
//!
//! Exit codes: 0 success, 2 invalid input, 3 budget exceeded (or too little
//! Monte-Carlo evidence), 4 internal cross-check failure.

use std::ffi::OsString;
use std::fs;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::{json, Map, Value};

use crate::atlas::{self, Atlas, ViolationKind};
use crate::betti;
use crate::census::{self, Backend, NAIVE_MAX_LINKS};
use crate::error::Error;
use crate::model::{LengthVector, SubsetClass};
use crate::morse;
use crate::numeric;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_CROSS_CHECK: i32 = 4;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "POLYSPACE_THREADS";

/// Largest `n` for which `betti` re-derives its answer through the Morse pipeline.
const BETTI_CROSS_CHECK_MAX: usize = 16;
/// Largest `n` for which `verify` runs the per-subset Hessian checks.
const VERIFY_NUMERIC_MAX: usize = 12;

#[derive(Debug, Parser)]
#[command(
    name = "polyspace",
    version,
    about = "Homology of planar polygon spaces"
)]
struct Cli {
    /// Plain `key: value` output.
    #[arg(long, global = true, conflicts_with = "csv")]
    plain: bool,
    /// Comma-separated tabular output.
    #[arg(long, global = true)]
    csv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct LengthArgs {
    /// Comma-separated side lengths, e.g. 3,2,2,1,1 or 1.5,1,1,1.
    #[arg(allow_hyphen_values = true)]
    lengths: Option<String>,
    /// Read the lengths from a file instead.
    #[arg(long, conflicts_with = "lengths")]
    file: Option<PathBuf>,
}

impl LengthArgs {
    fn load(&self) -> Result<LengthVector, Error> {
        match (&self.lengths, &self.file) {
            (Some(text), _) => LengthVector::parse(text),
            (None, Some(path)) => LengthVector::parse(&fs::read_to_string(path)?),
            (None, None) => Err(Error::Precondition(
                "no lengths given (use LENGTHS or --file)".into(),
            )),
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Betti numbers of M_ℓ.
    Betti {
        #[command(flatten)]
        input: LengthArgs,
        #[arg(long, default_value = "dp")]
        backend: Backend,
    },
    /// Poincaré polynomial p = q + t^{n-3} q(1/t) + r.
    Poincare {
        #[command(flatten)]
        input: LengthArgs,
        #[arg(long, default_value = "dp")]
        backend: Backend,
    },
    /// Short / median subset counts containing a longest link.
    Census {
        #[command(flatten)]
        input: LengthArgs,
        #[arg(long, default_value = "dp")]
        backend: Backend,
    },
    /// Upper bounds on the total Betti number for n links.
    Bounds {
        n: usize,
        /// The bound for generic vectors with n even.
        #[arg(long)]
        generic: bool,
    },
    /// Critical points, sublevel homology and the kernel/cokernel pipeline.
    Morse {
        #[command(flatten)]
        input: LengthArgs,
        /// List every critical point.
        #[arg(long)]
        points: bool,
    },
    /// Run every exact and numerical cross-check for one vector.
    Verify {
        #[command(flatten)]
        input: LengthArgs,
    },
    /// Monte-Carlo estimate of the number of connected components.
    #[command(name = "b0-oracle")]
    B0Oracle {
        #[command(flatten)]
        input: LengthArgs,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        #[arg(long, default_value_t = 1e-3)]
        closure_tol: f64,
        #[arg(long, default_value_t = 1.0)]
        link_radius: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Sample random vectors into a chamber atlas file (merging if it exists).
    #[command(name = "atlas-sample")]
    AtlasSample {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 20)]
        max_len: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also insert the equilateral and (1,2,...,2) vectors.
        #[arg(long)]
        seed_extremal: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Maximal total Betti numbers in an atlas, checked against the bounds.
    #[command(name = "atlas-report")]
    AtlasReport { atlas: PathBuf },
    /// Chamber fingerprint of a vector.
    Fingerprint {
        #[command(flatten)]
        input: LengthArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Plain,
    Csv,
}

/// A command result: named fields plus an optional table.
struct Report {
    command: &'static str,
    input: Value,
    fields: Map<String, Value>,
    table: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
    exit: i32,
}

impl Report {
    fn new(command: &'static str, input: Value) -> Self {
        Self {
            command,
            input,
            fields: Map::new(),
            table: None,
            exit: EXIT_OK,
        }
    }

    fn set(&mut self, key: &str, value: Value) -> &mut Self {
        self.fields.insert(key.to_string(), value);
        self
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut results = self.fields.clone();
                if let Some((headers, rows)) = &self.table {
                    let rows: Vec<Value> = rows
                        .iter()
                        .map(|row| {
                            Value::Object(
                                headers
                                    .iter()
                                    .zip(row)
                                    .map(|(h, c)| (h.to_string(), Value::String(c.clone())))
                                    .collect(),
                            )
                        })
                        .collect();
                    results.insert("rows".into(), Value::Array(rows));
                }
                let record = json!({
                    "command": self.command,
                    "input": self.input,
                    "results": results,
                });
                format!(
                    "{}\n",
                    serde_json::to_string_pretty(&record).expect("serializable")
                )
            }
            Format::Plain => {
                let mut out = format!("command: {}\ninput: {}\n", self.command, flat(&self.input));
                for (k, v) in &self.fields {
                    out.push_str(&format!("{k}: {}\n", flat(v)));
                }
                if let Some((headers, rows)) = &self.table {
                    out.push_str(&headers.join("\t"));
                    out.push('\n');
                    for row in rows {
                        out.push_str(&row.join("\t"));
                        out.push('\n');
                    }
                }
                out
            }
            Format::Csv => {
                let mut out = String::new();
                match &self.table {
                    Some((headers, rows)) => {
                        out.push_str(&headers.join(","));
                        out.push('\n');
                        for row in rows {
                            out.push_str(
                                &row.iter()
                                    .map(|c| csv_cell(c))
                                    .collect::<Vec<_>>()
                                    .join(","),
                            );
                            out.push('\n');
                        }
                    }
                    None => {
                        out.push_str("field,value\n");
                        out.push_str(&format!("command,{}\n", self.command));
                        out.push_str(&format!("input,{}\n", csv_cell(&flat(&self.input))));
                        for (k, v) in &self.fields {
                            out.push_str(&format!("{k},{}\n", csv_cell(&flat(v))));
                        }
                    }
                }
                out
            }
        }
    }
}

fn flat(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(flat).collect::<Vec<_>>().join(" "),
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| format!("{k}={}", flat(v)))
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn big(x: &BigUint) -> Value {
    Value::String(x.to_string())
}

fn bigs<'a>(xs: impl IntoIterator<Item = &'a BigUint>) -> Value {
    Value::Array(xs.into_iter().map(big).collect())
}

fn ints<T: ToString>(xs: &[T]) -> Value {
    Value::Array(xs.iter().map(|x| Value::String(x.to_string())).collect())
}

fn lengths_value(l: &LengthVector) -> Value {
    ints(l.lengths())
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Budget { .. } | Error::Inconclusive { .. } => EXIT_BUDGET,
        Error::DegenerateHessian { .. } => EXIT_CROSS_CHECK,
        _ => EXIT_INVALID,
    }
}

/// Runs the command line and returns the exit code. All standard output is
/// written to `out` in a single write.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let format = if cli.plain {
        Format::Plain
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Json
    };

    let result = with_thread_cap(|| execute(&cli.command));
    match result {
        Ok(report) => {
            let _ = out.write_all(report.render(format).as_bytes());
            report.exit
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn with_thread_cap<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    let cap = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0);
    match cap.and_then(|t| rayon::ThreadPoolBuilder::new().num_threads(t).build().ok()) {
        Some(pool) => pool.install(f),
        None => f(),
    }
}

fn execute(command: &Command) -> Result<Report, Error> {
    match command {
        Command::Betti { input, backend } => cmd_betti(&input.load()?, *backend),
        Command::Poincare { input, backend } => cmd_poincare(&input.load()?, *backend),
        Command::Census { input, backend } => cmd_census(&input.load()?, *backend),
        Command::Bounds { n, generic } => cmd_bounds(*n, *generic),
        Command::Morse { input, points } => cmd_morse(&input.load()?, *points),
        Command::Verify { input } => cmd_verify(&input.load()?),
        Command::B0Oracle {
            input,
            samples,
            closure_tol,
            link_radius,
            seed,
        } => cmd_b0(&input.load()?, *samples, *closure_tol, *link_radius, *seed),
        Command::AtlasSample {
            n,
            samples,
            max_len,
            seed,
            seed_extremal,
            out,
        } => cmd_atlas_sample(*n, *samples, *max_len, *seed, *seed_extremal, out),
        Command::AtlasReport { atlas } => cmd_atlas_report(atlas),
        Command::Fingerprint { input } => cmd_fingerprint(&input.load()?),
    }
}

fn cmd_betti(l: &LengthVector, backend: Backend) -> Result<Report, Error> {
    let b = betti::betti_vector_with(l, backend)?;
    let mut r = Report::new("betti", lengths_value(l));
    r.set("ranks", bigs(&b.ranks))
        .set("total", big(&b.total()))
        .set("generic", Value::Bool(l.is_generic()))
        .set("empty", Value::Bool(betti::is_empty(l)));
    if l.n() <= BETTI_CROSS_CHECK_MAX {
        let pipeline = morse::betti_via_pipeline(l)?;
        r.set("pipeline_checked", Value::Bool(true));
        if pipeline != b {
            r.set("pipeline_ranks", bigs(&pipeline.ranks));
            r.exit = EXIT_CROSS_CHECK;
        }
    } else {
        r.set("pipeline_checked", Value::Bool(false));
    }
    Ok(r)
}

fn cmd_poincare(l: &LengthVector, backend: Backend) -> Result<Report, Error> {
    let p = betti::poincare_with(l, backend)?;
    let mut r = Report::new("poincare", lengths_value(l));
    r.set("q", bigs(&p.q))
        .set("r", bigs(&p.r))
        .set("p", bigs(&p.p))
        .set("polynomial", Value::String(p.render()));
    Ok(r)
}

fn cmd_census(l: &LengthVector, backend: Backend) -> Result<Report, Error> {
    let c = census::census(l, backend)?;
    let mut r = Report::new("census", lengths_value(l));
    r.set(
        "backend",
        Value::String(match backend {
            Backend::Naive => "naive".into(),
            Backend::Dp => "dp".into(),
        }),
    )
    .set("i_max", Value::String(c.i_max.to_string()))
    .set("a", bigs(&c.a))
    .set("b", bigs(&c.b))
    .set("long", big(&c.long))
    .set("overflow_short", big(&c.overflow_short))
    .set("overflow_median", big(&c.overflow_median));
    r.table = Some((
        vec!["k", "a", "b"],
        (0..c.a.len())
            .map(|k| vec![k.to_string(), c.a[k].to_string(), c.b[k].to_string()])
            .collect(),
    ));
    Ok(r)
}

fn cmd_bounds(n: usize, generic: bool) -> Result<Report, Error> {
    let mut r = Report::new("bounds", json!({ "n": n.to_string(), "generic": generic }));
    if generic {
        r.set("bound", big(&betti::bound_total_generic_even(n)?));
    } else {
        r.set("bound", big(&betti::bound_total(n)?))
            .set("asymptotic", json!(betti::bound_asymptotic(n)));
    }
    Ok(r)
}

fn cmd_morse(l: &LengthVector, list_points: bool) -> Result<Report, Error> {
    let points = morse::critical_points(l)?;
    let wa = morse::wa_homology(l)?;
    let d = morse::decomposition(l)?;
    let pipeline = morse::betti_from_decomposition(&d);
    let n = l.n();
    let mut r = Report::new("morse", lengths_value(l));
    r.set("critical_points", Value::String(points.len().to_string()))
        .set("i_max", Value::String(d.i_max.to_string()))
        .set("wa_ranks", ints(&wa.ranks))
        .set("A", ints(&d.a))
        .set("B", ints(&d.b))
        .set("C", ints(&d.c))
        .set("D", ints(&d.d))
        .set(
            "kernel_ranks",
            ints(&(0..n).map(|i| d.kernel_rank(i)).collect::<Vec<_>>()),
        )
        .set(
            "cokernel_ranks",
            ints(&(0..n).map(|i| d.cokernel_rank(i)).collect::<Vec<_>>()),
        )
        .set("pipeline_ranks", bigs(&pipeline.ranks));
    r.table = Some(if list_points {
        (
            vec!["subset", "index", "excess", "value"],
            points
                .iter()
                .map(|p| {
                    vec![
                        p.subset.to_string(),
                        p.index.to_string(),
                        p.excess.to_string(),
                        p.value.to_string(),
                    ]
                })
                .collect(),
        )
    } else {
        (
            vec!["grading", "wa", "A", "B", "C", "D"],
            (0..n)
                .map(|i| {
                    [i as u64, wa.ranks[i], d.a[i], d.b[i], d.c[i], d.d[i]]
                        .iter()
                        .map(u64::to_string)
                        .collect()
                })
                .collect(),
        )
    });
    Ok(r)
}

fn cmd_verify(l: &LengthVector) -> Result<Report, Error> {
    let mut checks: Vec<(&'static str, bool, String)> = Vec::new();
    let formula = betti::betti_vector(l)?;

    let pipeline = morse::betti_via_pipeline(l)?;
    checks.push((
        "pipeline_equals_formula",
        pipeline == formula,
        pipeline.to_string(),
    ));

    let d = morse::decomposition(l)?;
    let wa = morse::wa_homology(l)?;
    let split = (0..l.n()).all(|i| d.a[i] + d.b[i] == wa.ranks[i]);
    checks.push(("wa_splits_into_a_b", split, String::new()));
    let basis: u64 = (0..l.n()).map(|i| d.a[i] + d.c[i] + d.d[i]).sum();
    checks.push((
        "torus_basis_size",
        basis == 1u64 << (l.n() - 1),
        basis.to_string(),
    ));

    if l.n() <= NAIVE_MAX_LINKS {
        let agree = census::census_naive(l)? == census::census_dp(l)?;
        checks.push(("census_backends_agree", agree, String::new()));
    }
    let h0 = betti::component_count(l);
    checks.push((
        "components_equal_b0",
        BigUint::from(h0) == formula.ranks[0],
        h0.to_string(),
    ));
    if l.is_generic() {
        checks.push(("poincare_duality", formula.is_palindromic(), String::new()));
    }

    if l.n() <= VERIFY_NUMERIC_MAX {
        let scale = (l.total() as f64).powi(2);
        let (mut grad_ok, mut value_ok, mut index_ok) = (true, true, true);
        let mut worst_grad = 0.0f64;
        for m in l.all_masks()? {
            if l.classify_subset(m) != SubsetClass::Long {
                continue;
            }
            let c = numeric::collinear_config(m);
            let g = numeric::grad_f(l, &c)
                .iter()
                .fold(0.0f64, |a, x| a.max(x.abs()));
            worst_grad = worst_grad.max(g);
            grad_ok &= g <= 1e-9 * scale;
            let excess = l.signed_excess(m) as f64;
            let expected = -excess * excess;
            value_ok &= (numeric::f_arm(l, &c) - expected).abs() <= 1e-10 * expected.abs();
            index_ok &= numeric::morse_index_numeric(l, m)? == l.n() - m.cardinality();
        }
        checks.push((
            "critical_gradients_vanish",
            grad_ok,
            format!("{worst_grad:e}"),
        ));
        checks.push(("critical_values", value_ok, String::new()));
        checks.push(("morse_indices", index_ok, String::new()));
    }

    let mut r = Report::new("verify", lengths_value(l));
    r.set("betti", bigs(&formula.ranks));
    let all_ok = checks.iter().all(|(_, ok, _)| *ok);
    r.set("passed", Value::Bool(all_ok));
    r.table = Some((
        vec!["check", "status", "detail"],
        checks
            .iter()
            .map(|(name, ok, detail)| {
                vec![
                    name.to_string(),
                    if *ok { "pass" } else { "FAIL" }.to_string(),
                    detail.clone(),
                ]
            })
            .collect(),
    ));
    if !all_ok {
        r.exit = EXIT_CROSS_CHECK;
    }
    Ok(r)
}

fn cmd_b0(
    l: &LengthVector,
    samples: usize,
    closure_tol: f64,
    link_radius: f64,
    seed: u64,
) -> Result<Report, Error> {
    let report = numeric::sample_closed_configurations(l, samples, closure_tol, seed)?;
    let components = numeric::sample_components(l, samples, closure_tol, link_radius, seed)?;
    let expected = betti::component_count(l);
    let mut r = Report::new("b0-oracle", lengths_value(l));
    r.set("samples", Value::String(samples.to_string()))
        .set("seed", Value::String(seed.to_string()))
        .set("closure_tol", json!(closure_tol))
        .set("link_radius", json!(link_radius))
        .set("survivors", Value::String(report.closed.len().to_string()))
        .set("stalled", Value::String(report.stalled.to_string()))
        .set("exhausted", Value::String(report.exhausted.to_string()))
        .set("components", Value::String(components.to_string()))
        .set("component_count", Value::String(expected.to_string()))
        .set("agrees", Value::Bool(components == expected as usize));
    Ok(r)
}

fn cmd_atlas_sample(
    n: usize,
    samples: usize,
    max_len: u64,
    seed: u64,
    seed_extremal: bool,
    path: &Path,
) -> Result<Report, Error> {
    let mut sampled = atlas::sample_atlas(n, samples, max_len, seed)?;
    if seed_extremal {
        sampled.seed_extremal()?;
    }
    let mut merged = if path.exists() {
        Atlas::read_jsonl(BufReader::new(fs::File::open(path)?))?
    } else {
        Atlas::new(n)
    };
    let before = merged.len();
    merged.merge(sampled)?;

    let tmp = path.with_extension("tmp");
    {
        let mut file = std::io::BufWriter::new(fs::File::create(&tmp)?);
        merged.write_jsonl(&mut file)?;
        file.flush()?;
    }
    fs::rename(&tmp, path)?;

    let mut r = Report::new(
        "atlas-sample",
        json!({
            "n": n.to_string(),
            "samples": samples.to_string(),
            "max_len": max_len.to_string(),
            "seed": seed.to_string(),
        }),
    );
    r.set("path", Value::String(path.display().to_string()))
        .set("chambers", Value::String(merged.len().to_string()))
        .set(
            "new_chambers",
            Value::String((merged.len() - before).to_string()),
        );
    Ok(r)
}

fn cmd_atlas_report(path: &Path) -> Result<Report, Error> {
    let atlas = Atlas::read_jsonl(BufReader::new(fs::File::open(path)?))?;
    let rep = atlas::atlas_extremes(&atlas)?;
    let mut r = Report::new("atlas-report", Value::String(path.display().to_string()));
    r.set("n", Value::String(rep.n.to_string()))
        .set("chambers", Value::String(rep.chambers.to_string()))
        .set("bound", big(&rep.bound))
        .set("max_total", big(&rep.max_total))
        .set("argmax", lengths_value(&rep.argmax));
    if let Some(b) = &rep.bound_generic {
        r.set("bound_generic", big(b));
    }
    if let (Some(t), Some(v)) = (&rep.max_generic_total, &rep.argmax_generic) {
        r.set("max_generic_total", big(t))
            .set("argmax_generic", lengths_value(v));
    }
    r.set(
        "violations",
        Value::String(rep.violations.len().to_string()),
    );
    r.table = Some((
        vec!["kind", "representative", "total", "bound"],
        rep.violations
            .iter()
            .map(|v| {
                vec![
                    match v.kind {
                        ViolationKind::AllVectors => "all",
                        ViolationKind::GenericEven => "generic_even",
                    }
                    .to_string(),
                    v.representative.to_string(),
                    v.total.to_string(),
                    v.bound.to_string(),
                ]
            })
            .collect(),
    ));
    if !rep.violations.is_empty() {
        r.exit = EXIT_CROSS_CHECK;
    }
    Ok(r)
}

fn cmd_fingerprint(l: &LengthVector) -> Result<Report, Error> {
    let fp = atlas::fingerprint(l)?;
    let (sorted, permutation) = l.sorted();
    let hex = |ms: &[crate::model::SubsetMask]| {
        Value::Array(ms.iter().map(|m| Value::String(m.to_hex())).collect())
    };
    let mut r = Report::new("fingerprint", lengths_value(l));
    r.set("n", Value::String(fp.n.to_string()))
        .set("sorted", lengths_value(&sorted))
        .set("permutation", ints(&permutation))
        .set("short_masks", hex(&fp.short_masks))
        .set("median_masks", hex(&fp.median_masks))
        .set("generic", Value::Bool(fp.is_generic()));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("polyspace").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn betti_json() {
        let (code, out, _) = run_str(&["betti", "3,2,2,1,1"]);
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["results"]["ranks"], json!(["1", "4", "1"]));
        assert_eq!(v["results"]["total"], json!("6"));
        assert_eq!(v["results"]["generic"], json!(true));
        assert_eq!(v["results"]["empty"], json!(false));
    }

    #[test]
    fn bounds_generic() {
        let (code, out, _) = run_str(&["bounds", "6", "--generic"]);
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["results"]["bound"], json!("20"));
        let (code, _, err) = run_str(&["bounds", "7", "--generic"]);
        assert_eq!(code, EXIT_INVALID);
        assert!(err.contains("even"));
    }

    #[test]
    fn invalid_length_names_token() {
        let (code, out, err) = run_str(&["betti", "3,0,1"]);
        assert_eq!(code, EXIT_INVALID);
        assert!(out.is_empty());
        assert!(err.contains("\"0\""), "{err}");
        let (code, _, err) = run_str(&["betti", "3,-2,1"]);
        assert_eq!(code, EXIT_INVALID);
        assert!(err.contains("\"-2\""), "{err}");
    }

    #[test]
    fn budget_exit_code() {
        let (code, _, _) = run_str(&["census", "--backend", "naive", &vec!["1"; 31].join(",")]);
        assert_eq!(code, EXIT_BUDGET);
    }

    #[test]
    fn plain_and_csv() {
        let (_, out, _) = run_str(&["--plain", "poincare", "3,2,2,1,1"]);
        assert!(out.contains("polynomial: 1 + 4t + t^2"), "{out}");
        let (_, out, _) = run_str(&["census", "--csv", "1,1,1,1"]);
        assert_eq!(out, "k,a,b\n0,1,0\n1,0,3\n");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_str(&["nope"]).0, EXIT_INVALID);
        assert_eq!(run_str(&["betti"]).0, EXIT_INVALID);
        assert_eq!(run_str(&["--help"]).0, EXIT_OK);
    }
}
