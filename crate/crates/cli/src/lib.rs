//! Command implementations behind the `periodpoly` binary. Every command
//! produces an [`Emission`]: a JSON document (the canonical form) plus a
//! flat CSV projection of the same data.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use periodpoly::oracle::{
    oracle_polynomial_with_limit, CheckStatus, IdentityCheck, SUBSET_DEGREE_BOUND,
};
use periodpoly::orbit::{
    check_counting_identities, difference_vector, sliding_class_distinct, subset_orbit_count,
};
use periodpoly::symbol::{decompose_product, gauss_symbol, z_of, SymbolArgument};
use periodpoly::{
    a2_closed, a3_closed, cubic_poly, odd_primes, polynomial_within, quadratic_poly, quartic_poly,
    subset_polynomial, transversals, verify_identities, verify_identities_at, Breakdown, Cubic,
    CyclotomicContext, Int, KSet, Polynomial, Quartic,
};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA: &str = "period-poly/1";

/// Built-in work limit when neither `--work-limit` nor the environment sets one.
pub const DEFAULT_WORK_LIMIT: u64 = periodpoly::DEFAULT_WORK_LIMIT;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}; raise --work-limit or PERIODPOLY_WORKLIMIT")]
    ResourceLimit(String),
    #[error("consistency failure: {0}")]
    Consistency(String),
    #[error("I/O error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::ResourceLimit(_) => 2,
            CliError::Consistency(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl From<periodpoly::Error> for CliError {
    fn from(err: periodpoly::Error) -> Self {
        use periodpoly::Error::*;
        match err {
            InvalidArgument(_) => CliError::Usage(err.to_string()),
            ResourceLimit { .. } => CliError::ResourceLimit(err.to_string()),
            Consistency(_) | Overflow(_) => CliError::Consistency(err.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "periodpoly", version, about = "Exact Gauss period polynomials")]
pub struct Cli {
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, env = "PERIODPOLY_WORKLIMIT", default_value_t = DEFAULT_WORK_LIMIT, global = true)]
    pub work_limit: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The period polynomial of degree d for the prime p.
    Poly {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: usize,
        /// Primitive root (default: the smallest).
        #[arg(long)]
        g: Option<u64>,
        /// Include per-divisor orbit contributions for every coefficient.
        #[arg(long)]
        breakdown: bool,
    },
    /// z(S) for a subset S of Z/dZ, or the symbol of a list of classes.
    Symbol {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        g: Option<u64>,
        /// Elements of S, comma separated.
        #[arg(
            long,
            value_delimiter = ',',
            conflicts_with = "classes",
            required_unless_present = "classes"
        )]
        set: Vec<usize>,
        /// Class indices s_1, …, s_n (repeats allowed) for the symbol {C_s1, …, C_sn}.
        #[arg(long, value_delimiter = ',')]
        classes: Vec<usize>,
        /// Also expand the period product over S as m·z + Σ μ_t η_t.
        #[arg(long, requires = "set")]
        decompose: bool,
    },
    /// Orbit transversals of k-subsets of Z/dZ with counting checks.
    Orbits {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
    },
    /// Quadratic-form identities for the cubic and quartic periods of p.
    Verify {
        #[arg(long)]
        p: u64,
    },
    /// Batch checks over a range of primes.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    PolyAgreement,
    ClosedForms,
    Myerson,
    Counting,
}

impl Check {
    fn name(self) -> &'static str {
        match self {
            Check::PolyAgreement => "poly-agreement",
            Check::ClosedForms => "closed-forms",
            Check::Myerson => "myerson",
            Check::Counting => "counting",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 3)]
    pub p_min: u64,
    #[arg(long)]
    pub p_max: u64,
    /// Only these divisors d (comma separated).
    #[arg(long, value_delimiter = ',', conflicts_with = "max_d")]
    pub d: Vec<usize>,
    /// Only divisors d up to this bound.
    #[arg(long)]
    pub max_d: Option<usize>,
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "poly-agreement"
    )]
    pub checks: Vec<Check>,
}

/// A finished report, ready to write in either format.
pub struct Emission {
    pub json: Value,
    pub csv: String,
    /// Some asserted check failed; the process exits with status 3.
    pub failed: bool,
}

impl Emission {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s =
                    serde_json::to_string_pretty(&self.json).expect("JSON values serialize");
                s.push('\n');
                s
            }
            Format::Csv => self.csv.clone(),
        }
    }
}

fn to_csv<R: Serialize>(rows: &[R]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| CliError::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("CSV of UTF-8 fields"))
}

fn document(command: &str, body: Value) -> Value {
    let mut doc = json!({ "schema": SCHEMA, "command": command });
    if let (Value::Object(doc), Value::Object(body)) = (&mut doc, body) {
        doc.extend(body);
    }
    doc
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

pub fn run(cli: &Cli) -> CliResult<Emission> {
    let limit = cli.output.work_limit;
    match &cli.command {
        Command::Poly { p, d, g, breakdown } => cmd_poly(*p, *d, *g, *breakdown, limit),
        Command::Symbol {
            p,
            d,
            g,
            set,
            classes,
            decompose,
        } => cmd_symbol(*p, *d, *g, set, classes, *decompose, limit),
        Command::Orbits { d, k } => cmd_orbits(*d, *k, limit),
        Command::Verify { p } => cmd_verify(*p),
        Command::Sweep(args) => cmd_sweep(args, cli.output.jobs, limit),
    }
}

#[derive(Serialize)]
struct CoefficientRow {
    p: u64,
    d: usize,
    g: u64,
    k: usize,
    a_k: String,
    expansion_k: String,
}

pub fn cmd_poly(
    p: u64,
    d: usize,
    g: Option<u64>,
    breakdown: bool,
    limit: u64,
) -> CliResult<Emission> {
    let ctx = CyclotomicContext::new(p, d, g)?;
    let (poly, breakdowns): (Polynomial, Vec<Breakdown>) = polynomial_within(&ctx, limit)?;
    let mut body = to_value(&poly);
    body["polynomial"] = json!(poly.to_string());
    if breakdown {
        body["breakdown"] = to_value(&breakdowns);
    }
    let rows: Vec<CoefficientRow> = (0..=d)
        .map(|k| CoefficientRow {
            p,
            d,
            g: poly.g,
            k,
            a_k: if k == 0 {
                "1".into()
            } else {
                poly.a(k).to_string()
            },
            expansion_k: poly.expansion[k].to_string(),
        })
        .collect();
    Ok(Emission {
        json: document("poly", body),
        csv: to_csv(&rows)?,
        failed: false,
    })
}

#[derive(Serialize)]
struct SymbolRow {
    p: u64,
    d: usize,
    g: u64,
    arguments: String,
    value: String,
    mu: String,
}

pub fn cmd_symbol(
    p: u64,
    d: usize,
    g: Option<u64>,
    set: &[usize],
    classes: &[usize],
    decompose: bool,
    limit: u64,
) -> CliResult<Emission> {
    let ctx = CyclotomicContext::new(p, d, g)?;
    let mut body = json!({ "p": p, "d": d, "g": ctx.g() });
    let row = if !set.is_empty() {
        let set = KSet::new(set.to_vec(), d)?;
        let z: Int = z_of(&ctx, &set)?;
        body["S"] = to_value(&set);
        body["z"] = json!(z.to_string());
        let mut mu = String::new();
        if decompose {
            let dec = decompose_product(&ctx, &set, limit)?;
            if Int::from(dec.z) != z {
                return Err(CliError::Consistency(format!(
                    "z{set} is {z} by convolution but {} by enumeration",
                    dec.z
                )));
            }
            let strings: Vec<String> = dec.mu.iter().map(u64::to_string).collect();
            mu = strings.join(";");
            body["mu"] = json!(strings);
        }
        SymbolRow {
            p,
            d,
            g: ctx.g(),
            arguments: set.to_string(),
            value: z.to_string(),
            mu,
        }
    } else {
        let args: Vec<SymbolArgument> = classes.iter().map(|&s| SymbolArgument::Class(s)).collect();
        let value: Int = gauss_symbol(&ctx, &args)?;
        body["classes"] = json!(classes);
        body["symbol"] = json!(value.to_string());
        let names: Vec<String> = classes.iter().map(|s| format!("C{s}")).collect();
        SymbolRow {
            p,
            d,
            g: ctx.g(),
            arguments: names.join(";"),
            value: value.to_string(),
            mu: String::new(),
        }
    };
    Ok(Emission {
        json: document("symbol", body),
        csv: to_csv(&[row])?,
        failed: false,
    })
}

#[derive(Serialize)]
struct OrbitEntry {
    representative: KSet,
    difference_vector: String,
    sliding_class: Vec<String>,
    orbit_length: usize,
}

#[derive(Serialize)]
struct OrbitRow {
    d: usize,
    k: usize,
    e: usize,
    representative: String,
    difference_vector: String,
    sliding_class: String,
    orbit_length: usize,
}

pub fn cmd_orbits(d: usize, k: usize, limit: u64) -> CliResult<Emission> {
    if k == 0 || k > d {
        return Err(CliError::Usage(format!(
            "need 1 <= k <= d, got d = {d}, k = {k}"
        )));
    }
    let work = subset_orbit_count(d);
    if work > limit as u128 {
        return Err(periodpoly::Error::ResourceLimit {
            work,
            limit: limit as u128,
        }
        .into());
    }
    let reps = transversals(d, k)?;
    let report = check_counting_identities(d, k)?;
    let mut blocks = serde_json::Map::new();
    let mut rows = Vec::new();
    for (&e, sets) in &reps {
        let entries: Vec<OrbitEntry> = sets
            .iter()
            .map(|s| OrbitEntry {
                representative: s.clone(),
                difference_vector: difference_vector(s).to_string(),
                sliding_class: sliding_class_distinct(&difference_vector(s))
                    .iter()
                    .map(ToString::to_string)
                    .collect(),
                orbit_length: d / e,
            })
            .collect();
        for entry in &entries {
            rows.push(OrbitRow {
                d,
                k,
                e,
                representative: entry.representative.to_string(),
                difference_vector: entry.difference_vector.clone(),
                sliding_class: entry.sliding_class.join(";"),
                orbit_length: entry.orbit_length,
            });
        }
        blocks.insert(e.to_string(), to_value(&entries));
    }
    let body = json!({
        "d": d,
        "k": k,
        "transversals": blocks,
        "counts": report.counts,
        "identities": {
            "binomial": report.binomial_identity,
            "mobius_corrected": report.mobius_corrected,
            "mobius_printed": report.mobius_literal,
            "reduction": report.reduction_identity,
        },
    });
    Ok(Emission {
        json: document("orbits", body),
        csv: to_csv(&rows)?,
        failed: !report.ok(),
    })
}

#[derive(Serialize)]
struct IdentityRow<'a> {
    p: u64,
    d: usize,
    name: &'a str,
    lhs: String,
    rhs: String,
    status: CheckStatus,
    asserted: bool,
}

pub fn cmd_verify(p: u64) -> CliResult<Emission> {
    let reports = verify_identities(p)?;
    let rows: Vec<IdentityRow> = reports
        .iter()
        .flat_map(|r| {
            r.identities
                .iter()
                .map(move |c: &IdentityCheck| IdentityRow {
                    p: r.p,
                    d: r.d,
                    name: &c.name,
                    lhs: c.lhs.to_string(),
                    rhs: c.rhs.to_string(),
                    status: c.status,
                    asserted: c.asserted,
                })
        })
        .collect();
    Ok(Emission {
        json: document("verify", json!({ "p": p, "reports": reports })),
        csv: to_csv(&rows)?,
        failed: reports.iter().any(|r| !r.ok()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RecordStatus {
    Pass,
    Fail,
    /// Over the work limit; not counted as a failure.
    Skipped,
}

/// One sweep outcome for one `(p, d)` and one check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct SweepRecord {
    pub p: u64,
    pub d: usize,
    pub g: u64,
    pub check: String,
    pub status: String,
    pub detail: String,
}

fn record(
    ctx: &CyclotomicContext,
    check: Check,
    outcome: CliResult<(RecordStatus, String)>,
) -> SweepRecord {
    let (status, detail) = match outcome {
        Ok(v) => v,
        Err(CliError::ResourceLimit(msg)) => (RecordStatus::Skipped, msg),
        Err(err) => (RecordStatus::Fail, err.to_string()),
    };
    SweepRecord {
        p: ctx.p(),
        d: ctx.d(),
        g: ctx.g(),
        check: check.name().to_string(),
        status: to_value(&status)
            .as_str()
            .expect("unit variant")
            .to_string(),
        detail,
    }
}

fn pass_if(ok: bool, detail: String) -> (RecordStatus, String) {
    (
        if ok {
            RecordStatus::Pass
        } else {
            RecordStatus::Fail
        },
        detail,
    )
}

fn check_poly_agreement(ctx: &CyclotomicContext, limit: u64) -> CliResult<(RecordStatus, String)> {
    let (engine, _): (Polynomial, _) = polynomial_within(ctx, limit)?;
    let oracle: Polynomial = oracle_polynomial_with_limit(ctx, limit)?;
    if !engine.same_coefficients(&oracle) {
        return Ok(pass_if(
            false,
            format!("{engine} but power sums give {oracle}"),
        ));
    }
    if ctx.d() <= 6 {
        let subset: Polynomial = subset_polynomial(ctx, SUBSET_DEGREE_BOUND, limit)?;
        if !engine.same_coefficients(&subset) {
            return Ok(pass_if(
                false,
                format!("{engine} but subset sums give {subset}"),
            ));
        }
    }
    Ok(pass_if(true, engine.to_string()))
}

fn check_closed_forms(
    ctx: &CyclotomicContext,
    limit: u64,
) -> CliResult<Option<(RecordStatus, String)>> {
    let (p, d) = (ctx.p(), ctx.d());
    if d < 2 {
        return Ok(None);
    }
    let (poly, _): (Polynomial, _) = polynomial_within(ctx, limit)?;
    let mut failures = Vec::new();
    let a2: Int = a2_closed(p, d)?;
    if &a2 != poly.a(2) {
        failures.push(format!("a_2 closed form {a2}"));
    }
    if d >= 3 {
        let a3: Int = a3_closed(ctx)?;
        if &a3 != poly.a(3) {
            failures.push(format!("a_3 closed form {a3}"));
        }
    }
    // The explicit low-degree forms use the smallest primitive root, and the
    // polynomial does not depend on that choice.
    let explicit = match d {
        2 => Some(quadratic_poly::<Int>(p)?),
        3 => Some(cubic_poly::<Int>(p).map(|(poly, _): (Polynomial, Cubic)| poly)?),
        4 => Some(quartic_poly::<Int>(p).map(|(poly, _): (Polynomial, Quartic)| poly)?),
        _ => None,
    };
    if let Some(explicit) = explicit {
        if !explicit.same_coefficients(&poly) {
            failures.push(format!("explicit form {explicit}"));
        }
    }
    Ok(Some(if failures.is_empty() {
        pass_if(true, poly.to_string())
    } else {
        pass_if(
            false,
            format!("{poly} disagrees with {}", failures.join(", ")),
        )
    }))
}

fn check_counting(d: usize, limit: u64) -> CliResult<(RecordStatus, String)> {
    let work = subset_orbit_count(d).saturating_mul(d as u128);
    if work > limit as u128 {
        return Err(periodpoly::Error::ResourceLimit {
            work,
            limit: limit as u128,
        }
        .into());
    }
    let mut bad = Vec::new();
    for k in 1..=d {
        if !check_counting_identities(d, k)?.ok() {
            bad.push(k.to_string());
        }
    }
    Ok(if bad.is_empty() {
        pass_if(true, format!("k = 1..={d}"))
    } else {
        pass_if(false, format!("fails for k = {}", bad.join(",")))
    })
}

fn check_myerson(p: u64, d: usize) -> CliResult<Option<(RecordStatus, String)>> {
    let Some(report) = verify_identities_at(p, d)? else {
        return Ok(None);
    };
    let notes: Vec<String> = report
        .identities
        .iter()
        .filter(|c| c.status == CheckStatus::Fail)
        .map(|c| format!("{} fails ({} vs {})", c.name, c.lhs, c.rhs))
        .collect();
    let detail = if notes.is_empty() {
        "all identities hold".to_string()
    } else {
        notes.join("; ")
    };
    Ok(Some(pass_if(report.ok(), detail)))
}

fn sweep_task(p: u64, d: usize, checks: &[Check], limit: u64) -> CliResult<Vec<SweepRecord>> {
    let ctx = CyclotomicContext::new(p, d, None)?;
    let mut out = Vec::new();
    for &check in checks {
        let outcome = match check {
            Check::PolyAgreement => Some(check_poly_agreement(&ctx, limit)),
            Check::ClosedForms => check_closed_forms(&ctx, limit).transpose(),
            Check::Myerson if d == 3 || d == 4 => check_myerson(p, d).transpose(),
            Check::Myerson => None,
            Check::Counting => Some(check_counting(d, limit)),
        };
        if let Some(outcome) = outcome {
            out.push(record(&ctx, check, outcome));
        }
    }
    Ok(out)
}

pub fn sweep_records(
    args: &SweepArgs,
    jobs: Option<usize>,
    limit: u64,
) -> CliResult<Vec<SweepRecord>> {
    if args.p_min < 3 {
        return Err(CliError::Usage(format!(
            "--p-min must be at least 3, got {}",
            args.p_min
        )));
    }
    if args.d.contains(&0) || args.max_d == Some(0) {
        return Err(CliError::Usage("divisor bounds must be positive".into()));
    }
    let mut checks = args.checks.clone();
    checks.sort_unstable();
    checks.dedup();
    let tasks: Vec<(u64, usize)> = odd_primes(args.p_min, args.p_max)
        .flat_map(|p| {
            periodpoly::field::divisors(p - 1)
                .into_iter()
                .map(move |d| (p, d as usize))
        })
        .filter(|&(_, d)| {
            (args.d.is_empty() || args.d.contains(&d)) && args.max_d.is_none_or(|b| d <= b)
        })
        .collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        if n == 0 {
            return Err(CliError::Usage("--jobs must be positive".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    // par_iter().collect() keeps task order, so output is independent of
    // scheduling.
    let results: Vec<CliResult<Vec<SweepRecord>>> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(p, d)| sweep_task(p, d, &checks, limit))
            .collect()
    });
    let mut records = Vec::new();
    for r in results {
        records.extend(r?);
    }
    Ok(records)
}

pub fn cmd_sweep(args: &SweepArgs, jobs: Option<usize>, limit: u64) -> CliResult<Emission> {
    let records = sweep_records(args, jobs, limit)?;
    let count = |s: &str| records.iter().filter(|r| r.status == s).count();
    let (passed, failed, skipped) = (count("pass"), count("fail"), count("skipped"));
    let checks: Vec<&str> = args.checks.iter().map(|c| c.name()).collect();
    let body = json!({
        "p_min": args.p_min,
        "p_max": args.p_max,
        "checks": checks,
        "summary": { "records": records.len(), "pass": passed, "fail": failed, "skipped": skipped },
        "records": records,
    });
    Ok(Emission {
        json: document("sweep", body),
        csv: to_csv(&records)?,
        failed: failed > 0,
    })
}

/// One-line summary for stderr after a sweep.
pub fn sweep_summary(emission: &Emission) -> Option<String> {
    let s = emission.json.get("summary")?;
    Some(format!(
        "sweep: {} records, {} pass, {} fail, {} skipped",
        s["records"], s["pass"], s["fail"], s["skipped"]
    ))
}
