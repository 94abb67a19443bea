//! Command-line front end for the workbench.
//!
//! Every command runs the same exact computations the library exposes,
//! once per requested prime, and prints either an ASCII table or a JSON
//! document with a top-level schema version. Identical flag sets produce
//! byte-identical JSON: all randomness is seeded and the seed is recorded
//! in the output. Diagnostics go to stderr; exit code 0 means success,
//! 1 means a verification found a mismatch, 2 means the request could not
//! be carried out (usage, unknown entry, exhausted budget).

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use syzlab_core::budget::Budget;
use syzlab_core::catalog::{self, variety, VarietySpec};
use syzlab_core::error::Error as CoreError;
use syzlab_core::groebner::Ideal;
use syzlab_core::hilbert::same_hilbert_polynomial;
use syzlab_core::koszul::{betti_table, koszul_beta_p1};
use syzlab_core::rank_locus::delta;
use syzlab_core::repro::{run_target, ReproConfig, Target};
use syzlab_core::syzygy::{
    general_class_scheme, omit_one_scheme, scroll_quadric_count, syz_intersection,
    verify_scroll_witnesses, SyzygySchemeReport,
};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "syzlab", version, about = "Exact workbench for quadric-generated projective varieties")]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct GlobalOpts {
    /// Primes to run under, comma separated; each must be an odd prime
    #[arg(long, global = true, value_delimiter = ',', default_value = "31,101")]
    primes: Vec<u32>,

    /// Seed for every sampled choice; recorded in the output
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    /// Extended budget tier; also unlocks the larger-prime enumerations
    #[arg(long, global = true)]
    deep: bool,

    /// Emit a JSON document instead of a table
    #[arg(long, global = true)]
    json: bool,

    /// Override the Groebner reduction-step budget
    #[arg(long, global = true)]
    gb_steps: Option<u64>,

    /// Override the strand-matrix column cap
    #[arg(long, global = true)]
    matrix_cols: Option<usize>,

    /// Override the strand-matrix row cap
    #[arg(long, global = true)]
    matrix_rows: Option<usize>,

    /// Override the enumeration point budget
    #[arg(long, global = true)]
    enum_points: Option<u64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Inspect, export, or verify the built-in catalog
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
    /// Hilbert data of an entry's ideal
    Hilbert { id: String },
    /// Linear strand of the graded Betti table
    Betti {
        id: String,
        /// Single strand position instead of the whole strand
        #[arg(long, conflicts_with = "all")]
        p: Option<usize>,
        /// Extend one position past the codimension to show the vanishing
        #[arg(long)]
        all: bool,
    },
    /// Count independent quadrics of bounded rank in the entry's pencil
    Delta {
        id: String,
        /// Rank bound
        #[arg(long)]
        t: usize,
    },
    /// Scheme cut out by a subset of the entry's quadrics
    Syzscheme {
        id: String,
        /// Drop this quadric and keep the rest
        #[arg(long, conflicts_with = "intersect")]
        omit: Option<usize>,
        /// Intersect all omit-one schemes and compare against the entry
        #[arg(long)]
        intersect: bool,
    },
    /// Verify the witness matrices of scrolls through an entry
    Scrolls { id: String },
    /// Run a named bundle of pinned assertions
    Repro {
        /// One of: eq1, eq3, prop3.2, prop3.3, prop5.3, prop5.4, prop6.3, thm6.1
        target: String,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// One line per entry
    List,
    /// Everything recorded about one entry
    Show { id: String },
    /// Print entries in the catalog text format
    Export {
        /// Entries to export; all of them when empty
        ids: Vec<String>,
    },
    /// Parse a catalog text file and verify each record computationally
    Import { path: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            if let Some(CoreError::UnknownVariety(id)) = e.downcast_ref::<CoreError>() {
                eprintln!("syzlab: unknown variety `{id}`");
            } else {
                eprintln!("syzlab: {e:#}");
            }
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let opts = &cli.opts;
    if opts.primes.is_empty() {
        return Err(anyhow!("at least one prime is required"));
    }
    for &p in &opts.primes {
        if p < 3 || p % 2 == 0 {
            return Err(anyhow!("prime {p} is not odd and at least 3"));
        }
    }
    let budget = resolve_budget(opts);
    let code = match &cli.cmd {
        Cmd::Catalog { cmd } => run_catalog(cmd, opts, &budget)?,
        Cmd::Hilbert { id } => run_hilbert(id, opts, &budget)?,
        Cmd::Betti { id, p, all } => run_betti(id, *p, *all, opts, &budget)?,
        Cmd::Delta { id, t } => run_delta(id, *t, opts, &budget)?,
        Cmd::Syzscheme { id, omit, intersect } => {
            run_syzscheme(id, *omit, *intersect, opts, &budget)?
        }
        Cmd::Scrolls { id } => run_scrolls(id, opts, &budget)?,
        Cmd::Repro { target } => run_repro(target, opts, &budget)?,
    };
    Ok(ExitCode::from(code))
}

/// Deep tier first, then per-flag overrides, then the environment scale.
fn resolve_budget(opts: &GlobalOpts) -> Budget {
    let mut b = if opts.deep { Budget::deep() } else { Budget::default() };
    if let Some(v) = opts.gb_steps {
        b.gb_steps = v;
    }
    if let Some(v) = opts.matrix_cols {
        b.matrix_cols = v;
    }
    if let Some(v) = opts.matrix_rows {
        b.matrix_rows = v;
    }
    if let Some(v) = opts.enum_points {
        b.enum_points = v;
    }
    if let Ok(raw) = std::env::var("SYZLAB_BUDGET_SCALE") {
        match raw.trim().parse::<f64>() {
            Ok(f) => b = b.scaled(f),
            Err(_) => eprintln!("syzlab: ignoring unparsable SYZLAB_BUDGET_SCALE `{raw}`"),
        }
    }
    b
}

fn envelope(opts: &GlobalOpts, command: &str, primes: &[u32], result: Value) -> Value {
    json!({
        "schema": SCHEMA,
        "command": command,
        "primes": primes,
        "seed": opts.seed,
        "deep": opts.deep,
        "result": result,
    })
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

/// Enumeration-heavy commands stay on the first prime unless the deep
/// tier is on; everything else runs every requested prime.
fn enumeration_primes(opts: &GlobalOpts) -> Vec<u32> {
    if opts.deep {
        opts.primes.clone()
    } else {
        vec![opts.primes[0]]
    }
}

fn run_catalog(cmd: &CatalogCmd, opts: &GlobalOpts, budget: &Budget) -> anyhow::Result<u8> {
    let prime = opts.primes[0];
    match cmd {
        CatalogCmd::List => {
            let entries = catalog::all(prime)?;
            if opts.json {
                let rows: Vec<Value> = entries.iter().map(entry_summary).collect();
                print_json(&envelope(opts, "catalog-list", &[prime], json!(rows)));
            } else {
                println!(
                    "{:<10} {:>7} {:>4} {:>7} {:>6} {:>9}  recipe",
                    "id", "ambient", "dim", "degree", "codim", "quadrics"
                );
                for e in &entries {
                    println!(
                        "{:<10} {:>7} {:>4} {:>7} {:>6} {:>9}  {}",
                        e.id,
                        e.ambient(),
                        e.expected.dim,
                        e.expected.degree,
                        e.expected.codim,
                        e.quadrics.len(),
                        e.recipe
                    );
                }
            }
            Ok(0)
        }
        CatalogCmd::Show { id } => {
            let e = variety(id, prime)?;
            if opts.json {
                print_json(&envelope(opts, "catalog-show", &[prime], entry_detail(&e)));
            } else {
                println!("id        {}", e.id);
                if !e.aliases.is_empty() {
                    println!("aliases   {}", e.aliases.join(", "));
                }
                println!("ambient   P^{} over F_{}", e.ambient(), prime);
                println!("vars      {}", e.ring.names().join(" "));
                println!(
                    "expected  dim {}  degree {}  codim {}",
                    e.expected.dim, e.expected.degree, e.expected.codim
                );
                println!("recipe    {}", e.recipe);
                if !e.notes.is_empty() {
                    println!("notes     {}", e.notes);
                }
                println!("quadrics  ({})", e.quadrics.len());
                for q in &e.quadrics {
                    println!("  {q}");
                }
                if !e.witnesses.is_empty() {
                    println!("witnesses ({})", e.witnesses.len());
                    for w in &e.witnesses {
                        println!("  {} as {}", w.label, w.scroll_type);
                    }
                }
                if !e.pending_witnesses.is_empty() {
                    println!("pending   {}", e.pending_witnesses.join(", "));
                }
            }
            Ok(0)
        }
        CatalogCmd::Export { ids } => {
            let entries = if ids.is_empty() {
                catalog::all(prime)?
            } else {
                ids.iter()
                    .map(|id| variety(id, prime))
                    .collect::<Result<Vec<_>, _>>()?
            };
            print!("{}", catalog::export_text(&entries));
            Ok(0)
        }
        CatalogCmd::Import { path } => {
            let src = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let records = catalog::import_text(&src)?;
            let mut rows = Vec::new();
            let mut failures = 0usize;
            for r in &records {
                let ideal = Ideal::new(&r.ring, r.generators.clone())?;
                let h = ideal.hilbert(budget)?;
                let ok = h.projective_dimension() == Some(r.expected.dim)
                    && h.degree == r.expected.degree
                    && r.ring.arity() == r.expected.dim + r.expected.codim + 1;
                if !ok {
                    failures += 1;
                }
                rows.push((r.id.clone(), ok, h.projective_dimension(), h.degree));
            }
            if opts.json {
                let items: Vec<Value> = rows
                    .iter()
                    .map(|(id, ok, dim, deg)| {
                        json!({ "id": id, "verified": ok, "dimension": dim, "degree": deg })
                    })
                    .collect();
                print_json(&envelope(opts, "catalog-import", &[prime], json!(items)));
            } else {
                for (id, ok, dim, deg) in &rows {
                    println!(
                        "{} {:<10} dim {} degree {}",
                        if *ok { "ok  " } else { "FAIL" },
                        id,
                        dim.map_or("none".to_string(), |d| d.to_string()),
                        deg
                    );
                }
                println!("{} of {} records verified", rows.len() - failures, rows.len());
            }
            Ok(if failures == 0 { 0 } else { 1 })
        }
    }
}

fn entry_summary(e: &VarietySpec) -> Value {
    json!({
        "id": e.id,
        "ambient": e.ambient(),
        "dim": e.expected.dim,
        "degree": e.expected.degree,
        "codim": e.expected.codim,
        "quadrics": e.quadrics.len(),
        "recipe": e.recipe,
    })
}

fn entry_detail(e: &VarietySpec) -> Value {
    let quadrics: Vec<String> = e.quadrics.iter().map(|q| q.to_string()).collect();
    let witnesses: Vec<Value> = e
        .witnesses
        .iter()
        .map(|w| json!({ "label": w.label, "scroll_type": w.scroll_type }))
        .collect();
    json!({
        "id": e.id,
        "aliases": e.aliases,
        "ambient": e.ambient(),
        "vars": e.ring.names(),
        "dim": e.expected.dim,
        "degree": e.expected.degree,
        "codim": e.expected.codim,
        "recipe": e.recipe,
        "notes": e.notes,
        "quadrics": quadrics,
        "witnesses": witnesses,
        "pending_witnesses": e.pending_witnesses,
    })
}

fn run_hilbert(id: &str, opts: &GlobalOpts, budget: &Budget) -> anyhow::Result<u8> {
    let mut runs = Vec::new();
    for &prime in &opts.primes {
        let spec = variety(id, prime)?;
        let ideal = Ideal::new(&spec.ring, spec.quadrics.clone())?;
        let h = ideal.hilbert(budget)?;
        let values: Vec<i64> = (0..=6).map(|d| h.value(d)).collect();
        runs.push((prime, h.projective_dimension(), h.degree, values));
    }
    let agreement = runs.iter().all(|r| (r.1, r.2, &r.3) == (runs[0].1, runs[0].2, &runs[0].3));
    if opts.json {
        let items: Vec<Value> = runs
            .iter()
            .map(|(p, dim, deg, values)| {
                json!({ "prime": p, "dimension": dim, "degree": deg, "values": values })
            })
            .collect();
        let result = json!({ "variety": id, "runs": items, "agreement": agreement });
        print_json(&envelope(opts, "hilbert", &opts.primes, result));
    } else {
        for (p, dim, deg, values) in &runs {
            println!(
                "{id} at F_{p}: dimension {}, degree {deg}, h(0..6) = {values:?}",
                dim.map_or("none".to_string(), |d| d.to_string())
            );
        }
        if opts.primes.len() > 1 {
            println!("agreement {agreement}");
        }
    }
    Ok(0)
}

fn run_betti(
    id: &str,
    p: Option<usize>,
    all: bool,
    opts: &GlobalOpts,
    budget: &Budget,
) -> anyhow::Result<u8> {
    let mut runs: Vec<(u32, Vec<(usize, usize)>)> = Vec::new();
    for &prime in &opts.primes {
        let spec = variety(id, prime)?;
        let entries: Vec<(usize, usize)> = match p {
            Some(p) => vec![(p, koszul_beta_p1(&spec, p, budget)?)],
            None => {
                let through = if all { spec.expected.codim + 1 } else { spec.expected.codim };
                let mut v = Vec::new();
                for q in 1..=through {
                    v.push((q, koszul_beta_p1(&spec, q, budget)?));
                }
                // betti_table is the canonical strand; cross-check when whole
                if !all {
                    let table = betti_table(&spec, budget)?;
                    let flat: Vec<(usize, usize)> =
                        table.entries.iter().map(|&(p, _, v)| (p, v)).collect();
                    debug_assert_eq!(flat, v);
                }
                v
            }
        };
        runs.push((prime, entries));
    }
    let agreement = runs.iter().all(|r| r.1 == runs[0].1);
    if opts.json {
        let items: Vec<Value> = runs
            .iter()
            .map(|(prime, entries)| {
                let rows: Vec<Value> =
                    entries.iter().map(|(p, v)| json!({ "p": p, "value": v })).collect();
                json!({ "prime": prime, "strand": rows })
            })
            .collect();
        let result = json!({ "variety": id, "runs": items, "agreement": agreement });
        print_json(&envelope(opts, "betti", &opts.primes, result));
    } else {
        for (prime, entries) in &runs {
            let cells: Vec<String> =
                entries.iter().map(|(p, v)| format!("b_{{{p},1}} = {v}")).collect();
            println!("{id} at F_{prime}: {}", cells.join(", "));
        }
        if all {
            println!("(zero for every larger strand position)");
        }
        if opts.primes.len() > 1 {
            println!("agreement {agreement}");
        }
    }
    Ok(0)
}

fn run_delta(id: &str, t: usize, opts: &GlobalOpts, budget: &Budget) -> anyhow::Result<u8> {
    let primes = enumeration_primes(opts);
    let report = delta(id, t, &primes, opts.seed, budget)?;
    if opts.json {
        print_json(&envelope(opts, "delta", &primes, report.to_json()));
    } else {
        for run in &report.runs {
            println!(
                "F_{}: {} rank points, span {}, certified {} of {} candidate forms{}",
                run.prime,
                run.hits,
                run.span_dim,
                run.certified.len(),
                run.candidates.len(),
                if run.budget_hit { " (budget hit)" } else { "" }
            );
        }
        println!(
            "delta({}, {}) = {} of {} quadrics, agreement {}",
            report.variety, report.t, report.delta, report.pencil_dim, report.agreement
        );
    }
    Ok(0)
}

fn scheme_rows(report: &SyzygySchemeReport) -> String {
    format!(
        "{} [{}] at F_{}: {} generators, dimension {}, degree {}, {}",
        report.variety,
        report.class,
        report.prime,
        report.generator_count,
        report.dimension,
        report.degree,
        report.classification.tag()
    )
}

fn run_syzscheme(
    id: &str,
    omit: Option<usize>,
    intersect: bool,
    opts: &GlobalOpts,
    budget: &Budget,
) -> anyhow::Result<u8> {
    if intersect {
        let mut runs = Vec::new();
        for &prime in &opts.primes {
            let spec = variety(id, prime)?;
            let omits: Vec<usize> = (0..spec.quadrics.len()).collect();
            let sum = syz_intersection(&spec, &omits, budget)?;
            let ix = Ideal::new(&spec.ring, spec.quadrics.clone())?;
            let hs = sum.hilbert(budget)?;
            let hx = ix.hilbert(budget)?;
            let equal = same_hilbert_polynomial(&hs, &hx);
            runs.push((prime, equal, hs.projective_dimension(), hs.degree));
        }
        let all_equal = runs.iter().all(|r| r.1);
        if opts.json {
            let items: Vec<Value> = runs
                .iter()
                .map(|(p, eq, dim, deg)| {
                    json!({ "prime": p, "hilbert_equal": eq, "dimension": dim, "degree": deg })
                })
                .collect();
            let result = json!({ "variety": id, "runs": items });
            print_json(&envelope(opts, "syzscheme-intersect", &opts.primes, result));
        } else {
            for (p, eq, dim, deg) in &runs {
                println!(
                    "F_{p}: intersection of all omit-one schemes has dimension {}, degree {deg}; matches the entry: {eq}",
                    dim.map_or("none".to_string(), |d| d.to_string())
                );
            }
        }
        return Ok(if all_equal { 0 } else { 1 });
    }

    let mut reports = Vec::new();
    for &prime in &opts.primes {
        let spec = variety(id, prime)?;
        let report = match omit {
            Some(i) => omit_one_scheme(&spec, i, budget)?,
            None => general_class_scheme(&spec, opts.seed, budget)?,
        };
        reports.push(report);
    }
    let agreement = reports
        .iter()
        .all(|r| r.classification == reports[0].classification);
    if opts.json {
        let items: Vec<Value> = reports.iter().map(|r| r.to_json()).collect();
        let result = json!({ "variety": id, "runs": items, "agreement": agreement });
        print_json(&envelope(opts, "syzscheme", &opts.primes, result));
    } else {
        for r in &reports {
            println!("{}", scheme_rows(r));
            for g in &r.residual {
                println!("  residual {g}");
            }
        }
        if opts.primes.len() > 1 {
            println!("agreement {agreement}");
        }
    }
    Ok(0)
}

fn run_scrolls(id: &str, opts: &GlobalOpts, budget: &Budget) -> anyhow::Result<u8> {
    let mut runs = Vec::new();
    for &prime in &opts.primes {
        let spec = variety(id, prime)?;
        let report = verify_scroll_witnesses(&spec, budget)?;
        let count = scroll_quadric_count(&spec).ok();
        runs.push((prime, report, count));
    }
    let all_passed = runs.iter().all(|r| r.1.all_passed());
    if opts.json {
        let items: Vec<Value> = runs
            .iter()
            .map(|(p, report, count)| {
                json!({
                    "prime": p,
                    "witnesses": report.to_json(),
                    "independent_quadrics": count,
                })
            })
            .collect();
        let result = json!({ "variety": id, "runs": items });
        print_json(&envelope(opts, "scrolls", &opts.primes, result));
    } else {
        for (p, report, count) in &runs {
            if let Some(n) = count {
                println!("{id} at F_{p}: {n} independent quadrics from the two-minors");
            }
            for c in &report.checks {
                println!(
                    "{} {} as {}: contained {}, degree {} (target {})",
                    if c.passed() { "ok  " } else { "FAIL" },
                    c.label,
                    c.scroll_type,
                    c.contained,
                    c.degree,
                    c.degree_target
                );
            }
            if !report.checks.is_empty() {
                println!("pairwise distinct: {}", report.pairwise_distinct);
            }
        }
    }
    Ok(if all_passed { 0 } else { 1 })
}

fn run_repro(target: &str, opts: &GlobalOpts, budget: &Budget) -> anyhow::Result<u8> {
    let target = Target::parse(target).ok_or_else(|| {
        let tokens: Vec<&str> = Target::ALL.iter().map(|t| t.token()).collect();
        anyhow!("unknown target `{target}`; expected one of {}", tokens.join(", "))
    })?;
    let cfg = ReproConfig {
        primes: opts.primes.clone(),
        deep: opts.deep,
        seed: opts.seed,
        budget: *budget,
    };
    let report = run_target(target, &cfg)?;
    if opts.json {
        print_json(&envelope(opts, "repro", &opts.primes, report.to_json()));
    } else {
        println!("{}: {}", report.target, report.role);
        for c in &report.checks {
            println!("{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
        }
        println!("{}", if report.passed() { "passed" } else { "FAILED" });
    }
    Ok(if report.passed() { 0 } else { 1 })
}
