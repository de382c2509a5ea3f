mod reference;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use loopsig::evidence::{conjecture_evidence, distinct_area_product_check};
use loopsig::fuzz;
use loopsig::relations::{verify_relations, Check};
use loopsig::spaces::{InvariantReport, InvariantSpaces};
use loopsig::{Budget, Error};

use reference::{mark, Column, Mark};

#[derive(Parser)]
#[command(
    name = "loopsig",
    version,
    about = "Exact conjugation, loop and closure invariants of path signatures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the dimension table, one row per level
    Dims(DimsArgs),
    /// Verify the explicit shuffle identities among invariants
    Check(CheckArgs),
    /// Test invariance claims against exact signatures of random paths
    Fuzz(FuzzArgs),
    /// Write an exact basis of one invariant space as JSON
    Basis(BasisArgs),
    /// Report dimension comparisons behind the open conjectures
    Evidence(EvidenceArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Pretty,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Table {
    /// Every column
    All,
    /// Conjugation invariants, logsignature and generator counts
    Conj,
    /// The loop and closure columns
    Loop,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceName {
    Conj,
    Loop,
    Closure,
    #[value(name = "V", alias = "v")]
    V,
    #[value(name = "S", alias = "s")]
    S,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    /// Write to this file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Run {
    /// Worker threads; defaults to the number of cores
    #[arg(long)]
    workers: Option<usize>,
    /// Wall-clock limit per (d, level) job, in seconds
    #[arg(long)]
    budget_secs: Option<u64>,
    /// Largest coefficient size in bits allowed during elimination
    #[arg(long)]
    max_bits: Option<u64>,
}

impl Run {
    fn budget(&self) -> Budget {
        Budget::new(
            self.budget_secs.map(|s| Instant::now() + Duration::from_secs(s)),
            self.max_bits,
        )
    }

    fn pool(&self) -> Result<rayon::ThreadPool, Failure> {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(w) = self.workers {
            if w == 0 {
                return Err(Failure::Config("--workers must be at least 1".into()));
            }
            b = b.num_threads(w);
        }
        b.build().map_err(|e| Failure::Config(e.to_string()))
    }
}

fn alphabet(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(d) if (2..=9).contains(&d) => Ok(d),
        _ => Err(format!("alphabet size must be an integer in 2..=9, got {s:?}")),
    }
}

#[derive(Args)]
struct DimsArgs {
    #[arg(long, value_parser = alphabet)]
    d: usize,
    /// Highest level; defaults to a desk-scale cap depending on d
    #[arg(long)]
    max_level: Option<usize>,
    #[arg(long, value_enum, default_value_t = Table::All)]
    table: Table,
    #[command(flatten)]
    output: Output,
    #[command(flatten)]
    run: Run,
}

#[derive(Args)]
struct CheckArgs {
    /// Only this alphabet size; otherwise 2, 3 and 4
    #[arg(long, value_parser = alphabet)]
    d: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct FuzzArgs {
    #[arg(long, value_parser = alphabet)]
    d: usize,
    /// Truncation level; defaults to 6 for d=2, 5 for d=3, 4 otherwise
    #[arg(long)]
    level: Option<usize>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: Output,
    #[command(flatten)]
    run: Run,
}

#[derive(Args)]
struct BasisArgs {
    #[arg(long, value_enum)]
    space: SpaceName,
    #[arg(long, value_parser = alphabet)]
    d: usize,
    #[arg(long)]
    level: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    run: Run,
}

#[derive(Args)]
struct EvidenceArgs {
    #[arg(long, value_parser = alphabet)]
    d: usize,
    /// A single level instead of the range 2..=max-level
    #[arg(long)]
    level: Option<usize>,
    #[arg(long)]
    max_level: Option<usize>,
    #[command(flatten)]
    output: Output,
    #[command(flatten)]
    run: Run,
}

/// Why a run did not succeed; selects the exit code.
#[derive(Debug)]
enum Failure {
    /// A mathematical check failed (exit 1).
    Math(String),
    /// Budget exhausted or bad configuration (exit 2).
    Config(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CrossCheck(_) => Failure::Math(e.to_string()),
            _ => Failure::Config(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Status {
    Ok,
    Incomplete,
    Failed,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::Incomplete => 2,
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn default_max_level(d: usize) -> usize {
    match d {
        2 => 10,
        3 => 7,
        4 => 5,
        5 | 6 => 4,
        _ => 3,
    }
}

fn default_evidence_level(d: usize) -> usize {
    match d {
        2 => 8,
        3 => 5,
        _ => 4,
    }
}

fn columns(r: &InvariantReport) -> Vec<(&'static str, usize)> {
    vec![
        ("conjugation", r.conjugation),
        ("logsignature", r.logsignature),
        ("min_generators", r.min_generators),
        ("v", r.v),
        ("bracket_vr", r.bracket_vr),
        ("letter_reduced_conj", r.letter_reduced_conj),
        ("letter_reduced_loop", r.letter_reduced_loop),
        ("closure", r.closure),
        ("loop_inv", r.loop_inv),
        ("s", r.s),
        ("min_generators_loop_closure", r.min_generators_loop_closure),
    ]
}

fn column_names(table: Table) -> Vec<&'static str> {
    let all = [
        "conjugation",
        "logsignature",
        "min_generators",
        "v",
        "bracket_vr",
        "letter_reduced_conj",
        "letter_reduced_loop",
        "closure",
        "loop_inv",
        "s",
        "min_generators_loop_closure",
    ];
    match table {
        Table::All => all.to_vec(),
        Table::Conj => vec!["conjugation", "logsignature", "min_generators"],
        Table::Loop => vec![
            "conjugation",
            "min_generators",
            "v",
            "bracket_vr",
            "letter_reduced_conj",
            "letter_reduced_loop",
        ],
    }
}

fn reference_column(name: &str) -> Option<Column> {
    Column::ALL.into_iter().find(|c| c.name() == name)
}

#[derive(Serialize)]
struct DimsRow {
    d: usize,
    level: usize,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
    values: BTreeMap<&'static str, usize>,
    reference: BTreeMap<&'static str, &'static str>,
    failed_checks: Vec<String>,
}

impl DimsRow {
    fn status(&self) -> Status {
        match self.status {
            "ok" if self.reference.values().any(|m| *m == Mark::Mismatch.as_str()) => Status::Failed,
            "ok" if !self.failed_checks.is_empty() => Status::Failed,
            "ok" => Status::Ok,
            "skipped" => Status::Incomplete,
            _ => Status::Failed,
        }
    }
}

fn dims_row(spaces: &InvariantSpaces, run: &Run, table: Table, n: usize) -> DimsRow {
    let d = spaces.alphabet_size();
    let job = spaces.with_budget(run.budget());
    let result = job.report(n).and_then(|r| Ok((r, job.structural_checks(n)?)));
    let mut row = DimsRow {
        d,
        level: n,
        status: "ok",
        detail: None,
        values: BTreeMap::new(),
        reference: BTreeMap::new(),
        failed_checks: Vec::new(),
    };
    match result {
        Ok((report, checks)) => {
            let wanted = column_names(table);
            for (name, value) in columns(&report) {
                if !wanted.contains(&name) {
                    continue;
                }
                row.values.insert(name, value);
                if let Some(col) = reference_column(name) {
                    row.reference.insert(name, mark(d, n, col, value as u64).as_str());
                }
            }
            row.failed_checks = checks
                .into_iter()
                .filter(|c| !c.passed)
                .map(|c| format!("{} ({})", c.name, c.detail))
                .collect();
        }
        Err(Error::BudgetExceeded(why)) => {
            row.status = "skipped";
            row.detail = Some(why);
        }
        Err(e) => {
            row.status = "error";
            row.detail = Some(e.to_string());
        }
    }
    row
}

fn render_dims(rows: &[DimsRow], table: Table, format: Format) -> Result<String, Failure> {
    let names = column_names(table);
    match format {
        Format::Json => {
            let text =
                serde_json::to_string_pretty(&json!({ "rows": rows })).map_err(|e| Failure::Config(e.to_string()))?;
            Ok(text + "\n")
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header = vec!["d", "level", "status"];
            header.extend(&names);
            header.push("reference");
            w.write_record(&header).map_err(|e| Failure::Config(e.to_string()))?;
            for row in rows {
                let mut rec = vec![row.d.to_string(), row.level.to_string(), row.status.to_string()];
                for name in &names {
                    rec.push(row.values.get(name).map(|v| v.to_string()).unwrap_or_default());
                }
                let refs: Vec<String> = row.reference.iter().map(|(k, m)| format!("{k}:{m}")).collect();
                rec.push(refs.join(";"));
                w.write_record(&rec).map_err(|e| Failure::Config(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| Failure::Config(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Failure::Config(e.to_string()))
        }
        Format::Pretty => {
            let mut header = vec!["level".to_string()];
            header.extend(names.iter().map(|s| s.to_string()));
            let mut grid = vec![header];
            for row in rows {
                let mut line = vec![row.level.to_string()];
                for name in &names {
                    let cell = match row.values.get(name) {
                        None => row.status.to_string(),
                        Some(v) => match row.reference.get(name).copied() {
                            Some("mismatch") => format!("{v}!"),
                            Some("new") => format!("{v}*"),
                            _ => v.to_string(),
                        },
                    };
                    line.push(cell);
                }
                grid.push(line);
            }
            let widths: Vec<usize> = (0..grid[0].len())
                .map(|c| grid.iter().map(|l| l[c].chars().count()).max().unwrap_or(0))
                .collect();
            let mut out = String::new();
            if let Some(d) = rows.first().map(|r| r.d) {
                out.push_str(&format!("d = {d}\n"));
            }
            for line in &grid {
                let cells: Vec<String> = line.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
                out.push_str(cells.join("  ").trim_end());
                out.push('\n');
            }
            out.push_str("* not in the published tables, ! differs from the published value\n");
            for row in rows {
                if let Some(detail) = &row.detail {
                    out.push_str(&format!("level {} {}: {detail}\n", row.level, row.status));
                }
                for c in &row.failed_checks {
                    out.push_str(&format!("level {} FAILED {c}\n", row.level));
                }
            }
            Ok(out)
        }
    }
}

fn cmd_dims(args: &DimsArgs) -> Result<Status, Failure> {
    let max = args.max_level.unwrap_or_else(|| default_max_level(args.d));
    if max == 0 {
        return Err(Failure::Config("--max-level must be at least 1".into()));
    }
    let spaces = InvariantSpaces::new(args.d)?;
    let pool = args.run.pool()?;
    let rows: Vec<DimsRow> = pool.install(|| {
        (1..=max)
            .into_par_iter()
            .map(|n| dims_row(&spaces, &args.run, args.table, n))
            .collect()
    });
    emit(&args.output.out, &render_dims(&rows, args.table, args.output.format)?)?;
    Ok(rows.iter().map(DimsRow::status).max().unwrap_or(Status::Ok))
}

#[derive(Serialize)]
struct CheckGroup {
    d: usize,
    checks: Vec<Check>,
}

fn cmd_check(args: &CheckArgs) -> Result<Status, Failure> {
    let ds: Vec<usize> = match args.d {
        Some(d) => vec![d],
        None => vec![2, 3, 4],
    };
    let mut groups = Vec::new();
    for d in ds {
        let mut checks = verify_relations(d)?;
        if d >= 4 {
            checks.push(distinct_area_product_check(&InvariantSpaces::new(d)?)?);
        }
        groups.push(CheckGroup { d, checks });
    }
    let failed = groups.iter().flat_map(|g| &g.checks).any(|c| !c.passed);
    let text = match args.output.format {
        Format::Json => serde_json::to_string_pretty(&groups).map_err(|e| Failure::Config(e.to_string()))? + "\n",
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["d", "identity", "status", "detail"])
                .map_err(|e| Failure::Config(e.to_string()))?;
            for g in &groups {
                for c in &g.checks {
                    let status = if c.passed { "PASS" } else { "FAIL" };
                    w.write_record([g.d.to_string().as_str(), &c.name, status, &c.detail])
                        .map_err(|e| Failure::Config(e.to_string()))?;
                }
            }
            String::from_utf8(w.into_inner().map_err(|e| Failure::Config(e.to_string()))?)
                .map_err(|e| Failure::Config(e.to_string()))?
        }
        Format::Pretty => {
            let mut out = String::new();
            for g in &groups {
                for c in &g.checks {
                    let status = if c.passed { "PASS" } else { "FAIL" };
                    out.push_str(&format!("{status} d={} {}: {}\n", g.d, c.name, c.detail));
                }
            }
            out
        }
    };
    emit(&args.output.out, &text)?;
    Ok(if failed { Status::Failed } else { Status::Ok })
}

fn cmd_fuzz(args: &FuzzArgs) -> Result<Status, Failure> {
    let level = args.level.unwrap_or_else(|| fuzz::default_level(args.d));
    let pool = args.run.pool()?;
    let reports = pool.install(|| fuzz::fuzz_all(args.d, level, args.trials, args.seed, args.run.budget()))?;
    let failed = reports.iter().any(|r| !r.passed());
    let text = match args.output.format {
        Format::Json => serde_json::to_string_pretty(&reports).map_err(|e| Failure::Config(e.to_string()))? + "\n",
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["suite", "d", "level", "trials", "seed", "checks", "failures", "witness"])
                .map_err(|e| Failure::Config(e.to_string()))?;
            for r in &reports {
                let witness = match &r.witness_search {
                    None => String::new(),
                    Some(s) if s.witness.is_some() => format!("found after {}", s.candidates_tried),
                    Some(s) => format!("none in {}", s.candidates_tried),
                };
                w.write_record([
                    r.suite.clone(),
                    r.d.to_string(),
                    r.level.to_string(),
                    r.trials.to_string(),
                    r.seed.to_string(),
                    r.checks.to_string(),
                    r.failures.len().to_string(),
                    witness,
                ])
                .map_err(|e| Failure::Config(e.to_string()))?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Failure::Config(e.to_string()))?)
                .map_err(|e| Failure::Config(e.to_string()))?
        }
        Format::Pretty => {
            let mut out = String::new();
            for r in &reports {
                out.push_str(&r.summary());
                out.push('\n');
                for f in &r.failures {
                    let line = serde_json::to_string(f).map_err(|e| Failure::Config(e.to_string()))?;
                    out.push_str(&format!("  FAIL {line}\n"));
                }
            }
            out
        }
    };
    emit(&args.output.out, &text)?;
    Ok(if failed { Status::Failed } else { Status::Ok })
}

fn cmd_basis(args: &BasisArgs) -> Result<Status, Failure> {
    if args.level == 0 {
        return Err(Failure::Config("--level must be at least 1".into()));
    }
    let spaces = InvariantSpaces::new(args.d)?.with_budget(args.run.budget());
    let pool = args.run.pool()?;
    let n = args.level;
    let (name, space) = pool.install(|| -> Result<_, Error> {
        Ok(match args.space {
            SpaceName::Conj => ("conj", spaces.conj_invariants(n)?),
            SpaceName::Loop => ("loop", spaces.loop_invariants(n)?),
            SpaceName::Closure => ("closure", spaces.closure_invariants(n)?),
            SpaceName::V => ("V", spaces.space_v(n)?),
            SpaceName::S => ("S", spaces.space_s(n)?),
        })
    })?;
    let doc = json!({
        "space": name,
        "d": args.d,
        "level": n,
        "dim": space.dim(),
        "basis": space.basis(),
    });
    let text = serde_json::to_string_pretty(&doc).map_err(|e| Failure::Config(e.to_string()))? + "\n";
    emit(&args.out, &text)?;
    Ok(Status::Ok)
}

fn cmd_evidence(args: &EvidenceArgs) -> Result<Status, Failure> {
    let levels: Vec<usize> = match args.level {
        Some(n) => vec![n],
        None => (2..=args.max_level.unwrap_or_else(|| default_evidence_level(args.d))).collect(),
    };
    if levels.contains(&0) {
        return Err(Failure::Config("--level must be at least 1".into()));
    }
    let spaces = InvariantSpaces::new(args.d)?;
    let pool = args.run.pool()?;
    let results: Vec<Result<_, Error>> = pool.install(|| {
        levels
            .par_iter()
            .map(|&n| conjecture_evidence(&spaces.with_budget(args.run.budget()), n))
            .collect()
    });
    let mut evidence = Vec::new();
    let mut status = Status::Ok;
    let mut notes = Vec::new();
    for (n, r) in levels.iter().zip(results) {
        match r {
            Ok(e) => evidence.push(e),
            Err(Error::BudgetExceeded(why)) => {
                status = status.max(Status::Incomplete);
                notes.push(format!("d={} n={n} skipped: {why}", args.d));
            }
            Err(e) => return Err(e.into()),
        }
    }
    let text = match args.output.format {
        Format::Json => serde_json::to_string_pretty(&evidence).map_err(|e| Failure::Config(e.to_string()))? + "\n",
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "d",
                "level",
                "loop_dim",
                "s_plus_area_conj_dim",
                "bracket_t_meet_v_dim",
                "bracket_v_plus_areas_dim",
                "s_plus_conj_plus_areas_dim",
                "closure_meet_conj_dim",
                "area_products_in_rcl_rot",
                "area_products_total",
                "conj_meet_s_dim",
                "letters_times_conj_dim",
            ])
            .map_err(|e| Failure::Config(e.to_string()))?;
            for e in &evidence {
                let inside = e.area_products.iter().filter(|p| p.in_rcl_rot).count();
                w.write_record(
                    [
                        e.d,
                        e.level,
                        e.loop_dim,
                        e.s_plus_area_conj_dim,
                        e.bracket_t_meet_v_dim,
                        e.bracket_v_plus_areas_dim,
                        e.s_plus_conj_plus_areas_dim,
                        e.closure_meet_conj_dim,
                        inside,
                        e.area_products.len(),
                        e.conj_meet_s_dim,
                        e.letters_times_conj_dim,
                    ]
                    .map(|v| v.to_string()),
                )
                .map_err(|e| Failure::Config(e.to_string()))?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Failure::Config(e.to_string()))?)
                .map_err(|e| Failure::Config(e.to_string()))?
        }
        Format::Pretty => {
            let mut out = String::new();
            for e in &evidence {
                for line in e.lines() {
                    out.push_str(&line);
                    out.push('\n');
                }
            }
            out
        }
    };
    emit(&args.output.out, &text)?;
    for note in notes {
        eprintln!("{note}");
    }
    Ok(status)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Dims(a) => cmd_dims(a),
        Command::Check(a) => cmd_check(a),
        Command::Fuzz(a) => cmd_fuzz(a),
        Command::Basis(a) => cmd_basis(a),
        Command::Evidence(a) => cmd_evidence(a),
    };
    match result {
        Ok(status) => ExitCode::from(status.code()),
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
