use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read as _, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use iclab_core::claims::{full_report_with, ReportOptions, ReportStatus};
use iclab_core::explore::{
    enumerate_closed, mine, naive_enumerate, sweep, CheckpointConfig, Filters, GoldenCount, MineConfig, SweepConfig,
    SweepSummary, CHECKPOINT_EVERY, GUARDED_N,
};
use iclab_core::io::{parse_family, serialize_report, write_trace, FamilyDocument, ReportFormat};
use iclab_core::machinery::{bound_trace, h_materialize, DEFAULT_BUDGET};
use iclab_core::setsys::{canonical_relabel, intersection_closure, reduce_family, relabel_admissible};
use iclab_core::{ClaimId, Error, Family, Permutation};

const EXIT_OK: u8 = 0;
const EXIT_CLAIMS_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_LIMIT: u8 = 3;

#[derive(Parser)]
#[command(name = "iclab", version, about = "Check claims about intersection-closed families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every claim on a family and print the report.
    Check(CheckArgs),
    /// Print discarding sets, exclusion sizes and the t sequence.
    Trace(TraceArgs),
    /// Print the intersection closure of a list of sets.
    Closure(FileArgs),
    /// Remove universal elements and merge twins.
    Reduce(FileArgs),
    /// Exhaustive claim sweep over all closed families on [n].
    Sweep(SweepArgs),
    /// Claim sweep over seeded random closed families.
    Mine(MineArgs),
    /// Count closed families on [n].
    Count(CountArgs),
}

#[derive(Args)]
struct FileArgs {
    /// Family file (JSON or text); `-` reads stdin.
    file: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Numbering {
    /// Explicit numbering "p1,p2,...": element k becomes p_k.
    #[arg(long, value_name = "P1,P2,...")]
    perm: Option<String>,
    /// Skip the reduction step.
    #[arg(long)]
    no_reduce: bool,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    file: FileArgs,
    #[command(flatten)]
    numbering: Numbering,
    /// Comma-separated claim ids (default: all).
    #[arg(long, value_delimiter = ',')]
    claims: Vec<ClaimId>,
}

#[derive(Args)]
struct TraceArgs {
    #[command(flatten)]
    file: FileArgs,
    #[command(flatten)]
    numbering: Numbering,
    /// Also list the members of every exclusion set.
    #[arg(long)]
    materialize: bool,
    /// Largest exclusion set `--materialize` will list.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    n: usize,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Directory for summary.json and witness-<idx>.json files.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    #[arg(long)]
    preconditions_only: bool,
    #[arg(long)]
    require_empty: bool,
    /// Comma-separated claim ids (default: all).
    #[arg(long, value_delimiter = ',')]
    claims: Vec<ClaimId>,
    #[arg(long, default_value_t = 16)]
    witness_limit: usize,
    #[arg(long)]
    json: bool,
}

impl Common {
    fn filters(&self) -> Filters {
        Filters {
            preconditions_only: self.preconditions_only,
            require_empty_set: self.require_empty,
        }
    }

    fn claims(&self) -> Vec<ClaimId> {
        if self.claims.is_empty() {
            ClaimId::ALL.to_vec()
        } else {
            self.claims.clone()
        }
    }
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: Common,
    /// Permit the n = 5 exhaustive sweep.
    #[arg(long)]
    allow_n5: bool,
    /// Resume from / save progress to this file.
    #[arg(long, value_name = "FILE")]
    checkpoint: Option<PathBuf>,
    #[arg(long, default_value_t = CHECKPOINT_EVERY)]
    checkpoint_every: u64,
}

#[derive(Args)]
struct MineArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    samples: u64,
    /// Random generators per family before closing.
    #[arg(long)]
    gens: usize,
    #[arg(long)]
    seed: u64,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    n: usize,
    /// Use the naive scan over all subfamilies (n <= 4).
    #[arg(long)]
    oracle: bool,
    #[arg(long)]
    preconditions_only: bool,
    #[arg(long)]
    require_empty: bool,
    /// Permit counting at n = 5.
    #[arg(long)]
    allow_n5: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { EXIT_OK });
        }
    };
    let result = match cli.command {
        Command::Check(a) => check(a),
        Command::Trace(a) => trace(a),
        Command::Closure(a) => closure(a),
        Command::Reduce(a) => reduce(a),
        Command::Sweep(a) => run_sweep(a),
        Command::Mine(a) => run_mine(a),
        Command::Count(a) => count(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::TooLarge { .. } | Error::BudgetExceeded { .. } => EXIT_LIMIT,
        _ => EXIT_INPUT,
    }
}

fn read_input(path: &Path) -> Result<String, Error> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}

fn load_family(path: &Path) -> Result<Family, Error> {
    let raw = parse_family(&read_input(path)?)?;
    Family::try_from(raw)
}

fn parse_perm(text: &str) -> Result<Permutation, Error> {
    let map = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Permutation(format!("not a label: {t:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Permutation::new(map)
}

fn emit(text: &str) -> Result<(), Error> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn check(a: CheckArgs) -> Result<u8, Error> {
    let f = load_family(&a.file.file)?;
    let opts = ReportOptions {
        reduce: !a.numbering.no_reduce,
        permutation: a.numbering.perm.as_deref().map(parse_perm).transpose()?,
        claims: if a.claims.is_empty() {
            ClaimId::ALL.to_vec()
        } else {
            a.claims
        },
    };
    let report = full_report_with(&f, &opts)?;
    let format = if a.file.json {
        ReportFormat::Json
    } else {
        ReportFormat::Text
    };
    emit(&serialize_report(&report, &f, format))?;
    Ok(match report.status {
        ReportStatus::Ok => EXIT_OK,
        ReportStatus::ClaimsFailed => EXIT_CLAIMS_FAILED,
        ReportStatus::PreconditionFailed | ReportStatus::Degenerate => {
            eprintln!(
                "error: {}",
                report
                    .skipped
                    .first()
                    .map_or("claims not checked", |s| s.reason.as_str())
            );
            EXIT_INPUT
        }
    })
}

fn trace(a: TraceArgs) -> Result<u8, Error> {
    let f = load_family(&a.file.file)?;
    let reduced = if a.numbering.no_reduce { f } else { reduce_family(&f).0 };
    let (g, perm) = match a.numbering.perm.as_deref() {
        Some(p) => {
            let p = parse_perm(p)?;
            (relabel_admissible(&reduced, &p)?, p)
        }
        None => canonical_relabel(&reduced),
    };
    let t = bound_trace(&g)?;
    let mut sets: Vec<Vec<Vec<usize>>> = Vec::new();
    if a.materialize {
        for c in t.cylinders() {
            sets.push(
                h_materialize(&c, a.budget)?
                    .into_iter()
                    .map(|m| m.elements().collect())
                    .collect(),
            );
        }
    }
    if a.file.json {
        let mut doc = serde_json::json!({
            "n": g.n(),
            "permutation": perm.as_slice(),
            "trace": t,
        });
        if a.materialize {
            doc["exclusion_sets"] = serde_json::json!(sets);
        }
        emit(&(serde_json::to_string_pretty(&doc).expect("plain data") + "\n"))?;
    } else {
        let mut out = String::new();
        let _ = writeln!(out, "n={} numbering {:?}", g.n(), perm.as_slice());
        let _ = write_trace(&mut out, &t);
        if a.materialize {
            for (c, members) in t.cylinders().iter().zip(&sets) {
                let shown: Vec<String> = members.iter().map(|s| fmt_set(s)).collect();
                let _ = writeln!(
                    out,
                    "H(level {}, {}) = {{{}}}",
                    c.level,
                    c.prefix.without(c.level),
                    shown.join(", ")
                );
            }
        }
        emit(&out)?;
    }
    Ok(EXIT_OK)
}

fn fmt_set(s: &[usize]) -> String {
    if s.is_empty() {
        "∅".into()
    } else {
        let parts: Vec<String> = s.iter().map(|e| e.to_string()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

fn print_family(doc: &FamilyDocument, json: bool) -> Result<(), Error> {
    if json {
        emit(&(doc.to_json() + "\n"))
    } else {
        emit(&doc.to_text())
    }
}

fn closure(a: FileArgs) -> Result<u8, Error> {
    let raw = parse_family(&read_input(&a.file)?)?;
    let f = intersection_closure(&raw)?;
    print_family(&FamilyDocument::from_family(&f), a.json)?;
    Ok(EXIT_OK)
}

fn reduce(a: FileArgs) -> Result<u8, Error> {
    let f = load_family(&a.file)?;
    let (g, log) = reduce_family(&f);
    if a.json {
        let doc = serde_json::json!({ "family": FamilyDocument::from_family(&g), "reduction": log });
        emit(&(serde_json::to_string_pretty(&doc).expect("plain data") + "\n"))?;
    } else {
        print_family(&FamilyDocument::from_family(&g), false)?;
        for step in &log.steps {
            eprintln!("# {}", serde_json::to_string(step).expect("plain data"));
        }
    }
    Ok(EXIT_OK)
}

fn finish_sweep(summary: &SweepSummary, common: &Common) -> Result<u8, Error> {
    if let Some(dir) = &common.out {
        fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
        for w in &summary.witnesses {
            let doc = FamilyDocument::from_masks(w.n, &w.sets);
            fs::write(dir.join(format!("witness-{}.json", w.index)), doc.to_json() + "\n")?;
        }
        fs::write(dir.join("summary.json"), summary_json(summary))?;
    }
    if common.json {
        emit(&summary_json(summary))?;
    } else {
        emit(&summary_text(summary))?;
    }
    Ok(if summary.failures() > 0 {
        EXIT_CLAIMS_FAILED
    } else {
        EXIT_OK
    })
}

fn summary_json(s: &SweepSummary) -> String {
    serde_json::to_string_pretty(s).expect("plain data") + "\n"
}

fn summary_text(s: &SweepSummary) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "n={} filter={} visited={} checked={}",
        s.n, s.filter, s.visited, s.checked
    );
    let _ = writeln!(
        out,
        "preconditions: {} as given, {} after reduction",
        s.passing_preconditions_raw, s.passing_preconditions_reduced
    );
    let _ = writeln!(out, "{:<14} {:>10} {:>10} {:>10}", "claim", "held", "failed", "skipped");
    for t in &s.claims {
        let _ = writeln!(
            out,
            "{:<14} {:>10} {:>10} {:>10}",
            t.claim.as_str(),
            t.held,
            t.failed,
            t.skipped
        );
    }
    let _ = writeln!(
        out,
        "roots: {} of {} discarding records, {} families",
        s.roots.rooted_records, s.roots.records, s.roots.families_with_root
    );
    for w in &s.witnesses {
        let failed: Vec<&str> = w.failed.iter().map(|c| c.as_str()).collect();
        let sets: Vec<String> = w.sets.iter().map(|m| m.to_string()).collect();
        let _ = writeln!(
            out,
            "witness #{} [{}] fails {}",
            w.index,
            sets.join(" "),
            failed.join(",")
        );
    }
    out
}

fn run_sweep(a: SweepArgs) -> Result<u8, Error> {
    let c = &a.common;
    let config = SweepConfig {
        n: c.n,
        filters: c.filters(),
        claims: c.claims(),
        workers: c.jobs,
        witness_limit: c.witness_limit,
        allow_large: a.allow_n5,
        checkpoint: a.checkpoint.clone().map(|path| CheckpointConfig {
            path,
            every: a.checkpoint_every,
        }),
    };
    let summary = sweep(&config)?;
    finish_sweep(&summary, c)
}

fn run_mine(a: MineArgs) -> Result<u8, Error> {
    let c = &a.common;
    let config = MineConfig {
        n: c.n,
        samples: a.samples,
        generators: a.gens,
        seed: a.seed,
        filters: c.filters(),
        claims: c.claims(),
        workers: c.jobs,
        witness_limit: c.witness_limit,
    };
    let summary = mine(&config)?;
    finish_sweep(&summary, c)
}

fn count(a: CountArgs) -> Result<u8, Error> {
    let filters = Filters {
        preconditions_only: a.preconditions_only,
        require_empty_set: a.require_empty,
    };
    if !a.oracle && a.n >= GUARDED_N && !a.allow_n5 {
        return Err(Error::TooLarge {
            n: a.n,
            limit: GUARDED_N - 1,
            what: "counting without --allow-n5",
        });
    }
    let count = if a.oracle {
        naive_enumerate(a.n, filters, |_| {})?
    } else {
        enumerate_closed(a.n, filters, |_| {})?
    };
    let line = GoldenCount {
        n: a.n,
        count,
        filter: filters.name().to_string(),
    };
    emit(&format!("{line}\n"))?;
    Ok(EXIT_OK)
}
