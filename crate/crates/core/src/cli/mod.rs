//! The `lineup` command line.
//!
//! Exit codes: 0 success, 1 witness replay did not reproduce, 2 input
//! error, 3 search budget exhausted, 4 some elections of an experiment
//! failed.

pub mod experiment;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::axioms::{
    derive_cell, derive_table, expected_cell, render_table, AxiomId, ScoreGrid, SearchConfig,
    TableCell, Witness,
};
use crate::datagen::{generate, GenModel, GenSpec};
use crate::ingest::{build_all, build_election, load_players, soccer_10};
use crate::matching::{bottleneck_max_sum, MatchingError, SearchBudget};
use crate::model::{election_to_json, parse_election, winner_set_report};
use crate::rules::{apply_rule, RuleError, RuleId};

use experiment::{run_sweep, write_outputs, ExperimentConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_REPRODUCED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_PARTIAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "lineup",
    version,
    about = "Line-up elections: rules, axioms and experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the winning line-ups of one election.
    Solve(SolveArgs),
    /// Check axioms by fixtures and random search, or replay a witness.
    Axioms(AxiomsArgs),
    /// Run a rule-comparison sweep described by a JSON config.
    Experiment(ExperimentArgs),
    /// Write synthetic elections as JSON files.
    Generate(GenerateArgs),
    /// Turn a player CSV into one election per group.
    Ingest(IngestArgs),
}

#[derive(Args, Debug)]
struct BudgetArgs {
    /// Maximum number of tied winners to enumerate.
    #[arg(long, default_value_t = SearchBudget::default().winner_cap)]
    cap: usize,
    /// Branch-and-bound node limit for general OWA rules.
    #[arg(long)]
    node_limit: Option<u64>,
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        SearchBudget::new(
            self.cap,
            self.node_limit.or(SearchBudget::default().node_limit),
        )
    }
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// Election file (JSON, or CSV with a header of positions).
    file: PathBuf,
    /// Rule id, e.g. `utilitarian` or `owa:1,1/2,1/3`.
    #[arg(long)]
    rule: String,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Grid {
    Int,
    Unit,
}

#[derive(Args, Debug)]
struct AxiomsArgs {
    /// Rule id or `all`.
    #[arg(long, default_value = "all")]
    rule: String,
    /// Axiom name or `all`.
    #[arg(long, default_value = "all")]
    axiom: String,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = 5)]
    max_candidates: usize,
    #[arg(long, default_value_t = 5)]
    max_positions: usize,
    #[arg(long, value_enum, default_value_t = Grid::Int)]
    grid: Grid,
    /// Write one JSON witness per violated cell into this directory.
    #[arg(long)]
    witness_dir: Option<PathBuf>,
    /// Re-run the check stored in a witness file instead of searching.
    #[arg(long, conflicts_with_all = ["rule", "axiom"])]
    replay: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ExperimentArgs {
    config: PathBuf,
    /// Output directory; overrides `output_dir` of the config.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comma-separated rule ids; override `rules` of the config.
    #[arg(long)]
    rules: Option<String>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Write runtime_ms as 0 and leave the timestamp out of run.json.
    #[arg(long)]
    deterministic: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Model {
    M1,
    M2,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    model: Model,
    #[arg(long, default_value_t = 10)]
    m: usize,
    #[arg(long, default_value_t = 10)]
    q: usize,
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct IngestArgs {
    csv: PathBuf,
    /// Named formation (`soccer-10`).
    #[arg(long, conflicts_with = "positions")]
    formation: Option<String>,
    /// Comma-separated position columns.
    #[arg(long)]
    positions: Option<String>,
    #[arg(long, default_value_t = 10)]
    top_n: usize,
    /// Only this group; default is every group with enough players.
    #[arg(long)]
    group: Option<String>,
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

/// Failure with its exit code and message.
struct Fail(i32, String);

impl Fail {
    fn input(msg: impl ToString) -> Fail {
        Fail(EXIT_INPUT, msg.to_string())
    }
}

impl From<RuleError> for Fail {
    fn from(e: RuleError) -> Self {
        let code = if matches!(e, RuleError::Matching(MatchingError::NodeLimit { .. })) {
            EXIT_BUDGET
        } else {
            EXIT_INPUT
        };
        Fail(code, e.to_string())
    }
}

fn io_fail(path: &Path, e: std::io::Error) -> Fail {
    Fail::input(format!("{}: {e}", path.display()))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let mut io = Io { out, err };
    let result = match cli.command {
        Command::Solve(a) => solve(a, &mut io),
        Command::Axioms(a) => axioms(a, &mut io),
        Command::Experiment(a) => run_experiment(a, &mut io),
        Command::Generate(a) => generate_cmd(a, &mut io),
        Command::Ingest(a) => ingest_cmd(a, &mut io),
    };
    match result {
        Ok(code) => code,
        Err(Fail(code, msg)) => {
            let _ = writeln!(io.err, "error: {msg}");
            code
        }
    }
}

fn solve(a: SolveArgs, io: &mut Io) -> Result<i32, Fail> {
    let text = std::fs::read_to_string(&a.file).map_err(|e| io_fail(&a.file, e))?;
    let e =
        parse_election(&text).map_err(|err| Fail::input(format!("{}: {err}", a.file.display())))?;
    let rule: RuleId = a.rule.parse()?;
    let budget = a.budget.budget();
    let (ws, max_sum) = if rule == RuleId::EgalitarianMaxSum {
        let (ws, s) = bottleneck_max_sum(&e, &budget);
        (ws, Some(s))
    } else {
        (apply_rule(&rule, &e, &budget)?, None)
    };
    let mut report = winner_set_report(&e, &ws);
    report["rule"] = rule.to_string().into();
    if let Some(s) = max_sum {
        report["max_sum"] = s.to_string().into();
    }
    let _ = writeln!(
        io.out,
        "{}",
        serde_json::to_string_pretty(&report).expect("plain json")
    );
    Ok(EXIT_OK)
}

fn axioms(a: AxiomsArgs, io: &mut Io) -> Result<i32, Fail> {
    let cfg = SearchConfig {
        trials: a.trials,
        seed: a.seed,
        max_candidates: a.max_candidates,
        max_positions: a.max_positions,
        grid: match a.grid {
            Grid::Int => ScoreGrid::SmallIntegers,
            Grid::Unit => ScoreGrid::Unit,
        },
        ..SearchConfig::default()
    };
    if let Some(path) = &a.replay {
        let text = std::fs::read_to_string(path).map_err(|e| io_fail(path, e))?;
        let w: Witness = serde_json::from_str(&text)
            .map_err(|e| Fail::input(format!("{}: {e}", path.display())))?;
        let ok = w.replay(&cfg.budget).map_err(Fail::input)?;
        let _ = writeln!(
            io.out,
            "{} {} {:?}: {}",
            w.rule,
            w.axiom,
            w.severity,
            if ok { "reproduced" } else { "NOT reproduced" }
        );
        return Ok(if ok { EXIT_OK } else { EXIT_NOT_REPRODUCED });
    }
    let rules: Vec<RuleId> = if a.rule == "all" {
        RuleId::NAMED.to_vec()
    } else {
        vec![a.rule.parse()?]
    };
    let axioms: Vec<AxiomId> = if a.axiom == "all" {
        AxiomId::ALL.to_vec()
    } else {
        vec![a.axiom.parse().map_err(Fail::input)?]
    };

    let cells = if rules.len() == 1 && axioms.len() == 1 {
        let v = derive_cell(&rules[0], axioms[0], &cfg);
        vec![TableCell {
            expected: expected_cell(&rules[0], axioms[0]),
            verdict: v,
        }]
    } else {
        derive_table(&rules, &axioms, &cfg)
    };
    let _ = write!(io.out, "{}", render_table(&cells));
    let _ = writeln!(
        io.out,
        "trials per searched cell: {}, seed: {}",
        cfg.trials, cfg.seed
    );
    if let Some(dir) = &a.witness_dir {
        std::fs::create_dir_all(dir).map_err(|e| io_fail(dir, e))?;
    }
    for c in &cells {
        let v = &c.verdict;
        let mut line = format!("{} {}: {}", v.rule, v.axiom, v.level.symbol());
        if let Some(exp) = c.expected.filter(|_| !c.matches()) {
            line.push_str(&format!(" (reference {})", exp.symbol()));
        }
        if v.inconclusive > 0 {
            line.push_str(&format!(", {} inconclusive trials", v.inconclusive));
        }
        if let Some(w) = &v.witness {
            line.push_str(&format!(", {}", w.source));
            if let Some(dir) = &a.witness_dir {
                let path = dir.join(format!(
                    "{}__{}.json",
                    v.rule.to_string().replace([':', ',', '/'], "_"),
                    v.axiom
                ));
                let json = serde_json::to_string_pretty(w).expect("plain json") + "\n";
                std::fs::write(&path, json).map_err(|e| io_fail(&path, e))?;
                line.push_str(&format!(", witness {}", path.display()));
            }
        }
        let _ = writeln!(io.out, "{line}");
    }
    Ok(EXIT_OK)
}

fn run_experiment(a: ExperimentArgs, io: &mut Io) -> Result<i32, Fail> {
    let text = std::fs::read_to_string(&a.config).map_err(|e| io_fail(&a.config, e))?;
    let mut config = ExperimentConfig::parse(&text).map_err(Fail::input)?;
    if let Some(r) = &a.rules {
        config.rules = split_list(r);
    }
    let rules = config.rule_ids().map_err(Fail::input)?;
    let base = a.config.parent().unwrap_or(Path::new("."));
    let dir = match (&a.out, &config.output_dir) {
        (Some(d), _) => d.clone(),
        (None, Some(d)) if d.is_absolute() => d.clone(),
        (None, Some(d)) => base.join(d),
        (None, None) => {
            return Err(Fail::input(
                "no output directory: pass --out or set output_dir",
            ))
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs.unwrap_or(0))
        .build()
        .map_err(|e| Fail::input(format!("thread pool: {e}")))?;
    let (elections, out) = pool.install(|| -> Result<_, Fail> {
        let elections = config.elections(base).map_err(Fail::input)?;
        let out = run_sweep(&elections, &rules, &config.budget(), a.deterministic);
        Ok((elections, out))
    })?;
    write_outputs(&dir, &out, &rules, &config, a.deterministic).map_err(Fail::input)?;
    for f in &out.failures {
        let _ = writeln!(io.err, "skipped {f}");
    }
    let _ = writeln!(
        io.out,
        "{} elections, {} rules, {} records written to {}",
        elections.len(),
        rules.len(),
        out.records.len(),
        dir.display()
    );
    Ok(if out.failures.is_empty() {
        EXIT_OK
    } else if out.budget_exhausted {
        EXIT_BUDGET
    } else {
        EXIT_PARTIAL
    })
}

fn split_list(s: &str) -> Vec<String> {
    // Commas also separate OWA weights, so `owa:` swallows the rest.
    let mut out = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        if rest.starts_with("owa:") {
            out.push(rest.to_string());
            break;
        }
        let (head, tail) = rest.split_once(',').unwrap_or((rest, ""));
        out.push(head.trim().to_string());
        rest = tail;
    }
    out
}

fn generate_cmd(a: GenerateArgs, io: &mut Io) -> Result<i32, Fail> {
    let model = match a.model {
        Model::M1 => GenModel::M1,
        Model::M2 => GenModel::M2,
    };
    let spec = GenSpec {
        model,
        m: a.m,
        q: a.q,
        count: a.count,
        seed: a.seed,
    };
    let es = generate(&spec).map_err(Fail::input)?;
    std::fs::create_dir_all(&a.out).map_err(|e| io_fail(&a.out, e))?;
    let prefix = if model == GenModel::M1 { "m1" } else { "m2" };
    for (i, e) in es.iter().enumerate() {
        let path = a.out.join(format!("{prefix}-{i:05}.json"));
        std::fs::write(&path, election_to_json(e) + "\n").map_err(|err| io_fail(&path, err))?;
        let _ = writeln!(io.out, "{}", path.display());
    }
    Ok(EXIT_OK)
}

fn file_stem_for(group: &str) -> String {
    group
        .chars()
        .map(|c| {
            if c.is_alphanumeric() || c == '-' || c == '_' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

fn ingest_cmd(a: IngestArgs, io: &mut Io) -> Result<i32, Fail> {
    let positions = match (&a.formation, &a.positions) {
        (Some(f), _) if f == "soccer-10" => soccer_10(),
        (Some(f), _) => return Err(Fail::input(format!("unknown formation `{f}`"))),
        (None, Some(p)) => p.split(',').map(|s| s.trim().to_string()).collect(),
        (None, None) => return Err(Fail::input("pass --formation or --positions")),
    };
    let players = load_players(&a.csv, &positions)
        .map_err(|e| Fail::input(format!("{}: {e}", a.csv.display())))?;
    let built = match &a.group {
        Some(g) => vec![(
            g.clone(),
            build_election(&players, g, a.top_n, &positions).map_err(Fail::input)?,
        )],
        None => {
            let (built, skipped) = build_all(&players, a.top_n, &positions).map_err(Fail::input)?;
            for g in skipped {
                let _ = writeln!(
                    io.err,
                    "skipped group {g}: fewer than {} players",
                    a.top_n.max(positions.len())
                );
            }
            built
        }
    };
    std::fs::create_dir_all(&a.out).map_err(|e| io_fail(&a.out, e))?;
    for (g, e) in &built {
        let path = a.out.join(format!("{}.json", file_stem_for(g)));
        std::fs::write(&path, election_to_json(e) + "\n").map_err(|err| io_fail(&path, err))?;
        let _ = writeln!(io.out, "{}", path.display());
    }
    Ok(EXIT_OK)
}
