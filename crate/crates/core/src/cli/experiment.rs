//! Rule-comparison sweeps: one record per (election, rule), a quartile
//! summary per rule and metric, and per-election conflict measures.

use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::datagen::{generate, normalize_election, GenModel, GenSpec};
use crate::ingest::{build_all, load_players, soccer_10};
use crate::matching::{MatchingError, SearchBudget};
use crate::metrics::{
    bundle, model_comparison_metrics, representative_winner, MetricBundle, ModelComparison,
};
use crate::model::{election_from_json, Election};
use crate::rules::{RuleError, RuleId};

/// JSON experiment description. Every field except `source` is optional.
///
/// ```json
/// {
///   "source": {"generate": {"model": "m2", "m": 10, "q": 10, "count": 200, "seed": 1}},
///   "rules": ["utilitarian", "egalitarian", "seq-max-first"],
///   "output_dir": "out",
///   "winner_cap": 1000,
///   "node_limit": null,
///   "normalize": true
/// }
/// ```
///
/// Other sources: `{"ingest": {"csv": "players.csv", "formation": "soccer-10",
/// "top_n": 10}}` (or `"positions": [...]` instead of `formation`) and
/// `{"files": ["a.json", "b.json"]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub source: Source,
    #[serde(default)]
    pub rules: Vec<String>,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
    #[serde(default)]
    pub winner_cap: Option<usize>,
    #[serde(default)]
    pub node_limit: Option<u64>,
    /// Divide each election by its maximum; defaults to on for generated
    /// data and off otherwise.
    #[serde(default)]
    pub normalize: Option<bool>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum Source {
    Generate(GenSpec),
    Ingest {
        csv: PathBuf,
        #[serde(default)]
        formation: Option<String>,
        #[serde(default)]
        positions: Option<Vec<String>>,
        top_n: usize,
    },
    Files(Vec<PathBuf>),
}

#[derive(Debug, thiserror::Error)]
pub enum ExperimentError {
    #[error("config: {0}")]
    Config(String),
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, ExperimentError> {
        serde_json::from_str(text).map_err(|e| ExperimentError::Config(e.to_string()))
    }

    pub fn rule_ids(&self) -> Result<Vec<RuleId>, ExperimentError> {
        if self.rules.is_empty() {
            return Ok(RuleId::NAMED.to_vec());
        }
        self.rules
            .iter()
            .map(|r| {
                r.parse()
                    .map_err(|e: RuleError| ExperimentError::Config(e.to_string()))
            })
            .collect()
    }

    pub fn budget(&self) -> SearchBudget {
        let d = SearchBudget::default();
        SearchBudget::new(
            self.winner_cap.unwrap_or(d.winner_cap),
            self.node_limit.or(d.node_limit),
        )
    }

    /// Elections with their ids, relative paths resolved against `base`.
    pub fn elections(&self, base: &Path) -> Result<Vec<(String, Election)>, ExperimentError> {
        let resolve = |p: &Path| {
            if p.is_absolute() {
                p.to_path_buf()
            } else {
                base.join(p)
            }
        };
        let (list, default_norm) = match &self.source {
            Source::Generate(spec) => {
                let prefix = match spec.model {
                    GenModel::M1 => "m1",
                    GenModel::M2 => "m2",
                };
                let es = generate(spec).map_err(|e| ExperimentError::Input(e.to_string()))?;
                (
                    es.into_iter()
                        .enumerate()
                        .map(|(i, e)| (format!("{prefix}-{i:05}"), e))
                        .collect(),
                    true,
                )
            }
            Source::Ingest {
                csv,
                formation,
                positions,
                top_n,
            } => {
                let positions = match (formation.as_deref(), positions) {
                    (Some("soccer-10"), None) => soccer_10(),
                    (None, Some(p)) => p.clone(),
                    (Some(f), None) => {
                        return Err(ExperimentError::Config(format!("unknown formation `{f}`")))
                    }
                    _ => {
                        return Err(ExperimentError::Config(
                            "give exactly one of formation and positions".into(),
                        ))
                    }
                };
                let players = load_players(&resolve(csv), &positions)
                    .map_err(|e| ExperimentError::Input(e.to_string()))?;
                let (built, _) = build_all(&players, *top_n, &positions)
                    .map_err(|e| ExperimentError::Input(e.to_string()))?;
                (built, false)
            }
            Source::Files(paths) => {
                let mut out = Vec::new();
                for p in paths {
                    let p = resolve(p);
                    let text =
                        std::fs::read_to_string(&p).map_err(|source| ExperimentError::Io {
                            path: p.clone(),
                            source,
                        })?;
                    let e = election_from_json(&text)
                        .map_err(|e| ExperimentError::Input(format!("{}: {e}", p.display())))?;
                    let id = p.file_stem().map_or_else(
                        || p.display().to_string(),
                        |s| s.to_string_lossy().into_owned(),
                    );
                    out.push((id, e));
                }
                (out, false)
            }
        };
        if self.normalize.unwrap_or(default_norm) {
            list.into_iter()
                .map(|(id, e)| {
                    normalize_election(&e)
                        .map(|n| (id.clone(), n))
                        .map_err(|err| ExperimentError::Input(format!("{id}: {err}")))
                })
                .collect()
        } else {
            Ok(list)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRecord {
    pub election_id: String,
    pub rule: RuleId,
    pub metrics: MetricBundle,
    pub runtime_ms: f64,
    pub truncated: bool,
}

#[derive(Debug, Clone, Default)]
pub struct SweepOutput {
    pub records: Vec<ExperimentRecord>,
    pub comparisons: Vec<(String, ModelComparison)>,
    /// `election_id: rule: message` for every skipped pair.
    pub failures: Vec<String>,
    /// Set if any failure was a search-budget exhaustion.
    pub budget_exhausted: bool,
}

enum Cell {
    Record(ExperimentRecord),
    Failure(String, bool),
}

fn run_one(
    id: &str,
    e: &Election,
    rule: &RuleId,
    budget: &SearchBudget,
    deterministic: bool,
) -> Cell {
    let start = Instant::now();
    let ws = match representative_winner(rule, e, budget) {
        Ok(ws) => ws,
        Err(err) => {
            let budget_hit = matches!(err, RuleError::Matching(MatchingError::NodeLimit { .. }));
            return Cell::Failure(format!("{id}: {rule}: {err}"), budget_hit);
        }
    };
    let runtime_ms = if deterministic {
        0.0
    } else {
        start.elapsed().as_secs_f64() * 1e3
    };
    match bundle(e, ws.first()) {
        Ok(metrics) => Cell::Record(ExperimentRecord {
            election_id: id.to_string(),
            rule: rule.clone(),
            metrics,
            runtime_ms,
            truncated: ws.truncated,
        }),
        Err(err) => Cell::Failure(format!("{id}: {rule}: {err}"), false),
    }
}

/// Runs every rule on every election. Output order follows the input
/// order of elections, then of rules.
pub fn run_sweep(
    elections: &[(String, Election)],
    rules: &[RuleId],
    budget: &SearchBudget,
    deterministic: bool,
) -> SweepOutput {
    let per_election: Vec<(Vec<Cell>, Result<ModelComparison, String>)> = elections
        .par_iter()
        .map(|(id, e)| {
            let cells = rules
                .iter()
                .map(|r| run_one(id, e, r, budget, deterministic))
                .collect();
            let mc = model_comparison_metrics(e, budget)
                .map_err(|err| format!("{id}: model comparison: {err}"));
            (cells, mc)
        })
        .collect();
    let mut out = SweepOutput::default();
    for ((id, _), (cells, mc)) in elections.iter().zip(per_election) {
        for c in cells {
            match c {
                Cell::Record(r) => out.records.push(r),
                Cell::Failure(msg, budget_hit) => {
                    out.budget_exhausted |= budget_hit;
                    out.failures.push(msg);
                }
            }
        }
        match mc {
            Ok(m) => out.comparisons.push((id.clone(), m)),
            Err(msg) => out.failures.push(msg),
        }
    }
    out
}

pub const METRICS: [&str; 4] = [
    "normalized_sum",
    "min_score",
    "gini",
    "reasonable_dissatisfaction",
];

fn metric(m: &MetricBundle, name: &str) -> f64 {
    match name {
        "normalized_sum" => m.normalized_sum,
        "min_score" => m.min_score,
        "gini" => m.gini,
        _ => m.reasonable_dissatisfaction,
    }
}

/// Quantile with linear interpolation between closest ranks.
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    let h = (sorted.len() - 1) as f64 * q;
    let (lo, hi) = (h.floor() as usize, h.ceil() as usize);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub rule: String,
    pub metric: &'static str,
    pub n: usize,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

pub fn summarize(records: &[ExperimentRecord], rules: &[RuleId]) -> Vec<SummaryRow> {
    let mut rows = Vec::new();
    for rule in rules {
        for name in METRICS {
            let mut v: Vec<f64> = records
                .iter()
                .filter(|r| &r.rule == rule)
                .map(|r| metric(&r.metrics, name))
                .collect();
            v.sort_by(f64::total_cmp);
            rows.push(SummaryRow {
                rule: rule.to_string(),
                metric: name,
                n: v.len(),
                min: v.first().copied().unwrap_or(f64::NAN),
                q1: quantile(&v, 0.25),
                median: quantile(&v, 0.5),
                q3: quantile(&v, 0.75),
                max: v.last().copied().unwrap_or(f64::NAN),
            });
        }
    }
    rows
}

fn to_csv(header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

pub fn records_csv(records: &[ExperimentRecord]) -> String {
    to_csv(
        &[
            "election_id",
            "rule",
            "normalized_sum",
            "min_score",
            "gini",
            "reasonable_dissatisfaction",
            "runtime_ms",
            "truncated",
        ],
        records.iter().map(|r| {
            let m = &r.metrics;
            vec![
                r.election_id.clone(),
                r.rule.to_string(),
                m.normalized_sum.to_string(),
                m.min_score.to_string(),
                m.gini.to_string(),
                m.reasonable_dissatisfaction.to_string(),
                r.runtime_ms.to_string(),
                r.truncated.to_string(),
            ]
        }),
    )
}

pub fn summary_csv(rows: &[SummaryRow]) -> String {
    to_csv(
        &["rule", "metric", "n", "min", "q1", "median", "q3", "max"],
        rows.iter().map(|r| {
            let mut v = vec![r.rule.clone(), r.metric.to_string(), r.n.to_string()];
            v.extend([r.min, r.q1, r.median, r.q3, r.max].map(|x| x.to_string()));
            v
        }),
    )
}

pub fn comparison_csv(rows: &[(String, ModelComparison)]) -> String {
    to_csv(
        &[
            "election_id",
            "relative_conflicting_score",
            "position_sum_gini",
            "social_conflict",
        ],
        rows.iter().map(|(id, m)| {
            vec![
                id.clone(),
                m.relative_conflicting_score.to_string(),
                m.position_sum_gini.to_string(),
                m.social_conflict.to_string(),
            ]
        }),
    )
}

/// Writes `records.csv`, `summary.csv`, `model_comparison.csv` and
/// `run.json`. Without `deterministic`, `run.json` carries a timestamp.
pub fn write_outputs(
    dir: &Path,
    out: &SweepOutput,
    rules: &[RuleId],
    config: &ExperimentConfig,
    deterministic: bool,
) -> Result<(), ExperimentError> {
    let io = |path: PathBuf| {
        move |source| ExperimentError::Io {
            path: path.clone(),
            source,
        }
    };
    std::fs::create_dir_all(dir).map_err(io(dir.to_path_buf()))?;
    let write = |name: &str, text: String| {
        let path = dir.join(name);
        std::fs::write(&path, text).map_err(io(path))
    };
    write("records.csv", records_csv(&out.records))?;
    write("summary.csv", summary_csv(&summarize(&out.records, rules)))?;
    write("model_comparison.csv", comparison_csv(&out.comparisons))?;
    let mut run = serde_json::json!({
        "config": config,
        "records": out.records.len(),
        "failures": out.failures,
    });
    if !deterministic {
        let now = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        run["timestamp_unix"] = now.into();
    }
    write(
        "run.json",
        serde_json::to_string_pretty(&run).expect("plain json") + "\n",
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantiles_interpolate() {
        let v = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(quantile(&v, 0.5), 2.5);
        assert_eq!(quantile(&v, 0.25), 1.75);
        assert_eq!(quantile(&[7.0], 0.75), 7.0);
    }

    #[test]
    fn config_defaults_and_errors() {
        let c = ExperimentConfig::parse(
            r#"{"source":{"generate":{"model":"m2","m":4,"q":3,"count":2,"seed":1}}}"#,
        )
        .unwrap();
        assert_eq!(c.rule_ids().unwrap().len(), 8);
        let es = c.elections(Path::new(".")).unwrap();
        assert_eq!(es[1].0, "m2-00001");
        assert!(ExperimentConfig::parse(r#"{"source":{"generate":{}}}"#).is_err());
        assert!(ExperimentConfig::parse(r#"{"source":{"files":[]},"bogus":1}"#).is_err());
        let bad = ExperimentConfig::parse(r#"{"source":{"files":[]},"rules":["nope"]}"#).unwrap();
        assert!(bad.rule_ids().is_err());
    }

    #[test]
    fn sweep_orders_records_and_zeroes_runtime() {
        let es = vec![
            ("x".to_string(), Election::intro()),
            ("y".to_string(), Election::intro()),
        ];
        let rules = [RuleId::Utilitarian, RuleId::SeqMaxFirst];
        let out = run_sweep(&es, &rules, &SearchBudget::default(), true);
        let keys: Vec<(String, String)> = out
            .records
            .iter()
            .map(|r| (r.election_id.clone(), r.rule.to_string()))
            .collect();
        assert_eq!(keys[0], ("x".into(), "utilitarian".into()));
        assert_eq!(keys[3], ("y".into(), "seq-max-first".into()));
        assert!(out.records.iter().all(|r| r.runtime_ms == 0.0));
        assert!(records_csv(&out.records)
            .lines()
            .nth(1)
            .unwrap()
            .starts_with("x,utilitarian,0.875,4,"));
    }
}
