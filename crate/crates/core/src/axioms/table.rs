//! Rule-by-axiom satisfaction table: fixtures first, then random search.

use std::fmt::Write as _;

use crate::rules::RuleId;

use super::checks::{run_check, Severity};
use super::fixtures::fixtures;
use super::search::{search_counterexample, SearchConfig};
use super::{AxiomId, AxiomVerdict, Level, Witness};

/// Reference level of each named rule, in [`AxiomId::ALL`] order.
/// `None` for rules without a reference row.
pub fn expected_cell(rule: &RuleId, axiom: AxiomId) -> Option<Level> {
    use Level::{StrongHoldsSoFar as S, ViolatedWeak as X, WeakHoldsSoFar as W};
    let row: [Level; 7] = match rule {
        RuleId::Utilitarian => [S, S, X, S, W, S, S],
        RuleId::Harmonic => [S, S, X, X, X, X, X],
        RuleId::InverseHarmonic => [S, S, X, X, X, X, X],
        RuleId::Egalitarian => [W, W, X, X, W, X, W],
        RuleId::SeqFixed => [S, W, X, W, W, S, S],
        RuleId::SeqMaxFirst => [S, W, S, X, W, S, S],
        RuleId::SeqMinFirst => [S, X, X, X, W, X, X],
        _ => return None,
    };
    let i = AxiomId::ALL
        .iter()
        .position(|a| *a == axiom)
        .expect("listed");
    Some(row[i])
}

#[derive(Debug, Clone)]
pub struct TableCell {
    pub verdict: AxiomVerdict,
    pub expected: Option<Level>,
}

impl TableCell {
    pub fn matches(&self) -> bool {
        self.expected.is_none_or(|l| l == self.verdict.level)
    }
}

fn fixture_witness(rule: &RuleId, axiom: AxiomId, cfg: &SearchConfig) -> Option<Witness> {
    let mut best: Option<Witness> = None;
    for f in fixtures()
        .into_iter()
        .filter(|f| f.axiom == axiom && f.rules.contains(rule))
    {
        let Ok(out) = run_check(rule, axiom, &f.input, &cfg.budget) else {
            continue;
        };
        let Some(severity) = out.severity() else {
            continue;
        };
        if best
            .as_ref()
            .is_none_or(|b| b.severity == Severity::Strong && severity == Severity::Weak)
        {
            let evidence = match out {
                super::CheckOutcome::Violated { evidence, .. } => evidence,
                _ => unreachable!(),
            };
            best = Some(Witness {
                rule: rule.to_string(),
                axiom,
                severity,
                evidence,
                source: format!("fixture: {}", f.name),
                input: f.input,
            });
        }
    }
    best
}

/// One cell: a weak fixture violation settles it; otherwise the search
/// runs and a strong fixture violation caps the level at `W`.
pub fn derive_cell(rule: &RuleId, axiom: AxiomId, cfg: &SearchConfig) -> AxiomVerdict {
    let fixture = fixture_witness(rule, axiom, cfg);
    if let Some(w) = fixture.as_ref().filter(|w| w.severity == Severity::Weak) {
        return AxiomVerdict {
            axiom,
            rule: rule.clone(),
            level: Level::ViolatedWeak,
            witness: Some(w.clone()),
            trials: 0,
            inconclusive: 0,
        };
    }
    let mut v = search_counterexample(rule, axiom, cfg);
    if v.level == Level::StrongHoldsSoFar {
        if let Some(w) = fixture {
            v.level = Level::WeakHoldsSoFar;
            v.witness = Some(w);
        }
    } else if v.level == Level::WeakHoldsSoFar && fixture.is_some() {
        v.witness = fixture;
    }
    v
}

pub fn derive_table(rules: &[RuleId], axioms: &[AxiomId], cfg: &SearchConfig) -> Vec<TableCell> {
    rules
        .iter()
        .flat_map(|r| axioms.iter().map(move |a| (r, *a)))
        .map(|(r, a)| TableCell {
            verdict: derive_cell(r, a, cfg),
            expected: expected_cell(r, a),
        })
        .collect()
}

/// Text matrix with one row per rule. A `!` marks a cell that differs from
/// the reference table, `?` one with inconclusive trials.
pub fn render_table(cells: &[TableCell]) -> String {
    let mut axioms: Vec<AxiomId> = Vec::new();
    let mut rules: Vec<RuleId> = Vec::new();
    for c in cells {
        if !axioms.contains(&c.verdict.axiom) {
            axioms.push(c.verdict.axiom);
        }
        if !rules.contains(&c.verdict.rule) {
            rules.push(c.verdict.rule.clone());
        }
    }
    let mut out = format!("{:<8}", "rule");
    for a in &axioms {
        let _ = write!(out, "{:>6}", a.short());
    }
    out.push('\n');
    for r in &rules {
        let _ = write!(out, "{:<8}", r.short());
        for a in &axioms {
            let cell = cells
                .iter()
                .find(|c| &c.verdict.rule == r && c.verdict.axiom == *a)
                .expect("full grid");
            let mut sym = cell.verdict.level.symbol().to_string();
            if !cell.matches() {
                sym.push('!');
            }
            if cell.verdict.inconclusive > 0 {
                sym.push('?');
            }
            let _ = write!(out, "{sym:>6}");
        }
        out.push('\n');
    }
    out
}
