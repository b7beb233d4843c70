//! The named voting rules behind one interface.

mod sequential;

use std::fmt;
use std::str::FromStr;

pub use sequential::{next_positions, sequential_run, Selector};

use crate::matching::{
    bottleneck_assignment, bottleneck_max_sum, max_weight_assignment, owa_optimize, owa_value,
    MatchingError, OwaVector, SearchBudget,
};
use crate::model::{Election, LineUp, Score, WinnerSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RuleError {
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("no open position left to fill")]
    NoOpenPosition,
    #[error("assigned candidates and positions are inconsistent")]
    InconsistentState,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RuleId {
    Utilitarian,
    Egalitarian,
    EgalitarianMaxSum,
    Harmonic,
    InverseHarmonic,
    SeqFixed,
    SeqMaxFirst,
    SeqMinFirst,
    Owa(OwaVector),
}

impl RuleId {
    /// The seven rules of the axiom table followed by the max-sum variant.
    pub const NAMED: [RuleId; 8] = [
        RuleId::Utilitarian,
        RuleId::Harmonic,
        RuleId::InverseHarmonic,
        RuleId::Egalitarian,
        RuleId::SeqFixed,
        RuleId::SeqMaxFirst,
        RuleId::SeqMinFirst,
        RuleId::EgalitarianMaxSum,
    ];

    /// Short label used in tables (`ut`, `har`, …).
    pub fn short(&self) -> String {
        match self {
            RuleId::Utilitarian => "ut".into(),
            RuleId::Egalitarian => "eg".into(),
            RuleId::EgalitarianMaxSum => "eg-ms".into(),
            RuleId::Harmonic => "har".into(),
            RuleId::InverseHarmonic => "Ihar".into(),
            RuleId::SeqFixed => "fix".into(),
            RuleId::SeqMaxFirst => "max".into(),
            RuleId::SeqMinFirst => "min".into(),
            RuleId::Owa(w) => format!("owa({w})"),
        }
    }

    pub fn selector(&self) -> Option<Selector> {
        match self {
            RuleId::SeqFixed => Some(Selector::Fixed),
            RuleId::SeqMaxFirst => Some(Selector::MaxFirst),
            RuleId::SeqMinFirst => Some(Selector::MinFirst),
            _ => None,
        }
    }

    pub fn is_sequential(&self) -> bool {
        self.selector().is_some()
    }

    /// The OWA vector for rules defined by one, sized for `q` positions.
    pub fn owa_vector(&self, q: usize) -> Option<OwaVector> {
        match self {
            RuleId::Utilitarian => Some(OwaVector::utilitarian(q)),
            RuleId::Egalitarian => Some(OwaVector::egalitarian(q)),
            RuleId::Harmonic => Some(OwaVector::harmonic(q)),
            RuleId::InverseHarmonic => Some(OwaVector::inverse_harmonic(q)),
            RuleId::Owa(w) => Some(w.clone()),
            _ => None,
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleId::Utilitarian => f.write_str("utilitarian"),
            RuleId::Egalitarian => f.write_str("egalitarian"),
            RuleId::EgalitarianMaxSum => f.write_str("egalitarian-max-sum"),
            RuleId::Harmonic => f.write_str("harmonic"),
            RuleId::InverseHarmonic => f.write_str("inverse-harmonic"),
            RuleId::SeqFixed => f.write_str("seq-fixed"),
            RuleId::SeqMaxFirst => f.write_str("seq-max-first"),
            RuleId::SeqMinFirst => f.write_str("seq-min-first"),
            RuleId::Owa(w) => write!(f, "owa:{w}"),
        }
    }
}

impl FromStr for RuleId {
    type Err = RuleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(weights) = s.strip_prefix("owa:") {
            return Ok(RuleId::Owa(weights.parse()?));
        }
        Ok(match s {
            "utilitarian" => RuleId::Utilitarian,
            "egalitarian" => RuleId::Egalitarian,
            "egalitarian-max-sum" => RuleId::EgalitarianMaxSum,
            "harmonic" => RuleId::Harmonic,
            "inverse-harmonic" => RuleId::InverseHarmonic,
            "seq-fixed" => RuleId::SeqFixed,
            "seq-max-first" => RuleId::SeqMaxFirst,
            "seq-min-first" => RuleId::SeqMinFirst,
            _ => return Err(RuleError::UnknownRule(s.to_string())),
        })
    }
}

pub fn apply_rule(
    rule: &RuleId,
    e: &Election,
    budget: &SearchBudget,
) -> Result<WinnerSet, RuleError> {
    Ok(match rule {
        RuleId::Utilitarian => max_weight_assignment(e, budget),
        RuleId::Egalitarian => bottleneck_assignment(e, budget),
        RuleId::EgalitarianMaxSum => bottleneck_max_sum(e, budget).0,
        RuleId::Harmonic | RuleId::InverseHarmonic | RuleId::Owa(_) => {
            let lambda = rule.owa_vector(e.num_positions()).expect("OWA rule");
            owa_optimize(e, &lambda, budget)?
        }
        RuleId::SeqFixed | RuleId::SeqMaxFirst | RuleId::SeqMinFirst => {
            sequential_run(e, rule.selector().expect("sequential"), budget.winner_cap)
        }
    })
}

/// Whether `lu` belongs to the full winner set of `rule`, decided without
/// enumerating that set (so it stays exact when enumeration is capped).
pub fn is_winner(
    rule: &RuleId,
    e: &Election,
    lu: &LineUp,
    budget: &SearchBudget,
) -> Result<bool, RuleError> {
    let probe = budget.capped(1);
    let v = e.score_vector(lu);
    Ok(match rule {
        RuleId::SeqFixed | RuleId::SeqMaxFirst | RuleId::SeqMinFirst => {
            sequential::reaches(e, rule.selector().expect("sequential"), lu)
        }
        RuleId::EgalitarianMaxSum => {
            let (ws, best_sum) = bottleneck_max_sum(e, &probe);
            let min = v.iter().min().expect("q >= 1");
            Some(min) == ws.objective.as_ref() && v.iter().cloned().sum::<Score>() == best_sum
        }
        _ => {
            let lambda = rule.owa_vector(e.num_positions()).expect("OWA rule");
            let best = apply_rule(rule, e, &probe)?
                .objective
                .expect("OWA rules report an objective");
            owa_value(&lambda, &v)? == best
        }
    })
}
