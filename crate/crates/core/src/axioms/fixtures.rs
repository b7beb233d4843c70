//! Hand-built counterexamples, one per negative or weak-only table cell.

use crate::model::{Election, ElectionDoc, Score};
use crate::rules::RuleId;

use super::checks::{CheckInput, Severity};
use super::AxiomId;

/// Election with candidates `a, b, …` and positions `p1, p2, …`; cells are
/// exact score strings.
pub fn election(rows: &[&[&str]]) -> Election {
    Election::new(
        (0..rows.len())
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect(),
        (1..=rows[0].len()).map(|j| format!("p{j}")).collect(),
        rows.iter()
            .map(|r| {
                r.iter()
                    .map(|s| s.parse().expect("fixture score"))
                    .collect()
            })
            .collect(),
    )
    .expect("fixture election")
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub rules: Vec<RuleId>,
    pub axiom: AxiomId,
    pub input: CheckInput,
    pub expected: Severity,
}

fn doc(rows: &[&[&str]]) -> ElectionDoc {
    ElectionDoc::from(&election(rows))
}

fn line_up(rows: &[&[&str]]) -> CheckInput {
    CheckInput::LineUp {
        election: doc(rows),
    }
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn score(s: &str) -> Score {
    s.parse().expect("fixture score")
}

pub const E1: &[&[&str]] = &[&["0", "3"], &["3", "0"], &["4", "0"]];
pub const E2: &[&[&str]] = &[&["4", "1", "0"], &["4.75", "3", "0"], &["0", "0", "2"]];
pub const E3: &[&[&str]] = &[&["2", "1"], &["0", "0"]];
pub const MIN_FIRST_LEM: &[&[&str]] = &[
    &["0", "6", "4", "0", "0"],
    &["2", "3", "0", "0", "0"],
    &["7", "0", "0", "5", "1"],
    &["1", "0", "0", "0", "0"],
    &["0", "0", "0", "1", "0"],
    &["0", "1", "0", "0", "0"],
];

fn fixture(
    name: &'static str,
    rules: &[RuleId],
    axiom: AxiomId,
    input: CheckInput,
    expected: Severity,
) -> Fixture {
    Fixture {
        name,
        rules: rules.to_vec(),
        axiom,
        input,
        expected,
    }
}

/// Splits the last column off `rows` as the enlargement column.
fn enlargement(rows: &[&[&str]]) -> CheckInput {
    let q = rows[0].len() - 1;
    let base: Vec<Vec<&str>> = rows.iter().map(|r| r[..q].to_vec()).collect();
    let base: Vec<&[&str]> = base.iter().map(Vec::as_slice).collect();
    CheckInput::Enlargement {
        election: doc(&base),
        position: format!("p{}", q + 1),
        column: rows.iter().map(|r| score(r[q])).collect(),
    }
}

fn monotonicity(rows: &[&[&str]], winner: &[&str], position: &str, new_score: &str) -> CheckInput {
    CheckInput::Monotonicity {
        election: doc(rows),
        winner: names(winner),
        position: position.into(),
        new_score: score(new_score),
    }
}

fn position_split(rows: &[&[&str]]) -> CheckInput {
    CheckInput::PositionConsistency {
        election: doc(rows),
        first: names(&["p1", "p2"]),
        second: names(&["p2", "p3"]),
    }
}

pub fn fixtures() -> Vec<Fixture> {
    use AxiomId::*;
    use RuleId::*;
    use Severity::{Strong, Weak};
    let seq = [SeqFixed, SeqMaxFirst, SeqMinFirst];
    vec![
        fixture(
            "E1 wasteful egalitarian winner",
            &[Egalitarian],
            NonWastefulness,
            line_up(E1),
            Strong,
        ),
        fixture(
            "E1 dominated egalitarian winner",
            &[Egalitarian],
            ScorePareto,
            line_up(E1),
            Strong,
        ),
        fixture(
            "tie at p1 lets sequential rules pick a dominated line-up",
            &[SeqFixed, SeqMaxFirst],
            ScorePareto,
            line_up(&[&["2", "1"], &["2", "0"]]),
            Strong,
        ),
        fixture(
            "every min-first outcome is dominated",
            &[SeqMinFirst],
            ScorePareto,
            line_up(&[&["1", "1", "3"], &["1", "3", "2"], &["0", "0", "0"]]),
            Weak,
        ),
        fixture(
            "envy for y = 1",
            &[Utilitarian, Egalitarian],
            ReasonableSatisfaction,
            line_up(&[&["1", "3/2"], &["0", "1"]]),
            Weak,
        ),
        fixture(
            "envy for y = 1/2",
            &[Harmonic, InverseHarmonic],
            ReasonableSatisfaction,
            line_up(&[&["1", "5/4"], &["0", "1"]]),
            Weak,
        ),
        fixture(
            "first filled position envies the second",
            &[SeqFixed, SeqMinFirst],
            ReasonableSatisfaction,
            line_up(&[&["1", "2"], &["0", "1"]]),
            Weak,
        ),
        fixture(
            "two-by-two score inconsistency",
            &[Harmonic, InverseHarmonic, Egalitarian, SeqMaxFirst],
            ScoreConsistency,
            CheckInput::ScoreConsistency {
                first: doc(&[&["4", "3"], &["2", "1"]]),
                second: doc(&[&["1", "3"], &["2", "4"]]),
            },
            Weak,
        ),
        fixture(
            "min-first order flips in the sum",
            &[SeqMinFirst],
            ScoreConsistency,
            CheckInput::ScoreConsistency {
                first: doc(&[&["1", "3"], &["0", "0"]]),
                second: doc(&[&["0", "0"], &["4", "1"]]),
            },
            Weak,
        ),
        fixture(
            "fixed-order gains an extra winner in the sum",
            &[SeqFixed],
            ScoreConsistency,
            CheckInput::ScoreConsistency {
                first: doc(&[&["3", "1"], &["3", "3"], &["0", "3"]]),
                second: doc(&[&["3", "3"], &["3", "3"], &["0", "1"]]),
            },
            Strong,
        ),
        fixture(
            "harmonic coefficients shift on the union",
            &[Harmonic],
            PositionConsistency,
            position_split(&[&["1", "3", "0"], &["3", "4.1", "0"], &["0", "0", "5"]]),
            Weak,
        ),
        fixture(
            "inverse-harmonic coefficients shift on the union",
            &[InverseHarmonic],
            PositionConsistency,
            position_split(&[&["2", "1", "0"], &["3.75", "2", "0"], &["0", "0", "1/2"]]),
            Weak,
        ),
        fixture(
            "dominated egalitarian winner is no union",
            &[Egalitarian],
            PositionConsistency,
            position_split(&[&["1", "0", "0"], &["0", "3", "2"], &["0", "2", "3"]]),
            Strong,
        ),
        fixture(
            "utilitarian winner with a losing restriction",
            &[Utilitarian],
            PositionConsistency,
            position_split(&[&["0", "0", "0"], &["1", "1", "0"], &["0", "0", "0"]]),
            Strong,
        ),
        fixture(
            "sequential winner with no decomposition",
            &seq,
            PositionConsistency,
            position_split(&[&["1", "0", "0"], &["0", "1", "0"], &["1", "0", "1"]]),
            Strong,
        ),
        fixture(
            "E1 raise a on p2",
            &[Egalitarian],
            Monotonicity,
            monotonicity(E1, &["b", "a"], "p2", "4"),
            Weak,
        ),
        fixture(
            "E2 raise c on p3",
            &[Harmonic],
            Monotonicity,
            monotonicity(E2, &["a", "b", "c"], "p3", "3"),
            Weak,
        ),
        fixture(
            "inverse-harmonic raise c on p3",
            &[InverseHarmonic],
            Monotonicity,
            monotonicity(
                &[&["4", "1", "0"], &["9.25", "3", "0"], &["0", "0", "2"]],
                &["b", "a", "c"],
                "p3",
                "3",
            ),
            Weak,
        ),
        fixture(
            "E3 raise a on p2",
            &[SeqMinFirst],
            Monotonicity,
            monotonicity(E3, &["b", "a"], "p2", "3"),
            Weak,
        ),
        fixture(
            "harmonic enlargement drops a",
            &[Harmonic],
            LineupEnlargement,
            enlargement(&[
                &["0.5", "0", "0"],
                &["3", "3.3", "0"],
                &["0", "1", "0"],
                &["0", "0", "4"],
            ]),
            Weak,
        ),
        fixture(
            "inverse-harmonic enlargement",
            &[InverseHarmonic],
            LineupEnlargement,
            enlargement(&[
                &["1.7", "0", "0"],
                &["3", "1.7", "0"],
                &["0", "1", "0"],
                &["0", "0", "1"],
            ]),
            Weak,
        ),
        fixture(
            "egalitarian enlargement adds an unrelated winner",
            &[Egalitarian],
            LineupEnlargement,
            enlargement(&[
                &["3", "0", "0"],
                &["2", "3", "0"],
                &["0", "2", "0"],
                &["0", "0", "1"],
            ]),
            Strong,
        ),
        fixture(
            "six candidates, five positions",
            &[SeqMinFirst],
            LineupEnlargement,
            enlargement(MIN_FIRST_LEM),
            Weak,
        ),
    ]
}
