use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use super::{Election, LineUp, ModelError, Score, WinnerSet};

/// On-disk JSON shape of an election.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElectionDoc {
    pub candidates: Vec<String>,
    pub positions: Vec<String>,
    pub scores: Vec<Vec<Score>>,
}

#[derive(Deserialize)]
struct RawDoc {
    candidates: Vec<String>,
    positions: Vec<String>,
    scores: Vec<Vec<Value>>,
}

fn cell(value: &Value, row: usize, col: usize) -> Result<Score, ModelError> {
    let text = match value {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        other => other.to_string(),
    };
    let parsed = match value {
        Value::Number(n) if n.is_f64() => Err(super::ParseScoreError {
            text,
            reason: "non-integer JSON numbers are inexact; quote the value",
        }),
        Value::String(_) | Value::Number(_) => text.parse(),
        _ => Err(super::ParseScoreError {
            text,
            reason: "expected a number or a string",
        }),
    };
    parsed.map_err(|source| ModelError::BadScore { row, col, source })
}

pub fn election_from_json(text: &str) -> Result<Election, ModelError> {
    let raw: RawDoc = serde_json::from_str(text).map_err(|e| ModelError::Json(e.to_string()))?;
    let rows = raw
        .scores
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(|(j, v)| cell(v, i + 1, j + 1))
                .collect()
        })
        .collect::<Result<Vec<Vec<Score>>, _>>()?;
    Election::new(raw.candidates, raw.positions, rows)
}

/// Header row = position names (first cell is a label and ignored), first
/// column = candidate names.
pub fn election_from_csv(text: &str) -> Result<Election, ModelError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut records = reader.records();
    let header = match records.next() {
        Some(r) => r.map_err(|e| ModelError::Csv {
            line: 1,
            message: e.to_string(),
        })?,
        None => {
            return Err(ModelError::Csv {
                line: 1,
                message: "empty document".into(),
            })
        }
    };
    let positions: Vec<String> = header
        .iter()
        .skip(1)
        .map(|s| s.trim().to_string())
        .collect();
    let mut candidates = Vec::new();
    let mut rows = Vec::new();
    for (i, record) in records.enumerate() {
        let line = i + 2;
        let record = record.map_err(|e| ModelError::Csv {
            line,
            message: e.to_string(),
        })?;
        if record.iter().all(|f| f.trim().is_empty()) {
            continue;
        }
        let mut fields = record.iter();
        candidates.push(fields.next().unwrap_or_default().trim().to_string());
        let row = fields
            .enumerate()
            .map(|(j, f)| {
                f.parse::<Score>().map_err(|source| ModelError::BadScore {
                    row: line,
                    col: j + 2,
                    source,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Election::new(candidates, positions, rows)
}

/// Detects JSON (leading `{`) versus CSV.
pub fn parse_election(text: &str) -> Result<Election, ModelError> {
    if text.trim_start().starts_with('{') {
        election_from_json(text)
    } else {
        election_from_csv(text)
    }
}

impl From<&Election> for ElectionDoc {
    fn from(e: &Election) -> Self {
        ElectionDoc {
            candidates: e.candidates().to_vec(),
            positions: e.positions().to_vec(),
            scores: e.rows().map(<[Score]>::to_vec).collect(),
        }
    }
}

pub fn election_to_json(e: &Election) -> String {
    serde_json::to_string_pretty(&ElectionDoc::from(e)).expect("election serializes")
}

pub fn election_to_csv(e: &Election) -> String {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let header = std::iter::once("candidate".to_string()).chain(e.positions().iter().cloned());
    writer.write_record(header).expect("in-memory write");
    for (name, row) in e.candidates().iter().zip(e.rows()) {
        let fields = std::iter::once(name.clone()).chain(row.iter().map(Score::to_string));
        writer.write_record(fields).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("flush")).expect("utf-8")
}

/// `{"assignment": {position: candidate, ...}, "score_vector": [...]}`
pub fn lineup_report(e: &Election, lu: &LineUp) -> Value {
    let mut assignment = Map::new();
    for (p, c) in lu.iter().enumerate() {
        assignment.insert(
            e.positions()[p].clone(),
            Value::String(e.candidates()[c].clone()),
        );
    }
    let vector: Vec<Value> = e
        .score_vector(lu)
        .iter()
        .map(|s| Value::String(s.to_string()))
        .collect();
    json!({ "assignment": assignment, "score_vector": vector })
}

pub fn winner_set_report(e: &Election, ws: &WinnerSet) -> Value {
    json!({
        "objective": ws.objective.as_ref().map(Score::to_string),
        "truncated": ws.truncated,
        "winners": ws.iter().map(|lu| lineup_report(e, lu)).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const INTRO: &str = r#"{"candidates":["Müller","Özil","Götze"],"positions":["L","C","R"],
        "scores":[[5,10,9],[3,8,5],[4,7,4]]}"#;

    #[test]
    fn parses_intro_document() {
        let e = parse_election(INTRO).unwrap();
        assert_eq!((e.num_candidates(), e.num_positions()), (3, 3));
        assert_eq!(e.score(0, 1), &Score::from_integer(10));
    }

    #[test]
    fn parses_string_scores_exactly() {
        let e = election_from_json(
            r#"{"candidates":["a","b"],"positions":["p"],"scores":[["4.75"],["3/4"]]}"#,
        )
        .unwrap();
        assert_eq!(e.score(0, 0), &Score::from_ratio(19, 4));
        assert_eq!(e.score(1, 0), &Score::from_ratio(3, 4));
    }

    #[test]
    fn reports_location_of_bad_cells() {
        let err = election_from_json(
            r#"{"candidates":["a","b"],"positions":["p","q"],"scores":[[1,2],[3,"x"]]}"#,
        )
        .unwrap_err();
        assert!(
            matches!(err, ModelError::BadScore { row: 2, col: 2, .. }),
            "{err}"
        );
        let err = election_from_json(r#"{"candidates":["a"],"positions":["p"],"scores":[[0.5]]}"#)
            .unwrap_err();
        assert!(matches!(err, ModelError::BadScore { row: 1, col: 1, .. }));
        let err = election_from_csv("x,L,R\na,1,2\nb,3,oops\n").unwrap_err();
        assert!(
            matches!(err, ModelError::BadScore { row: 3, col: 3, .. }),
            "{err}"
        );
    }

    #[test]
    fn two_candidates_three_positions_is_rejected() {
        let err = parse_election(
            r#"{"candidates":["a","b"],"positions":["x","y","z"],"scores":[[1,2,3],[4,5,6]]}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("m < q"));
    }

    #[test]
    fn csv_matrix_form() {
        let e =
            election_from_csv("candidate,L,C,R\nMüller,5,10,9\nÖzil,3,8,5\nGötze,4,7,4\n").unwrap();
        assert_eq!(e, parse_election(INTRO).unwrap());
        assert_eq!(election_from_csv(&election_to_csv(&e)).unwrap(), e);
    }

    #[test]
    fn lineup_report_shape() {
        let e = parse_election(INTRO).unwrap();
        let lu = LineUp::from_names(&e, &["Götze", "Özil", "Müller"]).unwrap();
        let v = lineup_report(&e, &lu);
        assert_eq!(v["assignment"]["L"], "Götze");
        assert_eq!(v["score_vector"], json!(["4", "8", "9"]));
        let keys: Vec<_> = v["assignment"]
            .as_object()
            .unwrap()
            .keys()
            .cloned()
            .collect();
        assert_eq!(keys, ["L", "C", "R"]);
    }

    fn arb_election() -> impl Strategy<Value = Election> {
        (1usize..5, 0usize..3).prop_flat_map(|(q, extra)| {
            let m = q + extra;
            proptest::collection::vec(proptest::collection::vec((-50i64..50, 1i64..12), q), m)
                .prop_map(move |rows| {
                    Election::new(
                        (0..m).map(|i| format!("cand {i}")).collect(),
                        (0..q).map(|j| format!("pos,{j}")).collect(),
                        rows.into_iter()
                            .map(|r| {
                                r.into_iter()
                                    .map(|(n, d)| Score::from_ratio(n, d))
                                    .collect()
                            })
                            .collect(),
                    )
                    .unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn json_and_csv_roundtrip(e in arb_election()) {
            prop_assert_eq!(&election_from_json(&election_to_json(&e)).unwrap(), &e);
            prop_assert_eq!(&election_from_csv(&election_to_csv(&e)).unwrap(), &e);
        }
    }
}
