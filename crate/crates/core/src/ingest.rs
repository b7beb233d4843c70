//! Player tables with precomputed per-position scores, grouped (for
//! example by nationality) into one election per group.
//!
//! Input is UTF-8 CSV with a header row holding `player_id`, `group` and
//! one column per position. Extra columns are ignored.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Read;
use std::path::Path;

use crate::model::{Election, ModelError, Score};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum IngestError {
    #[error("line 1: missing column `{0}`")]
    MissingColumn(String),
    #[error("line {line}: column `{column}`: cannot parse `{text}` as a score")]
    BadNumber {
        line: u64,
        column: String,
        text: String,
    },
    #[error("line {line}: duplicate player_id `{id}` (first seen on line {first})")]
    DuplicateId { line: u64, id: String, first: u64 },
    #[error("line {line}: {message}")]
    Csv { line: u64, message: String },
    #[error("{0}")]
    Io(String),
    #[error("group `{group}` has {found} players, need {needed}")]
    InsufficientPlayers {
        group: String,
        found: usize,
        needed: usize,
    },
    #[error("position `{0}` was not loaded")]
    UnknownPosition(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlayerRecord {
    pub player_id: String,
    pub group: String,
    pub position_scores: BTreeMap<String, Score>,
}

impl PlayerRecord {
    fn total(&self, positions: &[String]) -> Score {
        positions
            .iter()
            .map(|p| self.position_scores[p].clone())
            .sum()
    }
}

/// The ten outfield positions of a 3-4-1-2 style formation.
pub const SOCCER_10: [&str; 10] = [
    "LCB", "CB", "RCB", "LWB", "RWB", "LCM", "RCM", "CAM", "LS", "RS",
];

pub fn soccer_10() -> Vec<String> {
    SOCCER_10.iter().map(|s| s.to_string()).collect()
}

pub fn load_players(path: &Path, positions: &[String]) -> Result<Vec<PlayerRecord>, IngestError> {
    let file = std::fs::File::open(path)
        .map_err(|e| IngestError::Io(format!("{}: {e}", path.display())))?;
    read_players(file, positions)
}

pub fn read_players<R: Read>(
    reader: R,
    positions: &[String],
) -> Result<Vec<PlayerRecord>, IngestError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(reader);
    let csv_err = |e: csv::Error| IngestError::Csv {
        line: e.position().map_or(0, |p| p.line()),
        message: e.to_string(),
    };
    let headers = rdr.headers().map_err(csv_err)?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| IngestError::MissingColumn(name.to_string()))
    };
    let (id_col, group_col) = (col("player_id")?, col("group")?);
    let pos_cols: Vec<usize> = positions.iter().map(|p| col(p)).collect::<Result<_, _>>()?;

    let mut seen: BTreeMap<String, u64> = BTreeMap::new();
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(csv_err)?;
        let line = rec.position().map_or(0, |p| p.line());
        let field = |i: usize| rec.get(i).unwrap_or("").trim();
        let id = field(id_col).to_string();
        if let Some(&first) = seen.get(&id) {
            return Err(IngestError::DuplicateId { line, id, first });
        }
        seen.insert(id.clone(), line);
        let mut scores = BTreeMap::new();
        for (name, &i) in positions.iter().zip(&pos_cols) {
            let text = field(i);
            let s: Score = text.parse().map_err(|_| IngestError::BadNumber {
                line,
                column: name.clone(),
                text: text.to_string(),
            })?;
            scores.insert(name.clone(), s);
        }
        out.push(PlayerRecord {
            player_id: id,
            group: field(group_col).to_string(),
            position_scores: scores,
        });
    }
    Ok(out)
}

/// The `top_n` players of `group` with the highest summed score over
/// `positions` (ties by smaller `player_id`), as an election over
/// `positions`. Candidates keep the ranking order.
pub fn build_election(
    players: &[PlayerRecord],
    group: &str,
    top_n: usize,
    positions: &[String],
) -> Result<Election, IngestError> {
    if let Some(p) = positions
        .iter()
        .find(|p| players.iter().any(|r| !r.position_scores.contains_key(*p)))
    {
        return Err(IngestError::UnknownPosition(p.clone()));
    }
    let mut members: Vec<(Score, &PlayerRecord)> = players
        .iter()
        .filter(|r| r.group == group)
        .map(|r| (r.total(positions), r))
        .collect();
    let needed = top_n.max(positions.len());
    if members.len() < needed {
        return Err(IngestError::InsufficientPlayers {
            group: group.to_string(),
            found: members.len(),
            needed,
        });
    }
    members.sort_by(|a, b| {
        b.0.cmp(&a.0)
            .then_with(|| a.1.player_id.cmp(&b.1.player_id))
    });
    members.truncate(top_n);
    Ok(Election::new(
        members.iter().map(|(_, r)| r.player_id.clone()).collect(),
        positions.to_vec(),
        members
            .iter()
            .map(|(_, r)| {
                positions
                    .iter()
                    .map(|p| r.position_scores[p].clone())
                    .collect()
            })
            .collect(),
    )?)
}

/// Elections keyed by group name.
pub type GroupElections = Vec<(String, Election)>;

/// One election per group with enough players, in group order; the
/// skipped groups are returned separately.
pub fn build_all(
    players: &[PlayerRecord],
    top_n: usize,
    positions: &[String],
) -> Result<(GroupElections, Vec<String>), IngestError> {
    let groups: BTreeSet<&str> = players.iter().map(|r| r.group.as_str()).collect();
    let mut built = Vec::new();
    let mut skipped = Vec::new();
    for g in groups {
        match build_election(players, g, top_n, positions) {
            Ok(e) => built.push((g.to_string(), e)),
            Err(IngestError::InsufficientPlayers { .. }) => skipped.push(g.to_string()),
            Err(e) => return Err(e),
        }
    }
    Ok((built, skipped))
}
