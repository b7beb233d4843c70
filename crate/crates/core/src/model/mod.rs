//! Core domain types: exact scores, elections, line-ups and winner sets,
//! plus the JSON/CSV document formats.

mod election;
mod io;
mod lineup;
mod score;

pub use election::{AllLineUps, Election};
pub use io::{
    election_from_csv, election_from_json, election_to_csv, election_to_json, lineup_report,
    parse_election, winner_set_report, ElectionDoc,
};
pub use lineup::{LineUp, WinnerSet};
pub use score::{ParseScoreError, Score};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("election needs at least one position")]
    NoPositions,
    #[error("m < q: {m} candidates cannot fill {q} positions")]
    TooFewCandidates { m: usize, q: usize },
    #[error("duplicate candidate identifier `{0}`")]
    DuplicateCandidate(String),
    #[error("duplicate position identifier `{0}`")]
    DuplicatePosition(String),
    #[error("score matrix has {found} rows, expected {expected} (one per candidate)")]
    RowCount { expected: usize, found: usize },
    #[error("row {row}: {found} scores, expected {expected} (one per position)")]
    DimensionMismatch {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("row {row}, column {col}: {source}")]
    BadScore {
        row: usize,
        col: usize,
        source: ParseScoreError,
    },
    #[error("line {line}: {message}")]
    Csv { line: usize, message: String },
    #[error("invalid election document: {0}")]
    Json(String),
    #[error("position subset is empty")]
    EmptySubset,
    #[error("unknown position `{0}`")]
    UnknownPosition(String),
    #[error("unknown candidate `{0}`")]
    UnknownCandidate(String),
    #[error("invalid line-up: {0}")]
    InvalidLineUp(String),
    #[error("elections do not share candidates and positions")]
    Incompatible,
    #[error("position order must be a permutation of all positions")]
    InvalidOrder,
}
