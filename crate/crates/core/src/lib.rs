//! Line-up elections: several single-winner elections, one per position,
//! filled from a shared pool of candidates so that nobody wins twice.

pub mod axioms;
pub mod cli;
pub mod datagen;
pub mod ingest;
pub mod matching;
pub mod metrics;
pub mod model;
pub mod rules;
