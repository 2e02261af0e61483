//! Study-design helpers: GPA-balanced group assignment and paired
//! score comparisons between control and experimental groups.

mod balance;
mod report;
mod roster;
mod scores;

pub use balance::{
    balance_groups, balance_groups_with, objective, partition_count, BalanceMethod, BalanceOptions,
    Group, GroupAssignment,
};
pub use report::{report, GroupSummary, Report, ReportRow};
pub use roster::{
    load_roster, parse_roster, population_variance, validate_roster, StudentRecord, GPA_MAX,
};
pub use scores::{
    canonical_group_label, combined_score, group_scores, load_pairs, mean_score, pair_delta,
    parse_pairs, standard_pairs, GroupScores, PairSpec,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum StudyError {
    #[error("invalid roster: {0}")]
    InvalidRoster(String),
    #[error("{n} students cannot be split into {k} equal groups")]
    Size { n: usize, k: usize },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("student {0} has no quiz score")]
    MissingScore(String),
    #[error("group {0} is empty")]
    EmptyGroup(String),
    #[error("delta undefined: {0}")]
    UndefinedDelta(String),
    #[error("unknown group reference {0:?}")]
    Reference(String),
    #[error("invalid pair: {0}")]
    InvalidPair(String),
    #[error("cannot read input: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, StudyError>;
