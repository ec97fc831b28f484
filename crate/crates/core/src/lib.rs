//! Rationality patterns of reviewers from multi-stage choice histories, and a
//! degree of trustworthiness for each of their review comments.
//!
//! The pipeline runs from recorded stage sets ([`choice_model`]) to
//! per-period preference matrices ([`preference_graph`]), per-object run
//! patterns ([`pattern_runs`]), the outcome set and its bar table
//! ([`rationality_outcomes`]) and finally trust degrees and zones
//! ([`trust_scoring`]). [`info_index`] and [`consistency`] cover choice from
//! graded lists and brute-force rationalizability checks.

pub mod choice_model;
pub mod cli_io;
pub mod consistency;
pub mod error;
pub mod info_index;
pub mod pattern_runs;
pub mod preference_graph;
pub mod rationality_outcomes;
pub mod trust_scoring;

pub use choice_model::{
    attainable_set, ids, stage_rank, validate_episode, AttributeVector, Catalog, ChoiceEpisode,
    ConstraintRow, ObjectId, Relation, Stage, ValidatedEpisode,
};
pub use consistency::{
    check_contraction, classify_run_step, rationalizable, ChoiceFunctionTable, RunStep,
};
pub use error::{Error, Result};
pub use info_index::{choose_from_list, entropy, fold_pairwise, IfsElement, IfsList};
pub use pattern_runs::{
    omega, omegas, scan_runs, single_period_rationality_pattern, RunCount, RunPattern,
};
pub use preference_graph::{
    concat_patterns, derive_matrix, flatten, is_acyclic, outdegrees, union_matrix, PatternVector,
    PreferenceMatrix,
};
pub use rationality_outcomes::{
    bin_frequencies, bin_pattern, build_tau, classify_rank, count_tau_two_periods, membership, Bar,
    BinTable, MembershipVariant, RankClass, TauPattern,
};
pub use trust_scoring::{
    binomial_rationality, build_report, match_review, zone, D0Zone, Polarity, Review,
    ScoringConfig, TrustReport, Zone,
};
