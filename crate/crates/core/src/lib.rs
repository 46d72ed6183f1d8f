//! Spectral ranking of tournaments and link graphs.
//!
//! The crate turns pairwise results (a game results matrix) or a directed
//! link graph into a ranking. Tournament scores can be plain row sums, the
//! second-order Wei score, the k-th Kendall iterate `A^k 1`, or Landau's
//! dominant-eigenvector score. Reducible tournaments go through an
//! ε-perturbation limit. Link graphs are ranked with PageRank on the
//! implicit Google matrix `G = (1 - α) S + α (1/n) J`.
//!
//! Every report carries structural diagnostics (strongly connected
//! components, irreducibility, dangling columns and round-robin validity)
//! so callers can see when a spectral answer is well defined.

mod error;

pub mod graph;
pub mod io;
pub mod matrix;
pub mod report;
pub mod scoring;
pub mod spectral;
pub mod tournament;
pub mod web;

pub use error::{Error, Result};
pub use graph::{
    dangling_columns, is_irreducible, strongly_connected_components, validate_round_robin, Structure, ValidationReport,
    Violation,
};
pub use matrix::{mat_vec, normalize_1, one_vector, scale, LinearOperator, NonNegMatrix, ScoreVector, StorageKind};
pub use report::{rank_players, Convergence, Diagnostics, Method, Note, RankEntry, RankReport};
pub use scoring::{GameOutcome, GameRecord, ScoringScheme};
pub use spectral::{iterate_k, power_method, PowerOptions, SpectralResult, SpectralStatus};
pub use tournament::{
    epsilon_limit_score, kendall_score, landau_score, row_sum_score, wei_score, EpsilonLimit, EpsilonStep,
    LandauOptions, Perturbation, Tournament,
};
pub use web::{google_matvec, hyperlink_matrix, pagerank, stochastic_fix, GoogleParams, LinkGraph, StochasticOperator};
