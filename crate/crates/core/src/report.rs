//! Rank reports shared by the tournament and web pipelines.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::graph::{Structure, ValidationReport};
use crate::matrix::ScoreVector;
use crate::spectral::SpectralStatus;
use crate::tournament::Perturbation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    RowSum,
    Wei,
    /// `A^k 1`.
    Iterate(usize),
    Landau,
    PageRank,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::RowSum => f.write_str("rowsum"),
            Method::Wei => f.write_str("wei"),
            Method::Iterate(k) => write!(f, "iterate:{k}"),
            Method::Landau => f.write_str("landau"),
            Method::PageRank => f.write_str("pagerank"),
        }
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rowsum" => Ok(Method::RowSum),
            "wei" => Ok(Method::Wei),
            "landau" => Ok(Method::Landau),
            "pagerank" => Ok(Method::PageRank),
            other => match other.strip_prefix("iterate:").map(str::parse::<usize>) {
                Some(Ok(k)) if k >= 1 => Ok(Method::Iterate(k)),
                _ => Err(format!(
                    "unknown method {other:?}; expected rowsum, wei, iterate:<k>=1..., landau"
                )),
            },
        }
    }
}

/// Flags explaining unusual reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Note {
    /// Raw scores sum to zero, so there are no shares and everyone ties.
    ZeroScores,
    /// An iterate `A^k 1` or a power iterate vanished.
    ZeroIterate,
    /// The ε schedule ran out before consecutive scores stabilized.
    EpsilonLimitDiverged,
}

/// One participant's place in the ranking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankEntry {
    pub index: usize,
    /// Competition rank: ties share the best rank and leave a gap after.
    pub rank: usize,
    /// 1-based group number in display order.
    pub tie_group: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostics {
    pub irreducible: bool,
    pub scc_count: usize,
    pub dangling: Vec<usize>,
    /// Round-robin checks; absent for link graphs.
    pub validation: Option<ValidationReport>,
    /// Fixed-point residual `‖M s − λ s‖₁` where one was measured.
    pub residual: Option<f64>,
    pub notes: Vec<Note>,
}

impl Diagnostics {
    pub(crate) fn from_structure(s: &Structure, validation: Option<ValidationReport>) -> Self {
        Self {
            irreducible: s.irreducible,
            scc_count: s.scc_count(),
            dangling: s.dangling.clone(),
            validation,
            residual: None,
            notes: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Convergence {
    pub iterations: usize,
    /// `None` for closed-form methods.
    pub status: Option<SpectralStatus>,
    pub epsilon_used: Option<f64>,
    pub perturbation: Option<Perturbation>,
}

impl Convergence {
    pub(crate) fn exact(iterations: usize) -> Self {
        Self {
            iterations,
            status: None,
            epsilon_used: None,
            perturbation: None,
        }
    }

    /// True unless an iterative method stopped without converging.
    pub fn converged(&self) -> bool {
        matches!(
            self.status,
            None | Some(SpectralStatus::Converged) | Some(SpectralStatus::ZeroIterate)
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankReport {
    pub method: Method,
    pub labels: Vec<String>,
    /// Raw scores in participant order.
    pub scores: ScoreVector,
    /// Scores normalized to sum 1; absent when the raw scores sum to 0.
    pub shares: Option<ScoreVector>,
    /// Display order.
    pub ranking: Vec<RankEntry>,
    pub eigenvalue: Option<f64>,
    pub diagnostics: Diagnostics,
    pub convergence: Convergence,
}

impl RankReport {
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn share(&self, index: usize) -> Option<f64> {
        self.shares.as_ref().map(|s| s[index])
    }

    /// Rank entry for participant `index`.
    pub fn entry(&self, index: usize) -> &RankEntry {
        self.ranking
            .iter()
            .find(|e| e.index == index)
            .expect("ranking covers every participant")
    }
}

/// Orders `scores` descending with ties.
///
/// Two scores tie when they differ by at most `tie_tol · max(1, max score)`.
/// Groups are formed greedily in sorted order against each group's leader,
/// and equal scores display in ascending index order.
pub fn rank_players(scores: &ScoreVector, tie_tol: f64) -> Vec<RankEntry> {
    let values = scores.values();
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    let max = values.iter().copied().fold(0.0_f64, f64::max);
    let width = tie_tol * max.max(1.0);

    let mut ranking = Vec::with_capacity(order.len());
    let mut leader = f64::NAN;
    let mut rank = 0;
    let mut group = 0;
    for (pos, &i) in order.iter().enumerate() {
        if group == 0 || (leader - values[i]).abs() > width {
            leader = values[i];
            rank = pos + 1;
            group += 1;
        }
        ranking.push(RankEntry {
            index: i,
            rank,
            tie_group: group,
        });
    }
    // Display order within a tie group is by index.
    ranking.sort_by_key(|e| (e.tie_group, e.index));
    ranking
}
