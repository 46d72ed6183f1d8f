//! Tournament scores: row sums, Wei, Kendall iterates and Landau's
//! eigenvector score.
//!
//! Landau's score is the dominant eigenvector of the game results matrix `A`.
//! When `A` is reducible (an undefeated player is enough) the eigenvector is
//! taken as the limit ε → 0 of the eigenvectors of a perturbed matrix
//! `A(ε)`. On a valid round robin every decisive pairing `(w, l)` becomes
//! `(w − ε(w − l), l + ε(w − l))`; any other matrix gets `A + ε(J − I)`.

use serde::{Deserialize, Serialize};

use crate::graph::{is_irreducible, validate_round_robin, Structure};
use crate::matrix::{normalize_1, one_vector, LinearOperator, NonNegMatrix, ScoreVector};
use crate::report::{rank_players, Convergence, Diagnostics, Method, Note, RankReport};
use crate::scoring::ScoringScheme;
use crate::spectral::{growth_rate, iterate_k, power_method, PowerOptions, Shifted, SpectralStatus};
use crate::{Error, Result};

/// Power iterates used to estimate the shift for each `A(ε)`.
const SHIFT_ESTIMATE_STEPS: usize = 128;

/// A game results matrix with participant labels and the scoring scheme
/// that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Tournament {
    pub matrix: NonNegMatrix,
    pub labels: Vec<String>,
    pub scheme: ScoringScheme,
    /// Relative tie tolerance for rankings.
    pub tie_tol: f64,
}

impl Tournament {
    /// Labels players `1..=n` and assumes chess scoring.
    pub fn new(matrix: NonNegMatrix) -> Self {
        let labels = (1..=matrix.n()).map(|i| i.to_string()).collect();
        Self {
            matrix,
            labels,
            scheme: ScoringScheme::CHESS,
            tie_tol: 1e-9,
        }
    }

    pub fn with_labels(matrix: NonNegMatrix, labels: Vec<String>) -> Result<Self> {
        if labels.len() != matrix.n() {
            return Err(Error::DimensionMismatch {
                expected: matrix.n(),
                found: labels.len(),
            });
        }
        Ok(Self {
            labels,
            ..Self::new(matrix)
        })
    }

    pub fn with_scheme(mut self, scheme: ScoringScheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn with_tie_tol(mut self, tie_tol: f64) -> Self {
        self.tie_tol = tie_tol;
        self
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    fn diagnostics(&self) -> Diagnostics {
        let validation = validate_round_robin(&self.matrix, &self.scheme);
        Diagnostics::from_structure(&Structure::of(&self.matrix), Some(validation))
    }

    fn report(
        &self,
        method: Method,
        scores: ScoreVector,
        eigenvalue: Option<f64>,
        convergence: Convergence,
        mut diagnostics: Diagnostics,
        tie_tol: f64,
    ) -> RankReport {
        let shares = if self.n() == 1 {
            Some(ScoreVector::from_raw(vec![1.0]))
        } else {
            normalize_1(&scores).ok()
        };
        if shares.is_none() {
            diagnostics.notes.push(Note::ZeroScores);
        }
        RankReport {
            method,
            labels: self.labels.clone(),
            ranking: rank_players(&scores, tie_tol),
            scores,
            shares,
            eigenvalue,
            diagnostics,
            convergence,
        }
    }
}

fn closed_form(t: &Tournament, method: Method, k: usize) -> RankReport {
    let scores = iterate_k(&t.matrix, k);
    let mut diagnostics = t.diagnostics();
    if scores.sum() == 0.0 {
        diagnostics.notes.push(Note::ZeroIterate);
    }
    t.report(method, scores, None, Convergence::exact(k), diagnostics, t.tie_tol)
}

/// Total points per player, `A 1`.
pub fn row_sum_score(t: &Tournament) -> RankReport {
    closed_form(t, Method::RowSum, 1)
}

/// Wei's second-order score `A (A 1)`: the points of every beaten opponent,
/// half the points of every drawn one.
pub fn wei_score(t: &Tournament) -> RankReport {
    closed_form(t, Method::Wei, 2)
}

/// Kendall's k-th iterate `A^k 1`.
pub fn kendall_score(t: &Tournament, k: usize) -> Result<RankReport> {
    if k == 0 {
        return Err(Error::InvalidIterationCount);
    }
    Ok(closed_form(t, Method::Iterate(k), k))
}

#[derive(Debug, Clone, PartialEq)]
pub struct LandauOptions {
    pub power: PowerOptions,
    /// Strictly decreasing values in `(0, 1/2)`.
    pub schedule: Vec<f64>,
    /// Consecutive ε-scores closer than this (1-norm) count as the limit.
    pub limit_tol: f64,
}

impl Default for LandauOptions {
    fn default() -> Self {
        Self {
            power: PowerOptions::default(),
            schedule: default_schedule(),
            limit_tol: 1e-10,
        }
    }
}

/// `10^-2, 10^-3, ..., 10^-40`.
pub fn default_schedule() -> Vec<f64> {
    (2..=40).map(|e| 10f64.powi(-e)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Perturbation {
    /// Decisive results `(w, l)` move to `(w − ε(w − l), l + ε(w − l))`.
    Pairwise,
    /// `A + ε(J − I)`.
    Uniform,
}

impl Perturbation {
    pub fn apply(self, m: &NonNegMatrix, eps: f64) -> NonNegMatrix {
        let n = m.n();
        let mut rows = m.rows();
        match self {
            Perturbation::Pairwise => {
                for i in 0..n {
                    for j in i + 1..n {
                        let (a, b) = (rows[i][j], rows[j][i]);
                        let gap = (a - b).abs();
                        if a > b {
                            rows[i][j] = a - eps * gap;
                            rows[j][i] = b + eps * gap;
                        } else if b > a {
                            rows[j][i] = b - eps * gap;
                            rows[i][j] = a + eps * gap;
                        }
                    }
                }
            }
            Perturbation::Uniform => {
                for (i, row) in rows.iter_mut().enumerate() {
                    for (j, v) in row.iter_mut().enumerate() {
                        if i != j {
                            *v += eps;
                        }
                    }
                }
            }
        }
        NonNegMatrix::from_rows(&rows).expect("perturbation keeps entries nonnegative and finite")
    }
}

/// One evaluated point of the ε schedule.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonStep {
    pub epsilon: f64,
    pub shares: ScoreVector,
    pub eigenvalue: f64,
    pub status: SpectralStatus,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonLimit {
    /// Normalized scores at the accepted ε.
    pub scores: ScoreVector,
    /// Eigenvalue of the accepted `A(ε)`; not extrapolated.
    pub eigenvalue: f64,
    pub epsilon_used: f64,
    pub perturbation: Perturbation,
    pub trace: Vec<EpsilonStep>,
}

impl EpsilonLimit {
    pub fn accepted(&self) -> &EpsilonStep {
        self.trace.last().expect("an accepted limit has a trace")
    }
}

fn choose_perturbation(t: &Tournament, probe: f64) -> Perturbation {
    let pairwise = t.n() >= 2
        && validate_round_robin(&t.matrix, &t.scheme).valid
        && is_irreducible(&Perturbation::Pairwise.apply(&t.matrix, probe));
    if pairwise {
        Perturbation::Pairwise
    } else {
        Perturbation::Uniform
    }
}

/// Dominant eigenpair of a perturbed matrix. The matrix is shifted by an
/// estimate of its spectral radius first: `A(ε)` for tiny ε has several
/// eigenvalues of almost equal modulus, which stalls plain iteration.
fn solve_perturbed(m: &NonNegMatrix, power: &PowerOptions) -> Result<EpsilonStep> {
    let shift = growth_rate(m, SHIFT_ESTIMATE_STEPS);
    let shifted = Shifted { op: m, shift };
    let r = power_method(&shifted, &one_vector(m.n())?, power)?;
    let mut mv = vec![0.0; m.n()];
    m.apply(r.vector.values(), &mut mv);
    Ok(EpsilonStep {
        epsilon: f64::NAN,
        eigenvalue: mv.iter().sum(),
        shares: r.vector,
        status: r.status,
        iterations: r.iterations,
    })
}

/// Landau's ε-limit: evaluates `A(ε)` along `schedule` and accepts the first
/// ε whose scores are within `opts.limit_tol` (1-norm) of the previous ε's.
pub fn epsilon_limit_score(t: &Tournament, schedule: &[f64], opts: &LandauOptions) -> Result<EpsilonLimit> {
    let valid =
        schedule.len() >= 2 && schedule.iter().all(|&e| e > 0.0 && e < 0.5) && schedule.windows(2).all(|w| w[1] < w[0]);
    if !valid {
        return Err(Error::InvalidSchedule);
    }
    let perturbation = choose_perturbation(t, schedule[0]);

    let mut trace: Vec<EpsilonStep> = Vec::new();
    for &eps in schedule {
        let perturbed = perturbation.apply(&t.matrix, eps);
        let mut step = solve_perturbed(&perturbed, &opts.power)?;
        step.epsilon = eps;
        let stable = trace
            .last()
            .is_some_and(|prev: &EpsilonStep| prev.shares.l1_distance(&step.shares) <= opts.limit_tol);
        trace.push(step);
        if stable {
            let last = trace.last().expect("just pushed");
            return Ok(EpsilonLimit {
                scores: last.shares.clone(),
                eigenvalue: last.eigenvalue,
                epsilon_used: eps,
                perturbation,
                trace,
            });
        }
    }
    Err(Error::EpsilonLimitDiverged { trace })
}

fn residual(m: &NonNegMatrix, s: &ScoreVector, lambda: f64) -> f64 {
    let mut ms = vec![0.0; m.n()];
    m.apply(s.values(), &mut ms);
    ms.iter().zip(s.values()).map(|(a, b)| (a - lambda * b).abs()).sum()
}

/// Landau's score: the normalized dominant eigenvector of `A`, through the
/// ε-limit when `A` is reducible.
///
/// Non-convergence is reported through `convergence.status`; only invalid
/// options are errors. On the ε path ranks use a tie tolerance of at least
/// `limit_tol`, the resolution of the limit.
pub fn landau_score(t: &Tournament, opts: &LandauOptions) -> Result<RankReport> {
    let mut diagnostics = t.diagnostics();
    let a = &t.matrix;

    if t.n() == 1 {
        let mut convergence = Convergence::exact(0);
        convergence.status = Some(SpectralStatus::Converged);
        diagnostics.residual = Some(0.0);
        let scores = ScoreVector::from_raw(vec![1.0]);
        return Ok(t.report(
            Method::Landau,
            scores,
            Some(a.get(0, 0)),
            convergence,
            diagnostics,
            t.tie_tol,
        ));
    }

    if diagnostics.irreducible {
        let r = power_method(a, &one_vector(t.n())?, &opts.power)?;
        if r.status == SpectralStatus::ZeroIterate {
            diagnostics.notes.push(Note::ZeroIterate);
        }
        diagnostics.residual = Some(r.residual);
        let convergence = Convergence {
            iterations: r.iterations,
            status: Some(r.status),
            epsilon_used: None,
            perturbation: None,
        };
        return Ok(t.report(
            Method::Landau,
            r.vector,
            Some(r.eigenvalue),
            convergence,
            diagnostics,
            t.tie_tol,
        ));
    }

    let tie_tol = t.tie_tol.max(opts.limit_tol);
    let (step, status, perturbation, trace_iterations) = match epsilon_limit_score(t, &opts.schedule, opts) {
        Ok(limit) => {
            let iterations = limit.trace.iter().map(|s| s.iterations).sum();
            let step = limit.accepted().clone();
            let status = step.status;
            (step, status, limit.perturbation, iterations)
        }
        Err(Error::EpsilonLimitDiverged { trace }) => {
            diagnostics.notes.push(Note::EpsilonLimitDiverged);
            let iterations = trace.iter().map(|s| s.iterations).sum();
            let step = trace.last().cloned().expect("schedule was validated as non-empty");
            let perturbation = choose_perturbation(t, opts.schedule[0]);
            (step, SpectralStatus::MaxIterations, perturbation, iterations)
        }
        Err(e) => return Err(e),
    };
    diagnostics.residual = Some(residual(a, &step.shares, step.eigenvalue));
    let convergence = Convergence {
        iterations: trace_iterations,
        status: Some(status),
        epsilon_used: Some(step.epsilon),
        perturbation: Some(perturbation),
    };
    Ok(t.report(
        Method::Landau,
        step.shares,
        Some(step.eigenvalue),
        convergence,
        diagnostics,
        tie_tol,
    ))
}
