//! PageRank on link graphs.
//!
//! The hyperlink matrix `H` has `h_ij = t_ij / L_j`, where page `j` has
//! `t_ij` links to page `i` and `L_j` links in total. Dangling pages
//! (`L_j = 0`) get the uniform column `1/n` in `S`, and the Google matrix
//! is `G = (1 − α) S + α (1/n) J`. Neither `S` nor `G` is materialized.
//!
//! Note the convention: `α` is the teleport weight, so the damping factor
//! `d` common in the literature is `1 − α`.

use std::collections::{BTreeMap, HashMap};

use crate::graph::{scc_of, Structure};
use crate::matrix::{normalize_1, LinearOperator, NonNegMatrix, ScoreVector};
use crate::report::{rank_players, Convergence, Diagnostics, Method, RankReport};
use crate::spectral::{power_method, PowerOptions};
use crate::{Error, Result};

/// Directed multigraph of pages with per-edge link counts.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LinkGraph {
    pages: Vec<String>,
    index: HashMap<String, usize>,
    /// `(source, target) -> t`
    counts: BTreeMap<(usize, usize), u64>,
    outlinks: Vec<u64>,
    dropped_self_links: usize,
}

impl LinkGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Index of `id`, registering it on first sight.
    pub fn add_page(&mut self, id: &str) -> usize {
        if let Some(&i) = self.index.get(id) {
            return i;
        }
        let i = self.pages.len();
        self.pages.push(id.to_owned());
        self.index.insert(id.to_owned(), i);
        self.outlinks.push(0);
        i
    }

    /// Adds `count` links from `source` to `target`. Self-links register the
    /// page but are otherwise dropped and counted.
    pub fn add_links(&mut self, source: &str, target: &str, count: u64) -> Result<()> {
        if count == 0 {
            return Err(Error::InvalidLinkCount);
        }
        let s = self.add_page(source);
        let t = self.add_page(target);
        if s == t {
            self.dropped_self_links += 1;
            return Ok(());
        }
        *self.counts.entry((s, t)).or_insert(0) += count;
        self.outlinks[s] += count;
        Ok(())
    }

    pub fn pages(&self) -> &[String] {
        &self.pages
    }

    pub fn len(&self) -> usize {
        self.pages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pages.is_empty()
    }

    pub fn page_index(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// `L_j`.
    pub fn outlink_total(&self, page: usize) -> u64 {
        self.outlinks[page]
    }

    /// `t_ij`: links from `source` to `target`.
    pub fn link_count(&self, source: usize, target: usize) -> u64 {
        self.counts.get(&(source, target)).copied().unwrap_or(0)
    }

    /// `(source, target, count)` in ascending `(source, target)` order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.counts.iter().map(|(&(s, t), &c)| (s, t, c))
    }

    pub fn dropped_self_links(&self) -> usize {
        self.dropped_self_links
    }
}

/// Column-normalized link matrix; dangling pages give zero columns.
pub fn hyperlink_matrix(g: &LinkGraph) -> Result<NonNegMatrix> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let triplets: Vec<(usize, usize, f64)> = g
        .edges()
        .map(|(s, t, c)| (t, s, c as f64 / g.outlink_total(s) as f64))
        .collect();
    NonNegMatrix::from_triplets(g.len(), &triplets)
}

/// `S = H + (1/n) 1 d^T` for the dangling indicator `d`, applied implicitly.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticOperator {
    h: NonNegMatrix,
    dangling: Vec<usize>,
}

impl StochasticOperator {
    pub fn hyperlink(&self) -> &NonNegMatrix {
        &self.h
    }

    pub fn dangling(&self) -> &[usize] {
        &self.dangling
    }

    /// Successor lists of the support of `S`.
    fn support(&self) -> Vec<Vec<usize>> {
        let n = self.h.n();
        let mut adj: Vec<Vec<usize>> = (0..n).map(|j| self.h.column(j).map(|(i, _)| i).collect()).collect();
        for &j in &self.dangling {
            adj[j] = (0..n).collect();
        }
        adj
    }
}

/// Checks that every column of `h` sums to 0 or 1 (within 1e-12) and wraps
/// it as the dangling-corrected operator.
pub fn stochastic_fix(h: &NonNegMatrix) -> Result<StochasticOperator> {
    const SUM_TOL: f64 = 1e-12;
    let mut dangling = Vec::new();
    for j in 0..h.n() {
        let sum = h.column_sum(j);
        if sum == 0.0 {
            dangling.push(j);
        } else if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::MalformedColumnSums { column: j, sum });
        }
    }
    Ok(StochasticOperator {
        h: h.to_sparse(),
        dangling,
    })
}

impl LinearOperator for StochasticOperator {
    fn dim(&self) -> usize {
        self.h.n()
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        self.h.apply(x, out);
        if self.dangling.is_empty() {
            return;
        }
        let mass: f64 = self.dangling.iter().map(|&j| x[j]).sum();
        let spread = mass / self.h.n() as f64;
        for o in out.iter_mut() {
            *o += spread;
        }
    }
}

/// `G = (1 − α) S + α (1/n) J`, applied implicitly.
#[derive(Debug, Clone, Copy)]
pub struct GoogleOperator<'a> {
    s: &'a StochasticOperator,
    alpha: f64,
}

impl<'a> GoogleOperator<'a> {
    pub fn new(s: &'a StochasticOperator, alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::InvalidAlpha(alpha));
        }
        Ok(Self { s, alpha })
    }
}

impl LinearOperator for GoogleOperator<'_> {
    fn dim(&self) -> usize {
        self.s.dim()
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        self.s.apply(x, out);
        let teleport = self.alpha * (x.iter().sum::<f64>() / x.len() as f64);
        let keep = 1.0 - self.alpha;
        for o in out.iter_mut() {
            *o = keep * *o + teleport;
        }
    }
}

pub fn google_matvec(s: &StochasticOperator, alpha: f64, x: &ScoreVector) -> Result<ScoreVector> {
    let g = GoogleOperator::new(s, alpha)?;
    if x.len() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: x.len(),
        });
    }
    let mut out = vec![0.0; x.len()];
    g.apply(x.values(), &mut out);
    Ok(ScoreVector::from_raw(out))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoogleParams {
    /// Teleport weight in `[0, 1]`.
    pub alpha: f64,
    pub tol: f64,
    pub max_iter: usize,
    pub tie_tol: f64,
}

impl Default for GoogleParams {
    fn default() -> Self {
        Self {
            alpha: 0.15,
            tol: 1e-12,
            max_iter: 100_000,
            tie_tol: 1e-9,
        }
    }
}

/// PageRank by power iteration on the implicit Google matrix from `1/n`.
///
/// Diagnostics describe the support of `S`; `alpha = 0` is only guaranteed
/// a unique answer when that support is irreducible.
pub fn pagerank(g: &LinkGraph, p: &GoogleParams) -> Result<RankReport> {
    let h = hyperlink_matrix(g)?;
    let s = stochastic_fix(&h)?;
    let op = GoogleOperator::new(&s, p.alpha)?;
    let n = g.len();
    let start = ScoreVector::from_raw(vec![1.0 / n as f64; n]);
    let opts = PowerOptions::default().with_tol(p.tol).with_max_iter(p.max_iter);
    let result = power_method(&op, &start, &opts)?;

    let mut gr = vec![0.0; n];
    op.apply(result.vector.values(), &mut gr);
    let residual = gr.iter().zip(result.vector.values()).map(|(a, b)| (a - b).abs()).sum();

    let structure = Structure::from_components(scc_of(&s.support()), s.dangling().to_vec());
    let mut diagnostics = Diagnostics::from_structure(&structure, None);
    diagnostics.residual = Some(residual);

    let shares = normalize_1(&result.vector).ok();
    Ok(RankReport {
        method: Method::PageRank,
        labels: g.pages().to_vec(),
        ranking: rank_players(&result.vector, p.tie_tol),
        scores: result.vector,
        shares,
        eigenvalue: Some(1.0),
        diagnostics,
        convergence: Convergence {
            iterations: result.iterations,
            status: Some(result.status),
            epsilon_used: None,
            perturbation: None,
        },
    })
}
