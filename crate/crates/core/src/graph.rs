//! Structural diagnostics on the digraph of a nonnegative matrix.
//!
//! An entry `M[i][j] > 0` is read as the edge `j -> i` (column feeds row), the
//! direction a random walk on a column-stochastic matrix takes.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::matrix::NonNegMatrix;
use crate::scoring::ScoringScheme;

/// Successor lists of the digraph of `m`, self-loops included.
pub(crate) fn successors(m: &NonNegMatrix) -> Vec<Vec<usize>> {
    (0..m.n()).map(|j| m.column(j).map(|(i, _)| i).collect()).collect()
}

/// Strongly connected components of the digraph of `m`.
///
/// Components are listed in a topological order of the condensation
/// (sources first); among components that are simultaneously available the
/// one with the smallest member index comes first. Members are ascending.
pub fn strongly_connected_components(m: &NonNegMatrix) -> Vec<Vec<usize>> {
    scc_of(&successors(m))
}

pub(crate) fn scc_of(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let comp_of = tarjan(adj);
    let count = comp_of.iter().copied().max().map_or(0, |c| c + 1);

    let mut members = vec![Vec::new(); count];
    for (v, &c) in comp_of.iter().enumerate() {
        members[c].push(v);
    }

    // Condensation edges.
    let mut dag: Vec<Vec<usize>> = vec![Vec::new(); count];
    for (v, succ) in adj.iter().enumerate() {
        for &w in succ {
            let (a, b) = (comp_of[v], comp_of[w]);
            if a != b {
                dag[a].push(b);
            }
        }
    }
    let mut indegree = vec![0usize; count];
    for edges in dag.iter_mut() {
        edges.sort_unstable();
        edges.dedup();
        for &b in edges.iter() {
            indegree[b] += 1;
        }
    }

    // Kahn with a min-heap on each component's smallest member.
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> = (0..count)
        .filter(|&c| indegree[c] == 0)
        .map(|c| Reverse((members[c][0], c)))
        .collect();
    let mut order = Vec::with_capacity(count);
    while let Some(Reverse((_, c))) = heap.pop() {
        order.push(std::mem::take(&mut members[c]));
        for &b in &dag[c] {
            indegree[b] -= 1;
            if indegree[b] == 0 {
                heap.push(Reverse((members[b][0], b)));
            }
        }
    }
    order
}

/// Iterative Tarjan. Returns the component id of every vertex.
fn tarjan(adj: &[Vec<usize>]) -> Vec<usize> {
    const UNVISITED: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp = vec![UNVISITED; n];
    let mut next_index = 0;
    let mut next_comp = 0;
    // (vertex, position in its successor list)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&(v, pos)) = call.last() {
            if let Some(&w) = adj[v].get(pos) {
                call.last_mut().expect("non-empty call stack").1 += 1;
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack holds v");
                    on_stack[w] = false;
                    comp[w] = next_comp;
                    if w == v {
                        break;
                    }
                }
                next_comp += 1;
            }
        }
    }
    comp
}

/// A 1×1 matrix counts as irreducible whatever its entry.
pub fn is_irreducible(m: &NonNegMatrix) -> bool {
    m.n() == 1 || strongly_connected_components(m).len() == 1
}

/// Columns whose entries are all zero.
pub fn dangling_columns(m: &NonNegMatrix) -> Vec<usize> {
    (0..m.n()).filter(|&j| m.column(j).next().is_none()).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// A participant is credited with points against themselves.
    NonzeroDiagonal { index: usize, value: f64 },
    /// The two results of a pairing do not add up to a scheme total.
    PairSum { i: usize, j: usize, sum: f64 },
    /// Neither side has points for the pairing.
    MissingPairing { i: usize, j: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

/// Checks that `m` looks like a single round robin under `scheme`: zero
/// diagonal, and every pairing's two entries sum to `win + loss` or
/// `2 * draw`.
pub fn validate_round_robin(m: &NonNegMatrix, scheme: &ScoringScheme) -> ValidationReport {
    const SUM_TOL: f64 = 1e-12;
    let n = m.n();
    let totals = scheme.pair_totals();
    let mut violations = Vec::new();
    for i in 0..n {
        let d = m.get(i, i);
        if d != 0.0 {
            violations.push(Violation::NonzeroDiagonal { index: i, value: d });
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let sum = m.get(i, j) + m.get(j, i);
            let scale = totals[0].max(totals[1]).max(1.0);
            if totals.iter().any(|t| (sum - t).abs() <= SUM_TOL * scale) {
                continue;
            }
            if sum == 0.0 {
                violations.push(Violation::MissingPairing { i, j });
            } else {
                violations.push(Violation::PairSum { i, j, sum });
            }
        }
    }
    ValidationReport {
        valid: violations.is_empty(),
        violations,
    }
}

/// Everything the structural checks know about a matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Structure {
    pub components: Vec<Vec<usize>>,
    pub irreducible: bool,
    pub dangling: Vec<usize>,
}

impl Structure {
    pub fn of(m: &NonNegMatrix) -> Self {
        Self::from_components(scc_of(&successors(m)), dangling_columns(m))
    }

    pub(crate) fn from_components(components: Vec<Vec<usize>>, dangling: Vec<usize>) -> Self {
        let n: usize = components.iter().map(Vec::len).sum();
        Self {
            irreducible: n == 1 || components.len() == 1,
            components,
            dangling,
        }
    }

    pub fn scc_count(&self) -> usize {
        self.components.len()
    }
}
