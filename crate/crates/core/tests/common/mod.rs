//! Independent oracles and fixtures for the integration tests.
//!
//! Nothing here calls the spectral or structural code under test: the
//! eigen-oracle is a dense complex eigensolver plus an SVD null vector,
//! reachability is a boolean transitive closure, and the Google matrix is
//! built entry by entry.

#![allow(dead_code)]

use nalgebra::DMatrix;
use rand::rngs::StdRng;
use rand::Rng;

use spectral_rank::{LinkGraph, NonNegMatrix};

pub const HALF: f64 = 0.5;

pub fn matrix(rows: &[&[f64]]) -> NonNegMatrix {
    NonNegMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

/// Landau's undefeated-winner example with a draw between players 2 and 3.
pub fn a1() -> NonNegMatrix {
    matrix(&[&[0.0, 1.0, 1.0], &[0.0, 0.0, HALF], &[0.0, HALF, 0.0]])
}

/// Same tournament with player 2 beating player 3; nilpotent.
pub fn a2() -> NonNegMatrix {
    matrix(&[&[0.0, 1.0, 1.0], &[0.0, 0.0, 1.0], &[0.0, 0.0, 0.0]])
}

/// Three-player round robin: 1 beats 2, 1 draws 3, 2 beats 3.
pub fn first_matrix() -> NonNegMatrix {
    matrix(&[&[0.0, 1.0, HALF], &[0.0, 0.0, 1.0], &[HALF, 0.0, 0.0]])
}

/// Kendall's six-player comparison matrix (½ on the diagonal).
pub fn kendall() -> NonNegMatrix {
    matrix(&[
        &[HALF, 1.0, 1.0, 0.0, 1.0, 1.0],
        &[0.0, HALF, 0.0, 1.0, 1.0, 0.0],
        &[0.0, 1.0, HALF, 1.0, 1.0, 1.0],
        &[1.0, 0.0, 0.0, HALF, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0, HALF, 1.0],
        &[0.0, 1.0, 0.0, 1.0, 0.0, HALF],
    ])
}

pub fn patent_h() -> NonNegMatrix {
    matrix(&[&[0.0, 0.0, 1.0], &[HALF, 0.0, 0.0], &[HALF, 1.0, 0.0]])
}

pub fn patent_graph() -> LinkGraph {
    let mut g = LinkGraph::new();
    for (s, t) in [("A", "B"), ("A", "C"), ("B", "C"), ("C", "A")] {
        g.add_links(s, t, 1).unwrap();
    }
    g
}

pub fn fixtures() -> Vec<(&'static str, NonNegMatrix)> {
    vec![
        ("A1", a1()),
        ("A2", a2()),
        ("first", first_matrix()),
        ("kendall", kendall()),
        ("patent H", patent_h()),
    ]
}

pub fn l1(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

// ---------------------------------------------------------------------------
// Eigen-oracle
// ---------------------------------------------------------------------------

fn to_dmatrix(m: &NonNegMatrix) -> DMatrix<f64> {
    let n = m.n();
    DMatrix::from_fn(n, n, |i, j| m.get(i, j))
}

/// Spectral radius from the full complex spectrum and the matching
/// nonnegative eigenvector (null vector of `M − ρI` by SVD), normalized to
/// sum 1.
pub fn perron_oracle(m: &NonNegMatrix) -> (f64, Vec<f64>) {
    let a = to_dmatrix(m);
    let n = m.n();
    let rho = a
        .clone()
        .complex_eigenvalues()
        .iter()
        .map(|z| z.norm())
        .fold(0.0_f64, f64::max);
    let shifted = &a - DMatrix::<f64>::identity(n, n) * rho;
    let svd = shifted.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let (k, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.total_cmp(y.1))
        .expect("non-empty");
    let mut v: Vec<f64> = v_t.row(k).iter().copied().collect();
    let sign = if v.iter().sum::<f64>() < 0.0 { -1.0 } else { 1.0 };
    for x in v.iter_mut() {
        *x *= sign;
    }
    let s: f64 = v.iter().sum();
    (rho, v.into_iter().map(|x| x / s).collect())
}

/// Characteristic polynomial `det(λI − M)` by Faddeev–LeVerrier, as
/// coefficients of `λ^n, λ^(n-1), ..., 1`.
pub fn char_poly(m: &NonNegMatrix) -> Vec<f64> {
    let n = m.n();
    let a = to_dmatrix(m);
    let mut coeffs = vec![1.0];
    let mut mk = DMatrix::<f64>::zeros(n, n);
    let id = DMatrix::<f64>::identity(n, n);
    for k in 1..=n {
        mk = &a * &mk + &id * coeffs[k - 1];
        let c = -(&a * &mk).trace() / k as f64;
        coeffs.push(c);
    }
    coeffs
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, c| acc * x + c)
}

/// Largest real root of the characteristic polynomial: a downward scan from
/// the max row sum followed by bisection on the first sign change.
pub fn char_poly_perron_root(m: &NonNegMatrix) -> f64 {
    let coeffs = char_poly(m);
    let hi = (0..m.n())
        .map(|i| (0..m.n()).map(|j| m.get(i, j)).sum::<f64>())
        .fold(0.0_f64, f64::max)
        + 1e-9;
    let steps = 100_000;
    let mut prev_x = hi;
    let mut prev_f = horner(&coeffs, hi);
    for s in 1..=steps {
        let x = hi * (1.0 - s as f64 / steps as f64);
        let f = horner(&coeffs, x);
        if f == 0.0 {
            return x;
        }
        if f.signum() != prev_f.signum() {
            let (mut lo, mut up) = (x, prev_x);
            for _ in 0..200 {
                let mid = 0.5 * (lo + up);
                if horner(&coeffs, mid).signum() == horner(&coeffs, up).signum() {
                    up = mid;
                } else {
                    lo = mid;
                }
            }
            return 0.5 * (lo + up);
        }
        prev_x = x;
        prev_f = f;
    }
    0.0
}

// ---------------------------------------------------------------------------
// Structural oracles
// ---------------------------------------------------------------------------

/// `reach[a][b]`: b is reachable from a (reflexive), with edge `j -> i`
/// whenever `M[i][j] > 0`.
pub fn reachability(m: &NonNegMatrix) -> Vec<Vec<bool>> {
    let n = m.n();
    let mut reach = vec![vec![false; n]; n];
    for j in 0..n {
        reach[j][j] = true;
        for i in 0..n {
            if m.get(i, j) > 0.0 {
                reach[j][i] = true;
            }
        }
    }
    for k in 0..n {
        for a in 0..n {
            if reach[a][k] {
                for b in 0..n {
                    if reach[k][b] {
                        reach[a][b] = true;
                    }
                }
            }
        }
    }
    reach
}

/// Components from mutual reachability, each sorted, listed by smallest member.
pub fn brute_force_components(m: &NonNegMatrix) -> Vec<Vec<usize>> {
    let n = m.n();
    let reach = reachability(m);
    let mut assigned = vec![false; n];
    let mut comps = Vec::new();
    for a in 0..n {
        if assigned[a] {
            continue;
        }
        let comp: Vec<usize> = (0..n).filter(|&b| reach[a][b] && reach[b][a]).collect();
        for &b in &comp {
            assigned[b] = true;
        }
        comps.push(comp);
    }
    comps
}

/// `(I + B)^(n-1) > 0` entrywise, boolean arithmetic.
pub fn irreducible_by_matrix_power(m: &NonNegMatrix) -> bool {
    let n = m.n();
    let base: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| i == j || m.get(i, j) > 0.0).collect())
        .collect();
    let mut acc = (0..n)
        .map(|i| (0..n).map(|j| i == j).collect::<Vec<bool>>())
        .collect::<Vec<_>>();
    for _ in 0..n.saturating_sub(1) {
        let mut next = vec![vec![false; n]; n];
        for i in 0..n {
            for k in 0..n {
                if acc[i][k] {
                    for j in 0..n {
                        if base[k][j] {
                            next[i][j] = true;
                        }
                    }
                }
            }
        }
        acc = next;
    }
    acc.iter().all(|row| row.iter().all(|&b| b))
}

/// Some power `B^k` with `k ≤ n² − 2n + 2` is strictly positive.
pub fn is_primitive(m: &NonNegMatrix) -> bool {
    let n = m.n();
    let b: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j) > 0.0).collect()).collect();
    let mut p = b.clone();
    for _ in 0..(n * n).saturating_sub(2 * n) + 2 {
        if p.iter().all(|r| r.iter().all(|&x| x)) {
            return true;
        }
        let mut next = vec![vec![false; n]; n];
        for i in 0..n {
            for k in 0..n {
                if p[i][k] {
                    for j in 0..n {
                        if b[k][j] {
                            next[i][j] = true;
                        }
                    }
                }
            }
        }
        p = next;
    }
    p.iter().all(|r| r.iter().all(|&x| x))
}

// ---------------------------------------------------------------------------
// Dense Google matrix
// ---------------------------------------------------------------------------

/// Explicit `S` from link counts: `t_ij / L_j`, uniform columns for
/// dangling pages.
pub fn dense_s(g: &LinkGraph) -> Vec<Vec<f64>> {
    let n = g.len();
    let mut s = vec![vec![0.0; n]; n];
    for j in 0..n {
        let total = g.outlink_total(j);
        for (i, row) in s.iter_mut().enumerate() {
            row[j] = if total == 0 {
                1.0 / n as f64
            } else {
                g.link_count(j, i) as f64 / total as f64
            };
        }
    }
    s
}

pub fn dense_g(g: &LinkGraph, alpha: f64) -> Vec<Vec<f64>> {
    let n = g.len() as f64;
    dense_s(g)
        .into_iter()
        .map(|row| row.into_iter().map(|v| (1.0 - alpha) * v + alpha / n).collect())
        .collect()
}

pub fn dense_mul(m: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    m.iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}

// ---------------------------------------------------------------------------
// Random inputs
// ---------------------------------------------------------------------------

pub fn random_matrix(rng: &mut StdRng, n: usize, density: f64) -> NonNegMatrix {
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    if rng.gen_bool(density) {
                        rng.gen_range(0.01..2.0)
                    } else {
                        0.0
                    }
                })
                .collect()
        })
        .collect();
    NonNegMatrix::from_rows(&rows).unwrap()
}

/// Irreducible and primitive, checked with the oracles above.
pub fn random_primitive(rng: &mut StdRng, max_n: usize) -> NonNegMatrix {
    loop {
        let n = rng.gen_range(2..=max_n);
        let density = rng.gen_range(0.3..1.0);
        let m = random_matrix(rng, n, density);
        if irreducible_by_matrix_power(&m) && is_primitive(&m) {
            return m;
        }
    }
}

/// Random digraph structure with 0/1 weights.
pub fn random_digraph(rng: &mut StdRng, max_n: usize) -> NonNegMatrix {
    let n = rng.gen_range(1..=max_n);
    let density = rng.gen_range(0.0..0.5);
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..n).map(|_| if rng.gen_bool(density) { 1.0 } else { 0.0 }).collect())
        .collect();
    NonNegMatrix::from_rows(&rows).unwrap()
}

/// A complete single round robin under `(win, draw, loss)`.
pub fn random_round_robin(rng: &mut StdRng, n: usize, win: f64, draw: f64, loss: f64) -> NonNegMatrix {
    let mut rows = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = match rng.gen_range(0..3) {
                0 => (win, loss),
                1 => (loss, win),
                _ => (draw, draw),
            };
            rows[i][j] = a;
            rows[j][i] = b;
        }
    }
    NonNegMatrix::from_rows(&rows).unwrap()
}

pub fn random_link_graph(rng: &mut StdRng, max_n: usize) -> LinkGraph {
    let n = rng.gen_range(1..=max_n);
    let mut g = LinkGraph::new();
    for i in 0..n {
        g.add_page(&format!("p{i}"));
    }
    let density = rng.gen_range(0.0..0.4);
    for s in 0..n {
        for t in 0..n {
            if s != t && rng.gen_bool(density) {
                g.add_links(&format!("p{s}"), &format!("p{t}"), rng.gen_range(1..4))
                    .unwrap();
            }
        }
    }
    g
}
