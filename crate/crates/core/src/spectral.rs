//! Dominant eigenpairs of nonnegative operators by power iteration.

use serde::{Deserialize, Serialize};

use crate::matrix::{l1_distance, one_vector, LinearOperator, NonNegMatrix, ScoreVector};
use crate::{Error, Result};

/// Consecutive period-2 steps before the iteration is declared oscillating.
const OSCILLATION_STEPS: usize = 32;

/// Relative shrinkage of the one-step distance over a period-2 window that
/// still counts as a sustained cycle. A distance that keeps contracting is a
/// slowly damped alternation (second eigenvalue near `-λ`) and is iterated on.
const CYCLE_STALL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerOptions {
    /// Stop once consecutive normalized iterates are this close in 1-norm.
    pub tol: f64,
    pub max_iter: usize,
    /// Lower clamp on λ in the relative residual bound.
    pub lambda_floor: f64,
}

impl Default for PowerOptions {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            max_iter: 100_000,
            lambda_floor: 1e-300,
        }
    }
}

impl PowerOptions {
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectralStatus {
    Converged,
    MaxIterations,
    /// Some iterate vanished; the operator is nilpotent on the start vector.
    ZeroIterate,
    /// Iterates alternate between two vectors (a periodic matrix).
    Oscillating,
}

impl SpectralStatus {
    pub fn is_converged(self) -> bool {
        self == SpectralStatus::Converged
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralResult {
    /// Sum ratio `Σ (M v)_i` for the returned `v`. Zero on `ZeroIterate`.
    pub eigenvalue: f64,
    /// Last nonzero normalized iterate; sums to 1.
    pub vector: ScoreVector,
    /// Number of operator applications inside the loop.
    pub iterations: usize,
    pub status: SpectralStatus,
    /// `‖M v − λ v‖₁`.
    pub residual: f64,
}

impl SpectralResult {
    /// Whether the residual satisfies `‖M v − λ v‖₁ ≤ factor · tol · max(λ, floor)`.
    pub fn residual_within(&self, factor: f64, opts: &PowerOptions) -> bool {
        self.residual <= factor * opts.tol * self.eigenvalue.max(opts.lambda_floor)
    }
}

fn normalize_in_place(x: &mut [f64]) -> f64 {
    let s: f64 = x.iter().sum();
    if s > 0.0 {
        for v in x.iter_mut() {
            *v /= s;
        }
    }
    s
}

/// Normalized power iterates `y_{k+1} = M y_k / Σ (M y_k)`, starting from
/// the 1-normalized start vector. Stops after the first zero iterate.
pub struct PowerIterates<'a, Op: LinearOperator + ?Sized> {
    op: &'a Op,
    current: Vec<f64>,
    scratch: Vec<f64>,
    exhausted: bool,
}

impl<'a, Op: LinearOperator + ?Sized> PowerIterates<'a, Op> {
    pub fn new(op: &'a Op, x0: &ScoreVector) -> Result<Self> {
        if x0.len() != op.dim() {
            return Err(Error::DimensionMismatch {
                expected: op.dim(),
                found: x0.len(),
            });
        }
        let mut current = x0.values().to_vec();
        let s = normalize_in_place(&mut current);
        if s.is_nan() || s <= 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(Self {
            op,
            scratch: vec![0.0; current.len()],
            current,
            exhausted: false,
        })
    }

    pub fn current(&self) -> &[f64] {
        &self.current
    }
}

/// One step of [`PowerIterates`].
#[derive(Debug, Clone, PartialEq)]
pub enum Step {
    /// The new normalized iterate and the normalizer `Σ (M y_k)`.
    Next {
        normalizer: f64,
        vector: Vec<f64>,
    },
    Zero,
}

impl<Op: LinearOperator + ?Sized> Iterator for PowerIterates<'_, Op> {
    type Item = Step;

    fn next(&mut self) -> Option<Step> {
        if self.exhausted {
            return None;
        }
        self.op.apply(&self.current, &mut self.scratch);
        let s = normalize_in_place(&mut self.scratch);
        if s.is_nan() || s <= 0.0 {
            self.exhausted = true;
            return Some(Step::Zero);
        }
        std::mem::swap(&mut self.current, &mut self.scratch);
        Some(Step::Next {
            normalizer: s,
            vector: self.current.clone(),
        })
    }
}

/// Power iteration from `x0` until consecutive normalized iterates agree to
/// `opts.tol` in 1-norm.
///
/// A vanished iterate is reported as [`SpectralStatus::ZeroIterate`] with
/// eigenvalue 0, and a sustained two-cycle as
/// [`SpectralStatus::Oscillating`]. No shift is applied; pass `M + cI` to
/// damp periodic matrices.
pub fn power_method<Op: LinearOperator + ?Sized>(
    op: &Op,
    x0: &ScoreVector,
    opts: &PowerOptions,
) -> Result<SpectralResult> {
    if !(opts.tol.is_finite() && opts.tol > 0.0) {
        return Err(Error::InvalidTolerance(opts.tol));
    }
    let n = op.dim();
    let mut iter = PowerIterates::new(op, x0)?;
    let mut y = iter.current().to_vec();
    let mut before: Option<Vec<f64>> = None;
    let mut period_two = 0usize;
    let mut window_start = 0.0;
    let mut status = SpectralStatus::MaxIterations;
    let mut iterations = 0;

    while iterations < opts.max_iter {
        iterations += 1;
        let next = match iter.next() {
            Some(Step::Next { vector, .. }) => vector,
            _ => {
                status = SpectralStatus::ZeroIterate;
                break;
            }
        };
        let step = l1_distance(&next, &y);
        if step <= opts.tol {
            y = next;
            status = SpectralStatus::Converged;
            break;
        }
        match &before {
            Some(b) if l1_distance(&next, b) <= opts.tol => {
                if period_two == 0 {
                    window_start = step;
                }
                period_two += 1;
            }
            _ => period_two = 0,
        }
        before = Some(std::mem::replace(&mut y, next));
        if period_two >= OSCILLATION_STEPS {
            if step >= window_start * (1.0 - CYCLE_STALL) {
                status = SpectralStatus::Oscillating;
                break;
            }
            period_two = 0;
        }
    }

    let mut my = vec![0.0; n];
    op.apply(&y, &mut my);
    let (eigenvalue, residual) = if status == SpectralStatus::ZeroIterate {
        (0.0, my.iter().sum())
    } else {
        let lambda: f64 = my.iter().sum();
        let r = my.iter().zip(&y).map(|(a, b)| (a - lambda * b).abs()).sum();
        (lambda, r)
    };

    Ok(SpectralResult {
        eigenvalue,
        vector: ScoreVector::from_raw(y),
        iterations,
        status,
        residual,
    })
}

/// `M^k 1`, unnormalized, by `k` successive products.
pub fn iterate_k(m: &NonNegMatrix, k: usize) -> ScoreVector {
    let mut x = one_vector(m.n()).expect("matrix dimension is at least 1").into_values();
    let mut out = vec![0.0; x.len()];
    for _ in 0..k {
        m.apply(&x, &mut out);
        std::mem::swap(&mut x, &mut out);
    }
    ScoreVector::from_raw(x)
}

/// Geometric mean of the first `steps` power-iterate normalizers from `1`,
/// i.e. `(‖M^k 1‖₁ / n)^(1/k)`. Zero if an iterate vanishes.
pub(crate) fn growth_rate<Op: LinearOperator + ?Sized>(op: &Op, steps: usize) -> f64 {
    let start = one_vector(op.dim()).expect("operator dimension is at least 1");
    let iter = PowerIterates::new(op, &start).expect("all-ones start is positive");
    let mut log_sum = 0.0;
    let mut taken = 0usize;
    for step in iter.take(steps) {
        match step {
            Step::Next { normalizer, .. } => {
                log_sum += normalizer.ln();
                taken += 1;
            }
            Step::Zero => return 0.0,
        }
    }
    if taken == 0 {
        0.0
    } else {
        (log_sum / taken as f64).exp()
    }
}

/// `op + c I`.
pub(crate) struct Shifted<'a, Op: ?Sized> {
    pub op: &'a Op,
    pub shift: f64,
}

impl<Op: LinearOperator + ?Sized> LinearOperator for Shifted<'_, Op> {
    fn dim(&self) -> usize {
        self.op.dim()
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        self.op.apply(x, out);
        for (o, v) in out.iter_mut().zip(x) {
            *o += self.shift * v;
        }
    }
}
