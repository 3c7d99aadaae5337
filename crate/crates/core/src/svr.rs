//! Epsilon-SVR with an RBF kernel, trained by sequential minimal
//! optimization on the dual.
//!
//! The dual is written over `2n` variables `beta = [alpha; alpha*]` with
//! labels `s = [+1; -1]`:
//!
//! ```text
//! min  1/2 beta' Q beta + p' beta
//! s.t. s' beta = 0,  0 <= beta_t <= C
//! Q_tu = s_t s_u K(x_t, x_u),  p = [eps - y; eps + y]
//! ```
//!
//! Each step picks the maximal-violating index `i` and the partner `j`
//! giving the largest second-order decrease, then solves the two-variable
//! subproblem in closed form. The solver stops once the KKT gap
//! `max_{I_up} -s G - min_{I_low} -s G` drops below `tol`.
//!
//! Features are z-scored with training statistics; targets are shifted by
//! the midpoint of their range before solving and the shift is folded back
//! into the bias.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::stats;

/// Smallest curvature used for a working pair.
const TAU: f64 = 1e-12;
/// Dual coefficients below this magnitude are not kept as support vectors.
const SUPPORT_EPS: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum SvrError {
    #[error("invalid config: {0}")]
    InvalidConfig(&'static str),
    #[error("need at least {needed} rows, got {got}")]
    TooFewRows { needed: usize, got: usize },
    #[error("row {row} has {got} columns, expected {expected}")]
    WidthMismatch { row: usize, expected: usize, got: usize },
    #[error("{rows} rows but {targets} targets")]
    TargetMismatch { rows: usize, targets: usize },
    #[error("non-finite value in row {row}")]
    NonFinite { row: usize },
    #[error("{folds} folds requested for {rows} rows")]
    TooManyFolds { folds: usize, rows: usize },
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SvrConfig {
    /// Box constraint.
    pub c: f64,
    /// RBF width: `K(a, b) = exp(-gamma * |a - b|^2)`.
    pub gamma: f64,
    /// Half-width of the insensitive tube.
    pub epsilon: f64,
    /// KKT gap at which the solver stops.
    pub tol: f64,
    pub max_iter: usize,
    /// Fold shuffling seed.
    pub seed: u64,
    /// Kernel rows kept in the LRU cache.
    pub cache_rows: usize,
}

impl Default for SvrConfig {
    fn default() -> Self {
        SvrConfig {
            c: 100.0,
            gamma: 0.02,
            epsilon: 0.1,
            tol: 1e-3,
            max_iter: 10_000_000,
            seed: 0,
            cache_rows: 4096,
        }
    }
}

impl SvrConfig {
    pub fn validate(&self) -> Result<(), SvrError> {
        if !(self.c > 0.0 && self.c.is_finite()) {
            return Err(SvrError::InvalidConfig("C must be positive"));
        }
        if !(self.gamma > 0.0 && self.gamma.is_finite()) {
            return Err(SvrError::InvalidConfig("gamma must be positive"));
        }
        if !(self.epsilon >= 0.0 && self.epsilon.is_finite()) {
            return Err(SvrError::InvalidConfig("epsilon must be non-negative"));
        }
        if !(self.tol > 0.0) {
            return Err(SvrError::InvalidConfig("tol must be positive"));
        }
        if self.max_iter == 0 {
            return Err(SvrError::InvalidConfig("max_iter must be positive"));
        }
        Ok(())
    }
}

/// Per-column standardization.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Scaler {
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
    /// Columns whose standard deviation was zero and clamped to 1.
    pub clamped: Vec<usize>,
}

impl Scaler {
    pub fn fit(rows: &[Vec<f64>]) -> Scaler {
        let width = rows.first().map_or(0, Vec::len);
        let n = rows.len() as f64;
        let mut mean = vec![0.0; width];
        for r in rows {
            for (m, v) in mean.iter_mut().zip(r) {
                *m += v;
            }
        }
        mean.iter_mut().for_each(|m| *m /= n);
        let mut var = vec![0.0; width];
        for r in rows {
            for ((s, v), m) in var.iter_mut().zip(r).zip(&mean) {
                *s += (v - m) * (v - m);
            }
        }
        let mut clamped = Vec::new();
        let std = var
            .iter()
            .enumerate()
            .map(|(j, s)| {
                let sd = libm::sqrt(s / n);
                if sd > 0.0 && sd.is_finite() {
                    sd
                } else {
                    clamped.push(j);
                    1.0
                }
            })
            .collect();
        Scaler { mean, std, clamped }
    }

    pub fn transform(&self, row: &[f64]) -> Vec<f64> {
        row.iter()
            .zip(self.mean.iter().zip(&self.std))
            .map(|(v, (m, s))| (v - m) / s)
            .collect()
    }
}

/// Column-mean imputation for missing values.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Imputer {
    pub fill: Vec<f64>,
}

impl Imputer {
    /// Means of the present values per column; 0 for all-missing columns.
    pub fn fit(rows: &[Vec<Option<f64>>]) -> Imputer {
        let width = rows.first().map_or(0, Vec::len);
        let mut sums = vec![0.0; width];
        let mut counts = vec![0usize; width];
        for r in rows {
            for (j, v) in r.iter().enumerate() {
                if let Some(v) = v {
                    sums[j] += v;
                    counts[j] += 1;
                }
            }
        }
        let fill = sums
            .iter()
            .zip(&counts)
            .map(|(s, &c)| if c > 0 { s / c as f64 } else { 0.0 })
            .collect();
        Imputer { fill }
    }

    pub fn transform(&self, row: &[Option<f64>]) -> Vec<f64> {
        row.iter()
            .zip(&self.fill)
            .map(|(v, f)| v.unwrap_or(*f))
            .collect()
    }
}

/// A trained model. Support vectors are stored standardized.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SvrModel {
    pub config: SvrConfig,
    pub feature_names: Vec<String>,
    pub scaler: Scaler,
    pub support_vectors: Vec<Vec<f64>>,
    /// Training-row index of each support vector.
    pub support_indices: Vec<usize>,
    /// `alpha - alpha*` per support vector.
    pub dual_coefs: Vec<f64>,
    pub bias: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverStats {
    pub iterations: usize,
    pub converged: bool,
    /// KKT gap at exit.
    pub kkt_gap: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SvrFit {
    pub model: SvrModel,
    pub stats: SolverStats,
}

fn rbf(gamma: f64, a: &[f64], b: &[f64]) -> f64 {
    let d2: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
    libm::exp(-gamma * d2)
}

/// Kernel rows over the `n` training points, LRU bounded.
struct KernelCache<'a> {
    x: &'a [Vec<f64>],
    gamma: f64,
    capacity: usize,
    rows: Vec<Option<Vec<f64>>>,
    last_used: Vec<u64>,
    resident: usize,
    clock: u64,
}

impl<'a> KernelCache<'a> {
    fn new(x: &'a [Vec<f64>], gamma: f64, capacity: usize) -> Self {
        KernelCache {
            x,
            gamma,
            capacity: capacity.max(3),
            rows: vec![None; x.len()],
            last_used: vec![0; x.len()],
            resident: 0,
            clock: 0,
        }
    }

    /// Make row `i` resident without evicting row `pin`.
    fn ensure(&mut self, i: usize, pin: usize) {
        self.clock += 1;
        self.last_used[i] = self.clock;
        if self.rows[i].is_some() {
            return;
        }
        if self.resident >= self.capacity {
            let victim = (0..self.rows.len())
                .filter(|&k| k != i && k != pin && self.rows[k].is_some())
                .min_by_key(|&k| self.last_used[k])
                .expect("cache holds rows");
            self.rows[victim] = None;
            self.resident -= 1;
        }
        let xi = &self.x[i];
        let row = self.x.iter().map(|xj| rbf(self.gamma, xi, xj)).collect();
        self.rows[i] = Some(row);
        self.resident += 1;
    }

    /// Rows `i` and `j`, both resident.
    fn pair(&mut self, i: usize, j: usize) -> (&[f64], &[f64]) {
        self.ensure(i, j);
        self.ensure(j, i);
        (
            self.rows[i].as_deref().expect("resident"),
            self.rows[j].as_deref().expect("resident"),
        )
    }

    fn row(&mut self, i: usize) -> &[f64] {
        self.ensure(i, i);
        self.rows[i].as_deref().expect("resident")
    }
}

struct DualSolution {
    beta: Vec<f64>,
    rho: f64,
    stats: SolverStats,
}

fn sign(t: usize, n: usize) -> f64 {
    if t < n {
        1.0
    } else {
        -1.0
    }
}

/// `I_up`: variables that can move so that `s_t beta_t` increases.
fn in_up(t: usize, n: usize, beta: f64, c: f64) -> bool {
    if t < n {
        beta < c
    } else {
        beta > 0.0
    }
}

fn in_low(t: usize, n: usize, beta: f64, c: f64) -> bool {
    if t < n {
        beta > 0.0
    } else {
        beta < c
    }
}

/// `max_{I_up} -s G - min_{I_low} -s G`.
fn kkt_gap_of(beta: &[f64], grad: &[f64], n: usize, c: f64) -> f64 {
    let mut up = f64::NEG_INFINITY;
    let mut low = f64::INFINITY;
    for t in 0..2 * n {
        let v = -sign(t, n) * grad[t];
        if in_up(t, n, beta[t], c) {
            up = up.max(v);
        }
        if in_low(t, n, beta[t], c) {
            low = low.min(v);
        }
    }
    if up == f64::NEG_INFINITY || low == f64::INFINITY {
        0.0
    } else {
        up - low
    }
}

fn solve_dual(x: &[Vec<f64>], y: &[f64], config: &SvrConfig) -> DualSolution {
    let n = x.len();
    let l = 2 * n;
    let c = config.c;
    let mut beta = vec![0.0; l];
    let mut grad: Vec<f64> = (0..l)
        .map(|t| {
            if t < n {
                config.epsilon - y[t]
            } else {
                config.epsilon + y[t - n]
            }
        })
        .collect();
    let mut cache = KernelCache::new(x, config.gamma, config.cache_rows);

    let mut iterations = 0;
    let mut converged = false;
    while iterations < config.max_iter {
        // first index: maximal violation in I_up
        let mut g_max = f64::NEG_INFINITY;
        let mut i = usize::MAX;
        for t in 0..l {
            if in_up(t, n, beta[t], c) {
                let v = -sign(t, n) * grad[t];
                if v >= g_max {
                    g_max = v;
                    i = t;
                }
            }
        }
        if i == usize::MAX {
            converged = true;
            break;
        }
        let si = sign(i, n);
        let ki = cache.row(i % n).to_vec();

        // second index: largest second-order decrease in I_low
        let mut g_max2 = f64::NEG_INFINITY;
        let mut j = usize::MAX;
        let mut best = f64::INFINITY;
        for t in 0..l {
            if !in_low(t, n, beta[t], c) {
                continue;
            }
            let st = sign(t, n);
            let v = st * grad[t];
            // -s_t G_t, with the sign flipped for the running maximum
            g_max2 = g_max2.max(v);
            let diff = g_max + v;
            if diff > 0.0 {
                let curvature = (2.0 - 2.0 * ki[t % n]).max(TAU);
                let obj = -(diff * diff) / curvature;
                if obj <= best {
                    best = obj;
                    j = t;
                }
            }
        }
        if g_max + g_max2 < config.tol || j == usize::MAX {
            converged = true;
            break;
        }
        iterations += 1;

        let sj = sign(j, n);
        let (kri, krj) = cache.pair(i % n, j % n);
        let kij = kri[j % n];
        let (old_i, old_j) = (beta[i], beta[j]);
        let (mut bi, mut bj);
        if si != sj {
            let quad = (2.0 - 2.0 * kij).max(TAU);
            let delta = (-grad[i] - grad[j]) / quad;
            let diff = old_i - old_j;
            bi = old_i + delta;
            bj = old_j + delta;
            if diff > 0.0 {
                if bj < 0.0 {
                    bj = 0.0;
                    bi = diff;
                }
            } else if bi < 0.0 {
                bi = 0.0;
                bj = -diff;
            }
            if diff > 0.0 {
                if bi > c {
                    bi = c;
                    bj = c - diff;
                }
            } else if bj > c {
                bj = c;
                bi = c + diff;
            }
        } else {
            let quad = (2.0 - 2.0 * kij).max(TAU);
            let delta = (grad[i] - grad[j]) / quad;
            let sum = old_i + old_j;
            bi = old_i - delta;
            bj = old_j + delta;
            if sum > c {
                if bi > c {
                    bi = c;
                    bj = sum - c;
                }
            } else if bj < 0.0 {
                bj = 0.0;
                bi = sum;
            }
            if sum > c {
                if bj > c {
                    bj = c;
                    bi = sum - c;
                }
            } else if bi < 0.0 {
                bi = 0.0;
                bj = sum;
            }
        }
        beta[i] = bi;
        beta[j] = bj;

        let di = (bi - old_i) * si;
        let dj = (bj - old_j) * sj;
        for t in 0..l {
            let st = sign(t, n);
            grad[t] += st * (kri[t % n] * di + krj[t % n] * dj);
        }
    }

    let rho = compute_rho(&beta, &grad, n, c);
    let kkt_gap = kkt_gap_of(&beta, &grad, n, c);
    DualSolution {
        beta,
        rho,
        stats: SolverStats {
            iterations,
            converged,
            kkt_gap,
        },
    }
}

fn compute_rho(beta: &[f64], grad: &[f64], n: usize, c: f64) -> f64 {
    let mut ub = f64::INFINITY;
    let mut lb = f64::NEG_INFINITY;
    let mut free_sum = 0.0;
    let mut free = 0usize;
    for t in 0..2 * n {
        let st = sign(t, n);
        let yg = st * grad[t];
        if beta[t] >= c {
            if st < 0.0 {
                ub = ub.min(yg);
            } else {
                lb = lb.max(yg);
            }
        } else if beta[t] <= 0.0 {
            if st > 0.0 {
                ub = ub.min(yg);
            } else {
                lb = lb.max(yg);
            }
        } else {
            free += 1;
            free_sum += yg;
        }
    }
    if free > 0 {
        free_sum / free as f64
    } else {
        (ub + lb) / 2.0
    }
}

fn check_rows(rows: &[Vec<f64>], width: usize) -> Result<(), SvrError> {
    for (row, r) in rows.iter().enumerate() {
        if r.len() != width {
            return Err(SvrError::WidthMismatch {
                row,
                expected: width,
                got: r.len(),
            });
        }
        if r.iter().any(|v| !v.is_finite()) {
            return Err(SvrError::NonFinite { row });
        }
    }
    Ok(())
}

/// Train on complete rows. `feature_names` fixes the expected row width.
pub fn fit(
    rows: &[Vec<f64>],
    targets: &[f64],
    feature_names: &[String],
    config: &SvrConfig,
) -> Result<SvrFit, SvrError> {
    config.validate()?;
    if rows.len() < 2 {
        return Err(SvrError::TooFewRows {
            needed: 2,
            got: rows.len(),
        });
    }
    if rows.len() != targets.len() {
        return Err(SvrError::TargetMismatch {
            rows: rows.len(),
            targets: targets.len(),
        });
    }
    check_rows(rows, feature_names.len())?;
    if let Some(row) = targets.iter().position(|t| !t.is_finite()) {
        return Err(SvrError::NonFinite { row });
    }

    let scaler = Scaler::fit(rows);
    let x: Vec<Vec<f64>> = rows.iter().map(|r| scaler.transform(r)).collect();
    let lo = targets.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = targets.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let offset = lo / 2.0 + hi / 2.0;
    let y: Vec<f64> = targets.iter().map(|t| t - offset).collect();

    let solution = solve_dual(&x, &y, config);
    let n = x.len();
    let mut support_vectors = Vec::new();
    let mut support_indices = Vec::new();
    let mut dual_coefs = Vec::new();
    for i in 0..n {
        let coef = solution.beta[i] - solution.beta[i + n];
        if libm::fabs(coef) >= SUPPORT_EPS {
            support_vectors.push(x[i].clone());
            support_indices.push(i);
            dual_coefs.push(coef);
        }
    }
    Ok(SvrFit {
        model: SvrModel {
            config: config.clone(),
            feature_names: feature_names.to_vec(),
            scaler,
            support_vectors,
            support_indices,
            dual_coefs,
            bias: offset - solution.rho,
        },
        stats: solution.stats,
    })
}

impl SvrModel {
    /// Decision value for one standardized row.
    fn decision(&self, z: &[f64]) -> f64 {
        let mut f = 0.0;
        for (sv, coef) in self.support_vectors.iter().zip(&self.dual_coefs) {
            f += coef * rbf(self.config.gamma, sv, z);
        }
        f + self.bias
    }

    pub fn predict(&self, rows: &[Vec<f64>]) -> Result<Vec<f64>, SvrError> {
        check_rows(rows, self.feature_names.len())?;
        Ok(rows
            .iter()
            .map(|r| self.decision(&self.scaler.transform(r)))
            .collect())
    }

    pub fn predict_one(&self, row: &[f64]) -> Result<f64, SvrError> {
        if row.len() != self.feature_names.len() {
            return Err(SvrError::WidthMismatch {
                row: 0,
                expected: self.feature_names.len(),
                got: row.len(),
            });
        }
        Ok(self.decision(&self.scaler.transform(row)))
    }
}

/// Re-derive the dual gradient from a trained model and its training data
/// and return the KKT gap. A model whose solver converged at `tol` yields a
/// value below `tol` up to rounding. The gap depends on residuals only, so
/// the target offset and bias cancel.
pub fn kkt_gap(model: &SvrModel, rows: &[Vec<f64>], targets: &[f64]) -> f64 {
    let n = rows.len();
    let c = model.config.c;
    let eps = model.config.epsilon;
    let mut coef = vec![0.0; n];
    for (&i, &a) in model.support_indices.iter().zip(&model.dual_coefs) {
        coef[i] = a;
    }
    let mut beta = vec![0.0; 2 * n];
    let mut grad = vec![0.0; 2 * n];
    for i in 0..n {
        beta[i] = coef[i].max(0.0);
        beta[i + n] = (-coef[i]).max(0.0);
        let z = model.scaler.transform(&rows[i]);
        let residual = targets[i] - model.decision(&z);
        grad[i] = eps - residual;
        grad[i + n] = eps + residual;
    }
    kkt_gap_of(&beta, &grad, n, c)
}

pub fn r2_score(truth: &[f64], predicted: &[f64]) -> f64 {
    let mean = stats::mean(truth).unwrap_or(0.0);
    let sst: f64 = truth.iter().map(|t| (t - mean) * (t - mean)).sum();
    let sse: f64 = truth.iter().zip(predicted).map(|(t, p)| (t - p) * (t - p)).sum();
    if sst == 0.0 {
        if sse == 0.0 {
            1.0
        } else {
            0.0
        }
    } else {
        1.0 - sse / sst
    }
}

pub fn rmse(truth: &[f64], predicted: &[f64]) -> f64 {
    if truth.is_empty() {
        return 0.0;
    }
    let sse: f64 = truth.iter().zip(predicted).map(|(t, p)| (t - p) * (t - p)).sum();
    libm::sqrt(sse / truth.len() as f64)
}

/// Univariate regression F statistic `r^2 (n-2) / (1 - r^2)`.
/// Zero-variance columns give 0; a perfect fit gives `+inf`.
pub fn f_statistic(column: &[f64], targets: &[f64]) -> f64 {
    let n = column.len().min(targets.len());
    if n < 3 {
        return 0.0;
    }
    match stats::pearson(column, targets) {
        None => 0.0,
        Some(r) => {
            let r2 = r * r;
            if r2 >= 1.0 - 1e-15 {
                f64::INFINITY
            } else {
                r2 * (n - 2) as f64 / (1.0 - r2)
            }
        }
    }
}

/// Named columns (possibly with missing values) and their targets.
#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    pub feature_names: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
    pub targets: Vec<f64>,
}

impl Dataset {
    pub fn column(&self, j: usize) -> Vec<Option<f64>> {
        self.rows.iter().map(|r| r[j]).collect()
    }
}

/// F statistic per feature over the rows where that feature is present.
pub fn f_statistics(data: &Dataset) -> BTreeMap<String, f64> {
    data.feature_names
        .iter()
        .enumerate()
        .map(|(j, name)| {
            let (col, tgt): (Vec<f64>, Vec<f64>) = data
                .rows
                .iter()
                .zip(&data.targets)
                .filter_map(|(r, t)| r[j].map(|v| (v, *t)))
                .unzip();
            (name.clone(), f_statistic(&col, &tgt))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct FoldReport {
    pub r2: f64,
    pub rmse: f64,
    pub rows: usize,
    pub stats: SolverStats,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvalReport {
    /// Pooled over all held-out predictions.
    pub r2: f64,
    pub rmse: f64,
    pub folds: Vec<FoldReport>,
    /// Out-of-fold prediction per input row.
    pub predictions: Vec<f64>,
    /// Computed on the full dataset, not per fold.
    pub f_stats: BTreeMap<String, f64>,
    pub seed: u64,
    pub k: usize,
}

/// Seeded shuffle split into `k` contiguous folds (sizes differ by ≤ 1).
pub fn fold_assignment(rows: usize, k: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..rows).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    order.shuffle(&mut rng);
    let mut folds = Vec::with_capacity(k);
    let mut start = 0;
    for f in 0..k {
        let size = rows / k + usize::from(f < rows % k);
        folds.push(order[start..start + size].to_vec());
        start += size;
    }
    folds
}

/// k-fold cross-validation with per-fold mean imputation.
pub fn cross_validate(data: &Dataset, config: &SvrConfig, k: usize) -> Result<EvalReport, SvrError> {
    config.validate()?;
    let n = data.rows.len();
    if k < 2 {
        return Err(SvrError::InvalidConfig("need at least 2 folds"));
    }
    if k > n {
        return Err(SvrError::TooManyFolds { folds: k, rows: n });
    }
    if data.targets.len() != n {
        return Err(SvrError::TargetMismatch {
            rows: n,
            targets: data.targets.len(),
        });
    }

    let folds = fold_assignment(n, k, config.seed);
    let mut predictions = vec![0.0; n];
    let mut reports = Vec::with_capacity(k);
    for held in &folds {
        let mut is_held = vec![false; n];
        held.iter().for_each(|&i| is_held[i] = true);
        let train_raw: Vec<Vec<Option<f64>>> = (0..n)
            .filter(|&i| !is_held[i])
            .map(|i| data.rows[i].clone())
            .collect();
        let train_y: Vec<f64> = (0..n).filter(|&i| !is_held[i]).map(|i| data.targets[i]).collect();
        let imputer = Imputer::fit(&train_raw);
        let train_x: Vec<Vec<f64>> = train_raw.iter().map(|r| imputer.transform(r)).collect();
        let fit = fit(&train_x, &train_y, &data.feature_names, config)?;
        let test_x: Vec<Vec<f64>> = held.iter().map(|&i| imputer.transform(&data.rows[i])).collect();
        let pred = fit.model.predict(&test_x)?;
        let truth: Vec<f64> = held.iter().map(|&i| data.targets[i]).collect();
        for (&i, p) in held.iter().zip(&pred) {
            predictions[i] = *p;
        }
        reports.push(FoldReport {
            r2: r2_score(&truth, &pred),
            rmse: rmse(&truth, &pred),
            rows: held.len(),
            stats: fit.stats,
        });
    }

    Ok(EvalReport {
        r2: r2_score(&data.targets, &predictions),
        rmse: rmse(&data.targets, &predictions),
        folds: reports,
        predictions,
        f_stats: f_statistics(data),
        seed: config.seed,
        k,
    })
}
