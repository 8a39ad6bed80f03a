//! Multi-start solver for [`EquationSystem`]s.
//!
//! Each seed runs damped fixed-point iteration `x ← (1−α)x + α·rhs(x)`
//! (clamped to `[0,1]`), then Newton polishing. Converged points are merged
//! deterministically: sorted lexicographically, then clustered greedily in
//! the max norm.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::equations::{project, snap, EquationKind, EquationSystem, Valuation};
use crate::error::{Error, Result};
use crate::framework::{Arg, ArgumentationFramework};
use crate::labelling::Labelling;

/// How starting points are chosen.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum SeedStrategy {
    /// Every `{0, 1/2, 1}` vector when the system has at most `seed_cap`
    /// arguments; otherwise `fallback_random` random seeds plus all-1/2.
    Labellings { fallback_random: usize },
    /// The regular grid with `levels` points per axis (`levels ≥ 2`).
    Grid { levels: usize },
    /// `count` uniform random seeds plus the all-1/2 seed.
    Random { count: usize },
    /// Caller-supplied seeds.
    Explicit(Vec<Vec<f64>>),
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SolveConfig {
    /// Damping factor `α ∈ (0,1]`.
    pub damping: f64,
    pub max_iterations: usize,
    /// Newton step tolerance `τ`.
    pub tolerance: f64,
    /// Residual acceptance threshold `ρ`; also the snapping radius.
    pub residual_tolerance: f64,
    /// Max-norm radius `δ` below which two solutions are merged.
    pub cluster_radius: f64,
    pub seeds: SeedStrategy,
    /// Largest system seeded exhaustively (3^n seeds) or on a full grid.
    pub seed_cap: usize,
    /// RNG seed for random starting points.
    pub rng_seed: u64,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            damping: 0.5,
            max_iterations: 10_000,
            tolerance: 1e-12,
            residual_tolerance: 1e-9,
            cluster_radius: 1e-6,
            seeds: SeedStrategy::Labellings {
                fallback_random: 64,
            },
            seed_cap: 8,
            rng_seed: 0x5eed,
        }
    }
}

impl SolveConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.damping > 0.0 && self.damping <= 1.0) {
            return Err(Error::InvalidConfig("damping must lie in (0,1]".into()));
        }
        for (name, v) in [
            ("tolerance", self.tolerance),
            ("residual tolerance", self.residual_tolerance),
            ("cluster radius", self.cluster_radius),
        ] {
            if v.is_nan() || v <= 0.0 {
                return Err(Error::InvalidConfig(alloc::format!(
                    "{name} must be positive"
                )));
            }
        }
        if let SeedStrategy::Grid { levels } = self.seeds {
            if levels < 2 {
                return Err(Error::InvalidConfig("grid needs at least 2 levels".into()));
            }
        }
        Ok(())
    }
}

/// Result of running one seed.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedOutcome {
    pub values: Vec<f64>,
    pub residual: f64,
    pub converged: bool,
}

/// A merged solution.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub valuation: Valuation,
    pub residual: f64,
}

impl Solution {
    pub fn labelling(&self) -> Labelling {
        project(&self.valuation)
    }
}

/// Starting points for `sys` under `cfg`, in a fixed order.
pub fn seeds(sys: &EquationSystem<'_>, cfg: &SolveConfig) -> Vec<Vec<f64>> {
    let n = sys.len();
    let random = |count: usize| {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
        let mut out = vec![vec![0.5; n]];
        for _ in 0..count {
            out.push((0..n).map(|_| unit(rng.next_u64())).collect());
        }
        out
    };
    match &cfg.seeds {
        SeedStrategy::Labellings { fallback_random } => {
            if n <= cfg.seed_cap {
                grid(n, 3)
            } else {
                random(*fallback_random)
            }
        }
        SeedStrategy::Grid { levels } => {
            if n <= cfg.seed_cap {
                grid(n, *levels)
            } else {
                random(64)
            }
        }
        SeedStrategy::Random { count } => random(*count),
        SeedStrategy::Explicit(list) => list.clone(),
    }
}

fn unit(bits: u64) -> f64 {
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn grid(n: usize, levels: usize) -> Vec<Vec<f64>> {
    let step = 1.0 / (levels - 1) as f64;
    let total = levels.pow(n as u32);
    (0..total)
        .map(|mut k| {
            let mut v = vec![0.0; n];
            for i in (0..n).rev() {
                v[i] = (k % levels) as f64 * step;
                k /= levels;
            }
            v
        })
        .collect()
}

fn clamp01(v: f64) -> f64 {
    if v.is_nan() {
        0.5
    } else {
        v.clamp(0.0, 1.0)
    }
}

/// Runs one seed: damped iteration, Newton polishing, boundary snapping.
pub fn solve_from(sys: &EquationSystem<'_>, seed: &[f64], cfg: &SolveConfig) -> SeedOutcome {
    let n = sys.len();
    let mut x: Vec<f64> = (0..n)
        .map(|i| sys.pins()[i].unwrap_or_else(|| clamp01(seed.get(i).copied().unwrap_or(0.5))))
        .collect();
    let alpha = cfg.damping;

    let hand_off = 1e-4_f64.max(cfg.residual_tolerance);
    for _ in 0..cfg.max_iterations {
        if sys.residual_of(&x) <= hand_off {
            break;
        }
        let rhs = sys.rhs_all(&x);
        let mut step = 0.0f64;
        for i in 0..n {
            let next = clamp01((1.0 - alpha) * x[i] + alpha * rhs[i]);
            step = step.max((next - x[i]).abs());
            x[i] = next;
        }
        if step <= cfg.tolerance {
            break;
        }
    }

    newton_polish(sys, &mut x, cfg);

    let snapped: Vec<f64> = x.iter().map(|&v| snap(v, cfg.residual_tolerance)).collect();
    let mut best = (sys.residual_of(&x), x);
    let r = sys.residual_of(&snapped);
    if r <= cfg.residual_tolerance || r <= best.0 {
        best = (r, snapped);
    }
    // Near-singular boundary roots stall a little inside [0,1]. Values close
    // to 0 or 1 are frozen there, the rest re-polished, and the boundary
    // point kept only if it solves the unfrozen system.
    'rounds: for _ in 0..8 {
        let mut tried: Option<Vec<f64>> = None;
        for radius in [cfg.cluster_radius, 1e-5, 1e-4, 1e-3] {
            let coarse: Vec<f64> = best.1.iter().map(|&v| snap(v, radius)).collect();
            if coarse == best.1 || tried.as_ref() == Some(&coarse) {
                continue;
            }
            tried = Some(coarse.clone());
            let pins: Vec<(Arg, f64)> = coarse
                .iter()
                .enumerate()
                .filter(|&(_, &v)| v == 0.0 || v == 1.0)
                .map(|(i, &v)| (Arg(i), v))
                .collect();
            let frozen = sys.with_extra_pins(&pins);
            let mut candidate = coarse;
            newton_polish(&frozen, &mut candidate, cfg);
            let r = sys.residual_of(&candidate);
            if r <= cfg.residual_tolerance && r <= best.0.max(cfg.residual_tolerance) {
                best = (r, candidate);
                continue 'rounds;
            }
        }
        break;
    }
    let (residual, values) = best;
    SeedOutcome {
        converged: residual <= cfg.residual_tolerance && residual.is_finite(),
        values,
        residual,
    }
}

fn newton_polish(sys: &EquationSystem<'_>, x: &mut [f64], cfg: &SolveConfig) {
    let n = x.len();
    let mut res = sys.residual_of(x);
    for _ in 0..200 {
        if res == 0.0 {
            return;
        }
        let f = sys.defects(x);
        let jac = sys.jacobian(x);
        let rhs: Vec<f64> = f.iter().map(|v| -v).collect();
        let Some(delta) =
            solve_linear(jac.clone(), rhs.clone()).or_else(|| damped_step(&jac, &rhs))
        else {
            return;
        };
        let mut scale = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let trial: Vec<f64> = (0..n).map(|i| clamp01(x[i] + scale * delta[i])).collect();
            let r = sys.residual_of(&trial);
            if r < res {
                let moved = (0..n).map(|i| (trial[i] - x[i]).abs()).fold(0.0, f64::max);
                x.copy_from_slice(&trial);
                res = r;
                accepted = true;
                if moved <= cfg.tolerance {
                    return;
                }
                break;
            }
            scale *= 0.5;
        }
        if !accepted {
            return;
        }
    }
}

/// Levenberg–Marquardt step `(JᵀJ + μI) δ = Jᵀ r` for singular Jacobians,
/// e.g. along a continuum of roots.
fn damped_step(jac: &[Vec<f64>], r: &[f64]) -> Option<Vec<f64>> {
    let n = r.len();
    let mut normal = vec![vec![0.0; n]; n];
    let mut rhs = vec![0.0; n];
    for (row, &ri) in jac.iter().zip(r) {
        for i in 0..n {
            rhs[i] += row[i] * ri;
            for j in 0..n {
                normal[i][j] += row[i] * row[j];
            }
        }
    }
    let scale = (0..n).map(|i| normal[i][i]).fold(0.0, f64::max).max(1.0);
    for (i, row) in normal.iter_mut().enumerate() {
        row[i] += 1e-12 * scale;
    }
    solve_linear(normal, rhs)
}

/// Gaussian elimination with partial pivoting. `None` when singular.
#[allow(clippy::needless_range_loop)]
fn solve_linear(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            if factor == 0.0 {
                continue;
            }
            for k in col..n {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
        if !x[row].is_finite() {
            return None;
        }
    }
    Some(x)
}

fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// Deterministic merge of seed outcomes: drops unconverged points, sorts the
/// rest lexicographically and keeps each point at least `δ` away from every
/// point kept before it.
pub fn merge(outcomes: Vec<SeedOutcome>, cfg: &SolveConfig) -> Result<Vec<Solution>> {
    let best_residual = outcomes
        .iter()
        .map(|o| o.residual)
        .fold(f64::INFINITY, f64::min);
    let mut converged: Vec<SeedOutcome> = outcomes.into_iter().filter(|o| o.converged).collect();
    if converged.is_empty() {
        return Err(Error::NoConvergence { best_residual });
    }
    converged.sort_by(|a, b| lex_cmp(&a.values, &b.values).then(a.residual.total_cmp(&b.residual)));
    let mut kept: Vec<Solution> = Vec::new();
    for o in converged {
        let v = Valuation::from_clamped(o.values);
        if kept
            .iter()
            .all(|s| s.valuation.distance(&v) >= cfg.cluster_radius)
        {
            kept.push(Solution {
                valuation: v,
                residual: o.residual,
            });
        }
    }
    Ok(kept)
}

/// Solves `sys` from every seed of `cfg` and merges the converged points.
pub fn solve(sys: &EquationSystem<'_>, cfg: &SolveConfig) -> Result<Vec<Solution>> {
    cfg.validate()?;
    let outcomes = seeds(sys, cfg)
        .iter()
        .map(|s| solve_from(sys, s, cfg))
        .collect();
    merge(outcomes, cfg)
}

/// Looks for a product-form solution whose projection is `lab`.
///
/// Starts from the labelling's own `{0, 1/2, 1}` valuation; if that drifts to
/// another labelling, retries with in/out arguments frozen and keeps the
/// result only if it also solves the unfrozen system.
pub fn realize_labelling(
    af: &ArgumentationFramework,
    lab: &Labelling,
    cfg: &SolveConfig,
) -> Result<Option<Solution>> {
    cfg.validate()?;
    let seed = Valuation::from_labelling(lab).into_values();
    let free = EquationSystem::new(af, EquationKind::Inv);
    let attempt = solve_from(&free, &seed, cfg);
    if attempt.converged {
        let v = Valuation::from_clamped(attempt.values);
        if &project(&v) == lab {
            return Ok(Some(Solution {
                valuation: v,
                residual: attempt.residual,
            }));
        }
    }
    if !lab.has_und() {
        let r = free.residual_of(&seed);
        return Ok((r <= cfg.residual_tolerance).then(|| Solution {
            valuation: Valuation::from_clamped(seed),
            residual: r,
        }));
    }
    let pinned = EquationSystem::pinned_to_labelling(af, EquationKind::Inv, lab)?;
    let attempt = solve_from(&pinned, &seed, cfg);
    let r = free.residual_of(&attempt.values);
    let v = Valuation::from_clamped(attempt.values);
    if attempt.converged && r <= cfg.residual_tolerance && &project(&v) == lab {
        return Ok(Some(Solution {
            valuation: v,
            residual: r,
        }));
    }
    Ok(None)
}
