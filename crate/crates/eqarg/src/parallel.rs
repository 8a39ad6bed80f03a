//! Multi-threaded drivers. Results are merged in a fixed order, so output
//! does not depend on the worker count.

use eqarg_core::labelling::{candidate_count, complete_labellings_in_range, CompleteLabellings};
use eqarg_core::solver::{merge, seeds, solve_from, SeedOutcome};
use eqarg_core::{ArgumentationFramework, EquationSystem, Solution, SolveConfig};
use rayon::prelude::*;

/// Environment variable capping the worker count.
pub const THREADS_VAR: &str = "EQARG_THREADS";

pub fn thread_limit() -> Option<usize> {
    std::env::var(THREADS_VAR)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

fn pool(threads: Option<usize>) -> rayon::ThreadPool {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads.or_else(thread_limit) {
        builder = builder.num_threads(n);
    }
    builder.build().expect("thread pool")
}

/// Same result as [`eqarg_core::solve`], with seeds run in parallel.
pub fn solve(
    sys: &EquationSystem<'_>,
    cfg: &SolveConfig,
    threads: Option<usize>,
) -> eqarg_core::Result<Vec<Solution>> {
    cfg.validate()?;
    let seeds = seeds(sys, cfg);
    let outcomes: Vec<SeedOutcome> =
        pool(threads).install(|| seeds.par_iter().map(|s| solve_from(sys, s, cfg)).collect());
    merge(outcomes, cfg)
}

/// Same result as [`eqarg_core::enumerate_complete_labellings`], with the
/// candidate space split into contiguous blocks.
pub fn enumerate_complete_labellings(
    af: &ArgumentationFramework,
    cap: usize,
    threads: Option<usize>,
) -> eqarg_core::Result<CompleteLabellings> {
    let total = candidate_count(af, cap)?;
    let block = (total / 256).max(729);
    let starts: Vec<u64> = (0..total).step_by(block as usize).collect();
    let parts: Vec<_> = pool(threads).install(|| {
        starts
            .par_iter()
            .map(|&s| complete_labellings_in_range(af, s..(s + block).min(total)))
            .collect()
    });
    Ok(CompleteLabellings::from_complete(
        parts.into_iter().flatten().collect(),
    ))
}
