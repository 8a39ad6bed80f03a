//! Graph surgeries around undecided arguments and the approximate
//! product-form distribution for an arbitrary complete labelling.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::distribution::{Mass, ModelDistribution};
use crate::equations::EquationSystem;
use crate::error::{Error, Result};
use crate::framework::{Arg, ArgumentationFramework};
use crate::labelling::{ensure_legal, enumerate_complete_labellings, Label, Labelling};
use crate::method1::{product_distribution, AtomProbability};
use crate::method2::check_legitimate;
use crate::rational::{approximate, Rational};
use crate::solver::{realize_labelling, solve, solve_from, SolveConfig};

/// Largest denominator tried when turning solver output into rationals.
pub const RATIONAL_DENOMINATOR_BOUND: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AugmentMode {
    /// `u` attacks itself.
    SelfLoop,
    /// `u` is the sink of a chain of `n` self-attackers, giving it value `2^-n`.
    Chain(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct AugmentationResult {
    pub framework: ArgumentationFramework,
    pub u: Arg,
    /// Self-attackers feeding `u` in chain mode.
    pub chain: Vec<Arg>,
    /// The input labelling with every new node undecided.
    pub labelling: Labelling,
}

/// Adds a fresh undecided node `u` attacking every undecided argument.
pub fn augment_und(
    af: &ArgumentationFramework,
    lab: &Labelling,
    mode: AugmentMode,
) -> Result<AugmentationResult> {
    ensure_legal(af, lab)?;
    let mut out = af.clone();
    let chain_len = match mode {
        AugmentMode::SelfLoop => 0,
        AugmentMode::Chain(0) => {
            return Err(Error::InvalidConfig(
                "chain length must be at least 1".into(),
            ))
        }
        AugmentMode::Chain(n) => n,
    };
    let mut chain = Vec::with_capacity(chain_len);
    for i in 1..=chain_len {
        let name = out.fresh_name(&format!("u_{i}"));
        chain.push(out.add_argument(&name)?);
    }
    let u = out.add_argument(&out.fresh_name("u"))?;
    if chain.is_empty() {
        out.add_attack(u, u)?;
    }
    for &c in &chain {
        out.add_attack(c, c)?;
        out.add_attack(c, u)?;
    }
    for x in lab.with(Label::Und) {
        out.add_attack(u, x)?;
    }
    let mut labels = lab.labels().to_vec();
    labels.resize(out.len(), Label::Und);
    Ok(AugmentationResult {
        framework: out,
        u,
        chain,
        labelling: Labelling::new(labels),
    })
}

/// `u_1 … u_n`, each attacking itself and the sink `u`.
pub fn un_chain(n: usize) -> Result<ArgumentationFramework> {
    if n == 0 {
        return Err(Error::InvalidConfig(
            "chain length must be at least 1".into(),
        ));
    }
    let mut af = ArgumentationFramework::new();
    let u = af.add_argument("u")?;
    for i in 1..=n {
        let c = af.add_argument(&format!("u_{i}"))?;
        af.add_attack(c, c)?;
        af.add_attack(c, u)?;
    }
    Ok(af)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApproxCase {
    /// The labelling is preferred and realised by an exact product-form solution.
    Preferred,
    /// Undecided arguments are solved against an extra attacker of value `2^-n`.
    Undecided,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ApproxDistribution {
    /// Every value was recovered as a rational that solves its equations exactly.
    Exact(ModelDistribution<Rational>),
    Float(ModelDistribution<f64>),
}

impl ApproxDistribution {
    pub fn to_f64(&self) -> ModelDistribution<f64> {
        match self {
            ApproxDistribution::Exact(d) => d.to_f64(),
            ApproxDistribution::Float(d) => d.clone(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ApproxDistribution::Exact(_))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApproxReport {
    pub n: usize,
    pub case: ApproxCase,
    /// `2^-n` for the undecided case, zero for a preferred labelling.
    pub epsilon_bound: f64,
    /// `|P(x) − P(⋀ ¬y)|` per argument, evaluated on the distribution.
    pub residuals: Vec<f64>,
    pub max_residual: f64,
    /// `max_residual ≤ epsilon_bound + residual_slack`.
    pub within_bound: bool,
    pub distribution: ApproxDistribution,
    /// Solved values of the undecided arguments.
    pub und_solution: Vec<(Arg, f64)>,
}

/// Slack allowed on top of the ε bound for floating-point solves.
pub const RESIDUAL_SLACK: f64 = 1e-8;

/// Builds an approximately legitimate product-form distribution whose
/// marginals are 1 on in, 0 on out and strictly between on undecided
/// arguments.
///
/// A preferred labelling is realised by a product-form solution directly.
/// Otherwise the undecided arguments are solved on their own, each also
/// attacked by a constant of value `2^-n`, and in/out arguments are fixed.
pub fn approximate_plambda(
    af: &ArgumentationFramework,
    lab: &Labelling,
    n: usize,
    cap: usize,
    cfg: &SolveConfig,
) -> Result<ApproxReport> {
    ensure_legal(af, lab)?;
    crate::distribution::check_model_cap(af.len(), crate::distribution::HARD_MODEL_CAP)?;
    if n == 0 {
        return Err(Error::InvalidConfig("n must be at least 1".into()));
    }
    let complete = enumerate_complete_labellings(af, cap)?;
    let und: Vec<Arg> = lab.with(Label::Und).collect();

    let (case, epsilon, values, exact) = if complete.is_preferred(lab) {
        let sol = realize_labelling(af, lab, cfg)?.ok_or_else(|| {
            Error::Realization(format!(
                "no product-form solution realises {}",
                lab.to_assignments(af)
            ))
        })?;
        let values = sol.valuation.into_values();
        let exact = rationalize(&values).filter(|q| solves_exactly(af, q, &Rational::zero()));
        (ApproxCase::Preferred, 0.0, values, exact)
    } else {
        let u = 0.5f64.powi(n as i32);
        let sub = af.restrict(&und);
        let sys = EquationSystem::with_exogenous_attack(&sub, &vec![u; sub.len()])?;
        let start = solve_from(&sys, &vec![0.5; sub.len()], cfg);
        let sub_values = if start.converged {
            start.values
        } else {
            solve(&sys, cfg)?
                .into_iter()
                .next()
                .ok_or(Error::NoConvergence {
                    best_residual: start.residual,
                })?
                .valuation
                .into_values()
        };
        let exact_u =
            Rational::one() / Rational::from_integer(num_bigint::BigInt::from(2).pow(n as u32));
        let sub_exact = rationalize(&sub_values).filter(|q| solves_exactly(&sub, q, &exact_u));
        let mut values: Vec<f64> = lab
            .labels()
            .iter()
            .map(|l| if *l == Label::In { 1.0 } else { 0.0 })
            .collect();
        for (k, &x) in und.iter().enumerate() {
            values[x.0] = sub_values[k];
        }
        let exact = sub_exact.map(|q| {
            let mut full: Vec<Rational> = lab
                .labels()
                .iter()
                .map(|l| {
                    if *l == Label::In {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
            for (k, &x) in und.iter().enumerate() {
                full[x.0] = q[k].clone();
            }
            full
        });
        (ApproxCase::Undecided, u, values, exact)
    };

    let (distribution, residuals) = match exact {
        Some(q) => {
            let d = product_distribution(&AtomProbability::new(q)?)?;
            let r = abs_defects(af, &d)?;
            (ApproxDistribution::Exact(d), r)
        }
        None => {
            let d = product_distribution(&AtomProbability::new(values.clone())?)?;
            let r = abs_defects(af, &d)?;
            (ApproxDistribution::Float(d), r)
        }
    };
    let max_residual = residuals.iter().fold(0.0f64, |m, &r| m.max(r));
    Ok(ApproxReport {
        n,
        case,
        epsilon_bound: epsilon,
        within_bound: max_residual <= epsilon + RESIDUAL_SLACK,
        max_residual,
        residuals,
        distribution,
        und_solution: und.iter().map(|&x| (x, values[x.0])).collect(),
    })
}

fn abs_defects<T: Mass>(af: &ArgumentationFramework, d: &ModelDistribution<T>) -> Result<Vec<f64>> {
    Ok(check_legitimate(af, d)?
        .defects
        .iter()
        .map(|v| v.abs().as_f64())
        .collect())
}

fn rationalize(values: &[f64]) -> Option<Vec<Rational>> {
    values
        .iter()
        .map(|&v| approximate(v, RATIONAL_DENOMINATOR_BOUND))
        .collect()
}

/// `x = (1 − u) · Π (1 − y)` for every argument, exactly.
fn solves_exactly(af: &ArgumentationFramework, q: &[Rational], u: &Rational) -> bool {
    let one = Rational::one();
    q.iter().all(|v| !v.is_negative() && *v <= one)
        && af.arguments().all(|x| {
            let rhs = af
                .attackers(x)
                .iter()
                .fold(&one - u, |acc, &y| acc * (&one - &q[y.0]));
            q[x.0] == rhs
        })
}

/// Masses of the approximate distribution over the undecided arguments
/// (in/out arguments fixed), keyed by their truth pattern as a bit string
/// in undecided-argument order.
pub fn und_pattern_masses(report: &ApproxReport, lab: &Labelling) -> Vec<(String, f64)> {
    let base: u64 = lab.with(Label::In).fold(0, |m, a| m | 1 << a.0);
    let und: Vec<Arg> = lab.with(Label::Und).collect();
    let d = report.distribution.to_f64();
    (0..1u64 << und.len())
        .map(|pattern| {
            let bits = und.iter().enumerate().fold(base, |m, (k, a)| {
                if pattern >> k & 1 == 1 {
                    m | 1 << a.0
                } else {
                    m
                }
            });
            let name = (0..und.len())
                .map(|k| if pattern >> k & 1 == 1 { '1' } else { '0' })
                .collect();
            (name, d.mass_of(bits))
        })
        .collect()
}
