//! Independent atom probabilities and their product distributions.
//!
//! With independent atoms the attack constraint `P(x) = P(⋀ ¬y)` becomes
//! `P(x) = Π (1 − P(y))`, i.e. the product-form equation system, so a
//! legitimate assignment is exactly one of its solutions.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::distribution::{check_model_cap, Mass, ModelDistribution, HARD_MODEL_CAP};
use crate::equations::{EquationKind, EquationSystem};
use crate::error::{Error, Result};
use crate::framework::ArgumentationFramework;
use crate::solver::{solve, SolveConfig};

/// Probability of each atom, in the framework's argument order.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomProbability<T>(Vec<T>);

impl<T: Mass> AtomProbability<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| v.is_negative() || **v > T::one()) {
            return Err(Error::InvalidDistribution(alloc::format!(
                "atom probability {v:?} outside [0,1]"
            )));
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[T] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `P(ε) = Π_{ε ⊩ q} P(q) · Π_{ε ⊩ ¬q} (1 − P(q))` over all `2^n` models.
/// Zero-mass models are left out of the support; nothing is renormalised.
pub fn product_distribution<T: Mass>(ap: &AtomProbability<T>) -> Result<ModelDistribution<T>> {
    let n = ap.len();
    check_model_cap(n, HARD_MODEL_CAP)?;
    // Build level by level so each model's product is computed once.
    let mut layer: Vec<(u64, T)> = alloc::vec![(0, T::one())];
    for (i, p) in ap.values().iter().enumerate() {
        let q = T::one() - p.clone();
        let mut next = Vec::with_capacity(layer.len() * 2);
        for (bits, m) in layer {
            if !q.is_zero() {
                next.push((bits, m.clone() * q.clone()));
            }
            if !p.is_zero() {
                next.push((bits | 1 << i, m * p.clone()));
            }
        }
        layer = next;
    }
    let mass: BTreeMap<u64, T> = layer.into_iter().filter(|(_, m)| !m.is_zero()).collect();
    Ok(ModelDistribution::from_parts_unchecked(n, mass))
}

/// Per-argument defects `p(x) − Π (1 − p(y))`.
#[derive(Debug, Clone, PartialEq)]
pub struct Method1Check<T> {
    pub legitimate: bool,
    pub defects: Vec<T>,
}

impl<T: Mass> Method1Check<T> {
    pub fn max_defect(&self) -> T {
        self.defects
            .iter()
            .map(|d| d.abs())
            .fold(T::zero(), |a, b| if b > a { b } else { a })
    }
}

/// Legitimate iff every defect is at most `tol` in absolute value (pass zero
/// for an exact check on rationals).
pub fn is_method1_legitimate<T: Mass>(
    af: &ArgumentationFramework,
    ap: &AtomProbability<T>,
    tol: &T,
) -> Result<Method1Check<T>> {
    if ap.len() != af.len() {
        return Err(Error::LabellingSize {
            expected: af.len(),
            got: ap.len(),
        });
    }
    let p = ap.values();
    let defects: Vec<T> = af
        .arguments()
        .map(|x| {
            let rhs = af
                .attackers(x)
                .iter()
                .fold(T::one(), |acc, &y| acc * (T::one() - p[y.0].clone()));
            p[x.0].clone() - rhs
        })
        .collect();
    Ok(Method1Check {
        legitimate: defects.iter().all(|d| d.abs() <= *tol),
        defects,
    })
}

/// Every product-form solution found by the solver, read as atom
/// probabilities.
pub fn find_method1(
    af: &ArgumentationFramework,
    cfg: &SolveConfig,
) -> Result<Vec<AtomProbability<f64>>> {
    let sys = EquationSystem::new(af, EquationKind::Inv);
    Ok(solve(&sys, cfg)?
        .into_iter()
        .map(|s| AtomProbability(s.valuation.into_values()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Model;
    use crate::rational::{rat, Rational};

    fn bits(s: &str) -> u64 {
        Model::from_bit_string(s).unwrap().bits()
    }

    #[test]
    fn quarter_on_third_atom() {
        let ap = AtomProbability::new(alloc::vec![rat(1, 2), rat(1, 2), rat(1, 4)]).unwrap();
        let d = product_distribution(&ap).unwrap();
        assert_eq!(d.total(), rat(1, 1));
        for b in 0..8u64 {
            let want = if b & 4 != 0 { rat(1, 16) } else { rat(3, 16) };
            assert_eq!(d.mass_of(b), want, "model {b:03b}");
        }
    }

    #[test]
    fn all_true_is_point_mass() {
        let ap = AtomProbability::new(alloc::vec![rat(1, 1); 3]).unwrap();
        let d = product_distribution(&ap).unwrap();
        assert_eq!(d.entries().count(), 1);
        assert_eq!(d.mass_of(bits("111")), rat(1, 1));
    }

    #[test]
    fn legitimacy_examples() {
        let pair =
            ArgumentationFramework::parse("arg a\narg b\natt a b\natt b a\natt a a").unwrap();
        let ap = AtomProbability::new(alloc::vec![rat(1, 2), rat(1, 2)]).unwrap();
        let check = is_method1_legitimate(&pair, &ap, &Rational::from_integer(0.into())).unwrap();
        assert!(!check.legitimate);
        assert_eq!(check.defects[0], rat(1, 4));
        assert_eq!(check.max_defect(), rat(1, 4));

        let fork = ArgumentationFramework::parse(
            "arg a\narg b\narg x\natt a a\natt b b\natt a x\natt b x",
        )
        .unwrap();
        let ap = AtomProbability::new(alloc::vec![rat(1, 2), rat(1, 2), rat(1, 4)]).unwrap();
        let check = is_method1_legitimate(&fork, &ap, &Rational::from_integer(0.into())).unwrap();
        assert!(check.legitimate);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(AtomProbability::new(alloc::vec![1.5f64]).is_err());
        assert!(AtomProbability::new(alloc::vec![-0.1f64]).is_err());
    }

    #[test]
    fn isolated_node() {
        let af = ArgumentationFramework::parse("arg x").unwrap();
        let found = find_method1(&af, &SolveConfig::default()).unwrap();
        assert_eq!(found, alloc::vec![AtomProbability(alloc::vec![1.0])]);
    }
}
