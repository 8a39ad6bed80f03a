//! Thimm-style p-justifiability, evaluated on the argument marginals of a
//! model distribution.
//!
//! The inequalities are `P(x) ≤ 1 − P(y)` for every attacker `y` and
//! `P(x) ≥ 1 − Σ P(y)`. They are necessary for legitimacy but not
//! sufficient, and the report records both verdicts side by side.

use alloc::vec::Vec;

use crate::distribution::{Mass, ModelDistribution};
use crate::error::Result;
use crate::framework::{Arg, ArgumentationFramework};
use crate::method2::{check_legitimate, marginal_bounds, BoundsAt};

/// Printed at the top of rendered reports.
pub const REPORT_HEADER: &str =
    "p-justifiability evaluated on argument marginals of a distribution over models";

/// For an argument with `0 < P(x) < 1`: no attacker is certain, and some
/// attacker has positive probability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteriorCheck {
    pub argument: Arg,
    pub no_certain_attacker: bool,
    pub some_possible_attacker: bool,
}

impl InteriorCheck {
    pub fn holds(&self) -> bool {
        self.no_certain_attacker && self.some_possible_attacker
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct JustifiabilityReport<T> {
    pub marginals: Vec<T>,
    pub arguments: Vec<BoundsAt<T>>,
    /// Both inequality families hold everywhere.
    pub justifiable: bool,
    /// Reported only; never part of the verdict.
    pub interior_checks: Vec<InteriorCheck>,
    /// Verdict of the exact attack-constraint check on the same distribution.
    pub legitimate: bool,
}

impl<T: Mass> JustifiabilityReport<T> {
    /// Arguments whose checks fail.
    pub fn failures(&self) -> impl Iterator<Item = &BoundsAt<T>> {
        self.arguments.iter().filter(|b| !b.holds())
    }

    /// p-justifiable but not legitimate.
    pub fn diverges(&self) -> bool {
        self.justifiable && !self.legitimate
    }
}

pub fn p_justifiable<T: Mass>(
    af: &ArgumentationFramework,
    d: &ModelDistribution<T>,
) -> Result<JustifiabilityReport<T>> {
    let legitimate = check_legitimate(af, d)?.legitimate;
    let marginals = d.marginals();
    let arguments = marginal_bounds(af, &marginals);
    let interior_checks = af
        .arguments()
        .filter(|x| {
            let p = &marginals[x.0];
            !p.is_zero() && !p.is_one()
        })
        .map(|x| {
            let attackers = af.attackers(x);
            InteriorCheck {
                argument: x,
                no_certain_attacker: !attackers.iter().any(|y| marginals[y.0].is_one()),
                some_possible_attacker: attackers.iter().any(|y| marginals[y.0].is_positive()),
            }
        })
        .collect();
    Ok(JustifiabilityReport {
        justifiable: arguments.iter().all(BoundsAt::holds),
        marginals,
        arguments,
        interior_checks,
        legitimate,
    })
}
