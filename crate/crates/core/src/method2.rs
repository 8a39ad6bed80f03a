//! Distributions over classical models ("semantic" probabilities).
//!
//! A distribution `P` is legitimate for a framework when every argument
//! satisfies `P(x) = P(⋀_{y ∈ Att(x)} ¬y)`. All checks here are exact.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::distribution::{check_model_cap, Mass, ModelDistribution, DEFAULT_MODEL_CAP};
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::framework::{Arg, ArgumentationFramework};
use crate::labelling::{ensure_legal, Label, Labelling};
use crate::rational::Rational;
use crate::simplex::{self, Certificate, Feasibility, LinearProgram};

/// Most arguments accepted by vertex enumeration.
pub const VERTEX_ENUMERATION_CAP: usize = 8;

/// One signed incidence row per argument: entry `m` is
/// `[m ⊩ φ_x] − [m ⊩ ⋀ ¬φ_y]`, so `row · P = 0` is the attack constraint.
/// Normalisation and non-negativity are implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSystem {
    atoms: usize,
    rows: Vec<Vec<i8>>,
}

impl ConstraintSystem {
    /// Rows for arbitrary left/right formulas over `atoms` atoms.
    pub fn from_formula_pairs(atoms: usize, pairs: &[(Formula, Formula)]) -> Result<Self> {
        check_model_cap(atoms, crate::distribution::HARD_MODEL_CAP)?;
        for (l, r) in pairs {
            l.check_atoms(atoms)?;
            r.check_atoms(atoms)?;
        }
        let models = 1u64 << atoms;
        let rows = pairs
            .iter()
            .map(|(l, r)| {
                (0..models)
                    .map(|m| i8::from(l.holds(m)) - i8::from(r.holds(m)))
                    .collect()
            })
            .collect();
        Ok(Self { atoms, rows })
    }

    pub fn atoms(&self) -> usize {
        self.atoms
    }

    pub fn models(&self) -> usize {
        1 << self.atoms
    }

    /// Attack rows, one per argument.
    pub fn rows(&self) -> &[Vec<i8>] {
        &self.rows
    }

    /// Attack rows plus normalisation.
    pub fn equality_row_count(&self) -> usize {
        self.rows.len() + 1
    }

    /// The equality-form program, with `pins` appended as `P(φ) = value`.
    pub fn to_program(&self, pins: &[(Formula, Rational)]) -> Result<LinearProgram> {
        let n = self.models();
        let mut rows: Vec<Vec<Rational>> = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&v| Rational::from_integer(v.into()))
                    .collect()
            })
            .collect();
        let mut rhs = vec![Rational::zero(); rows.len()];
        rows.push(vec![Rational::one(); n]);
        rhs.push(Rational::one());
        for (f, value) in pins {
            f.check_atoms(self.atoms)?;
            rows.push(
                (0..n as u64)
                    .map(|m| {
                        if f.holds(m) {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect(),
            );
            rhs.push(value.clone());
        }
        Ok(LinearProgram {
            columns: n,
            rows,
            rhs,
        })
    }
}

fn attack_pairs(af: &ArgumentationFramework) -> Vec<(Formula, Formula)> {
    af.arguments()
        .map(|x| {
            (
                Formula::atom(x),
                Formula::conjunction(af.attackers(x).iter().map(|&y| Formula::atom(y).negate())),
            )
        })
        .collect()
}

/// `P(x) − P(⋀ ¬y) = 0` for every argument, over the `2^|S|` models.
pub fn build_constraints(af: &ArgumentationFramework, cap: usize) -> Result<ConstraintSystem> {
    check_model_cap(af.len(), cap)?;
    ConstraintSystem::from_formula_pairs(af.len(), &attack_pairs(af))
}

fn attacker_mask(af: &ArgumentationFramework, x: Arg) -> u64 {
    af.attackers(x).iter().fold(0, |m, y| m | 1 << y.0)
}

fn check_atoms_match<T: Mass>(af: &ArgumentationFramework, d: &ModelDistribution<T>) -> Result<()> {
    if d.atoms() != af.len() {
        return Err(Error::InvalidDistribution(alloc::format!(
            "distribution has {} atoms, framework has {} arguments",
            d.atoms(),
            af.len()
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct LegitimacyReport<T> {
    pub legitimate: bool,
    /// `P(x) − P(⋀ ¬y)` per argument.
    pub defects: Vec<T>,
}

/// Evaluates every attack constraint. Legitimate iff all defects are zero.
pub fn check_legitimate<T: Mass>(
    af: &ArgumentationFramework,
    d: &ModelDistribution<T>,
) -> Result<LegitimacyReport<T>> {
    check_atoms_match(af, d)?;
    let defects: Vec<T> = af
        .arguments()
        .map(|x| {
            let mask = attacker_mask(af, x);
            d.entries().fold(T::zero(), |acc, (bits, m)| {
                let lhs = bits >> x.0 & 1 == 1;
                let rhs = bits & mask == 0;
                match (lhs, rhs) {
                    (true, false) => acc + m.clone(),
                    (false, true) => acc - m.clone(),
                    _ => acc,
                }
            })
        })
        .collect();
    Ok(LegitimacyReport {
        legitimate: defects.iter().all(Zero::is_zero),
        defects,
    })
}

fn ensure_legitimate<T: Mass>(af: &ArgumentationFramework, d: &ModelDistribution<T>) -> Result<()> {
    if check_legitimate(af, d)?.legitimate {
        Ok(())
    } else {
        Err(Error::IllegitimateDistribution)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DistributionSearch {
    Found(ModelDistribution),
    Infeasible(Certificate),
}

impl DistributionSearch {
    pub fn found(&self) -> Option<&ModelDistribution> {
        match self {
            DistributionSearch::Found(d) => Some(d),
            DistributionSearch::Infeasible(_) => None,
        }
    }
}

fn to_distribution(atoms: usize, x: Vec<Rational>) -> ModelDistribution {
    ModelDistribution::from_dense(atoms, x).expect("simplex keeps the normalisation row")
}

/// Solves the constraint system of `cs` (plus `pins`) exactly.
pub fn find_distribution_for(
    cs: &ConstraintSystem,
    pins: &[(Formula, Rational)],
) -> Result<DistributionSearch> {
    let lp = cs.to_program(pins)?;
    Ok(match simplex::find_feasible(&lp) {
        Feasibility::Feasible(x) => DistributionSearch::Found(to_distribution(cs.atoms(), x)),
        Feasibility::Infeasible(c) => DistributionSearch::Infeasible(c),
    })
}

/// A legitimate distribution for `af`, optionally with `P(φ) = value` pins.
/// With pins that cannot be met, returns the infeasibility certificate over
/// the pinned system (attack rows, normalisation, then pins).
pub fn find_distribution(
    af: &ArgumentationFramework,
    pins: &[(Formula, Rational)],
    cap: usize,
) -> Result<DistributionSearch> {
    find_distribution_for(&build_constraints(af, cap)?, pins)
}

/// Up to `limit` distinct vertices of the legitimate polytope of `af`.
pub fn enumerate_vertices(
    af: &ArgumentationFramework,
    limit: usize,
) -> Result<Vec<ModelDistribution>> {
    let cs = build_constraints(af, VERTEX_ENUMERATION_CAP)?;
    let lp = cs.to_program(&[])?;
    Ok(
        simplex::enumerate_vertices(&lp, limit, limit.saturating_mul(8).saturating_add(32))
            .into_iter()
            .map(|x| to_distribution(af.len(), x))
            .collect(),
    )
}

/// in if `P(⋁ Att(x)) = 0`, out if it is 1, und otherwise. Refuses
/// illegitimate distributions.
pub fn gr_labelling<T: Mass>(
    af: &ArgumentationFramework,
    d: &ModelDistribution<T>,
) -> Result<Labelling> {
    ensure_legitimate(af, d)?;
    Ok(Labelling::new(
        af.arguments()
            .map(|x| {
                let mask = attacker_mask(af, x);
                let p = d.prob_where(|bits| bits & mask != 0);
                if p.is_zero() {
                    Label::In
                } else if p.is_one() {
                    Label::Out
                } else {
                    Label::Und
                }
            })
            .collect(),
    ))
}

/// The two-model distribution realising a complete labelling: mass 1/2 on
/// the model making in-arguments true, out-arguments false and undecided
/// ones true, and 1/2 on the same model with undecided ones false.
pub fn plambda_construct(
    af: &ArgumentationFramework,
    lab: &Labelling,
) -> Result<ModelDistribution> {
    ensure_legal(af, lab)?;
    check_model_cap(af.len(), crate::distribution::HARD_MODEL_CAP)?;
    let bits_of = |label: Label| lab.with(label).fold(0u64, |m, a| m | 1 << a.0);
    let base = bits_of(Label::In);
    let und = bits_of(Label::Und);
    let half = Rational::new(1.into(), 2.into());
    ModelDistribution::new(af.len(), [(base | und, half.clone()), (base, half)])
}

#[derive(Debug, Clone, PartialEq)]
pub struct UpperBound<T> {
    pub attacker: Arg,
    /// `1 − P(y) − P(x)`; the bound holds iff this is non-negative.
    pub slack: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundsAt<T> {
    pub argument: Arg,
    pub upper: Vec<UpperBound<T>>,
    /// `P(x) − (1 − Σ P(y))`.
    pub lower_slack: T,
}

impl<T: Mass> BoundsAt<T> {
    pub fn upper_ok(&self) -> bool {
        self.upper.iter().all(|u| !u.slack.is_negative())
    }

    pub fn lower_ok(&self) -> bool {
        !self.lower_slack.is_negative()
    }

    pub fn holds(&self) -> bool {
        self.upper_ok() && self.lower_ok()
    }
}

/// Marginal bounds implied by legitimacy.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport<T> {
    /// Whether `d` is legitimate; the bounds are only guaranteed then.
    pub legitimate: bool,
    pub arguments: Vec<BoundsAt<T>>,
}

impl<T: Mass> BoundsReport<T> {
    pub fn all_hold(&self) -> bool {
        self.arguments.iter().all(BoundsAt::holds)
    }
}

pub(crate) fn marginal_bounds<T: Mass>(
    af: &ArgumentationFramework,
    marginals: &[T],
) -> Vec<BoundsAt<T>> {
    af.arguments()
        .map(|x| {
            let px = marginals[x.0].clone();
            let attackers = af.attackers(x);
            let upper = attackers
                .iter()
                .map(|&y| UpperBound {
                    attacker: y,
                    slack: T::one() - marginals[y.0].clone() - px.clone(),
                })
                .collect();
            let sum = attackers
                .iter()
                .fold(T::zero(), |acc, &y| acc + marginals[y.0].clone());
            BoundsAt {
                argument: x,
                upper,
                lower_slack: px - (T::one() - sum),
            }
        })
        .collect()
}

/// `P(x) ≤ 1 − P(y)` for each attacker and `P(x) ≥ 1 − Σ P(y)`.
pub fn lemma5_bounds<T: Mass>(
    af: &ArgumentationFramework,
    d: &ModelDistribution<T>,
) -> Result<BoundsReport<T>> {
    let legitimate = check_legitimate(af, d)?.legitimate;
    Ok(BoundsReport {
        legitimate,
        arguments: marginal_bounds(af, &d.marginals()),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForcingAt {
    pub argument: Arg,
    /// Some attacker has probability 1.
    pub attacker_certain: bool,
    /// Every attacker has probability 0.
    pub attackers_impossible: bool,
    /// Both implications hold at this argument.
    pub holds: bool,
}

/// Checks: an attacker with `P = 1` forces `P(x) = 0`; all attackers at
/// `P = 0` force `P(x) = 1`. Refuses illegitimate distributions.
pub fn lemma13_check<T: Mass>(
    af: &ArgumentationFramework,
    d: &ModelDistribution<T>,
) -> Result<Vec<ForcingAt>> {
    ensure_legitimate(af, d)?;
    let p = d.marginals();
    Ok(af
        .arguments()
        .map(|x| {
            let attackers = af.attackers(x);
            let certain = attackers.iter().any(|y| p[y.0].is_one());
            let impossible = attackers.iter().all(|y| p[y.0].is_zero());
            let holds = (!certain || p[x.0].is_zero()) && (!impossible || p[x.0].is_one());
            ForcingAt {
                argument: x,
                attacker_certain: certain,
                attackers_impossible: impossible,
                holds,
            }
        })
        .collect())
}

/// A framework whose arguments are mapped to formulas over a separate atom
/// vocabulary.
#[derive(Debug, Clone, PartialEq)]
pub struct InstantiatedNetwork {
    pub framework: ArgumentationFramework,
    pub atoms: Vec<alloc::string::String>,
    /// Formula per argument, in argument order.
    pub instantiation: Vec<Formula>,
}

impl InstantiatedNetwork {
    pub fn new(
        framework: ArgumentationFramework,
        atoms: Vec<alloc::string::String>,
        instantiation: Vec<Formula>,
    ) -> Result<Self> {
        if instantiation.len() != framework.len() {
            return Err(Error::LabellingSize {
                expected: framework.len(),
                got: instantiation.len(),
            });
        }
        for f in &instantiation {
            f.check_atoms(atoms.len())?;
        }
        Ok(Self {
            framework,
            atoms,
            instantiation,
        })
    }

    /// `I(x) = x` over the framework's own arguments.
    pub fn identity(framework: ArgumentationFramework) -> Self {
        let atoms = framework.names().to_vec();
        let instantiation = framework.arguments().map(Formula::atom).collect();
        Self {
            framework,
            atoms,
            instantiation,
        }
    }

    fn pairs(&self) -> Vec<(Formula, Formula)> {
        self.framework
            .arguments()
            .map(|x| {
                let rhs = Formula::conjunction(
                    self.framework
                        .attackers(x)
                        .iter()
                        .map(|&y| self.instantiation[y.0].clone().negate()),
                );
                (self.instantiation[x.0].clone(), rhs)
            })
            .collect()
    }

    /// `{ φ_x ↔ ⋀_{(y,x) ∈ R} ¬φ_y }`.
    pub fn theory(&self) -> Vec<Formula> {
        self.pairs().into_iter().map(|(l, r)| l.iff(r)).collect()
    }

    /// Rows `P(φ_x) − P(⋀ ¬φ_y) = 0` over the models of the atom set.
    pub fn constraints(&self, cap: usize) -> Result<ConstraintSystem> {
        check_model_cap(self.atoms.len(), cap)?;
        ConstraintSystem::from_formula_pairs(self.atoms.len(), &self.pairs())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InstantiationResult {
    pub constraints: ConstraintSystem,
    pub theory: Vec<Formula>,
    pub outcome: DistributionSearch,
}

pub fn instantiate_and_solve(
    net: &InstantiatedNetwork,
    pins: &[(Formula, Rational)],
    cap: usize,
) -> Result<InstantiationResult> {
    let constraints = net.constraints(cap)?;
    let outcome = find_distribution_for(&constraints, pins)?;
    Ok(InstantiationResult {
        theory: net.theory(),
        constraints,
        outcome,
    })
}

/// Default model cap re-exported for callers that do not configure one.
pub const MODEL_CAP: usize = DEFAULT_MODEL_CAP;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Model;
    use crate::rational::rat;

    fn bits(s: &str) -> u64 {
        Model::from_bit_string(s).unwrap().bits()
    }

    fn af(text: &str) -> ArgumentationFramework {
        ArgumentationFramework::parse(text).unwrap()
    }

    fn doubly_attacked_pair() -> ArgumentationFramework {
        af("arg a\narg b\natt a a\natt b a\natt a b\natt b b")
    }

    fn self_attacker_pair() -> ArgumentationFramework {
        af("arg a\narg b\natt a b\natt b a\natt a a")
    }

    #[test]
    fn constraint_rows() {
        let cs = build_constraints(&doubly_attacked_pair(), 16).unwrap();
        assert_eq!(cs.equality_row_count(), 3);
        // models 00, 10, 01, 11 as bit masks 0, 1, 2, 3 (bit 0 = a)
        assert_eq!(cs.rows()[0], vec![-1, 1, 0, 1]);
        assert_eq!(cs.rows()[1], vec![-1, 0, 1, 1]);

        let cs = build_constraints(&self_attacker_pair(), 16).unwrap();
        assert_eq!(cs.rows()[0], vec![-1, 1, 0, 1]);
        // P(b) = P(¬a)
        assert_eq!(cs.rows()[1], vec![-1, 0, 0, 1]);

        let cs = build_constraints(&af("arg x"), 16).unwrap();
        assert_eq!(cs.rows()[0], vec![-1, 0]);

        assert!(matches!(
            build_constraints(&self_attacker_pair(), 1),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn uniform_on_doubly_attacked_pair_is_rejected() {
        let d = ModelDistribution::new(2, (0..4).map(|b| (b, rat(1, 4)))).unwrap();
        let report = check_legitimate(&doubly_attacked_pair(), &d).unwrap();
        assert!(!report.legitimate);
        assert_eq!(report.defects[0], rat(1, 4));
        let bounds = lemma5_bounds(&doubly_attacked_pair(), &d).unwrap();
        assert!(!bounds.legitimate);
        assert!(bounds.all_hold());
    }

    #[test]
    fn pinned_search_on_doubly_attacked_pair() {
        let af = doubly_attacked_pair();
        let names = af.names().to_vec();
        let pins = [
            (Formula::parse("a & b", &names).unwrap(), rat(0, 1)),
            (Formula::parse("!a & b", &names).unwrap(), rat(1, 3)),
        ];
        let d = find_distribution(&af, &pins, 16).unwrap();
        let d = d.found().unwrap();
        assert_eq!(d.mass_of(bits("11")), rat(0, 1));
        assert_eq!(d.mass_of(bits("01")), rat(1, 3));
        assert_eq!(d.mass_of(bits("00")), rat(1, 3));
        assert_eq!(d.mass_of(bits("10")), rat(1, 3));
        assert!(check_legitimate(&af, d).unwrap().legitimate);
    }

    #[test]
    fn self_attacker_pair_vertices_and_plambda() {
        let af = self_attacker_pair();
        let vs = enumerate_vertices(&af, 10).unwrap();
        assert_eq!(vs.len(), 2);
        let point = ModelDistribution::point_mass(2, bits("01")).unwrap();
        let split =
            ModelDistribution::new(2, [(bits("11"), rat(1, 2)), (bits("00"), rat(1, 2))]).unwrap();
        assert!(vs.contains(&point));
        assert!(vs.contains(&split));

        let und = plambda_construct(&af, &Labelling::uniform(2, Label::Und)).unwrap();
        assert_eq!(und, split);
        let decided = plambda_construct(&af, &Labelling::new(vec![Label::Out, Label::In])).unwrap();
        assert_eq!(decided, point);
        assert!(plambda_construct(&af, &Labelling::new(vec![Label::In, Label::Out])).is_err());

        assert_eq!(
            gr_labelling(&af, &point).unwrap(),
            Labelling::new(vec![Label::Out, Label::In])
        );
        assert!(lemma13_check(&af, &point).unwrap().iter().all(|f| f.holds));
    }

    #[test]
    fn gr_labelling_refuses_illegitimate() {
        let d = ModelDistribution::new(2, (0..4).map(|b| (b, rat(1, 4)))).unwrap();
        assert_eq!(
            gr_labelling(&doubly_attacked_pair(), &d).unwrap_err(),
            Error::IllegitimateDistribution
        );
        assert_eq!(
            lemma13_check(&doubly_attacked_pair(), &d).unwrap_err(),
            Error::IllegitimateDistribution
        );
    }

    #[test]
    fn identity_instantiation_matches() {
        let af = self_attacker_pair();
        let net = InstantiatedNetwork::identity(af.clone());
        assert_eq!(
            net.constraints(16).unwrap(),
            build_constraints(&af, 16).unwrap()
        );
    }

    #[test]
    fn bottom_instantiation_of_unattacked_is_infeasible() {
        let af = af("arg x");
        let net = InstantiatedNetwork::new(af, vec!["p".into()], vec![Formula::Bottom]).unwrap();
        let result = instantiate_and_solve(&net, &[], 16).unwrap();
        match result.outcome {
            DistributionSearch::Infeasible(cert) => {
                assert!(cert.verify(&result.constraints.to_program(&[]).unwrap()))
            }
            DistributionSearch::Found(d) => panic!("{d:?}"),
        }
    }
}
