//! Worked examples regenerated as JSON fixtures, one file per example, each
//! with its expected and computed values side by side.

use std::fmt::Display;
use std::fs;
use std::path::Path;

use anyhow::Context;
use eqarg_core::constructions::{
    approximate_plambda, augment_und, un_chain, und_pattern_masses, ApproxDistribution, AugmentMode,
};
use eqarg_core::distribution::{ModelDistribution, DEFAULT_MODEL_CAP};
use eqarg_core::labelling::DEFAULT_ENUMERATION_CAP;
use eqarg_core::method1::{
    find_method1, is_method1_legitimate, product_distribution, AtomProbability,
};
use eqarg_core::method2::{
    build_constraints, check_legitimate, enumerate_vertices, find_distribution, gr_labelling,
    lemma13_check, lemma5_bounds, plambda_construct, DistributionSearch, InstantiatedNetwork,
};
use eqarg_core::rational::{format_rational, rat, Rational};
use eqarg_core::thimm::p_justifiable;
use eqarg_core::{
    enumerate_complete_labellings, is_legal_labelling, solve, translate_theory, Arg,
    ArgumentationFramework, EquationKind, EquationSystem, Formula, KleeneValue, Labelling, Model,
    SeedStrategy, SolveConfig,
};
use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::io::{
    distribution_from_json, InstantiatedNetworkJson, MassEntry, DEFAULT_DENOMINATOR_BOUND,
};

/// Agreement required between computed and closed-form values.
pub const TOLERANCE: f64 = 1e-9;
/// Agreement required with values printed to three decimals.
pub const PRINTED_TOLERANCE: f64 = 5e-3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub description: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureSummary {
    pub name: String,
    pub passed: bool,
    pub failed_checks: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GallerySummary {
    pub passed: bool,
    pub fixture_count: usize,
    pub failed_count: usize,
    pub fixtures: Vec<FixtureSummary>,
}

struct Builder {
    checks: Vec<Check>,
}

impl Builder {
    fn push(&mut self, name: &str, expected: String, actual: String, passed: bool) {
        self.checks.push(Check {
            name: name.into(),
            expected,
            actual,
            passed,
        });
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, name: &str, actual: T, expected: T) {
        let passed = actual == expected;
        self.push(name, format!("{expected:?}"), format!("{actual:?}"), passed);
    }

    fn rational(&mut self, name: &str, actual: &Rational, expected: &Rational) {
        self.push(
            name,
            format_rational(expected),
            format_rational(actual),
            actual == expected,
        );
    }

    fn close(&mut self, name: &str, actual: f64, expected: f64, tol: f64) {
        let passed = (actual - expected).abs() <= tol;
        self.push(
            name,
            format!("{expected} ± {tol:e}"),
            format!("{actual}"),
            passed,
        );
    }

    fn at_most(&mut self, name: &str, actual: f64, bound: f64) {
        self.push(
            name,
            format!("≤ {bound:e}"),
            format!("{actual:e}"),
            actual <= bound,
        );
    }

    fn holds(&mut self, name: &str, ok: bool) {
        self.push(name, "true".into(), ok.to_string(), ok);
    }

    fn shown<T: Display>(&mut self, name: &str, actual: T, expected: T, passed: bool) {
        self.push(name, expected.to_string(), actual.to_string(), passed);
    }
}

type FixtureFn = fn(&mut Builder, &SolveConfig) -> anyhow::Result<()>;

const FIXTURES: &[(&str, &str, FixtureFn)] = &[
    (
        "self_attacker_pair_structure",
        "parsing, attackers, legal and complete labellings of the self-attacker pair",
        self_attacker_pair_structure,
    ),
    (
        "self_attacker_theory",
        "Kleene reading of x <-> !x and the theory of a single self-attacker",
        self_attacker_theory,
    ),
    (
        "self_attacker_pair_solutions",
        "product and max equations of the self-attacker pair",
        self_attacker_pair_solutions,
    ),
    (
        "self_attacker_pair_distributions",
        "constraint rows, pinned search, vertices and the labelling construction on the self-attacker pair",
        self_attacker_pair_distributions,
    ),
    (
        "self_attacker_pair_with_und",
        "golden solution (1/2, √5−2, (3−√5)/2) and the augmentation that builds the network",
        self_attacker_pair_with_und,
    ),
    ("undecided_chain", "sink value 2^-n of a chain of self-attackers", undecided_chain),
    (
        "five_argument_distribution",
        "an illegitimate distribution on the five-argument network",
        five_argument_distribution,
    ),
    (
        "mutual_pair_joint_target",
        "product family and a joint attack on the mutual pair with a common target",
        mutual_pair_joint_target,
    ),
    (
        "doubly_attacked_pair",
        "uniform distribution versus the pinned thirds on the doubly attacked pair",
        doubly_attacked_pair,
    ),
    (
        "two_self_attackers_one_target",
        "product distribution and graded labelling with one target",
        two_self_attackers_one_target,
    ),
    (
        "two_self_attackers_two_targets",
        "equal-marginal rigidity and p-justifiability divergence with two targets",
        two_self_attackers_two_targets,
    ),
    (
        "two_mutual_pairs_approximation",
        "augmentation, pinned solve and exact approximate construction on two mutual pairs",
        two_mutual_pairs_approximation,
    ),
    (
        "mutual_pair_and_self_attacker_pair_approximation",
        "approximate construction with irrational undecided values",
        mutual_pair_and_self_attacker_pair_approximation,
    ),
    (
        "joint_attack_instantiation",
        "a disjunctive argument attacking a3, and identity instantiations",
        joint_attack_instantiation,
    ),
];

/// Names of all fixtures, in run order.
pub fn fixture_names() -> Vec<&'static str> {
    FIXTURES.iter().map(|f| f.0).collect()
}

/// Computes every fixture. Errors inside a fixture become a failing check.
pub fn fixtures(cfg: &SolveConfig) -> Vec<Fixture> {
    FIXTURES
        .iter()
        .map(|&(name, description, f)| {
            let mut b = Builder { checks: Vec::new() };
            if let Err(e) = f(&mut b, cfg) {
                b.push(
                    "completed without error",
                    "no error".into(),
                    format!("{e:#}"),
                    false,
                );
            }
            Fixture {
                name: name.into(),
                description: description.into(),
                passed: b.checks.iter().all(|c| c.passed),
                checks: b.checks,
            }
        })
        .collect()
}

pub fn summarize(fixtures: &[Fixture]) -> GallerySummary {
    let summaries: Vec<FixtureSummary> = fixtures
        .iter()
        .map(|f| FixtureSummary {
            name: f.name.clone(),
            passed: f.passed,
            failed_checks: f
                .checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| c.name.clone())
                .collect(),
        })
        .collect();
    let failed = summaries.iter().filter(|s| !s.passed).count();
    GallerySummary {
        passed: failed == 0,
        fixture_count: summaries.len(),
        failed_count: failed,
        fixtures: summaries,
    }
}

/// Writes `<name>.json` per fixture and `summary.json` into `dir`, creating it
/// if needed.
pub fn run(dir: &Path, cfg: &SolveConfig) -> anyhow::Result<GallerySummary> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let all = fixtures(cfg);
    for f in &all {
        let path = dir.join(format!("{}.json", f.name));
        fs::write(&path, serde_json::to_string_pretty(f)? + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let summary = summarize(&all);
    let path = dir.join("summary.json");
    fs::write(&path, serde_json::to_string_pretty(&summary)? + "\n")
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(summary)
}

fn labelling(af: &ArgumentationFramework, text: &str) -> anyhow::Result<Labelling> {
    Ok(Labelling::parse_assignments(af, text)?)
}

fn bits(s: &str) -> u64 {
    Model::from_bit_string(s)
        .expect("literal bit string")
        .bits()
}

fn exact(atoms: usize, masses: &[(&str, Rational)]) -> anyhow::Result<ModelDistribution> {
    Ok(ModelDistribution::new(
        atoms,
        masses.iter().map(|(m, p)| (bits(m), p.clone())),
    )?)
}

fn attack_set(af: &ArgumentationFramework) -> Vec<(String, String)> {
    let mut v: Vec<_> = af
        .attacks()
        .map(|(x, y)| (af.name(x).to_string(), af.name(y).to_string()))
        .collect();
    v.sort();
    v
}

fn same_network(a: &ArgumentationFramework, b: &ArgumentationFramework) -> bool {
    let mut na = a.names().to_vec();
    let mut nb = b.names().to_vec();
    na.sort();
    nb.sort();
    na == nb && attack_set(a) == attack_set(b)
}

/// Same truth value under every Kleene valuation (and hence every model).
fn equivalent(f: &Formula, g: &Formula, atoms: usize) -> bool {
    let values = [KleeneValue::False, KleeneValue::Half, KleeneValue::True];
    (0..3usize.pow(atoms as u32)).all(|code| {
        let mut k = code;
        let v: Vec<KleeneValue> = (0..atoms)
            .map(|_| {
                let x = values[k % 3];
                k /= 3;
                x
            })
            .collect();
        f.kleene_eval(&v).ok() == g.kleene_eval(&v).ok()
    })
}

fn theory_matches(af: &ArgumentationFramework, expected: &[&str]) -> anyhow::Result<bool> {
    let theory = translate_theory(af);
    if theory.len() != expected.len() {
        return Ok(false);
    }
    for (f, text) in theory.iter().zip(expected) {
        if !equivalent(f, &Formula::parse(text, af.names())?, af.len()) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn solutions(af: &ArgumentationFramework, cfg: &SolveConfig) -> anyhow::Result<Vec<Vec<f64>>> {
    let sys = EquationSystem::new(af, EquationKind::Inv);
    Ok(solve(&sys, cfg)?
        .into_iter()
        .map(|s| s.valuation.into_values())
        .collect())
}

fn max_gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn self_attacker_pair_structure(b: &mut Builder, _: &SolveConfig) -> anyhow::Result<()> {
    let af = catalog::self_attacker_pair();
    let parsed = ArgumentationFramework::parse("arg a\narg b\natt a b\natt b a\natt a a")?;
    b.holds(
        "text form parses to the bundled network",
        same_network(&parsed, &af),
    );
    let mut att_a = af.attackers_of("a")?;
    att_a.sort();
    b.eq("attackers of a", att_a, vec!["a", "b"]);
    b.eq("attackers of b", af.attackers_of("b")?, vec!["a"]);
    b.holds(
        "a=out, b=in is legal",
        is_legal_labelling(&af, &labelling(&af, "a=out,b=in")?)?,
    );
    b.holds(
        "a=und, b=und is legal",
        is_legal_labelling(&af, &labelling(&af, "a=und,b=und")?)?,
    );
    let all = enumerate_complete_labellings(&af, DEFAULT_ENUMERATION_CAP)?;
    let listed: Vec<String> = all
        .labellings
        .iter()
        .map(|l| l.to_assignments(&af))
        .collect();
    b.eq(
        "complete labellings",
        listed,
        vec!["a=out,b=in".to_string(), "a=und,b=und".into()],
    );
    let preferred: Vec<String> = all.preferred().map(|l| l.to_assignments(&af)).collect();
    b.eq(
        "preferred labellings",
        preferred,
        vec!["a=out,b=in".to_string()],
    );
    let single = ArgumentationFramework::parse("arg x")?;
    b.eq(
        "single argument has one complete labelling",
        enumerate_complete_labellings(&single, DEFAULT_ENUMERATION_CAP)?.len(),
        1,
    );
    let joint = catalog::mutual_pair_joint_target();
    b.eq(
        "mutual pair with joint target has three complete labellings",
        enumerate_complete_labellings(&joint, DEFAULT_ENUMERATION_CAP)?.len(),
        3,
    );
    Ok(())
}

fn self_attacker_theory(b: &mut Builder, _: &SolveConfig) -> anyhow::Result<()> {
    let x = Formula::Atom(0);
    let f = x.clone().iff(x.negate());
    for bits in 0..2 {
        b.eq(
            &format!("x <-> !x is false under model {bits}"),
            f.classical_eval(&Model::new(1, bits)?)?,
            false,
        );
    }
    b.holds(
        "x <-> !x is satisfied at x = 1/2",
        f.kleene_satisfies(&[KleeneValue::Half])?,
    );
    b.holds(
        "x <-> !x is not satisfied at 0 or 1",
        !f.kleene_satisfies(&[KleeneValue::False])? && !f.kleene_satisfies(&[KleeneValue::True])?,
    );
    b.holds(
        "theory of a self-attacker is {x <-> !x}",
        theory_matches(&catalog::self_attacker(), &["x <-> !x"])?,
    );
    b.holds(
        "theory of the self-attacker pair",
        theory_matches(
            &catalog::self_attacker_pair(),
            &["a <-> !a & !b", "b <-> !a"],
        )?,
    );
    Ok(())
}

fn self_attacker_pair_solutions(b: &mut Builder, cfg: &SolveConfig) -> anyhow::Result<()> {
    let af = catalog::self_attacker_pair();
    let sols = solutions(&af, cfg)?;
    b.eq("number of product-form solutions", sols.len(), 1);
    if let Some(s) = sols.first() {
        b.close("a", s[0], 0.0, TOLERANCE);
        b.close("b", s[1], 1.0, TOLERANCE);
    }
    let mut exact = eqarg_core::equations::exact_max_solutions(&af, DEFAULT_ENUMERATION_CAP)?;
    exact.sort();
    b.eq(
        "exact max-form solutions",
        exact,
        vec![
            vec![KleeneValue::False, KleeneValue::True],
            vec![KleeneValue::Half, KleeneValue::Half],
        ],
    );
    let found = find_method1(&af, cfg)?;
    b.eq("product-form assignments found", found.len(), 1);
    if let Some(ap) = found.first() {
        b.at_most(
            "distance to (0, 1)",
            max_gap(ap.values(), &[0.0, 1.0]),
            TOLERANCE,
        );
    }
    let check = is_method1_legitimate(
        &af,
        &AtomProbability::new(vec![rat(0, 1), rat(1, 1)])?,
        &rat(0, 1),
    )?;
    b.holds("(0, 1) is legitimate exactly", check.legitimate);
    Ok(())
}

fn self_attacker_pair_distributions(b: &mut Builder, _: &SolveConfig) -> anyhow::Result<()> {
    let af = catalog::self_attacker_pair();
    let cs = build_constraints(&af, DEFAULT_MODEL_CAP)?;
    // model index bit 0 is a, bit 1 is b
    b.eq(
        "row for a: P(a) = P(!a & !b)",
        cs.rows()[0].clone(),
        vec![-1, 1, 0, 1],
    );
    b.eq(
        "row for b: P(b) = P(!a)",
        cs.rows()[1].clone(),
        vec![-1, 0, 0, 1],
    );

    let pin = (Formula::parse("!a & b", af.names())?, rat(1, 2));
    let want = exact(
        2,
        &[("11", rat(1, 4)), ("01", rat(1, 2)), ("00", rat(1, 4))],
    )?;
    match find_distribution(&af, &[pin], DEFAULT_MODEL_CAP)? {
        DistributionSearch::Found(d) => {
            for (label, m) in [
                ("a & b", "11"),
                ("a & !b", "10"),
                ("!a & b", "01"),
                ("!a & !b", "00"),
            ] {
                b.rational(
                    &format!("mass of {label} with P(!a & b) = 1/2"),
                    &d.mass_of(bits(m)),
                    &want.mass_of(bits(m)),
                );
            }
        }
        DistributionSearch::Infeasible(_) => b.holds("P(!a & b) = 1/2 is feasible", false),
    }

    let vertices = enumerate_vertices(&af, 64)?;
    let point = ModelDistribution::point_mass(2, bits("01"))?;
    let split = exact(2, &[("11", rat(1, 2)), ("00", rat(1, 2))])?;
    b.holds("vertex P(!a & b) = 1 is listed", vertices.contains(&point));
    b.holds(
        "vertex 1/2 on a & b, 1/2 on !a & !b is listed",
        vertices.contains(&split),
    );

    let und = labelling(&af, "a=und,b=und")?;
    b.eq(
        "construction for a=und, b=und",
        plambda_construct(&af, &und)?,
        split.clone(),
    );
    b.eq(
        "graded labelling of the split vertex",
        gr_labelling(&af, &split)?,
        und,
    );
    b.eq(
        "graded labelling of the point vertex",
        gr_labelling(&af, &point)?,
        labelling(&af, "a=out,b=in")?,
    );
    Ok(())
}

fn self_attacker_pair_with_und(b: &mut Builder, cfg: &SolveConfig) -> anyhow::Result<()> {
    let af = catalog::self_attacker_pair_with_und();
    let golden = [0.5, 5f64.sqrt() - 2.0, (3.0 - 5f64.sqrt()) / 2.0];
    let sols = solutions(&af, cfg)?;
    let nearest = sols
        .iter()
        .min_by(|x, y| max_gap(x, &golden).total_cmp(&max_gap(y, &golden)));
    match nearest {
        Some(s) => {
            for (i, name) in ["u", "a", "b"].iter().enumerate() {
                b.close(name, s[i], golden[i], TOLERANCE);
            }
            let lab =
                eqarg_core::equations::project(&eqarg_core::equations::Valuation::new(s.clone())?);
            b.eq(
                "projection",
                lab.to_assignments(&af),
                "u=und,a=und,b=und".to_string(),
            );
        }
        None => b.holds("a solution was found", false),
    }

    let sys = EquationSystem::new(&af, EquationKind::Inv);
    b.at_most(
        "residual of the closed form",
        sys.residual(&eqarg_core::equations::Valuation::new(golden.to_vec())?),
        TOLERANCE,
    );
    let v = [0.3, 0.6, 0.2];
    let rhs = sys.rhs_all(&v);
    let by_hand = [
        1.0 - v[0],
        (1.0 - v[0]) * (1.0 - v[1]) * (1.0 - v[2]),
        (1.0 - v[0]) * (1.0 - v[1]),
    ];
    b.at_most(
        "right-hand sides at (0.3, 0.6, 0.2)",
        max_gap(&rhs, &by_hand),
        1e-15,
    );
    let check = is_method1_legitimate(&af, &AtomProbability::new(golden.to_vec())?, &TOLERANCE)?;
    b.holds(
        "closed form is legitimate as atom probabilities",
        check.legitimate,
    );

    let base = catalog::self_attacker_pair();
    let aug = augment_und(
        &base,
        &labelling(&base, "a=und,b=und")?,
        AugmentMode::SelfLoop,
    )?;
    b.holds(
        "augmenting the all-undecided labelling gives this network",
        same_network(&aug.framework, &af),
    );
    Ok(())
}

fn undecided_chain(b: &mut Builder, cfg: &SolveConfig) -> anyhow::Result<()> {
    for n in [1usize, 3] {
        let af = un_chain(n)?;
        let sols = solutions(&af, cfg)?;
        b.eq(&format!("n = {n}: number of solutions"), sols.len(), 1);
        if let Some(s) = sols.first() {
            b.close(
                &format!("n = {n}: sink"),
                s[0],
                0.5f64.powi(n as i32),
                TOLERANCE,
            );
            b.at_most(
                &format!("n = {n}: chain members at 1/2"),
                s[1..].iter().map(|v| (v - 0.5).abs()).fold(0.0, f64::max),
                TOLERANCE,
            );
        }
    }
    Ok(())
}

fn five_argument_distribution(b: &mut Builder, _: &SolveConfig) -> anyhow::Result<()> {
    let af = catalog::five_argument_network();
    let entries: Vec<MassEntry> = serde_json::from_str(catalog::FIVE_ARGUMENT_DISTRIBUTION)?;
    let (d, conversions) = distribution_from_json(&entries, 5, DEFAULT_DENOMINATOR_BOUND)?;
    b.eq(
        "float masses converted",
        conversions
            .iter()
            .map(|c| c.converted.clone())
            .collect::<Vec<_>>(),
        vec!["9/20".to_string()],
    );
    let p = |text: &str| -> anyhow::Result<Rational> {
        Ok(d.prob_of_formula(&Formula::parse(text, af.names())?)?)
    };
    b.rational("P(a1)", &p("a1")?, &rat(3, 4));
    b.rational("P(!a2 & !a5)", &p("!a2 & !a5")?, &rat(9, 20));

    let r = check_legitimate(&af, &d)?;
    b.eq("legitimate", r.legitimate, false);
    b.rational("defect at a3", &r.defects[2], &rat(-3, 20));
    for i in [0, 1, 3, 4] {
        b.rational(
            &format!("defect at {}", af.names()[i]),
            &r.defects[i],
            &rat(0, 1),
        );
    }

    let bounds = lemma5_bounds(&af, &d)?;
    let failing: Vec<String> = bounds
        .arguments
        .iter()
        .filter(|x| !x.holds())
        .map(|x| af.name(x.argument).to_string())
        .collect();
    b.eq(
        "arguments failing the marginal bounds",
        failing,
        vec!["a3".to_string()],
    );
    b.rational(
        "P(a3) − (1 − P(a2) − P(a5))",
        &bounds.arguments[2].lower_slack,
        &rat(-1, 20),
    );
    let t = p_justifiable(&af, &d)?;
    b.eq("p-justifiable", t.justifiable, false);
    Ok(())
}

fn mutual_pair_joint_target(b: &mut Builder, cfg: &SolveConfig) -> anyhow::Result<()> {
    let af = catalog::mutual_pair_joint_target();
    let d = product_distribution(&AtomProbability::new(vec![
        rat(1, 2),
        rat(1, 2),
        rat(1, 4),
    ])?)?;
    for m in 0..8u64 {
        let want = if m & 0b100 != 0 {
            rat(1, 16)
        } else {
            rat(3, 16)
        };
        let name = Model::new(3, m)?.to_bit_string();
        b.rational(&format!("product mass of {name}"), &d.mass_of(m), &want);
    }

    let two = exact(3, &[("100", rat(1, 2)), ("010", rat(1, 2))])?;
    let r = check_legitimate(&af, &two)?;
    b.eq("two-model distribution is legitimate", r.legitimate, true);
    b.rational("P(a3)", &two.marginal(2), &rat(0, 1));
    b.holds(
        "neither attacker is certain",
        two.marginal(0) != rat(1, 1) && two.marginal(1) != rat(1, 1),
    );
    b.rational(
        "P(a1 | a2)",
        &two.prob_of_formula(&Formula::parse("a1 | a2", af.names())?)?,
        &rat(1, 1),
    );
    b.holds(
        "forcing implications hold",
        lemma13_check(&af, &two)?.iter().all(|f| f.holds),
    );

    let mut grid = cfg.clone();
    grid.seeds = SeedStrategy::Grid { levels: 5 };
    let family = find_method1(&af, &grid)?;
    b.holds(
        "grid seeds find several members of the family",
        family.len() >= 2,
    );
    let worst = family
        .iter()
        .map(|ap| {
            let v = ap.values();
            (v[1] - (1.0 - v[0]))
                .abs()
                .max((v[2] - v[0] * (1.0 - v[0])).abs())
        })
        .fold(0.0, f64::max);
    b.at_most(
        "a2 = 1 − a1 and a3 = a1·(1 − a1) on every member",
        worst,
        TOLERANCE,
    );
    let all_legit = family
        .iter()
        .map(|ap| is_method1_legitimate(&af, ap, &TOLERANCE).map(|c| c.legitimate))
        .collect::<Result<Vec<_>, _>>()?;
    b.holds("every member is legitimate", all_legit.iter().all(|&l| l));
    Ok(())
}

fn doubly_attacked_pair(b: &mut Builder, _: &SolveConfig) -> anyhow::Result<()> {
    let af = catalog::doubly_attacked_pair();
    let cs = build_constraints(&af, DEFAULT_MODEL_CAP)?;
    b.eq(
        "row for a: P(a) = P(!a & !b)",
        cs.rows()[0].clone(),
        vec![-1, 1, 0, 1],
    );
    b.eq(
        "row for b: P(b) = P(!a & !b)",
        cs.rows()[1].clone(),
        vec![-1, 0, 1, 1],
    );

    let uniform = ModelDistribution::from_dense(2, vec![rat(1, 4); 4])?;
    let r = check_legitimate(&af, &uniform)?;
    b.eq("uniform is legitimate", r.legitimate, false);
    b.rational("uniform defect at a", &r.defects[0], &rat(1, 4));
    let bounds = lemma5_bounds(&af, &uniform)?;
    b.holds("uniform satisfies the marginal bounds", bounds.all_hold());

    let pins = [
        (Formula::parse("a & b", af.names())?, rat(0, 1)),
        (Formula::parse("!a & b", af.names())?, rat(1, 3)),
    ];
    match find_distribution(&af, &pins, DEFAULT_MODEL_CAP)? {
        DistributionSearch::Found(d) => {
            for (label, m, want) in [
                ("a & b", "11", rat(0, 1)),
                ("!a & b", "01", rat(1, 3)),
                ("!a & !b", "00", rat(1, 3)),
                ("a & !b", "10", rat(1, 3)),
            ] {
                b.rational(
                    &format!("pinned mass of {label}"),
                    &d.mass_of(bits(m)),
                    &want,
                );
            }
        }
        DistributionSearch::Infeasible(_) => b.holds("pins are feasible", false),
    }
    Ok(())
}

fn two_self_attackers_one_target(b: &mut Builder, _: &SolveConfig) -> anyhow::Result<()> {
    let af = catalog::two_self_attackers_one_target();
    let ap = AtomProbability::new(vec![rat(1, 2), rat(1, 2), rat(1, 4)])?;
    let d = product_distribution(&ap)?;
    for m in 0..8u64 {
        let want = if m & 0b100 != 0 {
            rat(1, 16)
        } else {
            rat(3, 16)
        };
        let name = Model::new(3, m)?.to_bit_string();
        b.rational(&format!("product mass of {name}"), &d.mass_of(m), &want);
    }
    b.holds(
        "(1/2, 1/2, 1/4) is legitimate",
        is_method1_legitimate(&af, &ap, &rat(0, 1))?.legitimate,
    );
    b.rational(
        "P(!a & !b)",
        &d.prob_of_formula(&Formula::parse("!a & !b", af.names())?)?,
        &rat(1, 4),
    );

    let p2 = exact(3, &[("100", rat(1, 2)), ("010", rat(1, 2))])?;
    b.rational(
        "P2(a | b)",
        &p2.prob_of_formula(&Formula::parse("a | b", af.names())?)?,
        &rat(1, 1),
    );
    b.eq(
        "graded labelling of P2",
        gr_labelling(&af, &p2)?.to_assignments(&af),
        "a=und,b=und,x=out".to_string(),
    );
    Ok(())
}

fn two_self_attackers_two_targets(b: &mut Builder, _: &SolveConfig) -> anyhow::Result<()> {
    let af = catalog::two_self_attackers_two_targets();
    let pins = [
        (Formula::parse("x1", af.names())?, rat(1, 4)),
        (Formula::parse("x2", af.names())?, rat(0, 1)),
    ];
    match find_distribution(&af, &pins, DEFAULT_MODEL_CAP)? {
        DistributionSearch::Found(_) => b.holds("P(x1) = 1/4, P(x2) = 0 is infeasible", false),
        DistributionSearch::Infeasible(cert) => {
            b.holds("P(x1) = 1/4, P(x2) = 0 is infeasible", true);
            let lp = build_constraints(&af, DEFAULT_MODEL_CAP)?.to_program(&pins)?;
            b.holds("certificate verifies", cert.verify(&lp));
        }
    }
    if let Some(d) = find_distribution(&af, &[], DEFAULT_MODEL_CAP)?.found() {
        b.rational(
            "found distribution: P(x1) − P(x2)",
            &(d.marginal(2) - d.marginal(3)),
            &rat(0, 1),
        );
    } else {
        b.holds("some distribution is found", false);
    }
    let vertices = enumerate_vertices(&af, 64)?;
    b.holds("vertices were enumerated", !vertices.is_empty());
    b.holds(
        "every vertex has P(x1) = P(x2)",
        vertices.iter().all(|d| d.marginal(2) == d.marginal(3)),
    );

    let asymmetric = exact(
        4,
        &[
            ("0010", rat(1, 4)),
            ("1000", rat(1, 4)),
            ("0100", rat(1, 4)),
            ("1100", rat(1, 4)),
        ],
    )?;
    let t = p_justifiable(&af, &asymmetric)?;
    b.eq(
        "asymmetric distribution is p-justifiable",
        t.justifiable,
        true,
    );
    b.eq("asymmetric distribution is legitimate", t.legitimate, false);
    Ok(())
}

fn two_mutual_pairs_approximation(b: &mut Builder, cfg: &SolveConfig) -> anyhow::Result<()> {
    let af = catalog::two_mutual_pairs();
    let lab = labelling(&af, "a=in,b=out,c=und,d=und")?;
    let aug = augment_und(&af, &lab, AugmentMode::SelfLoop)?;
    let with_und = catalog::two_mutual_pairs_with_und();
    b.holds(
        "augmentation adds u attacking c and d",
        same_network(&aug.framework, &with_und),
    );

    let pinned = EquationSystem::with_pins(
        &with_und,
        EquationKind::Inv,
        &[(Arg(0), 1.0), (Arg(1), 0.0)],
    )?;
    let sols = solve(&pinned, cfg)?;
    b.eq("pinned solutions", sols.len(), 1);
    if let Some(s) = sols.first() {
        let v = s.valuation.values();
        for (i, want) in [(2, 1.0 / 3.0), (3, 1.0 / 3.0), (4, 0.5)] {
            b.close(&with_und.names()[i], v[i], want, TOLERANCE);
        }
    }

    let r = approximate_plambda(&af, &lab, 1, DEFAULT_ENUMERATION_CAP, cfg)?;
    match &r.distribution {
        ApproxDistribution::Exact(d) => {
            b.holds("values recovered exactly", true);
            for (cd, want) in [
                ("11", rat(1, 9)),
                ("10", rat(2, 9)),
                ("01", rat(2, 9)),
                ("00", rat(4, 9)),
            ] {
                b.rational(
                    &format!("mass of a & !b with c,d = {cd}"),
                    &d.mass_of(bits(&format!("10{cd}"))),
                    &want,
                );
            }
            b.rational("total", &d.total(), &rat(1, 1));
        }
        ApproxDistribution::Float(_) => b.holds("values recovered exactly", false),
    }
    let deep = approximate_plambda(&af, &lab, 20, DEFAULT_ENUMERATION_CAP, cfg)?;
    b.at_most(
        "n = 20 maximum residual",
        deep.max_residual,
        0.5f64.powi(20) + 1e-8,
    );
    Ok(())
}

fn mutual_pair_and_self_attacker_pair_approximation(
    b: &mut Builder,
    cfg: &SolveConfig,
) -> anyhow::Result<()> {
    let af = catalog::mutual_pair_and_self_attacker_pair();
    let lab = labelling(&af, "a=in,b=out,c=und,d=und")?;
    let r = approximate_plambda(&af, &lab, 1, DEFAULT_ENUMERATION_CAP, cfg)?;
    let mut masses: Vec<f64> = und_pattern_masses(&r, &lab)
        .into_iter()
        .map(|p| p.1)
        .collect();
    masses.sort_by(f64::total_cmp);
    for (got, want) in masses.iter().zip([0.09, 0.146, 0.292, 0.472]) {
        b.close(&format!("mass near {want}"), *got, want, PRINTED_TOLERANCE);
    }
    b.close("total", masses.iter().sum(), 1.0, TOLERANCE);
    b.holds("residual within the bound", r.within_bound);
    let (c, d) = (r.und_solution[0].1, r.und_solution[1].1);
    b.shown(
        "c",
        format!("{c:.6}"),
        "≈ 0.236".into(),
        (c - 0.236).abs() <= PRINTED_TOLERANCE,
    );
    b.shown(
        "d",
        format!("{d:.6}"),
        "≈ 0.382".into(),
        (d - 0.382).abs() <= PRINTED_TOLERANCE,
    );
    Ok(())
}

fn joint_attack_instantiation(b: &mut Builder, _: &SolveConfig) -> anyhow::Result<()> {
    let json: InstantiatedNetworkJson = serde_json::from_str(catalog::JOINT_ATTACK_INSTANTIATION)?;
    let net = json.to_network()?;
    let r = eqarg_core::method2::instantiate_and_solve(&net, &[], DEFAULT_MODEL_CAP)?;
    match r.outcome.found() {
        Some(d) => {
            b.rational("P(a3)", &d.marginal(2), &rat(0, 1));
            b.rational(
                "P(a1 | a2)",
                &d.prob_of_formula(&Formula::parse("a1 | a2", &net.atoms)?)?,
                &rat(1, 1),
            );
        }
        None => b.holds("constraints are feasible", false),
    }
    let third = (Formula::parse("a1", &net.atoms)?, rat(1, 3));
    let pinned = eqarg_core::method2::instantiate_and_solve(&net, &[third], DEFAULT_MODEL_CAP)?;
    match pinned.outcome.found() {
        Some(d) => {
            b.rational(
                "with P(a1) = 1/3: P(a1 | a2)",
                &d.prob_of_formula(&Formula::parse("a1 | a2", &net.atoms)?)?,
                &rat(1, 1),
            );
            b.rational("with P(a1) = 1/3: P(a3)", &d.marginal(2), &rat(0, 1));
        }
        None => b.holds("P(a1) = 1/3 is feasible", false),
    }
    for (name, af) in catalog::all() {
        let id = InstantiatedNetwork::identity(af.clone()).constraints(DEFAULT_MODEL_CAP)?;
        let direct = build_constraints(&af, DEFAULT_MODEL_CAP)?;
        b.holds(
            &format!("identity instantiation of {name} matches"),
            id == direct,
        );
    }
    Ok(())
}
