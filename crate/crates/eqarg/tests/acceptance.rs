//! Acceptance suite: one line per criterion, checked against oracles written
//! here from first principles.

use std::time::Instant;

use eqarg::catalog;
use eqarg::io::{
    distribution_from_json, InstantiatedNetworkJson, MassEntry, DEFAULT_DENOMINATOR_BOUND,
};
use eqarg::parallel;
use eqarg_core::constructions::{
    approximate_plambda, augment_und, un_chain, ApproxDistribution, AugmentMode,
};
use eqarg_core::distribution::{ModelDistribution, DEFAULT_MODEL_CAP};
use eqarg_core::equations::exact_max_solutions;
use eqarg_core::method2::{
    build_constraints, check_legitimate, enumerate_vertices, find_distribution,
    instantiate_and_solve, plambda_construct, InstantiatedNetwork,
};
use eqarg_core::rational::{rat, Rational};
use eqarg_core::solver::{realize_labelling, seeds, solve_from};
use eqarg_core::thimm::p_justifiable;
use eqarg_core::{
    solve, ArgumentationFramework, EquationKind, EquationSystem, Formula, KleeneValue, Label,
    Labelling, Model, SolveConfig,
};
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const CAP: usize = 14;

// ---------------------------------------------------------------- oracles

fn legal(af: &ArgumentationFramework, labels: &[Label]) -> bool {
    af.arguments().all(|x| {
        let att = af.attackers(x);
        match labels[x.0] {
            Label::In => att.iter().all(|y| labels[y.0] == Label::Out),
            Label::Out => att.iter().any(|y| labels[y.0] == Label::In),
            Label::Und => {
                !att.iter().any(|y| labels[y.0] == Label::In)
                    && att.iter().any(|y| labels[y.0] == Label::Und)
            }
        }
    })
}

fn complete(af: &ArgumentationFramework) -> Vec<Vec<Label>> {
    let n = af.len();
    (0..3usize.pow(n as u32))
        .map(|code| {
            let mut k = code;
            (0..n)
                .map(|_| {
                    let l = [Label::In, Label::Out, Label::Und][k % 3];
                    k /= 3;
                    l
                })
                .collect::<Vec<_>>()
        })
        .filter(|l| legal(af, l))
        .collect()
}

/// Complete labellings whose in-set is maximal.
fn preferred(af: &ArgumentationFramework) -> Vec<Vec<Label>> {
    let all = complete(af);
    let ins = |l: &[Label]| -> Vec<bool> { l.iter().map(|&x| x == Label::In).collect() };
    all.iter()
        .filter(|l| {
            let a = ins(l);
            !all.iter().any(|m| {
                let b = ins(m);
                b != a && a.iter().zip(&b).all(|(&x, &y)| !x || y)
            })
        })
        .cloned()
        .collect()
}

fn halves(l: &[Label]) -> Vec<KleeneValue> {
    l.iter()
        .map(|x| match x {
            Label::In => KleeneValue::True,
            Label::Out => KleeneValue::False,
            Label::Und => KleeneValue::Half,
        })
        .collect()
}

fn project(v: &[f64]) -> Vec<Label> {
    v.iter()
        .map(|&x| {
            if x >= 1.0 - 1e-9 {
                Label::In
            } else if x <= 1e-9 {
                Label::Out
            } else {
                Label::Und
            }
        })
        .collect()
}

/// `P(x) − P(no attacker of x holds)`, summed model by model.
fn defects(af: &ArgumentationFramework, d: &ModelDistribution) -> Vec<Rational> {
    af.arguments()
        .map(|x| {
            let mut acc = Rational::zero();
            for (m, p) in d.entries() {
                if m >> x.0 & 1 == 1 {
                    acc += p;
                }
                if af.attackers(x).iter().all(|y| m >> y.0 & 1 == 0) {
                    acc -= p;
                }
            }
            acc
        })
        .collect()
}

fn float_residual(af: &ArgumentationFramework, d: &ModelDistribution<f64>) -> f64 {
    af.arguments()
        .map(|x| {
            let mut acc = 0.0;
            for (m, p) in d.entries() {
                if m >> x.0 & 1 == 1 {
                    acc += p;
                }
                if af.attackers(x).iter().all(|y| m >> y.0 & 1 == 0) {
                    acc -= p;
                }
            }
            f64::abs(acc)
        })
        .fold(0.0, f64::max)
}

fn marginals(d: &ModelDistribution, n: usize) -> Vec<Rational> {
    (0..n)
        .map(|i| {
            d.entries()
                .filter(|(m, _)| m >> i & 1 == 1)
                .map(|(_, p)| p.clone())
                .sum()
        })
        .collect()
}

/// `P(x) ≤ 1 − P(y)` for each attacker and `P(x) ≥ 1 − Σ P(y)`.
fn justifiable(af: &ArgumentationFramework, d: &ModelDistribution) -> bool {
    let p = marginals(d, af.len());
    let one = Rational::one();
    af.arguments().all(|x| {
        let att = af.attackers(x);
        let upper = att.iter().all(|y| p[x.0] <= &one - &p[y.0]);
        let sum: Rational = att.iter().map(|y| p[y.0].clone()).sum();
        upper && p[x.0] >= &one - sum
    })
}

fn rows(af: &ArgumentationFramework) -> Vec<Vec<i8>> {
    af.arguments()
        .map(|x| {
            (0..1u64 << af.len())
                .map(|m| {
                    let holds = (m >> x.0 & 1) as i8;
                    let unattacked = af.attackers(x).iter().all(|y| m >> y.0 & 1 == 0) as i8;
                    holds - unattacked
                })
                .collect()
        })
        .collect()
}

// ---------------------------------------------------------------- corpora

fn random_framework(rng: &mut StdRng, max: usize) -> ArgumentationFramework {
    let n = rng.gen_range(1..=max);
    let density = rng.gen_range(0.1..0.5);
    let names: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
    let mut attacks = Vec::new();
    for x in &names {
        for y in &names {
            if rng.gen_bool(density) {
                attacks.push((x.clone(), y.clone()));
            }
        }
    }
    ArgumentationFramework::from_parts(&names, &attacks).unwrap()
}

fn corpus(seed: u64, count: usize, max: usize) -> Vec<ArgumentationFramework> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_framework(&mut rng, max))
        .collect()
}

fn bits(s: &str) -> u64 {
    Model::from_bit_string(s).unwrap().bits()
}

fn dist(atoms: usize, masses: &[(&str, Rational)]) -> ModelDistribution {
    ModelDistribution::new(atoms, masses.iter().map(|(m, p)| (bits(m), p.clone()))).unwrap()
}

fn lab(af: &ArgumentationFramework, text: &str) -> Labelling {
    Labelling::parse_assignments(af, text).unwrap()
}

// ---------------------------------------------------------------- criteria

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn golden_product_values() -> Outcome {
    let cfg = SolveConfig::default();
    let af = catalog::self_attacker_pair_with_und();
    let golden = [0.5, 5f64.sqrt() - 2.0, (3.0 - 5f64.sqrt()) / 2.0];
    let sols =
        solve(&EquationSystem::new(&af, EquationKind::Inv), &cfg).map_err(|e| e.to_string())?;
    let best = sols
        .iter()
        .map(|s| {
            s.valuation
                .values()
                .iter()
                .zip(&golden)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        })
        .fold(f64::INFINITY, f64::min);
    ensure(best <= 1e-9, format!("closest solution is {best:e} away"))?;

    let af = catalog::self_attacker_pair();
    let sys = EquationSystem::new(&af, EquationKind::Inv);
    let mut converged = 0;
    for seed in seeds(&sys, &cfg) {
        let o = solve_from(&sys, &seed, &cfg);
        if o.converged {
            converged += 1;
            ensure(
                o.values[0].abs() <= 1e-9 && (o.values[1] - 1.0).abs() <= 1e-9,
                format!("seed {seed:?} reached {:?}", o.values),
            )?;
        }
    }
    ensure(converged > 0, "no labelling seed converged")?;
    Ok(format!(
        "max error {best:.1e}; {converged} seeds all reach (0, 1)"
    ))
}

fn chain_sink() -> Outcome {
    let cfg = SolveConfig::default();
    let mut worst = 0.0f64;
    for n in [1usize, 3, 10] {
        let af = un_chain(n).map_err(|e| e.to_string())?;
        let sols =
            solve(&EquationSystem::new(&af, EquationKind::Inv), &cfg).map_err(|e| e.to_string())?;
        ensure(!sols.is_empty(), format!("n = {n}: no solution"))?;
        for s in &sols {
            worst = worst.max((s.valuation.values()[0] - 0.5f64.powi(n as i32)).abs());
        }
    }
    ensure(worst <= 1e-12, format!("sink off by {worst:e}"))?;
    Ok(format!("max sink error {worst:.1e}"))
}

fn max_equation_oracle(corpus: &[ArgumentationFramework]) -> Outcome {
    let mut mismatches = 0;
    for af in corpus {
        let mut lib = exact_max_solutions(af, CAP).map_err(|e| e.to_string())?;
        lib.sort();
        let mut want: Vec<_> = complete(af).iter().map(|l| halves(l)).collect();
        want.sort();
        if lib != want {
            mismatches += 1;
        }
    }
    ensure(mismatches == 0, format!("{mismatches} mismatches"))?;
    Ok(format!("{} frameworks, 0 mismatches", corpus.len()))
}

fn projections_are_legal(corpus: &[ArgumentationFramework]) -> Outcome {
    let cfg = SolveConfig::default();
    let (mut checked, mut violations) = (0, 0);
    for af in corpus {
        let sys = EquationSystem::new(af, EquationKind::Inv);
        for s in parallel::solve(&sys, &cfg, None).map_err(|e| e.to_string())? {
            if s.residual <= 1e-10 {
                checked += 1;
                if !legal(af, &project(s.valuation.values())) {
                    violations += 1;
                }
            }
        }
    }
    ensure(
        violations == 0,
        format!("{violations} of {checked} solutions project to illegal labellings"),
    )?;
    Ok(format!("{checked} solutions, 0 violations"))
}

fn preferred_are_realized(corpus: &[ArgumentationFramework]) -> Outcome {
    let cfg = SolveConfig::default();
    let (mut total, mut failures) = (0, 0);
    for af in corpus {
        for labels in preferred(af) {
            total += 1;
            let l = Labelling::new(labels.clone());
            let ok = realize_labelling(af, &l, &cfg)
                .map_err(|e| e.to_string())?
                .is_some_and(|s| project(s.valuation.values()) == labels && s.residual <= 1e-9);
            if !ok {
                failures += 1;
            }
        }
    }
    ensure(
        failures == 0,
        format!("{failures} of {total} preferred labellings not realized"),
    )?;
    Ok(format!("{total} preferred labellings, 0 failures"))
}

fn method2_golden() -> Outcome {
    let five = catalog::five_argument_network();
    let entries: Vec<MassEntry> =
        serde_json::from_str(catalog::FIVE_ARGUMENT_DISTRIBUTION).unwrap();
    let (d, _) = distribution_from_json(&entries, 5, DEFAULT_DENOMINATOR_BOUND)
        .map_err(|e| e.to_string())?;
    let r = check_legitimate(&five, &d).map_err(|e| e.to_string())?;
    ensure(
        !r.legitimate && r.defects[2] == rat(-3, 20),
        "five-argument distribution",
    )?;
    ensure(
        defects(&five, &d) == r.defects,
        "five-argument defects disagree with the oracle",
    )?;

    let joint = catalog::mutual_pair_joint_target();
    let two = dist(3, &[("100", rat(1, 2)), ("010", rat(1, 2))]);
    let r = check_legitimate(&joint, &two).map_err(|e| e.to_string())?;
    ensure(
        r.legitimate && r.defects.iter().all(Zero::is_zero),
        "two-model distribution",
    )?;
    ensure(
        defects(&joint, &two).iter().all(Zero::is_zero),
        "two-model oracle",
    )?;

    let pair = catalog::doubly_attacked_pair();
    let uniform = ModelDistribution::from_dense(2, vec![rat(1, 4); 4]).unwrap();
    let r = check_legitimate(&pair, &uniform).map_err(|e| e.to_string())?;
    ensure(
        !r.legitimate && r.defects[0] == rat(1, 4),
        "uniform distribution",
    )?;
    ensure(defects(&pair, &uniform) == r.defects, "uniform oracle")?;

    let thirds = dist(
        2,
        &[("01", rat(1, 3)), ("00", rat(1, 3)), ("10", rat(1, 3))],
    );
    let r = check_legitimate(&pair, &thirds).map_err(|e| e.to_string())?;
    ensure(
        r.legitimate && r.defects.iter().all(Zero::is_zero),
        "thirds distribution",
    )?;
    Ok("defects -3/20, 0, 1/4, 0 exactly".into())
}

fn construction_is_legitimate(corpus: &[ArgumentationFramework]) -> Outcome {
    let (mut total, mut failures) = (0, 0);
    for af in corpus {
        for labels in complete(af) {
            total += 1;
            let d = plambda_construct(af, &Labelling::new(labels.clone()))
                .map_err(|e| e.to_string())?;
            let want: Vec<Rational> = labels
                .iter()
                .map(|l| match l {
                    Label::In => rat(1, 1),
                    Label::Out => rat(0, 1),
                    Label::Und => rat(1, 2),
                })
                .collect();
            let ok = defects(af, &d).iter().all(Zero::is_zero)
                && check_legitimate(af, &d)
                    .map_err(|e| e.to_string())?
                    .legitimate
                && marginals(&d, af.len()) == want
                && d.total() == Rational::one();
            if !ok {
                failures += 1;
            }
        }
    }
    ensure(failures == 0, format!("{failures} of {total} labellings"))?;
    Ok(format!("{total} complete labellings, 0 failures"))
}

fn equal_marginal_rigidity() -> Outcome {
    let af = catalog::two_self_attackers_two_targets();
    let mut produced = enumerate_vertices(&af, 64).map_err(|e| e.to_string())?;
    produced.extend(
        find_distribution(&af, &[], DEFAULT_MODEL_CAP)
            .map_err(|e| e.to_string())?
            .found()
            .cloned(),
    );
    for pin in ["a=1/2", "a=1/4", "a & b=1/8", "x1=1/3"] {
        let p = eqarg::io::parse_pin(pin, af.names()).map_err(|e| e.to_string())?;
        produced.extend(
            find_distribution(&af, &[p], DEFAULT_MODEL_CAP)
                .map_err(|e| e.to_string())?
                .found()
                .cloned(),
        );
    }
    ensure(produced.len() > 2, "too few distributions produced")?;
    for d in &produced {
        let p = marginals(d, 4);
        ensure(p[2] == p[3], "a distribution has P(x1) != P(x2)")?;
    }
    let pins = [
        (Formula::parse("x1", af.names()).unwrap(), rat(1, 4)),
        (Formula::parse("x2", af.names()).unwrap(), rat(0, 1)),
    ];
    let search = find_distribution(&af, &pins, DEFAULT_MODEL_CAP).map_err(|e| e.to_string())?;
    ensure(
        search.found().is_none(),
        "P(x1) = 1/4, P(x2) = 0 was found feasible",
    )?;
    Ok(format!(
        "{} distributions with P(x1) = P(x2); asymmetric pins infeasible",
        produced.len()
    ))
}

fn approximation_golden() -> Outcome {
    let cfg = SolveConfig::default();
    let pairs = catalog::two_mutual_pairs();
    let l = lab(&pairs, "a=in,b=out,c=und,d=und");
    let r = approximate_plambda(&pairs, &l, 1, CAP, &cfg).map_err(|e| e.to_string())?;
    let ApproxDistribution::Exact(d) = &r.distribution else {
        return Err("two mutual pairs: values not recovered exactly".into());
    };
    for (m, want) in [
        ("1011", rat(1, 9)),
        ("1010", rat(2, 9)),
        ("1001", rat(2, 9)),
        ("1000", rat(4, 9)),
    ] {
        ensure(d.mass_of(bits(m)) == want, format!("mass of {m}"))?;
    }

    let mixed = catalog::mutual_pair_and_self_attacker_pair();
    let l2 = lab(&mixed, "a=in,b=out,c=und,d=und");
    let r = approximate_plambda(&mixed, &l2, 1, CAP, &cfg).map_err(|e| e.to_string())?;
    let d = r.distribution.to_f64();
    let mut masses: Vec<f64> = ["1000", "1010", "1001", "1011"]
        .iter()
        .map(|m| d.mass_of(bits(m)))
        .collect();
    masses.sort_by(f64::total_cmp);
    let worst = masses
        .iter()
        .zip([0.09, 0.146, 0.292, 0.472])
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    ensure(worst <= 5e-3, format!("printed masses off by {worst}"))?;
    let sum: f64 = masses.iter().sum();
    ensure((sum - 1.0).abs() <= 1e-9, format!("mass sum {sum}"))?;

    let mut deepest = 0.0f64;
    for (af, l) in [(&pairs, &l), (&mixed, &l2)] {
        let r = approximate_plambda(af, l, 20, CAP, &cfg).map_err(|e| e.to_string())?;
        deepest = deepest.max(float_residual(af, &r.distribution.to_f64()));
    }
    let bound = 0.5f64.powi(20) + 1e-8;
    ensure(
        deepest <= bound,
        format!("n = 20 residual {deepest:e} > {bound:e}"),
    )?;
    Ok(format!(
        "exact ninths; printed masses within {worst:.1e}; n = 20 residual {deepest:.3e}"
    ))
}

fn augmentation_is_preferred(corpus: &[ArgumentationFramework]) -> Outcome {
    let (mut total, mut failures) = (0, 0);
    for af in corpus {
        let pref = preferred(af);
        for labels in complete(af) {
            if pref.contains(&labels) {
                continue;
            }
            for mode in [AugmentMode::SelfLoop, AugmentMode::Chain(1)] {
                total += 1;
                let aug = augment_und(af, &Labelling::new(labels.clone()), mode)
                    .map_err(|e| e.to_string())?;
                if !preferred(&aug.framework).contains(&aug.labelling.labels().to_vec()) {
                    failures += 1;
                }
            }
        }
    }
    ensure(
        failures == 0,
        format!("{failures} of {total} augmentations"),
    )?;
    Ok(format!(
        "{total} augmentations of non-preferred labellings, 0 failures"
    ))
}

fn thimm_comparison(corpus: &[ArgumentationFramework]) -> Outcome {
    let five = catalog::five_argument_network();
    let entries: Vec<MassEntry> =
        serde_json::from_str(catalog::FIVE_ARGUMENT_DISTRIBUTION).unwrap();
    let (d, _) = distribution_from_json(&entries, 5, DEFAULT_DENOMINATOR_BOUND)
        .map_err(|e| e.to_string())?;
    let t = p_justifiable(&five, &d).map_err(|e| e.to_string())?;
    let p = marginals(&d, 5);
    ensure(
        p[2] == rat(3, 10) && rat(1, 1) - &p[1] - &p[4] == rat(35, 100),
        "a3 marginals",
    )?;
    let failing: Vec<usize> = t.failures().map(|b| b.argument.0).collect();
    ensure(
        !t.justifiable && failing == [2] && !justifiable(&five, &d),
        "five-argument verdict",
    )?;

    let two = catalog::two_self_attackers_two_targets();
    let asym = dist(
        4,
        &[
            ("0010", rat(1, 4)),
            ("1000", rat(1, 4)),
            ("0100", rat(1, 4)),
            ("1100", rat(1, 4)),
        ],
    );
    let t = p_justifiable(&two, &asym).map_err(|e| e.to_string())?;
    ensure(
        t.justifiable && !t.legitimate && justifiable(&two, &asym),
        "asymmetric distribution",
    )?;

    let (mut samples, mut exceptions) = (0, 0);
    let mut rng = StdRng::seed_from_u64(11);
    for af in corpus.iter().filter(|af| af.len() <= 4) {
        let mut pool = enumerate_vertices(af, 16).map_err(|e| e.to_string())?;
        for labels in complete(af) {
            pool.push(plambda_construct(af, &Labelling::new(labels)).map_err(|e| e.to_string())?);
        }
        let mixes: Vec<ModelDistribution> = (0..pool.len())
            .filter_map(|_| {
                let a = &pool[rng.gen_range(0..pool.len())];
                let b = &pool[rng.gen_range(0..pool.len())];
                let w = rat(rng.gen_range(1..4), 4);
                let dense: Vec<Rational> = (0..1u64 << af.len())
                    .map(|m| &w * a.mass_of(m) + (Rational::one() - &w) * b.mass_of(m))
                    .collect();
                ModelDistribution::from_dense(af.len(), dense).ok()
            })
            .collect();
        pool.extend(mixes);
        for d in &pool {
            if check_legitimate(af, d)
                .map_err(|e| e.to_string())?
                .legitimate
            {
                samples += 1;
                let lib = p_justifiable(af, d).map_err(|e| e.to_string())?.justifiable;
                if !lib || !justifiable(af, d) {
                    exceptions += 1;
                }
            }
        }
    }
    ensure(samples > 0, "no legitimate samples")?;
    ensure(
        exceptions == 0,
        format!("{exceptions} of {samples} legitimate samples not p-justifiable"),
    )?;
    Ok(format!(
        "a3 fails (3/10 < 7/20); asymmetric diverges; {samples} legitimate samples, 0 exceptions"
    ))
}

fn instantiated_network(corpus: &[ArgumentationFramework]) -> Outcome {
    let json: InstantiatedNetworkJson =
        serde_json::from_str(catalog::JOINT_ATTACK_INSTANTIATION).unwrap();
    let net = json.to_network().map_err(|e| e.to_string())?;
    let r = instantiate_and_solve(&net, &[], DEFAULT_MODEL_CAP).map_err(|e| e.to_string())?;
    let d = r
        .outcome
        .found()
        .ok_or("instantiated constraints infeasible")?;
    let either: Rational = d
        .entries()
        .filter(|(m, _)| m & 0b011 != 0)
        .map(|(_, p)| p.clone())
        .sum();
    ensure(
        marginals(d, 3)[2].is_zero() && either.is_one(),
        "P(a3) = 0 and P(a1 | a2) = 1",
    )?;

    let mut compared = 0;
    for af in corpus.iter().chain(catalog::all().iter().map(|p| &p.1)) {
        let id = InstantiatedNetwork::identity(af.clone())
            .constraints(DEFAULT_MODEL_CAP)
            .map_err(|e| e.to_string())?;
        let direct = build_constraints(af, DEFAULT_MODEL_CAP).map_err(|e| e.to_string())?;
        ensure(id == direct, "identity instantiation differs")?;
        ensure(
            direct.rows() == rows(af).as_slice(),
            "constraint rows differ from the oracle",
        )?;
        compared += 1;
    }
    Ok(format!(
        "feasible with P(a3) = 0, P(a1 | a2) = 1; {compared} identity instantiations match"
    ))
}

fn main() {
    let large = corpus(0xA11CE, 300, 6);
    let small = corpus(0xB0B, 100, 5);

    let criteria: Vec<Criterion<'_>> = vec![
        (
            "golden product-form values",
            Box::new(golden_product_values),
        ),
        ("chain sink equals 2^-n", Box::new(chain_sink)),
        (
            "exact max solutions equal complete labellings",
            Box::new(|| max_equation_oracle(&large)),
        ),
        (
            "product-form solutions project to legal labellings",
            Box::new(|| projections_are_legal(&large)),
        ),
        (
            "preferred labellings are realized",
            Box::new(|| preferred_are_realized(&small)),
        ),
        ("legitimacy golden checks", Box::new(method2_golden)),
        (
            "labelling construction is legitimate",
            Box::new(|| construction_is_legitimate(&small)),
        ),
        ("equal-marginal rigidity", Box::new(equal_marginal_rigidity)),
        (
            "approximate construction golden values",
            Box::new(approximation_golden),
        ),
        (
            "augmentation makes labellings preferred",
            Box::new(|| augmentation_is_preferred(&small)),
        ),
        (
            "p-justifiability comparison",
            Box::new(|| thimm_comparison(&small)),
        ),
        (
            "instantiated network",
            Box::new(|| instantiated_network(&small)),
        ),
    ];

    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!(
                "PASS criterion {:>2}: {name} ({detail}) [{secs:.1}s]",
                i + 1
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "FAIL criterion {:>2}: {name} ({detail}) [{secs:.1}s]",
                    i + 1
                );
            }
        }
    }
    println!(
        "{}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
