use eqarg_core::distribution::ModelDistribution;
use eqarg_core::equations::exact_max_solutions;
use eqarg_core::labelling::enumerate_complete_labellings;
use eqarg_core::method1::{is_method1_legitimate, product_distribution, AtomProbability};
use eqarg_core::method2::{
    check_legitimate, enumerate_vertices, lemma13_check, lemma5_bounds, plambda_construct,
};
use eqarg_core::rational::{rat, Rational};
use eqarg_core::{
    solve, translate_theory, ArgumentationFramework, EquationKind, EquationSystem, Formula,
    KleeneValue, Label, Labelling, Model, SolveConfig,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn framework(n: usize, mask: u64) -> ArgumentationFramework {
    let names: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
    let mut attacks = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if mask >> (i * n + j) & 1 == 1 {
                attacks.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    ArgumentationFramework::from_parts(&names, &attacks).unwrap()
}

fn frameworks(max: usize) -> impl Strategy<Value = ArgumentationFramework> {
    (1..=max).prop_flat_map(|n| {
        let bits = n * n;
        (Just(n), 0..(1u64 << bits)).prop_map(|(n, m)| framework(n, m))
    })
}

/// Caminada conditions, written directly from the definition.
fn oracle_legal(af: &ArgumentationFramework, labels: &[Label]) -> bool {
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

fn oracle_complete(af: &ArgumentationFramework) -> Vec<Vec<Label>> {
    let n = af.len();
    let mut out = Vec::new();
    for code in 0..3usize.pow(n as u32) {
        let mut k = code;
        let labels: Vec<Label> = (0..n)
            .map(|_| {
                let l = [Label::In, Label::Out, Label::Und][k % 3];
                k /= 3;
                l
            })
            .collect();
        if oracle_legal(af, &labels) {
            out.push(labels);
        }
    }
    out.sort();
    out
}

fn to_halves(labels: &[Label]) -> Vec<KleeneValue> {
    labels
        .iter()
        .map(|l| match l {
            Label::In => KleeneValue::True,
            Label::Out => KleeneValue::False,
            Label::Und => KleeneValue::Half,
        })
        .collect()
}

/// Legitimacy of the product distribution, computed without the library:
/// `P(x) = Π (1 − p_y)` holds because atoms are independent.
fn oracle_product_defects(af: &ArgumentationFramework, p: &[Rational]) -> Vec<Rational> {
    af.arguments()
        .map(|x| {
            let rhs = af
                .attackers(x)
                .iter()
                .fold(Rational::one(), |acc, y| acc * (Rational::one() - &p[y.0]));
            &p[x.0] - rhs
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn text_roundtrip(af in frameworks(6)) {
        let text = af.to_text();
        let back = ArgumentationFramework::parse(&text).unwrap();
        prop_assert_eq!(&back, &af);
        prop_assert_eq!(back.to_text(), text);
    }

    #[test]
    fn enumeration_matches_oracle(af in frameworks(6)) {
        let lib = enumerate_complete_labellings(&af, 14).unwrap();
        let lib: Vec<Vec<Label>> = lib.labellings.iter().map(|l| l.labels().to_vec()).collect();
        prop_assert_eq!(lib, oracle_complete(&af));
    }

    #[test]
    fn legal_iff_exact_max_equation(af in frameworks(6)) {
        let mut exact = exact_max_solutions(&af, 14).unwrap();
        exact.sort();
        let mut want: Vec<Vec<KleeneValue>> = oracle_complete(&af).iter().map(|l| to_halves(l)).collect();
        want.sort();
        prop_assert_eq!(exact, want);
    }

    #[test]
    fn grounded_is_least(af in frameworks(6)) {
        let all = enumerate_complete_labellings(&af, 14).unwrap();
        prop_assert!(!all.is_empty());
        let grounded = all.grounded().in_set();
        for l in &all.labellings {
            for a in &grounded {
                prop_assert_eq!(l.get(*a), Label::In);
            }
        }
    }

    #[test]
    fn classical_theory_matches_two_valued_labellings(af in frameworks(5)) {
        let theory = translate_theory(&af);
        for bits in 0..(1u64 << af.len()) {
            let m = Model::new(af.len(), bits).unwrap();
            let sat = theory.iter().all(|f| f.classical_eval(&m).unwrap());
            let labels: Vec<Label> = (0..af.len())
                .map(|i| if m.get(i) { Label::In } else { Label::Out })
                .collect();
            prop_assert_eq!(sat, oracle_legal(&af, &labels), "model {}", m.to_bit_string());
        }
    }

    #[test]
    fn kleene_theory_matches_labellings(af in frameworks(5)) {
        let theory = translate_theory(&af);
        for labels in all_labellings(af.len()) {
            let v = to_halves(&labels);
            let sat = theory.iter().all(|f| f.kleene_satisfies(&v).unwrap());
            prop_assert_eq!(sat, oracle_legal(&af, &labels));
        }
    }

    #[test]
    fn solver_solutions_project_to_legal(af in frameworks(5)) {
        let sys = EquationSystem::new(&af, EquationKind::Inv);
        let complete = oracle_complete(&af);
        for s in solve(&sys, &SolveConfig::default()).unwrap() {
            if s.residual <= 1e-10 {
                prop_assert!(s.valuation.values().iter().all(|v| (0.0..=1.0).contains(v)));
                let lab = s.labelling();
                prop_assert!(complete.contains(&lab.labels().to_vec()), "{:?}", s);
            }
        }
    }

    #[test]
    fn product_marginals_and_total(ps in prop::collection::vec((0i64..=8, 1i64..=8), 1..6)) {
        let p: Vec<Rational> = ps.iter().map(|&(a, b)| rat(a.min(b), b)).collect();
        let d = product_distribution(&AtomProbability::new(p.clone()).unwrap()).unwrap();
        prop_assert_eq!(d.total(), Rational::one());
        prop_assert_eq!(d.marginals(), p);
    }

    #[test]
    fn method1_legitimacy_bridges_to_method2(
        af in frameworks(5),
        ps in prop::collection::vec(0usize..3, 5),
    ) {
        // mix of {0, 1/2, 1} guesses and exact complete-labelling values
        let halves = [rat(0, 1), rat(1, 2), rat(1, 1)];
        let guess: Vec<Rational> = (0..af.len()).map(|i| halves[ps[i]].clone()).collect();
        let mut candidates = vec![guess];
        for l in oracle_complete(&af) {
            if !l.contains(&Label::Und) {
                candidates.push(l.iter().map(|&x| if x == Label::In { rat(1, 1) } else { rat(0, 1) }).collect());
            }
        }
        for p in candidates {
            let ap = AtomProbability::new(p.clone()).unwrap();
            let m1 = is_method1_legitimate(&af, &ap, &Rational::zero()).unwrap();
            let m2 = check_legitimate(&af, &product_distribution(&ap).unwrap()).unwrap();
            prop_assert_eq!(m1.legitimate, m2.legitimate);
            prop_assert_eq!(&m1.defects, &oracle_product_defects(&af, &p));
        }
    }

    #[test]
    fn construction_is_legitimate_and_recovers_labelling(af in frameworks(5)) {
        for labels in oracle_complete(&af) {
            let lab = Labelling::new(labels.clone());
            let d = plambda_construct(&af, &lab).unwrap();
            let report = check_legitimate(&af, &d).unwrap();
            prop_assert!(report.defects.iter().all(Zero::is_zero));
            for (i, l) in labels.iter().enumerate() {
                let want = match l {
                    Label::In => rat(1, 1),
                    Label::Out => rat(0, 1),
                    Label::Und => rat(1, 2),
                };
                prop_assert_eq!(d.marginal(i), want);
            }
            prop_assert_eq!(eqarg_core::method2::gr_labelling(&af, &d).unwrap(), lab);
        }
    }

    #[test]
    fn vertices_satisfy_bounds(af in frameworks(4)) {
        for d in enumerate_vertices(&af, 12).unwrap() {
            prop_assert!(check_legitimate(&af, &d).unwrap().legitimate);
            let bounds = lemma5_bounds(&af, &d).unwrap();
            prop_assert!(bounds.legitimate && bounds.all_hold());
            prop_assert!(lemma13_check(&af, &d).unwrap().iter().all(|f| f.holds));
        }
    }

    #[test]
    fn exclusive_disjunction_is_additive(
        masses in prop::collection::vec(0u32..5, 8),
        a in 0u64..256,
        b in 0u64..256,
    ) {
        prop_assume!(masses.iter().any(|&m| m > 0));
        let total: u32 = masses.iter().sum();
        let d = ModelDistribution::from_dense(
            3,
            masses.iter().map(|&m| rat(m.into(), total.into())).collect(),
        )
        .unwrap();
        // formulas given by their model sets; make them exclusive
        let b = b & !a;
        let f = |set: u64| Formula::disjunction((0..8u64).filter(|m| set >> m & 1 == 1).map(|m| {
            Formula::conjunction((0..3).map(|i| {
                if m >> i & 1 == 1 { Formula::Atom(i) } else { Formula::Atom(i).negate() }
            }))
        }));
        let pa = d.prob_of_formula(&f(a)).unwrap();
        let pb = d.prob_of_formula(&f(b)).unwrap();
        let pab = d.prob_of_formula(&f(a).or(f(b))).unwrap();
        prop_assert_eq!(pab, pa + pb);
    }
}

fn all_labellings(n: usize) -> Vec<Vec<Label>> {
    (0..3usize.pow(n as u32))
        .map(|code| {
            let mut k = code;
            (0..n)
                .map(|_| {
                    let l = [Label::In, Label::Out, Label::Und][k % 3];
                    k /= 3;
                    l
                })
                .collect()
        })
        .collect()
}

#[test]
fn isolated_argument_vertex_is_point_mass() {
    let af = ArgumentationFramework::parse("arg x").unwrap();
    let vs = enumerate_vertices(&af, 5).unwrap();
    assert_eq!(vs, vec![ModelDistribution::point_mass(1, 1).unwrap()]);
}
