//! The operations behind each CLI subcommand. Each returns a JSON report,
//! a text rendering, and whether its assertions passed.

use std::collections::BTreeMap;
use std::fmt::Write;

use anyhow::{bail, Context};
use eqarg_core::constructions::{approximate_plambda, ApproxCase, ApproxDistribution};
use eqarg_core::distribution::{Mass, ModelDistribution};
use eqarg_core::equations::exact_max_solutions;
use eqarg_core::method1::{find_method1, is_method1_legitimate, AtomProbability};
use eqarg_core::method2::{
    self, check_legitimate, enumerate_vertices, gr_labelling, instantiate_and_solve,
    plambda_construct, DistributionSearch, InstantiatedNetwork,
};
use eqarg_core::rational::{format_rational, parse_rational, Rational};
use eqarg_core::thimm::{p_justifiable, REPORT_HEADER};
use eqarg_core::{
    ArgumentationFramework, EquationKind, EquationSystem, Formula, KleeneValue, Labelling,
    SeedStrategy, SolveConfig,
};
use serde::{Deserialize, Serialize};

use crate::dot::to_dot;
use crate::io::{
    distribution_to_json, float_distribution_to_json, CertificateJson, Conversion, LabellingJson,
    MassEntry,
};
use crate::parallel;

pub struct Outcome {
    pub json: serde_json::Value,
    pub text: String,
    /// False when a check the command performs did not pass.
    pub passed: bool,
}

impl Outcome {
    fn new<T: Serialize>(report: &T, text: String, passed: bool) -> Self {
        Self {
            json: serde_json::to_value(report).expect("reports serialize"),
            text,
            passed,
        }
    }
}

/// Caps and threading shared by the commands.
#[derive(Debug, Clone)]
pub struct Limits {
    /// Largest framework enumerated by brute force.
    pub cap: usize,
    pub threads: Option<usize>,
    pub denominator_bound: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            cap: eqarg_core::labelling::DEFAULT_ENUMERATION_CAP,
            threads: None,
            denominator_bound: crate::io::DEFAULT_DENOMINATOR_BOUND,
        }
    }
}

fn kind_name(kind: EquationKind) -> &'static str {
    match kind {
        EquationKind::Inv => "inv",
        EquationKind::Max => "max",
    }
}

fn fmt_values(v: &[f64]) -> String {
    v.iter()
        .map(|x| format!("{x:.7}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn fmt_named<T>(af: &ArgumentationFramework, v: &[T], f: impl Fn(&T) -> String) -> String {
    af.arguments()
        .map(|a| format!("{}={}", af.name(a), f(&v[a.0])))
        .collect::<Vec<_>>()
        .join(", ")
}

fn preferred_set(
    af: &ArgumentationFramework,
    limits: &Limits,
) -> Option<eqarg_core::CompleteLabellings> {
    (af.len() <= limits.cap)
        .then(|| parallel::enumerate_complete_labellings(af, limits.cap, limits.threads).ok())
        .flatten()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolutionJson {
    pub values: Vec<f64>,
    pub residual: f64,
    pub labelling: LabellingJson,
    /// Whether the projection is a preferred labelling; absent above the cap.
    pub is_preferred_candidate: Option<bool>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveReport {
    pub kind: String,
    pub arguments: Vec<String>,
    pub solutions: Vec<SolutionJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExactSolutionJson {
    pub values: Vec<String>,
    pub labelling: LabellingJson,
    pub is_preferred_candidate: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExactSolveReport {
    pub kind: String,
    pub exact: bool,
    pub arguments: Vec<String>,
    pub solutions: Vec<ExactSolutionJson>,
}

pub fn solve(
    af: &ArgumentationFramework,
    kind: EquationKind,
    exact: bool,
    cfg: &SolveConfig,
    limits: &Limits,
) -> anyhow::Result<Outcome> {
    if exact {
        if kind != EquationKind::Max {
            bail!("--exact is only available for the max form");
        }
        let complete = parallel::enumerate_complete_labellings(af, limits.cap, limits.threads)?;
        let mut sols = exact_max_solutions(af, limits.cap)?;
        sols.sort();
        let mut text = format!("{} exact solutions of the max form\n", sols.len());
        let solutions = sols
            .iter()
            .map(|v| {
                let lab = Labelling::from_kleene(v);
                let preferred = complete.is_preferred(&lab);
                let values: Vec<String> = v.iter().map(|k| kleene_string(*k).to_string()).collect();
                writeln!(
                    text,
                    "  {}{}",
                    fmt_named(af, &values, |s| s.clone()),
                    if preferred { "  (preferred)" } else { "" }
                )
                .unwrap();
                ExactSolutionJson {
                    values,
                    labelling: LabellingJson::new(af, &lab),
                    is_preferred_candidate: preferred,
                }
            })
            .collect();
        let report = ExactSolveReport {
            kind: kind_name(kind).into(),
            exact: true,
            arguments: af.names().to_vec(),
            solutions,
        };
        return Ok(Outcome::new(&report, text, true));
    }

    let sys = EquationSystem::new(af, kind);
    let sols = parallel::solve(&sys, cfg, limits.threads)?;
    let complete = preferred_set(af, limits);
    let mut text = format!("{} solutions of the {} form\n", sols.len(), kind_name(kind));
    let solutions = sols
        .iter()
        .map(|s| {
            let lab = s.labelling();
            let preferred = complete.as_ref().map(|c| c.is_preferred(&lab));
            writeln!(
                text,
                "  ({})  residual {:.1e}  labelling {}{}",
                fmt_values(s.valuation.values()),
                s.residual,
                lab.to_assignments(af),
                if preferred == Some(true) {
                    "  (preferred)"
                } else {
                    ""
                }
            )
            .unwrap();
            SolutionJson {
                values: s.valuation.values().to_vec(),
                residual: s.residual,
                labelling: LabellingJson::new(af, &lab),
                is_preferred_candidate: preferred,
            }
        })
        .collect();
    let report = SolveReport {
        kind: kind_name(kind).into(),
        arguments: af.names().to_vec(),
        solutions,
    };
    Ok(Outcome::new(&report, text, true))
}

fn kleene_string(k: KleeneValue) -> &'static str {
    match k {
        KleeneValue::False => "0",
        KleeneValue::Half => "1/2",
        KleeneValue::True => "1",
    }
}

/// DOT rendering, decorated with the first solution of the product form.
pub fn solve_dot(
    af: &ArgumentationFramework,
    kind: EquationKind,
    cfg: &SolveConfig,
    limits: &Limits,
) -> anyhow::Result<String> {
    let sys = EquationSystem::new(af, kind);
    let sols = parallel::solve(&sys, cfg, limits.threads)?;
    Ok(to_dot(af, sols.first().map(|s| s.valuation.values())))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtensionJson {
    pub labels: LabellingJson,
    pub in_set: Vec<String>,
    pub preferred: bool,
    pub grounded: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtensionsReport {
    pub arguments: Vec<String>,
    pub complete: Vec<ExtensionJson>,
    pub preferred_count: usize,
}

pub fn extensions(af: &ArgumentationFramework, limits: &Limits) -> anyhow::Result<Outcome> {
    let all = parallel::enumerate_complete_labellings(af, limits.cap, limits.threads)?;
    let mut text = format!(
        "{} complete, {} preferred\n",
        all.len(),
        all.preferred.iter().filter(|&&p| p).count()
    );
    let complete = all
        .labellings
        .iter()
        .enumerate()
        .map(|(i, lab)| {
            let preferred = all.preferred[i];
            let grounded = all.grounded == i;
            let tags: Vec<&str> = [(preferred, "preferred"), (grounded, "grounded")]
                .iter()
                .filter(|t| t.0)
                .map(|t| t.1)
                .collect();
            writeln!(text, "  {}  {}", lab.to_assignments(af), tags.join(" ")).unwrap();
            ExtensionJson {
                labels: LabellingJson::new(af, lab),
                in_set: lab
                    .in_set()
                    .iter()
                    .map(|&a| af.name(a).to_string())
                    .collect(),
                preferred,
                grounded,
            }
        })
        .collect();
    let report = ExtensionsReport {
        arguments: af.names().to_vec(),
        preferred_count: all.preferred.iter().filter(|&&p| p).count(),
        complete,
    };
    Ok(Outcome::new(&report, text, true))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Method1Json {
    pub atom_probabilities: BTreeMap<String, String>,
    pub legitimate: bool,
    pub defects: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Method1Report {
    pub arguments: Vec<String>,
    pub assignments: Vec<Method1Json>,
}

fn named_map<T>(
    af: &ArgumentationFramework,
    v: &[T],
    f: impl Fn(&T) -> String,
) -> BTreeMap<String, String> {
    af.arguments()
        .map(|a| (af.name(a).to_string(), f(&v[a.0])))
        .collect()
}

/// Parses `a=1/2,b=0.25` into one value per argument.
pub fn parse_named_values(
    af: &ArgumentationFramework,
    text: &str,
) -> anyhow::Result<Vec<Rational>> {
    let mut out: Vec<Option<Rational>> = vec![None; af.len()];
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = part
            .split_once('=')
            .with_context(|| format!("`{part}` is not of the form name=value"))?;
        out[af.arg(name.trim())?.0] = Some(parse_rational(value)?);
    }
    out.into_iter()
        .enumerate()
        .map(|(i, v)| v.with_context(|| format!("no value for `{}`", af.names()[i])))
        .collect()
}

/// Checks given atom probabilities exactly, or lists the product-form
/// solutions the solver finds (optionally seeded on a grid).
pub fn method1(
    af: &ArgumentationFramework,
    probabilities: Option<&str>,
    grid: Option<usize>,
    cfg: &SolveConfig,
) -> anyhow::Result<Outcome> {
    let mut text = String::new();
    let assignments = match probabilities {
        Some(p) => {
            let values = parse_named_values(af, p)?;
            let ap = AtomProbability::new(values.clone())?;
            let check = is_method1_legitimate(af, &ap, &Rational::from_integer(0.into()))?;
            writeln!(
                text,
                "{}  legitimate: {}  defects: {}",
                fmt_named(af, &values, format_rational),
                check.legitimate,
                fmt_named(af, &check.defects, format_rational)
            )
            .unwrap();
            vec![Method1Json {
                atom_probabilities: named_map(af, &values, format_rational),
                legitimate: check.legitimate,
                defects: named_map(af, &check.defects, format_rational),
            }]
        }
        None => {
            let mut cfg = cfg.clone();
            if let Some(levels) = grid {
                cfg.seeds = SeedStrategy::Grid { levels };
            }
            let found = find_method1(af, &cfg)?;
            writeln!(text, "{} product-form assignments", found.len()).unwrap();
            found
                .iter()
                .map(|ap| {
                    let check = is_method1_legitimate(af, ap, &1e-9)?;
                    writeln!(
                        text,
                        "  {}  legitimate: {}  max defect {:.1e}",
                        fmt_named(af, ap.values(), |v| format!("{v:.7}")),
                        check.legitimate,
                        check.max_defect()
                    )
                    .unwrap();
                    Ok(Method1Json {
                        atom_probabilities: named_map(af, ap.values(), |v| v.to_string()),
                        legitimate: check.legitimate,
                        defects: named_map(af, &check.defects, |v| v.to_string()),
                    })
                })
                .collect::<anyhow::Result<Vec<_>>>()?
        }
    };
    let passed = assignments.iter().all(|a| a.legitimate);
    let report = Method1Report {
        arguments: af.names().to_vec(),
        assignments,
    };
    Ok(Outcome::new(&report, text, passed))
}

fn fmt_distribution<T: Mass + std::fmt::Display>(d: &ModelDistribution<T>) -> String {
    let mut s = String::new();
    for (m, p) in d.support() {
        writeln!(s, "  {}  {}", m.to_bit_string(), p).unwrap();
    }
    s
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckReport {
    pub legitimate: bool,
    pub defects: BTreeMap<String, String>,
    pub conversions: Vec<Conversion>,
}

pub fn method2_check(
    af: &ArgumentationFramework,
    d: &ModelDistribution,
    conversions: Vec<Conversion>,
) -> anyhow::Result<Outcome> {
    let r = check_legitimate(af, d)?;
    let mut text = String::new();
    for c in &conversions {
        writeln!(
            text,
            "converted {} mass {} to {}",
            c.model_bits, c.input, c.converted
        )
        .unwrap();
    }
    writeln!(text, "legitimate: {}", r.legitimate).unwrap();
    for a in af.arguments() {
        writeln!(
            text,
            "  {}  defect {}",
            af.name(a),
            format_rational(&r.defects[a.0])
        )
        .unwrap();
    }
    let report = CheckReport {
        legitimate: r.legitimate,
        defects: named_map(af, &r.defects, format_rational),
        conversions,
    };
    Ok(Outcome::new(&report, text, r.legitimate))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FindReport {
    pub feasible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distribution: Option<Vec<MassEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub marginals: Option<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateJson>,
}

fn row_names(names: &[String], pins: &[(Formula, Rational)], atoms: &[String]) -> Vec<String> {
    names
        .iter()
        .cloned()
        .chain(std::iter::once("normalization".to_string()))
        .chain(
            pins.iter()
                .map(|(f, v)| format!("P({}) = {}", f.display(atoms), format_rational(v))),
        )
        .collect()
}

fn find_report(
    search: &DistributionSearch,
    names: &[String],
    atoms: &[String],
    pins: &[(Formula, Rational)],
) -> (FindReport, String) {
    match search {
        DistributionSearch::Found(d) => {
            let marginals: BTreeMap<String, String> = atoms
                .iter()
                .enumerate()
                .map(|(i, n)| (n.clone(), format_rational(&d.marginal(i))))
                .collect();
            let text = format!("feasible\n{}", fmt_distribution(d));
            (
                FindReport {
                    feasible: true,
                    distribution: Some(distribution_to_json(d)),
                    marginals: Some(marginals),
                    certificate: None,
                },
                text,
            )
        }
        DistributionSearch::Infeasible(c) => {
            let cert = CertificateJson::new(c, row_names(names, pins, atoms));
            let mut text = String::from("infeasible; certificate multipliers:\n");
            for (r, m) in cert.rows.iter().zip(&cert.multipliers) {
                writeln!(text, "  {r}: {m}").unwrap();
            }
            (
                FindReport {
                    feasible: false,
                    distribution: None,
                    marginals: None,
                    certificate: Some(cert),
                },
                text,
            )
        }
    }
}

pub fn method2_find(
    af: &ArgumentationFramework,
    pins: &[(Formula, Rational)],
    model_cap: usize,
) -> anyhow::Result<Outcome> {
    let search = method2::find_distribution(af, pins, model_cap)?;
    let (report, text) = find_report(&search, af.names(), af.names(), pins);
    Ok(Outcome::new(&report, text, true))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerticesReport {
    pub vertices: Vec<Vec<MassEntry>>,
}

pub fn method2_vertices(af: &ArgumentationFramework, limit: usize) -> anyhow::Result<Outcome> {
    let vs = enumerate_vertices(af, limit)?;
    let mut text = format!("{} vertices\n", vs.len());
    for (i, d) in vs.iter().enumerate() {
        writeln!(text, "vertex {i}").unwrap();
        text.push_str(&fmt_distribution(d));
    }
    let report = VerticesReport {
        vertices: vs.iter().map(distribution_to_json).collect(),
    };
    Ok(Outcome::new(&report, text, true))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlambdaReport {
    pub labelling: LabellingJson,
    pub distribution: Vec<MassEntry>,
}

pub fn method2_plambda(af: &ArgumentationFramework, lab: &Labelling) -> anyhow::Result<Outcome> {
    let d = plambda_construct(af, lab)?;
    let text = fmt_distribution(&d);
    let report = PlambdaReport {
        labelling: LabellingJson::new(af, lab),
        distribution: distribution_to_json(&d),
    };
    Ok(Outcome::new(&report, text, true))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GrLabelReport {
    pub labelling: LabellingJson,
    pub conversions: Vec<Conversion>,
}

pub fn method2_gr_label(
    af: &ArgumentationFramework,
    d: &ModelDistribution,
    conversions: Vec<Conversion>,
) -> anyhow::Result<Outcome> {
    let lab = gr_labelling(af, d)?;
    let text = format!("{}\n", lab.to_assignments(af));
    let report = GrLabelReport {
        labelling: LabellingJson::new(af, &lab),
        conversions,
    };
    Ok(Outcome::new(&report, text, true))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ApproxReportJson {
    pub n: usize,
    pub case: String,
    pub epsilon_bound: f64,
    pub residuals: BTreeMap<String, f64>,
    pub max_residual: f64,
    pub within_bound: bool,
    pub exact: bool,
    pub distribution: Vec<MassEntry>,
    pub und_solution: BTreeMap<String, f64>,
}

pub fn approximate(
    af: &ArgumentationFramework,
    lab: &Labelling,
    n: usize,
    cfg: &SolveConfig,
    limits: &Limits,
) -> anyhow::Result<Outcome> {
    let r = approximate_plambda(af, lab, n, limits.cap, cfg)?;
    let case = match r.case {
        ApproxCase::Preferred => "preferred",
        ApproxCase::Undecided => "undecided",
    };
    let mut text = format!(
        "{case} labelling, n = {n}, bound {:.3e}, max residual {:.3e} ({})\n",
        r.epsilon_bound,
        r.max_residual,
        if r.within_bound {
            "within bound"
        } else {
            "EXCEEDS bound"
        }
    );
    let distribution = match &r.distribution {
        ApproxDistribution::Exact(d) => {
            text.push_str(&fmt_distribution(d));
            distribution_to_json(d)
        }
        ApproxDistribution::Float(d) => {
            for (m, p) in d.support() {
                writeln!(text, "  {}  {p:.6}", m.to_bit_string()).unwrap();
            }
            float_distribution_to_json(d)
        }
    };
    let report = ApproxReportJson {
        n,
        case: case.into(),
        epsilon_bound: r.epsilon_bound,
        residuals: af
            .arguments()
            .map(|a| (af.name(a).to_string(), r.residuals[a.0]))
            .collect(),
        max_residual: r.max_residual,
        within_bound: r.within_bound,
        exact: r.distribution.is_exact(),
        distribution,
        und_solution: r
            .und_solution
            .iter()
            .map(|&(a, v)| (af.name(a).to_string(), v))
            .collect(),
    };
    Ok(Outcome::new(&report, text, r.within_bound))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UpperJson {
    pub attacker: String,
    pub slack: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArgumentBoundsJson {
    pub argument: String,
    pub marginal: String,
    pub upper: Vec<UpperJson>,
    pub lower_slack: String,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InteriorJson {
    pub argument: String,
    pub no_certain_attacker: bool,
    pub some_possible_attacker: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ThimmReport {
    pub header: String,
    pub justifiable: bool,
    pub legitimate: bool,
    pub arguments: Vec<ArgumentBoundsJson>,
    pub interior_checks: Vec<InteriorJson>,
    pub conversions: Vec<Conversion>,
}

pub fn thimm(
    af: &ArgumentationFramework,
    d: &ModelDistribution,
    conversions: Vec<Conversion>,
) -> anyhow::Result<Outcome> {
    let r = p_justifiable(af, d)?;
    let mut text = format!(
        "{REPORT_HEADER}\np-justifiable: {}  legitimate: {}\n",
        r.justifiable, r.legitimate
    );
    let arguments: Vec<ArgumentBoundsJson> = r
        .arguments
        .iter()
        .map(|b| {
            let name = af.name(b.argument).to_string();
            if !b.holds() {
                writeln!(
                    text,
                    "  {name} fails: P = {}, lower slack {}",
                    format_rational(&r.marginals[b.argument.0]),
                    format_rational(&b.lower_slack)
                )
                .unwrap();
            }
            ArgumentBoundsJson {
                marginal: format_rational(&r.marginals[b.argument.0]),
                upper: b
                    .upper
                    .iter()
                    .map(|u| UpperJson {
                        attacker: af.name(u.attacker).to_string(),
                        slack: format_rational(&u.slack),
                    })
                    .collect(),
                lower_slack: format_rational(&b.lower_slack),
                holds: b.holds(),
                argument: name,
            }
        })
        .collect();
    let report = ThimmReport {
        header: REPORT_HEADER.into(),
        justifiable: r.justifiable,
        legitimate: r.legitimate,
        arguments,
        interior_checks: r
            .interior_checks
            .iter()
            .map(|c| InteriorJson {
                argument: af.name(c.argument).to_string(),
                no_certain_attacker: c.no_certain_attacker,
                some_possible_attacker: c.some_possible_attacker,
            })
            .collect(),
        conversions,
    };
    Ok(Outcome::new(&report, text, r.justifiable))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstantiateReport {
    pub theory: Vec<String>,
    pub atoms: Vec<String>,
    /// One row per argument over the models of the atoms.
    pub rows: Vec<Vec<i8>>,
    pub result: FindReport,
}

pub fn instantiate(
    net: &InstantiatedNetwork,
    pins: &[(Formula, Rational)],
    model_cap: usize,
) -> anyhow::Result<Outcome> {
    let r = instantiate_and_solve(net, pins, model_cap)?;
    let theory: Vec<String> = r
        .theory
        .iter()
        .map(|f| f.display(&net.atoms).to_string())
        .collect();
    let (result, body) = find_report(&r.outcome, net.framework.names(), &net.atoms, pins);
    let mut text = String::from("theory:\n");
    for t in &theory {
        writeln!(text, "  {t}").unwrap();
    }
    text.push_str(&body);
    let report = InstantiateReport {
        theory,
        atoms: net.atoms.clone(),
        rows: r.constraints.rows().to_vec(),
        result,
    };
    Ok(Outcome::new(&report, text, true))
}

pub fn export_dot(af: &ArgumentationFramework, values: Option<&str>) -> anyhow::Result<String> {
    let values = values
        .map(|v| {
            parse_named_values(af, v).map(|q| {
                q.iter()
                    .map(eqarg_core::rational::to_f64)
                    .collect::<Vec<_>>()
            })
        })
        .transpose()?;
    Ok(to_dot(af, values.as_deref()))
}

/// Used by the CLI for `--label` arguments.
pub fn parse_labelling(af: &ArgumentationFramework, text: &str) -> anyhow::Result<Labelling> {
    Ok(Labelling::parse_assignments(af, text)?)
}
