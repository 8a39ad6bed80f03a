//! JSON forms of frameworks, labellings, distributions and certificates.
//!
//! Masses cross this boundary as exact rational strings (`"1/3"`). Floats
//! are accepted on input and converted to the nearest fraction with a
//! bounded denominator; every conversion is reported back.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use eqarg_core::distribution::{Mass, ModelDistribution, HARD_MODEL_CAP};
use eqarg_core::method2::InstantiatedNetwork;
use eqarg_core::rational::{approximate, format_rational, parse_rational, Rational};
use eqarg_core::simplex::Certificate;
use eqarg_core::{ArgumentationFramework, Formula, Label, Labelling, Model};
use serde::{Deserialize, Serialize};

/// Denominator bound for float masses read from JSON.
pub const DEFAULT_DENOMINATOR_BOUND: u64 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameworkJson {
    pub arguments: Vec<String>,
    pub attacks: Vec<(String, String)>,
}

impl From<&ArgumentationFramework> for FrameworkJson {
    fn from(af: &ArgumentationFramework) -> Self {
        Self {
            arguments: af.names().to_vec(),
            attacks: af
                .attacks()
                .map(|(x, y)| (af.name(x).to_string(), af.name(y).to_string()))
                .collect(),
        }
    }
}

impl FrameworkJson {
    pub fn to_framework(&self) -> anyhow::Result<ArgumentationFramework> {
        Ok(ArgumentationFramework::from_parts(
            &self.arguments,
            &self.attacks,
        )?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabellingJson {
    pub labels: BTreeMap<String, Label>,
}

impl LabellingJson {
    pub fn new(af: &ArgumentationFramework, lab: &Labelling) -> Self {
        Self {
            labels: af
                .arguments()
                .map(|a| (af.name(a).to_string(), lab.get(a)))
                .collect(),
        }
    }

    pub fn to_labelling(&self, af: &ArgumentationFramework) -> anyhow::Result<Labelling> {
        let mut lab = Labelling::uniform(af.len(), Label::Und);
        if self.labels.len() != af.len() {
            bail!("expected {} labels, got {}", af.len(), self.labels.len());
        }
        for (name, &label) in &self.labels {
            lab.set(af.arg(name)?, label);
        }
        Ok(lab)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MassValue {
    Exact(String),
    Float(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MassEntry {
    /// Character `i` is the truth value of atom `i`.
    pub model_bits: String,
    pub mass: MassValue,
}

/// A float mass replaced by a fraction on input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Conversion {
    pub model_bits: String,
    pub input: f64,
    pub converted: String,
}

pub fn distribution_to_json(d: &ModelDistribution) -> Vec<MassEntry> {
    d.support()
        .map(|(m, p)| MassEntry {
            model_bits: m.to_bit_string(),
            mass: MassValue::Exact(format_rational(p)),
        })
        .collect()
}

pub fn float_distribution_to_json(d: &ModelDistribution<f64>) -> Vec<MassEntry> {
    d.support()
        .map(|(m, p)| MassEntry {
            model_bits: m.to_bit_string(),
            mass: MassValue::Float(*p),
        })
        .collect()
}

/// Reads a distribution over `atoms` atoms. The result must sum to exactly 1
/// after conversion.
pub fn distribution_from_json(
    entries: &[MassEntry],
    atoms: usize,
    denominator_bound: u64,
) -> anyhow::Result<(ModelDistribution, Vec<Conversion>)> {
    let mut conversions = Vec::new();
    let mut masses = Vec::with_capacity(entries.len());
    for e in entries {
        if e.model_bits.chars().count() != atoms {
            bail!(
                "model `{}` has {} atoms, expected {atoms}",
                e.model_bits,
                e.model_bits.chars().count()
            );
        }
        let model = Model::from_bit_string(&e.model_bits)?;
        let mass = match &e.mass {
            MassValue::Exact(s) => parse_rational(s)?,
            MassValue::Float(x) => {
                let q = approximate(*x, denominator_bound)
                    .ok_or_else(|| anyhow!("mass {x} is not a finite number"))?;
                conversions.push(Conversion {
                    model_bits: e.model_bits.clone(),
                    input: *x,
                    converted: format_rational(&q),
                });
                q
            }
        };
        masses.push((model.bits(), mass));
    }
    Ok((ModelDistribution::new(atoms, masses)?, conversions))
}

pub fn read_distribution(
    path: &Path,
    atoms: usize,
    denominator_bound: u64,
) -> anyhow::Result<(ModelDistribution, Vec<Conversion>)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let entries: Vec<MassEntry> =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    distribution_from_json(&entries, atoms, denominator_bound)
}

/// Reads a `.af` file, or a JSON framework when the file ends in `.json`.
pub fn read_framework(path: &Path) -> anyhow::Result<ArgumentationFramework> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if path.extension().is_some_and(|e| e == "json") {
        let json: FrameworkJson =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        json.to_framework()
    } else {
        ArgumentationFramework::parse(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

/// Multipliers of an infeasibility certificate, one per row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    /// Row names in order: one per argument, then `normalization`, then pins.
    pub rows: Vec<String>,
    pub multipliers: Vec<String>,
}

impl CertificateJson {
    pub fn new(cert: &Certificate, rows: Vec<String>) -> Self {
        Self {
            rows,
            multipliers: cert.multipliers.iter().map(format_rational).collect(),
        }
    }

    pub fn to_certificate(&self) -> anyhow::Result<Certificate> {
        Ok(Certificate {
            multipliers: self
                .multipliers
                .iter()
                .map(|s| parse_rational(s))
                .collect::<Result<_, _>>()?,
        })
    }
}

/// An instantiated network: a framework plus one formula per argument.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstantiatedNetworkJson {
    pub framework: FrameworkJson,
    pub atoms: Vec<String>,
    pub instantiation: BTreeMap<String, String>,
}

impl InstantiatedNetworkJson {
    pub fn to_network(&self) -> anyhow::Result<InstantiatedNetwork> {
        let af = self.framework.to_framework()?;
        check_atom_cap(self.atoms.len())?;
        let formulas = af
            .names()
            .iter()
            .map(|name| {
                let text = self
                    .instantiation
                    .get(name)
                    .ok_or_else(|| anyhow!("no formula for argument `{name}`"))?;
                Formula::parse(text, &self.atoms).with_context(|| format!("formula for `{name}`"))
            })
            .collect::<anyhow::Result<Vec<_>>>()?;
        Ok(InstantiatedNetwork::new(af, self.atoms.clone(), formulas)?)
    }
}

fn check_atom_cap(atoms: usize) -> anyhow::Result<()> {
    if atoms > HARD_MODEL_CAP {
        bail!("{atoms} atoms exceed the model cap of {HARD_MODEL_CAP}");
    }
    Ok(())
}

/// Parses `formula=value` marginal pins, e.g. `!a & b=1/3`.
pub fn parse_pin(text: &str, names: &[String]) -> anyhow::Result<(Formula, Rational)> {
    let (f, v) = text
        .rsplit_once('=')
        .ok_or_else(|| anyhow!("pin `{text}` is not of the form formula=value"))?;
    Ok((Formula::parse(f.trim(), names)?, parse_rational(v)?))
}

/// Masses as decimal strings for text output.
pub fn mass_string<T: Mass>(m: &T) -> String {
    format!("{:.6}", m.as_f64())
}
