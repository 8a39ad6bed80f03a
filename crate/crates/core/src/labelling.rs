//! Caminada labellings: legality and brute-force enumeration of complete,
//! preferred and grounded labellings.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use crate::error::{Error, Result};
use crate::framework::{Arg, ArgumentationFramework};
use crate::kleene::KleeneValue;

/// Default cap on the number of arguments for brute-force enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Label {
    In,
    Out,
    Und,
}

impl Label {
    pub const ALL: [Label; 3] = [Label::In, Label::Out, Label::Und];

    pub fn to_kleene(self) -> KleeneValue {
        match self {
            Label::In => KleeneValue::True,
            Label::Out => KleeneValue::False,
            Label::Und => KleeneValue::Half,
        }
    }

    pub fn from_kleene(v: KleeneValue) -> Self {
        match v {
            KleeneValue::True => Label::In,
            KleeneValue::False => Label::Out,
            KleeneValue::Half => Label::Und,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Label::In => "in",
            Label::Out => "out",
            Label::Und => "und",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "in" => Ok(Label::In),
            "out" => Ok(Label::Out),
            "und" => Ok(Label::Und),
            other => Err(Error::Syntax {
                line: 0,
                message: alloc::format!("unknown label `{other}`"),
            }),
        }
    }
}

/// Total map from arguments (by declaration index) to labels.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct Labelling(Vec<Label>);

impl Labelling {
    pub fn new(labels: Vec<Label>) -> Self {
        Self(labels)
    }

    pub fn uniform(len: usize, label: Label) -> Self {
        Self(vec![label; len])
    }

    /// Parses `a=in,b=out,c=und`. Every argument of `af` must be assigned.
    pub fn parse_assignments(af: &ArgumentationFramework, text: &str) -> Result<Self> {
        let mut labels: Vec<Option<Label>> = vec![None; af.len()];
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, label) = part.split_once('=').ok_or_else(|| Error::Syntax {
                line: 0,
                message: alloc::format!("expected `name=label`, got `{part}`"),
            })?;
            let arg = af.arg(name.trim())?;
            labels[arg.0] = Some(label.trim().parse()?);
        }
        let got = labels.iter().filter(|l| l.is_some()).count();
        if got != af.len() {
            return Err(Error::LabellingSize {
                expected: af.len(),
                got,
            });
        }
        Ok(Self(labels.into_iter().map(Option::unwrap).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, a: Arg) -> Label {
        self.0[a.0]
    }

    pub fn set(&mut self, a: Arg, label: Label) {
        self.0[a.0] = label;
    }

    pub fn labels(&self) -> &[Label] {
        &self.0
    }

    pub fn with(&self, label: Label) -> impl Iterator<Item = Arg> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(move |(_, &l)| l == label)
            .map(|(i, _)| Arg(i))
    }

    pub fn in_set(&self) -> Vec<Arg> {
        self.with(Label::In).collect()
    }

    pub fn has_und(&self) -> bool {
        self.0.contains(&Label::Und)
    }

    /// The exact `{0, 1/2, 1}` valuation: in ↦ 1, out ↦ 0, und ↦ 1/2.
    pub fn to_kleene(&self) -> Vec<KleeneValue> {
        self.0.iter().map(|l| l.to_kleene()).collect()
    }

    pub fn from_kleene(values: &[KleeneValue]) -> Self {
        Self(values.iter().map(|&v| Label::from_kleene(v)).collect())
    }

    /// `true` when every argument decided here carries the same label in
    /// `other` (i.e. `other` extends this labelling's in/out part).
    pub fn is_extended_by(&self, other: &Labelling) -> bool {
        self.0
            .iter()
            .zip(&other.0)
            .all(|(&a, &b)| a == Label::Und || a == b)
    }

    /// Number of in/out labels.
    pub fn decided(&self) -> usize {
        self.0.iter().filter(|&&l| l != Label::Und).count()
    }

    /// `a=in,b=out` form, the inverse of [`Labelling::parse_assignments`].
    pub fn to_assignments(&self, af: &ArgumentationFramework) -> String {
        let mut out = String::new();
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(af.name(Arg(i)));
            out.push('=');
            out.push_str(l.as_str());
        }
        out
    }

    fn check_len(&self, af: &ArgumentationFramework) -> Result<()> {
        if self.len() != af.len() {
            return Err(Error::LabellingSize {
                expected: af.len(),
                got: self.len(),
            });
        }
        Ok(())
    }
}

/// The legality clause an argument breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Clause {
    /// out ⟺ some attacker is in.
    Out,
    /// in ⟺ every attacker is out.
    In,
    /// und ⟺ no attacker in and some attacker und.
    Und,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Violation {
    pub argument: Arg,
    pub label: Label,
    pub expected: Label,
    pub clause: Clause,
}

impl Violation {
    pub fn describe(&self, af: &ArgumentationFramework) -> String {
        let why = match self.clause {
            Clause::Out => "out iff some attacker is in",
            Clause::In => "in iff all attackers are out",
            Clause::Und => "und iff no attacker is in and some attacker is und",
        };
        alloc::format!(
            "{} is {} but must be {} ({why})",
            af.name(self.argument),
            self.label,
            self.expected
        )
    }
}

/// The label the attackers force on `x` under `lab`.
pub fn forced_label(af: &ArgumentationFramework, lab: &Labelling, x: Arg) -> Label {
    let mut any_und = false;
    for &y in af.attackers(x) {
        match lab.get(y) {
            Label::In => return Label::Out,
            Label::Und => any_und = true,
            Label::Out => {}
        }
    }
    if any_und {
        Label::Und
    } else {
        Label::In
    }
}

/// Checks the in/out/und clauses at every argument and lists the violations.
pub fn legal_labelling_violations(
    af: &ArgumentationFramework,
    lab: &Labelling,
) -> Result<Vec<Violation>> {
    lab.check_len(af)?;
    Ok(af
        .arguments()
        .filter_map(|x| {
            let expected = forced_label(af, lab, x);
            let label = lab.get(x);
            (label != expected).then_some(Violation {
                argument: x,
                label,
                expected,
                clause: match label {
                    Label::In => Clause::In,
                    Label::Out => Clause::Out,
                    Label::Und => Clause::Und,
                },
            })
        })
        .collect())
}

pub fn is_legal_labelling(af: &ArgumentationFramework, lab: &Labelling) -> Result<bool> {
    Ok(legal_labelling_violations(af, lab)?.is_empty())
}

fn legal_fast(af: &ArgumentationFramework, labels: &[Label]) -> bool {
    af.arguments().all(|x| {
        let mut any_und = false;
        let mut any_in = false;
        for &y in af.attackers(x) {
            match labels[y.0] {
                Label::In => any_in = true,
                Label::Und => any_und = true,
                Label::Out => {}
            }
        }
        let expected = if any_in {
            Label::Out
        } else if any_und {
            Label::Und
        } else {
            Label::In
        };
        labels[x.0] == expected
    })
}

/// All complete labellings with preferred and grounded flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompleteLabellings {
    pub labellings: Vec<Labelling>,
    pub preferred: Vec<bool>,
    pub grounded: usize,
}

impl CompleteLabellings {
    /// Builds the flags from an unordered set of complete labellings.
    pub fn from_complete(mut labellings: Vec<Labelling>) -> Self {
        labellings.sort();
        labellings.dedup();
        let preferred = labellings
            .iter()
            .map(|l| {
                !labellings
                    .iter()
                    .any(|m| m != l && l.is_extended_by(m) && m.decided() > l.decided())
            })
            .collect();
        let grounded = labellings
            .iter()
            .position(|l| {
                let ins = l.in_set();
                labellings
                    .iter()
                    .all(|m| ins.iter().all(|&a| m.get(a) == Label::In))
            })
            .expect("the grounded labelling is complete");
        Self {
            labellings,
            preferred,
            grounded,
        }
    }

    pub fn len(&self) -> usize {
        self.labellings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labellings.is_empty()
    }

    pub fn grounded(&self) -> &Labelling {
        &self.labellings[self.grounded]
    }

    pub fn preferred(&self) -> impl Iterator<Item = &Labelling> {
        self.labellings
            .iter()
            .zip(&self.preferred)
            .filter(|(_, &p)| p)
            .map(|(l, _)| l)
    }

    pub fn contains(&self, lab: &Labelling) -> bool {
        self.labellings.binary_search(lab).is_ok()
    }

    pub fn is_preferred(&self, lab: &Labelling) -> bool {
        self.labellings
            .binary_search(lab)
            .map(|i| self.preferred[i])
            .unwrap_or(false)
    }
}

/// Number of brute-force candidates, `3^n`.
pub fn candidate_count(af: &ArgumentationFramework, cap: usize) -> Result<u64> {
    if af.len() > cap {
        return Err(Error::CapExceeded {
            size: af.len(),
            cap,
        });
    }
    Ok(3u64.pow(af.len() as u32))
}

/// Legal labellings among candidates with codes in `range`.
///
/// Candidate `k` assigns argument `i` the label `Label::ALL[d_i]` where
/// `d_0 d_1 … d_{n-1}` are the base-3 digits of `k`, most significant first,
/// so increasing codes list labellings in lexicographic order.
pub fn complete_labellings_in_range(
    af: &ArgumentationFramework,
    range: Range<u64>,
) -> Vec<Labelling> {
    let n = af.len();
    let mut out = Vec::new();
    if range.is_empty() {
        return out;
    }
    let mut digits = vec![0u8; n];
    let mut k = range.start;
    for i in (0..n).rev() {
        digits[i] = (k % 3) as u8;
        k /= 3;
    }
    let mut labels: Vec<Label> = digits.iter().map(|&d| Label::ALL[usize::from(d)]).collect();
    for _ in range {
        if legal_fast(af, &labels) {
            out.push(Labelling(labels.clone()));
        }
        for i in (0..n).rev() {
            digits[i] += 1;
            if digits[i] == 3 {
                digits[i] = 0;
                labels[i] = Label::ALL[0];
            } else {
                labels[i] = Label::ALL[usize::from(digits[i])];
                break;
            }
        }
    }
    out
}

/// Brute-force enumeration over all `3^n` labellings.
pub fn enumerate_complete_labellings(
    af: &ArgumentationFramework,
    cap: usize,
) -> Result<CompleteLabellings> {
    let total = candidate_count(af, cap)?;
    Ok(CompleteLabellings::from_complete(
        complete_labellings_in_range(af, 0..total),
    ))
}

/// The grounded labelling by least-fixpoint propagation (no size cap).
pub fn grounded_labelling(af: &ArgumentationFramework) -> Labelling {
    let mut lab = Labelling::uniform(af.len(), Label::Und);
    loop {
        let mut changed = false;
        for x in af.arguments() {
            if lab.get(x) != Label::Und {
                continue;
            }
            let attackers = af.attackers(x);
            if attackers.iter().all(|&y| lab.get(y) == Label::Out) {
                lab.set(x, Label::In);
                changed = true;
            } else if attackers.iter().any(|&y| lab.get(y) == Label::In) {
                lab.set(x, Label::Out);
                changed = true;
            }
        }
        if !changed {
            return lab;
        }
    }
}

/// Convenience for error messages.
pub fn describe_violations(af: &ArgumentationFramework, violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.describe(af))
        .collect::<Vec<_>>()
        .join("; ")
}

/// Fails with [`Error::IllegalLabelling`] unless `lab` is legal.
pub fn ensure_legal(af: &ArgumentationFramework, lab: &Labelling) -> Result<()> {
    let v = legal_labelling_violations(af, lab)?;
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::IllegalLabelling(describe_violations(af, &v)))
    }
}

impl fmt::Display for Labelling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}
