//! Abstract argumentation frameworks and the `.af` text format.
//!
//! Arguments are identified internally by their position in declaration
//! order. That position is also the bit index of the argument in a
//! [`Model`](crate::formula::Model), so it never changes after construction.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Position of an argument in its framework's declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Arg(pub usize);

impl Arg {
    pub fn index(self) -> usize {
        self.0
    }
}

/// A finite argument set together with an attack relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArgumentationFramework {
    names: Vec<String>,
    lookup: BTreeMap<String, Arg>,
    attacks: BTreeSet<(Arg, Arg)>,
    attackers: Vec<Vec<Arg>>,
    targets: Vec<Vec<Arg>>,
}

impl Default for ArgumentationFramework {
    fn default() -> Self {
        Self::new()
    }
}

impl ArgumentationFramework {
    pub fn new() -> Self {
        Self {
            names: Vec::new(),
            lookup: BTreeMap::new(),
            attacks: BTreeSet::new(),
            attackers: Vec::new(),
            targets: Vec::new(),
        }
    }

    /// Builds a framework from argument names and attacks given by name.
    pub fn from_parts<S: AsRef<str>>(arguments: &[S], attacks: &[(S, S)]) -> Result<Self> {
        let mut af = Self::new();
        for name in arguments {
            af.add_argument(name.as_ref())?;
        }
        for (from, to) in attacks {
            af.add_attack_by_name(from.as_ref(), to.as_ref())?;
        }
        Ok(af)
    }

    /// Declares a new argument and returns its handle.
    pub fn add_argument(&mut self, name: &str) -> Result<Arg> {
        validate_identifier(name, 0)?;
        if self.lookup.contains_key(name) {
            return Err(Error::DuplicateArgument {
                line: 0,
                name: name.to_string(),
            });
        }
        let arg = Arg(self.names.len());
        self.names.push(name.to_string());
        self.lookup.insert(name.to_string(), arg);
        self.attackers.push(Vec::new());
        self.targets.push(Vec::new());
        Ok(arg)
    }

    /// Adds `from` attacks `to`. Returns `false` if the attack was already present.
    pub fn add_attack(&mut self, from: Arg, to: Arg) -> Result<bool> {
        for a in [from, to] {
            if a.0 >= self.names.len() {
                return Err(Error::UnknownArgument(alloc::format!("#{}", a.0)));
            }
        }
        if !self.attacks.insert((from, to)) {
            return Ok(false);
        }
        insert_sorted(&mut self.attackers[to.0], from);
        insert_sorted(&mut self.targets[from.0], to);
        Ok(true)
    }

    pub fn add_attack_by_name(&mut self, from: &str, to: &str) -> Result<bool> {
        let from = self.arg(from)?;
        let to = self.arg(to)?;
        self.add_attack(from, to)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn arguments(&self) -> impl ExactSizeIterator<Item = Arg> + '_ {
        (0..self.names.len()).map(Arg)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, arg: Arg) -> &str {
        &self.names[arg.0]
    }

    pub fn arg(&self, name: &str) -> Result<Arg> {
        self.lookup
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownArgument(name.to_string()))
    }

    /// Attacks in canonical order: by attacker index, then target index.
    pub fn attacks(&self) -> impl Iterator<Item = (Arg, Arg)> + '_ {
        self.attacks.iter().copied()
    }

    pub fn attack_count(&self) -> usize {
        self.attacks.len()
    }

    pub fn attacks_on(&self, from: Arg, to: Arg) -> bool {
        self.attacks.contains(&(from, to))
    }

    /// `Att(x)`, sorted by declaration order.
    pub fn attackers(&self, x: Arg) -> &[Arg] {
        &self.attackers[x.0]
    }

    pub fn attackers_of(&self, name: &str) -> Result<Vec<&str>> {
        let x = self.arg(name)?;
        Ok(self.attackers(x).iter().map(|&y| self.name(y)).collect())
    }

    /// Arguments attacked by `x`.
    pub fn targets(&self, x: Arg) -> &[Arg] {
        &self.targets[x.0]
    }

    /// Returns a name not yet used in this framework, starting from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        if !self.lookup.contains_key(base) {
            return base.to_string();
        }
        (1..)
            .map(|i| alloc::format!("{base}_{i}"))
            .find(|n| !self.lookup.contains_key(n))
            .unwrap()
    }

    /// Subframework induced by `keep`, in the original relative order.
    pub fn restrict(&self, keep: &[Arg]) -> Self {
        let mut sub = Self::new();
        let mut map = BTreeMap::new();
        let mut sorted: Vec<Arg> = keep.to_vec();
        sorted.sort();
        sorted.dedup();
        for a in sorted {
            let b = sub.add_argument(self.name(a)).expect("names are unique");
            map.insert(a, b);
        }
        for (from, to) in self.attacks() {
            if let (Some(&f), Some(&t)) = (map.get(&from), map.get(&to)) {
                sub.add_attack(f, t).expect("endpoints exist");
            }
        }
        sub
    }

    /// Parses the line-oriented `.af` format.
    ///
    /// ```text
    /// # comment
    /// arg a
    /// arg b
    /// att a b
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut af = Self::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let mut tokens = content.split_whitespace();
            let Some(keyword) = tokens.next() else {
                continue;
            };
            let rest: Vec<&str> = tokens.collect();
            match keyword {
                "arg" => {
                    let [name] = rest[..] else {
                        return Err(syntax(line, "expected `arg <id>`"));
                    };
                    validate_identifier(name, line)?;
                    if af.lookup.contains_key(name) {
                        return Err(Error::DuplicateArgument {
                            line,
                            name: name.to_string(),
                        });
                    }
                    af.add_argument(name)?;
                }
                "att" => {
                    let [from, to] = rest[..] else {
                        return Err(syntax(line, "expected `att <src> <dst>`"));
                    };
                    let lookup = |name: &str| {
                        af.lookup
                            .get(name)
                            .copied()
                            .ok_or_else(|| Error::UndeclaredArgument {
                                line,
                                name: name.to_string(),
                            })
                    };
                    let (f, t) = (lookup(from)?, lookup(to)?);
                    if !af.add_attack(f, t)? {
                        return Err(Error::DuplicateAttack {
                            line,
                            from: from.to_string(),
                            to: to.to_string(),
                        });
                    }
                }
                other => {
                    return Err(syntax(line, &alloc::format!("unknown keyword `{other}`")));
                }
            }
        }
        Ok(af)
    }

    /// Canonical `.af` text: arguments in declaration order, attacks sorted
    /// by (source index, target index).
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ArgumentationFramework {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for name in &self.names {
            writeln!(f, "arg {name}")?;
        }
        for (from, to) in self.attacks() {
            writeln!(f, "att {} {}", self.name(from), self.name(to))?;
        }
        Ok(())
    }
}

fn insert_sorted(v: &mut Vec<Arg>, a: Arg) {
    if let Err(pos) = v.binary_search(&a) {
        v.insert(pos, a);
    }
}

fn syntax(line: usize, message: &str) -> Error {
    Error::Syntax {
        line,
        message: message.to_string(),
    }
}

fn validate_identifier(name: &str, line: usize) -> Result<()> {
    if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == '#') {
        return Err(syntax(line, &alloc::format!("invalid identifier `{name}`")));
    }
    Ok(())
}
