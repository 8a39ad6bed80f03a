//! Propositional formulas over argument atoms, classical models, two-valued
//! and strong-Kleene evaluation, and the logical translation of a framework.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::framework::{Arg, ArgumentationFramework};
use crate::kleene::KleeneValue;

/// Most atoms a [`Model`] can carry.
pub const MAX_MODEL_ATOMS: usize = 64;

/// Propositional formula. Atoms are indices into a vocabulary (usually the
/// argument order of a framework).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Top,
    Bottom,
    Atom(usize),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(a: Arg) -> Self {
        Formula::Atom(a.0)
    }

    pub fn negate(self) -> Self {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, other: Formula) -> Self {
        Formula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Formula) -> Self {
        Formula::Or(Box::new(self), Box::new(other))
    }

    pub fn implies(self, other: Formula) -> Self {
        Formula::Implies(Box::new(self), Box::new(other))
    }

    pub fn iff(self, other: Formula) -> Self {
        Formula::Iff(Box::new(self), Box::new(other))
    }

    /// Left-nested conjunction; the empty conjunction is `⊤`.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(items: I) -> Self {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::Top)
    }

    /// Left-nested disjunction; the empty disjunction is `⊥`.
    pub fn disjunction<I: IntoIterator<Item = Formula>>(items: I) -> Self {
        items
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::Bottom)
    }

    /// Largest atom index occurring in the formula.
    pub fn max_atom(&self) -> Option<usize> {
        match self {
            Formula::Top | Formula::Bottom => None,
            Formula::Atom(i) => Some(*i),
            Formula::Not(f) => f.max_atom(),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => match (l.max_atom(), r.max_atom()) {
                (Some(a), Some(b)) => Some(a.max(b)),
                (a, b) => a.or(b),
            },
        }
    }

    /// Fails with [`Error::UnknownAtom`] when an atom is outside `0..len`.
    pub fn check_atoms(&self, len: usize) -> Result<()> {
        match self.max_atom() {
            Some(i) if i >= len => Err(Error::UnknownAtom(alloc::format!("#{i}"))),
            _ => Ok(()),
        }
    }

    /// Two-valued truth under a model given as a bit mask (bit `i` = atom `i`).
    /// Atoms are assumed to be in range.
    pub fn holds(&self, bits: u64) -> bool {
        match self {
            Formula::Top => true,
            Formula::Bottom => false,
            Formula::Atom(i) => bits >> i & 1 == 1,
            Formula::Not(f) => !f.holds(bits),
            Formula::And(l, r) => l.holds(bits) && r.holds(bits),
            Formula::Or(l, r) => l.holds(bits) || r.holds(bits),
            Formula::Implies(l, r) => !l.holds(bits) || r.holds(bits),
            Formula::Iff(l, r) => l.holds(bits) == r.holds(bits),
        }
    }

    /// Two-valued evaluation, `ε ⊩ φ`.
    pub fn classical_eval(&self, model: &Model) -> Result<bool> {
        self.check_atoms(model.len())?;
        Ok(self.holds(model.bits()))
    }

    /// Strong-Kleene evaluation: `¬` is complement to one, `∧` min, `∨` max,
    /// `A → B` is `¬A ∨ B` and `A ↔ B` is `(A → B) ∧ (B → A)`.
    pub fn kleene_eval(&self, valuation: &[KleeneValue]) -> Result<KleeneValue> {
        self.check_atoms(valuation.len())?;
        Ok(self.kleene(valuation))
    }

    fn kleene(&self, v: &[KleeneValue]) -> KleeneValue {
        match self {
            Formula::Top => KleeneValue::True,
            Formula::Bottom => KleeneValue::False,
            Formula::Atom(i) => v[*i],
            Formula::Not(f) => f.kleene(v).negate(),
            Formula::And(l, r) => l.kleene(v).and(r.kleene(v)),
            Formula::Or(l, r) => l.kleene(v).or(r.kleene(v)),
            Formula::Implies(l, r) => l.kleene(v).implies(r.kleene(v)),
            Formula::Iff(l, r) => l.kleene(v).iff(r.kleene(v)),
        }
    }

    /// Kleene satisfaction: the value is at least 1/2 and both sides of every
    /// biconditional in the formula take the same value.
    ///
    /// Under this reading `x ↔ ¬x` is satisfied exactly by `x = 1/2`.
    pub fn kleene_satisfies(&self, valuation: &[KleeneValue]) -> Result<bool> {
        self.check_atoms(valuation.len())?;
        Ok(self.kleene(valuation) >= KleeneValue::Half && self.biconditionals_balanced(valuation))
    }

    fn biconditionals_balanced(&self, v: &[KleeneValue]) -> bool {
        match self {
            Formula::Top | Formula::Bottom | Formula::Atom(_) => true,
            Formula::Not(f) => f.biconditionals_balanced(v),
            Formula::Iff(l, r) => {
                l.kleene(v) == r.kleene(v)
                    && l.biconditionals_balanced(v)
                    && r.biconditionals_balanced(v)
            }
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.biconditionals_balanced(v) && r.biconditionals_balanced(v)
            }
        }
    }

    /// Renders the formula with the given atom names.
    pub fn display<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> impl fmt::Display + 'a {
        FormulaDisplay {
            formula: self,
            names,
        }
    }

    /// Parses a formula, resolving atom names against `names`.
    ///
    /// Connectives, loosest first: `<->`, `->` (right associative), `|`, `&`, `!`.
    /// Unicode `↔ → ∨ ∧ ¬` and `~` are accepted too; `T`/`⊤` and `F`/`⊥` are
    /// the constants.
    pub fn parse<S: AsRef<str>>(text: &str, names: &[S]) -> Result<Self> {
        Self::parse_with(text, |name| names.iter().position(|n| n.as_ref() == name))
    }

    /// Like [`Formula::parse`] with a custom atom resolver.
    pub fn parse_with<F: FnMut(&str) -> Option<usize>>(text: &str, resolve: F) -> Result<Self> {
        let tokens = tokenize(text)?;
        let mut parser = Parser {
            tokens,
            pos: 0,
            resolve,
        };
        let f = parser.iff()?;
        if parser.pos != parser.tokens.len() {
            return Err(formula_syntax("trailing input"));
        }
        Ok(f)
    }
}

struct FormulaDisplay<'a, S> {
    formula: &'a Formula,
    names: &'a [S],
}

impl<S: AsRef<str>> FormulaDisplay<'_, S> {
    fn write(&self, f: &mut fmt::Formatter<'_>, node: &Formula, parent: u8) -> fmt::Result {
        let prec = precedence(node);
        let wrap = prec < parent;
        if wrap {
            f.write_str("(")?;
        }
        match node {
            Formula::Top => f.write_str("T")?,
            Formula::Bottom => f.write_str("F")?,
            Formula::Atom(i) => match self.names.get(*i) {
                Some(n) => f.write_str(n.as_ref())?,
                None => write!(f, "#{i}")?,
            },
            Formula::Not(inner) => {
                f.write_str("!")?;
                self.write(f, inner, prec)?;
            }
            Formula::And(l, r) => self.binary(f, l, " & ", r, prec, prec + 1)?,
            Formula::Or(l, r) => self.binary(f, l, " | ", r, prec, prec + 1)?,
            Formula::Implies(l, r) => self.binary(f, l, " -> ", r, prec + 1, prec)?,
            Formula::Iff(l, r) => self.binary(f, l, " <-> ", r, prec + 1, prec + 1)?,
        }
        if wrap {
            f.write_str(")")?;
        }
        Ok(())
    }

    fn binary(
        &self,
        f: &mut fmt::Formatter<'_>,
        l: &Formula,
        op: &str,
        r: &Formula,
        lp: u8,
        rp: u8,
    ) -> fmt::Result {
        self.write(f, l, lp)?;
        f.write_str(op)?;
        self.write(f, r, rp)
    }
}

impl<S: AsRef<str>> fmt::Display for FormulaDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, self.formula, 0)
    }
}

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => 1,
        Formula::Implies(..) => 2,
        Formula::Or(..) => 3,
        Formula::And(..) => 4,
        Formula::Not(_) => 5,
        _ => 6,
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Not,
    And,
    Or,
    Implies,
    Iff,
    Open,
    Close,
}

fn formula_syntax(msg: &str) -> Error {
    Error::Syntax {
        line: 0,
        message: alloc::format!("formula: {msg}"),
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '.' || c == '\''
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        let tok = match c {
            c if c.is_whitespace() => continue,
            '(' => Token::Open,
            ')' => Token::Close,
            '!' | '~' | '¬' => Token::Not,
            '&' | '∧' => Token::And,
            '|' | '∨' => Token::Or,
            '→' => Token::Implies,
            '↔' => Token::Iff,
            '-' => match chars.next() {
                Some((_, '>')) => Token::Implies,
                _ => return Err(formula_syntax("expected `->`")),
            },
            '<' => match (chars.next(), chars.next()) {
                (Some((_, '-')), Some((_, '>'))) => Token::Iff,
                _ => return Err(formula_syntax("expected `<->`")),
            },
            '⊤' => Token::Ident("T".to_string()),
            '⊥' => Token::Ident("F".to_string()),
            c if is_ident_char(c) => {
                let mut end = i + c.len_utf8();
                while let Some(&(j, d)) = chars.peek() {
                    if !is_ident_char(d) {
                        break;
                    }
                    end = j + d.len_utf8();
                    chars.next();
                }
                Token::Ident(text[i..end].to_string())
            }
            other => return Err(formula_syntax(&alloc::format!("unexpected `{other}`"))),
        };
        out.push(tok);
    }
    Ok(out)
}

struct Parser<F> {
    tokens: Vec<Token>,
    pos: usize,
    resolve: F,
}

impl<F: FnMut(&str) -> Option<usize>> Parser<F> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, t: &Token) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<Formula> {
        let mut lhs = self.implies()?;
        while self.eat(&Token::Iff) {
            lhs = lhs.iff(self.implies()?);
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        if self.eat(&Token::Implies) {
            return Ok(lhs.implies(self.implies()?));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut lhs = self.and()?;
        while self.eat(&Token::Or) {
            lhs = lhs.or(self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.eat(&Token::And) {
            lhs = lhs.and(self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Not) => {
                self.pos += 1;
                Ok(self.unary()?.negate())
            }
            Some(Token::Open) => {
                self.pos += 1;
                let f = self.iff()?;
                if !self.eat(&Token::Close) {
                    return Err(formula_syntax("missing `)`"));
                }
                Ok(f)
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                if let Some(i) = (self.resolve)(&name) {
                    return Ok(Formula::Atom(i));
                }
                match name.as_str() {
                    "T" => Ok(Formula::Top),
                    "F" => Ok(Formula::Bottom),
                    _ => Err(Error::UnknownAtom(name)),
                }
            }
            Some(_) => Err(formula_syntax("unexpected connective")),
            None => Err(formula_syntax("unexpected end of input")),
        }
    }
}

/// A classical model: one truth value per atom, encoded as a bit mask where
/// bit `i` holds atom `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Model {
    bits: u64,
    len: u8,
}

impl Model {
    pub fn new(len: usize, bits: u64) -> Result<Self> {
        if len > MAX_MODEL_ATOMS {
            return Err(Error::CapExceeded {
                size: len,
                cap: MAX_MODEL_ATOMS,
            });
        }
        let mask = if len == 64 {
            u64::MAX
        } else {
            (1u64 << len) - 1
        };
        Ok(Self {
            bits: bits & mask,
            len: len as u8,
        })
    }

    pub fn from_bools(values: &[bool]) -> Result<Self> {
        let bits = values
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | (u64::from(b) << i));
        Self::new(values.len(), bits)
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        usize::from(self.len)
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }

    /// One character per atom in vocabulary order, e.g. `"10"` for `a ∧ ¬b`.
    pub fn to_bit_string(&self) -> String {
        (0..self.len())
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }

    pub fn from_bit_string(s: &str) -> Result<Self> {
        let values = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(formula_syntax("model bits must be 0 or 1")),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_bools(&values)
    }
}

/// The theory `{ x ↔ ⋀_{y ∈ Att(x)} ¬y | x ∈ S }`, one formula per argument in
/// declaration order. Unattacked arguments get `x ↔ ⊤`.
pub fn translate_theory(af: &ArgumentationFramework) -> Vec<Formula> {
    af.arguments()
        .map(|x| {
            let rhs =
                Formula::conjunction(af.attackers(x).iter().map(|&y| Formula::atom(y).negate()));
            Formula::atom(x).iff(rhs)
        })
        .collect()
}
