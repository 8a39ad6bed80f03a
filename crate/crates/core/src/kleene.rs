use core::fmt;

/// A strong-Kleene truth value in `{0, 1/2, 1}`, stored exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum KleeneValue {
    False,
    Half,
    True,
}

impl KleeneValue {
    pub const ALL: [KleeneValue; 3] = [KleeneValue::False, KleeneValue::Half, KleeneValue::True];

    /// Value in halves: 0, 1 or 2.
    pub fn halves(self) -> u8 {
        match self {
            KleeneValue::False => 0,
            KleeneValue::Half => 1,
            KleeneValue::True => 2,
        }
    }

    pub fn from_halves(h: u8) -> Option<Self> {
        match h {
            0 => Some(KleeneValue::False),
            1 => Some(KleeneValue::Half),
            2 => Some(KleeneValue::True),
            _ => None,
        }
    }

    pub fn to_f64(self) -> f64 {
        f64::from(self.halves()) / 2.0
    }

    /// Complement to one.
    pub fn negate(self) -> Self {
        Self::from_halves(2 - self.halves()).unwrap()
    }

    pub fn and(self, other: Self) -> Self {
        self.min(other)
    }

    pub fn or(self, other: Self) -> Self {
        self.max(other)
    }

    /// `¬a ∨ b`.
    pub fn implies(self, other: Self) -> Self {
        self.negate().or(other)
    }

    /// `(a → b) ∧ (b → a)`.
    pub fn iff(self, other: Self) -> Self {
        self.implies(other).and(other.implies(self))
    }
}

impl fmt::Display for KleeneValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KleeneValue::False => "0",
            KleeneValue::Half => "1/2",
            KleeneValue::True => "1",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::KleeneValue::{self, *};

    #[test]
    fn closed_under_connectives() {
        for a in KleeneValue::ALL {
            assert_eq!(a.negate().negate(), a);
            for b in KleeneValue::ALL {
                assert_eq!(a.and(b).halves(), a.halves().min(b.halves()));
                assert_eq!(a.or(b).halves(), a.halves().max(b.halves()));
                assert_eq!(a.iff(b), b.iff(a));
            }
        }
    }

    #[test]
    fn iff_table() {
        assert_eq!(Half.iff(Half), Half);
        assert_eq!(True.iff(False), False);
        assert_eq!(False.iff(False), True);
        assert_eq!(True.iff(Half), Half);
    }
}
