//! Probability mass over the classical models of an atom set.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt::Debug;

use num_traits::{Num, Signed};

use crate::error::{Error, Result};
use crate::formula::{Formula, Model};
use crate::rational::{to_f64, Rational};

/// Model caps for anything that walks all `2^n` models.
pub const DEFAULT_MODEL_CAP: usize = 16;
pub const HARD_MODEL_CAP: usize = 20;

/// Scalar usable as a probability mass: exact rationals or `f64`.
pub trait Mass: Num + Signed + Clone + PartialOrd + Debug {
    /// Whether a total of masses counts as one (exactly for rationals).
    fn is_unit_total(&self) -> bool;
    fn as_f64(&self) -> f64;
}

impl Mass for Rational {
    fn is_unit_total(&self) -> bool {
        num_traits::One::is_one(self)
    }

    fn as_f64(&self) -> f64 {
        to_f64(self)
    }
}

impl Mass for f64 {
    fn is_unit_total(&self) -> bool {
        (self - 1.0).abs() <= 1e-9
    }

    fn as_f64(&self) -> f64 {
        *self
    }
}

pub fn check_model_cap(atoms: usize, cap: usize) -> Result<()> {
    let cap = cap.min(HARD_MODEL_CAP);
    if atoms > cap {
        return Err(Error::CapExceeded { size: atoms, cap });
    }
    Ok(())
}

/// Sparse mass over models keyed by bit mask (bit `i` = atom `i`). Absent
/// models have mass zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelDistribution<T = Rational> {
    atoms: usize,
    mass: BTreeMap<u64, T>,
}

impl<T: Mass> ModelDistribution<T> {
    /// Validates non-negativity and total mass one; zero entries are dropped
    /// and repeated models are summed.
    pub fn new<I: IntoIterator<Item = (u64, T)>>(atoms: usize, entries: I) -> Result<Self> {
        check_model_cap(atoms, HARD_MODEL_CAP)?;
        let limit = 1u64 << atoms;
        let mut mass: BTreeMap<u64, T> = BTreeMap::new();
        for (bits, m) in entries {
            if bits >= limit {
                return Err(Error::InvalidDistribution(alloc::format!(
                    "model {bits:#b} has more than {atoms} atoms"
                )));
            }
            if m.is_negative() {
                return Err(Error::InvalidDistribution(alloc::format!(
                    "negative mass {m:?}"
                )));
            }
            let slot = mass.entry(bits).or_insert_with(T::zero);
            *slot = slot.clone() + m;
        }
        mass.retain(|_, m| !m.is_zero());
        let d = Self { atoms, mass };
        if !d.total().is_unit_total() {
            return Err(Error::InvalidDistribution(alloc::format!(
                "masses sum to {:?}, not 1",
                d.total()
            )));
        }
        Ok(d)
    }

    /// Builds from a dense vector indexed by model bits.
    pub fn from_dense(atoms: usize, dense: Vec<T>) -> Result<Self> {
        Self::new(
            atoms,
            dense.into_iter().enumerate().map(|(i, m)| (i as u64, m)),
        )
    }

    pub fn point_mass(atoms: usize, bits: u64) -> Result<Self> {
        Self::new(atoms, [(bits, T::one())])
    }

    pub(crate) fn from_parts_unchecked(atoms: usize, mass: BTreeMap<u64, T>) -> Self {
        Self { atoms, mass }
    }

    pub fn atoms(&self) -> usize {
        self.atoms
    }

    /// Support in increasing bit order.
    pub fn support(&self) -> impl Iterator<Item = (Model, &T)> + '_ {
        let n = self.atoms;
        self.mass
            .iter()
            .map(move |(&bits, m)| (Model::new(n, bits).expect("atoms within cap"), m))
    }

    pub fn entries(&self) -> impl Iterator<Item = (u64, &T)> + '_ {
        self.mass.iter().map(|(&b, m)| (b, m))
    }

    pub fn mass_of(&self, bits: u64) -> T {
        self.mass.get(&bits).cloned().unwrap_or_else(T::zero)
    }

    pub fn total(&self) -> T {
        self.mass.values().fold(T::zero(), |acc, m| acc + m.clone())
    }

    /// `P(φ) = Σ_{ε ⊩ φ} P(ε)`.
    pub fn prob_of_formula(&self, f: &Formula) -> Result<T> {
        f.check_atoms(self.atoms)?;
        Ok(self.prob_where(|bits| f.holds(bits)))
    }

    /// Total mass of the models accepted by `pred`.
    pub fn prob_where<F: Fn(u64) -> bool>(&self, pred: F) -> T {
        self.mass
            .iter()
            .filter(|(&bits, _)| pred(bits))
            .fold(T::zero(), |acc, (_, m)| acc + m.clone())
    }

    /// Marginal `P(atom)`.
    pub fn marginal(&self, atom: usize) -> T {
        self.prob_where(|bits| bits >> atom & 1 == 1)
    }

    pub fn marginals(&self) -> Vec<T> {
        (0..self.atoms).map(|i| self.marginal(i)).collect()
    }

    pub fn to_f64(&self) -> ModelDistribution<f64> {
        ModelDistribution {
            atoms: self.atoms,
            mass: self.mass.iter().map(|(&b, m)| (b, m.as_f64())).collect(),
        }
    }
}
