//! Exact rational phase-one simplex for `A x = b, x ≥ 0`, with Bland's rule,
//! Farkas certificates, and bounded vertex enumeration by pivoting.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Equality-form feasibility problem: `rows · x = rhs`, `x ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub columns: usize,
    pub rows: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
}

/// Multipliers `y` with `yᵀA ≤ 0` column-wise and `yᵀb > 0`; no `x ≥ 0`
/// can then satisfy `Ax = b`.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub multipliers: Vec<Rational>,
}

impl Certificate {
    /// Checks the Farkas conditions against `lp`.
    pub fn verify(&self, lp: &LinearProgram) -> bool {
        if self.multipliers.len() != lp.rows.len() {
            return false;
        }
        let yb = self
            .multipliers
            .iter()
            .zip(&lp.rhs)
            .fold(Rational::zero(), |acc, (y, b)| acc + y * b);
        if !yb.is_positive() {
            return false;
        }
        (0..lp.columns).all(|j| {
            let ya = self
                .multipliers
                .iter()
                .zip(&lp.rows)
                .fold(Rational::zero(), |acc, (y, row)| acc + y * &row[j]);
            !ya.is_positive()
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Feasibility {
    Feasible(Vec<Rational>),
    Infeasible(Certificate),
}

#[derive(Clone)]
struct Tableau {
    /// `m` constraint rows of width `cols + 1` (last entry is the rhs).
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.cols]
    }

    fn pivot(&mut self, r: usize, c: usize, objective: Option<&mut Vec<Rational>>) {
        let p = self.rows[r][c].clone();
        if !p.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v /= &p;
                }
            }
        }
        let pivot_row = self.rows[r].clone();
        let eliminate = |row: &mut Vec<Rational>| {
            let f = row[c].clone();
            if f.is_zero() {
                return;
            }
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        if let Some(obj) = objective {
            eliminate(obj);
        }
        self.basis[r] = c;
    }

    /// Bland's leaving row among rows with positive entry in column `c`.
    fn ratio_rows(&self, c: usize) -> Vec<usize> {
        let mut best: Option<Rational> = None;
        let mut rows = Vec::new();
        for i in 0..self.rows.len() {
            let a = &self.rows[i][c];
            if !a.is_positive() {
                continue;
            }
            let ratio = self.rhs(i) / a;
            match &best {
                Some(b) if ratio > *b => {}
                Some(b) if ratio == *b => rows.push(i),
                _ => {
                    best = Some(ratio);
                    rows.clear();
                    rows.push(i);
                }
            }
        }
        rows
    }

    fn solution(&self, n: usize) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n {
                x[b] = self.rhs(i).clone();
            }
        }
        x
    }
}

/// Phase one. On success returns a tableau over the original columns only
/// (redundant rows dropped) whose basis is feasible.
#[allow(clippy::needless_range_loop)]
fn phase_one(lp: &LinearProgram) -> Result<Tableau, Certificate> {
    let m = lp.rows.len();
    let n = lp.columns;
    let cols = n + m;
    let mut signs = vec![Rational::one(); m];
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = Vec::with_capacity(cols + 1);
        let negate = lp.rhs[i].is_negative();
        if negate {
            signs[i] = -Rational::one();
        }
        for v in &lp.rows[i] {
            row.push(if negate { -v.clone() } else { v.clone() });
        }
        for k in 0..m {
            row.push(if k == i {
                Rational::one()
            } else {
                Rational::zero()
            });
        }
        row.push(if negate {
            -lp.rhs[i].clone()
        } else {
            lp.rhs[i].clone()
        });
        rows.push(row);
    }
    let mut tab = Tableau {
        rows,
        basis: (n..n + m).collect(),
        cols,
    };
    // reduced costs for minimising the sum of artificials
    let mut obj = vec![Rational::zero(); cols + 1];
    for row in &tab.rows {
        for j in 0..n {
            obj[j] -= &row[j];
        }
        obj[cols] -= &row[cols];
    }

    while let Some(c) = (0..n).find(|&j| obj[j].is_negative()) {
        let candidates = tab.ratio_rows(c);
        let Some(&r) = candidates.iter().min_by_key(|&&i| tab.basis[i]) else {
            // cannot happen in phase one: the objective is bounded below
            break;
        };
        tab.pivot(r, c, Some(&mut obj));
    }

    if obj[cols].is_negative() {
        let multipliers = (0..m)
            .map(|i| (Rational::one() - &obj[n + i]) * &signs[i])
            .collect();
        return Err(Certificate { multipliers });
    }

    // drive artificials out of the basis; rows where that fails are redundant
    let mut i = 0;
    while i < tab.rows.len() {
        if tab.basis[i] >= n {
            match (0..n).find(|&j| !tab.rows[i][j].is_zero()) {
                Some(c) => tab.pivot(i, c, None),
                None => {
                    tab.rows.remove(i);
                    tab.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    for row in tab.rows.iter_mut() {
        let rhs = row[cols].clone();
        row.truncate(n);
        row.push(rhs);
    }
    tab.cols = n;
    Ok(tab)
}

/// A feasible vertex, or a Farkas certificate of infeasibility.
pub fn find_feasible(lp: &LinearProgram) -> Feasibility {
    match phase_one(lp) {
        Ok(tab) => Feasibility::Feasible(tab.solution(lp.columns)),
        Err(cert) => Feasibility::Infeasible(cert),
    }
}

/// Up to `cap` distinct basic feasible solutions, found breadth-first from
/// the phase-one basis by single pivots. Deterministic. At most
/// `basis_budget` bases are expanded.
pub fn enumerate_vertices(
    lp: &LinearProgram,
    cap: usize,
    basis_budget: usize,
) -> Vec<Vec<Rational>> {
    let Ok(start) = phase_one(lp) else {
        return Vec::new();
    };
    let n = lp.columns;
    let mut seen_bases: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut seen_vertices: BTreeSet<Vec<Rational>> = BTreeSet::new();
    let mut vertices = Vec::new();
    let mut queue = VecDeque::new();
    let key = |t: &Tableau| {
        let mut b = t.basis.clone();
        b.sort_unstable();
        b
    };
    seen_bases.insert(key(&start));
    queue.push_back(start);
    let mut expanded = 0;
    while let Some(tab) = queue.pop_front() {
        let x = tab.solution(n);
        if seen_vertices.insert(x.clone()) {
            vertices.push(x);
            if vertices.len() >= cap {
                break;
            }
        }
        expanded += 1;
        if expanded > basis_budget {
            break;
        }
        let basic: BTreeSet<usize> = tab.basis.iter().copied().collect();
        for c in (0..n).filter(|c| !basic.contains(c)) {
            for r in tab.ratio_rows(c) {
                let mut basis = tab.basis.clone();
                basis[r] = c;
                basis.sort_unstable();
                if seen_bases.insert(basis) {
                    let mut next = tab.clone();
                    next.pivot(r, c, None);
                    queue.push_back(next);
                }
            }
        }
    }
    vertices
}
