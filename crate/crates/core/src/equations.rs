//! The numerical equation systems over `[0,1]^S`: the product form
//! `x = Π_{y ∈ Att(x)} (1 − y)` and the max form `x = 1 − max_{y ∈ Att(x)} y`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::framework::{Arg, ArgumentationFramework};
use crate::kleene::KleeneValue;
use crate::labelling::{Label, Labelling};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum EquationKind {
    /// `x = Π (1 − y)`.
    Inv,
    /// `x = 1 − max y`.
    Max,
}

/// Total map from arguments to `[0,1]`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct Valuation(Vec<f64>);

impl Valuation {
    /// Fails if any value lies outside `[0,1]` or is not finite.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::InvalidConfig(alloc::format!(
                "valuation entry {v} is outside [0,1]"
            )));
        }
        Ok(Self(values))
    }

    pub(crate) fn from_clamped(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn from_labelling(lab: &Labelling) -> Self {
        Self(
            lab.labels()
                .iter()
                .map(|l| l.to_kleene().to_f64())
                .collect(),
        )
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_values(self) -> Vec<f64> {
        self.0
    }

    pub fn get(&self, a: Arg) -> f64 {
        self.0[a.0]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Values within `tol` of 0 or 1 replaced by exactly 0 or 1.
    pub fn snapped(&self, tol: f64) -> Self {
        Self(self.0.iter().map(|&v| snap(v, tol)).collect())
    }

    /// Max-norm distance.
    pub fn distance(&self, other: &Valuation) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

pub(crate) fn snap(v: f64, tol: f64) -> f64 {
    if v <= tol {
        0.0
    } else if v >= 1.0 - tol {
        1.0
    } else {
        v
    }
}

/// Maps 1 to in, 0 to out and interior values to und. Comparisons are exact;
/// snap first when the valuation comes from a numerical solve.
pub fn project(v: &Valuation) -> Labelling {
    Labelling::new(
        v.0.iter()
            .map(|&x| {
                if x == 1.0 {
                    Label::In
                } else if x == 0.0 {
                    Label::Out
                } else {
                    Label::Und
                }
            })
            .collect(),
    )
}

/// An equation per argument, with optional frozen values.
#[derive(Debug, Clone)]
pub struct EquationSystem<'a> {
    af: &'a ArgumentationFramework,
    kind: EquationKind,
    pinned: Vec<Option<f64>>,
    exogenous: Vec<f64>,
}

impl<'a> EquationSystem<'a> {
    pub fn new(af: &'a ArgumentationFramework, kind: EquationKind) -> Self {
        Self {
            af,
            kind,
            pinned: vec![None; af.len()],
            exogenous: vec![0.0; af.len()],
        }
    }

    /// Product-form system where argument `x` is additionally attacked by
    /// a constant of value `strengths[x]`: `x = (1 − s_x) · Π (1 − y)`.
    pub fn with_exogenous_attack(
        af: &'a ArgumentationFramework,
        strengths: &[f64],
    ) -> Result<Self> {
        if strengths.len() != af.len() {
            return Err(Error::LabellingSize {
                expected: af.len(),
                got: strengths.len(),
            });
        }
        if let Some(i) = strengths.iter().position(|s| !(0.0..=1.0).contains(s)) {
            return Err(Error::InvalidPin(af.name(Arg(i)).into()));
        }
        let mut sys = Self::new(af, EquationKind::Inv);
        sys.exogenous = strengths.to_vec();
        Ok(sys)
    }

    /// Builds the system with `pinned` arguments frozen at 0 or 1. Pinned
    /// arguments keep their value in other arguments' right-hand sides.
    pub fn with_pins(
        af: &'a ArgumentationFramework,
        kind: EquationKind,
        pinned: &[(Arg, f64)],
    ) -> Result<Self> {
        let mut sys = Self::new(af, kind);
        for &(a, value) in pinned {
            if a.0 >= af.len() {
                return Err(Error::UnknownArgument(alloc::format!("#{}", a.0)));
            }
            if value != 0.0 && value != 1.0 {
                return Err(Error::InvalidPin(af.name(a).into()));
            }
            sys.pinned[a.0] = Some(value);
        }
        Ok(sys)
    }

    /// Pins in-labelled arguments to 1 and out-labelled ones to 0.
    pub fn pinned_to_labelling(
        af: &'a ArgumentationFramework,
        kind: EquationKind,
        lab: &Labelling,
    ) -> Result<Self> {
        let pins: Vec<(Arg, f64)> = af
            .arguments()
            .filter_map(|a| match lab.get(a) {
                Label::In => Some((a, 1.0)),
                Label::Out => Some((a, 0.0)),
                Label::Und => None,
            })
            .collect();
        Self::with_pins(af, kind, &pins)
    }

    /// Copy with the given arguments additionally frozen (values unchecked).
    pub(crate) fn with_extra_pins(&self, pins: &[(Arg, f64)]) -> Self {
        let mut sys = self.clone();
        for &(a, v) in pins {
            sys.pinned[a.0] = Some(v);
        }
        sys
    }

    pub fn framework(&self) -> &'a ArgumentationFramework {
        self.af
    }

    pub fn kind(&self) -> EquationKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.af.len()
    }

    pub fn is_empty(&self) -> bool {
        self.af.is_empty()
    }

    pub fn pin(&self, a: Arg) -> Option<f64> {
        self.pinned[a.0]
    }

    pub fn pins(&self) -> &[Option<f64>] {
        &self.pinned
    }

    /// Right-hand side of argument `x`'s equation at `v`.
    pub fn rhs(&self, x: Arg, v: &[f64]) -> f64 {
        if let Some(p) = self.pinned[x.0] {
            return p;
        }
        let attackers = self.af.attackers(x);
        match self.kind {
            EquationKind::Inv => {
                (1.0 - self.exogenous[x.0])
                    * attackers.iter().map(|&y| 1.0 - v[y.0]).product::<f64>()
            }
            EquationKind::Max => 1.0 - attackers.iter().map(|&y| v[y.0]).fold(0.0, f64::max),
        }
    }

    pub fn rhs_all(&self, v: &[f64]) -> Vec<f64> {
        self.af.arguments().map(|x| self.rhs(x, v)).collect()
    }

    /// `F(v) = v − rhs(v)`.
    pub fn defects(&self, v: &[f64]) -> Vec<f64> {
        self.af
            .arguments()
            .map(|x| v[x.0] - self.rhs(x, v))
            .collect()
    }

    /// Max-norm defect of the system at `v`.
    pub fn residual(&self, v: &Valuation) -> f64 {
        self.residual_of(&v.0)
    }

    pub(crate) fn residual_of(&self, v: &[f64]) -> f64 {
        self.defects(v).iter().fold(0.0, |m, d| m.max(d.abs()))
    }

    /// Jacobian of `F(v) = v − rhs(v)`, row-major.
    pub fn jacobian(&self, v: &[f64]) -> Vec<Vec<f64>> {
        let n = self.len();
        let mut jac = vec![vec![0.0; n]; n];
        for x in self.af.arguments() {
            let row = &mut jac[x.0];
            row[x.0] = 1.0;
            if self.pinned[x.0].is_some() {
                continue;
            }
            let attackers = self.af.attackers(x);
            match self.kind {
                EquationKind::Inv => {
                    for (k, &y) in attackers.iter().enumerate() {
                        let others: f64 = attackers
                            .iter()
                            .enumerate()
                            .filter(|&(j, _)| j != k)
                            .map(|(_, &z)| 1.0 - v[z.0])
                            .product();
                        row[y.0] += (1.0 - self.exogenous[x.0]) * others;
                    }
                }
                EquationKind::Max => {
                    if let Some(&y) = attackers
                        .iter()
                        .reduce(|a, b| if v[b.0] > v[a.0] { b } else { a })
                    {
                        row[y.0] += 1.0;
                    }
                }
            }
        }
        jac
    }

    /// Exact check of a `{0, 1/2, 1}` valuation against the max form.
    pub fn max_holds_exactly(&self, v: &[KleeneValue]) -> bool {
        self.af.arguments().all(|x| {
            let rhs = match self.pinned[x.0] {
                Some(p) => (p * 2.0) as u8,
                None => {
                    2 - self
                        .af
                        .attackers(x)
                        .iter()
                        .map(|&y| v[y.0].halves())
                        .max()
                        .unwrap_or(0)
                }
            };
            v[x.0].halves() == rhs
        })
    }
}

/// All exact `{0, 1/2, 1}` solutions of the max form, by enumeration.
pub fn exact_max_solutions(
    af: &ArgumentationFramework,
    cap: usize,
) -> Result<Vec<Vec<KleeneValue>>> {
    if af.len() > cap {
        return Err(Error::CapExceeded {
            size: af.len(),
            cap,
        });
    }
    let sys = EquationSystem::new(af, EquationKind::Max);
    let n = af.len();
    let mut v = vec![KleeneValue::False; n];
    let mut out = Vec::new();
    loop {
        if sys.max_holds_exactly(&v) {
            out.push(v.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            match KleeneValue::from_halves(v[i].halves() + 1) {
                Some(next) => {
                    v[i] = next;
                    break;
                }
                None => v[i] = KleeneValue::False,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig_pair() -> ArgumentationFramework {
        ArgumentationFramework::parse("arg a\narg b\natt a b\natt b a\natt a a").unwrap()
    }

    fn pair_with_und() -> ArgumentationFramework {
        ArgumentationFramework::parse(
            "arg a\narg b\narg u\natt a b\natt b a\natt a a\natt u u\natt u a\natt u b",
        )
        .unwrap()
    }

    #[test]
    fn residual_examples() {
        let af = fig_pair();
        let sys = EquationSystem::new(&af, EquationKind::Inv);
        assert_eq!(sys.residual(&Valuation::new(vec![0.0, 1.0]).unwrap()), 0.0);
        // a − (1−a)(1−b) = 1/2 − 1/4, b − (1−a) = 0
        assert_eq!(sys.residual(&Valuation::new(vec![0.5, 0.5]).unwrap()), 0.25);
    }

    #[test]
    fn und_augmented_equations() {
        let af = pair_with_und();
        let sys = EquationSystem::new(&af, EquationKind::Inv);
        let (a, b, u) = (0.3, 0.6, 0.2);
        let rhs = sys.rhs_all(&[a, b, u]);
        assert_eq!(rhs[2], 1.0 - u);
        assert!((rhs[0] - (1.0 - u) * (1.0 - a) * (1.0 - b)).abs() < 1e-15);
        assert!((rhs[1] - (1.0 - u) * (1.0 - a)).abs() < 1e-15);

        let s5 = libm_free_sqrt5();
        let sol = Valuation::new(vec![s5 - 2.0, (3.0 - s5) / 2.0, 0.5]).unwrap();
        assert!(sys.residual(&sol) <= 1e-9);
    }

    fn libm_free_sqrt5() -> f64 {
        // Newton iteration for √5, test-only
        let mut x = 2.0f64;
        for _ in 0..40 {
            x = 0.5 * (x + 5.0 / x);
        }
        x
    }

    #[test]
    fn unattacked_is_one() {
        let af = ArgumentationFramework::parse("arg x").unwrap();
        let sys = EquationSystem::new(&af, EquationKind::Inv);
        assert_eq!(sys.rhs(Arg(0), &[0.3]), 1.0);
        let sys = EquationSystem::new(&af, EquationKind::Max);
        assert_eq!(sys.rhs(Arg(0), &[0.3]), 1.0);
    }

    #[test]
    fn pins() {
        let af = ArgumentationFramework::parse(
            "arg a\narg b\narg c\narg d\narg u\natt a b\natt b a\natt c d\natt d c\natt u u\natt u c\natt u d",
        )
        .unwrap();
        let sys =
            EquationSystem::with_pins(&af, EquationKind::Inv, &[(Arg(0), 1.0), (Arg(1), 0.0)])
                .unwrap();
        let v = [0.9, 0.9, 0.25, 0.4, 0.7];
        let rhs = sys.rhs_all(&v);
        assert_eq!(rhs[0], 1.0);
        assert_eq!(rhs[1], 0.0);
        assert!((rhs[2] - (1.0 - 0.4) * (1.0 - 0.7)).abs() < 1e-15);
        assert!((rhs[3] - (1.0 - 0.25) * (1.0 - 0.7)).abs() < 1e-15);
        assert!((rhs[4] - 0.3).abs() < 1e-15);

        assert_eq!(
            EquationSystem::with_pins(&af, EquationKind::Inv, &[(Arg(0), 0.5)]).unwrap_err(),
            Error::InvalidPin("a".into())
        );
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let af = pair_with_und();
        let sys = EquationSystem::new(&af, EquationKind::Inv);
        let v = [0.3, 0.45, 0.6];
        let jac = sys.jacobian(&v);
        let h = 1e-7;
        for j in 0..3 {
            let mut vp = v;
            vp[j] += h;
            let mut vm = v;
            vm[j] -= h;
            let (fp, fm) = (sys.defects(&vp), sys.defects(&vm));
            for i in 0..3 {
                let fd = (fp[i] - fm[i]) / (2.0 * h);
                assert!(
                    (fd - jac[i][j]).abs() < 1e-6,
                    "({i},{j}) {fd} vs {}",
                    jac[i][j]
                );
            }
        }
    }

    #[test]
    fn projection() {
        let lab = project(&Valuation::new(vec![0.5, 0.236, 0.382]).unwrap());
        assert!(lab.labels().iter().all(|&l| l == Label::Und));
        let lab = project(&Valuation::new(vec![0.0, 1.0]).unwrap());
        assert_eq!(lab.labels(), &[Label::Out, Label::In]);
        let snapped = Valuation::new(vec![1e-12, 1.0 - 1e-12, 0.5])
            .unwrap()
            .snapped(1e-9);
        assert_eq!(
            project(&snapped).labels(),
            &[Label::Out, Label::In, Label::Und]
        );
    }

    #[test]
    fn exact_max_on_pair() {
        use KleeneValue::*;
        let sols = exact_max_solutions(&fig_pair(), 14).unwrap();
        assert_eq!(sols, vec![vec![False, True], vec![Half, Half]]);
    }

    #[test]
    fn rejects_out_of_range_valuation() {
        assert!(Valuation::new(vec![1.5]).is_err());
        assert!(Valuation::new(vec![f64::NAN]).is_err());
    }
}
