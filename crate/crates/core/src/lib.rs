//! Equational and probabilistic semantics for abstract argumentation
//! frameworks.
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! * frameworks, Caminada labellings and their brute-force enumeration;
//! * propositional formulas with classical and strong-Kleene evaluation;
//! * the product (`x = Π(1 − y)`) and max (`x = 1 − max y`) equation
//!   systems and a multi-start numerical solver;
//! * independent-atom ("syntactic") probabilities and their product
//!   distributions;
//! * distributions over classical models ("semantic" probabilities), the
//!   linear constraints they must satisfy, an exact rational simplex for
//!   feasibility and vertex sampling;
//! * graph surgeries approximating arbitrary complete labellings by
//!   product distributions;
//! * p-justifiability checks for comparison.
#![no_std]

extern crate alloc;

pub mod constructions;
pub mod distribution;
pub mod equations;
pub mod error;
pub mod formula;
pub mod framework;
pub mod kleene;
pub mod labelling;
pub mod method1;
pub mod method2;
pub mod rational;
pub mod simplex;
pub mod solver;
pub mod thimm;

pub use distribution::ModelDistribution;
pub use equations::{project, EquationKind, EquationSystem, Valuation};
pub use error::{Error, Result};
pub use formula::{translate_theory, Formula, Model};
pub use framework::{Arg, ArgumentationFramework};
pub use kleene::KleeneValue;
pub use labelling::{
    enumerate_complete_labellings, is_legal_labelling, CompleteLabellings, Label, Labelling,
};
pub use rational::Rational;
pub use solver::{solve, SeedStrategy, Solution, SolveConfig};
