//! Small named networks shipped in `data/`, used by the gallery and tests.

use eqarg_core::ArgumentationFramework;

macro_rules! catalog {
    ($($(#[$doc:meta])* $name:ident => $file:literal,)*) => {
        $(
            $(#[$doc])*
            pub fn $name() -> ArgumentationFramework {
                ArgumentationFramework::parse(include_str!(concat!("../data/", $file)))
                    .expect(concat!("bundled ", $file, " parses"))
            }
        )*

        /// Every bundled network with its file stem.
        pub fn all() -> Vec<(&'static str, ArgumentationFramework)> {
            vec![$((stringify!($name), $name()),)*]
        }
    };
}

catalog! {
    /// `a` attacks itself and `b`; `b` attacks `a`.
    self_attacker_pair => "self_attacker_pair.af",
    /// [`self_attacker_pair`] with a self-attacking `u` attacking `a` and `b`.
    self_attacker_pair_with_und => "self_attacker_pair_with_und.af",
    five_argument_network => "five_argument_network.af",
    /// `a1 ↔ a2`, both attacking `a3`.
    mutual_pair_joint_target => "mutual_pair_joint_target.af",
    /// `a` and `b` each attacked by both.
    doubly_attacked_pair => "doubly_attacked_pair.af",
    two_self_attackers_one_target => "two_self_attackers_one_target.af",
    two_self_attackers_two_targets => "two_self_attackers_two_targets.af",
    /// `a ↔ b` and `c ↔ d`.
    two_mutual_pairs => "two_mutual_pairs.af",
    two_mutual_pairs_with_und => "two_mutual_pairs_with_und.af",
    mutual_pair_and_self_attacker_pair => "mutual_pair_and_self_attacker_pair.af",
    self_attacker => "self_attacker.af",
}

pub const FIVE_ARGUMENT_DISTRIBUTION: &str =
    include_str!("../data/five_argument_distribution.json");
pub const JOINT_ATTACK_INSTANTIATION: &str =
    include_str!("../data/joint_attack_instantiation.json");
