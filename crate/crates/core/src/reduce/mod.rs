//! Attacker reduction by control congruence.
//!
//! An attacker is treated as a supervisor for the new plant
//! `G || CE || BT(S)^A`. Its states are grouped into cells of pairwise
//! compatible states that are closed under transitions; the quotient by such
//! a partition yields an attack-equivalent attacker.

pub mod brute;
pub mod congruence;
pub mod profile;
pub mod ra;

pub use brute::{brute_min, brute_min_in, DEFAULT_CAP};
pub use congruence::{check_congruence, induce, is_congruence, Congruence, Violation};
pub use profile::{compatible, compute_profile, EnDisProfile};
pub use ra::reduce_ra;

use crate::automaton::{Automaton, StateId};

/// A congruence, its quotient attacker and the profile it was checked against.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub congruence: Congruence,
    pub reduced: Automaton,
    pub profile: EnDisProfile,
}

/// Breadth-first order from the initial state (labels in canonical order),
/// followed by the unreachable states by index.
pub fn canonical_order(a: &Automaton) -> Vec<StateId> {
    let mut order = a.bfs_order();
    let mut seen = vec![false; a.num_states()];
    for &q in &order {
        seen[q] = true;
    }
    order.extend(a.states().filter(|&q| !seen[q]));
    order
}
