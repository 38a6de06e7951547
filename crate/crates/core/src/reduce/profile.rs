use std::collections::BTreeSet;

use crate::automaton::{Automaton, StateId};
use crate::error::{Error, Result};
use crate::label::EventLabel;
use crate::transform::AttackContext;

/// Enabled and disabled attacker events per attacker state.
///
/// `dis[q]` collects the attacker-alphabet events that the new plant
/// `G || CE || BT(S)^A` can execute at some closed-loop state paired with `q`
/// while `q` has no transition for them. States never reached in the closed
/// loop have an empty disabled set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnDisProfile {
    pub en: Vec<BTreeSet<EventLabel>>,
    pub dis: Vec<BTreeSet<EventLabel>>,
    pub reached: Vec<bool>,
}

pub(crate) fn check_attacker_labels(a: &Automaton, ctx: &AttackContext) -> Result<()> {
    for l in a.alphabet() {
        if !ctx.alphabet.admits(l) {
            return Err(Error::invalid(format!(
                "attacker `{}` uses label `{l}` outside the attacker alphabet",
                a.name()
            )));
        }
    }
    Ok(())
}

pub fn compute_profile(a: &Automaton, ctx: &AttackContext) -> Result<EnDisProfile> {
    check_attacker_labels(a, ctx)?;
    let sigma_a = ctx.alphabet.attacker_alphabet();
    let n = a.num_states();
    let en: Vec<BTreeSet<EventLabel>> = a
        .states()
        .map(|q| a.transitions_from(q).map(|(l, _)| l.clone()).collect())
        .collect();
    let mut dis = vec![BTreeSet::new(); n];
    let mut reached = vec![false; n];
    let closed = ctx.closed_loop(a);
    for &(p, q) in &closed.pairs {
        reached[q] = true;
        for (l, _) in ctx.plant_prime.transitions_from(p) {
            if sigma_a.contains(l) && a.step(q, l).is_none() {
                dis[q].insert(l.clone());
            }
        }
    }
    Ok(EnDisProfile { en, dis, reached })
}

impl EnDisProfile {
    pub fn num_states(&self) -> usize {
        self.en.len()
    }

    /// No event enabled at one state is disabled at the other.
    pub fn compatible(&self, q: StateId, r: StateId) -> bool {
        self.en[q].is_disjoint(&self.dis[r]) && self.en[r].is_disjoint(&self.dis[q])
    }

    /// Dense compatibility matrix.
    pub fn compatibility(&self) -> Vec<Vec<bool>> {
        let n = self.num_states();
        (0..n)
            .map(|q| (0..n).map(|r| self.compatible(q, r)).collect())
            .collect()
    }

    /// The same profile under a state renumbering (`order[new] = old`).
    pub(crate) fn permuted(&self, order: &[StateId]) -> EnDisProfile {
        EnDisProfile {
            en: order.iter().map(|&q| self.en[q].clone()).collect(),
            dis: order.iter().map(|&q| self.dis[q].clone()).collect(),
            reached: order.iter().map(|&q| self.reached[q]).collect(),
        }
    }
}

/// Free function form of [`EnDisProfile::compatible`].
pub fn compatible(profile: &EnDisProfile, q: StateId, r: StateId) -> bool {
    profile.compatible(q, r)
}
