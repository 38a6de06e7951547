//! Attack equivalence, attacker validity and covertness.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::automaton::{Automaton, StateId};
use crate::equiv::{language_equal, marked_language_equal, shortest_path_to, trace, Comparison, Parents};
use crate::error::Result;
use crate::label::{render_string, EventLabel};
use crate::reduce::profile::{check_attacker_labels, compute_profile};
use crate::transform::AttackContext;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AttackComparison {
    Equivalent,
    /// The closed behaviours differ; shortest distinguishing string.
    ClosedDiffers(Vec<EventLabel>),
    /// Closed behaviours agree but the marked (damage) behaviours differ.
    MarkedDiffers(Vec<EventLabel>),
}

impl AttackComparison {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, AttackComparison::Equivalent)
    }
}

impl fmt::Display for AttackComparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AttackComparison::Equivalent => write!(f, "attack-equivalent"),
            AttackComparison::ClosedDiffers(w) => {
                write!(
                    f,
                    "not attack-equivalent (closed behaviour): {}",
                    render_string(w)
                )
            }
            AttackComparison::MarkedDiffers(w) => {
                write!(
                    f,
                    "not attack-equivalent (marked behaviour): {}",
                    render_string(w)
                )
            }
        }
    }
}

/// Compares `G || CE || BT(S)^A || a1` with `G || CE || BT(S)^A || a2`.
pub fn attack_equivalent(a1: &Automaton, a2: &Automaton, ctx: &AttackContext) -> Result<AttackComparison> {
    check_attacker_labels(a1, ctx)?;
    check_attacker_labels(a2, ctx)?;
    let b1 = ctx.closed_loop(a1).automaton;
    let b2 = ctx.closed_loop(a2).automaton;
    if let Comparison::Differ(w) = language_equal(&b1, &b2) {
        return Ok(AttackComparison::ClosedDiffers(w));
    }
    if let Comparison::Differ(w) = marked_language_equal(&b1, &b2) {
        return Ok(AttackComparison::MarkedDiffers(w));
    }
    Ok(AttackComparison::Equivalent)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    Pass,
    Fail(String),
}

impl Check {
    pub fn passed(&self) -> bool {
        matches!(self, Check::Pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidityReport {
    /// Every attacker string follows the attack constraints.
    pub containment: Check,
    /// Only attacked copies are ever disabled.
    pub controllability: Check,
    /// Events the attacker cannot observe do not change its state.
    pub feasibility: Check,
}

impl ValidityReport {
    pub fn passed(&self) -> bool {
        self.containment.passed() && self.controllability.passed() && self.feasibility.passed()
    }
}

impl fmt::Display for ValidityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, check) in [
            ("containment", &self.containment),
            ("controllability", &self.controllability),
            ("feasibility", &self.feasibility),
        ] {
            match check {
                Check::Pass => writeln!(f, "PASS {name}")?,
                Check::Fail(why) => writeln!(f, "FAIL {name}: {why}")?,
            }
        }
        Ok(())
    }
}

/// `L(a) ⊆ L(AC)`, by simulating `a` inside `ac`. Returns a shortest string
/// of `a` that `ac` cannot follow.
fn containment_witness(a: &Automaton, ac: &Automaton) -> Option<Vec<EventLabel>> {
    let start = (a.initial(), ac.initial());
    let mut parent: Parents<(StateId, StateId)> = HashMap::from([(start, None)]);
    let mut queue = VecDeque::from([start]);
    while let Some(cur @ (p, q)) = queue.pop_front() {
        for (l, pd) in a.transitions_from(p) {
            match ac.step(q, l) {
                None => {
                    let mut w = trace(&parent, cur);
                    w.push(l.clone());
                    return Some(w);
                }
                Some(qd) => {
                    if let Entry::Vacant(e) = parent.entry((pd, qd)) {
                        e.insert(Some((cur, l.clone())));
                        queue.push_back((pd, qd));
                    }
                }
            }
        }
    }
    None
}

pub fn validate_attacker(a: &Automaton, ctx: &AttackContext) -> ValidityReport {
    let containment = match containment_witness(a, &ctx.ac) {
        None => Check::Pass,
        Some(w) => Check::Fail(format!(
            "string outside the attack constraints: {}",
            render_string(&w)
        )),
    };

    let controllability = match compute_profile(a, ctx) {
        Err(e) => Check::Fail(e.to_string()),
        Ok(profile) => {
            let bad = a.states().find_map(|q| {
                profile.dis[q]
                    .iter()
                    .find(|l| !l.is_attacked())
                    .map(|l| (q, l.clone()))
            });
            match bad {
                None => Check::Pass,
                Some((q, l)) => {
                    let closed = ctx.closed_loop(a);
                    let witness = shortest_path_to(&closed.automaton, |x| {
                        let (p, r) = closed.pairs[x];
                        r == q && ctx.plant_prime.step(p, &l).is_some()
                    })
                    .unwrap_or_default();
                    Check::Fail(format!(
                        "state `{}` disables `{l}` after {}",
                        a.state_name(q),
                        render_string(&witness)
                    ))
                }
            }
        }
    };

    let feasibility = a
        .transitions()
        .find(|&(q, l, d)| l.is_plain() && d != q && !ctx.alphabet.is_attacker_observable(l.event().unwrap()))
        .map_or(Check::Pass, |(q, l, d)| {
            Check::Fail(format!(
                "unobserved event `{l}` moves `{}` to `{}`",
                a.state_name(q),
                a.state_name(d)
            ))
        });

    ValidityReport {
        containment,
        controllability,
        feasibility,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Covertness {
    Covert,
    /// Shortest closed-loop string that reaches the exposure sink.
    Exposed(Vec<EventLabel>),
}

impl Covertness {
    pub fn is_covert(&self) -> bool {
        matches!(self, Covertness::Covert)
    }
}

pub fn check_covert(a: &Automaton, ctx: &AttackContext) -> Result<Covertness> {
    check_attacker_labels(a, ctx)?;
    let closed = ctx.closed_loop(a);
    let exposed = shortest_path_to(&closed.automaton, |x| {
        ctx.bts_component[closed.pairs[x].0] == ctx.no_covert
    });
    Ok(exposed.map_or(Covertness::Covert, Covertness::Exposed))
}
