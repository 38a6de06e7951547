//! Exact language comparison of deterministic automata.
//!
//! Both comparisons explore pairs `(Option<p>, Option<q>)` breadth-first,
//! where `None` stands for "the string has left this automaton's language".
//! Labels are expanded in canonical order, so the first discrepancy found is
//! the shortest witness and, among those, the lexicographically least.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use crate::automaton::{Automaton, StateId};
use crate::label::EventLabel;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    /// A shortest string accepted by exactly one side.
    Differ(Vec<EventLabel>),
}

impl Comparison {
    pub fn is_equal(&self) -> bool {
        matches!(self, Comparison::Equal)
    }

    pub fn witness(&self) -> Option<&[EventLabel]> {
        match self {
            Comparison::Equal => None,
            Comparison::Differ(w) => Some(w),
        }
    }
}

type Side = Option<StateId>;

/// Breadth-first parent links: each discovered key maps to its predecessor
/// and the label that reached it.
pub(crate) type Parents<K> = HashMap<K, Option<(K, EventLabel)>>;

fn compare(a: &Automaton, b: &Automaton, accepting: impl Fn(&Automaton, Side) -> bool) -> Comparison {
    let start = (Some(a.initial()), Some(b.initial()));
    let mut parent: Parents<(Side, Side)> = HashMap::from([(start, None)]);
    let mut queue = VecDeque::from([start]);
    while let Some(cur @ (p, q)) = queue.pop_front() {
        if accepting(a, p) != accepting(b, q) {
            return Comparison::Differ(trace(&parent, cur));
        }
        let mut labels: Vec<&EventLabel> = Vec::new();
        if let Some(p) = p {
            labels.extend(a.transitions_from(p).map(|(l, _)| l));
        }
        if let Some(q) = q {
            labels.extend(b.transitions_from(q).map(|(l, _)| l));
        }
        labels.sort_unstable();
        labels.dedup();
        for l in labels {
            let next = (p.and_then(|p| a.step(p, l)), q.and_then(|q| b.step(q, l)));
            if let Entry::Vacant(e) = parent.entry(next) {
                e.insert(Some((cur, l.clone())));
                queue.push_back(next);
            }
        }
    }
    Comparison::Equal
}

pub(crate) fn trace<K: Copy + Eq + std::hash::Hash>(parent: &Parents<K>, mut cur: K) -> Vec<EventLabel> {
    let mut word = Vec::new();
    while let Some(Some((prev, l))) = parent.get(&cur) {
        word.push(l.clone());
        cur = *prev;
    }
    word.reverse();
    word
}

/// Equality of closed behaviours `L(a) = L(b)`.
pub fn language_equal(a: &Automaton, b: &Automaton) -> Comparison {
    compare(a, b, |_, s| s.is_some())
}

/// Equality of marked behaviours `Lm(a) = Lm(b)`.
pub fn marked_language_equal(a: &Automaton, b: &Automaton) -> Comparison {
    compare(a, b, |aut, s| s.is_some_and(|q| aut.is_marked(q)))
}

/// Shortest (then lexicographically least) string leading from the initial
/// state to a state satisfying `goal`.
pub fn shortest_path_to(a: &Automaton, goal: impl Fn(StateId) -> bool) -> Option<Vec<EventLabel>> {
    let mut parent: Parents<StateId> = HashMap::from([(a.initial(), None)]);
    let mut queue = VecDeque::from([a.initial()]);
    while let Some(q) = queue.pop_front() {
        if goal(q) {
            return Some(trace(&parent, q));
        }
        for (l, d) in a.transitions_from(q) {
            if let Entry::Vacant(e) = parent.entry(d) {
                e.insert(Some((q, l.clone())));
                queue.push_back(d);
            }
        }
    }
    None
}

pub fn shortest_marked_string(a: &Automaton) -> Option<Vec<EventLabel>> {
    shortest_path_to(a, |q| a.is_marked(q))
}
