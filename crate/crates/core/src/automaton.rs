//! Deterministic finite-state automata with a partial transition function.
//!
//! States are dense indices `0..n` with a display name attached. The
//! transition map of each state is a `BTreeMap`, so determinism holds by
//! construction and every walk over outgoing edges is in canonical label
//! order.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::label::EventLabel;

pub type StateId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automaton {
    name: String,
    state_names: Vec<String>,
    alphabet: BTreeSet<EventLabel>,
    delta: Vec<BTreeMap<EventLabel, StateId>>,
    initial: StateId,
    marked: Vec<bool>,
}

impl Automaton {
    /// An automaton with a single (initial, unmarked) state.
    pub fn new(name: impl Into<String>, initial_state: impl Into<String>) -> Self {
        Automaton {
            name: name.into(),
            state_names: vec![initial_state.into()],
            alphabet: BTreeSet::new(),
            delta: vec![BTreeMap::new()],
            initial: 0,
            marked: vec![false],
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn add_state(&mut self, name: impl Into<String>) -> StateId {
        self.state_names.push(name.into());
        self.delta.push(BTreeMap::new());
        self.marked.push(false);
        self.state_names.len() - 1
    }

    pub fn set_initial(&mut self, q: StateId) -> Result<()> {
        self.check_state(q)?;
        self.initial = q;
        Ok(())
    }

    pub fn set_marked(&mut self, q: StateId, marked: bool) -> Result<()> {
        self.check_state(q)?;
        self.marked[q] = marked;
        Ok(())
    }

    pub fn mark_all(&mut self) {
        self.marked.iter_mut().for_each(|m| *m = true);
    }

    /// Adds labels to the alphabet without adding transitions. Labels that
    /// never label a transition still matter for synchronisation.
    pub fn extend_alphabet<I: IntoIterator<Item = EventLabel>>(&mut self, labels: I) {
        self.alphabet.extend(labels);
    }

    /// Adds `src --label--> dst`. Re-adding an identical edge is a no-op; a
    /// second target for the same `(src, label)` is rejected.
    pub fn add_transition(&mut self, src: StateId, label: EventLabel, dst: StateId) -> Result<()> {
        self.check_state(src)?;
        self.check_state(dst)?;
        match self.delta[src].get(&label) {
            Some(&old) if old == dst => Ok(()),
            Some(&old) => Err(Error::invalid(format!(
                "nondeterministic transition: `{}` --{}--> `{}` and `{}`",
                self.state_names[src], label, self.state_names[old], self.state_names[dst]
            ))),
            None => {
                self.alphabet.insert(label.clone());
                self.delta[src].insert(label, dst);
                Ok(())
            }
        }
    }

    pub fn remove_transition(&mut self, src: StateId, label: &EventLabel) -> Option<StateId> {
        self.delta.get_mut(src)?.remove(label)
    }

    fn check_state(&self, q: StateId) -> Result<()> {
        if q < self.state_names.len() {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "unknown state index {q} in `{}`",
                self.name
            )))
        }
    }

    pub fn num_states(&self) -> usize {
        self.state_names.len()
    }

    pub fn states(&self) -> std::ops::Range<StateId> {
        0..self.state_names.len()
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.state_names[q]
    }

    pub fn state_by_name(&self, name: &str) -> Option<StateId> {
        self.state_names.iter().position(|n| n == name)
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_marked(&self, q: StateId) -> bool {
        self.marked[q]
    }

    pub fn marked_states(&self) -> impl Iterator<Item = StateId> + '_ {
        self.states().filter(|&q| self.marked[q])
    }

    pub fn alphabet(&self) -> &BTreeSet<EventLabel> {
        &self.alphabet
    }

    pub fn step(&self, q: StateId, label: &EventLabel) -> Option<StateId> {
        self.delta[q].get(label).copied()
    }

    /// Runs a string from the initial state.
    pub fn run<'a, I>(&self, word: I) -> Option<StateId>
    where
        I: IntoIterator<Item = &'a EventLabel>,
    {
        word.into_iter().try_fold(self.initial, |q, l| self.step(q, l))
    }

    pub fn accepts(&self, word: &[EventLabel]) -> bool {
        self.run(word).is_some()
    }

    pub fn accepts_marked(&self, word: &[EventLabel]) -> bool {
        self.run(word).is_some_and(|q| self.marked[q])
    }

    /// Outgoing edges of `q` in canonical label order.
    pub fn transitions_from(&self, q: StateId) -> impl Iterator<Item = (&EventLabel, StateId)> {
        self.delta[q].iter().map(|(l, &d)| (l, d))
    }

    pub fn transitions(&self) -> impl Iterator<Item = (StateId, &EventLabel, StateId)> {
        self.states()
            .flat_map(move |q| self.transitions_from(q).map(move |(l, d)| (q, l, d)))
    }

    pub fn num_transitions(&self) -> usize {
        self.delta.iter().map(BTreeMap::len).sum()
    }

    /// Labels with a defined transition at `q`.
    pub fn enabled_set(&self, q: StateId) -> Result<BTreeSet<EventLabel>> {
        self.check_state(q)?;
        Ok(self.delta[q].keys().cloned().collect())
    }

    /// States in breadth-first discovery order from the initial state, with
    /// edges explored in canonical label order. Unreachable states are absent.
    pub fn bfs_order(&self) -> Vec<StateId> {
        let mut seen = vec![false; self.num_states()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut head = 0;
        while head < order.len() {
            let q = order[head];
            head += 1;
            for (_, d) in self.transitions_from(q) {
                if !seen[d] {
                    seen[d] = true;
                    order.push(d);
                }
            }
        }
        order
    }

    /// Renumbers states: `order` lists old indices in their new positions.
    /// States not listed are dropped together with their edges.
    pub fn renumbered(&self, order: &[StateId]) -> Automaton {
        let mut new_index = vec![None; self.num_states()];
        for (i, &q) in order.iter().enumerate() {
            new_index[q] = Some(i);
        }
        let mut delta = vec![BTreeMap::new(); order.len()];
        for (i, &q) in order.iter().enumerate() {
            for (l, d) in self.transitions_from(q) {
                if let Some(nd) = new_index[d] {
                    delta[i].insert(l.clone(), nd);
                }
            }
        }
        Automaton {
            name: self.name.clone(),
            state_names: order.iter().map(|&q| self.state_names[q].clone()).collect(),
            alphabet: self.alphabet.clone(),
            delta,
            initial: new_index[self.initial].expect("initial state kept"),
            marked: order.iter().map(|&q| self.marked[q]).collect(),
        }
    }

    /// Restriction to the states reachable from the initial state. Kept
    /// states retain their relative order.
    pub fn accessible(&self) -> Automaton {
        let mut keep = self.bfs_order();
        keep.sort_unstable();
        self.renumbered(&keep)
    }

    pub fn is_accessible(&self) -> bool {
        self.bfs_order().len() == self.num_states()
    }

    /// Structural isomorphism of the accessible parts (names ignored). Both
    /// automata are deterministic, so the bijection is forced by a joint walk.
    pub fn is_isomorphic(&self, other: &Automaton) -> bool {
        if self.alphabet != other.alphabet {
            return false;
        }
        let mut fwd: BTreeMap<StateId, StateId> = BTreeMap::new();
        let mut bwd: BTreeMap<StateId, StateId> = BTreeMap::new();
        let mut queue = VecDeque::from([(self.initial, other.initial)]);
        fwd.insert(self.initial, other.initial);
        bwd.insert(other.initial, self.initial);
        while let Some((p, q)) = queue.pop_front() {
            if self.marked[p] != other.marked[q] || self.delta[p].len() != other.delta[q].len() {
                return false;
            }
            for (l, pd) in self.transitions_from(p) {
                let Some(qd) = other.step(q, l) else { return false };
                match (fwd.get(&pd), bwd.get(&qd)) {
                    (None, None) => {
                        fwd.insert(pd, qd);
                        bwd.insert(qd, pd);
                        queue.push_back((pd, qd));
                    }
                    (Some(&x), Some(&y)) if x == qd && y == pd => {}
                    _ => return false,
                }
            }
        }
        fwd.len() == self.bfs_order().len() && bwd.len() == other.bfs_order().len()
    }

    /// Graphviz rendering. Nodes are listed by index, edges by source index
    /// and then canonical label order; output depends only on the automaton.
    pub fn export_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "digraph \"{}\" {{", escape(&self.name)).unwrap();
        writeln!(out, "  rankdir=LR;").unwrap();
        writeln!(out, "  __init [shape=point];").unwrap();
        for q in self.states() {
            let shape = if self.marked[q] { "doublecircle" } else { "circle" };
            writeln!(
                out,
                "  s{q} [label=\"{}\", shape={shape}];",
                escape(&self.state_names[q])
            )
            .unwrap();
        }
        writeln!(out, "  __init -> s{};", self.initial).unwrap();
        for (q, l, d) in self.transitions() {
            writeln!(out, "  s{q} -> s{d} [label=\"{}\"];", escape(l.as_str())).unwrap();
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
