//! Greedy pairwise merging of attacker states into a control congruence.
//!
//! States are scanned in canonical order. For every pair of cell
//! representatives a tentative merge is propagated through the transition
//! structure (merging two cells forces the merge of their successors under
//! every label); if any forced merge joins incompatible states, the cell
//! structure is restored from a snapshot taken before the attempt.

use crate::automaton::{Automaton, StateId};
use crate::error::Result;
use crate::label::EventLabel;
use crate::reduce::congruence::{induce, Congruence};
use crate::reduce::profile::compute_profile;
use crate::reduce::{canonical_order, Reduction};
use crate::transform::AttackContext;

/// Cells keyed by their smallest member. Cloned wholesale for rollback.
#[derive(Clone)]
struct Cells {
    rep: Vec<usize>,
    members: Vec<Vec<StateId>>,
}

impl Cells {
    fn new(n: usize) -> Self {
        Cells {
            rep: (0..n).collect(),
            members: (0..n).map(|q| vec![q]).collect(),
        }
    }

    fn union(&mut self, x: usize, y: usize) -> usize {
        let (keep, drop) = if x < y { (x, y) } else { (y, x) };
        let moved = std::mem::take(&mut self.members[drop]);
        for &q in &moved {
            self.rep[q] = keep;
        }
        self.members[keep].extend(moved);
        keep
    }
}

struct Merger<'a> {
    aut: &'a Automaton,
    labels: Vec<&'a EventLabel>,
    compat: Vec<Vec<bool>>,
}

impl Merger<'_> {
    /// Propagates the merge of `i` and `j`; `false` means it must be undone.
    fn try_merge(&self, cells: &mut Cells, i: StateId, j: StateId) -> bool {
        let mut pending = vec![(i, j)];
        while let Some((x, y)) = pending.pop() {
            let (cx, cy) = (cells.rep[x], cells.rep[y]);
            if cx == cy {
                continue;
            }
            let ok = cells.members[cx]
                .iter()
                .all(|&p| cells.members[cy].iter().all(|&q| self.compat[p][q]));
            if !ok {
                return false;
            }
            let merged = cells.union(cx, cy);
            for l in &self.labels {
                let mut succ = cells.members[merged].iter().filter_map(|&q| self.aut.step(q, l));
                if let Some(first) = succ.next() {
                    for other in succ {
                        if cells.rep[first] != cells.rep[other] {
                            pending.push((first, other));
                        }
                    }
                }
            }
        }
        true
    }
}

/// Reduces `a` against `ctx`. Cells of the returned congruence refer to the
/// original state indices of `a` and are ordered by their first state in
/// canonical order; cell 0 contains the initial state.
pub fn reduce_ra(a: &Automaton, ctx: &AttackContext) -> Result<Reduction> {
    let profile = compute_profile(a, ctx)?;
    let order = canonical_order(a);
    let canon = a.renumbered(&order);
    let merger = Merger {
        aut: &canon,
        labels: canon.alphabet().iter().collect(),
        compat: profile.permuted(&order).compatibility(),
    };
    let n = canon.num_states();
    let mut cells = Cells::new(n);
    for i in 0..n {
        if cells.rep[i] != i {
            continue;
        }
        for j in i + 1..n {
            if cells.rep[j] != j {
                continue;
            }
            let snapshot = cells.clone();
            if !merger.try_merge(&mut cells, i, j) {
                cells = snapshot;
            }
        }
    }
    let congruence = Congruence::new(
        (0..n)
            .filter(|&r| cells.rep[r] == r)
            .map(|r| cells.members[r].iter().map(|&q| order[q]).collect())
            .collect(),
    );
    let reduced = induce(&congruence, a)?;
    Ok(Reduction {
        congruence,
        reduced,
        profile,
    })
}
