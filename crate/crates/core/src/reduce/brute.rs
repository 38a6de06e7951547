//! Exhaustive minimum control congruence, for small attackers only.
//!
//! States are assigned to cells in canonical order as a restricted growth
//! string (state `k` joins an existing cell or opens the next one), so each
//! partition is enumerated once and in lexicographic order. Branches are cut
//! when a state is incompatible with a cell member, when a closure
//! constraint becomes decidable and fails, or when the cell count exceeds
//! the best known bound. The search is split into independent subtrees by
//! assignment prefix; those run in parallel with the `parallel` feature.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::par;
use crate::reduce::congruence::{induce, Congruence};
use crate::reduce::profile::compute_profile;
use crate::reduce::ra::reduce_ra;
use crate::reduce::{canonical_order, Reduction};
use crate::transform::AttackContext;

pub const DEFAULT_CAP: usize = 10;

/// Depth of the assignment prefixes that become independent work items.
const SPLIT_DEPTH: usize = 4;

/// "If `p` and `r` share a cell, so must `s1` and `s2`" (their successors
/// under a common label), checked once all four are assigned.
#[derive(Clone, Copy)]
struct Closure {
    p: usize,
    r: usize,
    s1: usize,
    s2: usize,
}

struct Search {
    n: usize,
    compat: Vec<Vec<bool>>,
    /// Closure constraints indexed by the state whose assignment decides them.
    closures: Vec<Vec<Closure>>,
}

impl Search {
    fn new(canon: &Automaton, compat: Vec<Vec<bool>>) -> Self {
        let n = canon.num_states();
        let mut closures = vec![Vec::new(); n];
        for l in canon.alphabet() {
            for p in 0..n {
                let Some(s1) = canon.step(p, l) else { continue };
                for r in p + 1..n {
                    let Some(s2) = canon.step(r, l) else { continue };
                    if s1 != s2 && compat[p][r] {
                        let c = Closure { p, r, s1, s2 };
                        closures[p.max(r).max(s1).max(s2)].push(c);
                    }
                }
            }
        }
        Search { n, compat, closures }
    }

    /// Whether state `k` may join `cell` given the assignment of `0..k`.
    fn admits(&self, assign: &mut Vec<usize>, k: usize, cell: usize) -> bool {
        if !(0..k).all(|q| assign[q] != cell || self.compat[q][k]) {
            return false;
        }
        assign.push(cell);
        let ok = self.closures[k]
            .iter()
            .all(|c| assign[c.p] != assign[c.r] || assign[c.s1] == assign[c.s2]);
        assign.pop();
        ok
    }

    /// All admissible prefixes of length `depth` (or complete assignments
    /// when `depth >= n`), in lexicographic order.
    fn prefixes(&self, depth: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut assign = Vec::new();
        self.collect_prefixes(&mut assign, 0, depth.min(self.n), &mut out);
        out
    }

    fn collect_prefixes(
        &self,
        assign: &mut Vec<usize>,
        used: usize,
        depth: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        let k = assign.len();
        if k == depth {
            out.push(assign.clone());
            return;
        }
        for cell in 0..=used {
            if self.admits(assign, k, cell) {
                assign.push(cell);
                self.collect_prefixes(assign, used.max(cell + 1), depth, out);
                assign.pop();
            }
        }
    }

    /// Lexicographically least assignment of minimum size below `prefix`,
    /// among those using at most `bound` cells.
    fn solve(&self, prefix: Vec<usize>, bound: &AtomicUsize) -> Option<Vec<usize>> {
        let used = prefix.iter().map(|&c| c + 1).max().unwrap_or(0);
        let mut assign = prefix;
        let mut best: Option<Vec<usize>> = None;
        self.dfs(&mut assign, used, bound, &mut best);
        best
    }

    fn dfs(&self, assign: &mut Vec<usize>, used: usize, bound: &AtomicUsize, best: &mut Option<Vec<usize>>) {
        // Within a subtree only strictly smaller solutions are of interest
        // once one is known; across subtrees ties are kept and settled by
        // the caller, which keeps the result independent of scheduling.
        let limit = match best {
            Some(b) => cell_count(b) - 1,
            None => bound.load(Ordering::Relaxed),
        };
        if used > limit {
            return;
        }
        let k = assign.len();
        if k == self.n {
            bound.fetch_min(used, Ordering::Relaxed);
            *best = Some(assign.clone());
            return;
        }
        let open_new = used < limit;
        for cell in 0..used + usize::from(open_new) {
            if self.admits(assign, k, cell) {
                assign.push(cell);
                self.dfs(assign, used.max(cell + 1), bound, best);
                assign.pop();
            }
        }
    }
}

fn cell_count(assign: &[usize]) -> usize {
    assign.iter().max().map_or(0, |m| m + 1)
}

/// Minimum-size control congruence by exhaustive search. Refuses attackers
/// with more than `max_states` states. Among minimum congruences the one
/// with the lexicographically least canonical cell assignment is returned,
/// independent of scheduling.
pub fn brute_min(a: &Automaton, ctx: &AttackContext, max_states: usize) -> Result<Reduction> {
    brute_min_in(par::Mode::Auto, a, ctx, max_states)
}

/// [`brute_min`] with an explicit execution mode for the subtree search.
pub fn brute_min_in(
    mode: par::Mode,
    a: &Automaton,
    ctx: &AttackContext,
    max_states: usize,
) -> Result<Reduction> {
    let n = a.num_states();
    if n > max_states {
        return Err(Error::SizeCap {
            states: n,
            cap: max_states,
        });
    }
    let profile = compute_profile(a, ctx)?;
    let upper = reduce_ra(a, ctx)?.congruence.len();
    let order = canonical_order(a);
    let canon = a.renumbered(&order);
    let search = Search::new(&canon, profile.permuted(&order).compatibility());

    let bound = AtomicUsize::new(upper);
    let found = par::map_in(mode, search.prefixes(SPLIT_DEPTH), |p| search.solve(p, &bound));
    let best = found
        .into_iter()
        .flatten()
        .min_by(|x, y| cell_count(x).cmp(&cell_count(y)).then_with(|| x.cmp(y)))
        .expect("the singleton partition always bounds the search");

    let mut by_original = vec![0; n];
    for (canon_q, &cell) in best.iter().enumerate() {
        by_original[order[canon_q]] = cell;
    }
    let congruence = Congruence::from_assignment(&by_original);
    let reduced = induce(&congruence, a)?;
    Ok(Reduction {
        congruence,
        reduced,
        profile,
    })
}
