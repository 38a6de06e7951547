//! Synchronous product, restricted to the accessible part.

use std::collections::HashMap;

use crate::automaton::{Automaton, StateId};
use crate::error::{Error, Result};

/// A binary product together with the component states of every product state.
#[derive(Clone, Debug)]
pub struct Product {
    pub automaton: Automaton,
    pub pairs: Vec<(StateId, StateId)>,
}

/// `left || right`: shared labels synchronise, private labels interleave.
/// Product states are numbered in breadth-first discovery order.
pub fn product2(left: &Automaton, right: &Automaton) -> Product {
    let la = left.alphabet();
    let ra = right.alphabet();
    let init = (left.initial(), right.initial());
    let mut out = Automaton::new(
        format!("{}||{}", left.name(), right.name()),
        pair_name(left, right, init),
    );
    out.extend_alphabet(la.iter().cloned());
    out.extend_alphabet(ra.iter().cloned());
    let mut index: HashMap<(StateId, StateId), StateId> = HashMap::from([(init, 0)]);
    let mut pairs = vec![init];
    let mut head = 0;
    while head < pairs.len() {
        let (p, q) = pairs[head];
        let src = head;
        head += 1;
        let mut moves = Vec::new();
        for (l, pd) in left.transitions_from(p) {
            if let Some(qd) = right.step(q, l) {
                moves.push((l, (pd, qd)));
            } else if !ra.contains(l) {
                moves.push((l, (pd, q)));
            }
        }
        for (l, qd) in right.transitions_from(q) {
            if !la.contains(l) {
                moves.push((l, (p, qd)));
            }
        }
        for (l, target) in moves {
            let dst = *index.entry(target).or_insert_with(|| {
                pairs.push(target);
                out.add_state(pair_name(left, right, target))
            });
            out.add_transition(src, l.clone(), dst)
                .expect("product of deterministic factors");
        }
    }
    for (i, &(p, q)) in pairs.iter().enumerate() {
        out.set_marked(i, left.is_marked(p) && right.is_marked(q))
            .unwrap();
    }
    Product {
        automaton: out,
        pairs,
    }
}

fn pair_name(left: &Automaton, right: &Automaton, (p, q): (StateId, StateId)) -> String {
    format!("{},{}", left.state_name(p), right.state_name(q))
}

/// Left fold of the binary product over `factors`.
pub fn sync_product(factors: &[&Automaton]) -> Result<Automaton> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::invalid("synchronous product of an empty factor list"))?;
    let mut acc = first.accessible();
    for f in rest {
        acc = product2(&acc, f).automaton;
    }
    Ok(acc)
}
