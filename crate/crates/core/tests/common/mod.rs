#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use desred::io::{parse_alphabet, parse_model};
use desred::transform::{build_context, AttackContext};
use desred::{Automaton, EventLabel};

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/water_tank")
}

pub fn load(name: &str) -> Automaton {
    let text = std::fs::read_to_string(fixture_dir().join(name)).unwrap();
    parse_model(&text).unwrap()
}

pub struct WaterTank {
    pub ctx: AttackContext,
    pub attacker: Automaton,
    pub expected: Automaton,
}

pub fn water_tank() -> WaterTank {
    let alphabet =
        parse_alphabet(&std::fs::read_to_string(fixture_dir().join("alphabet.txt")).unwrap()).unwrap();
    let ctx = build_context(&load("plant.fsa"), &load("supervisor.fsa"), &alphabet).unwrap();
    let attacker = ctx.with_attacker_alphabet(&load("attacker.fsa"));
    let expected = ctx.with_attacker_alphabet(&load("reduced_expected.fsa"));
    WaterTank {
        ctx,
        attacker,
        expected,
    }
}

pub fn l(s: &str) -> EventLabel {
    EventLabel::parse(s).unwrap()
}

pub fn word(s: &str) -> Vec<EventLabel> {
    s.split_whitespace().map(l).collect()
}

pub type Word = Vec<String>;

/// Every string of `a` up to length `k`, split into all and marked ones, by
/// walking the transition structure depth-first.
pub fn bounded_language(a: &Automaton, k: usize) -> (BTreeSet<Word>, BTreeSet<Word>) {
    let mut all = BTreeSet::new();
    let mut marked = BTreeSet::new();
    let mut stack = vec![(a.initial(), Vec::<String>::new())];
    while let Some((q, w)) = stack.pop() {
        if a.is_marked(q) {
            marked.insert(w.clone());
        }
        if w.len() < k {
            for (lab, d) in a.transitions_from(q) {
                let mut w2 = w.clone();
                w2.push(lab.to_string());
                stack.push((d, w2));
            }
        }
        all.insert(w);
    }
    (all, marked)
}

/// Every string over `labels` up to length `k`.
pub fn all_words(labels: &[EventLabel], k: usize) -> Vec<Vec<EventLabel>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for w in &frontier {
            for l in labels {
                let mut w2: Vec<EventLabel> = w.clone();
                w2.push(l.clone());
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Membership by direct simulation, independent of any product code.
pub fn run(a: &Automaton, w: &[EventLabel]) -> Option<usize> {
    let mut q = a.initial();
    for l in w {
        q = a.transitions_from(q).find(|(x, _)| *x == l)?.1;
    }
    Some(q)
}

pub fn render(w: &[EventLabel]) -> Word {
    w.iter().map(|l| l.to_string()).collect()
}
