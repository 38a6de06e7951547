//! Seeded generators for small random systems: alphabets, plants,
//! feasible supervisors and attackers that follow the attack constraints.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::Automaton;
use crate::error::Result;
use crate::label::{AlphabetSpec, EventLabel};
use crate::transform::{build_context, AttackContext};

const EVENT_NAMES: [&str; 5] = ["a", "b", "c", "d", "e"];

#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub plant_states: usize,
    pub supervisor_states: usize,
    pub attacker_states: usize,
    pub events: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            plant_states: 6,
            supervisor_states: 5,
            attacker_states: 7,
            events: 4,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RandomSystem {
    pub seed: u64,
    pub context: AttackContext,
    pub attacker: Automaton,
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn subset<R: Rng>(rng: &mut R, from: &[String], p: f64) -> Vec<String> {
    from.iter().filter(|_| rng.gen_bool(p)).cloned().collect()
}

/// A random alphabet with 2..=`max_events` events and at least one
/// observable event.
pub fn random_alphabet<R: Rng>(rng: &mut R, max_events: usize) -> AlphabetSpec {
    let k = rng.gen_range(2..=max_events.clamp(2, EVENT_NAMES.len()));
    let sigma: Vec<String> = EVENT_NAMES[..k].iter().map(|s| s.to_string()).collect();
    let controllable = subset(rng, &sigma, 0.5);
    let mut observable = subset(rng, &sigma, 0.75);
    if observable.is_empty() {
        observable.push(sigma[0].clone());
    }
    let attacker_observable = subset(rng, &observable, 0.8);
    let compromised = subset(rng, &attacker_observable, 0.6);
    AlphabetSpec::new(sigma, controllable, observable, attacker_observable, compromised)
        .expect("subset chain holds by construction")
}

fn plain(e: &str) -> EventLabel {
    EventLabel::plain(e).expect("generated names are identifiers")
}

/// Random plant; marked states play the role of damage states.
pub fn random_plant<R: Rng>(rng: &mut R, alphabet: &AlphabetSpec, max_states: usize) -> Automaton {
    let n = rng.gen_range(1..=max_states.max(1));
    let mut g = Automaton::new("G", "g0");
    for i in 1..n {
        g.add_state(format!("g{i}"));
    }
    for q in 0..n {
        for e in alphabet.sigma() {
            if rng.gen_bool(0.55) {
                g.add_transition(q, plain(e), rng.gen_range(0..n)).unwrap();
            }
        }
        if rng.gen_bool(0.3) {
            g.set_marked(q, true).unwrap();
        }
    }
    g.extend_alphabet(alphabet.plain_labels());
    g
}

/// Random feasible supervisor: every state enables all uncontrollable
/// events, and unobservable events only label self-loops.
pub fn random_supervisor<R: Rng>(rng: &mut R, alphabet: &AlphabetSpec, max_states: usize) -> Automaton {
    let n = rng.gen_range(1..=max_states.max(1));
    let mut s = Automaton::new("S", "s0");
    for i in 1..n {
        s.add_state(format!("s{i}"));
    }
    for q in 0..n {
        for e in alphabet.sigma() {
            if alphabet.is_controllable(e) && rng.gen_bool(0.4) {
                continue;
            }
            let target = if alphabet.is_observable(e) {
                rng.gen_range(0..n)
            } else {
                q
            };
            s.add_transition(q, plain(e), target).unwrap();
        }
    }
    s.extend_alphabet(alphabet.plain_labels());
    s.mark_all();
    s
}

/// Random attacker that satisfies the attack constraints, never disables a
/// plain event and only moves on events it observes. States alternate
/// between "waiting" states (all plain events defined) and "report" states
/// (reached by a compromised event, leaving only on attacked copies).
pub fn random_attacker<R: Rng>(rng: &mut R, alphabet: &AlphabetSpec, max_states: usize) -> Automaton {
    let has_attack = !alphabet.compromised().is_empty();
    let min = if has_attack { 2 } else { 1 };
    let n = rng.gen_range(min..=max_states.max(min));
    let mut waiting = vec![0];
    let mut report = Vec::new();
    for q in 1..n {
        if has_attack && (q == 1 || rng.gen_bool(0.4)) {
            report.push(q);
        } else {
            waiting.push(q);
        }
    }
    let mut a = Automaton::new("A", "a0");
    for i in 1..n {
        a.add_state(format!("a{i}"));
    }
    for &q in &waiting {
        for e in alphabet.sigma() {
            let target = if !alphabet.is_attacker_observable(e) {
                q
            } else if alphabet.is_compromised(e) {
                *report.choose(rng).unwrap()
            } else {
                *waiting.choose(rng).unwrap()
            };
            a.add_transition(q, plain(e), target).unwrap();
        }
    }
    for &q in &report {
        for e in alphabet.compromised() {
            if rng.gen_bool(0.6) {
                a.add_transition(q, EventLabel::attacked(e).unwrap(), *waiting.choose(rng).unwrap())
                    .unwrap();
            }
        }
    }
    a.extend_alphabet(alphabet.attacker_alphabet());
    a.mark_all();
    a
}

/// Splits states of `a` into copies until it has `target` states; every
/// edge picks one copy of its target at random, self-loops stay self-loops.
/// The language is unchanged.
pub fn unfold<R: Rng>(rng: &mut R, a: &Automaton, target: usize) -> Automaton {
    let n = a.num_states();
    let mut origin: Vec<usize> = (0..n).collect();
    while origin.len() < target {
        origin.push(rng.gen_range(0..n));
    }
    let mut copies: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (new, &old) in origin.iter().enumerate() {
        copies[old].push(new);
    }
    let mut out = Automaton::new(a.name(), a.state_name(0));
    for (new, &old) in origin.iter().enumerate().skip(1) {
        out.add_state(format!("{}_{new}", a.state_name(old)));
    }
    out.set_initial(a.initial()).unwrap();
    for (new, &old) in origin.iter().enumerate() {
        for (l, d) in a.transitions_from(old) {
            let target = if d == old {
                new
            } else {
                *copies[d].choose(rng).unwrap()
            };
            out.add_transition(new, l.clone(), target).unwrap();
        }
        out.set_marked(new, a.is_marked(old)).unwrap();
    }
    out.extend_alphabet(a.alphabet().iter().cloned());
    out
}

/// A random system within `limits`. Half of the attackers are unfoldings of
/// a smaller attacker, which gives the reduction something to merge.
pub fn random_system(seed: u64, limits: Limits) -> Result<RandomSystem> {
    let mut rng = rng(seed);
    let alphabet = random_alphabet(&mut rng, limits.events);
    let plant = random_plant(&mut rng, &alphabet, limits.plant_states);
    let supervisor = random_supervisor(&mut rng, &alphabet, limits.supervisor_states);
    let context = build_context(&plant, &supervisor, &alphabet)?;
    let attacker = if rng.gen_bool(0.5) && limits.attacker_states >= 4 {
        let base = random_attacker(&mut rng, &alphabet, limits.attacker_states / 2);
        let size = rng.gen_range(base.num_states()..=limits.attacker_states);
        unfold(&mut rng, &base, size)
    } else {
        random_attacker(&mut rng, &alphabet, limits.attacker_states)
    };
    Ok(RandomSystem {
        seed,
        context,
        attacker,
    })
}

/// Random deterministic automaton over `labels` with up to `max_states`
/// states, all transitions optional.
pub fn random_automaton<R: Rng>(
    rng: &mut R,
    labels: &[EventLabel],
    max_states: usize,
    density: f64,
) -> Automaton {
    let n = rng.gen_range(1..=max_states.max(1));
    let mut a = Automaton::new("R", "r0");
    for i in 1..n {
        a.add_state(format!("r{i}"));
    }
    for q in 0..n {
        for l in labels {
            if rng.gen_bool(density) {
                a.add_transition(q, l.clone(), rng.gen_range(0..n)).unwrap();
            }
        }
        if rng.gen_bool(0.5) {
            a.set_marked(q, true).unwrap();
        }
    }
    a.extend_alphabet(labels.iter().cloned());
    a
}
