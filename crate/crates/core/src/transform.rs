//! Construction of the attacked closed-loop components from a plant, a
//! supervisor and an alphabet specification.
//!
//! * [`build_ce`]: command execution, from receiving a command to executing
//!   one of its events.
//! * [`build_ac`]: sensor attack constraints (observe a compromised event,
//!   then report exactly one attacked copy).
//! * [`bipartize`]: the supervisor split into command-issuing and reacting
//!   states.
//! * [`attack_bipartize`]: the bipartite supervisor receiving attacked copies,
//!   with a sink that records the attacker being discovered.

use std::collections::BTreeSet;

use crate::automaton::{Automaton, StateId};
use crate::error::{Error, Result};
use crate::label::{AlphabetSpec, EventLabel};
use crate::product::product2;

/// A set of enabled events that contains every uncontrollable event.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ControlCommand {
    members: BTreeSet<String>,
}

impl ControlCommand {
    pub fn new(members: BTreeSet<String>, alphabet: &AlphabetSpec) -> Result<Self> {
        if let Some(e) = members.iter().find(|e| !alphabet.sigma().contains(*e)) {
            return Err(Error::invalid(format!("command member `{e}` is not an event")));
        }
        let missing: Vec<_> = alphabet.uncontrollable().difference(&members).cloned().collect();
        if !missing.is_empty() {
            return Err(Error::invalid(format!(
                "command is missing uncontrollable events {}",
                missing.join(", ")
            )));
        }
        Ok(ControlCommand { members })
    }

    pub fn members(&self) -> &BTreeSet<String> {
        &self.members
    }

    pub fn label(&self) -> EventLabel {
        EventLabel::command(self.members.iter().cloned()).expect("validated members")
    }
}

fn check_plain_over(a: &Automaton, alphabet: &AlphabetSpec, role: &str) -> Result<()> {
    for (_, l, _) in a.transitions() {
        if !l.is_plain() || !alphabet.admits(l) {
            return Err(Error::invalid(format!(
                "{role} `{}` uses label `{l}` outside the event set",
                a.name()
            )));
        }
    }
    Ok(())
}

/// Checks the standing assumptions on a supervisor: plain labels over the
/// event set, every state enables all uncontrollable events, and
/// unobservable events only label self-loops.
pub fn validate_supervisor(s: &Automaton, alphabet: &AlphabetSpec) -> Result<()> {
    check_plain_over(s, alphabet, "supervisor")?;
    for q in s.states() {
        gamma_of(s, q, alphabet)?;
        for (l, d) in s.transitions_from(q) {
            let e = l.event().expect("plain");
            if !alphabet.is_observable(e) && d != q {
                return Err(Error::InfeasibleSupervisor {
                    state: s.state_name(q).to_string(),
                    reason: format!("unobservable event `{e}` leads to another state"),
                });
            }
        }
    }
    Ok(())
}

/// The command issued at `q`: the events `s` enables there.
pub fn gamma_of(s: &Automaton, q: StateId, alphabet: &AlphabetSpec) -> Result<ControlCommand> {
    let enabled: BTreeSet<String> = s
        .enabled_set(q)?
        .iter()
        .filter_map(|l| l.event().map(str::to_string))
        .collect();
    let missing: Vec<_> = alphabet.uncontrollable().difference(&enabled).cloned().collect();
    if !missing.is_empty() {
        return Err(Error::InfeasibleSupervisor {
            state: s.state_name(q).to_string(),
            reason: format!("uncontrollable events not enabled: {}", missing.join(", ")),
        });
    }
    ControlCommand::new(enabled, alphabet)
}

/// Distinct commands issued over all supervisor states, in canonical order.
pub fn commands_of(s: &Automaton, alphabet: &AlphabetSpec) -> Result<BTreeSet<ControlCommand>> {
    s.states().map(|q| gamma_of(s, q, alphabet)).collect()
}

pub fn build_ce(gammas: &BTreeSet<ControlCommand>, alphabet: &AlphabetSpec) -> Result<Automaton> {
    if gammas.is_empty() {
        return Err(Error::invalid("command execution needs at least one command"));
    }
    let mut ce = Automaton::new("CE", "ce_init");
    ce.extend_alphabet(alphabet.plain_labels());
    let mut sorted: Vec<_> = gammas.iter().map(|g| (g.label(), g)).collect();
    sorted.sort();
    for (label, gamma) in sorted {
        let q = ce.add_state(format!("q_{label}"));
        ce.add_transition(0, label, q)?;
        for e in gamma.members() {
            let target = if alphabet.is_observable(e) { 0 } else { q };
            ce.add_transition(q, EventLabel::plain(e)?, target)?;
        }
    }
    ce.mark_all();
    Ok(ce)
}

pub fn build_ac(alphabet: &AlphabetSpec) -> Automaton {
    let mut ac = Automaton::new("AC", "ac_init");
    let obs = ac.add_state("obs");
    ac.extend_alphabet(alphabet.attacker_alphabet());
    for e in alphabet.sigma() {
        let l = EventLabel::plain(e).expect("validated");
        if alphabet.is_compromised(e) {
            ac.add_transition(0, l, obs).unwrap();
            ac.add_transition(obs, EventLabel::attacked(e).unwrap(), 0)
                .unwrap();
        } else {
            ac.add_transition(0, l, 0).unwrap();
        }
    }
    ac.mark_all();
    ac
}

/// State `q` of the supervisor keeps index `q` (reaction state); its command
/// state `q_com` gets index `|S| + q`. The initial state is the command state
/// of the supervisor's initial state.
pub fn bipartize(s: &Automaton, alphabet: &AlphabetSpec) -> Result<Automaton> {
    validate_supervisor(s, alphabet)?;
    let n = s.num_states();
    let mut bts = Automaton::new(format!("BT({})", s.name()), s.state_name(0));
    for q in 1..n {
        bts.add_state(s.state_name(q));
    }
    for q in 0..n {
        bts.add_state(format!("{}_com", s.state_name(q)));
    }
    bts.extend_alphabet(alphabet.plain_labels());
    for q in s.states() {
        bts.add_transition(n + q, gamma_of(s, q, alphabet)?.label(), q)?;
        for (l, d) in s.transitions_from(q) {
            let e = l.event().expect("plain");
            let target = if alphabet.is_observable(e) { n + d } else { q };
            bts.add_transition(q, l.clone(), target)?;
        }
    }
    bts.set_initial(n + s.initial())?;
    bts.mark_all();
    Ok(bts)
}

/// Splits the states of a bipartite supervisor into (reaction, command)
/// states, rejecting anything that mixes command and plain outgoing labels.
fn bipartition(bts: &Automaton) -> Result<Vec<bool>> {
    let mut is_command = vec![false; bts.num_states()];
    for q in bts.states() {
        let cmds = bts.transitions_from(q).filter(|(l, _)| l.is_command()).count();
        let others = bts.transitions_from(q).count() - cmds;
        if bts.transitions_from(q).any(|(l, _)| l.is_attacked()) {
            return Err(Error::invalid(format!(
                "state `{}` already carries attacked labels",
                bts.state_name(q)
            )));
        }
        match (cmds, others) {
            (0, _) => {}
            (1, 0) => is_command[q] = true,
            _ => {
                return Err(Error::invalid(format!(
                    "state `{}` is not bipartite: {cmds} command and {others} event edges",
                    bts.state_name(q)
                )))
            }
        }
    }
    Ok(is_command)
}

/// Returns the attacked bipartite supervisor and the index of its
/// `no_covert` sink, which is appended after the input's states.
pub fn attack_bipartize(bts: &Automaton, alphabet: &AlphabetSpec) -> Result<(Automaton, StateId)> {
    let is_command = bipartition(bts)?;
    let mut out = Automaton::new(format!("{}^A", bts.name()), bts.state_name(0));
    for q in 1..bts.num_states() {
        out.add_state(bts.state_name(q));
    }
    let no_covert = out.add_state("no_covert");
    out.set_initial(bts.initial())?;
    out.extend_alphabet(bts.alphabet().iter().cloned());
    out.extend_alphabet(alphabet.attacker_alphabet());
    for q in bts.states() {
        if is_command[q] {
            for (l, d) in bts.transitions_from(q) {
                out.add_transition(q, l.clone(), d)?;
            }
            continue;
        }
        for (l, d) in bts.transitions_from(q) {
            let e = l.event().expect("plain");
            if alphabet.is_compromised(e) {
                out.add_transition(q, EventLabel::attacked(e)?, d)?;
                out.add_transition(q, l.clone(), q)?;
            } else {
                out.add_transition(q, l.clone(), d)?;
            }
        }
        for e in alphabet.observable() {
            let plain = EventLabel::plain(e)?;
            if bts.step(q, &plain).is_some() {
                continue;
            }
            let exposed = if alphabet.is_compromised(e) {
                EventLabel::attacked(e)?
            } else {
                plain
            };
            out.add_transition(q, exposed, no_covert)?;
        }
    }
    out.mark_all();
    Ok((out, no_covert))
}

/// Everything an attacker is analysed against. `plant_prime` is the new plant
/// `G || CE || BT(S)^A`; for each of its states the plant and attacked
/// supervisor components are recorded.
#[derive(Clone, Debug)]
pub struct AttackContext {
    pub alphabet: AlphabetSpec,
    pub plant: Automaton,
    pub supervisor: Automaton,
    pub commands: BTreeSet<ControlCommand>,
    pub ce: Automaton,
    pub ac: Automaton,
    pub bts: Automaton,
    pub bts_attacked: Automaton,
    pub no_covert: StateId,
    pub plant_prime: Automaton,
    pub plant_component: Vec<StateId>,
    pub bts_component: Vec<StateId>,
}

pub fn build_context(g: &Automaton, s: &Automaton, alphabet: &AlphabetSpec) -> Result<AttackContext> {
    check_plain_over(g, alphabet, "plant")?;
    let mut plant = g.clone();
    plant.extend_alphabet(alphabet.plain_labels());
    let mut supervisor = s.clone();
    supervisor.extend_alphabet(alphabet.plain_labels());
    for q in supervisor.states() {
        supervisor.set_marked(q, true)?;
    }

    let commands = commands_of(&supervisor, alphabet)?;
    let ce = build_ce(&commands, alphabet)?;
    let ac = build_ac(alphabet);
    let bts = bipartize(&supervisor, alphabet)?;
    let (bts_attacked, no_covert) = attack_bipartize(&bts, alphabet)?;

    let g_ce = product2(&plant.accessible(), &ce);
    let full = product2(&g_ce.automaton, &bts_attacked);
    let plant_component = full.pairs.iter().map(|&(x, _)| g_ce.pairs[x].0).collect();
    let bts_component = full.pairs.iter().map(|&(_, b)| b).collect();
    let mut plant_prime = full.automaton;
    plant_prime.set_name("plant'");

    Ok(AttackContext {
        alphabet: alphabet.clone(),
        plant,
        supervisor,
        commands,
        ce,
        ac,
        bts,
        bts_attacked,
        no_covert,
        plant_prime,
        plant_component,
        bts_component,
    })
}

impl AttackContext {
    /// The attacked closed loop `G || CE || BT(S)^A || attacker`.
    pub fn closed_loop(&self, attacker: &Automaton) -> crate::product::Product {
        product2(&self.plant_prime, &self.with_attacker_alphabet(attacker))
    }

    /// The attacker seen over the full attacker alphabet, so events it never
    /// mentions are still synchronised (and thereby disabled).
    pub fn with_attacker_alphabet(&self, attacker: &Automaton) -> Automaton {
        let mut a = attacker.clone();
        a.extend_alphabet(self.alphabet.attacker_alphabet());
        a
    }

    /// Size relations every context satisfies; returns the violated ones.
    pub fn size_violations(&self) -> Vec<String> {
        let s = self.supervisor.num_states();
        let checks = [
            ("|BT(S)| = 2|S|", self.bts.num_states(), 2 * s),
            ("|BT(S)^A| = 2|S| + 1", self.bts_attacked.num_states(), 2 * s + 1),
            ("|AC| = 2", self.ac.num_states(), 2),
            (
                "|CE| = |Gamma(S)| + 1",
                self.ce.num_states(),
                self.commands.len() + 1,
            ),
        ];
        checks
            .into_iter()
            .filter(|(_, got, want)| got != want)
            .map(|(what, got, want)| format!("{what}: got {got}, expected {want}"))
            .collect()
    }
}
