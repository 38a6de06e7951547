//! Line-oriented text formats for automata and alphabet specifications.
//!
//! Model files:
//!
//! ```text
//! # water tank plant
//! automaton G
//! events: EH H L close open
//! states: g0 g1 g2
//! initial: g0
//! marked: g2
//! transitions:
//! g0 close g1
//! g1 H# g2
//! ```
//!
//! `events:` is optional and lists labels that belong to the alphabet even
//! if no transition uses them. `marked: *` marks every state. A `#` starts a
//! comment only as the first non-blank character of a line; inside a token
//! it is the attacked-event suffix.
//!
//! Alphabet files carry one `key: identifiers...` line per set, with keys
//! `events`, `controllable`, `observable`, `attacker-observable` and
//! `compromised`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::automaton::{Automaton, StateId};
use crate::error::{Error, Result};
use crate::label::{is_identifier, AlphabetSpec, EventLabel};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn split_key(line: &str) -> Option<(&str, &str)> {
    let (key, rest) = line.split_once(':')?;
    let key = key.trim();
    if key.contains(char::is_whitespace) {
        return None;
    }
    Some((key, rest.trim()))
}

fn state_name_ok(s: &str) -> bool {
    !s.starts_with('#') && !s.contains(char::is_whitespace) && !s.contains(':')
}

pub fn parse_model(text: &str) -> Result<Automaton> {
    let mut name: Option<String> = None;
    let mut events: Vec<(usize, String)> = Vec::new();
    let mut states: Option<(usize, Vec<String>)> = None;
    let mut initial: Option<(usize, String)> = None;
    let mut marked: Option<(usize, Vec<String>)> = None;
    let mut edges: Vec<(usize, String, String, String)> = Vec::new();
    let mut in_transitions = false;

    for (ln, line) in content_lines(text) {
        if in_transitions {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if let [src, label, dst] = toks[..] {
                edges.push((ln, src.to_string(), label.to_string(), dst.to_string()));
                continue;
            }
            return Err(Error::parse(
                ln,
                format!("expected `src label dst`, found `{line}`"),
            ));
        }
        if let Some(rest) = line.strip_prefix("automaton") {
            if !rest.starts_with(char::is_whitespace) && !rest.is_empty() {
                return Err(Error::parse(ln, format!("unrecognised line `{line}`")));
            }
            let n = rest.trim();
            if n.is_empty() || n.contains(char::is_whitespace) {
                return Err(Error::parse(ln, "`automaton` takes exactly one name"));
            }
            if name.replace(n.to_string()).is_some() {
                return Err(Error::parse(ln, "duplicate `automaton` line"));
            }
            continue;
        }
        let (key, rest) =
            split_key(line).ok_or_else(|| Error::parse(ln, format!("unrecognised line `{line}`")))?;
        let toks = || rest.split_whitespace().map(str::to_string).collect::<Vec<_>>();
        let dup = |ln| Error::parse(ln, format!("duplicate `{key}:` section"));
        match key {
            "events" => events.extend(toks().into_iter().map(|t| (ln, t))),
            "states" => {
                if states.replace((ln, toks())).is_some() {
                    return Err(dup(ln));
                }
            }
            "initial" => {
                let t = toks();
                if t.len() != 1 {
                    return Err(Error::parse(ln, "`initial:` takes exactly one state"));
                }
                if initial.replace((ln, t[0].clone())).is_some() {
                    return Err(dup(ln));
                }
            }
            "marked" => {
                if marked.replace((ln, toks())).is_some() {
                    return Err(dup(ln));
                }
            }
            "transitions" => {
                if !rest.is_empty() {
                    return Err(Error::parse(
                        ln,
                        "transitions start on the line after `transitions:`",
                    ));
                }
                in_transitions = true;
            }
            other => return Err(Error::parse(ln, format!("unknown section `{other}:`"))),
        }
    }

    let name = name.ok_or_else(|| Error::parse(1, "missing `automaton <name>` line"))?;
    let (sln, state_list) = states.ok_or_else(|| Error::parse(1, "missing `states:` line"))?;
    if state_list.is_empty() {
        return Err(Error::parse(sln, "an automaton needs at least one state"));
    }
    let mut index: HashMap<&str, StateId> = HashMap::new();
    for (i, s) in state_list.iter().enumerate() {
        if !state_name_ok(s) {
            return Err(Error::parse(sln, format!("invalid state name `{s}`")));
        }
        if index.insert(s, i).is_some() {
            return Err(Error::parse(sln, format!("state `{s}` declared twice")));
        }
    }
    let lookup = |ln: usize, s: &str| {
        index
            .get(s)
            .copied()
            .ok_or_else(|| Error::parse(ln, format!("undeclared state `{s}`")))
    };
    let (iln, init) = initial.ok_or_else(|| Error::parse(sln, "missing `initial:` line"))?;
    let init = lookup(iln, &init)?;

    let mut a = Automaton::new(name, state_list[0].clone());
    for s in &state_list[1..] {
        a.add_state(s.clone());
    }
    a.set_initial(init).unwrap();
    if let Some((mln, m)) = marked {
        if m.len() == 1 && m[0] == "*" {
            a.mark_all();
        } else {
            for s in &m {
                a.set_marked(lookup(mln, s)?, true).unwrap();
            }
        }
    }
    let mut labels = Vec::new();
    for (ln, tok) in events {
        labels.push(EventLabel::parse(&tok).map_err(|e| Error::parse(ln, e.to_string()))?);
    }
    a.extend_alphabet(labels);

    let mut seen: BTreeMap<(StateId, EventLabel), usize> = BTreeMap::new();
    for (ln, src, label, dst) in edges {
        let (src, dst) = (lookup(ln, &src)?, lookup(ln, &dst)?);
        let label = EventLabel::parse(&label).map_err(|e| Error::parse(ln, e.to_string()))?;
        if let Some(first) = seen.insert((src, label.clone()), ln) {
            return Err(Error::parse(
                ln,
                format!(
                    "duplicate transition on `{label}` from `{}` (first on line {first})",
                    a.state_name(src)
                ),
            ));
        }
        a.add_transition(src, label, dst)
            .expect("duplicates rejected above");
    }
    Ok(a)
}

pub fn render_model(a: &Automaton) -> String {
    let mut out = String::new();
    writeln!(out, "automaton {}", a.name()).unwrap();
    let events: Vec<&str> = a.alphabet().iter().map(EventLabel::as_str).collect();
    writeln!(out, "events: {}", events.join(" ")).unwrap();
    let states: Vec<&str> = a.states().map(|q| a.state_name(q)).collect();
    writeln!(out, "states: {}", states.join(" ")).unwrap();
    writeln!(out, "initial: {}", a.state_name(a.initial())).unwrap();
    let marked: Vec<&str> = a.marked_states().map(|q| a.state_name(q)).collect();
    if marked.len() == a.num_states() {
        writeln!(out, "marked: *").unwrap();
    } else {
        writeln!(out, "marked: {}", marked.join(" ")).unwrap();
    }
    writeln!(out, "transitions:").unwrap();
    for (q, l, d) in a.transitions() {
        writeln!(out, "{} {} {}", a.state_name(q), l, a.state_name(d)).unwrap();
    }
    out
}

pub fn parse_alphabet(text: &str) -> Result<AlphabetSpec> {
    const KEYS: [&str; 5] = [
        "events",
        "controllable",
        "observable",
        "attacker-observable",
        "compromised",
    ];
    let mut sets: BTreeMap<&str, (usize, Vec<String>)> = BTreeMap::new();
    let mut last_line = 1;
    for (ln, line) in content_lines(text) {
        last_line = ln;
        let (key, rest) =
            split_key(line).ok_or_else(|| Error::parse(ln, format!("unrecognised line `{line}`")))?;
        let key = KEYS
            .iter()
            .find(|k| **k == key)
            .ok_or_else(|| Error::parse(ln, format!("unknown alphabet key `{key}`")))?;
        let ids: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
        if let Some(bad) = ids.iter().find(|t| !is_identifier(t)) {
            return Err(Error::parse(
                ln,
                format!("`{bad}` is not a valid event identifier"),
            ));
        }
        if sets.insert(key, (ln, ids)).is_some() {
            return Err(Error::parse(ln, format!("duplicate `{key}:` line")));
        }
    }
    let mut get = |k: &str| {
        sets.remove(k)
            .map(|(_, v)| v)
            .ok_or_else(|| Error::parse(last_line, format!("missing `{k}:` line")))
    };
    let events = get("events")?;
    let controllable = get("controllable")?;
    let observable = get("observable")?;
    let attacker_observable = get("attacker-observable")?;
    let compromised = get("compromised")?;
    AlphabetSpec::new(events, controllable, observable, attacker_observable, compromised)
        .map_err(|e| Error::parse(last_line, e.to_string()))
}

pub fn render_alphabet(spec: &AlphabetSpec) -> String {
    let join = |s: &BTreeSet<String>| s.iter().map(String::as_str).collect::<Vec<_>>().join(" ");
    format!(
        "events: {}\ncontrollable: {}\nobservable: {}\nattacker-observable: {}\ncompromised: {}\n",
        join(spec.sigma()),
        join(spec.controllable()),
        join(spec.observable()),
        join(spec.attacker_observable()),
        join(spec.compromised()),
    )
}
