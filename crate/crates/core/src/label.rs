//! Event labels and the alphabet partitions of an attacked closed loop.
//!
//! A label is either a plain plant event `x`, its attacked copy `x#` (what the
//! supervisor receives after the sensor attacker replaced a reading), or a
//! control command `cmd{a,b,...}` naming the set of events a supervisor
//! enables. Labels compare, hash and order by their canonical rendering, so
//! every ordered collection of labels iterates in rendering order.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
enum Kind {
    Plain(Arc<str>),
    Attacked(Arc<str>),
    Command(Arc<BTreeSet<String>>),
}

#[derive(Clone)]
pub struct EventLabel {
    repr: Arc<str>,
    kind: Kind,
}

/// Identifiers are non-empty runs of ASCII alphanumerics, `_`, `-`, `.` and `'`.
pub fn is_identifier(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.' | '\''))
}

fn check_identifier(s: &str) -> Result<()> {
    if is_identifier(s) {
        Ok(())
    } else {
        Err(Error::invalid(format!("`{s}` is not a valid event identifier")))
    }
}

impl EventLabel {
    pub fn plain(name: &str) -> Result<Self> {
        check_identifier(name)?;
        Ok(EventLabel {
            repr: Arc::from(name),
            kind: Kind::Plain(Arc::from(name)),
        })
    }

    pub fn attacked(name: &str) -> Result<Self> {
        check_identifier(name)?;
        Ok(EventLabel {
            repr: Arc::from(format!("{name}#")),
            kind: Kind::Attacked(Arc::from(name)),
        })
    }

    pub fn command<I, S>(members: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let members: BTreeSet<String> = members.into_iter().map(Into::into).collect();
        for m in &members {
            check_identifier(m)?;
        }
        let body = members.iter().map(String::as_str).collect::<Vec<_>>().join(",");
        Ok(EventLabel {
            repr: Arc::from(format!("cmd{{{body}}}")),
            kind: Kind::Command(Arc::new(members)),
        })
    }

    /// Parses a canonical rendering: `x`, `x#` or `cmd{a,b}`.
    pub fn parse(token: &str) -> Result<Self> {
        if let Some(body) = token.strip_prefix("cmd{") {
            let body = body
                .strip_suffix('}')
                .ok_or_else(|| Error::invalid(format!("unterminated command label `{token}`")))?;
            if body.is_empty() {
                return EventLabel::command(Vec::<String>::new());
            }
            return EventLabel::command(body.split(','));
        }
        if let Some(name) = token.strip_suffix('#') {
            return EventLabel::attacked(name);
        }
        EventLabel::plain(token)
    }

    pub fn as_str(&self) -> &str {
        &self.repr
    }

    pub fn is_plain(&self) -> bool {
        matches!(self.kind, Kind::Plain(_))
    }

    pub fn is_attacked(&self) -> bool {
        matches!(self.kind, Kind::Attacked(_))
    }

    pub fn is_command(&self) -> bool {
        matches!(self.kind, Kind::Command(_))
    }

    /// Underlying event name for plain and attacked labels.
    pub fn event(&self) -> Option<&str> {
        match &self.kind {
            Kind::Plain(n) | Kind::Attacked(n) => Some(n),
            Kind::Command(_) => None,
        }
    }

    pub fn members(&self) -> Option<&BTreeSet<String>> {
        match &self.kind {
            Kind::Command(m) => Some(m),
            _ => None,
        }
    }
}

impl PartialEq for EventLabel {
    fn eq(&self, other: &Self) -> bool {
        self.repr == other.repr
    }
}

impl Eq for EventLabel {}

impl Hash for EventLabel {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.repr.hash(state)
    }
}

impl PartialOrd for EventLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for EventLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.repr.cmp(&other.repr)
    }
}

impl fmt::Display for EventLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.repr)
    }
}

impl fmt::Debug for EventLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}`", self.repr)
    }
}

/// Renders a label string as space-separated canonical tokens.
pub fn render_string(s: &[EventLabel]) -> String {
    if s.is_empty() {
        return "<empty>".to_string();
    }
    s.iter().map(EventLabel::as_str).collect::<Vec<_>>().join(" ")
}

/// The event universe with its controllable, observable, attacker-observable
/// and compromised subsets. Uncontrollable and unobservable sets are derived.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphabetSpec {
    sigma: BTreeSet<String>,
    controllable: BTreeSet<String>,
    observable: BTreeSet<String>,
    attacker_observable: BTreeSet<String>,
    compromised: BTreeSet<String>,
}

fn to_set<I, S>(it: I) -> BTreeSet<String>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    it.into_iter().map(Into::into).collect()
}

impl AlphabetSpec {
    pub fn new<I, S>(
        sigma: I,
        controllable: I,
        observable: I,
        attacker_observable: I,
        compromised: I,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let spec = AlphabetSpec {
            sigma: to_set(sigma),
            controllable: to_set(controllable),
            observable: to_set(observable),
            attacker_observable: to_set(attacker_observable),
            compromised: to_set(compromised),
        };
        for e in &spec.sigma {
            check_identifier(e)?;
        }
        let chain = [
            ("controllable", &spec.controllable, "events", &spec.sigma),
            ("observable", &spec.observable, "events", &spec.sigma),
            (
                "attacker-observable",
                &spec.attacker_observable,
                "observable",
                &spec.observable,
            ),
            (
                "compromised",
                &spec.compromised,
                "attacker-observable",
                &spec.attacker_observable,
            ),
        ];
        for (sub_name, sub, sup_name, sup) in chain {
            if let Some(e) = sub.difference(sup).next() {
                return Err(Error::invalid(format!(
                    "{sub_name} event `{e}` is not among the {sup_name}"
                )));
            }
        }
        Ok(spec)
    }

    pub fn sigma(&self) -> &BTreeSet<String> {
        &self.sigma
    }

    pub fn controllable(&self) -> &BTreeSet<String> {
        &self.controllable
    }

    pub fn observable(&self) -> &BTreeSet<String> {
        &self.observable
    }

    pub fn attacker_observable(&self) -> &BTreeSet<String> {
        &self.attacker_observable
    }

    pub fn compromised(&self) -> &BTreeSet<String> {
        &self.compromised
    }

    pub fn uncontrollable(&self) -> BTreeSet<String> {
        self.sigma.difference(&self.controllable).cloned().collect()
    }

    pub fn unobservable(&self) -> BTreeSet<String> {
        self.sigma.difference(&self.observable).cloned().collect()
    }

    pub fn is_controllable(&self, e: &str) -> bool {
        self.controllable.contains(e)
    }

    pub fn is_observable(&self, e: &str) -> bool {
        self.observable.contains(e)
    }

    pub fn is_attacker_observable(&self, e: &str) -> bool {
        self.attacker_observable.contains(e)
    }

    pub fn is_compromised(&self, e: &str) -> bool {
        self.compromised.contains(e)
    }

    pub fn plain_labels(&self) -> BTreeSet<EventLabel> {
        self.sigma
            .iter()
            .map(|e| EventLabel::plain(e).expect("validated"))
            .collect()
    }

    pub fn attacked_labels(&self) -> BTreeSet<EventLabel> {
        self.compromised
            .iter()
            .map(|e| EventLabel::attacked(e).expect("validated"))
            .collect()
    }

    /// The attacker alphabet: every plain event plus the attacked copies.
    pub fn attacker_alphabet(&self) -> BTreeSet<EventLabel> {
        let mut out = self.plain_labels();
        out.extend(self.attacked_labels());
        out
    }

    /// Whether `label` is a plain or attacked label that belongs to this
    /// alphabet (commands are never part of it).
    pub fn admits(&self, label: &EventLabel) -> bool {
        match (&label.kind, label.event()) {
            (Kind::Plain(_), Some(e)) => self.sigma.contains(e),
            (Kind::Attacked(_), Some(e)) => self.compromised.contains(e),
            _ => false,
        }
    }
}
