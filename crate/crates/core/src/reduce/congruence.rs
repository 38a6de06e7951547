use std::collections::BTreeSet;
use std::fmt;

use crate::automaton::{Automaton, StateId};
use crate::error::{Error, Result};
use crate::label::EventLabel;
use crate::reduce::profile::EnDisProfile;

/// An indexed family of attacker-state cells. Cell `i` is `cells[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Congruence {
    cells: Vec<Vec<StateId>>,
}

impl Congruence {
    pub fn new(mut cells: Vec<Vec<StateId>>) -> Self {
        for c in &mut cells {
            c.sort_unstable();
        }
        Congruence { cells }
    }

    pub fn singletons(n: usize) -> Self {
        Congruence {
            cells: (0..n).map(|q| vec![q]).collect(),
        }
    }

    /// Cells from a state -> cell-index assignment.
    pub fn from_assignment(assignment: &[usize]) -> Self {
        let k = assignment.iter().copied().max().map_or(0, |m| m + 1);
        let mut cells = vec![Vec::new(); k];
        for (q, &c) in assignment.iter().enumerate() {
            cells[c].push(q);
        }
        Congruence { cells }
    }

    pub fn cells(&self) -> &[Vec<StateId>] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cell_of(&self, q: StateId) -> Option<usize> {
        self.cells.iter().position(|c| c.contains(&q))
    }

    fn assignment(&self, n: usize) -> Vec<Option<usize>> {
        let mut out = vec![None; n];
        for (i, c) in self.cells.iter().enumerate() {
            for &q in c {
                if q < n {
                    out[q] = Some(i);
                }
            }
        }
        out
    }

    pub fn render(&self, a: &Automaton) -> String {
        self.cells
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let names: Vec<_> = c.iter().map(|&q| a.state_name(q)).collect();
                format!("{i}:{{{}}}", names.join(","))
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// First violated congruence condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Condition 1: a cell names a state the attacker does not have.
    UnknownState { cell: usize, state: StateId },
    /// Condition 1: a state belongs to no cell.
    Uncovered { state: StateId },
    /// Condition 1: a state belongs to two cells.
    Overlap { state: StateId, cells: (usize, usize) },
    /// Condition 2: an empty cell.
    EmptyCell { cell: usize },
    /// Condition 2: two incompatible states share a cell.
    Incompatible { cell: usize, states: (StateId, StateId) },
    /// Condition 3: successors of one cell under `label` span two cells.
    NotClosed {
        cell: usize,
        label: EventLabel,
        targets: (usize, usize),
    },
}

impl Violation {
    pub fn condition(&self) -> u8 {
        match self {
            Violation::UnknownState { .. } | Violation::Uncovered { .. } | Violation::Overlap { .. } => 1,
            Violation::EmptyCell { .. } | Violation::Incompatible { .. } => 2,
            Violation::NotClosed { .. } => 3,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "condition {}: ", self.condition())?;
        match self {
            Violation::UnknownState { cell, state } => write!(f, "cell {cell} names unknown state {state}"),
            Violation::Uncovered { state } => write!(f, "state {state} is in no cell"),
            Violation::Overlap { state, cells } => {
                write!(f, "state {state} is in cells {} and {}", cells.0, cells.1)
            }
            Violation::EmptyCell { cell } => write!(f, "cell {cell} is empty"),
            Violation::Incompatible { cell, states } => {
                write!(
                    f,
                    "cell {cell} holds incompatible states {} and {}",
                    states.0, states.1
                )
            }
            Violation::NotClosed { cell, label, targets } => write!(
                f,
                "`{label}` successors of cell {cell} lie in cells {} and {}",
                targets.0, targets.1
            ),
        }
    }
}

/// Structural conditions (cover/disjointness and forward closure).
fn check_structure(c: &Congruence, a: &Automaton) -> std::result::Result<Vec<usize>, Violation> {
    let n = a.num_states();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (i, cell) in c.cells.iter().enumerate() {
        for &q in cell {
            if q >= n {
                return Err(Violation::UnknownState { cell: i, state: q });
            }
            match owner[q] {
                Some(j) if j != i => {
                    return Err(Violation::Overlap {
                        state: q,
                        cells: (j, i),
                    })
                }
                _ => owner[q] = Some(i),
            }
        }
    }
    let owner: Vec<usize> = owner
        .into_iter()
        .enumerate()
        .map(|(q, o)| o.ok_or(Violation::Uncovered { state: q }))
        .collect::<std::result::Result<_, _>>()?;
    if let Some(i) = c.cells.iter().position(Vec::is_empty) {
        return Err(Violation::EmptyCell { cell: i });
    }
    for (i, cell) in c.cells.iter().enumerate() {
        let labels: BTreeSet<&EventLabel> = cell
            .iter()
            .flat_map(|&q| a.transitions_from(q).map(|(l, _)| l))
            .collect();
        for l in labels {
            let mut target: Option<usize> = None;
            for &q in cell {
                if let Some(d) = a.step(q, l) {
                    match target {
                        None => target = Some(owner[d]),
                        Some(t) if t != owner[d] => {
                            return Err(Violation::NotClosed {
                                cell: i,
                                label: l.clone(),
                                targets: (t, owner[d]),
                            })
                        }
                        _ => {}
                    }
                }
            }
        }
    }
    Ok(owner)
}

pub fn check_congruence(c: &Congruence, a: &Automaton, profile: &EnDisProfile) -> Option<Violation> {
    let n = a.num_states();
    // Condition 1 first, so that the report names the lowest condition violated.
    if let Err(v) = check_structure(c, a) {
        if v.condition() == 1 {
            return Some(v);
        }
    }
    if let Some(i) = c.cells.iter().position(Vec::is_empty) {
        return Some(Violation::EmptyCell { cell: i });
    }
    for (i, cell) in c.cells.iter().enumerate() {
        for (x, &q) in cell.iter().enumerate() {
            for &r in &cell[x + 1..] {
                if q < n && r < n && !profile.compatible(q, r) {
                    return Some(Violation::Incompatible {
                        cell: i,
                        states: (q, r),
                    });
                }
            }
        }
    }
    check_structure(c, a).err()
}

pub fn is_congruence(c: &Congruence, a: &Automaton, profile: &EnDisProfile) -> bool {
    check_congruence(c, a, profile).is_none()
}

/// The quotient attacker: state `i` is cell `i`, and `i --l--> j` whenever
/// some member of cell `i` moves on `l` into cell `j`. All states are marked.
///
/// Compatibility needs the closed-loop profile, so only the structural
/// conditions are re-checked here; they are what makes the quotient
/// well defined.
pub fn induce(c: &Congruence, a: &Automaton) -> Result<Automaton> {
    let owner =
        check_structure(c, a).map_err(|v| Error::invalid(format!("not a control congruence: {v}")))?;
    let name_of = |cell: &Vec<StateId>| {
        cell.iter()
            .map(|&q| a.state_name(q))
            .collect::<Vec<_>>()
            .join("|")
    };
    let init = owner[a.initial()];
    let mut out = Automaton::new(format!("{}_C", a.name()), name_of(&c.cells[0]));
    for cell in &c.cells[1..] {
        out.add_state(name_of(cell));
    }
    out.set_initial(init)?;
    out.extend_alphabet(a.alphabet().iter().cloned());
    for (q, l, d) in a.transitions() {
        out.add_transition(owner[q], l.clone(), owner[d])?;
    }
    out.mark_all();
    Ok(out)
}

impl Congruence {
    /// Cell index of every state, if the cells partition `0..n`.
    pub fn owners(&self, n: usize) -> Option<Vec<usize>> {
        self.assignment(n).into_iter().collect()
    }
}
