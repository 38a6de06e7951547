//! End-to-end flow: build the attacked closed loop, validate the attacker,
//! reduce it, verify the reduction and render every artifact.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::automaton::Automaton;
use crate::error::Result;
use crate::io::{parse_alphabet, parse_model, render_model};
use crate::label::{render_string, AlphabetSpec};
use crate::reduce::{brute_min, check_congruence, reduce_ra};
use crate::transform::{build_context, AttackContext};
use crate::verify::{attack_equivalent, check_covert, validate_attacker, Covertness};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    ValidationFailure,
    InternalError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Success => 0,
            Status::ValidationFailure => 2,
            Status::InternalError => 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PipelineInputs {
    pub plant: Automaton,
    pub supervisor: Automaton,
    pub attacker: Automaton,
    pub alphabet: AlphabetSpec,
}

impl PipelineInputs {
    pub fn from_files(plant: &Path, supervisor: &Path, attacker: &Path, alphabet: &Path) -> Result<Self> {
        Ok(PipelineInputs {
            plant: parse_model(&fs::read_to_string(plant)?)?,
            supervisor: parse_model(&fs::read_to_string(supervisor)?)?,
            attacker: parse_model(&fs::read_to_string(attacker)?)?,
            alphabet: parse_alphabet(&fs::read_to_string(alphabet)?)?,
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct PipelineOptions {
    /// Cross-check the reduction against the exhaustive minimum.
    pub brute: bool,
    pub brute_cap: usize,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            brute: false,
            brute_cap: crate::reduce::DEFAULT_CAP,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PipelineOutcome {
    pub status: Status,
    pub report: String,
    /// Artifact file names and contents, in write order.
    pub artifacts: Vec<(String, String)>,
    pub reduced: Option<Automaton>,
}

impl PipelineOutcome {
    pub fn write_to(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        for (name, body) in &self.artifacts {
            fs::write(dir.join(name), body)?;
        }
        Ok(())
    }
}

/// `original/reduced (x.yy)`, the decimal rounded half-up with integer
/// arithmetic.
pub fn format_ratio(original: usize, reduced: usize) -> String {
    let hundredths = (200 * original + reduced) / (2 * reduced);
    format!(
        "{original}/{reduced} ({}.{:02})",
        hundredths / 100,
        hundredths % 100
    )
}

fn push_model(artifacts: &mut Vec<(String, String)>, stem: &str, a: &Automaton) {
    artifacts.push((format!("{stem}.fsa"), render_model(a)));
    artifacts.push((format!("{stem}.dot"), a.export_dot()));
}

/// Component artifacts of a context (`bts`, `bts_attacked`, `ce`, `ac`).
pub fn context_artifacts(ctx: &AttackContext) -> Vec<(String, String)> {
    let mut out = Vec::new();
    push_model(&mut out, "bts", &ctx.bts);
    push_model(&mut out, "bts_attacked", &ctx.bts_attacked);
    push_model(&mut out, "ce", &ctx.ce);
    push_model(&mut out, "ac", &ctx.ac);
    out
}

pub fn run_pipeline(inputs: &PipelineInputs, options: PipelineOptions) -> PipelineOutcome {
    let mut report = String::new();
    let mut artifacts = Vec::new();
    let finish = |status: Status, mut report: String, mut artifacts: Vec<(String, String)>, reduced| {
        writeln!(
            report,
            "status: {}",
            match status {
                Status::Success => "ok",
                Status::ValidationFailure => "validation failure",
                Status::InternalError => "internal invariant violation",
            }
        )
        .unwrap();
        artifacts.push(("report.txt".to_string(), report.clone()));
        PipelineOutcome {
            status,
            report,
            artifacts,
            reduced,
        }
    };

    let ctx = match build_context(&inputs.plant, &inputs.supervisor, &inputs.alphabet) {
        Ok(ctx) => ctx,
        Err(e) => {
            writeln!(report, "FAIL model construction: {e}").unwrap();
            return finish(Status::ValidationFailure, report, artifacts, None);
        }
    };
    artifacts.extend(context_artifacts(&ctx));
    let attacker = ctx.with_attacker_alphabet(&inputs.attacker);
    let n = attacker.num_states();

    writeln!(
        report,
        "plant: {} ({} states, {} damage)",
        ctx.plant.name(),
        ctx.plant.num_states(),
        ctx.plant.marked_states().count()
    )
    .unwrap();
    writeln!(
        report,
        "supervisor: {} ({} states, {} commands)",
        ctx.supervisor.name(),
        ctx.supervisor.num_states(),
        ctx.commands.len()
    )
    .unwrap();
    writeln!(
        report,
        "components: BT(S) {} / BT(S)^A {} / CE {} / AC {} / plant' {} states",
        ctx.bts.num_states(),
        ctx.bts_attacked.num_states(),
        ctx.ce.num_states(),
        ctx.ac.num_states(),
        ctx.plant_prime.num_states()
    )
    .unwrap();
    if let Some(v) = ctx.size_violations().first() {
        writeln!(report, "FAIL size invariant {v}").unwrap();
        return finish(Status::InternalError, report, artifacts, None);
    }
    writeln!(report, "attacker: {} ({n} states)", inputs.attacker.name()).unwrap();

    let validity = validate_attacker(&attacker, &ctx);
    report.push_str(&validity.to_string());
    if !validity.passed() {
        return finish(Status::ValidationFailure, report, artifacts, None);
    }
    match check_covert(&attacker, &ctx) {
        Ok(Covertness::Covert) => writeln!(report, "covert: yes").unwrap(),
        Ok(Covertness::Exposed(w)) => {
            writeln!(report, "covert: no, exposed by {}", render_string(&w)).unwrap()
        }
        Err(e) => {
            writeln!(report, "FAIL covertness: {e}").unwrap();
            return finish(Status::ValidationFailure, report, artifacts, None);
        }
    }

    let reduction = match reduce_ra(&attacker, &ctx) {
        Ok(r) => r,
        Err(e) => {
            writeln!(report, "FAIL reduction: {e}").unwrap();
            return finish(Status::ValidationFailure, report, artifacts, None);
        }
    };
    let mut reduced = reduction.reduced.clone();
    reduced.set_name(format!("{}_reduced", inputs.attacker.name()));
    let m = reduced.num_states();
    writeln!(report, "congruence: {}", reduction.congruence.render(&attacker)).unwrap();
    writeln!(report, "reduction: {n} -> {m}").unwrap();
    writeln!(report, "compression: ratio {}", format_ratio(n, m)).unwrap();
    push_model(&mut artifacts, "reduced_attacker", &reduced);

    if let Some(v) = check_congruence(&reduction.congruence, &attacker, &reduction.profile) {
        writeln!(report, "FAIL congruence check: {v}").unwrap();
        return finish(Status::InternalError, report, artifacts, Some(reduced));
    }
    match attack_equivalent(&attacker, &reduced, &ctx) {
        Ok(c) if c.is_equivalent() => writeln!(report, "attack-equivalent: yes").unwrap(),
        Ok(c) => {
            writeln!(report, "FAIL {c}").unwrap();
            return finish(Status::InternalError, report, artifacts, Some(reduced));
        }
        Err(e) => {
            writeln!(report, "FAIL equivalence check: {e}").unwrap();
            return finish(Status::InternalError, report, artifacts, Some(reduced));
        }
    }

    if options.brute {
        match brute_min(&attacker, &ctx, options.brute_cap) {
            Ok(min) => writeln!(report, "brute-force minimum: {} cells", min.congruence.len()).unwrap(),
            Err(e) => writeln!(report, "brute-force minimum: skipped ({e})").unwrap(),
        }
    }
    finish(Status::Success, report, artifacts, Some(reduced))
}
