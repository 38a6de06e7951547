use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use desred::io::{parse_alphabet, parse_model, render_model};
use desred::label::render_string;
use desred::pipeline::{context_artifacts, run_pipeline, PipelineInputs, PipelineOptions};
use desred::reduce::{brute_min, check_congruence, reduce_ra};
use desred::transform::{build_context, AttackContext};
use desred::verify::{attack_equivalent, check_covert, validate_attacker, Covertness};
use desred::{AlphabetSpec, Automaton};

const USAGE: u8 = 1;
const VALIDATION: u8 = 2;
const INTERNAL: u8 = 3;

/// Largest attacker `--brute` will search exhaustively.
const BRUTE_CAP: usize = 14;

#[derive(Parser)]
#[command(
    name = "desred",
    version,
    about = "Sensor-attacker reduction for supervised discrete-event systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct System {
    /// Plant model; marked states are damage states.
    #[arg(long)]
    plant: PathBuf,
    /// Supervisor model.
    #[arg(long)]
    sup: PathBuf,
    /// Alphabet specification.
    #[arg(long)]
    alphabet: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Build CE, AC, BT(S) and BT(S)^A and write them to a directory.
    Transform {
        #[command(flatten)]
        system: System,
        #[arg(long)]
        out: PathBuf,
    },
    /// Reduce an attacker and print the congruence.
    Reduce {
        #[command(flatten)]
        system: System,
        #[arg(long)]
        attacker: PathBuf,
        /// Where to write the reduced attacker; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also compute the exhaustive minimum (small attackers only).
        #[arg(long)]
        brute: bool,
    },
    /// Check that two attackers are attack-equivalent.
    Verify {
        #[command(flatten)]
        system: System,
        #[arg(long)]
        attacker: PathBuf,
        #[arg(long)]
        candidate: PathBuf,
    },
    /// Validate an attacker and check covertness.
    Check {
        #[command(flatten)]
        system: System,
        #[arg(long)]
        attacker: PathBuf,
    },
    /// Render a model file as DOT.
    ExportDot {
        model: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full flow and write every artifact plus a report.
    Pipeline {
        #[command(flatten)]
        system: System,
        #[arg(long)]
        attacker: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        brute: bool,
    },
}

/// A failure with its exit code.
struct Failure(u8, String);

type Outcome = Result<(), Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure(USAGE, e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn model(path: &Path) -> Result<Automaton, Failure> {
    parse_model(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn alphabet(path: &Path) -> Result<AlphabetSpec, Failure> {
    parse_alphabet(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn context(system: &System) -> Result<AttackContext, Failure> {
    let g = model(&system.plant)?;
    let s = model(&system.sup)?;
    let spec = alphabet(&system.alphabet)?;
    let ctx = build_context(&g, &s, &spec).map_err(|e| Failure(VALIDATION, e.to_string()))?;
    if let Some(v) = ctx.size_violations().first() {
        return Err(Failure(INTERNAL, format!("size invariant violated: {v}")));
    }
    Ok(ctx)
}

fn write(path: &Path, body: &str) -> Outcome {
    fs::write(path, body).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn transform(system: &System, out: &Path) -> Outcome {
    let ctx = context(system)?;
    fs::create_dir_all(out).map_err(|e| usage(format!("{}: {e}", out.display())))?;
    for (name, body) in context_artifacts(&ctx) {
        write(&out.join(name), &body)?;
    }
    println!(
        "BT(S) {} / BT(S)^A {} / CE {} / AC {} / plant' {} states",
        ctx.bts.num_states(),
        ctx.bts_attacked.num_states(),
        ctx.ce.num_states(),
        ctx.ac.num_states(),
        ctx.plant_prime.num_states()
    );
    Ok(())
}

fn reduce(system: &System, attacker: &Path, out: Option<&Path>, brute: bool) -> Outcome {
    let ctx = context(system)?;
    let a = ctx.with_attacker_alphabet(&model(attacker)?);
    let r = reduce_ra(&a, &ctx).map_err(|e| Failure(VALIDATION, e.to_string()))?;
    if let Some(v) = check_congruence(&r.congruence, &a, &r.profile) {
        return Err(Failure(INTERNAL, format!("reduction is not a congruence: {v}")));
    }
    println!("congruence: {}", r.congruence.render(&a));
    println!("reduction: {} -> {}", a.num_states(), r.reduced.num_states());
    if brute {
        match brute_min(&a, &ctx, BRUTE_CAP) {
            Ok(min) => println!("brute-force minimum: {} cells", min.congruence.len()),
            Err(e) => println!("brute-force minimum: skipped ({e})"),
        }
    }
    let mut reduced = r.reduced;
    reduced.set_name(format!("{}_reduced", a.name()));
    match out {
        Some(path) => write(path, &render_model(&reduced)),
        None => {
            print!("{}", render_model(&reduced));
            Ok(())
        }
    }
}

fn verify(system: &System, attacker: &Path, candidate: &Path) -> Outcome {
    let ctx = context(system)?;
    let a1 = model(attacker)?;
    let a2 = model(candidate)?;
    let verdict = attack_equivalent(&a1, &a2, &ctx).map_err(|e| Failure(VALIDATION, e.to_string()))?;
    println!("{verdict}");
    if verdict.is_equivalent() {
        Ok(())
    } else {
        Err(Failure(VALIDATION, "attackers differ".into()))
    }
}

fn check(system: &System, attacker: &Path) -> Outcome {
    let ctx = context(system)?;
    let a = ctx.with_attacker_alphabet(&model(attacker)?);
    let report = validate_attacker(&a, &ctx);
    print!("{report}");
    let covert = check_covert(&a, &ctx).map_err(|e| Failure(VALIDATION, e.to_string()))?;
    match &covert {
        Covertness::Covert => println!("PASS covertness"),
        Covertness::Exposed(w) => println!("FAIL covertness: exposed by {}", render_string(w)),
    }
    if report.passed() && covert.is_covert() {
        Ok(())
    } else {
        Err(Failure(VALIDATION, "attacker rejected".into()))
    }
}

fn export_dot(path: &Path, out: Option<&Path>) -> Outcome {
    let dot = model(path)?.export_dot();
    match out {
        Some(o) => write(o, &dot),
        None => {
            print!("{dot}");
            Ok(())
        }
    }
}

fn pipeline(system: &System, attacker: &Path, out: &Path, brute: bool) -> Outcome {
    let inputs = PipelineInputs {
        plant: model(&system.plant)?,
        supervisor: model(&system.sup)?,
        attacker: model(attacker)?,
        alphabet: alphabet(&system.alphabet)?,
    };
    let options = PipelineOptions {
        brute,
        brute_cap: BRUTE_CAP,
    };
    let outcome = run_pipeline(&inputs, options);
    outcome.write_to(out).map_err(usage)?;
    print!("{}", outcome.report);
    match outcome.status.exit_code() {
        0 => Ok(()),
        code => Err(Failure(
            code as u8,
            format!("see {}", out.join("report.txt").display()),
        )),
    }
}

fn run(cli: Cli) -> Outcome {
    match &cli.command {
        Command::Transform { system, out } => transform(system, out),
        Command::Reduce {
            system,
            attacker,
            out,
            brute,
        } => reduce(system, attacker, out.as_deref(), *brute),
        Command::Verify {
            system,
            attacker,
            candidate,
        } => verify(system, attacker, candidate),
        Command::Check { system, attacker } => check(system, attacker),
        Command::ExportDot { model, out } => export_dot(model, out.as_deref()),
        Command::Pipeline {
            system,
            attacker,
            out,
            brute,
        } => pipeline(system, attacker, out, *brute),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(USAGE);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
