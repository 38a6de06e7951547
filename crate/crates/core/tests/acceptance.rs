//! End-to-end acceptance checks. Runs without the test harness and prints
//! one PASS/FAIL line per criterion.

mod common;

use std::time::{Duration, Instant};

use common::*;
use desred::equiv::{language_equal, marked_language_equal, shortest_marked_string};
use desred::pipeline::{format_ratio, run_pipeline, PipelineInputs, PipelineOptions, Status};
use desred::random::{random_automaton, random_system, rng, unfold, Limits};
use desred::reduce::{brute_min, is_congruence, reduce_ra};
use desred::verify::{attack_equivalent, check_covert};
use rand::seq::SliceRandom;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn water_tank_pipeline() -> Outcome {
    let d = fixture_dir();
    let inputs = PipelineInputs::from_files(
        &d.join("plant.fsa"),
        &d.join("supervisor.fsa"),
        &d.join("attacker.fsa"),
        &d.join("alphabet.txt"),
    )
    .map_err(|e| e.to_string())?;
    let start = Instant::now();
    let out = run_pipeline(&inputs, PipelineOptions::default());
    let elapsed = start.elapsed();
    ensure(out.status == Status::Success, || out.report.clone())?;
    let reduced = out.reduced.as_ref().unwrap();
    ensure(inputs.attacker.num_states() == 14, || {
        "fixture attacker is not 14 states".into()
    })?;
    ensure(reduced.num_states() == 3, || {
        format!("reduced to {} states", reduced.num_states())
    })?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;

    let wt = water_tank();
    let eq = attack_equivalent(&wt.attacker, reduced, &wt.ctx).map_err(|e| e.to_string())?;
    ensure(eq.is_equivalent(), || eq.to_string())?;

    // Relabelled state numberings must still give a small equivalent reduction.
    let mut r = rng(5);
    for _ in 0..10 {
        let mut order: Vec<usize> = wt.attacker.states().collect();
        order[1..].shuffle(&mut r);
        let mut shuffled = wt.attacker.renumbered(&order);
        shuffled.set_initial(0).unwrap();
        let red = reduce_ra(&shuffled, &wt.ctx).map_err(|e| e.to_string())?;
        ensure(red.reduced.num_states() <= 4, || {
            format!("{} states after relabelling", red.reduced.num_states())
        })?;
        ensure(
            attack_equivalent(&shuffled, &red.reduced, &wt.ctx)
                .unwrap()
                .is_equivalent(),
            || "relabelled reduction not equivalent".into(),
        )?;
    }
    Ok(format!("14 -> 3, attack-equivalent, {elapsed:.1?}"))
}

fn compression_ratio() -> Outcome {
    let d = fixture_dir();
    let inputs = PipelineInputs::from_files(
        &d.join("plant.fsa"),
        &d.join("supervisor.fsa"),
        &d.join("attacker.fsa"),
        &d.join("alphabet.txt"),
    )
    .map_err(|e| e.to_string())?;
    let out = run_pipeline(&inputs, PipelineOptions::default());
    let ratio = format_ratio(14, 3);
    ensure(ratio == "14/3 (4.67)", || ratio.clone())?;
    ensure(out.report.contains("compression: ratio 14/3 (4.67)"), || {
        out.report.clone()
    })?;
    Ok(ratio)
}

fn random_quotients() -> Outcome {
    let start = Instant::now();
    let mut merged = 0;
    for seed in 0..200 {
        let sys = random_system(seed, Limits::default()).map_err(|e| e.to_string())?;
        let ctx = &sys.context;
        let r = reduce_ra(&sys.attacker, ctx).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(is_congruence(&r.congruence, &sys.attacker, &r.profile), || {
            format!("seed {seed}: not a congruence")
        })?;
        let eq = attack_equivalent(&sys.attacker, &r.reduced, ctx).map_err(|e| e.to_string())?;
        ensure(eq.is_equivalent(), || format!("seed {seed}: {eq}"))?;
        merged += usize::from(r.reduced.num_states() < sys.attacker.num_states());
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("200/200 systems, {merged} reduced, {elapsed:.1?}"))
}

fn oracle_dominance() -> Outcome {
    let mut strict = 0;
    for seed in 1000..1050 {
        let sys = random_system(seed, Limits::default()).map_err(|e| e.to_string())?;
        let ctx = &sys.context;
        let ra = reduce_ra(&sys.attacker, ctx).map_err(|e| e.to_string())?;
        let bm = brute_min(&sys.attacker, ctx, 10).map_err(|e| e.to_string())?;
        ensure(bm.congruence.len() <= ra.congruence.len(), || {
            format!("seed {seed}: brute larger")
        })?;
        for red in [&ra.reduced, &bm.reduced] {
            ensure(
                attack_equivalent(&sys.attacker, red, ctx)
                    .unwrap()
                    .is_equivalent(),
                || format!("seed {seed}: quotient not equivalent"),
            )?;
        }
        strict += usize::from(bm.congruence.len() < ra.congruence.len());
    }
    let wt = water_tank();
    let bm = brute_min(&wt.attacker, &wt.ctx, 14).map_err(|e| e.to_string())?;
    ensure(bm.congruence.len() == 3, || {
        format!("water tank minimum {}", bm.congruence.len())
    })?;
    Ok(format!(
        "50/50 attackers, {strict} strictly smaller; water tank minimum 3"
    ))
}

fn size_invariants() -> Outcome {
    let mut violations = Vec::new();
    let wt = water_tank();
    violations.extend(wt.ctx.size_violations());
    for seed in 0..200 {
        let sys = random_system(seed, Limits::default()).map_err(|e| e.to_string())?;
        violations.extend(
            sys.context
                .size_violations()
                .into_iter()
                .map(|v| format!("seed {seed}: {v}")),
        );
    }
    ensure(violations.is_empty(), || violations.join("; "))?;
    Ok("0 violations over 201 contexts".into())
}

fn equivalence_oracle() -> Outcome {
    let labels = [l("a"), l("b"), l("c")];
    let words = all_words(&labels, 8);
    let mut r = rng(99);
    let mut equal_pairs = 0;
    for i in 0..100 {
        let x = random_automaton(&mut r, &labels, 6, 0.6);
        let y = if i % 2 == 0 {
            let target = x.num_states().max(6);
            unfold(&mut r, &x, target).accessible()
        } else {
            random_automaton(&mut r, &labels, 6, 0.6)
        };
        let y = if i % 4 == 2 {
            let mut y = y;
            let q = y.num_states() - 1;
            let m = y.is_marked(q);
            y.set_marked(q, !m).unwrap();
            y
        } else {
            y
        };
        let closed = words.iter().all(|w| run(&x, w).is_some() == run(&y, w).is_some());
        let marked = words.iter().all(|w| {
            run(&x, w).is_some_and(|q| x.is_marked(q)) == run(&y, w).is_some_and(|q| y.is_marked(q))
        });
        let lc = language_equal(&x, &y);
        let lm = marked_language_equal(&x, &y);
        ensure(lc.is_equal() == closed, || {
            format!("pair {i}: closed verdict disagrees")
        })?;
        ensure(lm.is_equal() == marked, || {
            format!("pair {i}: marked verdict disagrees")
        })?;
        if let Some(w) = lc.witness() {
            ensure(run(&x, w).is_some() != run(&y, w).is_some(), || {
                format!("pair {i}: bad closed witness")
            })?;
        }
        if let Some(w) = lm.witness() {
            let side = |a: &desred::Automaton| run(a, w).is_some_and(|q| a.is_marked(q));
            ensure(side(&x) != side(&y), || format!("pair {i}: bad marked witness"))?;
        }
        equal_pairs += usize::from(lc.is_equal() && lm.is_equal());
    }
    Ok(format!("100/100 pairs agree ({equal_pairs} fully equal)"))
}

fn covert_damage() -> Outcome {
    let wt = water_tank();
    ensure(check_covert(&wt.attacker, &wt.ctx).unwrap().is_covert(), || {
        "attacker exposed".into()
    })?;
    let reduced = reduce_ra(&wt.attacker, &wt.ctx).unwrap().reduced;
    let b = wt.ctx.closed_loop(&reduced).automaton;
    let w = shortest_marked_string(&b).ok_or("no damage string")?;
    let w = render(&w);
    let narrative = ["H", "L#", "cmd{EH,H,L,close}", "close", "EH"];
    let mut rest = w.iter();
    ensure(narrative.iter().all(|n| rest.any(|x| x == n)), || {
        format!("witness {w:?}")
    })?;
    Ok(format!("covert; damage by {}", w.join(" ")))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 water tank pipeline", water_tank_pipeline),
        ("2 compression ratio", compression_ratio),
        (
            "3 random quotients are congruences and equivalent",
            random_quotients,
        ),
        ("4 exhaustive minimum never loses", oracle_dominance),
        ("5 construction size invariants", size_invariants),
        ("6 equivalence checker vs enumeration", equivalence_oracle),
        ("7 covert damage scenario", covert_damage),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
