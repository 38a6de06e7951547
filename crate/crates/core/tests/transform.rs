mod common;

use std::collections::BTreeSet;

use common::*;
use desred::product::sync_product;
use desred::random::{random_system, Limits};
use desred::transform::{build_context, commands_of, gamma_of, AttackContext};
use desred::{Automaton, EventLabel};

fn command_labels(a: &Automaton) -> BTreeSet<EventLabel> {
    a.transitions()
        .filter(|(_, l, _)| l.is_command())
        .map(|(_, l, _)| l.clone())
        .collect()
}

fn check_structure(ctx: &AttackContext) {
    assert!(ctx.size_violations().is_empty(), "{:?}", ctx.size_violations());
    let n = ctx.supervisor.num_states();
    for q in ctx.bts.states() {
        let is_command_state = q >= n;
        for (l, _) in ctx.bts.transitions_from(q) {
            assert_eq!(
                l.is_command(),
                is_command_state,
                "{} at {}",
                l,
                ctx.bts.state_name(q)
            );
        }
    }
    assert_eq!(ctx.bts_attacked.transitions_from(ctx.no_covert).count(), 0);
    assert_eq!(command_labels(&ctx.ce), command_labels(&ctx.bts));
}

#[test]
fn water_tank_commands() {
    let wt = water_tank();
    let ctx = &wt.ctx;
    let v1 = EventLabel::command(["L", "H", "EH"]).unwrap();
    let v2 = EventLabel::command(["L", "H", "EH", "close"]).unwrap();
    let v3 = EventLabel::command(["L", "H", "EH", "open"]).unwrap();
    let v4 = EventLabel::command(["L", "H", "EH", "close", "open"]).unwrap();
    let got: BTreeSet<_> = commands_of(&ctx.supervisor, &ctx.alphabet)
        .unwrap()
        .iter()
        .map(|c| c.label())
        .collect();
    assert_eq!(got, BTreeSet::from([v1, v2.clone(), v3, v4.clone()]));

    let s4 = ctx.supervisor.state_by_name("s4").unwrap();
    assert_eq!(gamma_of(&ctx.supervisor, s4, &ctx.alphabet).unwrap().label(), v2);
    assert_eq!(gamma_of(&ctx.supervisor, 0, &ctx.alphabet).unwrap().label(), v4);

    assert_eq!(ctx.ac.num_states(), 2);
    assert_eq!(ctx.ce.num_states(), 5);
    for q in 1..ctx.ce.num_states() {
        for (l, d) in ctx.ce.transitions_from(q) {
            assert!(l.is_plain());
            assert_eq!(d, 0);
        }
    }
    assert_eq!(ctx.bts.num_states(), 2 * ctx.supervisor.num_states());
    assert_eq!(ctx.bts_attacked.num_states(), ctx.bts.num_states() + 1);
    check_structure(ctx);
}

#[test]
fn ac_walks() {
    let wt = water_tank();
    let ac = &wt.ctx.ac;
    let init: BTreeSet<String> = ac.enabled_set(0).unwrap().iter().map(|l| l.to_string()).collect();
    assert_eq!(init, ["EH", "H", "L", "close", "open"].map(String::from).into());
    let leaving: BTreeSet<_> = ac
        .transitions_from(0)
        .filter(|&(_, d)| d != 0)
        .map(|(l, _)| l.to_string())
        .collect();
    assert_eq!(leaving, ["EH", "H", "L"].map(String::from).into());
    let obs: BTreeSet<String> = ac.enabled_set(1).unwrap().iter().map(|l| l.to_string()).collect();
    assert_eq!(obs, ["EH#", "H#", "L#"].map(String::from).into());
    assert!(ac.accepts(&word("H L#")));
    assert!(!ac.accepts(&word("H L# H#")));
}

#[test]
fn compromised_reaction_edges() {
    let wt = water_tank();
    let ctx = &wt.ctx;
    let s0 = ctx.supervisor.state_by_name("s0").unwrap();
    let s3 = ctx.supervisor.state_by_name("s3").unwrap();
    let n = ctx.supervisor.num_states();
    assert_eq!(ctx.bts_attacked.step(s0, &l("H#")), Some(n + s3));
    assert_eq!(ctx.bts_attacked.step(s0, &l("H")), Some(s0));
    assert_eq!(
        ctx.bts_attacked.step(s0, &l("close")),
        ctx.bts.step(s0, &l("close"))
    );
}

#[test]
fn commands_erased_closed_loop_matches_plain_closed_loop() {
    let wt = water_tank();
    let ctx = &wt.ctx;
    let k = 6;
    let with_cmds = sync_product(&[&ctx.plant, &ctx.ce, &ctx.bts]).unwrap();
    let (strings, _) = bounded_language(&with_cmds, 2 * k + 1);
    let erased: BTreeSet<Word> = strings
        .into_iter()
        .map(|w| w.into_iter().filter(|x| !x.starts_with("cmd{")).collect::<Word>())
        .filter(|w| w.len() <= k)
        .collect();
    let plain = sync_product(&[&ctx.plant, &ctx.supervisor]).unwrap();
    let (oracle, _) = bounded_language(&plain, k);
    assert_eq!(erased, oracle);
}

#[test]
fn construction_is_deterministic() {
    let wt = water_tank();
    let again = build_context(&wt.ctx.plant, &wt.ctx.supervisor, &wt.ctx.alphabet).unwrap();
    for (a, b) in [
        (&wt.ctx.plant_prime, &again.plant_prime),
        (&wt.ctx.bts_attacked, &again.bts_attacked),
        (&wt.ctx.ce, &again.ce),
    ] {
        assert_eq!(a, b);
        assert_eq!(a.export_dot(), b.export_dot());
    }
}

#[test]
fn random_contexts_keep_size_invariants() {
    let mut seen = 0;
    for seed in 0..300 {
        let sys = random_system(seed, Limits::default()).unwrap();
        check_structure(&sys.context);
        assert_eq!(sys.context.ce.num_states(), sys.context.commands.len() + 1);
        seen += 1;
    }
    assert_eq!(seen, 300);
}
