//! Cross-module integration: the full obstruction pipeline from torus-knot
//! parameters to a fired contradiction, consistency between the sequence
//! verifier and the certifier, and the installed binary's behavior.

use cs_obstruct::obstruction::{
    certify_independence, check_cs_partition, contradiction_check, glue, whitehead_block,
    z2_ball_block,
};
use cs_obstruct::seifert::{enumerate_flat_connections, surgery_to_brieskorn, Sign};
use cs_obstruct::sequences::{kn_family, power_family, verify_chain, KnFamily, KnotPair};
use std::process::Command;

#[test]
fn whole_pipeline_for_the_power_family() {
    let family = power_family(6).unwrap();
    let pairs: Vec<KnotPair> = family.iter().map(|(k, _)| *k).collect();

    // every member's block partitions at its own energy with exactly the
    // doubled cover on the glue side, and capping fires the contradiction
    for knot in &pairs {
        let block = whitehead_block(knot.p(), knot.q()).unwrap();
        let partition = check_cs_partition(&block, &block.energy()).unwrap();
        let cover = format!("Sigma(D(T({},{})))", knot.p(), knot.q());
        assert_eq!(partition.gl, vec![cover.clone()]);
        assert!(!contradiction_check(&block));

        let capped = glue(&block, &z2_ball_block(&cover, Sign::Plus), &cover).unwrap();
        assert!(contradiction_check(&capped));
    }

    // the family's chain report and certificate agree
    let report = verify_chain(&pairs);
    assert!(report.all_pass());
    let tuples: Vec<(i64, i64)> = pairs.iter().map(|k| (k.p(), k.q())).collect();
    let cert = certify_independence(&tuples).unwrap();
    assert!(cert.is_certified());
}

#[test]
fn kn_family_feeds_the_certifier() {
    match kn_family(&[2, 3, 5, 8], 2) {
        KnFamily::Verified(fam) => {
            let tuples: Vec<(i64, i64)> = fam.iter().map(|(k, _)| (k.p(), k.q())).collect();
            let cert = certify_independence(&tuples).unwrap();
            assert!(cert.is_certified());
        }
        KnFamily::Failure { index, reason } => {
            panic!("family construction failed at {index}: {reason:?}")
        }
    }
}

#[test]
fn surgery_feeds_flat_enumeration() {
    // the doubling cobordism's far boundary is the surgered sphere whose
    // flat classes bound the relevant Chern-Simons denominators
    let sphere = surgery_to_brieskorn(2, 3, 2, Sign::Plus).unwrap();
    assert_eq!(sphere.to_string(), "-Sigma(2,3,11)");
    let classes = enumerate_flat_connections(&sphere).unwrap();
    assert_eq!(classes.len(), 4);
    for c in &classes {
        let scaled = c.cs_su2.value() * cs_obstruct::exactq::rat(264, 1);
        assert!(scaled.is_integer());
    }
}

fn run_binary(args: &[&str], threads: Option<&str>) -> (i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cs-obstruct"));
    cmd.args(args);
    if let Some(t) = threads {
        cmd.env("CS_OBSTRUCT_THREADS", t);
    }
    let out = cmd.output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
    )
}

#[test]
fn binary_certify_exit_codes() {
    let (code, stdout) = run_binary(&["certify", "2,3", "2,7", "2,15", "2,31"], None);
    assert_eq!(code, 0);
    assert!(stdout.contains("Certified"));

    let (code, stdout) = run_binary(&["certify", "2,5", "2,7"], None);
    assert_eq!(code, 1);
    assert!(stdout.contains("378"));

    let (code, _) = run_binary(&["certify", "2,6"], None);
    assert_eq!(code, 2);
}

#[test]
fn binary_rep_search_is_deterministic_under_thread_caps() {
    let args = [
        "--format",
        "json",
        "rep-search",
        "--seeds",
        "8",
        "--seed",
        "31",
    ];
    let (c1, out1) = run_binary(&args, Some("1"));
    let (c2, out2) = run_binary(&args, Some("4"));
    let (c3, out3) = run_binary(&args, None);
    assert_eq!((c1, &out1), (c2, &out2));
    assert_eq!((c1, &out1), (c3, &out3));
    assert_eq!(c1, 0);
}

#[test]
fn binary_json_outputs_round_trip() {
    for args in [
        vec!["--format", "json", "cs-invariants", "2", "3", "2"],
        vec!["--format", "json", "tau-bound", "--whitehead", "2", "7"],
        vec!["--format", "json", "sequence", "--power", "5"],
        vec!["--format", "json", "block", "--whitehead", "2", "3"],
    ] {
        let (code, out) = run_binary(&args, None);
        assert_eq!(code, 0, "args {args:?}");
        let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", out);
    }
}
