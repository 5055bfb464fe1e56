use std::process::{Command, Output};

use ghm_cli::{parse_args, to_args, Format, Params, RunConfig};
use ghm_core::{ComplexRational, Rational};
use proptest::prelude::*;
use serde_json::Value;

fn ghm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ghm")).args(args).output().expect("spawn ghm")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn hilbert_verify() {
    let out = ghm(&["muntz", "verify", "--alphas", "0,1,2", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["det"]["closed"], "1/2160");
    assert_eq!(r["det"]["match"], true);
    assert_eq!(r["bounds"]["certified"], true);
    assert_eq!(r["precision"], 256);
    // 256 bits carry ceil(256·log10 2) = 78 significant digits
    let b1 = r["bounds"]["b1"]["value"].as_str().unwrap();
    let mantissa = b1.split('e').next().unwrap().replace(['.', '-'], "");
    assert_eq!(mantissa.len(), 78, "{b1}");
}

#[test]
fn lommel_errata() {
    let out = ghm(&["lommel", "verify", "--q", "1/2", "--V", "1/2", "--n", "1", "--printed-formulas"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let det = r["errata"].as_array().unwrap().iter().find(|e| e["formula"] == "lommel.det").unwrap();
    assert_eq!(det["match"], false);
    assert_eq!(det["corrected"], "8/63");
}

#[test]
fn askey_det() {
    let out = ghm(&["askey", "det", "--alpha", "1/2", "--beta", "1/3", "--q", "1/4", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["det"], serde_json::json!({"closed": "108/575", "oracle": "108/575", "match": true}));
}

#[test]
fn byte_identical_reruns() {
    for format in ["json", "csv"] {
        let args = ["lommel", "verify", "--q", "1/3", "--V", "2/3", "--n", "3", "--printed-formulas", "--format", format];
        let (a, b) = (ghm(&args), ghm(&args));
        assert_eq!(a.stdout, b.stdout);
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn injected_fault_exits_one() {
    let base = ["muntz", "verify", "--alphas", "0,1,2,3"];
    assert_eq!(ghm(&base).status.code(), Some(0));
    let out = ghm(&[&base[..], &["--perturb", "1/1000000000"]].concat());
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["inverse"]["match"], false);
    let out = ghm(&["muntz", "inverse", "--alphas", "0,1", "--perturb", "-1/3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["muntz", "det", "--alphas", "1/0"][..],
        &["muntz", "det", "--alphas", "0", "--nope"],
        &["lommel", "det", "--q", "1/2", "--V", "1/2"],
        &["synthetic", "bound", "--alphas", "0,1"],
        &["hankel", "det"],
    ] {
        let out = ghm(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn parameter_errors_are_structured() {
    let out = ghm(&["lommel", "det", "--q", "3/2", "--V", "1/2", "--n", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let r = json(&out);
    assert_eq!(r["error"]["kind"], "InvalidParameter");
    let out = ghm(&["muntz", "det", "--alphas", "0,1", "--n", "4"]);
    assert_eq!(json(&out)["error"]["kind"], "Unavailable");
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    let out = ghm(&["muntz", "matrix", "--alphas", "0,1", "--format", "csv", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("entries.1.1,1/3\n"));
}

#[test]
fn complex_muntz_needs_z0_for_corollary() {
    let r = json(&ghm(&["muntz", "bound", "--alphas", "0,1+i,2"]));
    assert!(r["bounds"]["corollary"]["value"].is_null());
    assert_eq!(r["bounds"]["certified"], true);
}

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=20).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn complex() -> impl Strategy<Value = ComplexRational> {
    (rational(), rational()).prop_map(|(a, b)| ComplexRational::new(a, b))
}

fn params() -> impl Strategy<Value = Params> {
    let alphas = || prop::collection::vec(complex(), 1..5);
    prop_oneof![
        alphas().prop_map(|alphas| Params::Muntz { alphas }),
        alphas().prop_map(|alphas| Params::Synthetic { alphas }),
        (rational(), rational(), rational(), alphas()).prop_map(|(a, b, c, alphas)| Params::Gmuntz { a, b, c, alphas }),
        (rational(), rational()).prop_map(|(q, v)| Params::Lommel { q, v }),
        (rational(), rational(), rational()).prop_map(|(alpha, beta, q)| Params::Askey { alpha, beta, q }),
    ]
}

fn config() -> impl Strategy<Value = RunConfig> {
    use ghm_cli::Command as C;
    let command = prop_oneof![Just(C::Matrix), Just(C::Det), Just(C::Inverse), Just(C::Bound), Just(C::Eigen), Just(C::Verify)];
    (
        params(),
        command,
        0usize..9,
        64u32..1024,
        prop::option::of(complex()),
        any::<bool>(),
        any::<bool>(),
        prop::option::of(rational()),
    )
        .prop_filter_map("synthetic has no spectrum commands", |(params, command, n, prec, z0, csv, printed, perturb)| {
            if matches!(params, Params::Synthetic { .. }) && matches!(command, C::Bound | C::Eigen) {
                return None;
            }
            Some(RunConfig {
                command,
                n,
                params,
                prec,
                z0,
                format: if csv { Format::Csv } else { Format::Json },
                printed_formulas: printed,
                output: None,
                perturb,
            })
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn args_round_trip(cfg in config()) {
        prop_assert_eq!(parse_args(&to_args(&cfg)).unwrap(), cfg);
    }
}
