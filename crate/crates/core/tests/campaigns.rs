//! Report schema, registry and error behaviour of the campaign runner.

use serde_json::Value;
use tangrass::fixture::Fixture;
use tangrass::verify::{find, run, Mode, RunOptions, REGISTRY};
use tangrass::Error;

fn quick(trials: usize) -> RunOptions {
    RunOptions {
        trials: Some(trials),
        seed: 7,
        ..Default::default()
    }
}

#[test]
fn report_has_the_stable_schema() {
    let r = run("lemma-2.1", &quick(5)).unwrap();
    let json = r.to_json();
    let fields = ["statement", "mode", "params", "seed", "trials", "pass", "residual_terms", "certificate", "ms"];
    let at: Vec<usize> = fields
        .iter()
        .map(|f| json.find(&format!("\n  \"{}\":", f)).unwrap())
        .collect();
    assert!(at.windows(2).all(|w| w[0] < w[1]), "{}", json);
    let v: Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v.as_object().unwrap().len(), fields.len());
    assert_eq!(v["mode"], "random");
    assert_eq!(v["params"]["nu"], 2);
    assert!(v["ms"].is_null());
}

#[test]
fn timing_fills_ms() {
    let o = RunOptions { timing: true, ..quick(2) };
    assert!(run("lemma-2.1", &o).unwrap().ms.is_some());
}

#[test]
fn registry_is_enumerable() {
    assert_eq!(REGISTRY.len(), 11);
    for c in REGISTRY {
        assert!(!c.statement.is_empty());
        assert!(c.modes.contains(&Mode::Random));
        assert_eq!(find(c.id).unwrap().id, c.id);
    }
}

#[test]
fn unknown_statement_is_an_error() {
    assert_eq!(
        run("lemma-9.9", &quick(1)).unwrap_err(),
        Error::UnknownStatement("lemma-9.9".into())
    );
}

#[test]
fn missing_mode_is_unsupported() {
    let o = RunOptions { mode: Some(Mode::Symbolic), ..quick(1) };
    assert!(matches!(run("thm-5.3", &o), Err(Error::Unsupported(_))));
}

#[test]
fn weight_three_needs_dual_numbers() {
    let o = RunOptions { nu: Some(3), ..quick(1) };
    assert!(matches!(run("thm-5.2", &o), Err(Error::Unsupported(_))));
}

#[test]
fn seeds_change_reports_and_reruns_do_not() {
    let a = run("lemma-4.2", &quick(6)).unwrap();
    let b = run("lemma-4.2", &quick(6)).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    let c = run("lemma-5pt", &RunOptions { seed: 8, ..quick(1) }).unwrap();
    let d = run("lemma-5pt", &quick(1)).unwrap();
    assert_ne!(c.certificate, d.certificate);
}

#[test]
fn right_square_symbolic_reports_the_wedge_sign() {
    let r = run("thm-5.2", &RunOptions { mode: Some(Mode::Symbolic), ..quick(1) }).unwrap();
    let cert = r.certificate.unwrap();
    assert_eq!(cert["trials"], 2);
    assert_eq!(cert["wedge_component_negated_zero_trials"], 2);
    assert_eq!(cert["wedge_component_zero_trials"], 0);
    let tensor = r.checks.iter().find(|c| c.name.contains("F ⊗ ∧²F^×")).unwrap();
    assert!(tensor.pass);
    assert!(!r.pass);
}

#[test]
fn symbolic_zero_compositions_pass() {
    for id in ["prop-zero2", "prop-one2", "prop-zero3"] {
        let r = run(id, &RunOptions { mode: Some(Mode::Symbolic), ..quick(1) }).unwrap();
        assert!(r.pass, "{}", r.summary());
    }
    let o = RunOptions { mode: Some(Mode::Symbolic), n: Some(3), ..quick(1) };
    assert!(run("prop-zeron", &o).unwrap().pass);
}

#[test]
fn fixtures_evaluate_the_standard_frame() {
    let src = include_str!("../../cli/tests/fixtures/frame.json");
    let f = Fixture::parse(src).unwrap();
    assert_eq!(f.eval(None).unwrap(), "a + a′·ε");
    assert_eq!(f.eval(Some("tau2_1")).unwrap(), "⟨a; a′]₂");
}
