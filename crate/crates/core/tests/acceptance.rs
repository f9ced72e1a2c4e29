//! The acceptance gate: one test, and one summary line, per criterion.
//!
//! Every line has the form `criterion N: PASS|FAIL <detail>`; run with
//! `--nocapture` to see them.

use std::time::{Duration, Instant};

use serde_json::Value;
use tangrass::verify::{run, Mode, Report, RunOptions, REGISTRY};

const SEED: u64 = 2024;

fn opts(nu: usize, n: usize, trials: usize, mode: Mode) -> RunOptions {
    RunOptions {
        nu: Some(nu),
        n: Some(n),
        trials: Some(trials),
        seed: SEED,
        mode: Some(mode),
        timing: false,
    }
}

fn go(id: &str, o: RunOptions) -> Report {
    let r = run(id, &o).unwrap_or_else(|e| panic!("{} failed to run: {}", id, e));
    eprintln!("{}", r.summary());
    r
}

/// Whether every check of `r` whose name contains `part` passes; false if
/// there is none.
fn checks_pass(r: &Report, part: &str) -> bool {
    let hits: Vec<_> = r.checks.iter().filter(|c| c.name.contains(part)).collect();
    !hits.is_empty() && hits.iter().all(|c| c.pass)
}

fn verdict(n: usize, pass: bool, detail: String) {
    println!("criterion {}: {} {}", n, if pass { "PASS" } else { "FAIL" }, detail);
    assert!(pass, "criterion {} failed: {}", n, detail);
}

fn within(start: Instant, limit: Duration) -> (bool, String) {
    let t = start.elapsed();
    (t < limit, format!("{:.1} s of {} s", t.as_secs_f64(), limit.as_secs()))
}

#[test]
fn criterion_01_siegel() {
    let start = Instant::now();
    let mut pass = true;
    for nu in 1..=5 {
        pass &= checks_pass(&go("lemma-2.1", opts(nu, 2, 1000, Mode::Random)), "siegel");
    }
    pass &= checks_pass(&go("lemma-2.1", opts(2, 2, 1, Mode::Symbolic)), "siegel");
    let (fast, t) = within(start, Duration::from_secs(30));
    verdict(1, pass && fast, format!("1000 trials for ν = 1..5 and 8 symbols at ν = 2, {}", t));
}

#[test]
fn criterion_02_eps_layer() {
    let mut pass = true;
    for nu in 2..=5 {
        pass &= checks_pass(&go("lemma-2.1", opts(nu, 2, 1000, Mode::Random)), "eps-layer");
    }
    pass &= checks_pass(&go("lemma-2.1", opts(2, 2, 1, Mode::Symbolic)), "eps-layer");
    verdict(2, pass, "ε¹ layer on the same corpus and symbolically".into());
}

#[test]
fn criterion_03_cross_ratio_coefficients() {
    let mut pass = true;
    for nu in 2..=5 {
        let r = go("ratio-formulas", opts(nu, 2, 1000, Mode::Random));
        pass &= checks_pass(&r, "cross-ratio recurrence");
        if nu <= 3 {
            pass &= checks_pass(&r, "cross-ratio closed form");
        }
    }
    let frame = go("ratio-formulas", opts(2, 2, 1, Mode::Symbolic));
    pass &= checks_pass(&frame, "frame-");
    verdict(
        3,
        pass,
        "closed forms and recurrence match division on 1000 trials for ν ≤ 5; standard frame gives (a, a′)".into(),
    );
}

#[test]
fn criterion_04_triple_ratio() {
    let mut pass = true;
    for nu in 2..=3 {
        let r = go("ratio-formulas", opts(nu, 2, 300, Mode::Random));
        for part in ["triple ratio closed form", "triple ratio cycle", "triple ratio factored"] {
            pass &= checks_pass(&r, part);
        }
    }
    verdict(4, pass, "closed form, cycle invariance and factorization on 300 trials, ν = 2, 3".into());
}

#[test]
fn criterion_05_weight_two() {
    let start = Instant::now();
    let runs = [
        go("lemma-4.2", opts(2, 2, 300, Mode::Random)),
        go("prop-zero2", opts(2, 2, 300, Mode::Random)),
        go("lemma-5pt", opts(2, 2, 200, Mode::Random)),
        go("prop-one2", opts(2, 2, 200, Mode::Random)),
    ];
    let pass = runs.iter().all(|r| r.pass)
        && checks_pass(&runs[2], "certified on the normal frame")
        && checks_pass(&runs[2], "∂_ε image");
    let (fast, t) = within(start, Duration::from_secs(120));
    verdict(5, pass && fast, format!("square, zero composition, certified five-point sum, {}", t));
}

#[test]
fn criterion_06_right_square() {
    let start = Instant::now();
    let r = go("thm-5.2", opts(2, 3, 100, Mode::Random));
    let pass = checks_pass(&r, "in F ⊗ ∧²F^×") && checks_pass(&r, "in ∧³F");
    let (fast, t) = within(start, Duration::from_secs(300));
    verdict(6, pass && fast, format!("100 trials, residual {}, {}", r.residual_terms, t));
}

#[test]
fn criterion_07_left_square() {
    let start = Instant::now();
    let r = go("thm-5.3", opts(2, 3, 25, Mode::Random));
    let cert = r.certificate.clone().unwrap_or(Value::Null);
    let stored = cert["certified_trials"].as_array().map_or(0, Vec::len);
    let variants = &cert["variants"];
    let necessary = checks_pass(&r, "necessary condition");
    let certified = variants["printed"]["certified"].as_u64().unwrap_or(0);
    let (fast, t) = within(start, Duration::from_secs(1200));
    verdict(
        7,
        necessary && certified >= 5 && stored >= 5 && fast,
        format!(
            "necessary condition {} on 25; printed statement certified on {} of {} stored; rescaled {}, alternation {}; {}",
            if necessary { "holds" } else { "fails" },
            certified,
            stored,
            variants["rescaled"]["certified"],
            variants["alternation"]["certified"],
            t
        ),
    );
}

#[test]
fn criterion_08_zero_compositions() {
    let mut pass = go("prop-zero3", opts(2, 3, 100, Mode::Random)).pass;
    for n in 3..=5 {
        pass &= go("prop-zeron", opts(2, n, 100, Mode::Random)).pass;
    }
    verdict(8, pass, "τ³₀ ∘ d′ and τⁿ₀ ∘ d′ for n = 3, 4, 5 on 100 trials each".into());
}

#[test]
fn criterion_09_tb3() {
    let symbolic = go("tb3-relations", opts(2, 3, 1, Mode::Symbolic));
    let random = go("tb3-relations", opts(2, 3, 50, Mode::Random));
    let cert = random.certificate.clone().unwrap_or(Value::Null);
    let pass = symbolic.pass && checks_pass(&random, "22-term");
    verdict(
        9,
        pass,
        format!(
            "∂_ε ∘ ∂_ε,3 = 0 symbolically; necessary condition on 50 (a, b, c); level {}, members {} of {}",
            cert["level"], cert["members"], cert["membership_attempts"]
        ),
    );
}

#[test]
fn criterion_10_determinism() {
    let pool = |k: usize| rayon::ThreadPoolBuilder::new().num_threads(k).build().unwrap();
    let (one, three) = (pool(1), pool(3));
    let mut same = 0;
    let mut differ = Vec::new();
    let mut cases: Vec<(&str, RunOptions)> = REGISTRY
        .iter()
        .map(|c| {
            let trials = if c.id == "thm-5.3" { 1 } else { 4 };
            (c.id, RunOptions { trials: Some(trials), seed: SEED, ..Default::default() })
        })
        .collect();
    for id in ["lemma-2.1", "lemma-5pt", "tb3-relations"] {
        cases.push((id, RunOptions { seed: SEED, mode: Some(Mode::Symbolic), ..Default::default() }));
    }
    for (id, o) in &cases {
        let a = one.install(|| run(id, o)).unwrap().to_json();
        let b = three.install(|| run(id, o)).unwrap().to_json();
        if a == b {
            same += 1;
        } else {
            differ.push(*id);
        }
    }
    verdict(
        10,
        differ.is_empty(),
        format!("{} of {} reports byte-identical across reruns on 1 and 3 threads {:?}", same, cases.len(), differ),
    );
}
