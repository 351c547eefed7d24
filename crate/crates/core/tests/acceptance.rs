use std::time::Instant;

use fundalc::classifier::{is_fundamental, is_gl_fundamental, is_k_fundamental};
use fundalc::expr::parse_element;
use fundalc::newton::is_straight;
use fundalc::verify::{run_suite, Report, VerifyConfig};
use fundalc::AffineWeylGroup;

const CATALOGUE: [&str; 9] = [
    "GL2", "SL2", "PGL2", "GL3", "SL3", "Sp4-sc", "G2-sc", "SL3@2", "SL4@2",
];

fn config(max_len: usize) -> VerifyConfig {
    VerifyConfig {
        max_len,
        ..VerifyConfig::default()
    }
}

/// Runs one suite over the catalogue and returns the failing checks.
fn over_catalogue(suite: &str, cfg: &VerifyConfig, checks: Option<&[&str]>) -> Vec<String> {
    let mut bad = Vec::new();
    for key in CATALOGUE {
        let g = AffineWeylGroup::from_key(key).unwrap();
        let r: Report = run_suite(suite, &g, cfg).unwrap();
        for c in &r.checks {
            eprintln!("  {suite} {key} {}: {} instances, passed={}", c.name, c.count, c.passed);
            if checks.is_some_and(|names| !names.contains(&c.name.as_str())) {
                continue;
            }
            if !c.passed {
                bad.push(format!("{key} {}: {:?}", c.name, c.counterexamples));
            }
        }
        for n in &r.notes {
            eprintln!("  {suite} {key}: {n}");
        }
    }
    bad
}

fn line(n: usize, what: &str, bad: &[String], start: Instant) -> bool {
    let ok = bad.is_empty();
    println!(
        "criterion {n} {}: {what} ({:.1}s)",
        if ok { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64()
    );
    for b in bad.iter().take(10) {
        println!("    {b}");
    }
    ok
}

fn main() {
    let mut all = true;

    let t = Instant::now();
    let bad = over_catalogue("fund-equivalence", &config(10), None);
    all &= line(1, "witness search succeeds iff straight, length <= 10", &bad, t);

    let t = Instant::now();
    let bad = over_catalogue("min-certificates", &config(8), None);
    all &= line(2, "reduction certificates valid, length <= 8", &bad, t);

    let t = Instant::now();
    let bad = over_catalogue(
        "kf-criteria",
        &config(10),
        Some(&["criteria-agree-K", "criteria-agree-GL", "length-inequality"]),
    );
    all &= line(3, "factorization and Levi criteria agree and the length inequality holds, length <= 10", &bad, t);

    let t = Instant::now();
    let bad = over_catalogue("straight-classes", &config(10), None);
    all &= line(4, "(nu_bar, kappa) separates straight classes, length <= 10, cap 12", &bad, t);

    let t = Instant::now();
    let mut bad = Vec::new();
    for (key, mu) in [("GL3", vec![1, 0, 0]), ("GL4", vec![1, 1, 0, 0])] {
        let g = AffineWeylGroup::from_key(key).unwrap();
        let cfg = VerifyConfig {
            mu: vec![mu.clone()],
            ..VerifyConfig::default()
        };
        let r = run_suite("minuscule", &g, &cfg).unwrap();
        for n in &r.notes {
            eprintln!("  minuscule {key}: {n}");
        }
        for c in r.checks.iter().filter(|c| !c.passed) {
            bad.push(format!("{key} mu={mu:?}: {:?}", c.counterexamples));
        }
    }
    all &= line(5, "minuscule double cosets dominate straight conjugates", &bad, t);

    let t = Instant::now();
    let cfg = VerifyConfig {
        max_len: 8,
        sample_len: Some(10),
        samples: 200,
        ..VerifyConfig::default()
    };
    let bad = over_catalogue("reduction-steps", &cfg, None);
    all &= line(6, "reduction-step suite exhaustive at length <= 8, sampled to 10", &bad, t);

    let t = Instant::now();
    let bad = over_catalogue(
        "oracles",
        &config(10),
        Some(&["length", "bruhat", "reachability-in-class-oracle"]),
    );
    all &= line(7, "length, Bruhat and reachability agree with oracles", &bad, t);

    let t = Instant::now();
    let mut bad = over_catalogue("newton-bound", &config(10), Some(&["lower-bound"]));
    let g = AffineWeylGroup::from_key("SL2").unwrap();
    let s0 = parse_element(&g, "s0").unwrap();
    let s = parse_element(&g, "s1").unwrap();
    let split = [
        ("s0 not K-fundamental", is_k_fundamental(&g, &s0) == Ok(false)),
        ("s0 G(L)-fundamental", is_gl_fundamental(&g, &s0) == Ok(true)),
        ("s1 K-fundamental", is_k_fundamental(&g, &s) == Ok(true)),
        ("s1 not fundamental", !is_straight(&g, &s) && is_fundamental(&g, &s).witness.is_none()),
    ];
    for (what, ok) in split {
        if !ok {
            bad.push(format!("SL2 split: {what} fails"));
        }
    }
    all &= line(8, "length bounds <2rho, nu_bar> and the SL2 K versus G(L) split", &bad, t);

    if !all {
        std::process::exit(1);
    }
}
