//! One line per acceptance criterion. Every check is exact: a residual
//! passes only when it is identically zero.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ncforms::suites::{run, CheckResult, Config, SuiteReport};

type Selector = (&'static str, fn(&str) -> bool);

struct Criterion {
    id: u32,
    title: &'static str,
    /// `(suite, check-name predicate)`.
    select: Vec<Selector>,
    /// Check names that must be present among the selected ones.
    required: &'static [&'static str],
    min_cases: usize,
    budget: Duration,
}

fn any(_: &str) -> bool {
    true
}

fn criteria() -> Vec<Criterion> {
    let secs = Duration::from_secs;
    vec![
        Criterion {
            id: 1,
            title: "d^2 = 0 (free even, free graded, Weyl, Q-space, complex presets)",
            select: vec![
                ("free-calculus", |c| c == "d-squared"),
                ("graded-calculus", |c| c == "d-squared"),
                ("weyl", |c| c == "d-squared"),
                ("qspace", |c| c == "d-squared"),
                ("complexes", |c| c.ends_with("-d-squared")),
            ],
            required: &["general-sl2-d-squared", "aff1-d-squared", "so4-d-squared", "discrete-backward-d-squared"],
            min_cases: 100,
            budget: secs(30),
        },
        Criterion {
            id: 2,
            title: "homotopy formula (free even, free graded, Q-space)",
            select: vec![
                ("free-calculus", |c| c == "homotopy"),
                ("graded-calculus", |c| c == "homotopy"),
                ("qspace", |c| c == "homotopy"),
            ],
            required: &["homotopy"],
            min_cases: 100,
            budget: secs(60),
        },
        Criterion {
            id: 3,
            title: "Poincare round trip with scalar remainder",
            select: vec![
                ("free-calculus", |c| c == "poincare"),
                ("graded-calculus", |c| c == "poincare"),
                ("qspace", |c| c == "poincare"),
            ],
            required: &["poincare"],
            min_cases: 100,
            budget: secs(60),
        },
        Criterion {
            id: 4,
            title: "Cartan suite, ungraded and graded",
            select: vec![("cartan", any)],
            required: &[
                "commutes-with-d",
                "contract-leibniz",
                "contract-exact",
                "lie-derivative",
                "contract-swap",
                "contract-permutations",
                "lie-exchange",
                "contract-lie",
                "y-prefix",
                "cartan-1",
                "cartan-2",
                "cartan-3",
                "cartan-4",
                "graded-contract-exact",
                "graded-contract-leibniz",
                "graded-lie-derivative",
                "graded-d-contract-degree",
                "graded-d-contract-leibniz",
                "graded-contract-swap",
                "graded-contract-lie",
                "graded-lie-exchange",
                "graded-cartan-4",
            ],
            min_cases: 50,
            budget: secs(60),
        },
        Criterion {
            id: 5,
            title: "Weyl suite (normal form, mixed partials, symbol transfer, quantum Poincare)",
            select: vec![("weyl", any)],
            required: &["normal-form", "mixed-partials", "transfer-n1", "transfer-n2", "quantum-poincare"],
            min_cases: 3,
            budget: secs(60),
        },
        Criterion {
            id: 6,
            title: "Clebsch representations, plain and rescaled",
            select: vec![("clebsch", any)],
            required: &["aff1", "sl2", "gl2", "gl3", "so3", "gl2f", "sl2bf-rescaled", "so3-rescaled"],
            min_cases: 1,
            budget: secs(60),
        },
        Criterion {
            id: 7,
            title: "complex audits, Cartan involution, ghostless sl(2) determinant",
            select: vec![("complexes", |c| !c.ends_with("-d-squared"))],
            required: &[
                "general-sl2-audit",
                "aff1-audit",
                "ehrenfest3-random-audit",
                "gl2-left-audit",
                "gl2-right-audit",
                "gl3-left-audit",
                "gl3-right-audit",
                "so3-audit",
                "so4-audit",
                "cartan-involution",
                "sl2-ghostless-det",
            ],
            min_cases: 1,
            budget: secs(60),
        },
        Criterion {
            id: 8,
            title: "discrete exactness and antidifference",
            select: vec![("discrete", |c| c.ends_with("-exactness") || c == "antidifference")],
            required: &["forward-exactness", "backward-exactness", "antidifference"],
            min_cases: 100,
            budget: secs(60),
        },
        Criterion {
            id: 9,
            title: "Q-space partial derivative identities",
            select: vec![("qspace", |c| matches!(c, "d-via-partials" | "partials-commute" | "partial-ideal"))],
            required: &["d-via-partials", "partials-commute", "partial-ideal"],
            min_cases: 100,
            budget: secs(60),
        },
        Criterion {
            id: 10,
            title: "equivariance over Z2 and Z3 indexings",
            select: vec![("qspace", |c| c.starts_with("Z2-") || c.starts_with("Z3-"))],
            required: &[
                "Z2-commutes-with-d",
                "Z2-commutes-with-at",
                "Z2-commutes-with-i",
                "Z2-decomposition",
                "Z3-commutes-with-d",
                "Z3-commutes-with-at",
                "Z3-commutes-with-i",
                "Z3-decomposition",
            ],
            min_cases: 1,
            budget: secs(60),
        },
        Criterion {
            id: 11,
            title: "rewrite engine: confluence, strategy independence, idempotence",
            select: vec![("confluence", any)],
            required: &["weyl2-local-confluence", "qspace3-strategy-independence", "so4-idempotence"],
            min_cases: 1,
            budget: secs(60),
        },
    ]
}

fn evaluate(c: &Criterion, reports: &mut std::collections::BTreeMap<&'static str, (SuiteReport, Duration)>, cfg: &Config) -> (bool, String) {
    let mut picked: Vec<CheckResult> = Vec::new();
    let mut elapsed = Duration::ZERO;
    for (suite, pred) in &c.select {
        if !reports.contains_key(suite) {
            let t = Instant::now();
            let r = run(suite, cfg).expect("known suite");
            reports.insert(suite, (r, t.elapsed()));
        }
        let (r, t) = &reports[suite];
        elapsed += *t;
        picked.extend(r.checks.iter().filter(|x| pred(&x.check)).cloned());
    }
    let missing: Vec<&str> = c.required.iter().copied().filter(|n| !picked.iter().any(|x| x.check == *n)).collect();
    let short: Vec<&CheckResult> = picked.iter().filter(|x| x.cases < c.min_cases).collect();
    let failed: Vec<&CheckResult> = picked.iter().filter(|x| !x.is_ok()).collect();
    let cases: usize = picked.iter().map(|x| x.cases).sum();
    let slow = elapsed > c.budget;
    let ok = !picked.is_empty() && missing.is_empty() && short.is_empty() && failed.is_empty() && !slow;
    let mut detail = format!("{} checks, {} cases, {:.2?}", picked.len(), cases, elapsed);
    if !missing.is_empty() {
        detail += &format!("; missing {:?}", missing);
    }
    if let Some(s) = short.first() {
        detail += &format!("; {} ran only {} cases", s.check, s.cases);
    }
    if let Some(f) = failed.first() {
        detail += &format!("; {} failed {}/{}", f.check, f.failed, f.cases);
        if let Some(ce) = &f.counterexample {
            detail += &format!(" (case {}: {} -> {})", ce.case, ce.input, ce.residual);
        }
    }
    if slow {
        detail += &format!("; over budget {:?}", c.budget);
    }
    (ok, detail)
}

fn main() -> ExitCode {
    let cfg = Config { seed: 0, cases: 100, max_deg: 4 };
    let mut reports = Default::default();
    let mut all = true;
    let start = Instant::now();
    for c in criteria() {
        let (ok, detail) = evaluate(&c, &mut reports, &cfg);
        all &= ok;
        println!("criterion {:>2}: {} {} [{}]", c.id, if ok { "PASS" } else { "FAIL" }, c.title, detail);
    }
    println!("acceptance: {} in {:.2?}", if all { "all criteria pass" } else { "FAILURES" }, start.elapsed());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
