//! One PASS/FAIL line per acceptance criterion.
//!
//! Runs the full suite once with timings to judge each criterion against its
//! runtime budget, then twice more without timings for the determinism check.
//! A criterion listed in `KNOWN_FAILURES` prints FAIL with its reason and does
//! not fail the target; any other FAIL does, and so does a known failure that
//! starts passing (the list must be kept honest).

use std::process::ExitCode;
use std::time::Duration;

use h7alg::veritool::{verify, Report, Status, Suite, VerifyConfig};

struct Criterion {
    n: u32,
    name: &'static str,
    checks: &'static [&'static str],
    budget: Duration,
    /// Accept a flagged check as long as nothing failed.
    flag_ok: bool,
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

const CRITERIA: &[Criterion] = &[
    Criterion { n: 1, name: "group law", checks: &["appendix.group_law"], budget: secs(10), flag_ok: false },
    Criterion { n: 2, name: "character tables", checks: &["appendix.g7_table", "appendix.sl2_table"], budget: secs(10), flag_ok: false },
    Criterion { n: 3, name: "decomposition formulas and products", checks: &["appendix.g7_formulas", "appendix.sl2_products"], budget: secs(60), flag_ok: false },
    Criterion { n: 4, name: "B-matrices", checks: &["syzygy.b_matrices"], budget: secs(10), flag_ok: false },
    Criterion { n: 5, name: "alpha composition vs minor annihilation", checks: &["syzygy.alpha_equivalence"], budget: secs(600), flag_ok: false },
    Criterion { n: 6, name: "apolar ideal J", checks: &["syzygy.j_ideal"], budget: secs(30), flag_ok: false },
    Criterion { n: 7, name: "surface pipeline", checks: &["moduli.surface_pipeline", "moduli.grassmann"], budget: secs(300), flag_ok: false },
    Criterion { n: 8, name: "surface Betti table over F31", checks: &["syzygy.surface_betti"], budget: secs(900), flag_ok: true },
    Criterion { n: 9, name: "Klein quartic", checks: &["moduli.klein_quartic", "appendix.klein_invariance"], budget: secs(30), flag_ok: false },
];

/// Criteria that cannot pass, with the reason printed beside them.
const KNOWN_FAILURES: &[(u32, &str)] = &[(3, "displayed S^11..S^14 rows contradict the character computation")];

fn judge(c: &Criterion, report: &Report) -> (bool, String) {
    let mut ms = 0;
    let mut notes = Vec::new();
    let mut ok = true;
    for id in c.checks {
        let Some(r) = report.check(id) else {
            return (false, format!("{id} missing from report"));
        };
        ms += r.ms;
        match r.status {
            Status::Pass => {}
            Status::Flagged if c.flag_ok => notes.push(format!("{id} flagged")),
            s => {
                ok = false;
                notes.push(format!("{id} {s:?}").to_lowercase());
            }
        }
    }
    let elapsed = Duration::from_millis(ms);
    if elapsed > c.budget {
        ok = false;
        notes.push(format!("over budget {:?}", c.budget));
    }
    notes.insert(0, format!("{:.2}s", elapsed.as_secs_f64()));
    (ok, notes.join(", "))
}

fn main() -> ExitCode {
    let timed = verify(Suite::All, VerifyConfig { timings: true, ..Default::default() });
    let mut results: Vec<(u32, &str, bool, String)> = CRITERIA
        .iter()
        .map(|c| {
            let (ok, detail) = judge(c, &timed);
            (c.n, c.name, ok, detail)
        })
        .collect();

    let a = verify(Suite::All, VerifyConfig::default()).to_json();
    let b = verify(Suite::All, VerifyConfig::default()).to_json();
    let same = matches!((&a, &b), (Ok(x), Ok(y)) if x == y);
    let size = a.as_ref().map(|s| s.len()).unwrap_or(0);
    results.push((10, "determinism of verify all --seed 42", same, format!("{size} bytes, identical: {same}")));

    let mut unexpected = 0;
    for (n, name, ok, detail) in &results {
        let known = KNOWN_FAILURES.iter().find(|k| k.0 == *n);
        let tag = if *ok { "PASS" } else { "FAIL" };
        let note = known.map(|k| format!(" [known: {}]", k.1)).unwrap_or_default();
        println!("{tag} criterion {n:>2} {name}: {detail}{note}");
        if *ok == known.is_some() {
            unexpected += 1;
        }
    }
    let passed = results.iter().filter(|r| r.2).count();
    println!("{passed}/{} criteria pass, {unexpected} unexpected", results.len());
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
