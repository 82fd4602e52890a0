//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails or overruns its time limit.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use bskein_cli::suite::{self, CriterionResult, SuiteConfig};
use bskein_core::{alpha_table, Diagram, Engine};

/// `(y + y^-1)^k` as exponent -> coefficient, by direct binomial expansion.
fn y_plus_inv_pow(k: u32) -> BTreeMap<i32, i64> {
    let mut row = vec![1i64];
    for _ in 0..k {
        let mut next = vec![1i64; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row.iter()
        .enumerate()
        .map(|(j, &c)| (k as i32 - 2 * j as i32, c))
        .collect()
}

fn choose(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

fn trivial_links() -> CriterionResult {
    let t = Instant::now();
    let mut failure = None;
    'outer: for r in 1..=8u32 {
        let table = alpha_table(&Diagram::unlink(r)).expect("unlink table");
        if let Some((lo, hi)) = table.support_bounds() {
            if lo < 0 || hi > r as i64 - 1 {
                failure = Some(format!("r={r}: support [{lo}, {hi}]"));
                break;
            }
        }
        for n in 0..r {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let expect: BTreeMap<i32, i64> = y_plus_inv_pow(r - n - 1)
                .into_iter()
                .map(|(e, c)| (e, sign * choose(r - 1, n) * c))
                .collect();
            let got: BTreeMap<i32, i64> = table.get(n as i64).terms().iter().copied().collect();
            if got != expect {
                failure = Some(format!("r={r}, n={n}: got {got:?}, expected {expect:?}"));
                break 'outer;
            }
        }
    }
    CriterionResult {
        id: 1,
        title: "trivial-link closed form",
        passed: failure.is_none(),
        detail: failure.unwrap_or_else(|| "r = 1..8, every n".into()),
        elapsed_ms: t.elapsed().as_millis(),
    }
}

fn verify_catalog_binary() -> CriterionResult {
    let t = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_bskein"))
        .args(["verify", "--catalog"])
        .output()
        .expect("bskein binary runs");
    let code = out.status.code();
    CriterionResult {
        id: 9,
        title: "verify --catalog end to end",
        passed: code == Some(0),
        detail: format!("exit code {code:?}"),
        elapsed_ms: t.elapsed().as_millis(),
    }
}

fn main() {
    let engine = Engine::new().memoized();
    let cfg = SuiteConfig::default();
    let minutes = |m: u64| Some(Duration::from_secs(60 * m));
    let mut results: Vec<(CriterionResult, Option<Duration>)> =
        vec![(trivial_links(), Some(Duration::from_secs(1)))];
    results.push((suite::skein_identities(&engine, &cfg), minutes(5)));
    results.push((suite::base_independence(&engine, &cfg), minutes(2)));
    results.push((suite::reidemeister(&engine, &cfg), minutes(5)));
    results.push((suite::oracle_equivalence(&cfg), minutes(10)));
    results.push((suite::product_laws(&engine), minutes(2)));
    results.push((suite::vanishing_bounds(&engine, &cfg), None));
    results.push((suite::mirror_property(&engine), None));
    results.push((verify_catalog_binary(), minutes(15)));

    let mut all = true;
    for (r, limit) in &results {
        let in_time = limit.is_none_or(|l| r.elapsed_ms <= l.as_millis());
        let ok = r.passed && in_time;
        all &= ok;
        let limit = limit.map_or("none".to_string(), |l| format!("{} s", l.as_secs()));
        println!(
            "criterion {}: {} - {} ({}; {} ms, limit {limit})",
            r.id,
            if ok { "PASS" } else { "FAIL" },
            r.title,
            r.detail,
            r.elapsed_ms,
        );
    }
    if !all {
        std::process::exit(1);
    }
}
