//! Property suite run by `verify --catalog` and by the acceptance tests.
//! Each criterion reports pass/fail, a one-line detail and its wall time.

use std::time::Instant;

use bskein_core::moves::{random_diagram, random_move_walk, Step};
use bskein_core::oracle::uniqueness_check;
use bskein_core::series::{check_l_skein, check_product_laws, f_of, l_of};
use bskein_core::warping::{enumerate_bases, enumerate_bases_permuted};
use bskein_core::{Diagram, Engine, Oracle, Orientation, Result};
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{catalog, lookup};

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

/// Sample sizes and seeds; the defaults are the published acceptance numbers.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub skein_random: u64,
    pub skein_max_c: usize,
    pub base_random: u64,
    pub base_max_c: usize,
    pub walks: u64,
    pub walk_steps: usize,
    pub walk_max_c: usize,
    pub oracle_random: u64,
    pub oracle_max_c: usize,
    pub catalog_max_c: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            skein_random: 200,
            skein_max_c: 6,
            base_random: 100,
            base_max_c: 5,
            walks: 500,
            walk_steps: 40,
            walk_max_c: 10,
            oracle_random: 100,
            oracle_max_c: 6,
            catalog_max_c: 8,
        }
    }
}

impl SuiteConfig {
    /// A much smaller run for smoke tests.
    pub fn quick() -> Self {
        SuiteConfig {
            skein_random: 20,
            base_random: 10,
            walks: 30,
            walk_steps: 25,
            walk_max_c: 8,
            oracle_random: 10,
            ..Self::default()
        }
    }
}

const SKEIN_SEED: u64 = 0;
const BASE_SEED: u64 = 10_000;
const WALK_SEED: u64 = 20_000;
const ORACLE_SEED: u64 = 30_000;

fn timed(
    id: u32,
    title: &'static str,
    f: impl FnOnce() -> Result<(bool, String)>,
) -> CriterionResult {
    let t = Instant::now();
    let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionResult {
        id,
        title,
        passed,
        detail,
        elapsed_ms: t.elapsed().as_millis(),
    }
}

fn catalog_upto(max_c: usize) -> Vec<(String, Diagram)> {
    catalog()
        .into_iter()
        .map(|e| (e.name.clone(), e.diagram()))
        .filter(|(_, d)| d.c() <= max_c)
        .collect()
}

fn randoms(first_seed: u64, count: u64, max_c: usize) -> Vec<(String, Diagram)> {
    (first_seed..first_seed + count)
        .map(|s| (format!("random#{s}"), random_diagram(s, max_c)))
        .collect()
}

pub fn all_orientations(r: usize) -> Vec<Orientation> {
    (0..1u32 << r)
        .map(|m| Orientation((0..r).map(|i| m >> i & 1 == 1).collect()))
        .collect()
}

/// First failure wins; `None` means every item passed.
fn first_failure<T: Sync>(
    items: &[T],
    check: impl Fn(&T) -> Result<Option<String>> + Sync + Send,
) -> Result<Option<String>> {
    let results: Vec<Result<Option<String>>> = items.par_iter().map(check).collect();
    for r in results {
        if let Some(msg) = r? {
            return Ok(Some(msg));
        }
    }
    Ok(None)
}

fn verdict(count: usize, what: &str, failure: Option<String>) -> (bool, String) {
    match failure {
        None => (true, format!("{count} {what}")),
        Some(msg) => (false, msg),
    }
}

pub fn skein_identities(engine: &Engine, cfg: &SuiteConfig) -> CriterionResult {
    timed(2, "skein identities", || {
        let mut ds = catalog_upto(cfg.catalog_max_c);
        ds.extend(randoms(SKEIN_SEED, cfg.skein_random, cfg.skein_max_c));
        let crossings: usize = ds.iter().map(|(_, d)| d.c()).sum();
        let fail = first_failure(&ds, |(name, d)| {
            for p in 0..d.c() {
                let rep = engine.skein_check(d, p)?;
                if !rep.holds() {
                    return Ok(Some(format!(
                        "{name}: coefficient skein fails at crossing {p}: {:?}",
                        rep.first_mismatch()
                    )));
                }
                if !check_l_skein(engine, d, p)? {
                    return Ok(Some(format!("{name}: L skein fails at crossing {p}")));
                }
            }
            Ok(None)
        })?;
        Ok(verdict(
            crossings,
            &format!("crossings checked over {} diagrams", ds.len()),
            fail,
        ))
    })
}

pub fn base_independence(engine: &Engine, cfg: &SuiteConfig) -> CriterionResult {
    timed(3, "base and warping independence", || {
        let mut ds = catalog_upto(cfg.base_max_c);
        ds.extend(randoms(BASE_SEED, cfg.base_random, cfg.base_max_c));
        let counts: Vec<Result<(usize, usize, Option<String>)>> = ds
            .par_iter()
            .map(|(name, d)| {
                let reference = engine.alpha_table(d)?;
                let plain = enumerate_bases(d);
                for a in &plain {
                    if engine.alpha_table_with_base(d, a)? != reference {
                        return Ok((0, 0, Some(format!("{name}: base {a:?} disagrees"))));
                    }
                }
                let permuted = enumerate_bases_permuted(d);
                for a in &permuted {
                    if engine.alpha_table_with_base(d, a)? != reference {
                        return Ok((0, 0, Some(format!("{name}: permuted base {a:?} disagrees"))));
                    }
                }
                Ok((plain.len(), permuted.len(), None))
            })
            .collect();
        let (mut plain, mut permuted) = (0, 0);
        for c in counts {
            let (a, b, fail) = c?;
            if let Some(msg) = fail {
                return Ok((false, msg));
            }
            plain += a;
            permuted += b;
        }
        Ok((
            true,
            format!(
                "{} diagrams: {plain} bases in tuple order agree; {permuted} bases over all component orders agree",
                ds.len()
            ),
        ))
    })
}

pub fn reidemeister(engine: &Engine, cfg: &SuiteConfig) -> CriterionResult {
    timed(4, "Reidemeister behaviour", || {
        let seeds: Vec<u64> = (WALK_SEED..WALK_SEED + cfg.walks).collect();
        let moves: Vec<Result<([usize; 4], Option<String>)>> = seeds
            .par_iter()
            .map(|&seed| {
                let start = random_diagram(seed, cfg.walk_max_c.min(6));
                let (end, trace) = random_move_walk(&start, cfg.walk_steps, seed, cfg.walk_max_c);
                let l0 = l_of(engine, &start)?;
                if l_of(engine, &end)? != l0.shift_y(trace.net_r1())? {
                    return Ok((
                        [0; 4],
                        Some(format!(
                            "walk {seed}: L does not scale by y^{}",
                            trace.net_r1()
                        )),
                    ));
                }
                for o in all_orientations(start.r()) {
                    let (_, o_end) = trace.replay_oriented(&start, &o)?;
                    if f_of(engine, &end, &o_end)? != f_of(engine, &start, &o)? {
                        return Ok((
                            [0; 4],
                            Some(format!(
                                "walk {seed}: F changes for orientation {:?}",
                                o.to_signs()
                            )),
                        ));
                    }
                }
                let mut kinds = [0; 4];
                for s in &trace.steps {
                    kinds[match s {
                        Step::R1Positive { .. } | Step::R1Negative { .. } => 0,
                        Step::R1Remove { .. } => 1,
                        Step::R2Add(_) | Step::R2Remove { .. } => 2,
                        Step::R3 { .. } => 3,
                    }] += 1;
                }
                Ok((kinds, None))
            })
            .collect();
        let mut total = [0; 4];
        for m in moves {
            let (kinds, fail) = m?;
            if let Some(msg) = fail {
                return Ok((false, msg));
            }
            for (t, k) in total.iter_mut().zip(kinds) {
                *t += k;
            }
        }
        let [r1a, r1r, r2, r3] = total;
        Ok((
            true,
            format!(
                "{} walks; moves: {r1a} R1 added, {r1r} R1 removed, {r2} R2, {r3} R3",
                cfg.walks
            ),
        ))
    })
}

pub fn oracle_equivalence(cfg: &SuiteConfig) -> CriterionResult {
    timed(5, "oracle equivalence", || {
        let mut ds = catalog_upto(cfg.catalog_max_c);
        ds.extend(randoms(ORACLE_SEED, cfg.oracle_random, cfg.oracle_max_c));
        let (engine, oracle) = (Engine::new(), Oracle::new());
        let fail = first_failure(&ds, |(name, d)| {
            Ok((!uniqueness_check(&engine, &oracle, d)?)
                .then(|| format!("{name}: L differs from the oracle")))
        })?;
        Ok(verdict(
            ds.len(),
            "diagrams agree with the whole-polynomial oracle",
            fail,
        ))
    })
}

pub const PRODUCT_FACTORS: &[&str] = &["kink+", "kink-", "hopf", "trefoil"];

pub fn product_laws(engine: &Engine) -> CriterionResult {
    timed(6, "product laws", || {
        let ds: Vec<(String, Diagram)> = PRODUCT_FACTORS
            .iter()
            .map(|n| {
                (
                    n.to_string(),
                    lookup(n).expect("factor in catalog").diagram(),
                )
            })
            .collect();
        let pairs: Vec<(&(String, Diagram), &(String, Diagram))> = ds
            .iter()
            .flat_map(|a| ds.iter().map(move |b| (a, b)))
            .collect();
        let reports: Vec<Result<(usize, Option<String>)>> = pairs
            .par_iter()
            .map(|((na, a), (nb, b))| {
                let rep = check_product_laws(engine, a, b)?;
                let fail = if let Some((e, e2, rev)) = rep.sum_failure {
                    Some(format!(
                        "{na} # {nb} along edges {e},{e2} (reversed: {rev})"
                    ))
                } else if !rep.union_holds {
                    Some(format!("disjoint union of {na} and {nb}"))
                } else {
                    None
                };
                Ok((rep.sums_checked, fail))
            })
            .collect();
        let mut sums = 0;
        for r in reports {
            let (n, fail) = r?;
            if let Some(msg) = fail {
                return Ok((false, msg));
            }
            sums += n;
        }
        Ok((
            true,
            format!(
                "{} pairs, {sums} connected sums and every disjoint union",
                pairs.len()
            ),
        ))
    })
}

pub fn vanishing_bounds(engine: &Engine, cfg: &SuiteConfig) -> CriterionResult {
    timed(7, "vanishing bounds", || {
        let mut ds = catalog_upto(usize::MAX);
        ds.extend(randoms(SKEIN_SEED, cfg.skein_random, cfg.skein_max_c));
        ds.extend(randoms(ORACLE_SEED, cfg.oracle_random, cfg.oracle_max_c));
        let bounds: Vec<Result<(String, usize, usize, Option<(i64, i64)>)>> = ds
            .par_iter()
            .map(|(name, d)| {
                Ok((
                    name.clone(),
                    d.c(),
                    d.r(),
                    engine.alpha_table(d)?.support_bounds(),
                ))
            })
            .collect();
        let (mut low_bad, mut high_bad) = (None, None);
        for b in bounds {
            let (name, c, r, range) = b?;
            let Some((lo, hi)) = range else { continue };
            if lo < 0 && low_bad.is_none() {
                low_bad = Some(format!("{name}: lowest index {lo}"));
            }
            if hi > (c + r) as i64 - 1 && high_bad.is_none() {
                high_bad = Some(format!(
                    "{name}: highest index {hi} exceeds c+r-1 = {}",
                    c + r - 1
                ));
            }
        }
        Ok(match (low_bad, high_bad) {
            (None, None) => (true, format!("{} tables supported in [0, c+r-1]", ds.len())),
            (lo, hi) => (false, format!("lower bound: {lo:?}; upper bound: {hi:?}")),
        })
    })
}

pub fn mirror_property(engine: &Engine) -> CriterionResult {
    timed(8, "mirror property", || {
        let ds = catalog_upto(usize::MAX);
        let fail = first_failure(&ds, |(name, d)| {
            let m = d.mirror();
            for o in all_orientations(d.r()) {
                if f_of(engine, &m, &o)? != f_of(engine, d, &o)?.subst_y_inverse() {
                    return Ok(Some(format!("{name}: F(mirror) is not F with y inverted")));
                }
            }
            Ok(None)
        })?;
        if fail.is_some() {
            return Ok(verdict(0, "", fail));
        }
        let fig8 = lookup("figure-eight").unwrap().diagram();
        let f = f_of(engine, &fig8, &Orientation::canonical(1))?;
        if f.subst_y_inverse() != f {
            return Ok((
                false,
                "figure-eight F is not symmetric under y -> 1/y".into(),
            ));
        }
        Ok((
            true,
            format!("{} catalog diagrams; figure-eight F symmetric", ds.len()),
        ))
    })
}

/// Criteria 2 to 8 in order.
pub fn run_suite(engine: &Engine, cfg: &SuiteConfig) -> Vec<CriterionResult> {
    vec![
        skein_identities(engine, cfg),
        base_independence(engine, cfg),
        reidemeister(engine, cfg),
        oracle_equivalence(cfg),
        product_laws(engine),
        vanishing_bounds(engine, cfg),
        mirror_property(engine),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suite_passes() {
        let e = Engine::new().memoized();
        for r in run_suite(&e, &SuiteConfig::quick()) {
            assert!(r.passed, "{}: {}", r.title, r.detail);
        }
    }
}
