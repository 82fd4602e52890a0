use std::path::Path;

use bskein_core::moves::{random_diagram, random_move_walk, MoveTrace};
use bskein_core::oracle::uniqueness_check;
use bskein_core::series::{check_l_skein, check_product_laws, f_of, l_of};
use bskein_core::warping::{canonical_base, enumerate_bases, warping_degree};
use bskein_core::{Diagram, Engine, Error, Oracle, Orientation, DEFAULT_BUDGET};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::catalog::{check_tag, lookup, CatalogEntry};
use crate::suite::all_orientations;

pub const BUDGET_ENV: &str = "BSKEIN_BUDGET";

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(String),
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Parse(m) => write!(f, "{m}"),
            CliError::Budget(m) => write!(f, "{m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Budget { .. } | Error::Overflow => CliError::Budget(e.to_string()),
            Error::InvalidOrientation { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Parse(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Budget from the environment, else the library default.
pub fn budget_from_env() -> CliResult<u64> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{BUDGET_ENV}={v:?} is not a node count"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

#[derive(Debug, Clone)]
pub struct Input {
    pub label: String,
    pub diagram: Diagram,
}

/// One link per non-empty line; `#` starts a comment.
pub fn parse_pd_file(text: &str, source: &str) -> CliResult<Vec<Input>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let diagram = Diagram::parse_pd(body)
            .map_err(|e| CliError::Parse(format!("{source}:{}: {e}", i + 1)))?;
        out.push(Input {
            label: format!("{source}:{}", i + 1),
            diagram,
        });
    }
    if out.is_empty() {
        return Err(CliError::Parse(format!("{source}: no diagrams")));
    }
    Ok(out)
}

pub fn read_inputs(
    path: Option<&Path>,
    pd: Option<&str>,
    name: Option<&str>,
) -> CliResult<Vec<Input>> {
    match (path, pd, name) {
        (Some(p), None, None) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", p.display())))?;
            parse_pd_file(&text, &p.display().to_string())
        }
        (None, Some(s), None) => Ok(vec![Input {
            label: "--pd".into(),
            diagram: Diagram::parse_pd(s).map_err(|e| CliError::Parse(e.to_string()))?,
        }]),
        (None, None, Some(n)) => {
            let e = lookup(n)
                .ok_or_else(|| CliError::Usage(format!("no catalog entry named {n:?}")))?;
            Ok(vec![Input {
                label: e.name.clone(),
                diagram: e.diagram(),
            }])
        }
        (None, None, None) => Err(CliError::Usage("give a PD file, --pd or --name".into())),
        _ => Err(CliError::Usage(
            "give exactly one of a PD file, --pd or --name".into(),
        )),
    }
}

/// Runs `f` over the inputs in parallel and returns results in input order.
pub fn map_inputs<T: Send>(
    inputs: &[Input],
    f: impl Fn(&Input) -> CliResult<T> + Sync + Send,
) -> CliResult<Vec<T>> {
    inputs
        .par_iter()
        .map(f)
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

pub fn coeffs(engine: &Engine, d: &Diagram) -> CliResult<Value> {
    let table = engine.alpha_table(d)?;
    let mut alpha = Map::new();
    for (n, p) in table.iter() {
        alpha.insert(n.to_string(), Value::String(p.to_string()));
    }
    let base = canonical_base(d);
    let o = base.orientation(&d.components());
    Ok(json!({
        "alpha": alpha,
        "c": d.c(),
        "r": d.r(),
        "writhe": d.writhe(&o)?,
        "warping_degree": warping_degree(d, &base),
    }))
}

pub fn parse_orientation(flag: Option<&str>, d: &Diagram) -> CliResult<Orientation> {
    match flag {
        None => Ok(Orientation::canonical(d.r())),
        Some(s) => {
            let o = Orientation::parse(s).map_err(|e| CliError::Usage(e.to_string()))?;
            d.check_orientation(&o)?;
            Ok(o)
        }
    }
}

pub fn kauffman(
    engine: &Engine,
    oracle: &Oracle,
    d: &Diagram,
    o: &Orientation,
) -> CliResult<(Value, bool)> {
    let l = l_of(engine, d)?;
    let f = f_of(engine, d, o)?;
    let lo = oracle.oracle_l(d)?;
    let agrees = l == lo;
    Ok((
        json!({
            "L": l.to_string(),
            "F": f.to_string(),
            "orientation": o.to_signs().concat(),
            "L_oracle": lo.to_string(),
            "agrees_with_coeff_pipeline": agrees,
        }),
        agrees,
    ))
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        Check {
            name: name.into(),
            passed,
            detail,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub label: String,
    pub c: usize,
    pub r: usize,
    pub passed: bool,
    pub checks: Vec<Check>,
}

/// Catalog diagrams every input is summed with.
pub const VERIFY_PARTNERS: &[&str] = &["kink+", "hopf"];

/// Bases tried per diagram; larger sets are thinned evenly.
pub const BASE_SAMPLE: usize = 48;

pub fn verify(
    engine: &Engine,
    label: &str,
    d: &Diagram,
    entry: Option<&CatalogEntry>,
) -> CliResult<VerifyReport> {
    let mut checks = Vec::new();

    let mut bad = None;
    for p in 0..d.c() {
        let rep = engine.skein_check(d, p)?;
        if !rep.holds() || !check_l_skein(engine, d, p)? {
            bad = Some(p);
            break;
        }
    }
    checks.push(Check::new(
        "skein",
        bad.is_none(),
        bad.map(|p| format!("fails at crossing {p}"))
            .unwrap_or_default(),
    ));

    let reference = engine.alpha_table(d)?;
    let bases = enumerate_bases(d);
    let step = bases.len().div_ceil(BASE_SAMPLE).max(1);
    let mut tried = 0;
    let mut bad = None;
    for a in bases.iter().step_by(step) {
        tried += 1;
        if engine.alpha_table_with_base(d, a)? != reference {
            bad = Some(format!("{a:?}"));
            break;
        }
    }
    let detail = bad
        .clone()
        .unwrap_or_else(|| format!("{tried} of {} bases", bases.len()));
    checks.push(Check::new("base-independence", bad.is_none(), detail));

    let (ok, detail) = match reference.support_bounds() {
        None => (true, "empty table".to_string()),
        Some((lo, hi)) => {
            let top = (d.c() + d.r()) as i64 - 1;
            (
                lo >= 0 && hi <= top,
                format!("support [{lo}, {hi}] within [0, {top}]"),
            )
        }
    };
    checks.push(Check::new("support", ok, detail));

    let ok = uniqueness_check(engine, &Oracle::new().memoized(), d)?;
    checks.push(Check::new("oracle", ok, String::new()));

    for partner in VERIFY_PARTNERS {
        let pd = lookup(partner).expect("partner in catalog").diagram();
        let rep = check_product_laws(engine, d, &pd)?;
        let detail = match rep.sum_failure {
            Some((e, e2, rev)) => format!("sum along {e},{e2} (reversed: {rev}) fails"),
            None => format!("{} sums", rep.sums_checked),
        };
        checks.push(Check::new(
            &format!("product:{partner}"),
            rep.holds(),
            detail,
        ));
    }

    let m = d.mirror();
    let mut ok = true;
    for o in all_orientations(d.r()) {
        ok &= f_of(engine, &m, &o)? == f_of(engine, d, &o)?.subst_y_inverse();
    }
    checks.push(Check::new("mirror", ok, String::new()));

    if let Some(entry) = entry {
        for tag in &entry.tags {
            let (ok, detail) = match check_tag(engine, d, tag) {
                Ok(ok) => (ok, String::new()),
                Err(msg) => (false, msg),
            };
            checks.push(Check::new(&format!("tag:{tag}"), ok, detail));
        }
    }

    Ok(VerifyReport {
        label: label.into(),
        c: d.c(),
        r: d.r(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct WalkReport {
    pub seed: u64,
    pub start_pd: String,
    pub end_c: usize,
    pub moves: usize,
    pub net_r1: i32,
    pub l_scales: bool,
    pub f_identical: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<MoveTrace>,
}

/// One walk per seed in `seed..seed + walks`, each from a random start
/// diagram; traces are attached only to failing walks.
pub fn fuzz(
    engine: &Engine,
    steps: usize,
    seed: u64,
    max_c: usize,
    walks: u64,
) -> CliResult<Vec<WalkReport>> {
    let seeds: Vec<u64> = (seed..seed.saturating_add(walks)).collect();
    seeds
        .par_iter()
        .map(|&s| {
            let start = random_diagram(s, max_c.min(6));
            let (end, trace) = random_move_walk(&start, steps, s, max_c);
            let net = trace.net_r1();
            let l_scales = l_of(engine, &end)? == l_of(engine, &start)?.shift_y(net)?;
            let mut f_identical = true;
            for o in all_orientations(start.r()) {
                let (_, o_end) = trace.replay_oriented(&start, &o)?;
                f_identical &= f_of(engine, &end, &o_end)? == f_of(engine, &start, &o)?;
            }
            let ok = l_scales && f_identical;
            Ok(WalkReport {
                seed: s,
                start_pd: start.to_pd(),
                end_c: end.c(),
                moves: trace.len(),
                net_r1: net,
                l_scales,
                f_identical,
                trace: (!ok).then_some(trace),
            })
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}
