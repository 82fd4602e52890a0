//! Built-in diagrams. Every tag is an executable claim, see [`check_tag`].

use bskein_core::series::f_of;
use bskein_core::{Diagram, Engine, Orientation, Result};
use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub pd: String,
    pub tags: Vec<String>,
}

impl CatalogEntry {
    pub fn diagram(&self) -> Diagram {
        Diagram::parse_pd(&self.pd).expect("catalog PD text parses")
    }
}

const FIXTURES: &[(&str, &str, &[&str])] = &[
    (
        "unknot",
        "O",
        &["c=0", "r=1", "det=1", "amphichiral", "F=1"],
    ),
    ("unlink2", "O O", &["c=0", "r=2", "det=0", "amphichiral"]),
    ("kink+", "X(1,1,2,2)", &["c=1", "r=1", "writhe=1", "F=1"]),
    ("kink-", "X(1,2,2,1)", &["c=1", "r=1", "writhe=-1", "F=1"]),
    ("hopf", "X(1,4,2,3) X(3,2,4,1)", &["c=2", "r=2", "det=2"]),
    (
        "trefoil",
        "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)",
        &["c=3", "r=1", "writhe=-3", "det=3", "chiral"],
    ),
    (
        "trefoil-mirror",
        "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)",
        &["c=3", "r=1", "writhe=3", "det=3", "chiral"],
    ),
    (
        "figure-eight",
        "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)",
        &["c=4", "r=1", "writhe=0", "det=5", "amphichiral"],
    ),
    (
        "5_1",
        "X(1,6,2,7) X(3,8,4,9) X(5,10,6,1) X(7,2,8,3) X(9,4,10,5)",
        &["c=5", "r=1", "det=5", "chiral"],
    ),
    (
        "5_2",
        "X(1,4,2,5) X(3,8,4,9) X(5,10,6,1) X(9,6,10,7) X(7,2,8,3)",
        &["c=5", "r=1", "det=7", "chiral"],
    ),
    (
        "6_1",
        "X(1,4,2,5) X(7,10,8,11) X(3,9,4,8) X(9,3,10,2) X(5,12,6,1) X(11,6,12,7)",
        &["c=6", "r=1", "det=9", "chiral"],
    ),
    (
        "7_1",
        "X(1,8,2,9) X(3,10,4,11) X(5,12,6,13) X(7,14,8,1) X(9,2,10,3) X(11,4,12,5) X(13,6,14,7)",
        &["c=7", "r=1", "det=7", "chiral"],
    ),
    (
        "whitehead",
        "X(6,1,7,2) X(10,7,5,8) X(4,5,1,6) X(2,10,3,9) X(8,4,9,3)",
        &["c=5", "r=2", "det=8"],
    ),
];

/// Connected sums, taken along each summand's first edge.
const SUMS: &[(&str, &str, &[&str])] = &[
    ("trefoil", "trefoil", &["c=6", "r=1", "det=9", "chiral"]),
    (
        "trefoil",
        "trefoil-mirror",
        &["c=6", "r=1", "det=9", "amphichiral"],
    ),
    (
        "trefoil",
        "figure-eight",
        &["c=7", "r=1", "det=15", "chiral"],
    ),
    (
        "figure-eight",
        "figure-eight",
        &["c=8", "r=1", "det=25", "amphichiral"],
    ),
    ("hopf", "trefoil", &["c=5", "r=2", "det=6"]),
    ("kink+", "kink-", &["c=2", "r=1", "writhe=0", "F=1"]),
];

fn owned(tags: &[&str]) -> Vec<String> {
    tags.iter().map(|s| s.to_string()).collect()
}

pub fn catalog() -> Vec<CatalogEntry> {
    let mut out: Vec<CatalogEntry> = FIXTURES
        .iter()
        .map(|&(name, pd, tags)| CatalogEntry {
            name: name.into(),
            pd: pd.into(),
            tags: owned(tags),
        })
        .collect();
    for &(a, b, tags) in SUMS {
        let da = lookup_in(&out, a).unwrap().diagram();
        let db = lookup_in(&out, b).unwrap().diagram();
        let sum = da.connected_sum(&db, 0, 0).expect("first edges exist");
        out.push(CatalogEntry {
            name: format!("{a}#{b}"),
            pd: sum.to_pd(),
            tags: owned(tags),
        });
    }
    out
}

fn lookup_in<'a>(entries: &'a [CatalogEntry], name: &str) -> Option<&'a CatalogEntry> {
    entries.iter().find(|e| e.name == name)
}

pub fn lookup(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == name)
}

/// `|V(-1)|`, read off `F` at `y = -A^3`, `z = A + A^-1` with `A^4 = -1`.
pub fn determinant(engine: &Engine, d: &Diagram) -> Result<u64> {
    let f = f_of(engine, d, &Orientation::canonical(d.r()))?;
    let a = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
    let y = -a.powi(3);
    let z = a + a.inv();
    let v: Complex64 = f
        .terms()
        .iter()
        .map(|(m, c)| y.powi(m.y) * z.powi(m.z) * *c as f64)
        .sum();
    Ok(v.norm().round() as u64)
}

/// Runs the check behind one tag. Unknown tags are errors, so every tag in
/// the catalog is guaranteed to mean something.
pub fn check_tag(engine: &Engine, d: &Diagram, tag: &str) -> std::result::Result<bool, String> {
    let canon = Orientation::canonical(d.r());
    let f = || f_of(engine, d, &canon).map_err(|e| e.to_string());
    let num = |s: &str| {
        s.parse::<i64>()
            .map_err(|_| format!("bad number in tag {tag:?}"))
    };
    Ok(match tag.split_once('=') {
        Some(("c", n)) => d.c() as i64 == num(n)?,
        Some(("r", n)) => d.r() as i64 == num(n)?,
        Some(("writhe", n)) => d.writhe(&canon).map_err(|e| e.to_string())? as i64 == num(n)?,
        Some(("det", n)) => determinant(engine, d).map_err(|e| e.to_string())? as i64 == num(n)?,
        Some(("F", "1")) => f()?.is_one(),
        None if tag == "amphichiral" => {
            let f = f()?;
            f.subst_y_inverse() == f
        }
        None if tag == "chiral" => {
            let f = f()?;
            f.subst_y_inverse() != f
        }
        _ => return Err(format!("unknown tag {tag:?}")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_and_pd_parses() {
        let all = catalog();
        for (i, e) in all.iter().enumerate() {
            assert!(all[..i].iter().all(|o| o.name != e.name), "{}", e.name);
            Diagram::parse_pd(&e.pd).unwrap();
        }
        assert_eq!(lookup("hopf").unwrap().pd, "X(1,4,2,3) X(3,2,4,1)");
        assert!(lookup("nope").is_none());
    }

    #[test]
    fn every_tag_holds() {
        let e = Engine::new().memoized();
        for entry in catalog() {
            let d = entry.diagram();
            for t in &entry.tags {
                assert_eq!(check_tag(&e, &d, t), Ok(true), "{} {t}", entry.name);
            }
        }
    }

    #[test]
    fn unknown_tags_are_rejected() {
        let e = Engine::new();
        assert!(check_tag(&e, &Diagram::unknot(), "prime").is_err());
        assert!(check_tag(&e, &Diagram::unknot(), "c=x").is_err());
    }
}
