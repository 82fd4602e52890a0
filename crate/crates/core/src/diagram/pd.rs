//! Planar-diagram text and the JSON dump.
//!
//! `X(a,b,c,d)` lists edge labels counterclockwise around a crossing, with
//! the under-strand through the first and third entries. Any orientation the
//! labels may suggest is ignored.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{port, slot_of, Diagram, Edge, Orientation, Port, Strand};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub crossings: Vec<[u32; 4]>,
    pub free_loops: u32,
}

fn tokens(text: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for ch in text.chars() {
        match ch {
            '(' | '[' => {
                depth += 1;
                cur.push(ch);
            }
            ')' | ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(format!("unbalanced bracket in {text:?}")));
                }
                cur.push(ch);
            }
            c if c.is_whitespace() || (c == ',' && depth == 0) => {
                if depth == 0 && !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced bracket in {text:?}")));
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

fn parse_quad(tok: &str) -> Result<[u32; 4]> {
    let bad = || Error::Parse(format!("malformed token {tok:?}"));
    let inner = tok
        .strip_prefix("X(")
        .and_then(|t| t.strip_suffix(')'))
        .or_else(|| tok.strip_prefix("X[").and_then(|t| t.strip_suffix(']')))
        .ok_or_else(bad)?;
    let labels = inner
        .split(',')
        .map(|s| s.parse::<u32>().map_err(|_| bad()))
        .collect::<Result<Vec<_>>>()?;
    if labels.len() != 4 {
        return Err(bad());
    }
    Ok([labels[0], labels[1], labels[2], labels[3]])
}

pub(super) fn parse_pd(text: &str) -> Result<Diagram> {
    let toks = tokens(text)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty diagram".into()));
    }
    let mut quads = Vec::new();
    let mut free_loops = 0;
    for t in &toks {
        if t == "O" {
            free_loops += 1;
        } else {
            quads.push(parse_quad(t)?);
        }
    }
    from_quads(&quads, free_loops)
}

fn from_quads(quads: &[[u32; 4]], free_loops: u32) -> Result<Diagram> {
    let mut occurrences: BTreeMap<u32, Vec<Port>> = BTreeMap::new();
    for (c, q) in quads.iter().enumerate() {
        for (s, &label) in q.iter().enumerate() {
            occurrences
                .entry(label)
                .or_default()
                .push(port(c, s as u32));
        }
    }
    let mut mate = vec![Port::MAX; quads.len() * 4];
    for (label, ports) in &occurrences {
        if ports.len() != 2 {
            return Err(Error::Parse(format!(
                "edge label {label} occurs {} times, expected 2",
                ports.len()
            )));
        }
        mate[ports[0] as usize] = ports[1];
        mate[ports[1] as usize] = ports[0];
    }
    let d = Diagram::from_parts(vec![Strand::V; quads.len()], mate, free_loops)?;
    if !d.euler_ok() {
        return Err(Error::Parse(
            "crossing data is not consistent with a planar diagram".into(),
        ));
    }
    Ok(d)
}

/// Edge labels (1-based) for every port.
fn port_labels(d: &Diagram) -> Vec<u32> {
    let mut labels = vec![0; d.num_ports()];
    for (i, e) in d.edges().into_iter().enumerate() {
        if let Edge::Arc(a, b) = e {
            labels[a as usize] = i as u32 + 1;
            labels[b as usize] = i as u32 + 1;
        }
    }
    labels
}

fn quads(d: &Diagram) -> Vec<[u32; 4]> {
    let labels = port_labels(d);
    let comps = d.components();
    let o = Orientation::canonical(comps.count());
    (0..d.c())
        .map(|c| {
            let start = slot_of(comps.entry_port(c, d.over(c).other(), &o));
            let mut q = [0; 4];
            for (i, slot) in q.iter_mut().enumerate() {
                *slot = labels[port(c, start + i as u32) as usize];
            }
            q
        })
        .collect()
}

pub(super) fn to_pd(d: &Diagram) -> String {
    let mut toks: Vec<String> = quads(d)
        .into_iter()
        .map(|q| format!("X({},{},{},{})", q[0], q[1], q[2], q[3]))
        .collect();
    toks.extend((0..d.free_loops()).map(|_| "O".to_string()));
    toks.join(" ")
}

pub(super) fn to_json(d: &Diagram) -> DiagramJson {
    DiagramJson {
        crossings: quads(d),
        free_loops: d.free_loops(),
    }
}

pub(super) fn from_json(j: &DiagramJson) -> Result<Diagram> {
    if j.crossings.iter().flatten().any(|&l| l == 0) {
        return Err(Error::Parse("edge labels must be positive".into()));
    }
    if j.crossings.is_empty() && j.free_loops == 0 {
        return Err(Error::Parse("empty diagram".into()));
    }
    from_quads(&j.crossings, j.free_loops)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let o = Diagram::parse_pd("O").unwrap();
        assert_eq!((o.c(), o.r()), (0, 1));
        let k = Diagram::parse_pd("X(1,2,2,1)").unwrap();
        assert_eq!((k.c(), k.r()), (1, 1));
        let h = Diagram::parse_pd("X(1,4,2,3) X(3,2,4,1)").unwrap();
        assert_eq!((h.c(), h.r()), (2, 2));
        let oo = Diagram::parse_pd("O O").unwrap();
        assert_eq!(oo.r(), 2);
        let bracketed = Diagram::parse_pd("X[1, 4, 2, 3] X[3, 2, 4, 1]").unwrap();
        assert_eq!(bracketed, h);
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "",
            "X(1,2,2)",
            "X(1,2,3,4)",
            "X(1,1,1,1)",
            "Y(1,2,2,1)",
            "X(1,2,2,1",
            "X(a,2,2,1)",
            // interleaved self-loops: not planar
            "X(1,2,1,2)",
        ] {
            assert!(
                matches!(Diagram::parse_pd(bad), Err(Error::Parse(_))),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn separators_and_zero_labels() {
        let a = Diagram::parse_pd("X[1,4,2,3], X[3,2,4,1]").unwrap();
        let b = Diagram::parse_pd("X(0,3,1,2) X(2,1,3,0)").unwrap();
        let hopf = Diagram::parse_pd("X(1,4,2,3) X(3,2,4,1)").unwrap();
        assert_eq!(a, hopf);
        assert_eq!(
            crate::canon::canonical_key(&b),
            crate::canon::canonical_key(&hopf)
        );
    }

    #[test]
    fn json_shape() {
        let k = Diagram::parse_pd("X(1,2,2,1) O").unwrap();
        let j = serde_json::to_value(k.to_json()).unwrap();
        assert_eq!(j["free_loops"], 1);
        assert_eq!(j["crossings"].as_array().unwrap().len(), 1);
        assert_eq!(Diagram::from_json(&k.to_json()).unwrap().r(), 2);
    }

    #[test]
    fn pd_text_roundtrip_up_to_relabeling() {
        let t = Diagram::parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3) O").unwrap();
        let again = Diagram::parse_pd(&t.to_pd()).unwrap();
        assert_eq!(
            crate::canon::canonical_key(&again),
            crate::canon::canonical_key(&t)
        );
        let m = t.mirror();
        let again = Diagram::parse_pd(&m.to_pd()).unwrap();
        assert_eq!(
            crate::canon::canonical_key(&again),
            crate::canon::canonical_key(&m)
        );
    }
}
