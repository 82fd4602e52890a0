//! Base-point sequences, the first-encounter rule and warping degree.
//!
//! A base point sits on an edge just before a port and points into it; the
//! traversal of its component starts by entering the crossing through that
//! port. Components are traversed completely, one after another, in tuple
//! order.

use serde::{Deserialize, Serialize};

use crate::diagram::{
    crossing_of, opposite, strand_of, Components, Diagram, Orientation, Port, Strand,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Start {
    /// Enter the crossing through this port first.
    Port(Port),
    /// A crossing-free circle has a single base choice.
    Loop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasePoint {
    pub component: usize,
    pub start: Start,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BaseSequence {
    pub entries: Vec<BasePoint>,
}

impl BaseSequence {
    pub fn new(d: &Diagram, entries: Vec<BasePoint>) -> Result<Self> {
        let a = BaseSequence { entries };
        a.validate(d, &d.components())?;
        Ok(a)
    }

    pub fn validate(&self, d: &Diagram, comps: &Components) -> Result<()> {
        let r = comps.count();
        if self.entries.len() != r {
            return Err(Error::InvalidBase(format!(
                "{} base points for {r} components",
                self.entries.len()
            )));
        }
        let mut seen = vec![false; r];
        for bp in &self.entries {
            if bp.component >= r || seen[bp.component] {
                return Err(Error::InvalidBase(format!(
                    "component {} missing or repeated",
                    bp.component
                )));
            }
            seen[bp.component] = true;
            let closed = bp.component < comps.closed();
            match bp.start {
                Start::Port(p) if closed => {
                    if p as usize >= d.num_ports() || comps.component_of[p as usize] != bp.component
                    {
                        return Err(Error::InvalidBase(format!(
                            "port {p} is not on component {}",
                            bp.component
                        )));
                    }
                }
                Start::Loop if !closed => {}
                _ => {
                    return Err(Error::InvalidBase(format!(
                        "start kind does not match component {}",
                        bp.component
                    )))
                }
            }
        }
        Ok(())
    }

    /// Traversal directions induced by the base points.
    pub fn orientation(&self, comps: &Components) -> Orientation {
        let mut o = vec![false; comps.count()];
        for bp in &self.entries {
            if let Start::Port(p) = bp.start {
                o[bp.component] = !comps.is_entry[p as usize];
            }
        }
        Orientation(o)
    }

    pub fn component_order(&self) -> Vec<usize> {
        self.entries.iter().map(|b| b.component).collect()
    }
}

/// Lexicographic complexity `(crossings, warping degree)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Complexity {
    pub c: usize,
    pub d: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FirstEncounter {
    /// Strand met first at each crossing.
    pub first: Vec<Strand>,
    /// Crossings in order of first encounter.
    pub order: Vec<usize>,
}

impl FirstEncounter {
    /// Warping crossings in order of first encounter.
    pub fn warping(&self, d: &Diagram) -> Vec<usize> {
        self.order
            .iter()
            .copied()
            .filter(|&p| self.first[p] != d.over(p))
            .collect()
    }
}

pub fn first_encounter_order(d: &Diagram, a: &BaseSequence) -> FirstEncounter {
    let mut first = vec![None; d.c()];
    let mut order = Vec::with_capacity(d.c());
    for bp in &a.entries {
        let Start::Port(start) = bp.start else {
            continue;
        };
        let mut e = start;
        loop {
            let c = crossing_of(e);
            if first[c].is_none() {
                first[c] = Some(strand_of(e));
                order.push(c);
            }
            e = d.mate(opposite(e));
            if e == start {
                break;
            }
        }
    }
    FirstEncounter {
        first: first
            .into_iter()
            .map(|s| s.expect("every crossing is visited"))
            .collect(),
        order,
    }
}

pub fn warping_set(d: &Diagram, a: &BaseSequence) -> Vec<usize> {
    first_encounter_order(d, a).warping(d)
}

pub fn warping_degree(d: &Diagram, a: &BaseSequence) -> usize {
    warping_set(d, a).len()
}

pub fn is_monotone(d: &Diagram, a: &BaseSequence) -> bool {
    warping_degree(d, a) == 0
}

pub fn complexity(d: &Diagram, a: &BaseSequence) -> Complexity {
    Complexity {
        c: d.c(),
        d: warping_degree(d, a),
    }
}

/// Per component in id order: enter the component's lowest port.
pub fn canonical_base(d: &Diagram) -> BaseSequence {
    canonical_base_with(&d.components())
}

pub(crate) fn canonical_base_with(comps: &Components) -> BaseSequence {
    let mut entries: Vec<BasePoint> = comps
        .traversals
        .iter()
        .enumerate()
        .map(|(i, t)| BasePoint {
            component: i,
            start: Start::Port(t[0]),
        })
        .collect();
    entries.extend((comps.closed()..comps.count()).map(|i| BasePoint {
        component: i,
        start: Start::Loop,
    }));
    BaseSequence { entries }
}

/// All start choices per component (every port of the component, i.e. every
/// edge in both directions), in canonical component order.
pub fn enumerate_bases(d: &Diagram) -> Vec<BaseSequence> {
    enumerate_with_orders(d, &[(0..d.r()).collect()])
}

/// As [`enumerate_bases`], additionally over every permutation of the tuple
/// order.
pub fn enumerate_bases_permuted(d: &Diagram) -> Vec<BaseSequence> {
    let r = d.r();
    let mut orders = Vec::new();
    permutations(&mut (0..r).collect(), 0, &mut orders);
    enumerate_with_orders(d, &orders)
}

fn permutations(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, out);
        v.swap(k, i);
    }
}

fn enumerate_with_orders(d: &Diagram, orders: &[Vec<usize>]) -> Vec<BaseSequence> {
    let comps = d.components();
    let choices: Vec<Vec<Start>> = (0..comps.count())
        .map(|i| {
            if i < comps.closed() {
                let mut ports: Vec<Port> = comps.traversals[i]
                    .iter()
                    .flat_map(|&e| [e, opposite(e)])
                    .collect();
                ports.sort_unstable();
                ports.into_iter().map(Start::Port).collect()
            } else {
                vec![Start::Loop]
            }
        })
        .collect();
    let mut out = Vec::new();
    for order in orders {
        let mut idx = vec![0usize; order.len()];
        'odometer: loop {
            out.push(BaseSequence {
                entries: order
                    .iter()
                    .zip(&idx)
                    .map(|(&comp, &k)| BasePoint {
                        component: comp,
                        start: choices[comp][k],
                    })
                    .collect(),
            });
            for pos in (0..order.len()).rev() {
                idx[pos] += 1;
                if idx[pos] < choices[order[pos]].len() {
                    continue 'odometer;
                }
                idx[pos] = 0;
            }
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::port;

    fn kink() -> Diagram {
        Diagram::parse_pd("X(1,2,2,1)").unwrap()
    }

    fn hopf() -> Diagram {
        Diagram::parse_pd("X(1,4,2,3) X(3,2,4,1)").unwrap()
    }

    fn trefoil() -> Diagram {
        Diagram::parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap()
    }

    fn based(d: &Diagram, p: Port) -> BaseSequence {
        let comps = d.components();
        BaseSequence::new(
            d,
            vec![BasePoint {
                component: comps.component_of[p as usize],
                start: Start::Port(p),
            }],
        )
        .unwrap()
    }

    #[test]
    fn kink_first_encounter() {
        let k = kink();
        // PD parsing puts the over-strand on V (ports 1, 3)
        let over_first = based(&k, port(0, 1));
        assert_eq!(first_encounter_order(&k, &over_first).first[0], Strand::V);
        assert!(is_monotone(&k, &over_first));
        let under_first = based(&k, port(0, 0));
        assert_eq!(first_encounter_order(&k, &under_first).first[0], Strand::U);
        assert_eq!(warping_degree(&k, &under_first), 1);
    }

    #[test]
    fn hopf_first_component_met_first() {
        let h = hopf();
        let comps = h.components();
        for a in enumerate_bases_permuted(&h) {
            let fe = first_encounter_order(&h, &a);
            let first_comp = a.entries[0].component;
            for p in 0..2 {
                let s = fe.first[p];
                let pt = crate::diagram::port(p, if s == Strand::U { 0 } else { 1 });
                assert_eq!(comps.component_of[pt as usize], first_comp);
            }
        }
    }

    #[test]
    fn trefoil_never_monotone() {
        let t = trefoil();
        let bases = enumerate_bases(&t);
        assert_eq!(bases.len(), 6 * 2);
        let mut degrees: Vec<usize> = bases.iter().map(|a| warping_degree(&t, a)).collect();
        degrees.sort();
        degrees.dedup();
        assert_eq!(degrees, vec![1, 2]);
    }

    #[test]
    fn base_enumeration_counts() {
        assert_eq!(enumerate_bases(&Diagram::unknot()).len(), 1);
        assert_eq!(enumerate_bases(&kink()).len(), 4);
        assert_eq!(enumerate_bases(&hopf()).len(), 16);
        assert_eq!(enumerate_bases_permuted(&hopf()).len(), 32);
        let o = Diagram::unknot();
        assert_eq!(canonical_base(&o).entries[0].start, Start::Loop);
        assert!(is_monotone(&o, &canonical_base(&o)));
    }

    #[test]
    fn invalid_bases() {
        let h = hopf();
        let comps = h.components();
        let p0 = comps.traversals[0][0];
        let p1 = comps.traversals[1][0];
        let bad_comp = vec![
            BasePoint {
                component: 0,
                start: Start::Port(p1),
            },
            BasePoint {
                component: 1,
                start: Start::Port(p0),
            },
        ];
        assert!(BaseSequence::new(&h, bad_comp).is_err());
        let repeated = vec![
            BasePoint {
                component: 0,
                start: Start::Port(p0),
            },
            BasePoint {
                component: 0,
                start: Start::Port(p0),
            },
        ];
        assert!(BaseSequence::new(&h, repeated).is_err());
        assert!(BaseSequence::new(&h, vec![]).is_err());
    }

    #[test]
    fn warping_properties() {
        let d = trefoil().connected_sum(&hopf(), 0, 1).unwrap();
        for a in enumerate_bases(&d) {
            let fe = first_encounter_order(&d, &a);
            let w = fe.warping(&d);
            assert!(w.len() <= d.c());
            for p in 0..d.c() {
                let cc = d.crossing_change(p).unwrap();
                assert_eq!(first_encounter_order(&cc, &a), fe);
            }
            for &p in &w {
                let cc = d.crossing_change(p).unwrap();
                assert_eq!(warping_degree(&cc, &a), w.len() - 1);
            }
        }
    }

    #[test]
    fn orientation_from_base() {
        let t = trefoil();
        let comps = t.components();
        let canon = canonical_base(&t);
        assert_eq!(canon.orientation(&comps), Orientation(vec![false]));
        let rev = based(&t, opposite(comps.traversals[0][0]));
        assert_eq!(rev.orientation(&comps), Orientation(vec![true]));
    }
}
