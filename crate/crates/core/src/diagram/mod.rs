//! Combinatorial unoriented link diagrams.
//!
//! A diagram is a set of 4-valent crossings plus a perfect matching on their
//! ports. Crossing `c` owns ports `4c..4c+4`, listed counterclockwise. Ports
//! `0, 2` carry strand [`Strand::U`], ports `1, 3` carry [`Strand::V`].
//! Crossing-free circles are kept as a bare counter.

mod faces;
mod pd;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use faces::Face;
pub use pd::DiagramJson;

pub type Port = u32;

#[inline]
pub fn port(crossing: usize, slot: u32) -> Port {
    (crossing as u32) * 4 + (slot % 4)
}

#[inline]
pub fn crossing_of(p: Port) -> usize {
    (p / 4) as usize
}

#[inline]
pub fn slot_of(p: Port) -> u32 {
    p % 4
}

/// The other end of the strand passage through the same crossing.
#[inline]
pub fn opposite(p: Port) -> Port {
    p ^ 2
}

#[inline]
pub fn ccw(p: Port) -> Port {
    (p & !3) | ((p + 1) & 3)
}

#[inline]
pub fn cw(p: Port) -> Port {
    (p & !3) | ((p + 3) & 3)
}

#[inline]
pub fn strand_of(p: Port) -> Strand {
    if p.is_multiple_of(2) {
        Strand::U
    } else {
        Strand::V
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Strand {
    /// ports 0 and 2
    U,
    /// ports 1 and 3
    V,
}

impl Strand {
    pub fn other(self) -> Strand {
        match self {
            Strand::U => Strand::V,
            Strand::V => Strand::U,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpliceKind {
    /// joins ports 0–1 and 2–3
    A,
    /// joins ports 0–3 and 1–2
    B,
}

impl SpliceKind {
    fn pairing(self) -> [u32; 4] {
        match self {
            SpliceKind::A => [1, 0, 3, 2],
            SpliceKind::B => [3, 2, 1, 0],
        }
    }
}

/// Port pairing that lets both strands pass straight through.
pub(crate) const PASS_THROUGH: [u32; 4] = [2, 3, 0, 1];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub ports: [Port; 4],
    pub over: Strand,
}

impl Crossing {
    pub fn under(&self) -> Strand {
        self.over.other()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Edge {
    /// An arc joining two ports, `a < b`.
    Arc(Port, Port),
    /// A crossing-free circle.
    Loop(u32),
}

/// One traversal direction per component; `true` reverses the canonical
/// traversal (the one that enters the component's lowest port first).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Orientation(pub Vec<bool>);

impl Orientation {
    pub fn canonical(r: usize) -> Self {
        Orientation(vec![false; r])
    }

    /// Parses a `+`/`-` string, one character per component.
    pub fn parse(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '+' => Ok(false),
                '-' => Ok(true),
                _ => Err(Error::Parse(format!(
                    "orientation {s:?}: expected only '+' or '-'"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Orientation)
    }

    pub fn to_signs(&self) -> Vec<String> {
        self.0
            .iter()
            .map(|&b| if b { "-" } else { "+" }.to_string())
            .collect()
    }
}

/// Strand-following data: closed components in canonical order.
#[derive(Debug, Clone)]
pub struct Components {
    /// Entry ports of each closed component, in traversal order.
    pub traversals: Vec<Vec<Port>>,
    pub component_of: Vec<usize>,
    /// Whether the canonical traversal enters the crossing through this port.
    pub is_entry: Vec<bool>,
    pub free_loops: u32,
}

impl Components {
    pub fn count(&self) -> usize {
        self.traversals.len() + self.free_loops as usize
    }

    pub fn closed(&self) -> usize {
        self.traversals.len()
    }

    /// Entry slot of `strand` at `crossing` under `o`.
    pub fn entry_port(&self, crossing: usize, strand: Strand, o: &Orientation) -> Port {
        let p = port(crossing, if strand == Strand::U { 0 } else { 1 });
        let rev = o.0[self.component_of[p as usize]];
        if self.is_entry[p as usize] != rev {
            p
        } else {
            opposite(p)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    over: Vec<Strand>,
    mate: Vec<Port>,
    free_loops: u32,
}

impl Diagram {
    /// Checks that `mate` is a fixed-point-free involution of the right size.
    pub fn from_parts(over: Vec<Strand>, mate: Vec<Port>, free_loops: u32) -> Result<Self> {
        if mate.len() != over.len() * 4 {
            return Err(Error::Parse(format!(
                "{} ports for {} crossings",
                mate.len(),
                over.len()
            )));
        }
        for (i, &m) in mate.iter().enumerate() {
            if m as usize >= mate.len() || m as usize == i || mate[m as usize] as usize != i {
                return Err(Error::Parse(format!("port {i} is not properly matched")));
            }
        }
        Ok(Diagram {
            over,
            mate,
            free_loops,
        })
    }

    pub fn unlink(r: u32) -> Self {
        Diagram {
            over: Vec::new(),
            mate: Vec::new(),
            free_loops: r,
        }
    }

    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    pub fn parse_pd(text: &str) -> Result<Self> {
        pd::parse_pd(text)
    }

    pub fn to_pd(&self) -> String {
        pd::to_pd(self)
    }

    pub fn to_json(&self) -> DiagramJson {
        pd::to_json(self)
    }

    pub fn from_json(j: &DiagramJson) -> Result<Self> {
        pd::from_json(j)
    }

    pub fn c(&self) -> usize {
        self.over.len()
    }

    pub fn r(&self) -> usize {
        self.components().count()
    }

    pub fn free_loops(&self) -> u32 {
        self.free_loops
    }

    pub fn mate(&self, p: Port) -> Port {
        self.mate[p as usize]
    }

    pub fn mates(&self) -> &[Port] {
        &self.mate
    }

    pub fn over(&self, crossing: usize) -> Strand {
        self.over[crossing]
    }

    pub fn overs(&self) -> &[Strand] {
        &self.over
    }

    pub fn is_over_port(&self, p: Port) -> bool {
        self.over[crossing_of(p)] == strand_of(p)
    }

    pub fn crossing(&self, id: usize) -> Result<Crossing> {
        self.check_crossing(id)?;
        Ok(Crossing {
            ports: [port(id, 0), port(id, 1), port(id, 2), port(id, 3)],
            over: self.over[id],
        })
    }

    fn check_crossing(&self, id: usize) -> Result<()> {
        if id < self.c() {
            Ok(())
        } else {
            Err(Error::UnknownCrossing(id))
        }
    }

    pub fn num_ports(&self) -> usize {
        self.mate.len()
    }

    pub fn components(&self) -> Components {
        let n = self.mate.len();
        let mut component_of = vec![usize::MAX; n];
        let mut is_entry = vec![false; n];
        let mut traversals = Vec::new();
        for start in 0..n as Port {
            if component_of[start as usize] != usize::MAX {
                continue;
            }
            let id = traversals.len();
            let mut trav = Vec::new();
            let mut e = start;
            loop {
                component_of[e as usize] = id;
                component_of[opposite(e) as usize] = id;
                is_entry[e as usize] = true;
                trav.push(e);
                e = self.mate(opposite(e));
                if e == start {
                    break;
                }
            }
            traversals.push(trav);
        }
        Components {
            traversals,
            component_of,
            is_entry,
            free_loops: self.free_loops,
        }
    }

    /// Edges: arcs sorted by lower port, then free loops.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out: Vec<Edge> = (0..self.mate.len() as Port)
            .filter(|&p| p < self.mate(p))
            .map(|p| Edge::Arc(p, self.mate(p)))
            .collect();
        out.extend((0..self.free_loops).map(Edge::Loop));
        out
    }

    pub fn edge(&self, id: usize) -> Result<Edge> {
        self.edges()
            .get(id)
            .copied()
            .ok_or_else(|| Error::InvalidEdge(format!("edge {id} out of range")))
    }

    /// 1 if the two strands at `p` lie on different components.
    pub fn delta_p(&self, p: usize) -> Result<u8> {
        self.check_crossing(p)?;
        let comps = self.components();
        Ok(u8::from(
            comps.component_of[port(p, 0) as usize] != comps.component_of[port(p, 1) as usize],
        ))
    }

    pub fn splice(&self, p: usize, kind: SpliceKind) -> Result<Diagram> {
        self.check_crossing(p)?;
        Ok(self.resolve(&[(p, kind.pairing())]))
    }

    /// `r(splice(p, kind)) - r(self)`
    pub fn delta_shift(&self, p: usize, kind: SpliceKind) -> Result<i64> {
        let after = self.splice(p, kind)?;
        Ok(after.r() as i64 - self.r() as i64)
    }

    pub fn crossing_change(&self, p: usize) -> Result<Diagram> {
        self.check_crossing(p)?;
        let mut d = self.clone();
        d.over[p] = d.over[p].other();
        Ok(d)
    }

    pub fn mirror(&self) -> Diagram {
        let mut d = self.clone();
        for s in d.over.iter_mut() {
            *s = s.other();
        }
        d
    }

    pub fn check_orientation(&self, o: &Orientation) -> Result<Components> {
        let comps = self.components();
        if o.0.len() != comps.count() {
            return Err(Error::InvalidOrientation {
                expected: comps.count(),
                got: o.0.len(),
            });
        }
        Ok(comps)
    }

    /// Crossing sign: positive when the over-strand, turned a quarter turn
    /// counterclockwise, points along the under-strand.
    pub fn sign_of(&self, p: usize, o: &Orientation) -> Result<i32> {
        self.check_crossing(p)?;
        let comps = self.check_orientation(o)?;
        Ok(self.sign_with(&comps, p, o))
    }

    pub(crate) fn sign_with(&self, comps: &Components, p: usize, o: &Orientation) -> i32 {
        let over = self.over[p];
        let over_in = slot_of(comps.entry_port(p, over, o));
        let under_in = slot_of(comps.entry_port(p, over.other(), o));
        if over_in == (under_in + 3) % 4 {
            1
        } else {
            -1
        }
    }

    pub fn writhe(&self, o: &Orientation) -> Result<i32> {
        let comps = self.check_orientation(o)?;
        Ok(self.writhe_with(&comps, o))
    }

    pub(crate) fn writhe_with(&self, comps: &Components, o: &Orientation) -> i32 {
        (0..self.c()).map(|p| self.sign_with(comps, p, o)).sum()
    }

    pub fn disjoint_union(&self, other: &Diagram) -> Diagram {
        let shift = self.mate.len() as Port;
        let mut mate = self.mate.clone();
        mate.extend(other.mate.iter().map(|&m| m + shift));
        let mut over = self.over.clone();
        over.extend_from_slice(&other.over);
        Diagram {
            over,
            mate,
            free_loops: self.free_loops + other.free_loops,
        }
    }

    /// Connected sum along edge `e` of `self` and edge `e2` of `other`.
    pub fn connected_sum(&self, other: &Diagram, e: usize, e2: usize) -> Result<Diagram> {
        let d1 = dart_of_edge(self.edge(e)?);
        let d2 = dart_of_edge(other.edge(e2)?);
        Ok(self.connected_sum_darts(other, d1, d2))
    }

    /// Both variants of the band for a pair of edges: `reverse` uses the
    /// other side of `e2`.
    pub fn connected_sum_with(
        &self,
        other: &Diagram,
        e: usize,
        e2: usize,
        reverse: bool,
    ) -> Result<Diagram> {
        let d1 = dart_of_edge(self.edge(e)?);
        let d2 = match (other.edge(e2)?, reverse) {
            (Edge::Arc(_, b), true) => Dart::Port(b),
            (edge, _) => dart_of_edge(edge),
        };
        Ok(self.connected_sum_darts(other, d1, d2))
    }

    fn connected_sum_darts(&self, other: &Diagram, d1: Dart, d2: Dart) -> Diagram {
        let shift = self.mate.len() as Port;
        let mut u = self.disjoint_union(other);
        match (d1, d2) {
            (Dart::Loop(_), Dart::Loop(_)) | (Dart::Loop(_), Dart::Port(_)) => {
                u.free_loops -= 1;
            }
            (Dart::Port(_), Dart::Loop(_)) => {
                u.free_loops -= 1;
            }
            (Dart::Port(h1), Dart::Port(h2)) => {
                let h2 = h2 + shift;
                let m1 = u.mate(h1);
                let m2 = u.mate(h2);
                u.link(h1, m2);
                u.link(h2, m1);
            }
        }
        u
    }

    pub(crate) fn link(&mut self, a: Port, b: Port) {
        self.mate[a as usize] = b;
        self.mate[b as usize] = a;
    }

    pub(crate) fn push_crossing(&mut self, over: Strand) -> usize {
        let id = self.over.len();
        self.over.push(over);
        self.mate.extend(std::iter::repeat_n(Port::MAX, 4));
        id
    }

    pub(crate) fn set_over(&mut self, crossing: usize, over: Strand) {
        self.over[crossing] = over;
    }

    pub(crate) fn add_free_loops(&mut self, k: i64) {
        self.free_loops = (self.free_loops as i64 + k) as u32;
    }

    /// Removes crossings, routing each port of a removed crossing to the
    /// port given by its pairing, and renumbers the survivors in order.
    /// Closed circles made only of removed ports become free loops.
    pub(crate) fn resolve(&self, locals: &[(usize, [u32; 4])]) -> Diagram {
        let n = self.mate.len();
        let mut partner: Vec<Option<Port>> = vec![None; n];
        for &(c, pairing) in locals {
            for s in 0..4 {
                partner[port(c, s) as usize] = Some(port(c, pairing[s as usize]));
            }
        }
        let mut visited = vec![false; n];
        let mut new_mate_old = vec![Port::MAX; n];
        for s in 0..n as Port {
            if partner[s as usize].is_some() {
                continue;
            }
            let mut t = self.mate(s);
            while let Some(u) = partner[t as usize] {
                visited[t as usize] = true;
                visited[u as usize] = true;
                t = self.mate(u);
            }
            new_mate_old[s as usize] = t;
        }
        let mut loops = 0;
        for x in 0..n as Port {
            if partner[x as usize].is_none() || visited[x as usize] {
                continue;
            }
            let mut t = x;
            loop {
                let u = partner[t as usize].unwrap();
                visited[t as usize] = true;
                visited[u as usize] = true;
                t = self.mate(u);
                if t == x {
                    break;
                }
            }
            loops += 1;
        }

        let removed: Vec<bool> = {
            let mut r = vec![false; self.c()];
            for &(c, _) in locals {
                r[c] = true;
            }
            r
        };
        let mut new_id = vec![usize::MAX; self.c()];
        let mut over = Vec::with_capacity(self.c());
        for c in 0..self.c() {
            if !removed[c] {
                new_id[c] = over.len();
                over.push(self.over[c]);
            }
        }
        let remap = |p: Port| port(new_id[crossing_of(p)], slot_of(p));
        let mut mate = vec![0; over.len() * 4];
        for s in 0..n as Port {
            if partner[s as usize].is_none() {
                mate[remap(s) as usize] = remap(new_mate_old[s as usize]);
            }
        }
        Diagram {
            over,
            mate,
            free_loops: self.free_loops + loops,
        }
    }

    /// Connected pieces of the crossing graph, each as sorted crossing ids.
    pub fn pieces(&self) -> Vec<Vec<usize>> {
        let c = self.c();
        let mut seen = vec![false; c];
        let mut out = Vec::new();
        for start in 0..c {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut piece = Vec::new();
            while let Some(x) = stack.pop() {
                piece.push(x);
                for s in 0..4 {
                    let y = crossing_of(self.mate(port(x, s)));
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            piece.sort_unstable();
            out.push(piece);
        }
        out
    }

    pub fn faces(&self) -> Vec<Face> {
        faces::faces(self)
    }

    /// `V - E + F == 2` on every connected piece.
    pub fn euler_ok(&self) -> bool {
        faces::euler_ok(self)
    }
}

/// A directed side of an edge: travel from the port toward its mate with the
/// face on the left. Free loops have a single meaningful side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dart {
    Port(Port),
    Loop(u32),
}

pub fn dart_of_edge(e: Edge) -> Dart {
    match e {
        Edge::Arc(a, _) => Dart::Port(a),
        Edge::Loop(k) => Dart::Loop(k),
    }
}
