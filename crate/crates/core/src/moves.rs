//! Reidemeister moves, their site detectors and seeded random walks.
//!
//! Added crossings are appended; removals renumber the surviving crossings in
//! order; R3 keeps every port id and only rewires mates. Because of that,
//! port directions can be carried across any move (see
//! [`MoveTrace::replay_oriented`]).

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::diagram::{
    ccw, crossing_of, cw, opposite, port, slot_of, strand_of, Dart, Diagram, Edge, Face,
    Orientation, Port, Strand, PASS_THROUGH,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Chirality {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl Chirality {
    pub fn sign(self) -> i32 {
        match self {
            Chirality::Positive => 1,
            Chirality::Negative => -1,
        }
    }
}

/// Side of the edge, relative to its direction from lower to higher port,
/// on which the kink loop is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Which edge of an R2 pair passes over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Over {
    First,
    Second,
}

/// An R2 insertion: push `e1` across `e2` through the face left of both darts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct R2Site {
    pub e1: Dart,
    pub e2: Dart,
    pub over: Over,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Step {
    #[serde(rename = "R1+")]
    R1Positive { edge: usize, side: Side },
    #[serde(rename = "R1-")]
    R1Negative { edge: usize, side: Side },
    /// `sign` is the sign of the removed kink.
    #[serde(rename = "R1-remove")]
    R1Remove { crossing: usize, sign: i32 },
    #[serde(rename = "R2-add")]
    R2Add(R2Site),
    #[serde(rename = "R2-remove")]
    R2Remove { dart: Port },
    #[serde(rename = "R3")]
    R3 { dart: Port },
}

impl Step {
    pub fn apply(&self, d: &Diagram) -> Result<Diagram> {
        match *self {
            Step::R1Positive { edge, side } => r1_add(d, edge, Chirality::Positive, side),
            Step::R1Negative { edge, side } => r1_add(d, edge, Chirality::Negative, side),
            Step::R1Remove { crossing, sign } => {
                let s = kink_sign(d, crossing)?;
                if s != sign {
                    return Err(Error::SiteNotApplicable(format!(
                        "kink at {crossing} has sign {s}, trace says {sign}"
                    )));
                }
                r1_remove(d, crossing)
            }
            Step::R2Add(site) => r2_add_at(d, &site),
            Step::R2Remove { dart } => r2_remove(d, dart),
            Step::R3 { dart } => r3_apply(d, dart),
        }
    }

    /// Signed exponent `k` with `L(after) = y^k L(before)`.
    pub fn r1_weight(&self) -> i32 {
        match *self {
            Step::R1Positive { .. } => 1,
            Step::R1Negative { .. } => -1,
            Step::R1Remove { sign, .. } => -sign,
            _ => 0,
        }
    }

    /// Where each port of `d` lands after the move, if it survives.
    fn port_map(&self, d: &Diagram) -> Result<Vec<Option<Port>>> {
        let removed = match *self {
            Step::R1Remove { crossing, .. } => vec![crossing],
            Step::R2Remove { dart } => {
                check_port(d, dart)?;
                vec![crossing_of(dart), crossing_of(d.mate(dart))]
            }
            _ => return Ok((0..d.num_ports() as Port).map(Some).collect()),
        };
        let mut new_id = Vec::with_capacity(d.c());
        let mut next = 0;
        for c in 0..d.c() {
            if removed.contains(&c) {
                new_id.push(None);
            } else {
                new_id.push(Some(next));
                next += 1;
            }
        }
        Ok((0..d.num_ports() as Port)
            .map(|p| new_id[crossing_of(p)].map(|c| port(c, slot_of(p))))
            .collect())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveTrace {
    pub steps: Vec<Step>,
}

impl MoveTrace {
    pub fn replay(&self, start: &Diagram) -> Result<Diagram> {
        self.steps
            .iter()
            .try_fold(start.clone(), |d, s| s.apply(&d))
    }

    /// Replays while carrying an orientation along; components born from
    /// free loops get their canonical direction.
    pub fn replay_oriented(
        &self,
        start: &Diagram,
        o: &Orientation,
    ) -> Result<(Diagram, Orientation)> {
        start.check_orientation(o)?;
        let mut d = start.clone();
        let mut o = o.clone();
        for s in &self.steps {
            let next = s.apply(&d)?;
            o = carry_orientation(&d, &o, &next, &s.port_map(&d)?);
            d = next;
        }
        Ok((d, o))
    }

    /// Sum of added kink signs minus removed kink signs.
    pub fn net_r1(&self) -> i32 {
        self.steps.iter().map(Step::r1_weight).sum()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

fn carry_orientation(
    old: &Diagram,
    o: &Orientation,
    new: &Diagram,
    map: &[Option<Port>],
) -> Orientation {
    let oc = old.components();
    let nc = new.components();
    let mut out = vec![None; nc.count()];
    for (p, q) in map.iter().enumerate() {
        let Some(q) = *q else { continue };
        let entering = oc.is_entry[p] != o.0[oc.component_of[p]];
        let j = nc.component_of[q as usize];
        out[j].get_or_insert(nc.is_entry[q as usize] != entering);
    }
    Orientation(out.into_iter().map(|b| b.unwrap_or(false)).collect())
}

fn check_port(d: &Diagram, p: Port) -> Result<()> {
    if (p as usize) < d.num_ports() {
        Ok(())
    } else {
        Err(Error::InvalidEdge(format!("port {p} out of range")))
    }
}

fn face_of_port(d: &Diagram) -> (Vec<Face>, Vec<usize>) {
    let faces = d.faces();
    let mut of = vec![0; d.num_ports()];
    for (i, f) in faces.iter().enumerate() {
        for &h in &f.darts {
            of[h as usize] = i;
        }
    }
    (faces, of)
}

fn piece_of_crossing(d: &Diagram) -> Vec<usize> {
    let mut of = vec![0; d.c()];
    for (i, piece) in d.pieces().iter().enumerate() {
        for &c in piece {
            of[c] = i;
        }
    }
    of
}

// ---------------------------------------------------------------- R1

pub fn r1_add(d: &Diagram, e: usize, chirality: Chirality, side: Side) -> Result<Diagram> {
    let edge = d.edge(e)?;
    let mut n = d.clone();
    let x = n.push_crossing(Strand::U);
    let p = |s| port(x, s);
    match edge {
        Edge::Arc(a, b) => {
            n.link(a, p(0));
            match side {
                Side::Right => {
                    n.link(p(2), p(1));
                    n.link(p(3), b);
                }
                Side::Left => {
                    n.link(p(2), p(3));
                    n.link(p(1), b);
                }
            }
        }
        Edge::Loop(_) => {
            n.add_free_loops(-1);
            match side {
                Side::Right => {
                    n.link(p(0), p(3));
                    n.link(p(1), p(2));
                }
                Side::Left => {
                    n.link(p(0), p(1));
                    n.link(p(2), p(3));
                }
            }
        }
    }
    if kink_sign(&n, x)? != chirality.sign() {
        n.set_over(x, Strand::V);
    }
    Ok(n)
}

fn is_kink(d: &Diagram, x: usize) -> bool {
    (0..4).any(|s| d.mate(port(x, s)) == port(x, s + 1))
}

/// Crossings carrying a one-crossing loop.
pub fn r1_sites(d: &Diagram) -> Vec<usize> {
    (0..d.c()).filter(|&x| is_kink(d, x)).collect()
}

/// Sign of the kink at `x`; it does not depend on orientation.
pub fn kink_sign(d: &Diagram, x: usize) -> Result<i32> {
    d.crossing(x)?;
    if !is_kink(d, x) {
        return Err(Error::SiteNotApplicable(format!(
            "crossing {x} is not a kink"
        )));
    }
    d.sign_of(x, &Orientation::canonical(d.r()))
}

pub fn r1_remove(d: &Diagram, x: usize) -> Result<Diagram> {
    kink_sign(d, x)?;
    Ok(d.resolve(&[(x, PASS_THROUGH)]))
}

// ---------------------------------------------------------------- R2

fn darts_of(e: Edge) -> Vec<Dart> {
    match e {
        Edge::Arc(a, b) => vec![Dart::Port(a), Dart::Port(b)],
        Edge::Loop(k) => vec![Dart::Loop(k)],
    }
}

fn cofacial(face_of: &[usize], piece_of: &[usize], h1: Dart, h2: Dart) -> bool {
    match (h1, h2) {
        (Dart::Port(a), Dart::Port(b)) => {
            piece_of[crossing_of(a)] != piece_of[crossing_of(b)]
                || face_of[a as usize] == face_of[b as usize]
        }
        _ => true,
    }
}

/// Pushes edge `e1` across edge `e2` through the first face they share.
/// Edges on different connected pieces always qualify.
pub fn r2_add(d: &Diagram, e1: usize, e2: usize, over: Over) -> Result<Diagram> {
    if e1 == e2 {
        return Err(Error::InvalidEdge(format!(
            "R2 needs two distinct edges, got {e1} twice"
        )));
    }
    let (a, b) = (d.edge(e1)?, d.edge(e2)?);
    let (_, face_of) = face_of_port(d);
    let piece_of = piece_of_crossing(d);
    for h1 in darts_of(a) {
        for h2 in darts_of(b) {
            if cofacial(&face_of, &piece_of, h1, h2) {
                return r2_add_at(
                    d,
                    &R2Site {
                        e1: h1,
                        e2: h2,
                        over,
                    },
                );
            }
        }
    }
    Err(Error::NotCofacial)
}

pub fn r2_add_at(d: &Diagram, site: &R2Site) -> Result<Diagram> {
    let loops = d.free_loops();
    for h in [site.e1, site.e2] {
        match h {
            Dart::Port(p) => check_port(d, p)?,
            Dart::Loop(k) if k >= loops => {
                return Err(Error::InvalidEdge(format!("free loop {k} out of range")))
            }
            Dart::Loop(_) => {}
        }
    }
    let same = match (site.e1, site.e2) {
        (Dart::Port(a), Dart::Port(b)) => a == b || d.mate(a) == b,
        (Dart::Loop(a), Dart::Loop(b)) => a == b,
        _ => false,
    };
    if same {
        return Err(Error::InvalidEdge("R2 needs two distinct edges".into()));
    }
    let (_, face_of) = face_of_port(d);
    if !cofacial(&face_of, &piece_of_crossing(d), site.e1, site.e2) {
        return Err(Error::NotCofacial);
    }

    let strand = match site.over {
        Over::First => Strand::U,
        Over::Second => Strand::V,
    };
    let mut n = d.clone();
    let x = n.push_crossing(strand);
    let y = n.push_crossing(strand);
    let (x, y) = (|s| port(x, s), |s| port(y, s));
    n.link(x(2), y(0));
    n.link(x(1), y(1));
    match site.e1 {
        Dart::Port(h1) => {
            n.link(h1, x(0));
            n.link(y(2), d.mate(h1));
        }
        Dart::Loop(_) => {
            n.add_free_loops(-1);
            n.link(x(0), y(2));
        }
    }
    match site.e2 {
        Dart::Port(h2) => {
            n.link(h2, y(3));
            n.link(x(3), d.mate(h2));
        }
        Dart::Loop(_) => {
            n.add_free_loops(-1);
            n.link(x(3), y(3));
        }
    }
    Ok(n)
}

fn removable_bigon(d: &Diagram, f: &Face) -> bool {
    let [g1, g2] = f.darts[..] else { return false };
    let (a, b) = (crossing_of(g1), crossing_of(g2));
    let m = d.mate(g1);
    a != b && (strand_of(g1) == d.over(a)) == (strand_of(m) == d.over(b))
}

/// Bigon faces admitting R2 removal, each named by its smallest dart.
pub fn r2_sites(d: &Diagram) -> Vec<Port> {
    d.faces()
        .iter()
        .filter(|f| removable_bigon(d, f))
        .map(|f| *f.darts.iter().min().unwrap())
        .collect()
}

/// Removes the bigon face containing `dart`.
pub fn r2_remove(d: &Diagram, dart: Port) -> Result<Diagram> {
    check_port(d, dart)?;
    let (faces, face_of) = face_of_port(d);
    let f = &faces[face_of[dart as usize]];
    if !removable_bigon(d, f) {
        return Err(Error::SiteNotApplicable(format!(
            "dart {dart} is not on a removable bigon"
        )));
    }
    let a = crossing_of(f.darts[0]);
    let b = crossing_of(f.darts[1]);
    Ok(d.resolve(&[(a, PASS_THROUGH), (b, PASS_THROUGH)]))
}

// ---------------------------------------------------------------- R3

/// The triangle's darts rotated so that the strand along the first one is
/// over at both its crossings or under at both.
fn r3_frame(d: &Diagram, f: &Face) -> Option<[Port; 3]> {
    let [a, b, c] = f.darts[..] else { return None };
    let (x, y, z) = (crossing_of(a), crossing_of(b), crossing_of(c));
    if x == y || y == z || x == z {
        return None;
    }
    let darts = [a, b, c];
    (0..3).find_map(|k| {
        let e = darts[k];
        let m = d.mate(e);
        let extremal =
            (strand_of(e) == d.over(crossing_of(e))) == (strand_of(m) == d.over(crossing_of(m)));
        extremal.then(|| [darts[k], darts[(k + 1) % 3], darts[(k + 2) % 3]])
    })
}

/// Triangle faces admitting R3, each named by its smallest dart.
pub fn r3_sites(d: &Diagram) -> Vec<Port> {
    d.faces()
        .iter()
        .filter(|f| r3_frame(d, f).is_some())
        .map(|f| *f.darts.iter().min().unwrap())
        .collect()
}

/// Slides an extremal strand of the triangle face containing `dart` across
/// the opposite crossing.
pub fn r3_apply(d: &Diagram, dart: Port) -> Result<Diagram> {
    check_port(d, dart)?;
    let (faces, face_of) = face_of_port(d);
    let f = &faces[face_of[dart as usize]];
    let [d0, d1, d2] = r3_frame(d, f)
        .ok_or_else(|| Error::SiteNotApplicable(format!("dart {dart} is not on an R3 triangle")))?;
    // Crossings R, Q, P in counterclockwise order around the face; d0 runs
    // R to Q along the sliding strand.
    let (r_q, q_r) = (d0, d.mate(d0));
    let (q_p, p_q) = (d1, d.mate(d1));
    let (p_r, r_p) = (d2, d.mate(d2));
    debug_assert_eq!(q_p, cw(q_r));
    debug_assert_eq!(r_p, ccw(r_q));
    // Each outer port hands its external edge to the port that faces the
    // same way once the strand has crossed over.
    let outer = [
        opposite(q_r),
        opposite(r_q),
        opposite(p_r),
        opposite(p_q),
        opposite(r_p),
        opposite(q_p),
    ];
    let inner = [r_q, q_r, r_p, q_p, p_r, p_q];
    let moved = |p: Port| outer.iter().position(|&o| o == p).map_or(p, |i| inner[i]);
    let mut n = d.clone();
    for i in 0..6 {
        n.link(inner[i], moved(d.mate(outer[i])));
    }
    n.link(opposite(r_q), opposite(q_r));
    n.link(opposite(r_p), opposite(p_r));
    n.link(opposite(q_p), opposite(p_q));
    Ok(n)
}

// ---------------------------------------------------------------- walks

fn random_r2_site(d: &Diagram, rng: &mut ChaCha8Rng) -> Option<R2Site> {
    let ports = d.num_ports() as Port;
    let loops = d.free_loops();
    let all: Vec<Dart> = (0..ports)
        .map(Dart::Port)
        .chain((0..loops).map(Dart::Loop))
        .collect();
    let h1 = *all.choose(rng)?;
    let (_, face_of) = face_of_port(d);
    let piece_of = piece_of_crossing(d);
    let partners: Vec<Dart> = all
        .iter()
        .copied()
        .filter(|&h2| match (h1, h2) {
            (Dart::Port(a), Dart::Port(b)) => {
                a != b && d.mate(a) != b && cofacial(&face_of, &piece_of, h1, h2)
            }
            (Dart::Loop(a), Dart::Loop(b)) => a != b,
            _ => true,
        })
        .collect();
    let h2 = *partners.choose(rng)?;
    let over = if rng.gen_bool(0.5) {
        Over::First
    } else {
        Over::Second
    };
    Some(R2Site {
        e1: h1,
        e2: h2,
        over,
    })
}

fn random_step(d: &Diagram, rng: &mut ChaCha8Rng, max_c: usize) -> Option<Step> {
    match rng.gen_range(0..5) {
        0 if d.c() < max_c => {
            let edges = d.edges().len();
            if edges == 0 {
                return None;
            }
            let edge = rng.gen_range(0..edges);
            let side = if rng.gen_bool(0.5) {
                Side::Left
            } else {
                Side::Right
            };
            Some(if rng.gen_bool(0.5) {
                Step::R1Positive { edge, side }
            } else {
                Step::R1Negative { edge, side }
            })
        }
        1 => {
            let crossing = *r1_sites(d).choose(rng)?;
            let sign = kink_sign(d, crossing).ok()?;
            Some(Step::R1Remove { crossing, sign })
        }
        2 if d.c() + 2 <= max_c => random_r2_site(d, rng).map(Step::R2Add),
        3 => r2_sites(d).choose(rng).map(|&dart| Step::R2Remove { dart }),
        4 => r3_sites(d).choose(rng).map(|&dart| Step::R3 { dart }),
        _ => None,
    }
}

/// Makes `steps` random picks among R1/R2 insertions and removals and R3;
/// picks that are unavailable or would exceed `max_c` crossings are skipped.
pub fn random_move_walk(
    d: &Diagram,
    steps: usize,
    seed: u64,
    max_c: usize,
) -> (Diagram, MoveTrace) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = d.clone();
    let mut trace = MoveTrace::default();
    for _ in 0..steps {
        let Some(step) = random_step(&cur, &mut rng, max_c) else {
            continue;
        };
        if let Ok(next) = step.apply(&cur) {
            cur = next;
            trace.steps.push(step);
        }
    }
    (cur, trace)
}

/// A seeded diagram with at most `max_c` crossings: a move walk from a small
/// unlink followed by random crossing changes.
pub fn random_diagram(seed: u64, max_c: usize) -> Diagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let loops = *[1, 1, 1, 2, 2, 3].choose(&mut rng).unwrap();
    let walk_seed = rng.gen();
    let (mut d, _) = random_move_walk(&Diagram::unlink(loops), 6 * max_c + 4, walk_seed, max_c);
    for x in 0..d.c() {
        if rng.gen_bool(0.5) {
            d.set_over(x, d.over(x).other());
        }
    }
    d
}
