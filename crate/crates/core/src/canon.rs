//! Canonical encoding of a diagram up to relabeling of crossings and
//! rotation of port slots. Reflections are not identified: the counterclockwise
//! port order is part of the data.

use crate::diagram::{crossing_of, port, slot_of, Diagram, Port, Strand};

fn code_from(d: &Diagram, start: Port, piece_len: usize, best: Option<&[u32]>) -> Option<Vec<u32>> {
    let mut label = vec![u32::MAX; d.c()];
    let mut offset = vec![0u32; d.c()];
    let mut order = Vec::with_capacity(piece_len);
    let c0 = crossing_of(start);
    label[c0] = 0;
    offset[c0] = slot_of(start);
    order.push(c0);
    let mut code = Vec::with_capacity(piece_len * 5);
    let mut head = 0;
    let mut smaller = false;
    while head < order.len() {
        let c = order[head];
        head += 1;
        let off = offset[c];
        let over_local = u32::from((d.over(c) == Strand::V) != (off % 2 == 1));
        code.push(over_local);
        for i in 0..4 {
            let m = d.mate(port(c, off + i));
            let mc = crossing_of(m);
            if label[mc] == u32::MAX {
                label[mc] = order.len() as u32;
                offset[mc] = slot_of(m);
                order.push(mc);
            }
            code.push(label[mc] * 4 + (slot_of(m) + 4 - offset[mc]) % 4);
        }
        // prune against the best code so far
        if let (false, Some(b)) = (smaller, best) {
            let k = code.len();
            match code[..].cmp(&b[..k]) {
                std::cmp::Ordering::Greater => return None,
                std::cmp::Ordering::Less => smaller = true,
                std::cmp::Ordering::Equal => {}
            }
        }
    }
    Some(code)
}

/// Key equal for diagrams that differ only by crossing relabeling and port
/// rotation (and the order of split pieces).
pub fn canonical_key(d: &Diagram) -> Vec<u32> {
    let mut codes: Vec<Vec<u32>> = d
        .pieces()
        .iter()
        .map(|piece| {
            let mut best: Option<Vec<u32>> = None;
            for &c in piece {
                for s in 0..4 {
                    if let Some(code) = code_from(d, port(c, s), piece.len(), best.as_deref()) {
                        best = Some(code);
                    }
                }
            }
            best.expect("non-empty piece")
        })
        .collect();
    codes.sort();
    let mut key = vec![d.free_loops(), codes.len() as u32];
    for c in codes {
        key.push(c.len() as u32);
        key.extend(c);
    }
    key
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabeling_invariance() {
        let a = Diagram::parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        // same diagram, crossings listed in another order and rotated by two
        let b = Diagram::parse_pd("X(6,3,5,2) X(2,5,1,4) X(4,1,3,6)").unwrap();
        assert_ne!(a, b);
        assert_eq!(canonical_key(&a), canonical_key(&b));
        assert_ne!(canonical_key(&a), canonical_key(&a.mirror()));
        assert_ne!(
            canonical_key(&a),
            canonical_key(&a.crossing_change(0).unwrap())
        );
    }

    #[test]
    fn free_loops_and_pieces() {
        let k = Diagram::parse_pd("X(1,2,2,1)").unwrap();
        let ko = k.disjoint_union(&Diagram::unknot());
        assert_ne!(canonical_key(&k), canonical_key(&ko));
        let h = Diagram::parse_pd("X(1,4,2,3) X(3,2,4,1)").unwrap();
        assert_eq!(
            canonical_key(&k.disjoint_union(&h)),
            canonical_key(&h.disjoint_union(&k))
        );
    }
}
