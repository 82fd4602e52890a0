use super::{crossing_of, cw, Diagram, Port};

/// A face as its boundary darts. Dart `h` runs from port `h` to its mate
/// with the face on its left; the next dart turns clockwise at the far end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<Port>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn crossings(&self) -> Vec<usize> {
        self.darts.iter().map(|&h| crossing_of(h)).collect()
    }
}

pub(crate) fn next_dart(d: &Diagram, h: Port) -> Port {
    cw(d.mate(h))
}

pub(super) fn faces(d: &Diagram) -> Vec<Face> {
    let n = d.num_ports();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n as Port {
        if seen[start as usize] {
            continue;
        }
        let mut darts = Vec::new();
        let mut h = start;
        while !seen[h as usize] {
            seen[h as usize] = true;
            darts.push(h);
            h = next_dart(d, h);
        }
        out.push(Face { darts });
    }
    out
}

pub(super) fn euler_ok(d: &Diagram) -> bool {
    let faces = faces(d);
    let mut piece_of = vec![0usize; d.c()];
    let pieces = d.pieces();
    for (i, piece) in pieces.iter().enumerate() {
        for &c in piece {
            piece_of[c] = i;
        }
    }
    let mut face_count = vec![0i64; pieces.len()];
    for f in &faces {
        face_count[piece_of[crossing_of(f.darts[0])]] += 1;
    }
    pieces
        .iter()
        .zip(face_count)
        .all(|(piece, f)| piece.len() as i64 - 2 * piece.len() as i64 + f == 2)
}

#[cfg(test)]
mod tests {
    use crate::diagram::Diagram;

    #[test]
    fn face_counts() {
        let kink = Diagram::parse_pd("X(1,2,2,1)").unwrap();
        assert_eq!(kink.faces().len(), 3);
        let hopf = Diagram::parse_pd("X(1,4,2,3) X(3,2,4,1)").unwrap();
        assert_eq!(hopf.faces().len(), 4);
        let trefoil = Diagram::parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        let faces = trefoil.faces();
        assert_eq!(faces.len(), 5);
        let mut sizes: Vec<_> = faces.iter().map(|f| f.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 2, 2, 3, 3]);
        assert!(Diagram::unknot().faces().is_empty());
    }

    #[test]
    fn every_dart_in_exactly_one_face() {
        let d = Diagram::parse_pd("X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)").unwrap();
        let mut all: Vec<_> = d.faces().into_iter().flat_map(|f| f.darts).collect();
        all.sort();
        assert_eq!(all, (0..16).collect::<Vec<_>>());
        assert!(d.euler_ok());
    }
}
