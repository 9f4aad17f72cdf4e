use alloc::vec::Vec;

use super::SpineError;

/// A bijection of `{0,1,2,3}`, stored as its image list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Perm4([u8; 4]);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    pub fn new(images: [u8; 4]) -> Option<Self> {
        let mut seen = [false; 4];
        for &i in &images {
            if i > 3 || seen[i as usize] {
                return None;
            }
            seen[i as usize] = true;
        }
        Some(Perm4(images))
    }

    pub fn apply(&self, v: usize) -> usize {
        self.0[v] as usize
    }

    pub fn images(&self) -> [u8; 4] {
        self.0
    }

    pub fn inverse(&self) -> Perm4 {
        let mut out = [0u8; 4];
        for (i, &j) in self.0.iter().enumerate() {
            out[j as usize] = i as u8;
        }
        Perm4(out)
    }

    pub fn is_odd(&self) -> bool {
        let mut inv = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    inv += 1;
                }
            }
        }
        inv % 2 == 1
    }
}

/// Face gluings of one tetrahedron. Entry `k` describes the face opposite
/// vertex `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tetrahedron {
    pub neighbors: [usize; 4],
    pub gluings: [Perm4; 4],
}

/// The six edges of a tetrahedron in slot order.
pub const TET_EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Slot of the edge `{u, v}` within a tetrahedron.
pub fn edge_slot(u: usize, v: usize) -> usize {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    match (u, v) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("not an edge: {{{}, {}}}", u, v),
    }
}

/// Vertices of the face opposite `k`, ascending.
pub fn face_vertices(k: usize) -> [usize; 3] {
    match k {
        0 => [1, 2, 3],
        1 => [0, 2, 3],
        2 => [0, 1, 3],
        3 => [0, 1, 2],
        _ => panic!("face index {} out of range", k),
    }
}

/// A validated ideal triangulation: every face glued, gluings involutive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    tets: Vec<Tetrahedron>,
}

impl Triangulation {
    pub fn new(tets: Vec<Tetrahedron>) -> Result<Self, SpineError> {
        let n = tets.len();
        if n == 0 {
            return Err(SpineError::Empty);
        }
        for (t, tet) in tets.iter().enumerate() {
            for k in 0..4 {
                let nb = tet.neighbors[k];
                if nb >= n {
                    return Err(SpineError::DanglingNeighbor { tet: t, face: k, neighbor: nb });
                }
                let s = tet.gluings[k];
                let kk = s.apply(k);
                if nb == t && kk == k {
                    return Err(SpineError::SelfGluedFace { tet: t, face: k });
                }
                let back = &tets[nb];
                if back.neighbors[kk] != t || back.gluings[kk] != s.inverse() {
                    return Err(SpineError::NonInvolutive { tet: t, face: k });
                }
            }
        }
        Ok(Triangulation { tets })
    }

    /// Builds from raw neighbor and permutation arrays.
    pub fn from_raw(data: &[([usize; 4], [[u8; 4]; 4])]) -> Result<Self, SpineError> {
        let mut tets = Vec::with_capacity(data.len());
        for (t, (nb, gl)) in data.iter().enumerate() {
            let mut g = [Perm4::IDENTITY; 4];
            for k in 0..4 {
                g[k] = Perm4::new(gl[k]).ok_or(SpineError::NotAPermutation { tet: t, face: k })?;
            }
            tets.push(Tetrahedron { neighbors: *nb, gluings: g });
        }
        Triangulation::new(tets)
    }

    pub fn tet_count(&self) -> usize {
        self.tets.len()
    }

    pub fn tetrahedra(&self) -> &[Tetrahedron] {
        &self.tets
    }

    /// Glued face pairs `((T, k), (T', k'))` with `(T, k) < (T', k')`.
    pub fn face_pairs(&self) -> Vec<((usize, usize), (usize, usize))> {
        let mut out = Vec::with_capacity(2 * self.tets.len());
        for (t, tet) in self.tets.iter().enumerate() {
            for k in 0..4 {
                let other = (tet.neighbors[k], tet.gluings[k].apply(k));
                if (t, k) < other {
                    out.push(((t, k), other));
                }
            }
        }
        out
    }

    /// Ideal vertex classes of the `4 * tet_count` corners.
    pub fn vertex_classes(&self) -> Partition {
        let mut uf = UnionFind::new(4 * self.tets.len());
        for (t, tet) in self.tets.iter().enumerate() {
            for k in 0..4 {
                let s = tet.gluings[k];
                for v in face_vertices(k) {
                    uf.union(4 * t + v, 4 * tet.neighbors[k] + s.apply(v));
                }
            }
        }
        uf.into_partition()
    }
}

/// Classes of a set of slots, numbered by first appearance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub class_of: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
}

impl Partition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), rank: alloc::vec![0; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            core::cmp::Ordering::Less => self.parent[ra] = rb,
            core::cmp::Ordering::Greater => self.parent[rb] = ra,
            core::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }

    fn into_partition(mut self) -> Partition {
        let n = self.parent.len();
        let mut id_of_root = alloc::vec![usize::MAX; n];
        let mut class_of = alloc::vec![0; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            let r = self.find(x);
            if id_of_root[r] == usize::MAX {
                id_of_root[r] = classes.len();
                classes.push(Vec::new());
            }
            class_of[x] = id_of_root[r];
            classes[id_of_root[r]].push(x);
        }
        Partition { class_of, classes }
    }
}

/// Partition of the `6 * tet_count` edge slots; slot `6T + i` is edge
/// `TET_EDGES[i]` of tetrahedron `T`.
pub fn edge_classes(tri: &Triangulation) -> Partition {
    let mut uf = UnionFind::new(6 * tri.tet_count());
    for (t, tet) in tri.tetrahedra().iter().enumerate() {
        for k in 0..4 {
            let s = tet.gluings[k];
            let nb = tet.neighbors[k];
            let [x, y, z] = face_vertices(k);
            for (u, v) in [(x, y), (x, z), (y, z)] {
                uf.union(6 * t + edge_slot(u, v), 6 * nb + edge_slot(s.apply(u), s.apply(v)));
            }
        }
    }
    uf.into_partition()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census;

    #[test]
    fn perm_inverse() {
        let p = Perm4::new([2, 0, 3, 1]).unwrap();
        assert_eq!(p.inverse().inverse(), p);
        for v in 0..4 {
            assert_eq!(p.inverse().apply(p.apply(v)), v);
        }
        assert!(Perm4::new([0, 0, 1, 2]).is_none());
        assert!(Perm4::new([0, 1, 2, 4]).is_none());
    }

    #[test]
    fn edge_slots_round_trip() {
        for (i, &(u, v)) in TET_EDGES.iter().enumerate() {
            assert_eq!(edge_slot(u, v), i);
            assert_eq!(edge_slot(v, u), i);
        }
    }

    #[test]
    fn census_edge_classes() {
        assert_eq!(edge_classes(&census::figure_eight()).len(), 2);
        assert_eq!(edge_classes(&census::one_tet_two_edges()).len(), 2);
        assert_eq!(edge_classes(&census::two_tet_one_edge()).len(), 1);
    }

    #[test]
    fn census_vertex_classes() {
        assert_eq!(census::figure_eight().vertex_classes().len(), 1);
        assert_eq!(census::two_tet_one_edge().vertex_classes().len(), 1);
    }

    #[test]
    fn figure_eight_classes_have_six_slots() {
        let p = edge_classes(&census::figure_eight());
        assert!(p.classes.iter().all(|c| c.len() == 6));
    }

    #[test]
    fn rejects_bad_gluings() {
        let id = [0u8, 1, 2, 3];
        // face 0 glued to itself
        let r = Triangulation::from_raw(&[([0, 0, 0, 0], [id, id, id, id])]);
        assert!(matches!(r, Err(SpineError::SelfGluedFace { .. })));
        let r = Triangulation::from_raw(&[([1, 0, 0, 0], [[1, 0, 2, 3], id, id, id])]);
        assert!(matches!(r, Err(SpineError::DanglingNeighbor { .. })));
        let r = Triangulation::from_raw(&[([0, 0, 0, 0], [[0, 0, 2, 3], id, id, id])]);
        assert!(matches!(r, Err(SpineError::NotAPermutation { .. })));
        // face 0 -> face 1 by (0 1), but face 1 -> face 0 by a different map
        let sw = [1u8, 0, 2, 3];
        let r = Triangulation::from_raw(&[([0, 0, 0, 0], [sw, [1, 0, 3, 2], [0, 1, 3, 2], [0, 1, 3, 2]])]);
        assert!(matches!(r, Err(SpineError::NonInvolutive { .. })));
        assert!(matches!(Triangulation::new(Vec::new()), Err(SpineError::Empty)));
    }
}
