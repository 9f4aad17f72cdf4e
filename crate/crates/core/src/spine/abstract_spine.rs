use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::triangulation::{edge_classes, edge_slot, face_vertices, Triangulation};
use super::SpineError;
use crate::surfaces::Coloring;

/// A 6j site; `faces` in positions `(a, b, e, c, d, f)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpineVertex {
    pub faces: [usize; 6],
}

impl SpineVertex {
    /// Corner triples `(a,d,e)`, `(b,c,e)`, `(a,b,f)`, `(c,d,f)` as face ids.
    pub fn corners(&self) -> [[usize; 3]; 4] {
        let [a, b, e, c, d, f] = self.faces;
        [[a, d, e], [b, c, e], [a, b, f], [c, d, f]]
    }
}

/// A theta site. The stored face order fixes which strand number is which.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpineEdge {
    pub faces: [usize; 3],
    /// 1 if the edge has a vertex in its closure, else 0.
    pub chi: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpineFace {
    pub chi: u8,
    /// Annular faces of an augmentation carry the fixed color 1.
    pub forced: Option<u32>,
}

/// Combinatorial spine: vertices, edges and faces with Euler weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractSpine {
    vertices: Vec<SpineVertex>,
    edges: Vec<SpineEdge>,
    faces: Vec<SpineFace>,
}

impl AbstractSpine {
    /// Validates face references, weights, forced colors and that the corner
    /// triples of the vertices pair up with the theta triples of the edges
    /// having a vertex in their closure (each such edge has two ends).
    pub fn new(
        vertices: Vec<SpineVertex>,
        edges: Vec<SpineEdge>,
        faces: Vec<SpineFace>,
    ) -> Result<Self, SpineError> {
        let nf = faces.len();
        for (i, f) in faces.iter().enumerate() {
            if f.chi > 1 {
                return Err(SpineError::BadEulerWeight { what: "face", index: i, chi: f.chi });
            }
            match f.forced {
                None => {}
                Some(1) if f.chi == 0 => {}
                Some(1) => return Err(SpineError::ForcedFaceWeight { face: i }),
                Some(c) => return Err(SpineError::BadForcedColor { face: i, color: c }),
            }
        }
        for (i, v) in vertices.iter().enumerate() {
            if let Some(&f) = v.faces.iter().find(|&&f| f >= nf) {
                return Err(SpineError::UnknownFace { what: "vertex", index: i, face: f });
            }
        }
        for (i, e) in edges.iter().enumerate() {
            if e.chi > 1 {
                return Err(SpineError::BadEulerWeight { what: "edge", index: i, chi: e.chi });
            }
            if let Some(&f) = e.faces.iter().find(|&&f| f >= nf) {
                return Err(SpineError::UnknownFace { what: "edge", index: i, face: f });
            }
        }
        let mut balance: BTreeMap<[usize; 3], i64> = BTreeMap::new();
        for v in &vertices {
            for c in v.corners() {
                *balance.entry(sorted(c)).or_default() += 1;
            }
        }
        for e in edges.iter().filter(|e| e.chi == 1) {
            *balance.entry(sorted(e.faces)).or_default() -= 2;
        }
        if let Some((k, _)) = balance.iter().find(|(_, &b)| b != 0) {
            return Err(SpineError::InconsistentIncidence { triple: *k });
        }
        Ok(AbstractSpine { vertices, edges, faces })
    }

    pub fn vertices(&self) -> &[SpineVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[SpineEdge] {
        &self.edges
    }

    pub fn faces(&self) -> &[SpineFace] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn is_augmented(&self) -> bool {
        self.faces.iter().any(|f| f.forced.is_some())
    }

    /// `#{f : chi(f) = 1} - #v`.
    pub fn euler_characteristic(&self) -> i64 {
        self.faces.iter().filter(|f| f.chi == 1).count() as i64 - self.vertices.len() as i64
    }

    /// Number of faces with `chi(f) = 1`.
    pub fn weighted_face_count(&self) -> usize {
        self.faces.iter().filter(|f| f.chi == 1).count()
    }

    /// Color 2 on every face.
    pub fn boundary_coloring(&self) -> Result<Coloring, SpineError> {
        if self.is_augmented() {
            return Err(SpineError::Augmented);
        }
        Ok(Coloring::new(alloc::vec![2; self.faces.len()]))
    }
}

fn sorted(mut x: [usize; 3]) -> [usize; 3] {
    x.sort_unstable();
    x
}

/// One vertex per tetrahedron, one face per edge class, one edge per glued
/// face pair. Vertex positions follow `a = E(01)`, `b = E(02)`, `c = E(23)`,
/// `d = E(13)`, `e = E(03)`, `f = E(12)`.
pub fn dual_spine(tri: &Triangulation) -> AbstractSpine {
    let classes = edge_classes(tri);
    let cls = |t: usize, u: usize, v: usize| classes.class_of[6 * t + edge_slot(u, v)];
    let vertices = (0..tri.tet_count())
        .map(|t| SpineVertex {
            faces: [cls(t, 0, 1), cls(t, 0, 2), cls(t, 0, 3), cls(t, 2, 3), cls(t, 1, 3), cls(t, 1, 2)],
        })
        .collect();
    let edges = tri
        .face_pairs()
        .into_iter()
        .map(|((t, k), _)| {
            let [x, y, z] = face_vertices(k);
            SpineEdge { faces: [cls(t, x, y), cls(t, x, z), cls(t, y, z)], chi: 1 }
        })
        .collect();
    let faces = (0..classes.len()).map(|_| SpineFace { chi: 1, forced: None }).collect();
    AbstractSpine::new(vertices, edges, faces).expect("dual spine satisfies its invariants")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census;

    #[test]
    fn duality_counts() {
        for tri in [census::figure_eight(), census::one_tet_two_edges(), census::two_tet_one_edge()] {
            let s = dual_spine(&tri);
            assert_eq!(s.vertices().len(), tri.tet_count());
            assert_eq!(s.edges().len(), 2 * tri.tet_count());
            assert_eq!(s.face_count(), edge_classes(&tri).len());
        }
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(dual_spine(&census::figure_eight()).euler_characteristic(), 0);
        assert_eq!(dual_spine(&census::one_tet_two_edges()).euler_characteristic(), 1);
        assert_eq!(dual_spine(&census::two_tet_one_edge()).euler_characteristic(), -1);
    }

    #[test]
    fn figure_eight_structure() {
        let s = dual_spine(&census::figure_eight());
        // Both tetrahedra see the two edge classes in the same pattern.
        for v in s.vertices() {
            assert_eq!(v.faces, [0, 1, 0, 1, 1, 0]);
        }
    }

    #[test]
    fn corner_consistency_each_corner_matches_an_edge() {
        let s = dual_spine(&census::figure_eight());
        for v in s.vertices() {
            for c in v.corners() {
                assert!(s.edges().iter().any(|e| sorted(e.faces) == sorted(c)));
            }
        }
    }

    #[test]
    fn boundary_coloring_is_all_twos() {
        let s = dual_spine(&census::figure_eight());
        assert_eq!(s.boundary_coloring().unwrap().colors(), &[2, 2]);
    }

    #[test]
    fn validation_errors() {
        let v = alloc::vec![SpineVertex { faces: [0; 6] }];
        let e = alloc::vec![SpineEdge { faces: [0; 3], chi: 1 }; 2];
        let f = |chi, forced| alloc::vec![SpineFace { chi, forced }];
        assert!(AbstractSpine::new(v.clone(), e.clone(), f(1, None)).is_ok());
        assert!(matches!(
            AbstractSpine::new(v.clone(), e.clone(), f(0, Some(3))),
            Err(SpineError::BadForcedColor { .. })
        ));
        assert!(matches!(
            AbstractSpine::new(v.clone(), e.clone(), f(1, Some(1))),
            Err(SpineError::ForcedFaceWeight { .. })
        ));
        assert!(matches!(
            AbstractSpine::new(v.clone(), e.clone(), f(2, None)),
            Err(SpineError::BadEulerWeight { .. })
        ));
        assert!(matches!(
            AbstractSpine::new(v.clone(), e[..1].to_vec(), f(1, None)),
            Err(SpineError::InconsistentIncidence { .. })
        ));
        let bad = alloc::vec![SpineVertex { faces: [0, 0, 0, 0, 0, 1] }];
        assert!(matches!(
            AbstractSpine::new(bad, e.clone(), f(1, None)),
            Err(SpineError::UnknownFace { .. })
        ));
    }

    #[test]
    fn augmented_spine_rejects_boundary_coloring() {
        let s = census::augmented_example();
        assert!(s.is_augmented());
        assert!(matches!(s.boundary_coloring(), Err(SpineError::Augmented)));
    }
}
