//! Small triangulations and spines used as fixtures.

use alloc::vec;

use crate::spine::{AbstractSpine, SpineEdge, SpineFace, SpineVertex, Triangulation};

/// Figure-eight knot complement: two tetrahedra, two edge classes, one
/// torus cusp. Both tetrahedra carry the same four gluing maps.
pub fn figure_eight() -> Triangulation {
    let g = [[1, 3, 0, 2], [2, 0, 3, 1], [0, 3, 2, 1], [2, 1, 0, 3]];
    Triangulation::from_raw(&[([1, 1, 1, 1], g), ([0, 0, 0, 0], g)]).expect("valid census data")
}

/// One tetrahedron with faces 0-2 and 1-3 identified, giving two edge
/// classes; its dual spine has `#f - #v = 1`. Used for combinatorial tests
/// of the `chi = 1` case.
pub fn one_tet_two_edges() -> Triangulation {
    Triangulation::from_raw(&[([0, 0, 0, 0], [[2, 3, 1, 0], [2, 3, 1, 0], [3, 2, 0, 1], [3, 2, 0, 1]])])
        .expect("valid census data")
}

/// Two tetrahedra with a single edge class and one genus-2 cusp; its dual
/// spine has `#f - #v = -1`.
pub fn two_tet_one_edge() -> Triangulation {
    Triangulation::from_raw(&[
        ([1, 1, 1, 1], [[0, 1, 3, 2], [2, 1, 0, 3], [1, 2, 3, 0], [1, 3, 0, 2]]),
        ([0, 0, 0, 0], [[0, 1, 3, 2], [2, 1, 0, 3], [2, 0, 3, 1], [3, 0, 1, 2]]),
    ])
    .expect("valid census data")
}

/// Synthetic augmented spine: two vertices with labels `(u0,u0,1;u1,u1,u0)`,
/// where face 2 is an annulus forced to color 1. `#f - #v = 0`.
pub fn augmented_example() -> AbstractSpine {
    let v = SpineVertex { faces: [0, 0, 2, 1, 1, 0] };
    let e = |faces, chi| SpineEdge { faces, chi };
    AbstractSpine::new(
        vec![v, v],
        vec![e([0, 1, 2], 1), e([0, 1, 2], 1), e([0, 0, 0], 1), e([0, 1, 1], 1)],
        vec![
            SpineFace { chi: 1, forced: None },
            SpineFace { chi: 1, forced: None },
            SpineFace { chi: 0, forced: Some(1) },
        ],
    )
    .expect("valid synthetic spine")
}
