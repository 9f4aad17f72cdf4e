//! Dual spines of random closed gluings of tetrahedra.

use proptest::prelude::*;
use tvsum_core::spine::{dual_spine, edge_classes, AbstractSpine, Triangulation};

/// Pairs the `4n` faces by `order` and glues each pair by a permutation that
/// sends the opposite vertex to the opposite vertex; the three others are
/// matched by `twist`.
fn glue(n: usize, order: &[usize], twists: &[u8]) -> Option<Triangulation> {
    let mut data = vec![([0usize; 4], [[0u8; 4]; 4]); n];
    for (i, pair) in order.chunks(2).enumerate() {
        let (x, y) = (pair[0], pair[1]);
        let (tx, fx, ty, fy) = (x / 4, x % 4, y / 4, y % 4);
        let ox: Vec<u8> = (0..4).filter(|&v| v != fx as u8).collect();
        let mut oy: Vec<u8> = (0..4).filter(|&v| v != fy as u8).collect();
        oy.rotate_left(twists[i] as usize % 3);
        if twists[i] >= 3 {
            oy.swap(0, 1);
        }
        let mut p = [0u8; 4];
        p[fx] = fy as u8;
        for k in 0..3 {
            p[ox[k] as usize] = oy[k];
        }
        let mut inv = [0u8; 4];
        for (k, &v) in p.iter().enumerate() {
            inv[v as usize] = k as u8;
        }
        data[tx].0[fx] = ty;
        data[tx].1[fx] = p;
        data[ty].0[fy] = tx;
        data[ty].1[fy] = inv;
    }
    Triangulation::from_raw(&data).ok()
}

fn triangulation() -> impl Strategy<Value = Triangulation> {
    (1usize..=4)
        .prop_flat_map(|n| {
            (Just(n), Just((0..4 * n).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(0u8..6, 2 * n))
        })
        .prop_filter_map("self-glued face", |(n, order, twists)| glue(n, &order, &twists))
}

fn sorted(mut x: [usize; 3]) -> [usize; 3] {
    x.sort_unstable();
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn duality_counts(tri in triangulation()) {
        let s = dual_spine(&tri);
        prop_assert_eq!(s.vertices().len(), tri.tet_count());
        prop_assert_eq!(s.edges().len(), 2 * tri.tet_count());
        prop_assert_eq!(s.face_count(), edge_classes(&tri).len());
        prop_assert_eq!(s.euler_characteristic(), s.face_count() as i64 - tri.tet_count() as i64);
    }

    #[test]
    fn corners_pair_with_edges(tri in triangulation()) {
        let s = dual_spine(&tri);
        let mut edges: Vec<[usize; 3]> = s.edges().iter().map(|e| sorted(e.faces)).collect();
        let mut corners: Vec<[usize; 3]> = s.vertices().iter().flat_map(|v| v.corners()).map(sorted).collect();
        // every spine edge has two ends, each at one vertex corner
        edges.extend(edges.clone());
        edges.sort();
        corners.sort();
        prop_assert_eq!(corners, edges);
    }

    #[test]
    fn rebuilding_from_parts_validates(tri in triangulation()) {
        let s = dual_spine(&tri);
        let again = AbstractSpine::new(s.vertices().to_vec(), s.edges().to_vec(), s.faces().to_vec()).unwrap();
        prop_assert_eq!(again, s);
    }

    #[test]
    fn edge_classes_cover_all_slots(tri in triangulation()) {
        let p = edge_classes(&tri);
        prop_assert_eq!(p.class_of.len(), 6 * tri.tet_count());
        prop_assert_eq!(p.classes.iter().map(Vec::len).sum::<usize>(), 6 * tri.tet_count());
        for (c, members) in p.classes.iter().enumerate() {
            for &m in members {
                prop_assert_eq!(p.class_of[m], c);
            }
        }
    }
}
