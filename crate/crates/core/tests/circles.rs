//! Circle counts and curve types checked by tracing normal arcs on the
//! boundary of a tetrahedron.

use tvsum_core::qalgebra::TetLabels;
use tvsum_core::surfaces::{circle_count, curve_type};

/// Tetrahedron edges carrying each label: a=01, b=02, e=03, c=23, d=13, f=12.
fn edge_weight(l: &TetLabels, u: usize, v: usize) -> u32 {
    match (u.min(v), u.max(v)) {
        (0, 1) => l.a,
        (0, 2) => l.b,
        (0, 3) => l.e,
        (2, 3) => l.c,
        (1, 3) => l.d,
        (1, 2) => l.f,
        _ => unreachable!(),
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut x = x;
        while self.0[x] != r {
            let next = self.0[x];
            self.0[x] = r;
            x = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
}

/// Component sizes (in edge crossings) of the curve system with the given
/// edge weights. On each triangle, the arcs cutting off corner `i` use the
/// crossings nearest `i` on both incident edges, innermost first.
fn trace(l: &TetLabels) -> Vec<usize> {
    let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let mut offset = [[0usize; 4]; 4];
    let mut total = 0;
    for &(u, v) in &edges {
        offset[u][v] = total;
        offset[v][u] = total;
        total += edge_weight(l, u, v) as usize;
    }
    // crossing `pos` on edge uv, counted from u
    let point = |u: usize, v: usize, pos: usize| -> usize {
        let w = edge_weight(l, u, v) as usize;
        offset[u][v] + if u < v { pos } else { w - 1 - pos }
    };
    let mut dsu = Dsu((0..total).collect());
    for face in [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]] {
        for i in 0..3 {
            let (x, y, z) = (face[i], face[(i + 1) % 3], face[(i + 2) % 3]);
            let wxy = edge_weight(l, x, y) as i64;
            let wxz = edge_weight(l, x, z) as i64;
            let wyz = edge_weight(l, y, z) as i64;
            let corner = (wxy + wxz - wyz) / 2;
            for k in 0..corner as usize {
                dsu.union(point(x, y, k), point(x, z, k));
            }
        }
    }
    let mut sizes = std::collections::BTreeMap::new();
    for p in 0..total {
        *sizes.entry(dsu.find(p)).or_insert(0usize) += 1;
    }
    sizes.into_values().collect()
}

fn admissible_labelings(max: u32) -> impl Iterator<Item = TetLabels> {
    product(max, 6).map(|v| TetLabels::from_array(v.try_into().unwrap())).filter(|l| l.is_admissible())
}

/// `{0..=max}^n` in lexicographic order.
fn product(max: u32, n: usize) -> impl Iterator<Item = Vec<u32>> {
    let base = max as u64 + 1;
    (0..base.pow(n as u32)).map(move |mut i| {
        let mut v = vec![0; n];
        for slot in v.iter_mut().rev() {
            *slot = (i % base) as u32;
            i /= base;
        }
        v
    })
}

#[test]
fn gcd_formula_matches_tracing_up_to_ten() {
    let mut checked = 0u64;
    for l in admissible_labelings(10) {
        let comps = trace(&l);
        assert_eq!(circle_count(&l), comps.len() as u64, "{l}");
        // vertex links cross three edges; everything else is the curve type
        let nontrivial = comps.iter().filter(|&&s| s != 3).count() as u64;
        assert_eq!(curve_type(&l).map_or(0, |c| c.multiplicity), nontrivial, "{l}");
        checked += 1;
    }
    assert_eq!(checked, 42_393);
}

#[test]
fn quad_and_octagon() {
    // quadrilateral missing the opposite edges 01 and 23
    let quad = TetLabels::new(0, 1, 1, 0, 1, 1);
    let ct = curve_type(&quad).unwrap();
    assert!(ct.is_quad() && ct.multiplicity == 1);
    assert_eq!(trace(&quad), vec![4]);

    // octagon crossing 01 and 23 twice, the other four edges once
    let oct = TetLabels::new(2, 1, 1, 2, 1, 1);
    let ct = curve_type(&oct).unwrap();
    assert!(ct.is_octagon() && ct.multiplicity == 1);
    assert_eq!(trace(&oct), vec![8]);

    // two parallel quads plus a vertex link
    let l = TetLabels::new(1, 3, 3, 0, 2, 2);
    assert_eq!(curve_type(&l).map(|c| (c.a, c.b, c.multiplicity)), Some((0, 1, 2)));
    let mut sizes = trace(&l);
    sizes.sort();
    assert_eq!(sizes, vec![3, 4, 4]);
}

#[test]
fn vertex_links_only() {
    // one triangle around each vertex: every edge crossed twice
    let l = TetLabels::new(2, 2, 2, 2, 2, 2);
    assert_eq!(curve_type(&l), None);
    assert_eq!(trace(&l), vec![3, 3, 3, 3]);
    assert_eq!(circle_count(&l), 4);
}
