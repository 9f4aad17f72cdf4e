//! Admissible colorings of a spine (spinal surfaces) and their invariants.

use alloc::vec::Vec;

mod coloring;
mod enumerate;

pub use coloring::Coloring;
pub use enumerate::{enumerate_colorings, ColoringIter};
use num_integer::Integer;

use crate::qalgebra::{column_sums, is_admissible, TetLabels};
use crate::spine::AbstractSpine;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SurfaceError {
    #[error("coloring has {got} colors, spine has {expected} faces")]
    WrongLength { expected: usize, got: usize },
    #[error("coloring {0} is not admissible")]
    Inadmissible(Coloring),
    #[error("the Euler characteristic formula needs an unaugmented spine with all weights 1")]
    NotClosed,
    #[error("colorings share no sector")]
    NoCommonSector,
    #[error("cannot peel {k} boundary copies from a coloring with peel index {index}")]
    PeelTooDeep { k: u32, index: u32 },
}

/// Orderings of the three columns, in lexicographic order. Entry `[i, j, k]`
/// means column `i` is largest and column `k` smallest.
pub const COLUMN_ORDERS: [[u8; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

pub fn is_admissible_coloring(spine: &AbstractSpine, coloring: &Coloring) -> bool {
    check_coloring(spine, coloring).is_ok()
}

pub fn check_coloring(spine: &AbstractSpine, coloring: &Coloring) -> Result<(), SurfaceError> {
    let u = coloring.colors();
    if u.len() != spine.face_count() {
        return Err(SurfaceError::WrongLength { expected: spine.face_count(), got: u.len() });
    }
    let forced_ok = spine.faces().iter().zip(u).all(|(f, &c)| f.forced.map_or(true, |x| x == c));
    let edges_ok = spine.edges().iter().all(|e| {
        let [x, y, z] = e.faces;
        is_admissible(u[x], u[y], u[z])
    });
    if forced_ok && edges_ok {
        Ok(())
    } else {
        Err(SurfaceError::Inadmissible(coloring.clone()))
    }
}

pub fn vertex_labeling(spine: &AbstractSpine, coloring: &Coloring, vertex: usize) -> TetLabels {
    let u = coloring.colors();
    TetLabels::from_array(spine.vertices()[vertex].faces.map(|f| u[f]))
}

pub fn vertex_labelings(spine: &AbstractSpine, coloring: &Coloring) -> Vec<TetLabels> {
    (0..spine.vertices().len()).map(|v| vertex_labeling(spine, coloring, v)).collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    // gcd(0, 0) = 0
    a.gcd(&b)
}

/// Number of circles the net carries: `gcd(C1-C2, C1-C3)/2 + C2 + C3 - C1`.
pub fn circle_count(labels: &TetLabels) -> u64 {
    let (c1, c2, c3) = column_sums(labels);
    gcd(c1 - c2, c1 - c3) / 2 + c2 + c3 - c1
}

/// Non-triangle curve class `(a, b)` with `a <= b`, and how many parallel copies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CurveType {
    pub a: u64,
    pub b: u64,
    pub multiplicity: u64,
}

impl CurveType {
    pub fn is_quad(&self) -> bool {
        (self.a, self.b) == (0, 1)
    }

    pub fn is_octagon(&self) -> bool {
        (self.a, self.b) == (1, 1)
    }
}

pub fn curve_type(labels: &TetLabels) -> Option<CurveType> {
    let (c1, c2, c3) = column_sums(labels);
    let (d1, d2) = ((c1 - c2) / 2, (c1 - c3) / 2);
    if d1 == 0 && d2 == 0 {
        return None;
    }
    let g = gcd(d1, d2);
    Some(CurveType { a: d1 / g, b: d2 / g, multiplicity: g })
}

fn all_unit_weights(spine: &AbstractSpine) -> bool {
    !spine.is_augmented()
        && spine.faces().iter().all(|f| f.chi == 1)
        && spine.edges().iter().all(|e| e.chi == 1)
}

/// `sum_f u_f + sum_v [gcd(C1-C2, C1-C3)/2 + C2/2 + C3/2 - 3 C1/2]`.
pub fn surface_euler_char(spine: &AbstractSpine, coloring: &Coloring) -> Result<i64, SurfaceError> {
    check_coloring(spine, coloring)?;
    if !all_unit_weights(spine) {
        return Err(SurfaceError::NotClosed);
    }
    let mut twice: i64 = 2 * coloring.colors().iter().map(|&u| u as i64).sum::<i64>();
    for l in vertex_labelings(spine, coloring) {
        let (c1, c2, c3) = column_sums(&l);
        twice += gcd(c1 - c2, c1 - c3) as i64 + c2 as i64 + c3 as i64 - 3 * c1 as i64;
    }
    debug_assert!(twice % 2 == 0);
    Ok(twice / 2)
}

fn vertex_q(l: &TetLabels) -> i64 {
    let (c1, c2, c3) = column_sums(l);
    ((c1 - c2) * (c1 - c3) / 2 + c1) as i64
}

/// `Q(F) = sum_f -2 chi(f) u_f + sum_v [(C1-C2)(C1-C3)/2 + C1]`.
pub fn q_value(spine: &AbstractSpine, coloring: &Coloring) -> Result<i64, SurfaceError> {
    check_coloring(spine, coloring)?;
    let faces: i64 = spine
        .faces()
        .iter()
        .zip(coloring.colors())
        .map(|(f, &u)| -2 * f.chi as i64 * u as i64)
        .sum();
    let verts: i64 = vertex_labelings(spine, coloring).iter().map(vertex_q).sum();
    Ok(faces + verts)
}

/// Per-vertex column orderings compatible with a coloring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorInfo {
    /// Lexicographically smallest compatible ordering at each vertex.
    pub canonical: Vec<[u8; 3]>,
    /// All compatible orderings at each vertex; the compatible sectors are
    /// their product.
    pub compatible: Vec<Vec<[u8; 3]>>,
}

impl SectorInfo {
    pub fn shares_sector_with(&self, other: &SectorInfo) -> bool {
        self.compatible.len() == other.compatible.len()
            && self
                .compatible
                .iter()
                .zip(&other.compatible)
                .all(|(a, b)| a.iter().any(|x| b.contains(x)))
    }

    /// Number of compatible sectors (product over vertices).
    pub fn count(&self) -> u128 {
        self.compatible.iter().map(|c| c.len() as u128).product()
    }
}

pub fn sector_of(spine: &AbstractSpine, coloring: &Coloring) -> Result<SectorInfo, SurfaceError> {
    check_coloring(spine, coloring)?;
    let mut canonical = Vec::new();
    let mut compatible = Vec::new();
    for l in vertex_labelings(spine, coloring) {
        let s = l.raw_column_sums();
        let ok: Vec<[u8; 3]> = COLUMN_ORDERS
            .iter()
            .copied()
            .filter(|o| s[o[0] as usize] >= s[o[1] as usize] && s[o[1] as usize] >= s[o[2] as usize])
            .collect();
        canonical.push(ok[0]);
        compatible.push(ok);
    }
    Ok(SectorInfo { canonical, compatible })
}

/// `sum_v (delta_v gamma'_v + delta'_v gamma_v)/2` with `delta = C1 - C2`,
/// `gamma = C1 - C3`; equals `Q(F+F') - Q(F) - Q(F')` within a sector.
pub fn q_cross_term(spine: &AbstractSpine, f1: &Coloring, f2: &Coloring) -> Result<i64, SurfaceError> {
    let s1 = sector_of(spine, f1)?;
    let s2 = sector_of(spine, f2)?;
    if !s1.shares_sector_with(&s2) {
        return Err(SurfaceError::NoCommonSector);
    }
    let mut total = 0i64;
    for (l1, l2) in vertex_labelings(spine, f1).iter().zip(vertex_labelings(spine, f2).iter()) {
        let (a1, a2, a3) = column_sums(l1);
        let (b1, b2, b3) = column_sums(l2);
        let (d1, g1) = ((a1 - a2) as i64, (a1 - a3) as i64);
        let (d2, g2) = ((b1 - b2) as i64, (b1 - b3) as i64);
        total += (d1 * g2 + d2 * g1) / 2;
    }
    Ok(total)
}

/// Largest `k` with `F - k dM` admissible, where `dM` adds 2 to every
/// unforced face. On unaugmented spines this is the minimum strand number
/// over all edges.
pub fn peel_index(spine: &AbstractSpine, coloring: &Coloring) -> Result<u32, SurfaceError> {
    check_coloring(spine, coloring)?;
    let u = coloring.colors();
    let grows = |f: usize| spine.faces()[f].forced.is_none() as i64;
    let mut best: Option<i64> = None;
    let mut cap = |x: i64, rate: i64| {
        if rate > 0 {
            let k = x / rate;
            best = Some(best.map_or(k, |b| b.min(k)));
        }
    };
    for e in spine.edges() {
        let [x, y, z] = e.faces;
        for (i, j, l) in [(x, y, z), (y, z, x), (x, z, y)] {
            let strand = (u[i] as i64 + u[j] as i64 - u[l] as i64) / 2;
            cap(strand, grows(i) + grows(j) - grows(l));
        }
    }
    for (f, &c) in u.iter().enumerate() {
        cap(c as i64, 2 * grows(f));
    }
    Ok(best.unwrap_or(0).max(0) as u32)
}

pub fn is_normal(spine: &AbstractSpine, coloring: &Coloring) -> Result<bool, SurfaceError> {
    check_coloring(spine, coloring)?;
    Ok(vertex_labelings(spine, coloring).iter().all(|l| {
        let (c1, c2, _) = column_sums(l);
        c1 == c2
    }))
}

/// Facewise sum; forced faces keep their forced color.
pub fn add_colorings(spine: &AbstractSpine, f1: &Coloring, f2: &Coloring) -> Result<Coloring, SurfaceError> {
    for f in [f1, f2] {
        if f.len() != spine.face_count() {
            return Err(SurfaceError::WrongLength { expected: spine.face_count(), got: f.len() });
        }
    }
    let sum: Vec<u32> = spine
        .faces()
        .iter()
        .zip(f1.colors().iter().zip(f2.colors()))
        .map(|(face, (&x, &y))| face.forced.unwrap_or(x + y))
        .collect();
    let out = Coloring::new(sum);
    check_coloring(spine, &out)?;
    Ok(out)
}

/// `F + k dM`: every unforced color grows by `2k`.
pub fn add_boundary(spine: &AbstractSpine, coloring: &Coloring, k: u32) -> Result<Coloring, SurfaceError> {
    check_coloring(spine, coloring)?;
    Ok(Coloring::new(
        spine
            .faces()
            .iter()
            .zip(coloring.colors())
            .map(|(f, &u)| if f.forced.is_some() { u } else { u + 2 * k })
            .collect(),
    ))
}

/// `F - k dM`; fails when `k` exceeds the peel index.
pub fn peel(spine: &AbstractSpine, coloring: &Coloring, k: u32) -> Result<Coloring, SurfaceError> {
    let index = peel_index(spine, coloring)?;
    if k > index {
        return Err(SurfaceError::PeelTooDeep { k, index });
    }
    Ok(Coloring::new(
        spine
            .faces()
            .iter()
            .zip(coloring.colors())
            .map(|(f, &u)| if f.forced.is_some() { u } else { u - 2 * k })
            .collect(),
    ))
}

/// Per-vertex data of a surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexInvariants {
    pub labels: TetLabels,
    pub column_sums: (u64, u64, u64),
    pub circles: u64,
    pub curve_type: Option<CurveType>,
}

/// Everything the crate computes about one coloring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceInvariants {
    /// `None` on augmented spines, where the closed-case formula does not apply.
    pub euler_char: Option<i64>,
    pub q_value: i64,
    pub peel_index: u32,
    pub is_normal: bool,
    pub sector: SectorInfo,
    pub vertices: Vec<VertexInvariants>,
}

pub fn invariants(spine: &AbstractSpine, coloring: &Coloring) -> Result<SurfaceInvariants, SurfaceError> {
    check_coloring(spine, coloring)?;
    let euler_char = match surface_euler_char(spine, coloring) {
        Ok(x) => Some(x),
        Err(SurfaceError::NotClosed) => None,
        Err(e) => return Err(e),
    };
    let vertices = vertex_labelings(spine, coloring)
        .into_iter()
        .map(|l| VertexInvariants {
            labels: l,
            column_sums: column_sums(&l),
            circles: circle_count(&l),
            curve_type: curve_type(&l),
        })
        .collect();
    Ok(SurfaceInvariants {
        euler_char,
        q_value: q_value(spine, coloring)?,
        peel_index: peel_index(spine, coloring)?,
        is_normal: is_normal(spine, coloring)?,
        sector: sector_of(spine, coloring)?,
        vertices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census;
    use crate::spine::dual_spine;

    fn fig8() -> AbstractSpine {
        dual_spine(&census::figure_eight())
    }

    fn c(v: &[u32]) -> Coloring {
        Coloring::new(v.to_vec())
    }

    #[test]
    fn admissibility_examples() {
        let s = fig8();
        assert!(is_admissible_coloring(&s, &c(&[0, 0])));
        assert!(is_admissible_coloring(&s, &c(&[2, 2])));
        assert!(!is_admissible_coloring(&s, &c(&[1, 0])));
        assert!(!is_admissible_coloring(&s, &c(&[0])));
    }

    #[test]
    fn enumeration_small() {
        let s = fig8();
        assert_eq!(enumerate_colorings(&s, 0).collect::<Vec<_>>(), alloc::vec![c(&[0, 0])]);
        let two: Vec<_> = enumerate_colorings(&s, 2).collect();
        assert!(two.contains(&c(&[0, 0])) && two.contains(&c(&[2, 2])));
        let brute: Vec<_> = (0..=2u32)
            .flat_map(|x| (0..=2u32).map(move |y| c(&[x, y])))
            .filter(|f| is_admissible_coloring(&s, f))
            .collect();
        assert_eq!(two, brute);
    }

    #[test]
    fn circle_counts() {
        assert_eq!(circle_count(&TetLabels::splat(2)), 4);
        assert_eq!(circle_count(&TetLabels::new(1, 1, 0, 1, 1, 0)), 1);
        assert_eq!(circle_count(&TetLabels::new(1, 1, 2, 1, 1, 2)), 1);
    }

    #[test]
    fn curve_types() {
        let q = curve_type(&TetLabels::new(1, 1, 0, 1, 1, 0)).unwrap();
        assert!(q.is_quad() && q.multiplicity == 1);
        let o = curve_type(&TetLabels::new(1, 1, 2, 1, 1, 2)).unwrap();
        assert!(o.is_octagon() && o.multiplicity == 1);
        assert!(curve_type(&TetLabels::splat(2)).is_none());
        let two = curve_type(&TetLabels::new(2, 2, 0, 2, 2, 0)).unwrap();
        assert_eq!((two.a, two.b, two.multiplicity), (0, 1, 2));
    }

    #[test]
    fn boundary_invariants() {
        let s = fig8();
        let b = s.boundary_coloring().unwrap();
        assert_eq!(surface_euler_char(&s, &b).unwrap(), 0);
        assert_eq!(q_value(&s, &b).unwrap(), -4 * s.euler_characteristic());
        assert_eq!(peel_index(&s, &b).unwrap(), 1);
        assert!(is_normal(&s, &b).unwrap());
        assert_eq!(q_value(&s, &c(&[0, 0])).unwrap(), 0);
        assert_eq!(surface_euler_char(&s, &c(&[0, 0])).unwrap(), 0);
    }

    #[test]
    fn sectors() {
        let s = fig8();
        let z = sector_of(&s, &c(&[0, 0])).unwrap();
        assert_eq!(z.count(), 36);
        assert!(z.canonical.iter().all(|o| *o == [0, 1, 2]));
        assert_eq!(q_cross_term(&s, &c(&[0, 0]), &c(&[4, 2])).unwrap(), 0);
        let b = s.boundary_coloring().unwrap();
        assert_eq!(q_cross_term(&s, &b, &b).unwrap(), 0);
    }

    #[test]
    fn add_and_peel() {
        let s = fig8();
        let f = c(&[4, 2]);
        let b = s.boundary_coloring().unwrap();
        assert_eq!(add_colorings(&s, &f, &c(&[0, 0])).unwrap(), f);
        let shifted = add_boundary(&s, &f, 3).unwrap();
        assert_eq!(peel_index(&s, &shifted).unwrap(), 3 + peel_index(&s, &f).unwrap());
        assert_eq!(peel(&s, &shifted, 3).unwrap(), f);
        assert!(peel(&s, &f, 1).is_err());
        assert_eq!(add_colorings(&s, &f, &b).unwrap(), add_boundary(&s, &f, 1).unwrap());
    }

    #[test]
    fn augmented_peel_and_q() {
        let s = census::augmented_example();
        let base = c(&[0, 1, 1]);
        assert!(is_admissible_coloring(&s, &base));
        assert_eq!(peel_index(&s, &base).unwrap(), 0);
        let up = add_boundary(&s, &base, 2).unwrap();
        assert_eq!(up, c(&[4, 5, 1]));
        assert_eq!(peel_index(&s, &up).unwrap(), 2);
        assert_eq!(
            q_value(&s, &up).unwrap(),
            q_value(&s, &base).unwrap() - 8 * s.euler_characteristic()
        );
        assert!(surface_euler_char(&s, &base).is_err());
        assert_eq!(invariants(&s, &base).unwrap().euler_char, None);
    }
}
