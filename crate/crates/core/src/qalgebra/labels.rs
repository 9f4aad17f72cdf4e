use core::fmt;

/// Six labels of a tetrahedral net in the layout
///
/// ```text
/// a b e
/// c d f
/// ```
///
/// Columns `(a,c)`, `(b,d)`, `(e,f)` are opposite edges; the vertex triples are
/// `(a,d,e)`, `(b,c,e)`, `(a,b,f)`, `(c,d,f)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TetLabels {
    pub a: u32,
    pub b: u32,
    pub e: u32,
    pub c: u32,
    pub d: u32,
    pub f: u32,
}

impl TetLabels {
    /// Positional constructor in reading order `(a, b, e; c, d, f)`.
    pub const fn new(a: u32, b: u32, e: u32, c: u32, d: u32, f: u32) -> Self {
        TetLabels { a, b, e, c, d, f }
    }

    pub const fn splat(u: u32) -> Self {
        TetLabels::new(u, u, u, u, u, u)
    }

    pub fn from_array(x: [u32; 6]) -> Self {
        TetLabels::new(x[0], x[1], x[2], x[3], x[4], x[5])
    }

    /// Labels in reading order `[a, b, e, c, d, f]`.
    pub fn to_array(&self) -> [u32; 6] {
        [self.a, self.b, self.e, self.c, self.d, self.f]
    }

    /// `[(top, bottom); 3]`, i.e. `(a,c)`, `(b,d)`, `(e,f)`.
    pub fn columns(&self) -> [(u32, u32); 3] {
        [(self.a, self.c), (self.b, self.d), (self.e, self.f)]
    }

    /// Unsorted column sums in column order.
    pub fn raw_column_sums(&self) -> [u64; 3] {
        self.columns().map(|(x, y)| x as u64 + y as u64)
    }

    pub fn vertex_triples(&self) -> [(u32, u32, u32); 4] {
        [
            (self.a, self.d, self.e),
            (self.b, self.c, self.e),
            (self.a, self.b, self.f),
            (self.c, self.d, self.f),
        ]
    }

    pub fn is_admissible(&self) -> bool {
        self.vertex_triples().iter().all(|&(x, y, z)| super::is_admissible(x, y, z))
    }

    pub fn total(&self) -> u64 {
        self.to_array().iter().map(|&x| x as u64).sum()
    }

    /// Half vertex sums `A_j`, in vertex-triple order. Meaningful when admissible.
    pub fn half_vertex_sums(&self) -> [u64; 4] {
        self.vertex_triples().map(|(x, y, z)| (x as u64 + y as u64 + z as u64) / 2)
    }

    /// Half cycle sums `B_i`: half the sum of the four labels outside column `i`.
    pub fn half_cycle_sums(&self) -> [u64; 4 - 1] {
        let l = self.total();
        self.raw_column_sums().map(|c| (l - c) / 2)
    }

    pub fn max_color(&self) -> u32 {
        self.to_array().into_iter().max().unwrap_or(0)
    }

    /// Adds `2k` to every label.
    pub fn shifted(&self, k: u32) -> Self {
        TetLabels::from_array(self.to_array().map(|x| x + 2 * k))
    }

    /// Applies a symmetry of the tetrahedron: column `i` of the result is
    /// column `perm[i]` of `self`, and the columns whose bit is set in `flips`
    /// have top and bottom exchanged. `flips` must have even popcount for the
    /// result to be a symmetry; odd masks are rejected with `None`.
    pub fn permuted(&self, perm: [usize; 3], flips: u8) -> Option<Self> {
        if flips.count_ones() % 2 != 0 || flips >= 8 {
            return None;
        }
        let mut seen = [false; 3];
        for &p in &perm {
            if p > 2 || seen[p] {
                return None;
            }
            seen[p] = true;
        }
        let cols = self.columns();
        let mut out = [(0, 0); 3];
        for i in 0..3 {
            let (x, y) = cols[perm[i]];
            out[i] = if flips & (1 << i) != 0 { (y, x) } else { (x, y) };
        }
        Some(TetLabels::new(out[0].0, out[1].0, out[2].0, out[0].1, out[1].1, out[2].1))
    }

    /// All 24 symmetric relabelings, starting with the identity.
    pub fn symmetries(&self) -> impl Iterator<Item = ([usize; 3], u8, TetLabels)> + '_ {
        const PERMS: [[usize; 3]; 6] =
            [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        const FLIPS: [u8; 4] = [0b000, 0b011, 0b101, 0b110];
        PERMS.into_iter().flat_map(move |p| {
            FLIPS.into_iter().map(move |fl| (p, fl, self.permuted(p, fl).expect("valid symmetry")))
        })
    }
}

impl fmt::Display for TetLabels {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{};{},{},{})", self.a, self.b, self.e, self.c, self.d, self.f)
    }
}

/// Column sums sorted descending, `C1 >= C2 >= C3`.
pub fn column_sums(labels: &TetLabels) -> (u64, u64, u64) {
    let mut s = labels.raw_column_sums();
    s.sort_unstable_by(|x, y| y.cmp(x));
    (s[0], s[1], s[2])
}
