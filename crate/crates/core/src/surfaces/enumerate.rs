use alloc::vec::Vec;

use super::Coloring;
use crate::qalgebra::is_admissible;
use crate::spine::AbstractSpine;

/// Depth-first stream of the admissible colorings with every color `<= N`,
/// in lexicographic order (face 0 most significant).
///
/// An edge is checked in full once its last face is assigned. An edge with
/// two faces assigned is pruned when the third color would have to exceed
/// `N` to satisfy the triangle inequalities.
pub struct ColoringIter {
    n: u32,
    lo: Vec<u32>,
    hi: Vec<u32>,
    full: Vec<Vec<[usize; 3]>>,
    partial: Vec<Vec<(usize, usize)>>,
    cur: Vec<u32>,
    started: bool,
    done: bool,
}

impl ColoringIter {
    pub fn new(spine: &AbstractSpine, n: u32) -> Self {
        ColoringIter::build(spine, n, None)
    }

    /// Only colorings whose face 0 carries `first`; used to split the
    /// enumeration into independent branches.
    pub fn with_first(spine: &AbstractSpine, n: u32, first: u32) -> Self {
        ColoringIter::build(spine, n, Some(first))
    }

    fn build(spine: &AbstractSpine, n: u32, first: Option<u32>) -> Self {
        let nf = spine.face_count();
        let mut lo = alloc::vec![0; nf];
        let mut hi = alloc::vec![n; nf];
        for (i, f) in spine.faces().iter().enumerate() {
            if let Some(c) = f.forced {
                lo[i] = c;
                hi[i] = c;
            }
        }
        if let (Some(v), true) = (first, nf > 0) {
            lo[0] = lo[0].max(v);
            hi[0] = hi[0].min(v);
        }
        let mut full = alloc::vec![Vec::new(); nf];
        let mut partial = alloc::vec![Vec::new(); nf];
        for e in spine.edges() {
            let mut s = e.faces;
            s.sort_unstable();
            full[s[2]].push(e.faces);
            if s[1] < s[2] {
                partial[s[1]].push((s[0], s[1]));
            }
        }
        let empty_range = lo.iter().zip(&hi).any(|(l, h)| l > h);
        ColoringIter {
            n,
            lo,
            hi,
            full,
            partial,
            cur: alloc::vec![0; nf],
            started: false,
            done: empty_range,
        }
    }

    fn ok(&self, i: usize) -> bool {
        let u = &self.cur;
        for &(x, y) in &self.partial[i] {
            if u[x].abs_diff(u[y]) > self.n {
                return false;
            }
        }
        self.full[i].iter().all(|&[x, y, z]| is_admissible(u[x], u[y], u[z]))
    }
}

impl Iterator for ColoringIter {
    type Item = Coloring;

    fn next(&mut self) -> Option<Coloring> {
        if self.done {
            return None;
        }
        let nf = self.cur.len();
        if nf == 0 {
            self.done = true;
            return Some(Coloring::new(Vec::new()));
        }
        let mut i;
        if !self.started {
            self.started = true;
            i = 0;
            self.cur[0] = self.lo[0];
        } else {
            i = nf - 1;
            self.cur[i] += 1;
        }
        loop {
            if self.cur[i] > self.hi[i] {
                if i == 0 {
                    self.done = true;
                    return None;
                }
                i -= 1;
                self.cur[i] += 1;
                continue;
            }
            if self.ok(i) {
                if i == nf - 1 {
                    return Some(Coloring::new(self.cur.clone()));
                }
                i += 1;
                self.cur[i] = self.lo[i];
                continue;
            }
            self.cur[i] += 1;
        }
    }
}

pub fn enumerate_colorings(spine: &AbstractSpine, n: u32) -> ColoringIter {
    ColoringIter::new(spine, n)
}
