use proptest::prelude::*;
use tvsum_core::census;
use tvsum_core::spine::{dual_spine, AbstractSpine};
use tvsum_core::surfaces::{
    add_boundary, add_colorings, enumerate_colorings, is_admissible_coloring, peel_index, q_cross_term,
    q_value, sector_of, surface_euler_char, Coloring,
};

fn spines() -> Vec<(&'static str, AbstractSpine)> {
    vec![
        ("fig8", dual_spine(&census::figure_eight())),
        ("one_tet", dual_spine(&census::one_tet_two_edges())),
        ("chi_neg", dual_spine(&census::two_tet_one_edge())),
        ("augmented", census::augmented_example()),
    ]
}

fn all(spine: &AbstractSpine, n: u32) -> Vec<Coloring> {
    enumerate_colorings(spine, n).collect()
}

/// Largest `k` with `F - j dM` admissible for every `j <= k`, by direct
/// subtraction.
fn peel_by_subtraction(spine: &AbstractSpine, f: &Coloring) -> u32 {
    let mut k = 0;
    loop {
        let next: Option<Vec<u32>> = spine
            .faces()
            .iter()
            .zip(f.colors())
            .map(|(face, &u)| if face.forced.is_some() { Some(u) } else { u.checked_sub(2 * (k + 1)) })
            .collect();
        match next {
            Some(c) if is_admissible_coloring(spine, &Coloring::new(c.clone())) => k += 1,
            _ => return k,
        }
    }
}

#[test]
fn enumeration_matches_brute_force() {
    for (name, s) in spines() {
        let n = if s.face_count() <= 2 { 14 } else { 8 };
        let nf = s.face_count() as u32;
        let mut brute = Vec::new();
        for i in 0..(n as u64 + 1).pow(nf) {
            let mut c = vec![0u32; nf as usize];
            let mut x = i;
            for slot in c.iter_mut().rev() {
                *slot = (x % (n as u64 + 1)) as u32;
                x /= n as u64 + 1;
            }
            let c = Coloring::new(c);
            if is_admissible_coloring(&s, &c) {
                brute.push(c);
            }
        }
        assert_eq!(all(&s, n), brute, "{name}");
    }
}

#[test]
fn euler_char_lower_bounds_q() {
    for (name, s) in spines() {
        if s.is_augmented() {
            continue;
        }
        for f in all(&s, 12) {
            let chi = surface_euler_char(&s, &f).unwrap();
            let q = q_value(&s, &f).unwrap();
            assert!(-2 * chi <= q, "{name} {f:?}: chi {chi}, Q {q}");
        }
    }
}

#[test]
fn boundary_shift_moves_q_linearly() {
    for (name, s) in spines() {
        let chi = s.euler_characteristic();
        for f in all(&s, 8) {
            let q = q_value(&s, &f).unwrap();
            for k in 0..=5 {
                let g = add_boundary(&s, &f, k).unwrap();
                assert_eq!(q_value(&s, &g).unwrap(), q - 4 * k as i64 * chi, "{name} {f:?} k={k}");
            }
        }
    }
}

#[test]
fn cross_term_identity_within_sectors() {
    // Sums on augmented spines keep the forced color and need not be admissible.
    for (name, s) in spines().into_iter().filter(|(_, s)| !s.is_augmented()) {
        let fs = all(&s, if s.face_count() <= 2 { 8 } else { 4 });
        let mut pairs = 0;
        for f1 in &fs {
            for f2 in &fs {
                if !sector_of(&s, f1).unwrap().shares_sector_with(&sector_of(&s, f2).unwrap()) {
                    assert!(q_cross_term(&s, f1, f2).is_err());
                    continue;
                }
                let cross = q_cross_term(&s, f1, f2).unwrap();
                let sum = add_colorings(&s, f1, f2).unwrap();
                assert!(cross >= 0);
                assert_eq!(
                    q_value(&s, &sum).unwrap(),
                    q_value(&s, f1).unwrap() + q_value(&s, f2).unwrap() + cross,
                    "{name} {f1:?} + {f2:?}"
                );
                pairs += 1;
            }
        }
        assert!(pairs > fs.len(), "{name}: {pairs}");
    }
}

#[test]
fn peel_index_matches_subtraction() {
    for (name, s) in spines() {
        for f in all(&s, if s.face_count() <= 2 { 16 } else { 10 }) {
            assert_eq!(peel_index(&s, &f).unwrap(), peel_by_subtraction(&s, &f), "{name} {f:?}");
        }
    }
}

/// On the figure-eight spine the 0-peelable colorings are exactly `(0,0)`,
/// `(2j,4j)` and `(4j,2j)`, with `Q = 8j^2 + 4j`. This pins down every level
/// set of `Q` on 0-peelable colorings.
#[test]
fn figure_eight_level_sets() {
    let s = dual_spine(&census::figure_eight());
    let mut found = Vec::new();
    for f in all(&s, 60) {
        if peel_index(&s, &f).unwrap() == 0 {
            found.push(f.colors().to_vec());
        }
    }
    let mut expected = vec![vec![0, 0]];
    for j in 1..=15u32 {
        expected.push(vec![2 * j, 4 * j]);
        expected.push(vec![4 * j, 2 * j]);
    }
    found.sort();
    expected.sort();
    assert_eq!(found, expected);
    for c in found {
        let j = c.iter().max().unwrap() / 4;
        assert_eq!(q_value(&s, &Coloring::new(c)).unwrap(), (8 * j * j + 4 * j) as i64);
    }
}

/// Counting 0-peelable colorings with `Q <= level` gives the same answer
/// whether colors go up to 16 or 24: the level sets are finite and already
/// exhausted. The one-tetrahedron spine is left out, see below.
#[test]
fn level_sets_are_finite() {
    for (name, s) in spines().into_iter().filter(|(n, _)| *n != "one_tet") {
        let count = |n: u32, level: i64| {
            all(&s, n)
                .into_iter()
                .filter(|f| peel_index(&s, f).unwrap() == 0 && q_value(&s, f).unwrap() <= level)
                .count()
        };
        for level in [0, 4, 12, 20] {
            assert_eq!(count(16, level), count(24, level), "{name} level {level}");
        }
    }
}

/// The synthetic `chi = 1` spine does not come from an efficient
/// triangulation, and finiteness fails there: every `(0, n)` is 0-peelable
/// with `Q = 0`.
#[test]
fn one_tet_has_an_infinite_level_set() {
    let s = dual_spine(&census::one_tet_two_edges());
    for n in 0..=40 {
        let f = Coloring::new(vec![0, n]);
        assert!(is_admissible_coloring(&s, &f));
        assert_eq!(peel_index(&s, &f).unwrap(), 0);
        assert_eq!(q_value(&s, &f).unwrap(), 0);
    }
}

fn pool(name: &str, n: u32) -> (AbstractSpine, Vec<Coloring>) {
    let s = spines().into_iter().find(|(x, _)| *x == name).unwrap().1;
    let fs = all(&s, n);
    (s, fs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn peeling_then_adding_restores(idx in any::<prop::sample::Index>(), name in prop::sample::select(vec!["fig8", "one_tet", "chi_neg", "augmented"])) {
        let (s, fs) = pool(name, 10);
        let f = idx.get(&fs);
        let k = peel_index(&s, f).unwrap();
        let base = tvsum_core::surfaces::peel(&s, f, k).unwrap();
        prop_assert_eq!(peel_index(&s, &base).unwrap(), 0);
        prop_assert_eq!(&add_boundary(&s, &base, k).unwrap(), f);
        prop_assert_eq!(q_value(&s, f).unwrap(), q_value(&s, &base).unwrap() - 4 * k as i64 * s.euler_characteristic());
    }

    #[test]
    fn sums_of_colorings_are_admissible(i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let (s, fs) = pool("chi_neg", 8);
        let (f1, f2) = (i.get(&fs), j.get(&fs));
        let sum = add_colorings(&s, f1, f2).unwrap();
        prop_assert!(is_admissible_coloring(&s, &sum));
        prop_assert_eq!(&sum, &add_colorings(&s, f2, f1).unwrap());
        prop_assert!(peel_index(&s, &sum).unwrap() >= peel_index(&s, f1).unwrap() + peel_index(&s, f2).unwrap());
    }

    #[test]
    fn cross_term_nonnegative(i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let (s, fs) = pool("chi_neg", 10);
        let (f1, f2) = (i.get(&fs), j.get(&fs));
        if let Ok(cross) = q_cross_term(&s, f1, f2) {
            prop_assert!(cross >= 0);
            let sum = add_colorings(&s, f1, f2).unwrap();
            prop_assert_eq!(q_value(&s, &sum).unwrap(), q_value(&s, f1).unwrap() + q_value(&s, f2).unwrap() + cross);
        }
    }
}
