use proptest::prelude::*;
use tvsum_core::census;
use tvsum_core::qalgebra::QContext;
use tvsum_core::spine::{dual_spine, AbstractSpine};
use tvsum_core::statesum::{
    contribution, contribution_definitional, contribution_shift, e_infinity, theorem_sum, Sequential,
    SixjCache, SumCase, SumOptions,
};
use tvsum_core::surfaces::{enumerate_colorings, peel_index, q_value, Coloring};
use tvsum_core::Real;

fn half() -> QContext {
    QContext::parse("1/2", 128).unwrap()
}

fn census_spines() -> Vec<(&'static str, AbstractSpine)> {
    vec![
        ("fig8", dual_spine(&census::figure_eight())),
        ("one_tet", dual_spine(&census::one_tet_two_edges())),
        ("chi_neg", dual_spine(&census::two_tet_one_edge())),
    ]
}

/// `(1-q)^(-#f) K^(#v) t^Q`, rebuilt from the context rather than taken from
/// the contribution record.
fn bound(ctx: &QContext, s: &AbstractSpine, f: &Coloring) -> Real {
    let nf = s.faces().iter().filter(|x| x.chi == 1).count() as i64;
    ctx.one_minus_q()
        .powi(-nf)
        .mul(&ctx.k_constant().powi(s.vertices().len() as i64))
        .mul(&ctx.t_pow(q_value(s, f).unwrap()))
}

#[test]
fn contributions_within_bound() {
    let ctx = half();
    let cache = SixjCache::new();
    let mut spines = census_spines();
    spines.push(("augmented", census::augmented_example()));
    for (name, s) in spines {
        for f in enumerate_colorings(&s, 10) {
            let e = contribution(&ctx, &cache, &s, &f).unwrap();
            assert!(e.value.abs() <= bound(&ctx, &s, &f), "{name} {f:?}");
            assert!(e.value.abs() <= e.bound, "{name} {f:?}");
        }
    }
}

#[test]
fn definitional_and_reparsed_agree() {
    let ctx = half();
    let cache = SixjCache::new();
    let tol = 2f64.powi(16 - 128);
    for (name, s) in census_spines() {
        for f in enumerate_colorings(&s, 8) {
            let a = contribution(&ctx, &cache, &s, &f).unwrap().value;
            let b = contribution_definitional(&ctx, &s, &f).unwrap();
            let rel = a.sub(&b).div(&b).abs().to_f64();
            assert!(rel <= tol, "{name} {f:?}: {rel:e}");
        }
    }
}

#[test]
fn absolute_partial_sums_grow_under_majorant() {
    let ctx = half();
    let cache = SixjCache::new();
    let s = dual_spine(&census::two_tet_one_edge());
    let opts = SumOptions::default();
    let mut last = ctx.zero();
    for n in [2, 4, 8, 12, 16] {
        let r = theorem_sum(&ctx, &cache, &s, SumCase::ChiNegative, n, &opts, &Sequential).unwrap();
        assert!(r.abs_partial_sum >= last, "n = {n}");
        assert!(r.abs_partial_sum <= *r.majorant.as_ref().unwrap());
        last = r.abs_partial_sum;
    }
}

#[test]
fn cesaro_estimate_meets_limit_series() {
    let ctx = half();
    let cache = SixjCache::new();
    for s in [dual_spine(&census::figure_eight()), census::augmented_example()] {
        let r = theorem_sum(&ctx, &cache, &s, SumCase::ChiZero, 40, &SumOptions::default(), &Sequential).unwrap();
        let a = r.agreement.unwrap();
        assert!(a.agrees, "difference {} band {}", a.difference.to_f64(), a.band_sum.to_f64());
        assert!(r.n0.is_some());
    }
}

#[test]
fn chi_one_sequence_meets_limit_series() {
    let ctx = half();
    let cache = SixjCache::new();
    let s = dual_spine(&census::one_tet_two_edges());
    let r = theorem_sum(&ctx, &cache, &s, SumCase::ChiOne, 20, &SumOptions::default(), &Sequential).unwrap();
    assert!(r.agreement.unwrap().agrees);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// On the figure-eight spine (`chi = 0`) the shifted contributions
    /// themselves converge to the limit contribution.
    #[test]
    fn shifted_contributions_converge(idx in any::<prop::sample::Index>()) {
        let ctx = QContext::parse("1/2", 160).unwrap();
        let cache = SixjCache::new();
        let s = dual_spine(&census::figure_eight());
        let s0: Vec<Coloring> = enumerate_colorings(&s, 12).filter(|f| peel_index(&s, f).unwrap() == 0).collect();
        let f = idx.get(&s0);
        let lim = e_infinity(&ctx, &cache, &s, f, 1e-30).unwrap();
        let e30 = contribution_shift(&ctx, &cache, &s, f, 30).unwrap().value;
        let scale = 1.0 + lim.value.abs().to_f64();
        prop_assert!(e30.sub(&lim.value).abs().to_f64() <= 1e-10 * scale);
    }
}
