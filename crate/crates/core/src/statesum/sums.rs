use alloc::vec::Vec;

use super::{bound_constant, contribution, e_infinity, Contribution, Executor, SixjCache, StateSumError, SumCase};
use crate::qalgebra::QContext;
use crate::real::{tree_sum, Real};
use crate::spine::AbstractSpine;
use crate::surfaces::{add_boundary, peel_index, q_value, Coloring, ColoringIter};

/// Admissible colorings with every color `<= n`, in lexicographic order. The
/// branches for each color of face 0 are enumerated through `exec`.
pub fn enumerate_with<E: Executor>(exec: &E, spine: &AbstractSpine, n: u32) -> Vec<Coloring> {
    if spine.face_count() == 0 || spine.faces()[0].forced.is_some() {
        return ColoringIter::new(spine, n).collect();
    }
    let firsts: Vec<u32> = (0..=n).collect();
    exec.map(&firsts, |&c| ColoringIter::with_first(spine, n, c).collect::<Vec<_>>())
        .into_iter()
        .flatten()
        .collect()
}

/// Tuning for [`theorem_sum`].
#[derive(Clone, Copy, Debug)]
pub struct SumOptions {
    /// Target width of the reported tolerance bands.
    pub tol: f64,
    /// Largest color used when enumerating 0-peelable colorings for limit
    /// series and tail bounds.
    pub ceiling: u32,
}

impl Default for SumOptions {
    fn default() -> Self {
        SumOptions { tol: 1e-3, ceiling: 60 }
    }
}

/// Two estimates of the same limit and whether they agree within their bands.
#[derive(Clone, Debug)]
pub struct Agreement {
    pub difference: Real,
    pub band_sum: Real,
    pub agrees: bool,
}

impl Agreement {
    fn new(a: &Real, band_a: &Real, b: &Real, band_b: &Real) -> Agreement {
        let difference = a.sub(b).abs();
        let band_sum = band_a.add(band_b);
        let agrees = difference <= band_sum;
        Agreement { difference, band_sum, agrees }
    }
}

/// Output of [`theorem_sum`].
///
/// The renormalizations that actually converge shift colors by `2k` per
/// boundary copy: `(2/N) S_N` for `chi = 0` and `t^(4N) S_(2N)` against
/// `(1/(1-q)) sum t^(2m(F)) E_oo(F)` for `chi = 1`. The `literal_*` fields hold
/// `(1/N) S_N`, `t^(8N) S_(2N)` and `(1/(1-q)) sum t^(4m(F)) E_oo(F)`.
#[derive(Clone, Debug)]
pub struct SumReport {
    pub case: SumCase,
    pub n: u32,
    /// Largest color in the partial sum: `n` (rounded down to even for
    /// `chi_zero`), or `2n` for `chi_one`.
    pub color_bound: u32,
    pub colorings: usize,
    pub partial_sum: Real,
    pub abs_partial_sum: Real,
    pub renormalized: Real,
    pub renormalized_band: Real,
    pub literal_renormalized: Real,
    pub literal_band: Real,
    /// `(index, renormalized value)` for every index up to `n`.
    pub sequence: Vec<(u32, Real)>,
    pub literal_sequence: Vec<(u32, Real)>,
    /// Successive differences of `sequence`.
    pub cauchy_deltas: Vec<Real>,
    /// First index after which `|cauchy_deltas|` never increases.
    pub n0: Option<u32>,
    pub series_value: Option<Real>,
    pub series_band: Option<Real>,
    pub literal_series: Option<Real>,
    pub literal_series_band: Option<Real>,
    /// Color bound at which the limit series was truncated.
    pub series_color_bound: Option<u32>,
    pub series_terms: usize,
    /// For `chi_negative`: bound on everything beyond the partial sum that is
    /// generated by enumerated 0-peelable colorings. Otherwise the bound tail
    /// of the limit series.
    pub tail_bound: Real,
    /// For `chi_negative`: `sum_(F in S_0) D t^Q(F) / (1 - t^(4|chi|))`, which
    /// dominates every absolute partial sum.
    pub majorant: Option<Real>,
    pub ceiling: u32,
    pub agreement: Option<Agreement>,
    pub literal_agreement: Option<Agreement>,
    pub converged: bool,
}

struct Evaluated {
    coloring: Coloring,
    c: Contribution,
}

fn sort_key(e: &Evaluated) -> (u32, u32, &[u32]) {
    (e.c.peel_index, e.c.max_color, e.coloring.colors())
}

fn evaluate<E: Executor>(
    ctx: &QContext,
    cache: &SixjCache,
    spine: &AbstractSpine,
    colorings: Vec<Coloring>,
    exec: &E,
) -> Result<Vec<Evaluated>, StateSumError> {
    let top = colorings.iter().map(|c| c.max_color()).max().unwrap_or(0) as usize;
    ctx.warm(4 * top + 64);
    let results = exec.map(&colorings, |f| contribution(ctx, cache, spine, f));
    let mut out = Vec::with_capacity(colorings.len());
    for (coloring, c) in colorings.into_iter().zip(results) {
        out.push(Evaluated { coloring, c: c? });
    }
    out.sort_by(|a, b| sort_key(a).cmp(&sort_key(b)));
    Ok(out)
}

/// Partial sum and absolute partial sum over colorings with max color `<= n`.
fn partial(ctx: &QContext, all: &[Evaluated], n: u32) -> (Real, Real, usize) {
    let vals: Vec<Real> = all.iter().filter(|e| e.c.max_color <= n).map(|e| e.c.value.clone()).collect();
    let abs: Vec<Real> = vals.iter().map(|v| v.abs()).collect();
    let p = ctx.work_bits();
    (tree_sum(&vals, p), tree_sum(&abs, p), vals.len())
}

fn deltas(seq: &[(u32, Real)]) -> Vec<Real> {
    seq.windows(2).map(|w| w[1].1.sub(&w[0].1)).collect()
}

/// First index `seq[i+1].0` such that `|deltas|` is nonincreasing from
/// delta `i` on.
pub fn cauchy_n0(seq: &[(u32, Real)]) -> Option<u32> {
    let d = deltas(seq);
    if d.is_empty() {
        return None;
    }
    let mut start = d.len() - 1;
    while start > 0 && d[start - 1].cmp_abs(&d[start]) != core::cmp::Ordering::Less {
        start -= 1;
    }
    Some(seq[start + 1].0)
}

/// Error band for a Cesàro-type sequence `a_n ~ L + c/n`: `n |a_n - a_(n-2)|`,
/// twice the first-order estimate of `|a_n - L|`.
fn cesaro_band(ctx: &QContext, seq: &[(u32, Real)]) -> Real {
    match seq {
        [.., (_, a), (n, b)] => b.sub(a).abs().mul(&ctx.real(*n as i64)),
        _ => infinite(ctx),
    }
}

/// Error band for a geometrically converging sequence: `|d| r / (1 - r)`
/// with `r` the larger of the last two difference ratios, falling back to
/// `n |d|` when the ratios do not contract.
fn geometric_band(ctx: &QContext, seq: &[(u32, Real)]) -> Real {
    let d = deltas(seq);
    let n = seq.last().map_or(0, |x| x.0);
    match d.as_slice() {
        [.., x, y, z] => {
            let (x, y, z) = (x.abs(), y.abs(), z.abs());
            if z.is_zero() {
                return z;
            }
            if y.is_zero() || x.is_zero() {
                return z.mul(&ctx.real(n as i64));
            }
            let r = y.div(&x).max(z.div(&y));
            if r < ctx.one() {
                z.mul(&r).div(&ctx.one().sub(&r))
            } else {
                z.mul(&ctx.real(n as i64))
            }
        }
        _ => infinite(ctx),
    }
}

fn infinite(ctx: &QContext) -> Real {
    ctx.one().mul_pow2(1 << 20)
}

/// 0-peelable colorings up to `ceiling`, lexicographic.
fn zero_peelable<E: Executor>(exec: &E, spine: &AbstractSpine, ceiling: u32) -> Result<Vec<Coloring>, StateSumError> {
    let mut out = Vec::new();
    for f in enumerate_with(exec, spine, ceiling) {
        if peel_index(spine, &f)? == 0 {
            out.push(f);
        }
    }
    Ok(out)
}

struct Series {
    value: Real,
    literal: Real,
    band: Real,
    literal_band: Real,
    color_bound: u32,
    terms: usize,
    tail: Real,
    truncated_at_ceiling: bool,
}

/// `sum_(F in S_0) w(F) E_oo(F)` truncated at the smallest even color bound
/// `K < ceiling` whose bound tail over `(K, ceiling]` is below `tol/2`.
/// `weight(F)` returns the corrected and literal weights as powers of `t`
/// together with the common prefactor.
#[allow(clippy::too_many_arguments)]
fn limit_series<E: Executor>(
    ctx: &QContext,
    cache: &SixjCache,
    spine: &AbstractSpine,
    s0: &[Coloring],
    opts: &SumOptions,
    prefactor: &Real,
    weight_exp: impl Fn(&Coloring) -> (i64, i64),
    exec: &E,
) -> Result<Series, StateSumError> {
    let d = bound_constant(ctx, spine);
    let p = ctx.work_bits();
    let mut bounds: Vec<(u32, Real, Real)> = Vec::with_capacity(s0.len());
    for f in s0 {
        let q = q_value(spine, f)?;
        let (w, wl) = weight_exp(f);
        let b = d.mul(&ctx.t_pow(q)).mul(prefactor);
        bounds.push((f.max_color(), b.mul(&ctx.t_pow(w)), b.mul(&ctx.t_pow(wl))));
    }
    let tail_above = |k: u32, lit: bool| -> Real {
        let xs: Vec<Real> = bounds
            .iter()
            .filter(|b| b.0 > k)
            .map(|b| if lit { b.2.clone() } else { b.1.clone() })
            .collect();
        tree_sum(&xs, p)
    };
    let half = Real::from_f64(opts.tol / 2.0, p);
    let mut k = 0u32;
    let mut truncated_at_ceiling = true;
    while k < opts.ceiling {
        if tail_above(k, false) <= half {
            truncated_at_ceiling = false;
            break;
        }
        k += 2;
    }
    let k = k.min(opts.ceiling);
    let chosen: Vec<Coloring> = s0.iter().filter(|f| f.max_color() <= k).cloned().collect();
    let limit_tol = (opts.tol * 1e-6).min(1e-20);
    let top = chosen.iter().map(|c| c.max_color()).max().unwrap_or(0) as usize;
    ctx.warm(4 * top + 256);
    let lims = exec.map(&chosen, |f| e_infinity(ctx, cache, spine, f, limit_tol));
    let mut terms = Vec::new();
    let mut lit_terms = Vec::new();
    let mut errs = Vec::new();
    let mut lit_errs = Vec::new();
    for (f, lim) in chosen.iter().zip(lims) {
        let lim = lim?;
        let (w, wl) = weight_exp(f);
        let scale = prefactor.mul(&ctx.t_pow(w));
        let lscale = prefactor.mul(&ctx.t_pow(wl));
        terms.push(lim.value.mul(&scale));
        lit_terms.push(lim.value.mul(&lscale));
        errs.push(lim.error.mul(&scale));
        lit_errs.push(lim.error.mul(&lscale));
    }
    let tail = tail_above(k, false);
    Ok(Series {
        value: tree_sum(&terms, p),
        literal: tree_sum(&lit_terms, p),
        band: tail.add(&tree_sum(&errs, p)),
        literal_band: tail_above(k, true).add(&tree_sum(&lit_errs, p)),
        color_bound: k,
        terms: chosen.len(),
        tail,
        truncated_at_ceiling,
    })
}

/// Partial sums of the state sum and their renormalized limits.
///
/// * `chi_negative`: `S_n` for even `n <= N`; absolute convergence is
///   certified by the geometric majorant over 0-peelable colorings.
/// * `chi_zero`: `(2/n) S_n` for even `n <= N` against `sum_(S_0) E_oo`.
/// * `chi_one`: `t^(4n) S_(2n)` for `n <= N` against
///   `(1/(1-q)) sum_(S_0) t^(2m(F)) E_oo(F)`.
pub fn theorem_sum<E: Executor>(
    ctx: &QContext,
    cache: &SixjCache,
    spine: &AbstractSpine,
    case: SumCase,
    n: u32,
    opts: &SumOptions,
    exec: &E,
) -> Result<SumReport, StateSumError> {
    let chi = spine.euler_characteristic();
    if !case.accepts(chi) {
        return Err(StateSumError::CaseMismatch { case, expected: case.expected(), chi });
    }
    if !(opts.tol > 0.0) {
        return Err(StateSumError::InvalidParameter("tol must be positive"));
    }
    let color_bound = match case {
        SumCase::ChiOne => 2 * n,
        SumCase::ChiZero => n - n % 2,
        SumCase::ChiNegative => n,
    };
    let all = evaluate(ctx, cache, spine, enumerate_with(exec, spine, color_bound), exec)?;
    let (partial_sum, abs_partial_sum, count) = partial(ctx, &all, color_bound);
    let s0 = zero_peelable(exec, spine, opts.ceiling)?;
    let p = ctx.work_bits();
    let tol = Real::from_f64(opts.tol, p);

    let mut sequence = Vec::new();
    let mut literal_sequence = Vec::new();
    match case {
        SumCase::ChiNegative => {
            for m in (0..=color_bound).step_by(2) {
                let (s, _, _) = partial(ctx, &all, m);
                sequence.push((m, s.clone()));
                literal_sequence.push((m, s));
            }
        }
        SumCase::ChiZero => {
            for m in (2..=color_bound).step_by(2) {
                let (s, _, _) = partial(ctx, &all, m);
                let inv = ctx.one().div(&ctx.real(m as i64));
                literal_sequence.push((m, s.mul(&inv)));
                sequence.push((m, s.mul(&inv).mul_pow2(1)));
            }
        }
        SumCase::ChiOne => {
            for m in 1..=n {
                let (s, _, _) = partial(ctx, &all, 2 * m);
                sequence.push((m, s.mul(&ctx.t_pow(4 * m as i64))));
                literal_sequence.push((m, s.mul(&ctx.t_pow(8 * m as i64))));
            }
        }
    }
    let cauchy_deltas = deltas(&sequence);
    let n0 = cauchy_n0(&sequence);
    let last = |s: &[(u32, Real)]| s.last().map_or_else(|| partial_sum.clone(), |x| x.1.clone());
    let renormalized = last(&sequence);
    let literal_renormalized = last(&literal_sequence);

    let report = match case {
        SumCase::ChiNegative => {
            let d = bound_constant(ctx, spine);
            let ratio = ctx.t_pow(-4 * chi);
            let geo = ctx.one().div(&ctx.one().sub(&ratio));
            let mut maj = Vec::new();
            let mut tail = Vec::new();
            for f in &s0 {
                let b = d.mul(&ctx.t_pow(q_value(spine, f)?)).mul(&geo);
                if let Some(kmin) = first_k_beyond(spine, f, color_bound) {
                    tail.push(b.mul(&ratio.powi(kmin as i64)));
                }
                maj.push(b);
            }
            let tail_bound = tree_sum(&tail, p);
            let converged = tail_bound <= tol;
            SumReport {
                case,
                n,
                color_bound,
                colorings: count,
                partial_sum,
                abs_partial_sum,
                renormalized,
                renormalized_band: tail_bound.clone(),
                literal_renormalized,
                literal_band: tail_bound.clone(),
                sequence,
                literal_sequence,
                cauchy_deltas,
                n0,
                series_value: None,
                series_band: None,
                literal_series: None,
                literal_series_band: None,
                series_color_bound: None,
                series_terms: 0,
                tail_bound,
                majorant: Some(tree_sum(&maj, p)),
                ceiling: opts.ceiling,
                agreement: None,
                literal_agreement: None,
                converged,
            }
        }
        SumCase::ChiZero | SumCase::ChiOne => {
            let (series, band, literal_band) = if case == SumCase::ChiZero {
                let s = limit_series(ctx, cache, spine, &s0, opts, &ctx.one(), |_| (0, 0), exec)?;
                (s, cesaro_band(ctx, &sequence), cesaro_band(ctx, &literal_sequence))
            } else {
                let pre = ctx.one().div(ctx.one_minus_q());
                let w = |f: &Coloring| (2 * f.m_even() as i64, 4 * f.m_even() as i64);
                let s = limit_series(ctx, cache, spine, &s0, opts, &pre, w, exec)?;
                (s, geometric_band(ctx, &sequence), geometric_band(ctx, &literal_sequence))
            };
            let agreement = Agreement::new(&renormalized, &band, &series.value, &series.band);
            let literal_agreement =
                Agreement::new(&literal_renormalized, &literal_band, &series.literal, &series.literal_band);
            let converged = agreement.agrees && agreement.band_sum <= tol && !series.truncated_at_ceiling;
            SumReport {
                case,
                n,
                color_bound,
                colorings: count,
                partial_sum,
                abs_partial_sum,
                renormalized,
                renormalized_band: band,
                literal_renormalized,
                literal_band,
                sequence,
                literal_sequence,
                cauchy_deltas,
                n0,
                series_value: Some(series.value),
                series_band: Some(series.band),
                literal_series: Some(series.literal),
                literal_series_band: Some(series.literal_band),
                series_color_bound: Some(series.color_bound),
                series_terms: series.terms,
                tail_bound: series.tail,
                majorant: None,
                ceiling: opts.ceiling,
                agreement: Some(agreement),
                literal_agreement: Some(literal_agreement),
                converged,
            }
        }
    };
    Ok(report)
}

/// Smallest `k` with `max(F + k dM) > bound`; `None` if the shifted colors
/// never exceed it (every face forced).
fn first_k_beyond(spine: &AbstractSpine, f: &Coloring, bound: u32) -> Option<u32> {
    if f.max_color() > bound {
        return Some(0);
    }
    let grow = spine
        .faces()
        .iter()
        .zip(f.colors())
        .filter(|(face, _)| face.forced.is_none())
        .map(|(_, &u)| u)
        .max()?;
    Some((bound - grow) / 2 + 1)
}

/// Enumerated tail bound for `k`-peelable colorings.
#[derive(Clone, Debug)]
pub struct TailReport {
    /// `t^(4k chi) sum D t^Q(F)` over `k`-peelable `F` with max color in
    /// `(n + 2k, ceiling]`.
    pub value: Real,
    pub n: u32,
    pub k: u32,
    pub ceiling: u32,
    pub colorings: usize,
}

pub fn tail_report<E: Executor>(
    ctx: &QContext,
    spine: &AbstractSpine,
    n: u32,
    k: u32,
    ceiling: u32,
    exec: &E,
) -> Result<TailReport, StateSumError> {
    let p = ctx.work_bits();
    let lo = n.saturating_add(2 * k);
    let mut terms: Vec<(u32, Coloring, i64)> = Vec::new();
    if lo < ceiling {
        for f in enumerate_with(exec, spine, ceiling) {
            if f.max_color() > lo && peel_index(spine, &f)? == k {
                let q = q_value(spine, &f)?;
                terms.push((f.max_color(), f, q));
            }
        }
    }
    terms.sort();
    let d = bound_constant(ctx, spine);
    let scale = ctx.t_pow(4 * k as i64 * spine.euler_characteristic());
    let xs: Vec<Real> = terms.iter().map(|(_, _, q)| d.mul(&ctx.t_pow(*q)).mul(&scale)).collect();
    Ok(TailReport { value: tree_sum(&xs, p), n, k, ceiling, colorings: xs.len() })
}

/// Truncated `Z_k = sum_(F in S_0) E_k(F)`.
#[derive(Clone, Debug)]
pub struct ZkReport {
    pub k: u32,
    pub value: Real,
    pub abs_value: Real,
    /// `sum D t^(Q(F) - 4k chi)` over 0-peelable `F` with max color in
    /// `(n_inner, ceiling]`.
    pub truncation_bound: Real,
    pub n_inner: u32,
    pub ceiling: u32,
    pub terms: usize,
}

#[allow(clippy::too_many_arguments)]
pub fn z_k<E: Executor>(
    ctx: &QContext,
    cache: &SixjCache,
    spine: &AbstractSpine,
    k: u32,
    n_inner: u32,
    ceiling: u32,
    exec: &E,
) -> Result<ZkReport, StateSumError> {
    let s0 = zero_peelable(exec, spine, ceiling.max(n_inner))?;
    let (inner, outer): (Vec<Coloring>, Vec<Coloring>) = s0.into_iter().partition(|f| f.max_color() <= n_inner);
    let mut shifted = Vec::with_capacity(inner.len());
    for f in &inner {
        shifted.push(add_boundary(spine, f, k)?);
    }
    let p = ctx.work_bits();
    // keep the 0-peelable order; shifting preserves max-color and lex order
    let top = shifted.iter().map(|c| c.max_color()).max().unwrap_or(0) as usize;
    ctx.warm(4 * top + 64);
    let vals = exec.map(&shifted, |f| contribution(ctx, cache, spine, f));
    let mut keyed = Vec::with_capacity(vals.len());
    for (f, v) in inner.iter().zip(vals) {
        keyed.push((f.max_color(), f.clone(), v?.value));
    }
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    let xs: Vec<Real> = keyed.iter().map(|x| x.2.clone()).collect();
    let abs: Vec<Real> = xs.iter().map(|x| x.abs()).collect();
    let d = bound_constant(ctx, spine);
    let shift = -4 * k as i64 * spine.euler_characteristic();
    let mut tb = Vec::new();
    for f in &outer {
        tb.push(d.mul(&ctx.t_pow(q_value(spine, f)? + shift)));
    }
    Ok(ZkReport {
        k,
        value: tree_sum(&xs, p),
        abs_value: tree_sum(&abs, p),
        truncation_bound: tree_sum(&tb, p),
        n_inner,
        ceiling,
        terms: xs.len(),
    })
}
