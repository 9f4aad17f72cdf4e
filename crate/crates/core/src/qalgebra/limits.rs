use super::symbols::sixj_unitary;
use super::{column_sums, QContext, QError, TetLabels};
use crate::real::{CompensatedSum, Real};

/// Hard ceiling on the shift index for the sequence-evaluated limits.
pub const K_CEILING: u32 = 512;

/// Which labels grow by `2k` when taking the limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LimitVariant {
    /// All six labels grow.
    AllGrow,
    /// `e` stays fixed.
    EFixed,
    /// `e` and `f` stay fixed.
    EAndFFixed,
}

impl LimitVariant {
    pub const ALL: [LimitVariant; 3] =
        [LimitVariant::AllGrow, LimitVariant::EFixed, LimitVariant::EAndFFixed];

    pub fn name(self) -> &'static str {
        match self {
            LimitVariant::AllGrow => "all_grow",
            LimitVariant::EFixed => "e_fixed",
            LimitVariant::EAndFFixed => "e_and_f_fixed",
        }
    }

    /// Whether `t^(-4k) 6j(shifted)` alternates with `(-1)^k`. With only `e`
    /// fixed, the dominant Tet term index moves by `3k`, so the sequence
    /// converges only after multiplying by `(-1)^k`.
    pub fn alternates(self) -> bool {
        self == LimitVariant::EFixed
    }

    /// The labeling after shifting the growing labels by `2k`.
    pub fn shift(self, l: &TetLabels, k: u32) -> TetLabels {
        let s = 2 * k;
        match self {
            LimitVariant::AllGrow => l.shifted(k),
            LimitVariant::EFixed => TetLabels::new(l.a + s, l.b + s, l.e, l.c + s, l.d + s, l.f + s),
            LimitVariant::EAndFFixed => TetLabels::new(l.a + s, l.b + s, l.e, l.c + s, l.d + s, l.f),
        }
    }
}

/// A limit value with how it was obtained.
#[derive(Clone, Debug)]
pub struct LimitValue {
    pub value: Real,
    /// Absolute error estimate: the analytic series tail for `AllGrow`, the
    /// last Cauchy difference for the sequence variants, 0 for exact zeros.
    pub error: Real,
    /// Series terms used, or the shift index reached.
    pub steps: u32,
}

/// `t^(-4k) 6j(shifted by 2k)`, times `(-1)^k` for the alternating variant.
pub fn shifted_sixj(ctx: &QContext, labels: &TetLabels, variant: LimitVariant, k: u32) -> Result<Real, QError> {
    let v = sixj_unitary(ctx, &variant.shift(labels, k))?.mul(&ctx.t_pow(-4 * k as i64));
    Ok(if variant.alternates() && k % 2 == 1 { v.neg() } else { v })
}

/// Limit of [`shifted_sixj`] as `k` grows.
pub fn sixj_infinity(
    ctx: &QContext,
    labels: &TetLabels,
    variant: LimitVariant,
    tol: f64,
) -> Result<LimitValue, QError> {
    if !labels.is_admissible() {
        return Err(QError::InadmissibleLabels(*labels));
    }
    if !(tol > 0.0) {
        return Err(QError::InvalidParameter("tol must be positive".into()));
    }
    match variant {
        LimitVariant::AllGrow => Ok(series(ctx, labels, tol)),
        _ => {
            if labels.a + labels.c != labels.b + labels.d {
                return Ok(LimitValue { value: ctx.zero(), error: ctx.zero(), steps: 0 });
            }
            sequence_limit(ctx, labels, variant, tol)
        }
    }
}

fn sequence_limit(
    ctx: &QContext,
    labels: &TetLabels,
    variant: LimitVariant,
    tol: f64,
) -> Result<LimitValue, QError> {
    let tol_r = Real::from_f64(tol, ctx.work_bits());
    let mut prev = shifted_sixj(ctx, labels, variant, 0)?;
    let mut last_delta = f64::INFINITY;
    for k in 1..=K_CEILING {
        let cur = shifted_sixj(ctx, labels, variant, k)?;
        let delta = cur.sub(&prev).abs();
        if delta < tol_r {
            return Ok(LimitValue { value: cur, error: delta, steps: k });
        }
        last_delta = delta.to_f64();
        prev = cur;
    }
    Err(QError::NonConvergence { k: K_CEILING as usize, last_delta })
}

/// Closed series for the all-grow limit:
///
/// `(1-q)(q;q)_oo sum_u (-1)^((C2+C3)/2+u) t^(E_u) / ((q;q)_u (q;q)_(u+d1) (q;q)_(u+d2))`
///
/// with `d1 = (C1-C2)/2`, `d2 = (C1-C3)/2` and
/// `E_u = 6u^2 + 2(2C1-C2-C3+1)u + (C1-C2)(C1-C3)/2 + C1`.
fn series(ctx: &QContext, labels: &TetLabels, tol: f64) -> LimitValue {
    let (c1, c2, c3) = column_sums(labels);
    let (c1, c2, c3) = (c1 as i64, c2 as i64, c3 as i64);
    let d1 = ((c1 - c2) / 2) as usize;
    let d2 = ((c1 - c3) / 2) as usize;
    let lin = 2 * (2 * c1 - c2 - c3 + 1);
    let base = (c1 - c2) * (c1 - c3) / 2 + c1;
    let exp_u = |u: i64| 6 * u * u + lin * u + base;

    let work = ctx.work_bits();
    let tol_r = Real::from_f64(tol, work);
    let one = ctx.one();
    let low = ctx.qq_inf().sub(ctx.qq_inf_error());
    // |term_u| <= (1-q) t^(E_u) / (q;q)_oo^3 after the (q;q)_oo prefactor is
    // bounded by 1; consecutive exponents differ by at least 8.
    let tail_factor = ctx.one_minus_q().div(&low.powi(3).mul(&one.sub(&ctx.t_pow(8))));

    let mut acc = CompensatedSum::new(work);
    let mut u: i64 = 0;
    let tail = loop {
        let tail = tail_factor.mul(&ctx.t_pow(exp_u(u)));
        if tail < tol_r {
            break tail;
        }
        let ud = u as usize;
        let den = ctx.qq(ud).mul(&ctx.qq(ud + d1)).mul(&ctx.qq(ud + d2));
        let mut term = ctx.t_pow(exp_u(u)).div(&den);
        if ((c2 + c3) / 2 + u) % 2 == 1 {
            term = term.neg();
        }
        acc.add(&term);
        u += 1;
    };
    let pre = ctx.one_minus_q().mul(ctx.qq_inf());
    let value = pre.mul(&acc.value());
    let rel = ctx.qq_inf_error().div(&low);
    let error = tail.add(&value.abs().mul(&rel));
    LimitValue { value, error, steps: u as u32 }
}
