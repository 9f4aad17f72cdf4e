use alloc::vec::Vec;

use super::{SixjCache, StateSumError};
use crate::qalgebra::{tet, theta, LimitVariant, QContext, SignedMagnitude, TetLabels};
use crate::real::Real;
use crate::spine::AbstractSpine;
use crate::surfaces::{add_boundary, check_coloring, peel_index, q_value, vertex_labeling, Coloring};

/// The contribution `E(F)` of one surface and the data used to bound it.
#[derive(Clone, Debug)]
pub struct Contribution {
    pub value: Real,
    /// `D t^Q(F)`, an upper bound for `|value|`.
    pub bound: Real,
    pub q_value: i64,
    pub peel_index: u32,
    pub max_color: u32,
    /// Least even number `>=` the max color.
    pub m_even: u32,
}

/// A limit value with an absolute error estimate.
#[derive(Clone, Debug)]
pub struct LimitEstimate {
    pub value: Real,
    pub error: Real,
}

/// `D = (1-q)^(-#{f : chi(f) = 1}) K(t)^#v`, so that `|E(F)| <= D t^Q(F)`.
pub fn bound_constant(ctx: &QContext, spine: &AbstractSpine) -> Real {
    let nf = spine.weighted_face_count() as i64;
    let nv = spine.vertices().len() as i64;
    ctx.one_minus_q().powi(-nf).mul(&ctx.k_constant().powi(nv))
}

/// `Delta_n = (-1)^n t^(-2n) (1-q^(n+1)) / (1-q)`.
fn delta_magnitude(ctx: &QContext, n: u32) -> SignedMagnitude {
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let mant = ctx.one().sub(&ctx.q_pow(n as usize + 1));
    SignedMagnitude::from_parts(sign, -4 * n as i64, -1, mant)
}

/// `prod_e sgn(theta_e)^chi(e)`; `theta(a,b,c)` has sign `(-1)^((a+b+c)/2)`.
///
/// The reparsed product of unitary 6j symbols divides by `|theta_e|` rather
/// than `theta_e`, so this factor converts it back to the definitional sum.
pub fn theta_sign_factor(spine: &AbstractSpine, coloring: &Coloring) -> i8 {
    let u = coloring.colors();
    let odd = spine
        .edges()
        .iter()
        .filter(|e| e.chi == 1)
        .filter(|e| {
            let s: u64 = e.faces.iter().map(|&f| u[f] as u64).sum();
            (s / 2) % 2 == 1
        })
        .count();
    if odd % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Whether `t^(4k chi) E_k(F)` keeps its sign as `k` grows. Each weighted
/// edge's theta half-sum grows by `k` per unforced face, and each vertex
/// using the alternating limit variant contributes another `(-1)^k`; the
/// limit exists when the total count is even.
pub fn shift_sign_is_stable(spine: &AbstractSpine) -> Result<bool, StateSumError> {
    let slots: usize = spine
        .edges()
        .iter()
        .filter(|e| e.chi == 1)
        .map(|e| e.faces.iter().filter(|&&f| spine.faces()[f].forced.is_none()).count())
        .sum();
    let mut alternating = 0;
    for v in 0..spine.vertices().len() {
        if vertex_limit_variant(spine, v)?.0.alternates() {
            alternating += 1;
        }
    }
    Ok((slots + alternating) % 2 == 0)
}

fn finish(
    ctx: &QContext,
    spine: &AbstractSpine,
    coloring: &Coloring,
    value: Real,
) -> Result<Contribution, StateSumError> {
    let q = q_value(spine, coloring)?;
    Ok(Contribution {
        value,
        bound: bound_constant(ctx, spine).mul(&ctx.t_pow(q)),
        q_value: q,
        peel_index: peel_index(spine, coloring)?,
        max_color: coloring.max_color(),
        m_even: coloring.m_even(),
    })
}

/// `E(F) = prod_f Delta_(u_f)^chi(f) prod_v 6j_v`, times the theta sign
/// factor. Vertex 6j values are memoized in `cache`.
pub fn contribution(
    ctx: &QContext,
    cache: &SixjCache,
    spine: &AbstractSpine,
    coloring: &Coloring,
) -> Result<Contribution, StateSumError> {
    check_coloring(spine, coloring)?;
    let mut prod = SignedMagnitude::one(ctx.work_bits());
    for (f, &u) in spine.faces().iter().zip(coloring.colors()) {
        if f.chi == 1 {
            prod = prod.mul(&delta_magnitude(ctx, u));
        }
    }
    for v in 0..spine.vertices().len() {
        prod = prod.mul(&cache.sixj(ctx, &vertex_labeling(spine, coloring, v))?);
    }
    if theta_sign_factor(spine, coloring) < 0 {
        prod = prod.neg();
    }
    finish(ctx, spine, coloring, prod.to_real(ctx))
}

/// `prod_f Delta^chi(f) prod_v Tet_v / prod_e theta_e^chi(e)`, evaluated
/// without 6j symbols.
pub fn contribution_definitional(
    ctx: &QContext,
    spine: &AbstractSpine,
    coloring: &Coloring,
) -> Result<Real, StateSumError> {
    check_coloring(spine, coloring)?;
    let u = coloring.colors();
    let mut num = SignedMagnitude::one(ctx.work_bits());
    for (f, &c) in spine.faces().iter().zip(u) {
        if f.chi == 1 {
            num = num.mul(&delta_magnitude(ctx, c));
        }
    }
    for v in 0..spine.vertices().len() {
        num = num.mul(&tet(ctx, &vertex_labeling(spine, coloring, v))?);
    }
    let mut den = SignedMagnitude::one(ctx.work_bits());
    for e in spine.edges().iter().filter(|e| e.chi == 1) {
        let [x, y, z] = e.faces;
        den = den.mul(&theta(ctx, u[x], u[y], u[z])?);
    }
    Ok(num.div(&den).to_real(ctx))
}

/// `E_k(F) = E(F + k dM)`.
pub fn contribution_shift(
    ctx: &QContext,
    cache: &SixjCache,
    spine: &AbstractSpine,
    coloring: &Coloring,
    k: u32,
) -> Result<Contribution, StateSumError> {
    let shifted = add_boundary(spine, coloring, k)?;
    contribution(ctx, cache, spine, &shifted)
}

/// Limit variant for a vertex together with the position map that moves its
/// non-growing faces onto `e` (and `f`). `map[i]` is the original reading
/// position that lands at position `i`.
pub fn vertex_limit_variant(spine: &AbstractSpine, vertex: usize) -> Result<(LimitVariant, [usize; 6]), StateSumError> {
    let faces = spine.vertices()[vertex].faces;
    let fixed = faces.map(|f| spine.faces()[f].forced.is_some());
    let idx = TetLabels::from_array([0, 1, 2, 3, 4, 5]);
    let want = |m: [bool; 6]| -> Option<LimitVariant> {
        match m {
            [false, false, false, false, false, false] => Some(LimitVariant::AllGrow),
            [false, false, true, false, false, false] => Some(LimitVariant::EFixed),
            [false, false, true, false, false, true] => Some(LimitVariant::EAndFFixed),
            _ => None,
        }
    };
    for (_, _, p) in idx.symmetries() {
        let map = p.to_array().map(|i| i as usize);
        if let Some(v) = want(map.map(|i| fixed[i])) {
            return Ok((v, map));
        }
    }
    Err(StateSumError::UnsupportedVertex(vertex))
}

/// `E_oo(F) = lim t^(4k chi(M)) E_k(F)` for a 0-peelable `F`:
/// `prod_f (-1)^u_f t^(-2 u_f) / (1-q)` over weighted faces, times the vertex
/// 6j limits and the theta sign factor.
///
/// The error combines the per-vertex limit errors as
/// `|faces| (prod(|x_v| + err_v) - prod |x_v|)`.
pub fn e_infinity(
    ctx: &QContext,
    cache: &SixjCache,
    spine: &AbstractSpine,
    coloring: &Coloring,
    tol: f64,
) -> Result<LimitEstimate, StateSumError> {
    let k = peel_index(spine, coloring)?;
    if k != 0 {
        return Err(StateSumError::NotZeroPeelable(k));
    }
    if !shift_sign_is_stable(spine)? {
        return Err(StateSumError::SignOscillation);
    }
    let u = coloring.colors();
    let mut sign = theta_sign_factor(spine, coloring);
    let mut t_exp = 0i64;
    let mut nf = 0i64;
    for (f, &c) in spine.faces().iter().zip(u) {
        if f.chi == 1 {
            if c % 2 == 1 {
                sign = -sign;
            }
            t_exp -= 2 * c as i64;
            nf += 1;
        }
    }
    let faces = ctx.t_pow(t_exp).mul(&ctx.one_minus_q().powi(-nf));

    let mut vals: Vec<Real> = Vec::new();
    let mut upper = ctx.one();
    let mut exact = ctx.one();
    for v in 0..spine.vertices().len() {
        let (variant, map) = vertex_limit_variant(spine, v)?;
        let raw = vertex_labeling(spine, coloring, v).to_array();
        let labels = TetLabels::from_array(map.map(|i| raw[i]));
        let lim = cache.limit(ctx, &labels, variant, tol)?;
        upper = upper.mul(&lim.value.abs().add(&lim.error));
        exact = exact.mul(&lim.value.abs());
        vals.push(lim.value);
    }
    let mut value = faces.clone();
    for x in &vals {
        value = value.mul(x);
    }
    if sign < 0 {
        value = value.neg();
    }
    let error = faces.mul(&upper.sub(&exact));
    Ok(LimitEstimate { value, error })
}
