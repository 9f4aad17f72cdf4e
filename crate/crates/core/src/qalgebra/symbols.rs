use super::{is_admissible, QContext, QError, SignedMagnitude, TetLabels};
use crate::real::{CompensatedSum, Real};

/// `[n] = (t^(2n) - t^(-2n)) / (t^2 - t^(-2))`, evaluated as
/// `t^(2-2n) (1-q^n)/(1-q)`.
pub fn quantum_int(ctx: &QContext, n: u32) -> Real {
    if n == 0 {
        return ctx.zero();
    }
    let one = ctx.one();
    ctx.t_pow(2 - 2 * n as i64)
        .mul(&one.sub(&ctx.q_pow(n as usize)))
        .div(ctx.one_minus_q())
}

/// `Delta_n = (-1)^n [n+1]`.
pub fn quantum_delta(ctx: &QContext, n: u32) -> Real {
    let v = quantum_int(ctx, n + 1);
    if n % 2 == 1 {
        v.neg()
    } else {
        v
    }
}

/// `[n]! = t^(-n(n-1)) (q;q)_n / (1-q)^n`.
pub fn quantum_factorial(ctx: &QContext, n: u32) -> SignedMagnitude {
    let n64 = n as i64;
    SignedMagnitude::from_parts(1, -2 * n64 * (n64 - 1), -n64, ctx.qq(n as usize))
}

/// Length argument for [`qpochhammer`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PochLength {
    Finite(usize),
    Infinite,
}

/// A value with an absolute error bound.
#[derive(Clone, Debug)]
pub struct Bounded {
    pub value: Real,
    pub error: Real,
}

/// `(x;q)_n = prod_{i=1..n} (1 - x q^(i-1))`. The infinite product is
/// truncated once the log-tail bound `x q^n / ((1-q)(1 - x q^n))` drops below
/// `2^-work`, and that bound is returned as the error.
pub fn qpochhammer(ctx: &QContext, x: &Real, n: PochLength) -> Result<Bounded, QError> {
    let one = ctx.one();
    let work = ctx.work_bits();
    let eps = one.mul_pow2(-(work as i32));
    match n {
        PochLength::Finite(n) => {
            if *x == *ctx.q() {
                let v = ctx.qq(n);
                let err = v.mul(&Real::from_u64(n as u64 + 1, work)).mul(&eps);
                return Ok(Bounded { value: v, error: err });
            }
            let mut acc = one.clone();
            let mut xq = x.clone();
            for _ in 0..n {
                acc = acc.mul(&one.sub(&xq));
                xq = xq.mul(ctx.q());
            }
            let err = acc.abs().mul(&Real::from_u64(2 * n as u64 + 1, work)).mul(&eps);
            Ok(Bounded { value: acc, error: err })
        }
        PochLength::Infinite => {
            if *ctx.q() >= one {
                return Err(QError::InvalidParameter("(x;q)_oo needs |q| < 1".into()));
            }
            if x.signum() < 0 || *x > one {
                return Err(QError::InvalidParameter("(x;q)_oo needs 0 <= x <= 1".into()));
            }
            if *x == *ctx.q() {
                return Ok(Bounded { value: ctx.qq_inf().clone(), error: ctx.qq_inf_error().clone() });
            }
            if x.is_zero() {
                return Ok(Bounded { value: one, error: ctx.zero() });
            }
            if *x == one {
                return Ok(Bounded { value: ctx.zero(), error: ctx.zero() });
            }
            let mut acc = one.clone();
            let mut xq = x.clone();
            let mut k = 0u64;
            loop {
                acc = acc.mul(&one.sub(&xq));
                xq = xq.mul(ctx.q());
                k += 1;
                let tail = xq.div(&ctx.one_minus_q().mul(&one.sub(&xq)));
                if tail < eps {
                    let rounding = Real::from_u64(2 * k + 2, work).mul(&eps);
                    let err = acc.mul(&tail.add(&rounding));
                    return Ok(Bounded { value: acc, error: err });
                }
            }
        }
    }
}

/// `(x1, x2, x3) = ((a+b-c)/2, (c+b-a)/2, (a+c-b)/2)`.
pub fn strand_numbers(a: u32, b: u32, c: u32) -> Result<(u32, u32, u32), QError> {
    if !is_admissible(a, b, c) {
        return Err(QError::InadmissibleTriple(a, b, c));
    }
    Ok(((a + b - c) / 2, (c + b - a) / 2, (a + c - b) / 2))
}

/// `theta(a,b,c) = (-1)^S [S+1]![S-a]![S-b]![S-c]! / ([a]![b]![c]!)`, `S = (a+b+c)/2`.
pub fn theta(ctx: &QContext, a: u32, b: u32, c: u32) -> Result<SignedMagnitude, QError> {
    if !is_admissible(a, b, c) {
        return Err(QError::InadmissibleTriple(a, b, c));
    }
    let s = (a + b + c) / 2;
    let num = quantum_factorial(ctx, s + 1)
        .mul(&quantum_factorial(ctx, s - a))
        .mul(&quantum_factorial(ctx, s - b))
        .mul(&quantum_factorial(ctx, s - c));
    let den = quantum_factorial(ctx, a)
        .mul(&quantum_factorial(ctx, b))
        .mul(&quantum_factorial(ctx, c));
    let v = num.div(&den);
    Ok(if s % 2 == 1 { v.neg() } else { v })
}

/// Tetrahedral coefficient.
///
/// The alternating inner sum is written as `(-1)^s t^(e_s) (1-q)^-1 P_s` with
/// `e_s = 6s^2 - 2(2L+1)s + sum A^2 + sum B^2` and `P_s` a ratio of
/// Pochhammer symbols. `e_s` is minimized at `s = M`, so the sum runs from
/// `M` downward, pulling `t^(e_M)` into the exponent.
pub fn tet(ctx: &QContext, labels: &TetLabels) -> Result<SignedMagnitude, QError> {
    if !labels.is_admissible() {
        return Err(QError::InadmissibleLabels(*labels));
    }
    let a_sums = labels.half_vertex_sums();
    let b_sums = labels.half_cycle_sums();
    let l = labels.total() as i64;
    let m_lo = *a_sums.iter().max().expect("four triples") as i64;
    let m_hi = *b_sums.iter().min().expect("three columns") as i64;
    debug_assert!(m_lo <= m_hi);

    let mut pre = SignedMagnitude::one(ctx.work_bits());
    for &bj in &b_sums {
        for &ai in &a_sums {
            pre = pre.mul(&quantum_factorial(ctx, (bj - ai) as u32));
        }
    }
    for x in labels.to_array() {
        pre = pre.div(&quantum_factorial(ctx, x));
    }

    let sq = |xs: &[u64]| xs.iter().map(|&x| (x * x) as i64).sum::<i64>();
    let e = |s: i64| 6 * s * s - 2 * (2 * l + 1) * s + sq(&a_sums) + sq(&b_sums);
    let e_top = e(m_hi);

    let mut acc = CompensatedSum::new(ctx.work_bits());
    for s in (m_lo..=m_hi).rev() {
        let mut p = ctx.qq((s + 1) as usize);
        for &bi in &b_sums {
            p = p.div(&ctx.qq((bi as i64 - s) as usize));
        }
        for &aj in &a_sums {
            p = p.div(&ctx.qq((s - aj as i64) as usize));
        }
        let d = e(s) - e_top;
        debug_assert!(d >= 0);
        let mut term = if d == 0 { p } else { p.mul(&ctx.t_pow(d)) };
        if (m_hi - s) % 2 == 1 {
            term = term.neg();
        }
        acc.add(&term);
    }
    let inner = acc.value();
    let sign = if m_hi % 2 == 1 { -1 } else { 1 };
    let sum = SignedMagnitude::from_parts(sign * inner.signum(), 2 * e_top, -1, inner);
    Ok(pre.mul(&sum))
}

/// Unitary 6j symbol together with the sign of its radicand.
#[derive(Clone, Debug)]
pub struct SixJ {
    pub value: Real,
    pub magnitude: SignedMagnitude,
    /// Sign of `theta(a,d,e) theta(b,c,e) theta(a,b,f) theta(c,d,f)`; this is
    /// `(-1)^(a+b+c+d+e+f)` and is negative for odd label totals.
    pub radicand_sign: i8,
}

/// `Tet / sqrt|theta(a,d,e) theta(b,c,e) theta(a,b,f) theta(c,d,f)|`.
pub fn sixj_detail(ctx: &QContext, labels: &TetLabels) -> Result<SixJ, QError> {
    let tv = tet(ctx, labels)?;
    let mut rad = SignedMagnitude::one(ctx.work_bits());
    for (x, y, z) in labels.vertex_triples() {
        rad = rad.mul(&theta(ctx, x, y, z)?);
    }
    if rad.is_zero() || !rad.mantissa().is_finite() {
        return Err(QError::InternalFault("6j radicand vanished"));
    }
    let expected = if labels.total() % 2 == 0 { 1 } else { -1 };
    if rad.sign() != expected {
        return Err(QError::InternalFault("6j radicand has unexpected sign"));
    }
    let m = tv.div(&rad.sqrt_abs(ctx));
    Ok(SixJ { value: m.to_real(ctx), magnitude: m, radicand_sign: rad.sign() })
}

pub fn sixj_unitary(ctx: &QContext, labels: &TetLabels) -> Result<Real, QError> {
    Ok(sixj_detail(ctx, labels)?.value)
}

/// `K(t) t^(exponent)` with `exponent = (C1-C2)(C1-C3)/2 + C1`.
#[derive(Clone, Debug)]
pub struct SixjBound {
    pub k: Real,
    pub exponent: i64,
    pub bound: Real,
}

pub fn sixj_bound(ctx: &QContext, labels: &TetLabels) -> Result<SixjBound, QError> {
    if !labels.is_admissible() {
        return Err(QError::InadmissibleLabels(*labels));
    }
    let exponent = sixj_exponent(labels);
    let k = ctx.k_constant();
    let bound = k.mul(&ctx.t_pow(exponent));
    Ok(SixjBound { k, exponent, bound })
}

/// `(C1-C2)(C1-C3)/2 + C1`.
pub fn sixj_exponent(labels: &TetLabels) -> i64 {
    let (c1, c2, c3) = super::column_sums(labels);
    ((c1 - c2) * (c1 - c3) / 2 + c1) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> QContext {
        QContext::parse("1/2", 128).unwrap()
    }

    fn close(x: f64, y: f64) -> bool {
        (x - y).abs() <= 1e-14 * y.abs().max(1.0)
    }

    #[test]
    fn quantum_integers() {
        let c = ctx();
        assert_eq!(quantum_int(&c, 0).to_f64(), 0.0);
        assert!(close(quantum_int(&c, 1).to_f64(), 1.0));
        assert!(close(quantum_int(&c, 2).to_f64(), 4.25));
        assert!(close(quantum_delta(&c, 0).to_f64(), 1.0));
        assert!(close(quantum_delta(&c, 1).to_f64(), -4.25));
        assert!(close(quantum_delta(&c, 2).to_f64(), 17.0625));
    }

    #[test]
    fn factorials() {
        let c = ctx();
        assert!(close(quantum_factorial(&c, 0).to_f64(&c), 1.0));
        assert!(close(quantum_factorial(&c, 2).to_f64(&c), 4.25));
        assert!(close(quantum_factorial(&c, 3).to_f64(&c), 72.515625));
    }

    #[test]
    fn pochhammer_examples() {
        let c = ctx();
        let q = c.q().clone();
        assert_eq!(qpochhammer(&c, &q, PochLength::Finite(0)).unwrap().value.to_f64(), 1.0);
        assert_eq!(qpochhammer(&c, &q, PochLength::Finite(1)).unwrap().value.to_f64(), 0.9375);
        let inf = qpochhammer(&c, &q, PochLength::Infinite).unwrap();
        let v = inf.value.to_f64();
        assert!(v > 0.93 && v < 0.94);
        let sixty = qpochhammer(&c, &q, PochLength::Finite(60)).unwrap().value;
        assert!(sixty.sub(&inf.value).abs() <= inf.error);
    }

    #[test]
    fn pochhammer_general_base() {
        let c = ctx();
        let x = Real::from_f64(0.5, c.work_bits());
        let inf = qpochhammer(&c, &x, PochLength::Infinite).unwrap();
        let mut direct = 1.0;
        for i in 0..200 {
            direct *= 1.0 - 0.5 * 0.0625f64.powi(i);
        }
        assert!((inf.value.to_f64() - direct).abs() < 1e-15);
        let bad = Real::from_f64(1.5, c.work_bits());
        assert!(qpochhammer(&c, &bad, PochLength::Infinite).is_err());
    }

    #[test]
    fn strands() {
        assert_eq!(strand_numbers(2, 3, 3).unwrap(), (1, 2, 1));
        assert_eq!(strand_numbers(0, 0, 0).unwrap(), (0, 0, 0));
        assert_eq!(strand_numbers(4, 4, 4).unwrap(), (2, 2, 2));
        assert!(strand_numbers(1, 1, 1).is_err());
    }

    #[test]
    fn theta_examples() {
        let c = ctx();
        assert!(close(theta(&c, 0, 0, 0).unwrap().to_f64(&c), 1.0));
        assert!(close(theta(&c, 1, 1, 0).unwrap().to_f64(&c), -4.25));
        assert_eq!(theta(&c, 2, 2, 2).unwrap().sign(), -1);
        assert!(theta(&c, 1, 0, 0).is_err());
    }

    #[test]
    fn tet_examples() {
        let c = ctx();
        assert!(close(tet(&c, &TetLabels::splat(0)).unwrap().to_f64(&c), 1.0));
        assert!(close(tet(&c, &TetLabels::new(1, 1, 0, 1, 1, 0)).unwrap().to_f64(&c), -4.25));
        assert!(tet(&c, &TetLabels::new(2, 3, 3, 3, 2, 3)).is_err());
    }

    #[test]
    fn sixj_examples() {
        let c = ctx();
        assert!(close(sixj_unitary(&c, &TetLabels::splat(0)).unwrap().to_f64(), 1.0));
        let v = sixj_unitary(&c, &TetLabels::new(1, 1, 0, 1, 1, 0)).unwrap().to_f64();
        assert!(close(v, -4.0 / 17.0));
        let b = sixj_bound(&c, &TetLabels::new(1, 1, 0, 1, 1, 0)).unwrap();
        assert_eq!(b.exponent, 2);
        assert!((b.bound.to_f64() - 0.435).abs() < 1e-3);
        let z = sixj_bound(&c, &TetLabels::splat(0)).unwrap();
        assert_eq!(z.exponent, 0);
        assert!(z.bound.to_f64() >= 1.0);
    }

    #[test]
    fn odd_total_has_negative_radicand() {
        let c = ctx();
        let s = sixj_detail(&c, &TetLabels::new(1, 0, 0, 0, 1, 1)).unwrap();
        assert_eq!(s.radicand_sign, -1);
        let s = sixj_detail(&c, &TetLabels::new(1, 1, 0, 1, 1, 0)).unwrap();
        assert_eq!(s.radicand_sign, 1);
    }
}
