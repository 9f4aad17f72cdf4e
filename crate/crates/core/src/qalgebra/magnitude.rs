use super::QContext;
use crate::real::Real;

/// A signed quantity `sign * t^(t_half/2) * (1-q)^omq * mantissa`.
///
/// The two exponents are integers, so products and quotients move them
/// exactly; only the mantissa is rounded. The factorials and Pochhammer
/// ratios in this crate have mantissas in `[(q;q)_oo^k, 1/(q;q)_oo^k]`, which
/// keeps every rounded quantity near 1 while `t^(-n^2)` growth lives in the
/// integer exponent. The natural log of the magnitude is available through
/// [`SignedMagnitude::log_magnitude`].
#[derive(Clone, Debug)]
pub struct SignedMagnitude {
    sign: i8,
    t_half: i64,
    omq: i64,
    mant: Real,
}

impl SignedMagnitude {
    pub fn zero(p: usize) -> Self {
        SignedMagnitude { sign: 0, t_half: 0, omq: 0, mant: Real::zero(p) }
    }

    pub fn one(p: usize) -> Self {
        SignedMagnitude { sign: 1, t_half: 0, omq: 0, mant: Real::one(p) }
    }

    /// `sign * t^(t_half/2) * (1-q)^omq * |mant|`.
    pub fn from_parts(sign: i8, t_half: i64, omq: i64, mant: Real) -> Self {
        if sign == 0 || mant.is_zero() {
            return SignedMagnitude::zero(mant.precision());
        }
        SignedMagnitude { sign: sign.signum(), t_half, omq, mant: mant.abs() }
    }

    pub fn from_real(x: &Real) -> Self {
        SignedMagnitude::from_parts(x.signum(), 0, 0, x.clone())
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// Exponent of `t^(1/2)`.
    pub fn t_half_exponent(&self) -> i64 {
        self.t_half
    }

    /// Exponent of `(1-q)`.
    pub fn omq_exponent(&self) -> i64 {
        self.omq
    }

    pub fn mantissa(&self) -> &Real {
        &self.mant
    }

    pub fn mul(&self, o: &SignedMagnitude) -> SignedMagnitude {
        if self.is_zero() || o.is_zero() {
            return SignedMagnitude::zero(self.mant.precision());
        }
        SignedMagnitude {
            sign: self.sign * o.sign,
            t_half: self.t_half + o.t_half,
            omq: self.omq + o.omq,
            mant: self.mant.mul(&o.mant),
        }
    }

    /// Panics on division by zero, which no caller in this crate can produce:
    /// factorials and thetas of admissible data are nonzero.
    pub fn div(&self, o: &SignedMagnitude) -> SignedMagnitude {
        assert!(!o.is_zero(), "SignedMagnitude division by zero");
        if self.is_zero() {
            return self.clone();
        }
        SignedMagnitude {
            sign: self.sign * o.sign,
            t_half: self.t_half - o.t_half,
            omq: self.omq - o.omq,
            mant: self.mant.div(&o.mant),
        }
    }

    pub fn neg(&self) -> SignedMagnitude {
        let mut r = self.clone();
        r.sign = -r.sign;
        r
    }

    pub fn abs(&self) -> SignedMagnitude {
        let mut r = self.clone();
        r.sign = r.sign.abs();
        r
    }

    pub fn mul_real(&self, x: &Real) -> SignedMagnitude {
        self.mul(&SignedMagnitude::from_real(x))
    }

    /// `sqrt(|self|)`.
    pub fn sqrt_abs(&self, ctx: &QContext) -> SignedMagnitude {
        if self.is_zero() {
            return self.clone();
        }
        let mut mant = self.mant.clone();
        let mut omq = self.omq;
        if omq.rem_euclid(2) == 1 {
            mant = mant.mul(ctx.one_minus_q());
            omq -= 1;
        }
        let mut t_half = self.t_half;
        if t_half.rem_euclid(4) != 0 {
            // t^(t_half/2) = t^((t_half - r)/2) * t^(r/2), r in 1..4
            let r = t_half.rem_euclid(4);
            mant = mant.mul(&ctx.t_half_pow(r));
            t_half -= r;
        }
        SignedMagnitude { sign: 1, t_half: t_half / 2, omq: omq / 2, mant: mant.sqrt() }
    }

    /// Collapses to a plain real at the mantissa precision.
    pub fn to_real(&self, ctx: &QContext) -> Real {
        if self.is_zero() {
            return Real::zero(self.mant.precision());
        }
        let mag = self
            .mant
            .mul(&ctx.t_half_pow(self.t_half))
            .mul(&ctx.one_minus_q().powi(self.omq));
        if self.sign < 0 {
            mag.neg()
        } else {
            mag
        }
    }

    pub fn to_f64(&self, ctx: &QContext) -> f64 {
        self.to_real(ctx).to_f64()
    }

    /// Natural log of `|self|`; `None` when zero.
    pub fn log_magnitude(&self, ctx: &QContext) -> Option<Real> {
        if self.is_zero() {
            return None;
        }
        let p = self.mant.precision();
        let lt = ctx.ln_t().mul(&Real::from_i64(self.t_half, p)).mul_pow2(-1);
        let lo = ctx.ln_one_minus_q().mul(&Real::from_i64(self.omq, p));
        Some(self.mant.ln().add(&lt).add(&lo))
    }
}
