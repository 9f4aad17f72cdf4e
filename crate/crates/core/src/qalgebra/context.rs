use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use spin::RwLock;

use super::QError;
use crate::real::Real;

/// Extra mantissa bits carried above the requested precision.
pub const GUARD_BITS: usize = 32;

/// Smallest accepted working precision.
pub const MIN_PRECISION_BITS: usize = 32;

/// Evaluation parameter `t` together with `q = t^4` and cached q-Pochhammer values.
///
/// `t` is held exactly as a rational (decimal strings and doubles are both
/// rationals), so the exact oracle is available for every context.
pub struct QContext {
    t_exact: BigRational,
    precision_bits: usize,
    work: usize,
    t: Real,
    sqrt_t: Real,
    q: Real,
    one_minus_q: Real,
    ln_t: Real,
    ln_one_minus_q: Real,
    qq_inf: Real,
    qq_inf_err: Real,
    qq_inf_terms: usize,
    cache: RwLock<PochCache>,
}

struct PochCache {
    /// `q^n`
    qpow: Vec<Real>,
    /// `(q;q)_n`
    poch: Vec<Real>,
}

impl PochCache {
    fn extend_to(&mut self, n: usize, q: &Real) {
        while self.poch.len() <= n {
            let k = self.poch.len();
            let qk = self.qpow[k - 1].mul(q);
            let one = Real::one(qk.precision());
            let next = self.poch[k - 1].mul(&one.sub(&qk));
            self.qpow.push(qk);
            self.poch.push(next);
        }
    }
}

impl QContext {
    pub fn new(t: BigRational, precision_bits: usize) -> Result<Self, QError> {
        if !(t.is_positive() && t < BigRational::one()) {
            return Err(QError::InvalidParameter(format!("t = {} is not in (0, 1)", t)));
        }
        if precision_bits < MIN_PRECISION_BITS {
            return Err(QError::InvalidParameter(format!(
                "precision_bits = {} is below {}",
                precision_bits, MIN_PRECISION_BITS
            )));
        }
        let work = precision_bits + GUARD_BITS;
        let t_real = Real::from_ratio(t.numer(), t.denom(), work);
        let t4 = {
            let t2 = &t * &t;
            &t2 * &t2
        };
        let q = Real::from_ratio(t4.numer(), t4.denom(), work);
        let one = Real::one(work);
        let one_minus_q = one.sub(&q);
        let sqrt_t = t_real.sqrt();
        let ln_t = t_real.ln();
        let ln_one_minus_q = one_minus_q.ln();

        let mut cache = PochCache { qpow: alloc::vec![one.clone()], poch: alloc::vec![one.clone()] };
        // Truncate (q;q)_oo at the first n with q^(n+1)/((1-q)(1-q^(n+1))) < 2^-work.
        let eps = Real::one(work).mul_pow2(-(work as i32));
        let mut n = 0usize;
        let tail = loop {
            cache.extend_to(n + 1, &q);
            let qn1 = &cache.qpow[n + 1];
            let tail = qn1.div(&one_minus_q.mul(&one.sub(qn1)));
            if tail < eps {
                break tail;
            }
            n += 1;
        };
        let qq_inf = cache.poch[n].clone();
        // Truncated product overestimates by a factor within [1, e^tail];
        // one rounding per factor on top.
        let rounding = Real::from_u64(n as u64 + 2, work).mul(&eps);
        let qq_inf_err = qq_inf.mul(&tail.add(&rounding));

        Ok(QContext {
            t_exact: t,
            precision_bits,
            work,
            t: t_real,
            sqrt_t,
            q,
            one_minus_q,
            ln_t,
            ln_one_minus_q,
            qq_inf,
            qq_inf_err,
            qq_inf_terms: n,
            cache: RwLock::new(cache),
        })
    }

    /// `t = num/den`.
    pub fn from_ratio(num: u64, den: u64, precision_bits: usize) -> Result<Self, QError> {
        if den == 0 {
            return Err(QError::InvalidParameter(String::from("zero denominator")));
        }
        QContext::new(BigRational::new(BigInt::from(num), BigInt::from(den)), precision_bits)
    }

    /// Parses `"p/q"` or a decimal such as `"0.35"` or `"2.5e-1"`.
    pub fn parse(t: &str, precision_bits: usize) -> Result<Self, QError> {
        QContext::new(parse_rational(t)?, precision_bits)
    }

    /// Uses the exact binary value of `t`.
    pub fn from_f64(t: f64, precision_bits: usize) -> Result<Self, QError> {
        let r = BigRational::from_float(t)
            .ok_or_else(|| QError::InvalidParameter(format!("t = {} is not finite", t)))?;
        QContext::new(r, precision_bits)
    }

    pub fn t_exact(&self) -> &BigRational {
        &self.t_exact
    }

    pub fn t(&self) -> &Real {
        &self.t
    }

    pub fn sqrt_t(&self) -> &Real {
        &self.sqrt_t
    }

    pub fn q(&self) -> &Real {
        &self.q
    }

    pub fn one_minus_q(&self) -> &Real {
        &self.one_minus_q
    }

    pub fn ln_t(&self) -> &Real {
        &self.ln_t
    }

    pub fn ln_one_minus_q(&self) -> &Real {
        &self.ln_one_minus_q
    }

    /// Requested precision in bits.
    pub fn precision_bits(&self) -> usize {
        self.precision_bits
    }

    /// Internal working precision (requested plus guard bits).
    pub fn work_bits(&self) -> usize {
        self.work
    }

    pub fn one(&self) -> Real {
        Real::one(self.work)
    }

    pub fn zero(&self) -> Real {
        Real::zero(self.work)
    }

    pub fn real(&self, v: i64) -> Real {
        Real::from_i64(v, self.work)
    }

    /// `2^-precision_bits`, the unit used for reported relative tolerances.
    pub fn ulp(&self) -> Real {
        Real::one(self.work).mul_pow2(-(self.precision_bits as i32))
    }

    /// `t^n` for integer `n`.
    pub fn t_pow(&self, n: i64) -> Real {
        self.t.powi(n)
    }

    /// `t^(n/2)`.
    pub fn t_half_pow(&self, n: i64) -> Real {
        let whole = self.t.powi(n.div_euclid(2));
        if n.rem_euclid(2) == 1 {
            whole.mul(&self.sqrt_t)
        } else {
            whole
        }
    }

    /// `(q;q)_n`, memoized.
    pub fn qq(&self, n: usize) -> Real {
        {
            let c = self.cache.read();
            if n < c.poch.len() {
                return c.poch[n].clone();
            }
        }
        let mut c = self.cache.write();
        c.extend_to(n, &self.q);
        c.poch[n].clone()
    }

    /// `q^n`, memoized alongside `(q;q)_n`.
    pub fn q_pow(&self, n: usize) -> Real {
        {
            let c = self.cache.read();
            if n < c.qpow.len() {
                return c.qpow[n].clone();
            }
        }
        let mut c = self.cache.write();
        c.extend_to(n, &self.q);
        c.qpow[n].clone()
    }

    /// Fills the caches through index `n`, so later concurrent reads never block.
    pub fn warm(&self, n: usize) {
        let _ = self.qq(n);
    }

    /// Truncated `(q;q)_oo`.
    pub fn qq_inf(&self) -> &Real {
        &self.qq_inf
    }

    /// `eps` with the true `(q;q)_oo` in `[qq_inf - eps, qq_inf + eps]`.
    pub fn qq_inf_error(&self) -> &Real {
        &self.qq_inf_err
    }

    /// Number of factors kept in the truncated `(q;q)_oo`.
    pub fn qq_inf_terms(&self) -> usize {
        self.qq_inf_terms
    }

    /// `K(t) = (1-q)/((q;q)_oo)^9`, taken at the lower end of the `(q;q)_oo`
    /// interval so that it over-estimates.
    pub fn k_constant(&self) -> Real {
        let low = self.qq_inf.sub(&self.qq_inf_err);
        self.one_minus_q.div(&low.powi(9))
    }
}

impl core::fmt::Debug for QContext {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("QContext")
            .field("t", &format_args!("{}", self.t_exact))
            .field("precision_bits", &self.precision_bits)
            .finish()
    }
}

/// Parses a positive rational from `"p/q"`, an integer, or a decimal with an
/// optional exponent. Decimals are converted exactly.
pub fn parse_rational(s: &str) -> Result<BigRational, QError> {
    let s = s.trim();
    let bad = || QError::InvalidParameter(format!("cannot parse t from {:?}", s));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], i64::from_str(&s[i + 1..]).map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: String = int.chars().chain(frac.chars()).collect();
    let mut num = BigInt::from(BigUint::from_str(&digits).map_err(|_| bad())?);
    if neg {
        num = -num;
    }
    let scale = exp - frac.len() as i64;
    if scale.unsigned_abs() > 10_000 {
        return Err(bad());
    }
    let ten = BigInt::from(10u8);
    let p = num_traits::pow(ten, scale.unsigned_abs() as usize);
    Ok(if scale >= 0 {
        BigRational::from_integer(num * p)
    } else {
        BigRational::new(num, p)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn parses_rationals_and_decimals() {
        assert_eq!(parse_rational("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("0.3").unwrap(), rat(3, 10));
        assert_eq!(parse_rational(".75").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("2.5e-1").unwrap(), rat(1, 4));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn rejects_t_outside_unit_interval() {
        assert!(QContext::parse("1", 128).is_err());
        assert!(QContext::parse("0", 128).is_err());
        assert!(QContext::parse("-1/2", 128).is_err());
        assert!(QContext::parse("3/2", 128).is_err());
        assert!(QContext::parse("1/2", 8).is_err());
    }

    #[test]
    fn q_is_t_to_the_fourth() {
        let ctx = QContext::parse("1/2", 128).unwrap();
        assert_eq!(ctx.q().to_f64(), 0.0625);
        assert_eq!(ctx.qq(1).to_f64(), 0.9375);
        assert_eq!(ctx.qq(0).to_f64(), 1.0);
    }

    #[test]
    fn qq_inf_interval_contains_long_product() {
        let ctx = QContext::parse("1/2", 128).unwrap();
        let long = ctx.qq(400);
        let diff = long.sub(ctx.qq_inf()).abs();
        assert!(diff <= *ctx.qq_inf_error());
        let v = ctx.qq_inf().to_f64();
        assert!(v > 0.93 && v < 0.94);
    }

    #[test]
    fn pochhammer_decreasing() {
        let ctx = QContext::parse("0.7", 96).unwrap();
        for n in 1..60 {
            assert!(ctx.qq(n) < ctx.qq(n - 1));
            assert!(ctx.qq(n) > ctx.qq_inf().sub(ctx.qq_inf_error()));
        }
    }
}
