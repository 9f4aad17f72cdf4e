//! Multiprecision reals.
//!
//! Thin wrapper over `astro_float::BigFloat`. Every binary operation runs at the
//! larger of the two operand precisions and rounds to nearest-even, so a value
//! built at the working precision of a [`crate::qalgebra::QContext`] stays there.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint};
use num_traits::Signed;

const RM: RoundingMode = RoundingMode::ToEven;

#[derive(Clone)]
pub struct Real(BigFloat);

impl Real {
    pub fn zero(p: usize) -> Self {
        Real(BigFloat::from_u64(0, p))
    }

    pub fn one(p: usize) -> Self {
        Real(BigFloat::from_u64(1, p))
    }

    pub fn from_u64(v: u64, p: usize) -> Self {
        Real(BigFloat::from_u64(v, p))
    }

    pub fn from_i64(v: i64, p: usize) -> Self {
        Real(BigFloat::from_i64(v, p))
    }

    /// Exact for `p >= 53`.
    pub fn from_f64(v: f64, p: usize) -> Self {
        Real(BigFloat::from_f64(v, p))
    }

    pub fn from_biguint(v: &BigUint, p: usize) -> Self {
        // Horner in base 2^64; scaling by 2^64 is exact, each add rounds once.
        let mut acc = Real::zero(p);
        for &limb in v.to_u64_digits().iter().rev() {
            acc = acc.mul_pow2(64).add(&Real::from_u64(limb, p));
        }
        acc
    }

    pub fn from_bigint(v: &BigInt, p: usize) -> Self {
        let m = Real::from_biguint(v.magnitude(), p);
        if v.is_negative() {
            m.neg()
        } else {
            m
        }
    }

    pub fn from_ratio(num: &BigInt, den: &BigInt, p: usize) -> Self {
        // Carry extra bits through the conversion so the quotient rounds once
        // at roughly the requested width.
        let wide = p + 64;
        let mut r = Real::from_bigint(num, wide).div(&Real::from_bigint(den, wide));
        r.set_precision(p);
        r
    }

    pub fn precision(&self) -> usize {
        self.0.precision().unwrap_or(64)
    }

    pub fn set_precision(&mut self, p: usize) {
        // Only fails on allocation failure or p = 0.
        let _ = self.0.set_precision(p, RM);
    }

    fn prec2(&self, other: &Real) -> usize {
        self.precision().max(other.precision())
    }

    pub fn add(&self, other: &Real) -> Real {
        Real(self.0.add(&other.0, self.prec2(other), RM))
    }

    pub fn sub(&self, other: &Real) -> Real {
        Real(self.0.sub(&other.0, self.prec2(other), RM))
    }

    pub fn mul(&self, other: &Real) -> Real {
        Real(self.0.mul(&other.0, self.prec2(other), RM))
    }

    pub fn div(&self, other: &Real) -> Real {
        Real(self.0.div(&other.0, self.prec2(other), RM))
    }

    pub fn neg(&self) -> Real {
        Real(self.0.neg())
    }

    pub fn abs(&self) -> Real {
        if self.0.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn sqrt(&self) -> Real {
        Real(self.0.sqrt(self.precision(), RM))
    }

    /// Integer power; negative exponents go through one division.
    pub fn powi(&self, n: i64) -> Real {
        let p = self.precision();
        let m = Real(self.0.powi(n.unsigned_abs() as usize, p, RM));
        if n < 0 {
            Real::one(p).div(&m)
        } else {
            m
        }
    }

    /// Multiplies by 2^k exactly.
    pub fn mul_pow2(&self, k: i32) -> Real {
        if self.is_zero() {
            return self.clone();
        }
        let mut r = self.0.clone();
        let e = r.exponent().unwrap_or(0);
        r.set_exponent(e + k);
        Real(r)
    }

    /// Natural logarithm. Slow relative to the field operations; keep out of hot loops.
    pub fn ln(&self) -> Real {
        let mut cc = Consts::new().expect("constant cache allocation");
        Real(self.0.ln(self.precision(), RM, &mut cc))
    }

    pub fn exp(&self) -> Real {
        let mut cc = Consts::new().expect("constant cache allocation");
        Real(self.0.exp(self.precision(), RM, &mut cc))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !(self.0.is_nan() || self.0.is_inf())
    }

    /// −1, 0 or +1.
    pub fn signum(&self) -> i8 {
        if self.0.is_zero() {
            0
        } else if self.0.is_negative() {
            -1
        } else {
            1
        }
    }

    /// Binary exponent `e` with `2^(e-1) <= |x| < 2^e`; `None` for zero.
    pub fn exponent2(&self) -> Option<i32> {
        if self.is_zero() {
            None
        } else {
            self.0.exponent()
        }
    }

    /// Nearest double, saturating to ±inf and flushing to 0 outside the f64 range.
    pub fn to_f64(&self) -> f64 {
        let Some((words, _, sign, exp, _)) = self.0.as_raw_parts() else {
            return f64::NAN;
        };
        let top = match words.last() {
            Some(&w) if w != 0 => w,
            _ => return 0.0,
        };
        // value = 0.top... * 2^exp; fold in the next word so rounding sees 128 bits.
        let next = if words.len() >= 2 { words[words.len() - 2] } else { 0 };
        let hi = top as f64;
        let lo = ldexp(next as f64, -64);
        let v = ldexp(hi + lo, exp - 64);
        if sign == Sign::Neg {
            -v
        } else {
            v
        }
    }

    pub fn cmp_abs(&self, other: &Real) -> Ordering {
        self.abs().cmp(&other.abs())
    }

    /// Decimal rendering with `digits` significant digits, for reports.
    pub fn to_sci_string(&self, digits: usize) -> alloc::string::String {
        use alloc::format;
        use alloc::string::String;
        if self.is_zero() {
            return String::from("0");
        }
        if !self.is_finite() {
            return String::from("nan");
        }
        // x = m * 10^d with 1 <= |m| < 10; scale by an exact power of ten.
        let p = self.precision() + 16;
        let mut x = self.abs();
        x.set_precision(p);
        let log2 = x.exponent2().unwrap_or(0) as f64;
        let mut d = libm_floor(log2 * core::f64::consts::LOG10_2) as i64;
        let ten = Real::from_u64(10, p);
        let mut m = x.div(&ten.powi(d));
        let one = Real::one(p);
        while m.cmp(&ten) != Ordering::Less {
            m = m.div(&ten);
            d += 1;
        }
        while m.cmp(&one) == Ordering::Less {
            m = m.mul(&ten);
            d -= 1;
        }
        let mut digs: Vec<u8> = Vec::with_capacity(digits + 1);
        for _ in 0..=digits {
            let k = m.to_f64() as u8;
            let k = k.min(9);
            digs.push(k);
            m = m.sub(&Real::from_u64(k as u64, p)).mul(&ten);
        }
        // round half up on the guard digit
        if digs[digits] >= 5 {
            let mut i = digits;
            loop {
                if i == 0 {
                    digs.insert(0, 1);
                    d += 1;
                    break;
                }
                i -= 1;
                if digs[i] == 9 {
                    digs[i] = 0;
                } else {
                    digs[i] += 1;
                    break;
                }
            }
        }
        digs.truncate(digits);
        let mut s = String::new();
        if self.signum() < 0 {
            s.push('-');
        }
        s.push((b'0' + digs[0]) as char);
        if digits > 1 {
            s.push('.');
            for &k in &digs[1..] {
                s.push((b'0' + k) as char);
            }
        }
        s.push_str(&format!("e{}", d));
        s
    }
}

fn libm_floor(x: f64) -> f64 {
    let t = x as i64 as f64;
    if t > x {
        t - 1.0
    } else {
        t
    }
}

/// x * 2^k for finite x, without relying on std float intrinsics.
pub(crate) fn ldexp(mut x: f64, mut k: i32) -> f64 {
    while k > 1000 {
        x *= f64::from_bits(((1000 + 1023) as u64) << 52);
        k -= 1000;
        if x.is_infinite() {
            return x;
        }
    }
    while k < -1000 {
        x *= f64::from_bits(((-1000i32 + 1023) as u64) << 52);
        k += 1000;
        if x == 0.0 {
            return x;
        }
    }
    x * f64::from_bits(((k + 1023) as u64) << 52)
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl Real {
    /// Total order for finite values; NaN compares equal to everything.
    pub fn cmp(&self, other: &Real) -> Ordering {
        self.partial_cmp(other).unwrap_or(Ordering::Equal)
    }

    pub fn max(self, other: Real) -> Real {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci_string(20))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(17).max(1);
        write!(f, "{}", self.to_sci_string(digits))
    }
}

/// Neumaier compensated sum.
#[derive(Clone, Debug)]
pub struct CompensatedSum {
    sum: Real,
    comp: Real,
}

impl CompensatedSum {
    pub fn new(p: usize) -> Self {
        CompensatedSum { sum: Real::zero(p), comp: Real::zero(p) }
    }

    pub fn add(&mut self, x: &Real) {
        let t = self.sum.add(x);
        let c = if self.sum.cmp_abs(x) != Ordering::Less {
            self.sum.sub(&t).add(x)
        } else {
            x.sub(&t).add(&self.sum)
        };
        self.comp = self.comp.add(&c);
        self.sum = t;
    }

    pub fn value(&self) -> Real {
        self.sum.add(&self.comp)
    }
}

/// Pairwise reduction with a topology that depends only on `xs.len()`.
pub fn tree_sum(xs: &[Real], p: usize) -> Real {
    match xs.len() {
        0 => Real::zero(p),
        1 => xs[0].clone(),
        n => {
            let mid = n.div_ceil(2);
            tree_sum(&xs[..mid], p).add(&tree_sum(&xs[mid..], p))
        }
    }
}
