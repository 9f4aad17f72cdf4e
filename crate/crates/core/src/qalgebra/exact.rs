//! Exact rational evaluation of the quantum integers, factorials, theta and Tet
//! straight from their defining sums. Used as ground truth in tests.

use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{is_admissible, QContext, QError, TetLabels};
use crate::real::Real;

pub struct ExactQ {
    t2: BigRational,
    t2_inv: BigRational,
    /// `[n]!` for `n < fact.len()`
    fact: Vec<BigRational>,
}

impl ExactQ {
    pub fn new(t: &BigRational) -> Self {
        let t2 = t * t;
        let t2_inv = t2.recip();
        ExactQ { t2, t2_inv, fact: alloc::vec![BigRational::one()] }
    }

    pub fn from_context(ctx: &QContext) -> Self {
        ExactQ::new(ctx.t_exact())
    }

    /// `(t^(2n) - t^(-2n)) / (t^2 - t^(-2))`.
    pub fn quantum_int(&self, n: u32) -> BigRational {
        let up = num_traits::pow(self.t2.clone(), n as usize);
        let down = num_traits::pow(self.t2_inv.clone(), n as usize);
        (up - down) / (&self.t2 - &self.t2_inv)
    }

    pub fn delta(&self, n: u32) -> BigRational {
        let v = self.quantum_int(n + 1);
        if n % 2 == 1 {
            -v
        } else {
            v
        }
    }

    pub fn factorial(&mut self, n: u32) -> BigRational {
        while self.fact.len() <= n as usize {
            let k = self.fact.len() as u32;
            let next = &self.fact[k as usize - 1] * self.quantum_int(k);
            self.fact.push(next);
        }
        self.fact[n as usize].clone()
    }

    pub fn theta(&mut self, a: u32, b: u32, c: u32) -> Result<BigRational, QError> {
        if !is_admissible(a, b, c) {
            return Err(QError::InadmissibleTriple(a, b, c));
        }
        let s = (a + b + c) / 2;
        let num = self.factorial(s + 1) * self.factorial(s - a) * self.factorial(s - b) * self.factorial(s - c);
        let den = self.factorial(a) * self.factorial(b) * self.factorial(c);
        let v = num / den;
        Ok(if s % 2 == 1 { -v } else { v })
    }

    /// Tet as the plain alternating sum over `m <= s <= M`.
    pub fn tet(&mut self, l: &TetLabels) -> Result<BigRational, QError> {
        if !l.is_admissible() {
            return Err(QError::InadmissibleLabels(*l));
        }
        let a = l.half_vertex_sums();
        let b = l.half_cycle_sums();
        let m = *a.iter().max().expect("nonempty") as u32;
        let mm = *b.iter().min().expect("nonempty") as u32;
        let mut pre = BigRational::one();
        for &bi in &b {
            for &aj in &a {
                pre *= self.factorial((bi - aj) as u32);
            }
        }
        for x in l.to_array() {
            pre /= self.factorial(x);
        }
        let mut sum = BigRational::zero();
        for s in m..=mm {
            let mut den = BigRational::one();
            for &bi in &b {
                den *= self.factorial(bi as u32 - s);
            }
            for &aj in &a {
                den *= self.factorial(s - aj as u32);
            }
            let term = self.factorial(s + 1) / den;
            if s % 2 == 1 {
                sum -= term;
            } else {
                sum += term;
            }
        }
        Ok(pre * sum)
    }

    /// Unitary 6j: exact Tet and thetas, one numeric square root.
    pub fn sixj(&mut self, l: &TetLabels, p: usize) -> Result<Real, QError> {
        let tv = self.tet(l)?;
        let mut rad = BigRational::one();
        for (x, y, z) in l.vertex_triples() {
            rad *= self.theta(x, y, z)?;
        }
        let r = Real::from_ratio(rad.abs().numer(), rad.denom(), p + 32).sqrt();
        Ok(to_real(&tv, p + 32).div(&r))
    }
}

pub fn to_real(x: &BigRational, p: usize) -> Real {
    Real::from_ratio(x.numer(), x.denom(), p)
}

/// `|approx - exact| / |exact|`, computed with `p + 64` bits.
pub fn relative_error(approx: &Real, exact: &BigRational, p: usize) -> f64 {
    let e = to_real(exact, p + 64);
    if e.is_zero() {
        return approx.abs().to_f64();
    }
    let mut a = approx.clone();
    a.set_precision(p + 64);
    a.sub(&e).abs().div(&e.abs()).to_f64()
}
