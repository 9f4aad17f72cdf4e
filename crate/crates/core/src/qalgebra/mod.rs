//! Quantum integers, factorials, theta and Tet coefficients, unitary 6j symbols
//! and their large-color limits at a real parameter `0 < t < 1`, `q = t^4`.

use alloc::string::String;

mod context;
pub mod exact;
mod labels;
mod limits;
mod magnitude;
mod symbols;

pub use context::{parse_rational, QContext, GUARD_BITS, MIN_PRECISION_BITS};
pub use labels::{column_sums, TetLabels};
pub use limits::{shifted_sixj, sixj_infinity, LimitValue, LimitVariant, K_CEILING};
pub use magnitude::SignedMagnitude;
pub use symbols::{
    qpochhammer, quantum_delta, quantum_factorial, quantum_int, sixj_bound, sixj_detail,
    sixj_exponent, sixj_unitary, strand_numbers, tet, theta, Bounded, PochLength, SixJ,
    SixjBound,
};

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum QError {
    #[error("inadmissible triple ({0}, {1}, {2})")]
    InadmissibleTriple(u32, u32, u32),
    #[error("labeling {0} has an inadmissible vertex triple")]
    InadmissibleLabels(TetLabels),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("limit sequence not Cauchy by k = {k} (last difference {last_delta:e})")]
    NonConvergence { k: usize, last_delta: f64 },
    #[error("internal fault: {0}")]
    InternalFault(&'static str),
}

/// Even sum and all three triangle inequalities.
pub fn is_admissible(a: u32, b: u32, c: u32) -> bool {
    let (a, b, c) = (a as u64, b as u64, c as u64);
    (a + b + c) % 2 == 0 && a <= b + c && b <= a + c && c <= a + b
}
