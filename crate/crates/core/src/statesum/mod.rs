//! Contributions of spinal surfaces and the renormalized state sums built
//! from them.

use alloc::vec::Vec;
use core::fmt;

mod cache;
mod contribution;
mod sums;

pub use cache::SixjCache;
pub use contribution::{
    bound_constant, contribution, contribution_definitional, contribution_shift, e_infinity,
    shift_sign_is_stable, theta_sign_factor, vertex_limit_variant, Contribution, LimitEstimate,
};
pub use sums::{
    cauchy_n0, enumerate_with, tail_report, theorem_sum, z_k, Agreement, SumOptions, SumReport,
    TailReport, ZkReport,
};

use crate::qalgebra::QError;
use crate::surfaces::SurfaceError;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum StateSumError {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Algebra(#[from] QError),
    #[error("case {case} needs Euler characteristic {expected}, spine has {chi}")]
    CaseMismatch { case: SumCase, expected: &'static str, chi: i64 },
    #[error("limit contribution needs a 0-peelable coloring, peel index is {0}")]
    NotZeroPeelable(u32),
    #[error("vertex {0}: forced faces must sit on one edge or on one opposite pair")]
    UnsupportedVertex(usize),
    #[error("shifted contributions alternate in sign; the limit does not exist")]
    SignOscillation,
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}

/// Which renormalization of the partial sums applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SumCase {
    ChiNegative,
    ChiZero,
    ChiOne,
}

impl SumCase {
    pub const ALL: [SumCase; 3] = [SumCase::ChiNegative, SumCase::ChiZero, SumCase::ChiOne];

    pub fn name(self) -> &'static str {
        match self {
            SumCase::ChiNegative => "chi_negative",
            SumCase::ChiZero => "chi_zero",
            SumCase::ChiOne => "chi_one",
        }
    }

    pub fn from_name(s: &str) -> Option<SumCase> {
        SumCase::ALL.into_iter().find(|c| c.name() == s)
    }

    pub fn for_chi(chi: i64) -> Option<SumCase> {
        match chi {
            c if c < 0 => Some(SumCase::ChiNegative),
            0 => Some(SumCase::ChiZero),
            1 => Some(SumCase::ChiOne),
            _ => None,
        }
    }

    fn accepts(self, chi: i64) -> bool {
        SumCase::for_chi(chi) == Some(self)
    }

    fn expected(self) -> &'static str {
        match self {
            SumCase::ChiNegative => "< 0",
            SumCase::ChiZero => "0",
            SumCase::ChiOne => "1",
        }
    }
}

impl fmt::Display for SumCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Order-preserving map over a slice. Implementations may run `f` on any
/// thread, but must return results in input order.
pub trait Executor: Sync {
    fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send;
}

/// Runs everything on the calling thread.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        items.iter().map(f).collect()
    }
}
