use alloc::collections::BTreeMap;

use spin::RwLock;

use crate::qalgebra::{sixj_detail, sixj_infinity, LimitValue, LimitVariant, QContext, QError, SignedMagnitude, TetLabels};

/// Memo of 6j magnitudes and 6j limits for one context. Sums revisit the
/// same vertex labelings many times; values are pure functions of their key,
/// so sharing the cache across threads does not affect results.
#[derive(Default)]
pub struct SixjCache {
    sixj: RwLock<BTreeMap<TetLabels, SignedMagnitude>>,
    limits: RwLock<BTreeMap<(TetLabels, u8, u64), LimitValue>>,
}

fn variant_key(v: LimitVariant) -> u8 {
    match v {
        LimitVariant::AllGrow => 0,
        LimitVariant::EFixed => 1,
        LimitVariant::EAndFFixed => 2,
    }
}

impl SixjCache {
    pub fn new() -> Self {
        SixjCache::default()
    }

    pub fn sixj(&self, ctx: &QContext, labels: &TetLabels) -> Result<SignedMagnitude, QError> {
        if let Some(v) = self.sixj.read().get(labels) {
            return Ok(v.clone());
        }
        let v = sixj_detail(ctx, labels)?.magnitude;
        self.sixj.write().insert(*labels, v.clone());
        Ok(v)
    }

    pub fn limit(
        &self,
        ctx: &QContext,
        labels: &TetLabels,
        variant: LimitVariant,
        tol: f64,
    ) -> Result<LimitValue, QError> {
        let key = (*labels, variant_key(variant), tol.to_bits());
        if let Some(v) = self.limits.read().get(&key) {
            return Ok(v.clone());
        }
        let v = sixj_infinity(ctx, labels, variant, tol)?;
        self.limits.write().insert(key, v.clone());
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.sixj.read().len() + self.limits.read().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl core::fmt::Debug for SixjCache {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("SixjCache")
            .field("sixj", &self.sixj.read().len())
            .field("limits", &self.limits.read().len())
            .finish()
    }
}
