//! Sparse Walsh expansion of a k-bounded function.
//!
//! The basis functions are the signs `(-1)^(lambda . x)` over frequency
//! masks `lambda`. Each subfunction of arity `a` is transformed on its own
//! `2^a` table and scaled by `1/2^a`, so the assembled expansion reproduces
//! the function value exactly, not up to a factor; the transform cost is
//! `O(a 2^a)` per subfunction, never `O(2^n)`.

use std::collections::BTreeMap;

use crate::group_fourier::bits::walsh_sign_masks;
use crate::group_fourier::fourier::walsh_spectrum_in_place;
use crate::group_fourier::BitString;

use super::{KBoundedFunction, PbError};

/// Coefficients with absolute value at or below this are dropped. Integer
/// tables produce exactly representable dyadic coefficients, so for them only
/// true zeros are pruned.
pub const WALSH_PRUNE_EPS: f64 = 1e-12;

/// Sparse map from frequency mask to Walsh coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct WalshExpansion {
    n: usize,
    terms: BTreeMap<u64, f64>,
}

impl WalshExpansion {
    /// Transforms `f` subfunction by subfunction, accumulating coefficients
    /// on global masks. Coefficients that cancel across subfunctions are
    /// pruned afterwards.
    pub fn decompose(f: &KBoundedFunction) -> Self {
        let mut terms: BTreeMap<u64, f64> = BTreeMap::new();
        for sub in f.subfunctions() {
            let arity = sub.arity();
            let mut local = sub.table().to_vec();
            walsh_spectrum_in_place(&mut local).expect("table length is a power of two");
            let scale = 1.0 / (1u64 << arity) as f64;
            for (local_mask, &raw) in local.iter().enumerate() {
                let w = raw * scale;
                if w == 0.0 {
                    continue;
                }
                let mut global = 0u64;
                for (b, &v) in sub.vars().iter().enumerate() {
                    if local_mask >> b & 1 == 1 {
                        global |= 1 << v;
                    }
                }
                *terms.entry(global).or_insert(0.0) += w;
            }
        }
        terms.retain(|_, w| w.abs() > WALSH_PRUNE_EPS);
        WalshExpansion { n: f.n(), terms }
    }

    /// Builds directly from `(mask, coefficient)` pairs; duplicate masks
    /// accumulate, near-zero results are dropped.
    pub fn from_terms(
        n: usize,
        terms: impl IntoIterator<Item = (u64, f64)>,
    ) -> Result<Self, PbError> {
        let mut map: BTreeMap<u64, f64> = BTreeMap::new();
        for (mask, w) in terms {
            if n < 64 && mask >> n != 0 {
                return Err(PbError::LengthMismatch {
                    got: 64 - mask.leading_zeros() as usize,
                    expected: n,
                });
            }
            *map.entry(mask).or_insert(0.0) += w;
        }
        map.retain(|_, w| w.abs() > WALSH_PRUNE_EPS);
        Ok(WalshExpansion { n, terms: map })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient at `mask`, zero if absent.
    pub fn term(&self, mask: u64) -> f64 {
        self.terms.get(&mask).copied().unwrap_or(0.0)
    }

    /// All `(mask, coefficient)` pairs in ascending mask order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.terms.iter().map(|(&m, &w)| (m, w))
    }

    /// Materialized term list, for the mask-based certificate helpers.
    pub fn terms_vec(&self) -> Vec<(u64, f64)> {
        self.iter().collect()
    }

    /// Evaluates the expansion at `x`.
    pub fn evaluate(&self, x: &BitString) -> Result<f64, PbError> {
        if x.len() != self.n {
            return Err(PbError::LengthMismatch {
                got: x.len(),
                expected: self.n,
            });
        }
        Ok(self
            .terms
            .iter()
            .map(|(&mask, &w)| w * walsh_sign_masks(mask, x.mask()) as f64)
            .sum())
    }
}
