//! Partition crossover for k-bounded functions.
//!
//! The parents' differing bits are split into connected components of the
//! variable interaction graph restricted to those bits. Because no nonzero
//! Walsh term spans two components, the fitness delta of flipping a
//! component is independent of what the other components do, so flipping
//! exactly the components with negative delta yields the best offspring of
//! all 2^q recombinations.

use crate::group_fourier::BitString;

use super::{build_vig, KBoundedFunction, PbError, Vig, WalshExpansion};

/// One connected component of differing bits: its variable mask, the
/// fitness change of flipping it in the first parent, and whether the
/// offspring took it.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryComponentReport {
    pub mask: u64,
    pub delta: f64,
    pub applied: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BinaryPxResult {
    pub offspring: BitString,
    pub components: Vec<BinaryComponentReport>,
}

impl BinaryPxResult {
    /// Number of independent components, so the offspring is the best of
    /// 2^q recombinations.
    pub fn q(&self) -> usize {
        self.components.len()
    }
}

/// Sum of f over the subfunctions touching `mask`, evaluated at `x`.
fn touched_sum(f: &KBoundedFunction, touched: &[usize], x: &BitString) -> f64 {
    touched
        .iter()
        .map(|&s| {
            let sub = &f.subfunctions()[s];
            sub.table()[sub.local_index(x)]
        })
        .sum()
}

/// Partition crossover with a caller-built interaction graph, returning the
/// per-component breakdown alongside the offspring.
pub fn px_binary_with_vig(
    f: &KBoundedFunction,
    vig: &Vig,
    p1: &BitString,
    p2: &BitString,
) -> Result<BinaryPxResult, PbError> {
    if p1.len() != f.n() || p2.len() != f.n() {
        let got = if p1.len() != f.n() { p1.len() } else { p2.len() };
        return Err(PbError::LengthMismatch {
            got,
            expected: f.n(),
        });
    }
    if vig.n() != f.n() {
        return Err(PbError::LengthMismatch {
            got: vig.n(),
            expected: f.n(),
        });
    }
    let diff = p1.mask() ^ p2.mask();
    let mut offspring = *p1;
    let mut components = Vec::new();
    for mask in vig.components_within(diff) {
        let mut touched: Vec<usize> = (0..f.n())
            .filter(|&v| mask >> v & 1 == 1)
            .flat_map(|v| f.subs_of_var(v).iter().copied())
            .collect();
        touched.sort_unstable();
        touched.dedup();
        let flipped = BitString::from_mask(offspring.mask() ^ mask, f.n())
            .expect("component masks stay within the parents' length");
        let delta = touched_sum(f, &touched, &flipped) - touched_sum(f, &touched, &offspring);
        let applied = delta < 0.0;
        if applied {
            offspring = flipped;
        }
        components.push(BinaryComponentReport {
            mask,
            delta,
            applied,
        });
    }
    Ok(BinaryPxResult {
        offspring,
        components,
    })
}

/// Partition crossover from the function alone. Decomposes f into Walsh
/// terms to build the interaction graph, then recombines the parents.
pub fn px_binary(
    f: &KBoundedFunction,
    p1: &BitString,
    p2: &BitString,
) -> Result<BitString, PbError> {
    let vig = build_vig(&WalshExpansion::decompose(f));
    Ok(px_binary_with_vig(f, &vig, p1, p2)?.offspring)
}
