//! Window-based partition crossover for permutation problems.
//!
//! The move carrying one parent to the other factors into rearrangements
//! of disjoint position windows: scanning left to right, a window closes at
//! the first position where the objects seen so far in both parents form
//! the same set. Disjoint windows never interact, so each factor's delta is
//! independently selectable and taking exactly the negative ones yields the
//! best of the 2^q recombinations.

use crate::group_fourier::Permutation;
use crate::perm_problems::{apply_position_move, PermProblem, PermProblemError};

/// One window factor: the move `h` is identity outside `lo..=hi`, and
/// `delta` is its window-local delta at the first parent.
#[derive(Debug, Clone, PartialEq)]
pub struct PermComponent {
    pub lo: usize,
    pub hi: usize,
    pub h: Permutation,
    pub delta: f64,
}

impl PermComponent {
    /// A window where the parents already agree.
    pub fn is_trivial(&self) -> bool {
        self.h.is_identity()
    }
}

/// The complete factorization of the parent-to-parent move into window
/// components, in position order. Trivial windows are kept for audit but
/// do not count toward q.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentDecomposition {
    components: Vec<PermComponent>,
}

impl ComponentDecomposition {
    pub fn components(&self) -> &[PermComponent] {
        &self.components
    }

    pub fn nontrivial(&self) -> impl Iterator<Item = &PermComponent> {
        self.components.iter().filter(|c| !c.is_trivial())
    }

    /// Number of nontrivial components; 2^q solutions are reachable.
    pub fn q(&self) -> usize {
        self.nontrivial().count()
    }

    pub fn delta_sum(&self) -> f64 {
        self.components.iter().map(|c| c.delta).sum()
    }

    /// Applies every component to `sigma`; over the first parent this
    /// reproduces the second.
    pub fn compose_all_over(&self, sigma: &Permutation) -> Permutation {
        let mut out = sigma.clone();
        for c in &self.components {
            out = apply_position_move(&out, &c.h);
        }
        out
    }
}

/// Factors the move from `sigma1` to `sigma2` into minimal window
/// components and evaluates each window's delta at `sigma1`.
pub fn decompose_parents<P: PermProblem + ?Sized>(
    problem: &P,
    sigma1: &Permutation,
    sigma2: &Permutation,
) -> Result<ComponentDecomposition, PermProblemError> {
    let n = problem.size();
    for sigma in [sigma1, sigma2] {
        if sigma.len() != n {
            return Err(PermProblemError::SizeMismatch {
                got: sigma.len(),
                expected: n,
            });
        }
    }
    // g(p) = position in sigma1 of the object sigma2 puts at p; windows are
    // the minimal intervals g maps onto themselves.
    let g = sigma2.then(&sigma1.inverse());
    let mut components = Vec::new();
    let mut lo = 0;
    while lo < n {
        let mut hi = g.apply(lo).max(lo);
        let mut p = lo;
        while p < hi {
            p += 1;
            hi = hi.max(g.apply(p));
        }
        let local: Vec<usize> = (lo..=hi).map(|q| g.apply(q) - lo).collect();
        let h = Permutation::embedded(n, lo, &local);
        let delta = problem.window_delta(sigma1, &h, lo, hi)?;
        components.push(PermComponent { lo, hi, h, delta });
        lo = hi + 1;
    }
    Ok(ComponentDecomposition { components })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PxComponentReport {
    pub lo: usize,
    pub hi: usize,
    pub delta: f64,
    pub trivial: bool,
    pub applied: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PermPxResult {
    pub offspring: Permutation,
    pub components: Vec<PxComponentReport>,
}

impl PermPxResult {
    pub fn q(&self) -> usize {
        self.components.iter().filter(|c| !c.trivial).count()
    }
}

/// Partition crossover with the per-component breakdown: applies to
/// `sigma1` exactly the components whose delta is negative.
pub fn px_perm_detailed<P: PermProblem + ?Sized>(
    problem: &P,
    sigma1: &Permutation,
    sigma2: &Permutation,
) -> Result<PermPxResult, PermProblemError> {
    let decomposition = decompose_parents(problem, sigma1, sigma2)?;
    let mut offspring = sigma1.clone();
    let mut components = Vec::with_capacity(decomposition.components().len());
    for c in decomposition.components() {
        let applied = c.delta < 0.0;
        if applied {
            offspring = apply_position_move(&offspring, &c.h);
        }
        components.push(PxComponentReport {
            lo: c.lo,
            hi: c.hi,
            delta: c.delta,
            trivial: c.is_trivial(),
            applied,
        });
    }
    Ok(PermPxResult {
        offspring,
        components,
    })
}

/// Partition crossover, offspring only.
pub fn px_perm<P: PermProblem + ?Sized>(
    problem: &P,
    sigma1: &Permutation,
    sigma2: &Permutation,
) -> Result<Permutation, PermProblemError> {
    Ok(px_perm_detailed(problem, sigma1, sigma2)?.offspring)
}
