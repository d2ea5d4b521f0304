//! Gray-box combinatorial optimization toolkit.
//!
//! The central idea: a local search move is a map `h` on the search space, and
//! its effect on an objective `f` is the delta `f(h(x)) - f(x)`. When two moves
//! do not interact (neither changes the other's delta), their composition's
//! delta is the sum of the individual deltas, which is what makes constant-time
//! score updates and partition crossover work. This crate provides:
//!
//! * [`move_algebra`]: deltas, commutation and non-interaction checks, and
//!   additivity checks for composed moves, over enumerable search spaces.
//! * [`group_fourier`]: Fourier transforms over the symmetric group (via the
//!   Young orthogonal representation) and over bit-string XOR groups (Walsh
//!   functions), plus a spectral certificate that decides non-interaction of
//!   commuting moves without enumerating the space.
//! * [`pseudo_boolean`]: k-bounded pseudo-Boolean functions, Walsh
//!   decomposition, variable interaction graphs, bit-flip hill climbing with
//!   incremental score updates, and partition crossover on bit strings.
//! * [`perm_problems`]: linear ordering and single-machine total weighted
//!   tardiness instances, windowed move deltas, and arc-level edge effects of
//!   insertion moves on cyclic tours.
//! * [`perm_operators`]: window moves on permutations, score vectors with
//!   locality-bounded updates, hill climbing, and partition crossover built on
//!   a positional window decomposition of two parents.
//!
//! All optimizers minimize. Problems with integer data evaluate exactly in
//! `f64`, so delta identities hold with equality, not just within tolerance.

pub mod group_fourier;
pub mod move_algebra;
pub mod perm_operators;
pub mod perm_problems;
pub mod pseudo_boolean;
pub mod util;

/// Equality policy for comparing objective values and deltas.
///
/// Integer-valued instances are exact in `f64`, so `Exact` is the right choice
/// for them; real-valued data should use `Absolute` with a small epsilon.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Tolerance {
    /// Bitwise `f64` equality. Use when all arithmetic is exact.
    Exact,
    /// Absolute difference at most the given epsilon.
    Absolute(f64),
}

impl Tolerance {
    /// Default tolerance for real-valued data.
    pub const DEFAULT_ABS: Tolerance = Tolerance::Absolute(1e-9);

    /// Whether `a` and `b` are equal under this policy.
    pub fn eq(self, a: f64, b: f64) -> bool {
        match self {
            Tolerance::Exact => a == b,
            Tolerance::Absolute(eps) => (a - b).abs() <= eps,
        }
    }

    /// Whether `a` counts as zero under this policy.
    pub fn is_zero(self, a: f64) -> bool {
        self.eq(a, 0.0)
    }
}

/// How a hill climber picks among currently improving moves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SelectPolicy {
    /// Uniformly random improving move, driven by the run's seeded RNG.
    RandomImproving,
    /// Improving move with the smallest index. Deterministic; no RNG draws.
    FirstImproving,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_tolerance_is_bitwise() {
        assert!(Tolerance::Exact.eq(1.5, 1.5));
        assert!(!Tolerance::Exact.eq(1.5, 1.5 + 1e-12));
        assert!(Tolerance::Exact.is_zero(0.0));
    }

    #[test]
    fn absolute_tolerance_allows_slack() {
        let tol = Tolerance::Absolute(1e-9);
        assert!(tol.eq(1.0, 1.0 + 5e-10));
        assert!(!tol.eq(1.0, 1.0 + 5e-9));
        assert!(tol.is_zero(-8e-10));
    }
}
