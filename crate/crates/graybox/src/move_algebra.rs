//! Moves, deltas, and non-interaction over an abstract finite search space.
//!
//! A search space is anything that can evaluate a solution identified by a
//! dense index; a move is any total map on those indices. The delta of a move
//! is the fitness change it causes. Two commuting moves are non-interacting
//! on a set of solutions when neither changes the other's delta there; in
//! that case the delta of their composition is the sum of their deltas, and
//! the same extends to every subset of a pairwise non-interacting family.
//!
//! Everything here is enumeration-based and meant as ground truth for the
//! structured fast paths elsewhere in the crate. Operations that sweep the
//! whole space refuse to run past a configurable solution cap instead of
//! sampling, so a `true` is a certificate, not an estimate.

use std::fmt;
use std::sync::Arc;

use crate::Tolerance;

/// Dense solution index inside a [`SearchSpace`].
pub type SolutionId = usize;

/// Default cap for operations that enumerate the whole space.
pub const DEFAULT_ENUM_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub enum MoveAlgebraError {
    /// An enumeration would visit more solutions than the cap allows.
    CapacityExceeded { required: usize, cap: usize },
    /// A precondition violation: the given moves do not commute.
    NonCommuting { left: String, right: String },
    /// A solution id at or beyond the space size.
    PointOutOfRange { point: usize, size: usize },
    /// A move mapped a valid solution id outside the space.
    MoveNotClosed {
        label: String,
        point: usize,
        image: usize,
        size: usize,
    },
}

impl fmt::Display for MoveAlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveAlgebraError::CapacityExceeded { required, cap } => {
                write!(f, "enumeration of {required} solutions exceeds cap {cap}")
            }
            MoveAlgebraError::NonCommuting { left, right } => {
                write!(f, "moves {left} and {right} do not commute")
            }
            MoveAlgebraError::PointOutOfRange { point, size } => {
                write!(f, "solution id {point} out of range for space of size {size}")
            }
            MoveAlgebraError::MoveNotClosed {
                label,
                point,
                image,
                size,
            } => write!(
                f,
                "move {label} sends {point} to {image}, outside the space of size {size}"
            ),
        }
    }
}

impl std::error::Error for MoveAlgebraError {}

/// A finite search space: a solution count and a total, deterministic
/// evaluation over `0..size()`.
pub trait SearchSpace: Sync {
    fn size(&self) -> usize;
    fn evaluate(&self, x: SolutionId) -> f64;
}

/// A search space backed by an explicit value table.
pub struct TableSpace {
    values: Vec<f64>,
}

impl TableSpace {
    pub fn new(values: Vec<f64>) -> Self {
        TableSpace { values }
    }
}

impl SearchSpace for TableSpace {
    fn size(&self) -> usize {
        self.values.len()
    }

    fn evaluate(&self, x: SolutionId) -> f64 {
        self.values[x]
    }
}

/// A search space backed by an evaluation closure.
pub struct FnSpace<F: Fn(SolutionId) -> f64 + Sync> {
    size: usize,
    eval: F,
}

impl<F: Fn(SolutionId) -> f64 + Sync> FnSpace<F> {
    pub fn new(size: usize, eval: F) -> Self {
        FnSpace { size, eval }
    }
}

impl<F: Fn(SolutionId) -> f64 + Sync> SearchSpace for FnSpace<F> {
    fn size(&self) -> usize {
        self.size
    }

    fn evaluate(&self, x: SolutionId) -> f64 {
        (self.eval)(x)
    }
}

/// A move: a total map on solution ids, with a label for reporting.
#[derive(Clone)]
pub struct MoveHandle {
    label: Arc<str>,
    apply: Arc<dyn Fn(SolutionId) -> SolutionId + Send + Sync>,
}

impl MoveHandle {
    pub fn new(
        label: impl Into<String>,
        apply: impl Fn(SolutionId) -> SolutionId + Send + Sync + 'static,
    ) -> Self {
        MoveHandle {
            label: label.into().into(),
            apply: Arc::new(apply),
        }
    }

    /// The move that changes nothing.
    pub fn identity() -> Self {
        MoveHandle::new("id", |x| x)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    #[inline]
    pub fn apply(&self, x: SolutionId) -> SolutionId {
        (self.apply)(x)
    }

    /// Composition applying `self` first, then `other`; same orientation as
    /// [`crate::group_fourier::Permutation::then`].
    pub fn then(&self, other: &MoveHandle) -> MoveHandle {
        let first = Arc::clone(&self.apply);
        let second = Arc::clone(&other.apply);
        MoveHandle {
            label: format!("{} * {}", self.label, other.label).into(),
            apply: Arc::new(move |x| second(first(x))),
        }
    }
}

impl fmt::Debug for MoveHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MoveHandle({})", self.label)
    }
}

/// Fitness change of applying `h` at `x`: `f(h(x)) - f(x)`.
///
/// Panics if `x` or its image is out of range; enumerating callers get the
/// checked [`MoveAlgebraError`] variants instead.
pub fn delta(space: &dyn SearchSpace, h: &MoveHandle, x: SolutionId) -> f64 {
    let size = space.size();
    assert!(x < size, "solution id {x} out of range");
    let image = h.apply(x);
    assert!(
        image < size,
        "move {} sends {x} outside the space",
        h.label()
    );
    space.evaluate(image) - space.evaluate(x)
}

fn check_cap(size: usize, cap: usize) -> Result<(), MoveAlgebraError> {
    if size > cap {
        return Err(MoveAlgebraError::CapacityExceeded {
            required: size,
            cap,
        });
    }
    Ok(())
}

fn checked_apply(
    h: &MoveHandle,
    x: SolutionId,
    size: usize,
) -> Result<SolutionId, MoveAlgebraError> {
    let image = h.apply(x);
    if image >= size {
        return Err(MoveAlgebraError::MoveNotClosed {
            label: h.label().to_string(),
            point: x,
            image,
            size,
        });
    }
    Ok(image)
}

fn check_points(y: &[SolutionId], size: usize) -> Result<(), MoveAlgebraError> {
    for &x in y {
        if x >= size {
            return Err(MoveAlgebraError::PointOutOfRange { point: x, size });
        }
    }
    Ok(())
}

/// Whether `h1` and `h2` commute as functions, decided by enumerating the
/// whole space. Spaces larger than `cap` are refused.
pub fn commute(
    h1: &MoveHandle,
    h2: &MoveHandle,
    space: &dyn SearchSpace,
    cap: usize,
) -> Result<bool, MoveAlgebraError> {
    let size = space.size();
    check_cap(size, cap)?;
    for x in 0..size {
        let a = checked_apply(h2, checked_apply(h1, x, size)?, size)?;
        let b = checked_apply(h1, checked_apply(h2, x, size)?, size)?;
        if a != b {
            return Ok(false);
        }
    }
    Ok(true)
}

fn require_commuting(
    h1: &MoveHandle,
    h2: &MoveHandle,
    space: &dyn SearchSpace,
    cap: usize,
) -> Result<(), MoveAlgebraError> {
    if !commute(h1, h2, space, cap)? {
        return Err(MoveAlgebraError::NonCommuting {
            left: h1.label().to_string(),
            right: h2.label().to_string(),
        });
    }
    Ok(())
}

/// Whether the commuting moves `h1`, `h2` are non-interacting on `y`:
/// applying `h1` first must leave the delta of `h2` unchanged at every point
/// of `y`. For commuting moves this condition is symmetric in `h1` and `h2`
/// pointwise, so only one orientation is checked. Non-commuting inputs are a
/// contract violation and produce an error.
pub fn non_interacting(
    space: &dyn SearchSpace,
    h1: &MoveHandle,
    h2: &MoveHandle,
    y: &[SolutionId],
    tol: Tolerance,
    cap: usize,
) -> Result<bool, MoveAlgebraError> {
    let size = space.size();
    check_points(y, size)?;
    require_commuting(h1, h2, space, cap)?;
    for &x in y {
        let shifted = checked_apply(h1, x, size)?;
        if !tol.eq(delta(space, h2, shifted), delta(space, h2, x)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the delta of the composition of `moves` (applied left to right)
/// equals the sum of the individual deltas at every point of `y`. The moves
/// must pairwise commute; that precondition is checked and its violation is
/// an error, since additivity is only meaningful for commuting families.
pub fn check_decomposition(
    space: &dyn SearchSpace,
    moves: &[MoveHandle],
    y: &[SolutionId],
    tol: Tolerance,
    cap: usize,
) -> Result<bool, MoveAlgebraError> {
    let size = space.size();
    check_points(y, size)?;
    for i in 0..moves.len() {
        for j in i + 1..moves.len() {
            require_commuting(&moves[i], &moves[j], space, cap)?;
        }
    }
    let composed = moves
        .iter()
        .fold(MoveHandle::identity(), |acc, m| acc.then(m));
    for &x in y {
        let whole = delta(space, &composed, x);
        let sum: f64 = moves.iter().map(|m| delta(space, m, x)).sum();
        if !tol.eq(whole, sum) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Composition of the subset `w` of `moves`, in ascending index order; the
/// empty subset composes to the identity. Duplicate indices are collapsed.
/// Indices must be in range.
pub fn compose_subset(moves: &[MoveHandle], w: &[usize]) -> MoveHandle {
    let mut indices: Vec<usize> = w.to_vec();
    indices.sort_unstable();
    indices.dedup();
    indices
        .into_iter()
        .map(|i| {
            assert!(i < moves.len(), "subset index {i} out of range");
            &moves[i]
        })
        .fold(MoveHandle::identity(), |acc, m| acc.then(m))
}

/// How far to push the non-interaction hypothesis check in
/// [`decomposition_hypothesis`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HypothesisScope {
    /// Check pairs on `y` alone. Cheap, and the guarantee is correspondingly
    /// weaker: additivity is only certified at points of `y` themselves.
    GivenSetOnly,
    /// Check pairs on the closure of `y` under all `2^m` subset
    /// compositions. This is the full hypothesis under which additivity of
    /// every subset composition is guaranteed on `y`.
    CompositionOrbits,
}

/// Checks pairwise non-interaction of `moves`, either on `y` or on the orbit
/// of `y` under all subset compositions. The orbit grows at most to
/// `2^m * |y|` points, counted against `cap`.
pub fn decomposition_hypothesis(
    space: &dyn SearchSpace,
    moves: &[MoveHandle],
    y: &[SolutionId],
    tol: Tolerance,
    scope: HypothesisScope,
    cap: usize,
) -> Result<bool, MoveAlgebraError> {
    let size = space.size();
    check_points(y, size)?;
    let points: Vec<SolutionId> = match scope {
        HypothesisScope::GivenSetOnly => y.to_vec(),
        HypothesisScope::CompositionOrbits => {
            let m = moves.len();
            let subsets = 1usize.checked_shl(m as u32).unwrap_or(usize::MAX);
            let required = subsets.saturating_mul(y.len().max(1));
            check_cap(required, cap)?;
            let mut seen = vec![false; size];
            let mut points = Vec::new();
            for w in 0..subsets {
                let indices: Vec<usize> = (0..m).filter(|i| w >> i & 1 == 1).collect();
                let composed = compose_subset(moves, &indices);
                for &x in y {
                    let image = checked_apply(&composed, x, size)?;
                    if !seen[image] {
                        seen[image] = true;
                        points.push(image);
                    }
                }
            }
            points
        }
    };
    for i in 0..moves.len() {
        for j in i + 1..moves.len() {
            if !non_interacting(space, &moves[i], &moves[j], &points, tol, cap)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
