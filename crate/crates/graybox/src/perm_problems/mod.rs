//! Permutation problems: the linear ordering problem and single machine
//! total weighted tardiness, with window-local delta evaluation, plain-text
//! parsing and writing, seeded generators, and tour arc bookkeeping for
//! insertion moves.
//!
//! Both objectives are minimized. A position move h acts on a solution by
//! [`apply_position_move`], so the object at position p after the move is
//! the one that was at h(p). For both problems, rearranging a contiguous
//! block of positions leaves the contribution of every position outside the
//! block unchanged, so the delta of a window move is computable from the
//! window alone: O(w^2) pair terms for LOP, one O(w) pass with a carried
//! completion-time offset for SMTWTP.

pub mod lop;
pub mod smtwtp;
pub mod tour;

pub use lop::{format_lop, generate_lop, parse_lop, LopInstance};
pub use smtwtp::{format_smtwtp, generate_smtwtp, parse_smtwtp, SmtwtpInstance};
pub use tour::{ArcChange, TourArcs};

use crate::group_fourier::Permutation;

#[derive(Debug, Clone, PartialEq)]
pub enum PermProblemError {
    SizeMismatch { got: usize, expected: usize },
    NonFiniteValue { what: &'static str },
    NegativeValue { what: &'static str },
    WindowOutOfRange { lo: usize, hi: usize, n: usize },
    MoveOutsideWindow { lo: usize, hi: usize },
    Parse { line: usize, message: String },
    BadParam { message: String },
    TourTooShort { len: usize },
    DuplicateCity { city: u32 },
    CityMissing { city: u32 },
    SameCity { city: u32 },
}

impl std::fmt::Display for PermProblemError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PermProblemError::SizeMismatch { got, expected } => {
                write!(f, "permutation size {got} does not match instance size {expected}")
            }
            PermProblemError::NonFiniteValue { what } => {
                write!(f, "non-finite value in {what}")
            }
            PermProblemError::NegativeValue { what } => {
                write!(f, "negative value in {what}")
            }
            PermProblemError::WindowOutOfRange { lo, hi, n } => {
                write!(f, "window [{lo}, {hi}] is not a valid range for size {n}")
            }
            PermProblemError::MoveOutsideWindow { lo, hi } => {
                write!(f, "move touches positions outside the window [{lo}, {hi}]")
            }
            PermProblemError::Parse { line, message } => {
                write!(f, "parse error at line {line}: {message}")
            }
            PermProblemError::BadParam { message } => write!(f, "bad parameter: {message}"),
            PermProblemError::TourTooShort { len } => {
                write!(f, "tour needs at least 3 cities, got {len}")
            }
            PermProblemError::DuplicateCity { city } => write!(f, "duplicate city {city}"),
            PermProblemError::CityMissing { city } => write!(f, "city {city} not in tour"),
            PermProblemError::SameCity { city } => {
                write!(f, "insertion of city {city} before itself")
            }
        }
    }
}

impl std::error::Error for PermProblemError {}

pub(crate) fn parse_err((line, message): (usize, String)) -> PermProblemError {
    PermProblemError::Parse { line, message }
}

/// Applies a position move: the solution after the move places at position
/// p the object the old solution had at h(p).
pub fn apply_position_move(sigma: &Permutation, h: &Permutation) -> Permutation {
    h.then(sigma)
}

/// A permutation objective with window-local delta evaluation.
pub trait PermProblem: Sync {
    fn size(&self) -> usize;

    fn evaluate(&self, sigma: &Permutation) -> Result<f64, PermProblemError>;

    /// Per-position load carried forward into later positions: the
    /// processing time of the job at `pos` for scheduling, zero for
    /// problems whose position costs do not chain.
    fn offset_step(&self, sigma: &Permutation, pos: usize) -> f64;

    /// Accumulated load of the positions before `lo`.
    fn offset_before(&self, sigma: &Permutation, lo: usize) -> f64 {
        (0..lo).map(|p| self.offset_step(sigma, p)).sum()
    }

    /// Delta of the window move `h` on positions `lo..=hi` given the load
    /// carried in from earlier positions. Assumes the arguments were
    /// validated as in [`PermProblem::window_delta`].
    fn window_delta_with_offset(
        &self,
        sigma: &Permutation,
        h: &Permutation,
        lo: usize,
        hi: usize,
        offset: f64,
    ) -> f64;

    /// Delta of applying `h` to `sigma`, computed from the window alone.
    /// `h` must move only positions inside `lo..=hi`.
    fn window_delta(
        &self,
        sigma: &Permutation,
        h: &Permutation,
        lo: usize,
        hi: usize,
    ) -> Result<f64, PermProblemError> {
        let n = self.size();
        if sigma.len() != n {
            return Err(PermProblemError::SizeMismatch {
                got: sigma.len(),
                expected: n,
            });
        }
        if h.len() != n {
            return Err(PermProblemError::SizeMismatch {
                got: h.len(),
                expected: n,
            });
        }
        if lo > hi || hi >= n {
            return Err(PermProblemError::WindowOutOfRange { lo, hi, n });
        }
        if let Some((min, max)) = h.support_range() {
            if min < lo || max > hi {
                return Err(PermProblemError::MoveOutsideWindow { lo, hi });
            }
        }
        let offset = self.offset_before(sigma, lo);
        Ok(self.window_delta_with_offset(sigma, h, lo, hi, offset))
    }
}
