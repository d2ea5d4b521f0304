//! The score vector: one stored delta per window move, kept current with a
//! bounded amount of work per accepted move.
//!
//! Applying a move changes objects only inside its support, and the load
//! carried past the window is unchanged, so the only stored deltas that can
//! change are those of windows intersecting the support. With widths {2, 3}
//! that is at most 25 fresh delta computations per move, independent of n:
//! up to five width-3 starts with five patterns each, while every affected
//! width-2 entry is a copy of the width-3 entry at the same start whose
//! pattern swaps the leading pair (the lone exception, the last width-2
//! start, which has no width-3 twin, only arises when the width-3 range is
//! clipped by the boundary and has spare call budget).

use rand::Rng;

use crate::group_fourier::Permutation;
use crate::perm_problems::{apply_position_move, PermProblem, PermProblemError};
use crate::util::ImprovingSet;
use crate::SelectPolicy;

use super::window::WindowMove;

#[derive(Debug, Clone)]
pub struct ScoreVector {
    n: usize,
    use2: bool,
    use3: bool,
    moves: Vec<WindowMove>,
    deltas: Vec<f64>,
    improving: ImprovingSet,
    /// offsets[p] is the load of positions before p (completion time of the
    /// prefix for scheduling problems, all zeros otherwise).
    offsets: Vec<f64>,
}

impl ScoreVector {
    pub fn init<P: PermProblem + ?Sized>(
        problem: &P,
        sigma: &Permutation,
        widths: &[usize],
    ) -> Result<Self, PermProblemError> {
        let n = problem.size();
        if sigma.len() != n {
            return Err(PermProblemError::SizeMismatch {
                got: sigma.len(),
                expected: n,
            });
        }
        if widths.is_empty() || widths.iter().any(|w| *w != 2 && *w != 3) {
            return Err(PermProblemError::BadParam {
                message: format!("widths {widths:?} not a non-empty subset of {{2, 3}}"),
            });
        }
        let use2 = widths.contains(&2);
        let use3 = widths.contains(&3);
        let moves = super::window::enumerate_moves(n, &[2, 3])
            .into_iter()
            .filter(|m| (m.width == 2 && use2) || (m.width == 3 && use3))
            .collect::<Vec<_>>();
        let mut offsets = vec![0.0; n];
        for p in 1..n {
            offsets[p] = offsets[p - 1] + problem.offset_step(sigma, p - 1);
        }
        let mut sv = ScoreVector {
            n,
            use2,
            use3,
            deltas: vec![0.0; moves.len()],
            moves,
            improving: ImprovingSet::new(),
            offsets,
        };
        if sv.use3 && n >= 3 {
            for s in 0..=n - 3 {
                sv.refresh_w3_start(problem, sigma, s);
            }
        }
        if sv.use2 && n >= 2 {
            for s in 0..=n - 2 {
                if sv.use3 && s + 3 <= n {
                    continue;
                }
                sv.refresh_w2_direct(problem, sigma, s);
            }
        }
        Ok(sv)
    }

    fn w2_index(&self, s: usize) -> usize {
        debug_assert!(self.use2);
        s
    }

    fn w3_index(&self, s: usize, pattern: usize) -> usize {
        debug_assert!(self.use3);
        let base = if self.use2 { self.n - 1 } else { 0 };
        base + 5 * s + pattern
    }

    fn fresh_delta<P: PermProblem + ?Sized>(&self, problem: &P, sigma: &Permutation, mv: WindowMove) -> f64 {
        let (lo, hi) = mv.window();
        problem.window_delta_with_offset(sigma, &mv.to_perm(self.n), lo, hi, self.offsets[lo])
    }

    fn store(&mut self, idx: usize, delta: f64) {
        self.deltas[idx] = delta;
        self.improving.set(idx, delta < 0.0);
    }

    /// Recomputes the five width-3 entries at start `s` and copies the
    /// leading-pair pattern into the width-2 twin. Returns delta calls made.
    fn refresh_w3_start<P: PermProblem + ?Sized>(
        &mut self,
        problem: &P,
        sigma: &Permutation,
        s: usize,
    ) -> usize {
        for k in 0..5 {
            let idx = self.w3_index(s, k);
            let delta = self.fresh_delta(problem, sigma, self.moves[idx]);
            self.store(idx, delta);
        }
        if self.use2 {
            let twin = self.deltas[self.w3_index(s, 0)];
            let idx = self.w2_index(s);
            self.store(idx, twin);
        }
        5
    }

    fn refresh_w2_direct<P: PermProblem + ?Sized>(
        &mut self,
        problem: &P,
        sigma: &Permutation,
        s: usize,
    ) -> usize {
        let idx = self.w2_index(s);
        let delta = self.fresh_delta(problem, sigma, self.moves[idx]);
        self.store(idx, delta);
        1
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn moves(&self) -> &[WindowMove] {
        &self.moves
    }

    pub fn move_at(&self, idx: usize) -> WindowMove {
        self.moves[idx]
    }

    pub fn delta(&self, idx: usize) -> f64 {
        self.deltas[idx]
    }

    pub fn deltas(&self) -> &[f64] {
        &self.deltas
    }

    pub fn offset_before(&self, pos: usize) -> f64 {
        self.offsets[pos]
    }

    pub fn improving_count(&self) -> usize {
        self.improving.len()
    }

    pub fn is_local_optimum(&self) -> bool {
        self.improving.is_empty()
    }

    /// Picks an improving move index, or `None` at a local optimum.
    pub fn select<R: Rng>(&self, policy: SelectPolicy, rng: &mut R) -> Option<usize> {
        if self.improving.is_empty() {
            return None;
        }
        match policy {
            SelectPolicy::RandomImproving => {
                Some(self.improving.at(rng.random_range(0..self.improving.len())))
            }
            SelectPolicy::FirstImproving => self.improving.min(),
        }
    }

    /// Applies move `idx` to `sigma` and refreshes every entry whose window
    /// intersects the move's support, nothing else. Returns the number of
    /// fresh delta computations, at most 25 for widths {2, 3}.
    pub fn apply<P: PermProblem + ?Sized>(
        &mut self,
        problem: &P,
        sigma: &mut Permutation,
        idx: usize,
    ) -> usize {
        let mv = self.moves[idx];
        let (a, b) = mv.support();
        *sigma = apply_position_move(sigma, &mv.to_perm(self.n));
        for q in a + 1..=b {
            self.offsets[q] = self.offsets[q - 1] + problem.offset_step(sigma, q - 1);
        }
        let mut calls = 0;
        if self.use3 && self.n >= 3 {
            let lo = a.saturating_sub(2);
            let hi = b.min(self.n - 3);
            for s in lo..=hi {
                calls += self.refresh_w3_start(problem, sigma, s);
            }
        }
        if self.use2 {
            let lo = a.saturating_sub(1);
            let hi = b.min(self.n - 2);
            for s in lo..=hi {
                if self.use3 && s + 3 <= self.n {
                    continue;
                }
                calls += self.refresh_w2_direct(problem, sigma, s);
            }
        }
        calls
    }
}
