//! Bit-flip hill climbing with an incrementally maintained score vector.
//!
//! The score of bit `i` is the delta of flipping it at the current point.
//! Accepting a flip of `i` touches only the scores of variables that share a
//! subfunction with `i`: for each such neighbor the old and new local deltas
//! of the shared subfunctions are exchanged, and the flipped bit's own score
//! negates. No full re-evaluation happens after initialization.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::group_fourier::BitString;
use crate::util::ImprovingSet;
use crate::SelectPolicy;

use super::{KBoundedFunction, PbError};

/// Score vector over all single-bit flips, plus the improving-move index.
#[derive(Debug, Clone)]
pub struct FlipScores {
    scores: Vec<f64>,
    improving: ImprovingSet,
}

impl FlipScores {
    pub fn new(f: &KBoundedFunction, x: &BitString) -> Result<Self, PbError> {
        if x.len() != f.n() {
            return Err(PbError::LengthMismatch {
                got: x.len(),
                expected: f.n(),
            });
        }
        let mut scores = vec![0.0; f.n()];
        for sub in f.subfunctions() {
            let idx = sub.local_index(x);
            for (b, &v) in sub.vars().iter().enumerate() {
                scores[v] += sub.table()[idx ^ (1 << b)] - sub.table()[idx];
            }
        }
        let mut improving = ImprovingSet::new();
        for (v, &s) in scores.iter().enumerate() {
            if s < 0.0 {
                improving.insert(v);
            }
        }
        Ok(FlipScores { scores, improving })
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn delta_of(&self, bit: usize) -> f64 {
        self.scores[bit]
    }

    pub fn improving_count(&self) -> usize {
        self.improving.len()
    }

    pub fn is_local_optimum(&self) -> bool {
        self.improving.is_empty()
    }

    /// Picks an improving bit under `policy`, or `None` at a local optimum.
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

    /// Flips `bit` in `x` and updates the affected scores. Returns the
    /// number of touched score entries, which is exactly the size of the
    /// bit's co-occurrence list.
    pub fn apply(&mut self, f: &KBoundedFunction, x: &mut BitString, bit: usize) -> usize {
        for &s in f.subs_of_var(bit) {
            let sub = &f.subfunctions()[s];
            let idx = sub.local_index(x);
            let own = sub
                .vars()
                .iter()
                .position(|&v| v == bit)
                .expect("subfunction listed under its variable");
            let idx_flipped = idx ^ (1 << own);
            for (b, &j) in sub.vars().iter().enumerate() {
                if j == bit {
                    continue;
                }
                let old_local = sub.table()[idx ^ (1 << b)] - sub.table()[idx];
                let new_local = sub.table()[idx_flipped ^ (1 << b)] - sub.table()[idx_flipped];
                self.scores[j] += new_local - old_local;
            }
        }
        self.scores[bit] = -self.scores[bit];
        *x = x.flipped(bit);
        let touched = f.coupled_vars(bit);
        for &j in touched {
            self.improving.set(j, self.scores[j] < 0.0);
        }
        touched.len()
    }
}

/// One accepted flip: the bit, its delta, the fitness after the move, and
/// how many score entries were touched.
#[derive(Debug, Clone, PartialEq)]
pub struct BitHcStep {
    pub bit: usize,
    pub delta: f64,
    pub fitness: f64,
    pub touched: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BitHcTrace {
    pub start_fitness: f64,
    pub steps: Vec<BitHcStep>,
    pub budget_exhausted: bool,
}

impl BitHcTrace {
    pub fn final_fitness(&self) -> f64 {
        self.steps.last().map_or(self.start_fitness, |s| s.fitness)
    }
}

/// Descends from `x0` until no single-bit flip improves, selecting uniformly
/// among improving flips with the seeded RNG.
pub fn bitflip_hill_climb(
    f: &KBoundedFunction,
    x0: &BitString,
    seed: u64,
) -> Result<(BitString, BitHcTrace), PbError> {
    bitflip_hill_climb_with(f, x0, seed, SelectPolicy::RandomImproving, None)
}

/// Full-control variant: selection policy and an optional move budget. With
/// a budget, `budget_exhausted` flags a stop before local optimality.
pub fn bitflip_hill_climb_with(
    f: &KBoundedFunction,
    x0: &BitString,
    seed: u64,
    policy: SelectPolicy,
    budget: Option<usize>,
) -> Result<(BitString, BitHcTrace), PbError> {
    let mut x = *x0;
    let mut scores = FlipScores::new(f, &x)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start_fitness = f.evaluate(&x)?;
    let mut fitness = start_fitness;
    let mut steps = Vec::new();
    let mut budget_exhausted = false;
    while let Some(bit) = scores.select(policy, &mut rng) {
        if budget.is_some_and(|b| steps.len() >= b) {
            budget_exhausted = true;
            break;
        }
        let delta = scores.delta_of(bit);
        let touched = scores.apply(f, &mut x, bit);
        fitness += delta;
        steps.push(BitHcStep {
            bit,
            delta,
            fitness,
            touched,
        });
    }
    Ok((
        x,
        BitHcTrace {
            start_fitness,
            steps,
            budget_exhausted,
        },
    ))
}
