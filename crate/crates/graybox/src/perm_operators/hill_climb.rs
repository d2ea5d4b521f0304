//! Window-move hill climber for permutation problems, driven entirely by
//! the score vector: selection reads stored deltas, acceptance applies the
//! move and refreshes only the entries its support touches.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::group_fourier::Permutation;
use crate::perm_problems::{PermProblem, PermProblemError};
use crate::SelectPolicy;

use super::scores::ScoreVector;
use super::window::WindowMove;

/// One accepted move: which window move, its delta, the fitness after it,
/// and how many score entries were freshly computed.
#[derive(Debug, Clone, PartialEq)]
pub struct PermHcStep {
    pub mv: WindowMove,
    pub delta: f64,
    pub fitness: f64,
    pub recomputed: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PermHcTrace {
    pub start_fitness: f64,
    pub steps: Vec<PermHcStep>,
    pub budget_exhausted: bool,
}

impl PermHcTrace {
    pub fn final_fitness(&self) -> f64 {
        self.steps.last().map_or(self.start_fitness, |s| s.fitness)
    }

    pub fn max_recomputed(&self) -> usize {
        self.steps.iter().map(|s| s.recomputed).max().unwrap_or(0)
    }
}

/// Descends from `sigma0` until no enabled window move improves, picking
/// uniformly among improving moves with the seeded RNG.
pub fn window_hill_climb<P: PermProblem + ?Sized>(
    problem: &P,
    sigma0: &Permutation,
    widths: &[usize],
    seed: u64,
) -> Result<(Permutation, PermHcTrace), PermProblemError> {
    window_hill_climb_with(problem, sigma0, widths, seed, SelectPolicy::RandomImproving, None)
}

/// Full-control variant: selection policy and an optional budget of
/// accepted moves. With a budget, `budget_exhausted` flags an early stop.
pub fn window_hill_climb_with<P: PermProblem + ?Sized>(
    problem: &P,
    sigma0: &Permutation,
    widths: &[usize],
    seed: u64,
    policy: SelectPolicy,
    budget: Option<usize>,
) -> Result<(Permutation, PermHcTrace), PermProblemError> {
    let mut sigma = sigma0.clone();
    let mut scores = ScoreVector::init(problem, &sigma, widths)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start_fitness = problem.evaluate(&sigma)?;
    let mut fitness = start_fitness;
    let mut steps = Vec::new();
    let mut budget_exhausted = false;
    while let Some(idx) = scores.select(policy, &mut rng) {
        if budget.is_some_and(|b| steps.len() >= b) {
            budget_exhausted = true;
            break;
        }
        let mv = scores.move_at(idx);
        let delta = scores.delta(idx);
        let recomputed = scores.apply(problem, &mut sigma, idx);
        fitness += delta;
        steps.push(PermHcStep {
            mv,
            delta,
            fitness,
            recomputed,
        });
    }
    Ok((
        sigma,
        PermHcTrace {
            start_fitness,
            steps,
            budget_exhausted,
        },
    ))
}
