//! Hill-climb and iterated-local-search drivers. One user seed feeds every
//! replication; per-phase seeds are mixed from (seed, replication, phase,
//! iteration) so changing the iteration count of one phase never shifts the
//! random draws of another, and replications stay independent under
//! parallel execution.

use crate::config::{PhaseMillis, RunConfig, RunRecord, TrajectoryPoint};
use crate::instances::{evaluate_solution, pb_error, perm_error, LoadedProblem, Solution};
use crate::CliError;
use graybox::group_fourier::{BitString, Permutation};
use graybox::perm_operators::px_perm_detailed;
use graybox::perm_problems::apply_position_move;
use graybox::pseudo_boolean::{build_vig, px_binary_with_vig, Vig, WalshExpansion};
use graybox::SelectPolicy;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

pub const PHASE_INIT: u64 = 1;
pub const PHASE_HILL_CLIMB: u64 = 2;
pub const PHASE_PERTURB: u64 = 3;

/// Moves allowed per ILS run when no budget is given.
pub const DEFAULT_ILS_MOVES: usize = 1000;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives the seed for one phase invocation of one replication.
pub fn stream_seed(seed: u64, replication: usize, phase: u64, iteration: usize) -> u64 {
    let mut z = splitmix(seed);
    z = splitmix(z ^ (replication as u64));
    z = splitmix(z ^ phase);
    splitmix(z ^ (iteration as u64))
}

fn stream_rng(seed: u64, replication: usize, phase: u64, iteration: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(stream_seed(seed, replication, phase, iteration))
}

/// Uniform random solution from an already mixed stream seed.
pub fn random_solution(problem: &LoadedProblem, stream: u64) -> Solution {
    let mut rng = ChaCha8Rng::seed_from_u64(stream);
    match problem {
        LoadedProblem::Lop(_) | LoadedProblem::Smtwtp(_) => {
            Solution::Perm(Permutation::random(problem.size(), &mut rng))
        }
        LoadedProblem::Pb(f) => {
            let mut x = BitString::zeros(f.n()).expect("n was validated");
            for i in 0..f.n() {
                if rng.random_bool(0.5) {
                    x = x.flipped(i);
                }
            }
            Solution::Bits(x)
        }
    }
}

fn random_start(problem: &LoadedProblem, config: &RunConfig, replication: usize) -> Solution {
    random_solution(problem, stream_seed(config.seed, replication, PHASE_INIT, 0))
}

/// Hill-climb segment result: the local optimum (or budget point), its
/// fitness, and the per-step fitnesses in order.
struct Segment {
    end: Solution,
    start_fitness: f64,
    step_fitness: Vec<f64>,
}

fn climb(
    problem: &LoadedProblem,
    start: &Solution,
    widths: &[usize],
    hc_seed: u64,
    budget: Option<usize>,
) -> Result<Segment, CliError> {
    match (problem, start) {
        (LoadedProblem::Pb(f), Solution::Bits(x0)) => {
            let (end, trace) = graybox::pseudo_boolean::bitflip_hill_climb_with(
                f,
                x0,
                hc_seed,
                SelectPolicy::RandomImproving,
                budget,
            )
            .map_err(pb_error)?;
            Ok(Segment {
                end: Solution::Bits(end),
                start_fitness: trace.start_fitness,
                step_fitness: trace.steps.iter().map(|s| s.fitness).collect(),
            })
        }
        (_, Solution::Perm(sigma0)) => {
            let perm = problem.as_perm().expect("perm solution implies perm problem");
            let (end, trace) = graybox::perm_operators::window_hill_climb_with(
                perm,
                sigma0,
                widths,
                hc_seed,
                SelectPolicy::RandomImproving,
                budget,
            )
            .map_err(perm_error)?;
            Ok(Segment {
                end: Solution::Perm(end),
                start_fitness: trace.start_fitness,
                step_fitness: trace.steps.iter().map(|s| s.fitness).collect(),
            })
        }
        _ => Err(CliError::Usage("solution kind does not match the problem".to_string())),
    }
}

/// Shuffles one random window of width ceil(alpha*n), or flips that many
/// random bits, to kick the search out of a local optimum.
fn perturb(solution: &Solution, alpha: f64, rng: &mut ChaCha8Rng) -> Solution {
    match solution {
        Solution::Perm(sigma) => {
            let n = sigma.len();
            if n < 2 {
                return solution.clone();
            }
            let width = ((alpha * n as f64).ceil() as usize).clamp(2, n);
            let lo = rng.random_range(0..=n - width);
            let mut local: Vec<usize> = (0..width).collect();
            local.shuffle(rng);
            let h = Permutation::embedded(n, lo, &local);
            Solution::Perm(apply_position_move(sigma, &h))
        }
        Solution::Bits(x) => {
            let n = x.len();
            let flips = ((alpha * n as f64).ceil() as usize).clamp(1, n);
            let mut out = *x;
            for i in rand::seq::index::sample(rng, n, flips) {
                out = out.flipped(i);
            }
            Solution::Bits(out)
        }
    }
}

/// Recombines `best` with `candidate`, keeping the decomposition's component
/// count for the record.
fn crossover(
    problem: &LoadedProblem,
    vig: Option<&Vig>,
    best: &Solution,
    candidate: &Solution,
) -> Result<(Solution, usize), CliError> {
    match (best, candidate) {
        (Solution::Perm(a), Solution::Perm(b)) => {
            let perm = problem.as_perm().expect("perm solution implies perm problem");
            let result = px_perm_detailed(perm, a, b).map_err(perm_error)?;
            let q = result.q();
            Ok((Solution::Perm(result.offspring), q))
        }
        (Solution::Bits(a), Solution::Bits(b)) => {
            let f = problem.as_pb().expect("bit solution implies pb problem");
            let vig = vig.expect("vig is built for pb runs");
            let result = px_binary_with_vig(f, vig, a, b).map_err(pb_error)?;
            let q = result.q();
            Ok((Solution::Bits(result.offspring), q))
        }
        _ => Err(CliError::Usage("solution kind does not match the problem".to_string())),
    }
}

fn push_segment(trajectory: &mut Vec<TrajectoryPoint>, moves: &mut usize, segment: &Segment) {
    trajectory.push(TrajectoryPoint { move_index: *moves, fitness: segment.start_fitness });
    for &fitness in &segment.step_fitness {
        *moves += 1;
        trajectory.push(TrajectoryPoint { move_index: *moves, fitness });
    }
}

/// One seeded hill climb from a random start. `budget` of `None` runs to a
/// local optimum.
pub fn run_hillclimb(
    problem: &LoadedProblem,
    config: &RunConfig,
    replication: usize,
) -> Result<RunRecord, CliError> {
    let total = Instant::now();
    let start = random_start(problem, config, replication);
    let hc_seed = stream_seed(config.seed, replication, PHASE_HILL_CLIMB, 0);
    let hc_start = Instant::now();
    let segment = climb(problem, &start, &config.widths, hc_seed, config.budget)?;
    let hill_climb_ms = hc_start.elapsed().as_millis();
    let mut trajectory = Vec::new();
    let mut moves = 0usize;
    push_segment(&mut trajectory, &mut moves, &segment);
    Ok(RunRecord {
        config: config.clone(),
        replication,
        moves,
        best_fitness: segment.step_fitness.last().copied().unwrap_or(segment.start_fitness),
        trajectory,
        px_component_counts: Vec::new(),
        wall: PhaseMillis {
            hill_climb_ms,
            perturb_ms: 0,
            crossover_ms: 0,
            total_ms: total.elapsed().as_millis(),
        },
    })
}

/// Iterated local search: climb, then repeat perturb / climb / recombine
/// with the best-so-far until the move budget is spent.
pub fn run_ils(
    problem: &LoadedProblem,
    config: &RunConfig,
    replication: usize,
) -> Result<RunRecord, CliError> {
    let total = Instant::now();
    let budget = config.budget.unwrap_or(DEFAULT_ILS_MOVES);
    let vig = match problem {
        LoadedProblem::Pb(f) => Some(build_vig(&WalshExpansion::decompose(f))),
        _ => None,
    };
    let mut wall = PhaseMillis::default();
    let mut trajectory = Vec::new();
    let mut px_component_counts = Vec::new();
    let mut moves = 0usize;

    let start = random_start(problem, config, replication);
    let hc_start = Instant::now();
    let segment = climb(
        problem,
        &start,
        &config.widths,
        stream_seed(config.seed, replication, PHASE_HILL_CLIMB, 0),
        Some(budget),
    )?;
    wall.hill_climb_ms += hc_start.elapsed().as_millis();
    push_segment(&mut trajectory, &mut moves, &segment);

    let mut best = segment.end.clone();
    let mut best_fitness =
        segment.step_fitness.last().copied().unwrap_or(segment.start_fitness);
    let mut incumbent = segment.end;
    let mut iteration = 0usize;

    while moves < budget {
        iteration += 1;
        if iteration > budget {
            // Every hill climb found nothing to accept, so the move count
            // stopped advancing; give up rather than spin.
            break;
        }

        let perturb_start = Instant::now();
        let mut rng = stream_rng(config.seed, replication, PHASE_PERTURB, iteration);
        let kicked = perturb(&incumbent, config.alpha, &mut rng);
        wall.perturb_ms += perturb_start.elapsed().as_millis();

        let hc_start = Instant::now();
        let segment = climb(
            problem,
            &kicked,
            &config.widths,
            stream_seed(config.seed, replication, PHASE_HILL_CLIMB, iteration),
            Some(budget - moves),
        )?;
        wall.hill_climb_ms += hc_start.elapsed().as_millis();
        push_segment(&mut trajectory, &mut moves, &segment);
        let candidate = segment.end;
        let candidate_fitness =
            segment.step_fitness.last().copied().unwrap_or(segment.start_fitness);

        let px_start = Instant::now();
        let (offspring, q) = crossover(problem, vig.as_ref(), &best, &candidate)?;
        px_component_counts.push(q);
        let offspring_fitness = evaluate_solution(problem, &offspring)?;
        wall.crossover_ms += px_start.elapsed().as_millis();

        if offspring_fitness <= candidate_fitness {
            incumbent = offspring;
            if offspring_fitness < best_fitness {
                best = incumbent.clone();
                best_fitness = offspring_fitness;
            }
        } else {
            incumbent = candidate;
            if candidate_fitness < best_fitness {
                best = incumbent.clone();
                best_fitness = candidate_fitness;
            }
        }
    }

    wall.total_ms = total.elapsed().as_millis();
    Ok(RunRecord {
        config: config.clone(),
        replication,
        moves,
        best_fitness,
        trajectory,
        px_component_counts,
        wall,
    })
}
