//! Gray-box search operators for permutation problems: window moves of
//! width 2 and 3, a score vector holding every window-move delta with
//! constant-work incremental updates, the hill climber driven by it, and
//! window-based partition crossover.

pub mod crossover;
pub mod hill_climb;
pub mod scores;
pub mod window;

pub use crossover::{
    decompose_parents, px_perm, px_perm_detailed, ComponentDecomposition, PermComponent,
    PermPxResult, PxComponentReport,
};
pub use hill_climb::{window_hill_climb, window_hill_climb_with, PermHcStep, PermHcTrace};
pub use scores::ScoreVector;
pub use window::{enumerate_moves, WindowMove, W2_PATTERNS, W3_PATTERNS};
