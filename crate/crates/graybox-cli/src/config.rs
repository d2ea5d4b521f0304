//! Run configuration and the record each run emits. The record layout is
//! part of the tool's interface: JSON keys and the CSV column order are
//! stable, and all wall-clock data lives under the single `wall` key so
//! consumers can strip it when comparing runs for determinism.

use clap::ValueEnum;
use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemKind {
    Lop,
    Smtwtp,
    Pb,
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ProblemKind::Lop => "lop",
            ProblemKind::Smtwtp => "smtwtp",
            ProblemKind::Pb => "pb",
        };
        write!(f, "{name}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

/// Echo of the parameters a run was invoked with.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub problem: ProblemKind,
    pub instance: String,
    pub seed: u64,
    pub widths: Vec<usize>,
    pub alpha: f64,
    pub budget: Option<usize>,
    pub replications: usize,
}

/// Fitness after a given number of accepted moves. Trajectories are
/// non-increasing within each hill-climb segment; perturbations may raise
/// the fitness between segments.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct TrajectoryPoint {
    pub move_index: usize,
    pub fitness: f64,
}

/// Per-phase wall-clock totals in milliseconds. Excluded from determinism
/// comparisons.
#[derive(Debug, Clone, Default, Serialize)]
pub struct PhaseMillis {
    pub hill_climb_ms: u128,
    pub perturb_ms: u128,
    pub crossover_ms: u128,
    pub total_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunRecord {
    pub config: RunConfig,
    pub replication: usize,
    pub moves: usize,
    pub best_fitness: f64,
    pub trajectory: Vec<TrajectoryPoint>,
    pub px_component_counts: Vec<usize>,
    pub wall: PhaseMillis,
}

pub const CSV_HEADER: &str = "replication,problem,instance,seed,alpha,budget,moves,best_fitness,px_calls,hill_climb_ms,perturb_ms,crossover_ms,total_ms";

fn csv_field(raw: &str) -> String {
    if raw.contains(',') || raw.contains('"') || raw.contains('\n') {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw.to_string()
    }
}

fn csv_row(record: &RunRecord) -> String {
    let budget = match record.config.budget {
        Some(b) => b.to_string(),
        None => String::new(),
    };
    [
        record.replication.to_string(),
        record.config.problem.to_string(),
        csv_field(&record.config.instance),
        record.config.seed.to_string(),
        record.config.alpha.to_string(),
        budget,
        record.moves.to_string(),
        record.best_fitness.to_string(),
        record.px_component_counts.len().to_string(),
        record.wall.hill_climb_ms.to_string(),
        record.wall.perturb_ms.to_string(),
        record.wall.crossover_ms.to_string(),
        record.wall.total_ms.to_string(),
    ]
    .join(",")
}

pub fn records_to_csv(records: &[RunRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for record in records {
        out.push_str(&csv_row(record));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_record() -> RunRecord {
        RunRecord {
            config: RunConfig {
                problem: ProblemKind::Lop,
                instance: "demo.lop".to_string(),
                seed: 7,
                widths: vec![2, 3],
                alpha: 0.25,
                budget: Some(100),
                replications: 1,
            },
            replication: 0,
            moves: 42,
            best_fitness: -13.0,
            trajectory: vec![TrajectoryPoint { move_index: 0, fitness: -5.0 }],
            px_component_counts: vec![3, 1],
            wall: PhaseMillis::default(),
        }
    }

    #[test]
    fn csv_has_the_fixed_column_order() {
        let text = records_to_csv(&[sample_record()]);
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        let row = lines.next().unwrap();
        assert_eq!(row, "0,lop,demo.lop,7,0.25,100,42,-13,2,0,0,0,0");
        assert!(lines.next().is_none());
    }

    #[test]
    fn csv_quotes_fields_with_commas() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }

    #[test]
    fn problem_kind_serializes_lowercase() {
        let json = serde_json::to_string(&ProblemKind::Smtwtp).unwrap();
        assert_eq!(json, "\"smtwtp\"");
    }
}
