//! Single machine total weighted tardiness: jobs run back to back in
//! schedule order, and each job pays its weight times how far its
//! completion time runs past its due time.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::group_fourier::Permutation;
use crate::util::TokenCursor;

use super::{parse_err, PermProblem, PermProblemError};

#[derive(Debug, Clone, PartialEq)]
pub struct SmtwtpInstance {
    t: Vec<f64>,
    w: Vec<f64>,
    d: Vec<f64>,
}

impl SmtwtpInstance {
    pub fn new(t: Vec<f64>, w: Vec<f64>, d: Vec<f64>) -> Result<Self, PermProblemError> {
        if w.len() != t.len() {
            return Err(PermProblemError::SizeMismatch {
                got: w.len(),
                expected: t.len(),
            });
        }
        if d.len() != t.len() {
            return Err(PermProblemError::SizeMismatch {
                got: d.len(),
                expected: t.len(),
            });
        }
        for (name, arr) in [("processing times", &t), ("weights", &w), ("due times", &d)] {
            if arr.iter().any(|v| !v.is_finite()) {
                return Err(PermProblemError::NonFiniteValue { what: name });
            }
            if arr.iter().any(|&v| v < 0.0) {
                return Err(PermProblemError::NegativeValue { what: name });
            }
        }
        Ok(SmtwtpInstance { t, w, d })
    }

    pub fn n(&self) -> usize {
        self.t.len()
    }

    pub fn processing_time(&self, job: usize) -> f64 {
        self.t[job]
    }

    pub fn weight(&self, job: usize) -> f64 {
        self.w[job]
    }

    pub fn due_time(&self, job: usize) -> f64 {
        self.d[job]
    }

    fn cost(&self, job: usize, completion: f64) -> f64 {
        self.w[job] * (completion - self.d[job]).max(0.0)
    }
}

impl PermProblem for SmtwtpInstance {
    fn size(&self) -> usize {
        self.t.len()
    }

    fn evaluate(&self, sigma: &Permutation) -> Result<f64, PermProblemError> {
        if sigma.len() != self.n() {
            return Err(PermProblemError::SizeMismatch {
                got: sigma.len(),
                expected: self.n(),
            });
        }
        let mut clock = 0.0;
        let mut total = 0.0;
        for p in 0..self.n() {
            let job = sigma.apply(p);
            clock += self.t[job];
            total += self.cost(job, clock);
        }
        Ok(total)
    }

    fn offset_step(&self, sigma: &Permutation, pos: usize) -> f64 {
        self.t[sigma.apply(pos)]
    }

    fn window_delta_with_offset(
        &self,
        sigma: &Permutation,
        h: &Permutation,
        lo: usize,
        hi: usize,
        offset: f64,
    ) -> f64 {
        // Jobs after the window see the same completion times because the
        // window's total processing time is invariant, so only the window
        // jobs' tardiness changes. One pass with two running clocks.
        let mut old_clock = offset;
        let mut new_clock = offset;
        let mut delta = 0.0;
        for p in lo..=hi {
            let old_job = sigma.apply(p);
            let new_job = sigma.apply(h.apply(p));
            old_clock += self.t[old_job];
            new_clock += self.t[new_job];
            delta += self.cost(new_job, new_clock) - self.cost(old_job, old_clock);
        }
        delta
    }
}

/// Parses the plain-text format: n, then three n-value lists in the order
/// processing times, weights, due times.
pub fn parse_smtwtp(text: &str) -> Result<SmtwtpInstance, PermProblemError> {
    let mut cur = TokenCursor::new(text);
    let n: usize = cur.parse_next("job count").map_err(parse_err)?;
    let mut read = |what: &str| -> Result<Vec<f64>, PermProblemError> {
        (0..n)
            .map(|_| cur.parse_next::<f64>(what).map_err(parse_err))
            .collect()
    };
    let t = read("processing time")?;
    let w = read("weight")?;
    let d = read("due time")?;
    cur.finish().map_err(parse_err)?;
    let line = cur.line();
    SmtwtpInstance::new(t, w, d).map_err(|e| match e {
        PermProblemError::NonFiniteValue { what } | PermProblemError::NegativeValue { what } => {
            PermProblemError::Parse {
                line,
                message: format!("bad {what}"),
            }
        }
        other => other,
    })
}

/// Writes the format accepted by [`parse_smtwtp`].
pub fn format_smtwtp(inst: &SmtwtpInstance) -> String {
    let join = |arr: &[f64]| {
        arr.iter()
            .map(|&v| crate::pseudo_boolean::fmt_value(v))
            .collect::<Vec<_>>()
            .join(" ")
    };
    format!(
        "{}\n{}\n{}\n{}\n",
        inst.n(),
        join(&inst.t),
        join(&inst.w),
        join(&inst.d)
    )
}

/// Random instance in the classic benchmark style: integer processing
/// times in 1..=100 and weights in 1..=10; due times drawn uniformly from
/// a window around `(1 - tardiness_factor) * total`, whose width is
/// `due_date_range * total`, clamped at zero. Both factors live in [0, 1].
pub fn generate_smtwtp(
    n: usize,
    seed: u64,
    tardiness_factor: f64,
    due_date_range: f64,
) -> Result<SmtwtpInstance, PermProblemError> {
    for (name, v) in [
        ("tardiness factor", tardiness_factor),
        ("due date range", due_date_range),
    ] {
        if !(0.0..=1.0).contains(&v) {
            return Err(PermProblemError::BadParam {
                message: format!("{name} {v} outside [0, 1]"),
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t: Vec<f64> = (0..n).map(|_| rng.random_range(1..=100) as f64).collect();
    let w: Vec<f64> = (0..n).map(|_| rng.random_range(1..=10) as f64).collect();
    let total: f64 = t.iter().sum();
    let center = (1.0 - tardiness_factor) * total;
    let half = due_date_range * total / 2.0;
    let lo = ((center - half).max(0.0)).round() as i64;
    let hi = ((center + half).max(0.0)).round() as i64;
    let d: Vec<f64> = (0..n).map(|_| rng.random_range(lo..=hi) as f64).collect();
    SmtwtpInstance::new(t, w, d)
}
