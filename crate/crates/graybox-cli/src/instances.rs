//! Loading problem instances from disk and mapping library errors onto the
//! harness exit-code classes.

use crate::config::ProblemKind;
use crate::{read_input, CliError};
use graybox::group_fourier::{BitError, BitString, PermError, Permutation};
use graybox::perm_problems::{
    parse_lop, parse_smtwtp, LopInstance, PermProblem, PermProblemError, SmtwtpInstance,
};
use graybox::pseudo_boolean::{parse_kbounded, KBoundedFunction, PbError};
use std::path::Path;

pub enum LoadedProblem {
    Lop(LopInstance),
    Smtwtp(SmtwtpInstance),
    Pb(KBoundedFunction),
}

impl LoadedProblem {
    pub fn load(kind: ProblemKind, path: &Path) -> Result<LoadedProblem, CliError> {
        let text = read_input(path)?;
        match kind {
            ProblemKind::Lop => Ok(LoadedProblem::Lop(parse_lop(&text).map_err(perm_error)?)),
            ProblemKind::Smtwtp => {
                Ok(LoadedProblem::Smtwtp(parse_smtwtp(&text).map_err(perm_error)?))
            }
            ProblemKind::Pb => Ok(LoadedProblem::Pb(parse_kbounded(&text).map_err(pb_error)?)),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            LoadedProblem::Lop(inst) => inst.size(),
            LoadedProblem::Smtwtp(inst) => inst.size(),
            LoadedProblem::Pb(f) => f.n(),
        }
    }

    pub fn as_perm(&self) -> Option<&dyn PermProblem> {
        match self {
            LoadedProblem::Lop(inst) => Some(inst),
            LoadedProblem::Smtwtp(inst) => Some(inst),
            LoadedProblem::Pb(_) => None,
        }
    }

    pub fn as_pb(&self) -> Option<&KBoundedFunction> {
        match self {
            LoadedProblem::Pb(f) => Some(f),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub enum Solution {
    Perm(Permutation),
    Bits(BitString),
}

/// Parses a solution in the representation the problem calls for: one-based
/// job or row images for permutation problems, a 0/1 string for
/// pseudo-Boolean ones.
pub fn parse_solution(problem: &LoadedProblem, text: &str) -> Result<Solution, CliError> {
    match problem {
        LoadedProblem::Lop(_) | LoadedProblem::Smtwtp(_) => {
            let mut images = Vec::new();
            for tok in text.split_whitespace() {
                let v: usize = tok
                    .parse()
                    .map_err(|_| CliError::Parse(format!("bad permutation entry {tok:?}")))?;
                images.push(v);
            }
            let sigma = Permutation::from_one_based(&images).map_err(perm_math_error)?;
            if sigma.len() != problem.size() {
                return Err(CliError::Parse(format!(
                    "solution has {} entries, instance needs {}",
                    sigma.len(),
                    problem.size()
                )));
            }
            Ok(Solution::Perm(sigma))
        }
        LoadedProblem::Pb(f) => {
            let x = BitString::parse(text.trim()).map_err(bit_error)?;
            if x.len() != f.n() {
                return Err(CliError::Parse(format!(
                    "solution has {} bits, function needs {}",
                    x.len(),
                    f.n()
                )));
            }
            Ok(Solution::Bits(x))
        }
    }
}

pub fn default_solution(problem: &LoadedProblem) -> Solution {
    match problem {
        LoadedProblem::Lop(_) | LoadedProblem::Smtwtp(_) => {
            Solution::Perm(Permutation::identity(problem.size()))
        }
        LoadedProblem::Pb(f) => Solution::Bits(BitString::zeros(f.n()).expect("n was validated")),
    }
}

pub fn evaluate_solution(problem: &LoadedProblem, solution: &Solution) -> Result<f64, CliError> {
    match (problem, solution) {
        (LoadedProblem::Pb(f), Solution::Bits(x)) => f.evaluate(x).map_err(pb_error),
        (_, Solution::Perm(sigma)) => {
            let perm = problem.as_perm().expect("perm solution implies perm problem");
            perm.evaluate(sigma).map_err(perm_error)
        }
        _ => Err(CliError::Usage("solution kind does not match the problem".to_string())),
    }
}

/// Formats a fitness value without a trailing `.0` when it is integral, as
/// all the bundled generators produce integer-valued objectives.
pub fn fmt_num(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

pub fn perm_error(e: PermProblemError) -> CliError {
    match e {
        PermProblemError::Parse { .. } => CliError::Parse(e.to_string()),
        _ => CliError::Usage(e.to_string()),
    }
}

pub fn pb_error(e: PbError) -> CliError {
    match e {
        PbError::Parse { .. } => CliError::Parse(e.to_string()),
        PbError::ArityTooLarge { .. } | PbError::SupportTooLarge { .. } => {
            CliError::Capacity(e.to_string())
        }
        _ => CliError::Usage(e.to_string()),
    }
}

pub fn bit_error(e: BitError) -> CliError {
    match e {
        BitError::TooLong { .. } => CliError::Capacity(e.to_string()),
        BitError::Parse { .. } => CliError::Parse(e.to_string()),
        BitError::LengthMismatch { .. } => CliError::Usage(e.to_string()),
    }
}

pub fn perm_math_error(e: PermError) -> CliError {
    match e {
        PermError::Parse { .. } | PermError::NotAPermutation { .. } => {
            CliError::Parse(e.to_string())
        }
        PermError::RankUnsupported { .. } => CliError::Capacity(e.to_string()),
        PermError::RankOutOfRange { .. } => CliError::Usage(e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use graybox::perm_problems::generate_lop;
    use graybox::pseudo_boolean::generate_nk;

    #[test]
    fn fmt_num_drops_integral_fractions() {
        assert_eq!(fmt_num(5.0), "5");
        assert_eq!(fmt_num(-13.0), "-13");
        assert_eq!(fmt_num(2.5), "2.5");
    }

    #[test]
    fn perm_solution_roundtrip() {
        let inst = generate_lop(4, 11);
        let problem = LoadedProblem::Lop(inst);
        let sol = parse_solution(&problem, "2 4 1 3").unwrap();
        let Solution::Perm(sigma) = &sol else { panic!("expected a permutation") };
        assert_eq!(sigma.images(), &[1, 3, 0, 2]);
        evaluate_solution(&problem, &sol).unwrap();
    }

    #[test]
    fn wrong_length_solution_is_a_parse_error() {
        let problem = LoadedProblem::Pb(generate_nk(6, 2, 3));
        let err = parse_solution(&problem, "0101").unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn bit_length_cap_maps_to_capacity() {
        let long = "01".repeat(40);
        let problem = LoadedProblem::Pb(generate_nk(6, 2, 3));
        let err = parse_solution(&problem, &long).unwrap_err();
        assert_eq!(err.exit_code(), 4);
    }

    #[test]
    fn default_solutions_match_problem_size() {
        let problem = LoadedProblem::Lop(generate_lop(5, 2));
        let Solution::Perm(sigma) = default_solution(&problem) else { panic!() };
        assert!(sigma.is_identity());
        assert_eq!(sigma.len(), 5);
    }
}
