//! k-bounded pseudo-Boolean functions and the gray-box operators they admit:
//! Walsh expansion, variable interaction graph, non-interaction tests for
//! bit-flip moves, move decomposition, an incremental hill climber, and
//! partition crossover.
//!
//! All objectives are minimized. Instance generators emit integer tables, so
//! deltas and crossover comparisons are exact in `f64`.

pub mod crossover;
pub mod hill_climb;
pub mod vig;
pub mod walsh;

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::group_fourier::BitString;

pub use crossover::{px_binary, px_binary_with_vig, BinaryComponentReport, BinaryPxResult};
pub use hill_climb::{bitflip_hill_climb, bitflip_hill_climb_with, BitHcStep, BitHcTrace, FlipScores};
pub use vig::{build_vig, decompose_move, moves_interact_vig, moves_interact_walsh, Vig};
pub use walsh::{WalshExpansion, WALSH_PRUNE_EPS};

/// Largest subfunction arity accepted; tables hold `2^arity` values.
pub const MAX_SUBFUNCTION_ARITY: usize = 16;

/// Largest move support for which [`decompose_move`] will search splits.
pub const MAX_DECOMPOSE_SUPPORT: u32 = 12;

#[derive(Debug, Clone, PartialEq)]
pub enum PbError {
    BadVariable { sub: usize, var: usize, n: usize },
    DuplicateVariable { sub: usize, var: usize },
    ArityTooLarge { sub: usize, arity: usize, max: usize },
    BadTableLength { sub: usize, got: usize, expected: usize },
    NonFiniteValue { sub: usize },
    LengthMismatch { got: usize, expected: usize },
    /// Precondition of the VIG interaction test: supports must be disjoint.
    OverlappingSupports { shared: u64 },
    /// Precondition of the split search: support small enough to enumerate.
    SupportTooLarge { size: u32, max: u32 },
    Parse { line: usize, message: String },
}

impl fmt::Display for PbError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PbError::BadVariable { sub, var, n } => write!(
                f,
                "subfunction {sub}: variable {} out of range 1..={n}",
                var + 1
            ),
            PbError::DuplicateVariable { sub, var } => write!(
                f,
                "subfunction {sub}: variable {} listed twice",
                var + 1
            ),
            PbError::ArityTooLarge { sub, arity, max } => {
                write!(f, "subfunction {sub}: arity {arity} exceeds {max}")
            }
            PbError::BadTableLength { sub, got, expected } => write!(
                f,
                "subfunction {sub}: table has {got} values, expected {expected}"
            ),
            PbError::NonFiniteValue { sub } => {
                write!(f, "subfunction {sub}: non-finite table value")
            }
            PbError::LengthMismatch { got, expected } => {
                write!(f, "bit string length {got} does not match n = {expected}")
            }
            PbError::OverlappingSupports { shared } => {
                write!(f, "move supports overlap on mask {shared:#b}")
            }
            PbError::SupportTooLarge { size, max } => {
                write!(f, "move support of {size} bits exceeds split-search cap {max}")
            }
            PbError::Parse { line, message } => write!(f, "line {line}: {message}"),
        }
    }
}

impl std::error::Error for PbError {}

/// One additive piece of the objective: a tuple of variables and a lookup
/// table over their joint assignments. Bit `b` of the table index is the
/// value of `vars[b]`, so `vars[0]` is least significant.
#[derive(Debug, Clone, PartialEq)]
pub struct Subfunction {
    vars: Vec<usize>,
    table: Vec<f64>,
}

impl Subfunction {
    pub fn new(vars: Vec<usize>, table: Vec<f64>) -> Self {
        Subfunction { vars, table }
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    /// Table index of `x` restricted to this subfunction's variables.
    #[inline]
    pub fn local_index(&self, x: &BitString) -> usize {
        let mut idx = 0;
        for (b, &v) in self.vars.iter().enumerate() {
            idx |= (x.get(v) as usize) << b;
        }
        idx
    }

    #[inline]
    pub fn value_at(&self, x: &BitString) -> f64 {
        self.table[self.local_index(x)]
    }
}

/// A sum of bounded-arity subfunctions over `n` binary variables.
#[derive(Debug, Clone)]
pub struct KBoundedFunction {
    n: usize,
    subfunctions: Vec<Subfunction>,
    /// For each variable, indices of the subfunctions containing it.
    var_subs: Vec<Vec<usize>>,
    /// For each variable, the sorted set of variables sharing a subfunction
    /// with it (itself included).
    coupled: Vec<Vec<usize>>,
}

impl KBoundedFunction {
    pub fn new(n: usize, subfunctions: Vec<Subfunction>) -> Result<Self, PbError> {
        for (s, sub) in subfunctions.iter().enumerate() {
            if sub.arity() > MAX_SUBFUNCTION_ARITY {
                return Err(PbError::ArityTooLarge {
                    sub: s,
                    arity: sub.arity(),
                    max: MAX_SUBFUNCTION_ARITY,
                });
            }
            let mut seen = vec![false; n];
            for &v in sub.vars() {
                if v >= n {
                    return Err(PbError::BadVariable { sub: s, var: v, n });
                }
                if seen[v] {
                    return Err(PbError::DuplicateVariable { sub: s, var: v });
                }
                seen[v] = true;
            }
            if sub.table().len() != 1 << sub.arity() {
                return Err(PbError::BadTableLength {
                    sub: s,
                    got: sub.table().len(),
                    expected: 1 << sub.arity(),
                });
            }
            if sub.table().iter().any(|v| !v.is_finite()) {
                return Err(PbError::NonFiniteValue { sub: s });
            }
        }
        let mut var_subs = vec![Vec::new(); n];
        for (s, sub) in subfunctions.iter().enumerate() {
            for &v in sub.vars() {
                var_subs[v].push(s);
            }
        }
        let mut coupled = Vec::with_capacity(n);
        for (v, subs) in var_subs.iter().enumerate() {
            let mut set: Vec<usize> = subs
                .iter()
                .flat_map(|&s| subfunctions[s].vars().iter().copied())
                .collect();
            set.push(v);
            set.sort_unstable();
            set.dedup();
            coupled.push(set);
        }
        Ok(KBoundedFunction {
            n,
            subfunctions,
            var_subs,
            coupled,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn subfunctions(&self) -> &[Subfunction] {
        &self.subfunctions
    }

    pub fn max_arity(&self) -> usize {
        self.subfunctions.iter().map(Subfunction::arity).max().unwrap_or(0)
    }

    /// Indices of subfunctions containing variable `v`.
    pub fn subs_of_var(&self, v: usize) -> &[usize] {
        &self.var_subs[v]
    }

    /// Variables sharing a subfunction with `v`, sorted, `v` included.
    pub fn coupled_vars(&self, v: usize) -> &[usize] {
        &self.coupled[v]
    }

    pub fn evaluate(&self, x: &BitString) -> Result<f64, PbError> {
        if x.len() != self.n {
            return Err(PbError::LengthMismatch {
                got: x.len(),
                expected: self.n,
            });
        }
        Ok(self.subfunctions.iter().map(|s| s.value_at(x)).sum())
    }
}

/// Parses the plain-text instance format: a header `n m k`, then for each of
/// the `m` subfunctions a block `arity v1 .. va` followed by `2^arity` table
/// values. Tokens may be split across lines arbitrarily.
pub fn parse_kbounded(text: &str) -> Result<KBoundedFunction, PbError> {
    let wrap = |(line, message): (usize, String)| PbError::Parse { line, message };
    let mut cur = crate::util::TokenCursor::new(text);
    let n: usize = cur.parse_next("variable count").map_err(wrap)?;
    let m: usize = cur.parse_next("subfunction count").map_err(wrap)?;
    let k: usize = cur.parse_next("arity bound").map_err(wrap)?;
    if k > MAX_SUBFUNCTION_ARITY {
        return Err(PbError::Parse {
            line: cur.line(),
            message: format!("arity bound {k} exceeds {MAX_SUBFUNCTION_ARITY}"),
        });
    }
    let mut subfunctions = Vec::with_capacity(m);
    for s in 0..m {
        let arity: usize = cur.parse_next("arity").map_err(wrap)?;
        if arity > k {
            return Err(PbError::Parse {
                line: cur.line(),
                message: format!("subfunction {s}: arity {arity} exceeds bound {k}"),
            });
        }
        let mut vars = Vec::with_capacity(arity);
        for _ in 0..arity {
            let v: usize = cur.parse_next("variable index").map_err(wrap)?;
            if v == 0 || v > n {
                return Err(PbError::Parse {
                    line: cur.line(),
                    message: format!("subfunction {s}: variable {v} out of range 1..={n}"),
                });
            }
            vars.push(v - 1);
        }
        let mut table = Vec::with_capacity(1 << arity);
        for _ in 0..1usize << arity {
            table.push(cur.parse_next("table value").map_err(wrap)?);
        }
        subfunctions.push(Subfunction::new(vars, table));
    }
    cur.finish().map_err(wrap)?;
    KBoundedFunction::new(n, subfunctions)
}

/// Formats a number so that integers survive a write/parse round trip
/// unchanged and without a trailing `.0`.
pub(crate) fn fmt_value(x: f64) -> String {
    if x == x.trunc() && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        format!("{x}")
    }
}

/// Writes the instance in the format of [`parse_kbounded`].
pub fn format_kbounded(f: &KBoundedFunction) -> String {
    let k = f.max_arity();
    let mut out = format!("{} {} {}\n", f.n(), f.subfunctions().len(), k);
    for sub in f.subfunctions() {
        out.push_str(&sub.arity().to_string());
        for &v in sub.vars() {
            out.push(' ');
            out.push_str(&(v + 1).to_string());
        }
        out.push('\n');
        let row: Vec<String> = sub.table().iter().map(|&v| fmt_value(v)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Random NK-style instance: one subfunction per variable, each containing
/// its owner plus `k - 1` distinct random partners, with integer tables in
/// `0..100`. Deterministic per seed.
pub fn generate_nk(n: usize, k: usize, seed: u64) -> KBoundedFunction {
    assert!(k >= 1 && k <= n, "arity must be in 1..=n");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut subfunctions = Vec::with_capacity(n);
    for v in 0..n {
        let mut vars = vec![v];
        while vars.len() < k {
            let u = rng.random_range(0..n);
            if !vars.contains(&u) {
                vars.push(u);
            }
        }
        let table = (0..1usize << k)
            .map(|_| rng.random_range(0..100) as f64)
            .collect();
        subfunctions.push(Subfunction::new(vars, table));
    }
    KBoundedFunction::new(n, subfunctions).expect("generated instance is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(text: &str) -> BitString {
        BitString::parse(text).unwrap()
    }

    #[test]
    fn evaluation_sums_subfunctions() {
        // f(x) = g(x1, x2) + h(x2, x3) with g = AND scaled, h = x2 XOR x3.
        let f = KBoundedFunction::new(
            3,
            vec![
                Subfunction::new(vec![0, 1], vec![0.0, 0.0, 0.0, 7.0]),
                Subfunction::new(vec![1, 2], vec![0.0, 1.0, 1.0, 0.0]),
            ],
        )
        .unwrap();
        assert_eq!(f.evaluate(&bits("000")).unwrap(), 0.0);
        assert_eq!(f.evaluate(&bits("110")).unwrap(), 8.0);
        assert_eq!(f.evaluate(&bits("111")).unwrap(), 7.0);
        assert_eq!(f.evaluate(&bits("011")).unwrap(), 0.0);
        assert!(f.evaluate(&bits("0110")).is_err());
    }

    #[test]
    fn local_index_puts_first_variable_lowest() {
        let sub = Subfunction::new(vec![2, 0], vec![10.0, 20.0, 30.0, 40.0]);
        // Index bit 0 is variable 3, bit 1 is variable 1.
        assert_eq!(sub.local_index(&bits("001")), 0b01);
        assert_eq!(sub.local_index(&bits("100")), 0b10);
        assert_eq!(sub.value_at(&bits("101")), 40.0);
    }

    #[test]
    fn construction_validates_inputs() {
        let dup = KBoundedFunction::new(
            3,
            vec![Subfunction::new(vec![1, 1], vec![0.0; 4])],
        );
        assert!(matches!(dup, Err(PbError::DuplicateVariable { .. })));
        let range = KBoundedFunction::new(2, vec![Subfunction::new(vec![5], vec![0.0; 2])]);
        assert!(matches!(range, Err(PbError::BadVariable { .. })));
        let table = KBoundedFunction::new(2, vec![Subfunction::new(vec![0], vec![0.0; 3])]);
        assert!(matches!(table, Err(PbError::BadTableLength { .. })));
        let inf = KBoundedFunction::new(
            2,
            vec![Subfunction::new(vec![0], vec![0.0, f64::INFINITY])],
        );
        assert!(matches!(inf, Err(PbError::NonFiniteValue { .. })));
    }

    #[test]
    fn coupling_lists_follow_shared_subfunctions() {
        let f = KBoundedFunction::new(
            4,
            vec![
                Subfunction::new(vec![0, 1], vec![0.0; 4]),
                Subfunction::new(vec![1, 2], vec![0.0; 4]),
                Subfunction::new(vec![3], vec![0.0; 2]),
            ],
        )
        .unwrap();
        assert_eq!(f.coupled_vars(0), &[0, 1]);
        assert_eq!(f.coupled_vars(1), &[0, 1, 2]);
        assert_eq!(f.coupled_vars(3), &[3]);
        assert_eq!(f.subs_of_var(1), &[0, 1]);
    }

    #[test]
    fn parse_roundtrip() {
        let text = "3 2 2\n2 1 2\n1 2 3 4\n2 2 3\n0 1 1 0\n";
        let f = parse_kbounded(text).unwrap();
        assert_eq!(f.n(), 3);
        assert_eq!(f.subfunctions().len(), 2);
        assert_eq!(f.subfunctions()[0].vars(), &[0, 1]);
        assert_eq!(f.subfunctions()[0].table(), &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(format_kbounded(&f), text);
    }

    #[test]
    fn parse_reports_line_numbers() {
        let err = parse_kbounded("3 1 2\n2 1 9\n1 2 3 4\n").unwrap_err();
        assert_eq!(
            err,
            PbError::Parse {
                line: 2,
                message: "subfunction 0: variable 9 out of range 1..=3".to_string()
            }
        );
        let err = parse_kbounded("3 1 2\n2 1 2\n1 2 3\n").unwrap_err();
        assert!(matches!(err, PbError::Parse { line: 3, .. }));
        let err = parse_kbounded("3 1 2\n2 1 2\n1 2 3 x\n").unwrap_err();
        assert!(matches!(err, PbError::Parse { line: 3, .. }));
        let err = parse_kbounded("3 1 2\n2 1 2\n1 2 3 4\n5\n").unwrap_err();
        assert!(matches!(err, PbError::Parse { line: 4, .. }));
    }

    #[test]
    fn generator_is_deterministic_and_bounded() {
        let a = generate_nk(10, 3, 42);
        let b = generate_nk(10, 3, 42);
        assert_eq!(format_kbounded(&a), format_kbounded(&b));
        let c = generate_nk(10, 3, 43);
        assert_ne!(format_kbounded(&a), format_kbounded(&c));
        assert_eq!(a.max_arity(), 3);
        assert_eq!(a.subfunctions().len(), 10);
        for sub in a.subfunctions() {
            assert!(sub.table().iter().all(|&v| (0.0..100.0).contains(&v)));
            assert!(sub.table().iter().all(|&v| v == v.trunc()));
        }
        // Round trip through the text format preserves the instance.
        let back = parse_kbounded(&format_kbounded(&a)).unwrap();
        assert_eq!(format_kbounded(&back), format_kbounded(&a));
    }
}
