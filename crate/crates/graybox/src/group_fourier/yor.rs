//! Irreducible representations of the symmetric group in Young's orthogonal
//! form.
//!
//! Each irrep is labeled by an integer partition of `n`. Its basis is the set
//! of standard Young tableaux of that shape, ordered lexicographically by row
//! word (the sequence of row indices of values `1..n`). The matrix for an
//! adjacent transposition `(k k+1)` acts on a basis tableau through the axial
//! distance between `k` and `k+1`; arbitrary permutations are factored into
//! adjacent transpositions and their matrices multiplied in factor order,
//! consistent with the left-to-right product of [`super::perm::Permutation`].
//!
//! All matrices are real orthogonal, so no complex arithmetic is needed.

use std::collections::HashMap;
use std::fmt;

use nalgebra::DMatrix;

use super::perm::Permutation;
use super::GroupFourierError;

/// Largest symmetric-group degree for which irreps are materialized. The
/// representation data grows like `n!`, and 7! = 5040 keeps full transforms
/// comfortably in memory.
pub const MAX_YOR_N: usize = 7;

/// An integer partition with weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, GroupFourierError> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(GroupFourierError::BadPartition {
                reason: "parts must be positive".to_string(),
            });
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(GroupFourierError::BadPartition {
                reason: "parts must be weakly decreasing".to_string(),
            });
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn sum(&self) -> usize {
        self.parts.iter().sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.parts
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{self}")
    }
}

/// All partitions of `n`, in descending lexicographic order, so `(n)` first
/// and `(1,1,..,1)` last.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, n, &mut Vec::new(), &mut out);
    }
    out
}

/// Positions of values `0..n` in a standard tableau: `pos[v] = (row, col)`.
type TableauPositions = Vec<(usize, usize)>;

/// All standard Young tableaux of `shape`, ordered lexicographically by row
/// word. The backtracking tries rows top to bottom for each value in turn, so
/// the output is already in that order.
fn standard_tableaux(shape: &[usize]) -> Vec<TableauPositions> {
    let n: usize = shape.iter().sum();
    let mut fill = vec![0usize; shape.len()];
    let mut pos: TableauPositions = Vec::with_capacity(n);
    let mut out = Vec::new();

    fn rec(
        v: usize,
        n: usize,
        shape: &[usize],
        fill: &mut [usize],
        pos: &mut TableauPositions,
        out: &mut Vec<TableauPositions>,
    ) {
        if v == n {
            out.push(pos.clone());
            return;
        }
        for r in 0..shape.len() {
            let c = fill[r];
            if c < shape[r] && (r == 0 || fill[r - 1] > c) {
                fill[r] += 1;
                pos.push((r, c));
                rec(v + 1, n, shape, fill, pos, out);
                pos.pop();
                fill[r] -= 1;
            }
        }
    }

    rec(0, n, shape, &mut fill, &mut pos, &mut out);
    out
}

/// Decomposes `g` into adjacent transpositions `s_k` (swapping points `k` and
/// `k+1`), such that chaining the factors with `then` in the returned order
/// reproduces `g`. Uses at most `n(n-1)/2` factors.
pub fn adjacent_factors(g: &Permutation) -> Vec<usize> {
    let mut w = g.images().to_vec();
    let mut factors = Vec::new();
    loop {
        let Some(k) = (0..w.len().saturating_sub(1)).find(|&k| w[k] > w[k + 1]) else {
            return factors;
        };
        factors.push(k);
        w.swap(k, k + 1);
    }
}

/// One irreducible representation of the symmetric group on `n` points.
#[derive(Clone, Debug)]
pub struct SnIrrep {
    partition: Partition,
    n: usize,
    dim: usize,
    /// `adjacent[k]` represents the transposition of points `k` and `k+1`.
    adjacent: Vec<DMatrix<f64>>,
}

impl SnIrrep {
    pub fn new(partition: Partition) -> Self {
        let n = partition.sum();
        let tableaux = standard_tableaux(partition.parts());
        let dim = tableaux.len();
        let index: HashMap<TableauPositions, usize> = tableaux
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect();

        let mut adjacent = Vec::with_capacity(n.saturating_sub(1));
        for k in 0..n.saturating_sub(1) {
            let mut m = DMatrix::<f64>::zeros(dim, dim);
            for (t, tab) in tableaux.iter().enumerate() {
                let (r1, c1) = tab[k];
                let (r2, c2) = tab[k + 1];
                if r1 == r2 {
                    m[(t, t)] = 1.0;
                } else if c1 == c2 {
                    m[(t, t)] = -1.0;
                } else {
                    let d = (c2 as i64 - r2 as i64) - (c1 as i64 - r1 as i64);
                    let rho = 1.0 / d as f64;
                    m[(t, t)] = rho;
                    let mut swapped = tab.clone();
                    swapped.swap(k, k + 1);
                    let u = index[&swapped];
                    if u > t {
                        let off = (1.0 - rho * rho).sqrt();
                        m[(t, u)] = off;
                        m[(u, t)] = off;
                    }
                }
            }
            adjacent.push(m);
        }

        SnIrrep {
            partition,
            n,
            dim,
            adjacent,
        }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Representation matrix of `g`, a product of adjacent-transposition
    /// matrices along a factorization of `g`.
    pub fn matrix(&self, g: &Permutation) -> DMatrix<f64> {
        assert_eq!(g.len(), self.n, "permutation degree does not match irrep");
        let mut m = DMatrix::<f64>::identity(self.dim, self.dim);
        for k in adjacent_factors(g) {
            m *= &self.adjacent[k];
        }
        m
    }
}

/// The complete list of irreps of the symmetric group on `n` points, one per
/// partition of `n`, in the order of [`partitions`]. Degrees above
/// [`MAX_YOR_N`] are refused.
pub fn yor_irreps(n: usize) -> Result<Vec<SnIrrep>, GroupFourierError> {
    if n == 0 || n > MAX_YOR_N {
        return Err(GroupFourierError::UnsupportedDegree {
            n,
            max: MAX_YOR_N,
        });
    }
    Ok(partitions(n).into_iter().map(SnIrrep::new).collect())
}
