//! Permutations with an explicit left-to-right composition convention.
//!
//! A `Permutation` stores 0-based images: `apply(p)` is the image of point
//! `p`. The product is written [`Permutation::then`]: `a.then(b)` applies `a`
//! first and `b` second. All public text I/O (one-line and cycle notation) is
//! 1-based; internals are 0-based.

use std::fmt;

use rand::Rng;

/// Largest `n` whose factorial fits in `usize`, used by rank/unrank.
pub const MAX_RANK_N: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PermError {
    /// The image list is not a bijection on `0..n`.
    NotAPermutation { reason: String },
    /// Text could not be parsed as a permutation.
    Parse { message: String },
    /// Rank/unrank requested for an `n` with `n! > usize::MAX`.
    RankUnsupported { n: usize },
    /// Unrank index out of `0..n!`.
    RankOutOfRange { rank: usize, n: usize },
}

impl fmt::Display for PermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermError::NotAPermutation { reason } => {
                write!(f, "not a permutation: {reason}")
            }
            PermError::Parse { message } => write!(f, "permutation parse error: {message}"),
            PermError::RankUnsupported { n } => {
                write!(f, "rank/unrank unsupported for n = {n} (max {MAX_RANK_N})")
            }
            PermError::RankOutOfRange { rank, n } => {
                write!(f, "rank {rank} out of range for n = {n}")
            }
        }
    }
}

impl std::error::Error for PermError {}

/// Factorial of `n`; `None` when it would overflow `usize`.
pub fn factorial(n: usize) -> Option<usize> {
    if n > MAX_RANK_N {
        return None;
    }
    let mut acc: usize = 1;
    for k in 2..=n {
        acc = acc.checked_mul(k)?;
    }
    Some(acc)
}

/// A permutation of `{0, .., n-1}` stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds from 0-based images; `images[p]` is where point `p` goes.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n {
                return Err(PermError::NotAPermutation {
                    reason: format!("image {} out of range for n = {}", v + 1, n),
                });
            }
            if seen[v] {
                return Err(PermError::NotAPermutation {
                    reason: format!("image {} appears twice", v + 1),
                });
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds from a 1-based image list, the form used in files and output.
    pub fn from_one_based(images: &[usize]) -> Result<Self, PermError> {
        for &v in images {
            if v == 0 {
                return Err(PermError::NotAPermutation {
                    reason: "one-based image list contains 0".to_string(),
                });
            }
        }
        Permutation::from_images(images.iter().map(|&v| v - 1).collect())
    }

    /// The transposition of points `i` and `j` (0-based) inside `0..n`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        assert!(i < n && j < n, "transposition points must lie in 0..n");
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, j);
        Permutation { images }
    }

    /// Embeds a permutation of `0..width` at offset `at`, identity elsewhere.
    pub fn embedded(n: usize, at: usize, local: &[usize]) -> Self {
        assert!(at + local.len() <= n, "embedded block exceeds 0..n");
        let mut images: Vec<usize> = (0..n).collect();
        for (off, &img) in local.iter().enumerate() {
            assert!(img < local.len(), "local image out of block range");
            images[at + off] = at + img;
        }
        let p = Permutation { images };
        debug_assert!(Permutation::from_images(p.images.clone()).is_ok());
        p
    }

    /// Uniformly random permutation (Fisher-Yates).
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        for p in (1..n).rev() {
            let q = rng.random_range(0..=p);
            images.swap(p, q);
        }
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of point `p`.
    #[inline]
    pub fn apply(&self, p: usize) -> usize {
        self.images[p]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(p, &v)| p == v)
    }

    /// Left-to-right product: `a.then(b)` maps `p` to `b(a(p))`.
    pub fn then(&self, b: &Permutation) -> Permutation {
        assert_eq!(self.len(), b.len(), "composing permutations of different sizes");
        Permutation {
            images: self.images.iter().map(|&v| b.images[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (p, &v) in self.images.iter().enumerate() {
            images[v] = p;
        }
        Permutation { images }
    }

    /// Points moved by this permutation, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(p, &v)| p != v)
            .map(|(p, _)| p)
            .collect()
    }

    /// Smallest and largest moved point, or `None` for the identity.
    pub fn support_range(&self) -> Option<(usize, usize)> {
        let mut lo = None;
        let mut hi = None;
        for (p, &v) in self.images.iter().enumerate() {
            if p != v {
                if lo.is_none() {
                    lo = Some(p);
                }
                hi = Some(p);
            }
        }
        Some((lo?, hi?))
    }

    /// Lexicographic rank of the image list among all permutations of `n`.
    pub fn rank(&self) -> Result<usize, PermError> {
        let n = self.len();
        let mut fact = factorial(n).ok_or(PermError::RankUnsupported { n })?;
        let mut rank = 0;
        let mut used = vec![false; n];
        for p in 0..n {
            fact /= n - p;
            let img = self.images[p];
            let smaller = (0..img).filter(|&v| !used[v]).count();
            rank += smaller * fact;
            used[img] = true;
        }
        Ok(rank)
    }

    /// Inverse of [`Permutation::rank`].
    pub fn from_rank(n: usize, rank: usize) -> Result<Self, PermError> {
        let total = factorial(n).ok_or(PermError::RankUnsupported { n })?;
        if rank >= total {
            return Err(PermError::RankOutOfRange { rank, n });
        }
        let mut avail: Vec<usize> = (0..n).collect();
        let mut fact = total;
        let mut r = rank;
        let mut images = Vec::with_capacity(n);
        for p in 0..n {
            fact /= n - p;
            let d = r / fact;
            r %= fact;
            images.push(avail.remove(d));
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation like `"(1 2 3)(4 6)"` over `1..=n`.
    ///
    /// Commas and spaces both separate points. `"(1)"` (or any all-singleton
    /// form) is the identity. Cycles are composed left to right, which is
    /// irrelevant for the usual disjoint form.
    pub fn parse_cycles(text: &str, n: usize) -> Result<Self, PermError> {
        let text = text.trim();
        if text.is_empty() {
            return Err(PermError::Parse {
                message: "empty cycle expression".to_string(),
            });
        }
        let mut result = Permutation::identity(n);
        let mut rest = text;
        while !rest.is_empty() {
            let rest_trim = rest.trim_start();
            let Some(stripped) = rest_trim.strip_prefix('(') else {
                return Err(PermError::Parse {
                    message: format!("expected '(' at \"{rest_trim}\""),
                });
            };
            let Some(close) = stripped.find(')') else {
                return Err(PermError::Parse {
                    message: "unclosed '('".to_string(),
                });
            };
            let body = &stripped[..close];
            rest = &stripped[close + 1..];
            let mut points = Vec::new();
            for tok in body.split(|c: char| c == ',' || c.is_whitespace()) {
                if tok.is_empty() {
                    continue;
                }
                let v: usize = tok.parse().map_err(|_| PermError::Parse {
                    message: format!("bad point \"{tok}\""),
                })?;
                if v == 0 || v > n {
                    return Err(PermError::Parse {
                        message: format!("point {v} out of range 1..={n}"),
                    });
                }
                points.push(v - 1);
            }
            if points.is_empty() {
                return Err(PermError::Parse {
                    message: "empty cycle \"()\"".to_string(),
                });
            }
            let mut seen = vec![false; n];
            for &p in &points {
                if seen[p] {
                    return Err(PermError::Parse {
                        message: format!("point {} repeated within a cycle", p + 1),
                    });
                }
                seen[p] = true;
            }
            let mut cycle_images: Vec<usize> = (0..n).collect();
            for w in 0..points.len() {
                cycle_images[points[w]] = points[(w + 1) % points.len()];
            }
            result = result.then(&Permutation {
                images: cycle_images,
            });
        }
        Ok(result)
    }

    /// Cycle notation, 1-based: disjoint cycles sorted by smallest point, each
    /// rotated to start at its smallest point, singletons omitted. The
    /// identity prints as `"(1)"`.
    pub fn cycle_string(&self) -> String {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            out.push('(');
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    out.push(' ');
                }
                out.push_str(&(p + 1).to_string());
                first = false;
                p = self.images[p];
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("(1)");
        }
        out
    }

    /// Parses a whitespace-separated 1-based image list like `"2 1 3"`.
    pub fn parse_one_based(text: &str) -> Result<Self, PermError> {
        let mut images = Vec::new();
        for tok in text.split_whitespace() {
            let v: usize = tok.parse().map_err(|_| PermError::Parse {
                message: format!("bad image \"{tok}\""),
            })?;
            images.push(v);
        }
        if images.is_empty() {
            return Err(PermError::Parse {
                message: "empty image list".to_string(),
            });
        }
        Permutation::from_one_based(&images)
    }

    /// 1-based image list, space separated.
    pub fn one_based_string(&self) -> String {
        self.images
            .iter()
            .map(|&v| (v + 1).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_string())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]", self.one_based_string())
    }
}
