//! Small shared helpers: the improving-move index used by the hill climbers
//! and a token cursor for the plain-text instance parsers.

use std::collections::HashMap;
use std::str::FromStr;

/// Whitespace token stream with line tracking, for instance-file parsing.
/// Errors are `(line, message)` pairs for the caller to wrap.
pub struct TokenCursor<'a> {
    tokens: Vec<(usize, &'a str)>,
    pos: usize,
    line: usize,
}

impl<'a> TokenCursor<'a> {
    pub fn new(text: &'a str) -> Self {
        let tokens = text
            .lines()
            .enumerate()
            .flat_map(|(ln, line)| line.split_whitespace().map(move |t| (ln + 1, t)))
            .collect();
        TokenCursor {
            tokens,
            pos: 0,
            line: 1,
        }
    }

    /// Line of the most recently consumed token.
    pub fn line(&self) -> usize {
        self.line
    }

    pub fn next_token(&mut self, what: &str) -> Result<(usize, &'a str), (usize, String)> {
        match self.tokens.get(self.pos) {
            Some(&(ln, t)) => {
                self.pos += 1;
                self.line = ln;
                Ok((ln, t))
            }
            None => Err((
                self.line,
                format!("unexpected end of input, expected {what}"),
            )),
        }
    }

    /// Reads and parses the next token as `T`.
    pub fn parse_next<T: FromStr>(&mut self, what: &str) -> Result<T, (usize, String)> {
        let (ln, t) = self.next_token(what)?;
        t.parse().map_err(|_| (ln, format!("bad {what} \"{t}\"")))
    }

    /// Peeks at the next token without consuming it.
    pub fn peek(&self) -> Option<(usize, &'a str)> {
        self.tokens.get(self.pos).copied()
    }

    /// Consumes every remaining token on the next token's line. Used to skip
    /// free-form header lines such as an instance name.
    pub fn skip_line(&mut self) {
        if let Some(&(ln, _)) = self.tokens.get(self.pos) {
            while self.tokens.get(self.pos).is_some_and(|&(l, _)| l == ln) {
                self.pos += 1;
            }
            self.line = ln;
        }
    }

    /// Errors if any token remains.
    pub fn finish(&self) -> Result<(), (usize, String)> {
        match self.tokens.get(self.pos) {
            Some(&(ln, t)) => Err((ln, format!("trailing token \"{t}\""))),
            None => Ok(()),
        }
    }
}

/// Set of move indices with O(1) insert, remove, and uniform random choice.
///
/// Backed by a dense vector plus an index map; removal swaps the victim with
/// the last element. Iteration order is therefore arbitrary, which is fine for
/// random selection; deterministic selection uses [`ImprovingSet::min`].
#[derive(Clone, Debug, Default)]
pub struct ImprovingSet {
    members: Vec<usize>,
    slot: HashMap<usize, usize>,
}

impl ImprovingSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.slot.contains_key(&id)
    }

    /// Inserts `id`; no effect if already present.
    pub fn insert(&mut self, id: usize) {
        if !self.slot.contains_key(&id) {
            self.slot.insert(id, self.members.len());
            self.members.push(id);
        }
    }

    /// Removes `id`; no effect if absent.
    pub fn remove(&mut self, id: usize) {
        if let Some(pos) = self.slot.remove(&id) {
            let last = self.members.pop().expect("slot map out of sync");
            if pos < self.members.len() {
                self.members[pos] = last;
                self.slot.insert(last, pos);
            }
        }
    }

    /// Keeps or drops `id` according to `keep`.
    pub fn set(&mut self, id: usize, keep: bool) {
        if keep {
            self.insert(id);
        } else {
            self.remove(id);
        }
    }

    /// The member at a dense position in `0..len()`. Use with a random index
    /// for uniform choice; the position-to-member mapping changes on removal.
    pub fn at(&self, pos: usize) -> usize {
        self.members[pos]
    }

    /// Smallest member, scanning the dense vector.
    pub fn min(&self) -> Option<usize> {
        self.members.iter().copied().min()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_remove_tracks_membership() {
        let mut s = ImprovingSet::new();
        for id in [3, 7, 7, 11] {
            s.insert(id);
        }
        assert_eq!(s.len(), 3);
        assert!(s.contains(7));
        s.remove(7);
        assert!(!s.contains(7));
        assert_eq!(s.len(), 2);
        s.remove(7);
        assert_eq!(s.len(), 2);
        assert_eq!(s.min(), Some(3));
        s.remove(3);
        s.remove(11);
        assert!(s.is_empty());
        assert_eq!(s.min(), None);
    }

    #[test]
    fn removal_keeps_dense_positions_valid() {
        let mut s = ImprovingSet::new();
        for id in 0..100 {
            s.insert(id);
        }
        for id in (0..100).step_by(3) {
            s.remove(id);
        }
        let mut seen: Vec<usize> = (0..s.len()).map(|p| s.at(p)).collect();
        seen.sort_unstable();
        let expect: Vec<usize> = (0..100).filter(|i| i % 3 != 0).collect();
        assert_eq!(seen, expect);
    }
}
