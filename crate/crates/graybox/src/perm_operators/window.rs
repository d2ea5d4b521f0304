//! Window moves: non-identity rearrangements of 2 or 3 consecutive
//! positions. Width 2 has a single pattern, width 3 has five, so a full
//! move set over both widths holds (n-1) + 5(n-2) moves.

use crate::group_fourier::Permutation;

/// The one non-identity pattern on two positions.
pub const W2_PATTERNS: [[usize; 2]; 1] = [[1, 0]];

/// The five non-identity patterns on three positions. The first is the
/// swap of the leading pair, which coincides with the width-2 pattern at
/// the same start; the score vector exploits that overlap.
pub const W3_PATTERNS: [[usize; 3]; 5] = [
    [1, 0, 2],
    [0, 2, 1],
    [2, 1, 0],
    [2, 0, 1],
    [1, 2, 0],
];

/// A rearrangement of `width` consecutive positions starting at `start`.
/// `pattern` indexes [`W2_PATTERNS`] or [`W3_PATTERNS`]; entry t of a
/// pattern names the old local position whose object lands at local t.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WindowMove {
    pub start: usize,
    pub width: u8,
    pub pattern: u8,
}

impl WindowMove {
    pub fn w2(start: usize) -> Self {
        WindowMove {
            start,
            width: 2,
            pattern: 0,
        }
    }

    pub fn w3(start: usize, pattern: u8) -> Self {
        assert!(pattern < 5, "width-3 pattern index out of range");
        WindowMove {
            start,
            width: 3,
            pattern,
        }
    }

    pub fn local_images(&self) -> &'static [usize] {
        match self.width {
            2 => &W2_PATTERNS[self.pattern as usize],
            3 => &W3_PATTERNS[self.pattern as usize],
            _ => unreachable!("window width is 2 or 3"),
        }
    }

    /// Inclusive window of positions the move is defined on.
    pub fn window(&self) -> (usize, usize) {
        (self.start, self.start + self.width as usize - 1)
    }

    /// Inclusive range of positions the move actually changes, which can
    /// be narrower than the window (a width-3 pattern fixing one end).
    pub fn support(&self) -> (usize, usize) {
        let local = self.local_images();
        let moved: Vec<usize> = (0..local.len()).filter(|&t| local[t] != t).collect();
        let a = moved.first().expect("patterns are non-identity");
        let b = moved.last().expect("patterns are non-identity");
        (self.start + a, self.start + b)
    }

    /// The move as a permutation of all n positions.
    pub fn to_perm(&self, n: usize) -> Permutation {
        Permutation::embedded(n, self.start, self.local_images())
    }
}

/// All window moves of the given widths on n positions, width 2 first,
/// then width 3, each start-major and pattern-minor.
pub fn enumerate_moves(n: usize, widths: &[usize]) -> Vec<WindowMove> {
    let mut moves = Vec::new();
    if widths.contains(&2) {
        for s in 0..n.saturating_sub(1) {
            moves.push(WindowMove::w2(s));
        }
    }
    if widths.contains(&3) {
        for s in 0..n.saturating_sub(2) {
            for k in 0..5 {
                moves.push(WindowMove::w3(s, k));
            }
        }
    }
    moves
}
