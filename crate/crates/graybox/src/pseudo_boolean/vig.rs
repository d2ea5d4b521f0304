//! Variable interaction graph and non-interaction tests for bit-flip moves.
//!
//! The VIG joins two variables whenever some nonzero Walsh term contains
//! both. It gives a cheap sufficient condition for non-interaction of
//! disjoint-support moves (no edge between the supports); the parity test on
//! the expansion itself is exact: two flips interact exactly when some
//! nonzero term overlaps both supports an odd number of times. The VIG test
//! can say "interact" where the parity test proves independence, which is
//! why [`decompose_move`] falls back from components to a subset search.

use crate::group_fourier::bits::walsh_sign_masks;
use crate::group_fourier::BitString;

use super::walsh::WalshExpansion;
use super::{PbError, MAX_DECOMPOSE_SUPPORT};

/// Undirected variable interaction graph on `n` variables, adjacency stored
/// as bit masks.
#[derive(Debug, Clone, PartialEq)]
pub struct Vig {
    n: usize,
    adj: Vec<u64>,
}

impl Vig {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        assert!(i < self.n && j < self.n, "variable out of range");
        self.adj[i] >> j & 1 == 1
    }

    /// Neighbor set of `i` as a bit mask.
    pub fn neighbors(&self, i: usize) -> u64 {
        assert!(i < self.n, "variable out of range");
        self.adj[i]
    }

    /// All edges `(i, j)` with `i < j`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Connected components of the subgraph induced by the variables in
    /// `mask`, each returned as a mask, ordered by lowest member.
    pub fn components_within(&self, mask: u64) -> Vec<u64> {
        let mut remaining = mask;
        let mut out = Vec::new();
        while remaining != 0 {
            let seed = remaining & remaining.wrapping_neg();
            let mut comp = seed;
            loop {
                let mut grown = comp;
                let mut scan = comp;
                while scan != 0 {
                    let i = scan.trailing_zeros() as usize;
                    scan &= scan - 1;
                    grown |= self.adj[i] & mask;
                }
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            out.push(comp);
            remaining &= !comp;
        }
        out
    }
}

/// Builds the VIG of an expansion: every nonzero term with two or more bits
/// contributes a clique on its variables.
pub fn build_vig(w: &WalshExpansion) -> Vig {
    let mut adj = vec![0u64; w.n()];
    for (mask, _) in w.iter() {
        let mut scan = mask;
        while scan != 0 {
            let i = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            adj[i] |= mask & !(1 << i);
        }
    }
    Vig { n: w.n(), adj }
}

fn check_lengths(g: &BitString, h: &BitString, n: usize) -> Result<(), PbError> {
    for b in [g, h] {
        if b.len() != n {
            return Err(PbError::LengthMismatch {
                got: b.len(),
                expected: n,
            });
        }
    }
    Ok(())
}

/// VIG-level interaction test for flips with disjoint supports: the moves
/// may interact exactly when some edge joins the two supports. Overlapping
/// supports violate the precondition and produce an error.
pub fn moves_interact_vig(g: &BitString, h: &BitString, vig: &Vig) -> Result<bool, PbError> {
    check_lengths(g, h, vig.n())?;
    let shared = g.mask() & h.mask();
    if shared != 0 {
        return Err(PbError::OverlappingSupports { shared });
    }
    let mut reach = 0u64;
    let mut scan = g.mask();
    while scan != 0 {
        let i = scan.trailing_zeros() as usize;
        scan &= scan - 1;
        reach |= vig.neighbors(i);
    }
    Ok(reach & h.mask() != 0)
}

/// Exact parity-based interaction test: the flips `g` and `h` interact on
/// the expanded function exactly when some nonzero term flips sign under
/// both, that is, overlaps each support an odd number of times. XOR moves
/// always commute, so there is no commutation precondition.
pub fn moves_interact_walsh(g: &BitString, h: &BitString, w: &WalshExpansion) -> Result<bool, PbError> {
    check_lengths(g, h, w.n())?;
    Ok(w.iter().any(|(lambda, _)| {
        walsh_sign_masks(lambda, g.mask()) == -1 && walsh_sign_masks(lambda, h.mask()) == -1
    }))
}

/// Searches for a split of the flip `g` into two disjoint nonempty flips
/// that do not interact, so the delta of `g` separates into their sum
/// everywhere. VIG-disconnected supports split immediately; otherwise all
/// `2^(s-1) - 1` proper splits are tried, most balanced first. Returns
/// `None` when no split exists; supports larger than
/// [`MAX_DECOMPOSE_SUPPORT`] bits are refused.
pub fn decompose_move(
    g: &BitString,
    w: &WalshExpansion,
) -> Result<Option<(BitString, BitString)>, PbError> {
    if g.len() != w.n() {
        return Err(PbError::LengthMismatch {
            got: g.len(),
            expected: w.n(),
        });
    }
    let s = g.count_ones();
    if s > MAX_DECOMPOSE_SUPPORT {
        return Err(PbError::SupportTooLarge {
            size: s,
            max: MAX_DECOMPOSE_SUPPORT,
        });
    }
    if s < 2 {
        return Ok(None);
    }

    let n = g.len();
    let vig = build_vig(w);
    let comps = vig.components_within(g.mask());
    if comps.len() >= 2 {
        let h1 = BitString::from_mask(comps[0], n).expect("component within mask");
        let h2 = BitString::from_mask(g.mask() & !comps[0], n).expect("component within mask");
        debug_assert!(!moves_interact_walsh(&h1, &h2, w)?);
        return Ok(Some((h1, h2)));
    }

    let bits: Vec<usize> = g.ones().collect();
    let first = bits[0];
    // Enumerate subsets of the remaining bits; the first bit stays in h1 so
    // each unordered split appears once. Most balanced splits come first,
    // ties broken by mask order, so results are deterministic.
    let mut candidates: Vec<u64> = (0..(1u64 << (s - 1)) - 1)
        .map(|sel| {
            let mut m = 1u64 << first;
            for (b, &var) in bits[1..].iter().enumerate() {
                if sel >> b & 1 == 1 {
                    m |= 1 << var;
                }
            }
            m
        })
        .collect();
    candidates.sort_by_key(|&m| {
        let k = m.count_ones() as i64;
        ((2 * k - s as i64).abs(), m)
    });
    for m in candidates {
        let h1 = BitString::from_mask(m, n).expect("subset of g");
        let h2 = BitString::from_mask(g.mask() & !m, n).expect("subset of g");
        if !moves_interact_walsh(&h1, &h2, w)? {
            return Ok(Some((h1, h2)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(text: &str) -> BitString {
        BitString::parse(text).unwrap()
    }

    /// Expansion with nonzero terms on 100, 010, 001, 110, 111.
    fn overlap3() -> WalshExpansion {
        WalshExpansion::from_terms(
            3,
            vec![
                (0b001, 2.0),
                (0b010, -3.0),
                (0b100, 5.0),
                (0b011, 7.0),
                (0b111, -11.0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn vig_edges_come_from_joint_terms() {
        let w = WalshExpansion::from_terms(3, vec![(0b011, 1.0), (0b110, 1.0)]).unwrap();
        let vig = build_vig(&w);
        assert_eq!(vig.edges(), vec![(0, 1), (1, 2)]);
        assert!(!vig.has_edge(0, 2));

        let only_linear = WalshExpansion::from_terms(3, vec![(0b001, 1.0), (0b100, 2.0)]).unwrap();
        assert!(build_vig(&only_linear).edges().is_empty());

        let vig3 = build_vig(&overlap3());
        assert_eq!(vig3.edges(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn vig_interaction_needs_a_joining_edge() {
        let w = WalshExpansion::from_terms(3, vec![(0b011, 1.0), (0b110, 1.0)]).unwrap();
        let vig = build_vig(&w);
        assert!(!moves_interact_vig(&bits("100"), &bits("001"), &vig).unwrap());
        assert!(moves_interact_vig(&bits("100"), &bits("010"), &vig).unwrap());
        let err = moves_interact_vig(&bits("110"), &bits("010"), &vig).unwrap_err();
        assert_eq!(err, PbError::OverlappingSupports { shared: 0b010 });
    }

    #[test]
    fn parity_test_refines_the_vig_test() {
        let w = overlap3();
        let vig = build_vig(&w);
        // The order-3 term covers both supports, so the VIG cannot clear the
        // pair, but each overlap is even on one side: no interaction.
        assert!(moves_interact_vig(&bits("110"), &bits("001"), &vig).unwrap());
        assert!(!moves_interact_walsh(&bits("110"), &bits("001"), &w).unwrap());
        // Flipping variable 3 alone against variable 2 alone: the 111 term
        // overlaps each support once.
        assert!(moves_interact_walsh(&bits("001"), &bits("010"), &w).unwrap());
        // A move interacts with itself through any odd-overlap term.
        assert!(moves_interact_walsh(&bits("001"), &bits("001"), &w).unwrap());
    }

    #[test]
    fn components_split_disconnected_supports() {
        let w = WalshExpansion::from_terms(5, vec![(0b00011, 1.0), (0b11000, 1.0)]).unwrap();
        let vig = build_vig(&w);
        assert_eq!(vig.components_within(0b11011), vec![0b00011, 0b11000]);
        assert_eq!(vig.components_within(0b01010), vec![0b00010, 0b01000]);
        assert_eq!(vig.components_within(0), Vec::<u64>::new());
    }

    #[test]
    fn decompose_splits_across_components() {
        let w = WalshExpansion::from_terms(4, vec![(0b0011, 1.0), (0b1100, 1.0)]).unwrap();
        let (h1, h2) = decompose_move(&bits("1111"), &w).unwrap().unwrap();
        assert_eq!(h1.mask(), 0b0011);
        assert_eq!(h2.mask(), 0b1100);
    }

    #[test]
    fn decompose_finds_the_even_overlap_split() {
        let w = overlap3();
        let (h1, h2) = decompose_move(&bits("111"), &w).unwrap().unwrap();
        let pair = [h1.mask(), h2.mask()];
        assert!(pair.contains(&0b011) && pair.contains(&0b100), "{pair:?}");
        assert!(!moves_interact_walsh(&h1, &h2, &w).unwrap());
    }

    #[test]
    fn decompose_reports_unsplittable_moves() {
        let w = overlap3();
        assert_eq!(decompose_move(&bits("011"), &w).unwrap(), None);
        assert_eq!(decompose_move(&bits("100"), &w).unwrap(), None);
        assert_eq!(decompose_move(&bits("000"), &w).unwrap(), None);
    }

    #[test]
    fn decompose_caps_the_support_size() {
        let w = WalshExpansion::from_terms(16, vec![(0b1, 1.0)]).unwrap();
        let g = BitString::from_mask((1 << 13) - 1, 16).unwrap();
        let err = decompose_move(&g, &w).unwrap_err();
        assert_eq!(err, PbError::SupportTooLarge { size: 13, max: 12 });
    }
}
