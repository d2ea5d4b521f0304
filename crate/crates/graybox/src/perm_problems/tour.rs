//! Arc bookkeeping for tours under insertion moves. An insertion move takes
//! one city out of the cycle and splices it back in directly before another
//! city; tracking which arcs appear and disappear is what a crossover needs
//! to find independent move sets, so the diff is exact set arithmetic here.

use std::collections::BTreeSet;

use super::PermProblemError;

/// Arcs removed and arcs added by a tour change, each list sorted.
pub type ArcChange = (Vec<(u32, u32)>, Vec<(u32, u32)>);

/// A Hamiltonian cycle over at least three distinct city labels, stored as
/// the visiting order. Rotations describe the same cycle but keep their
/// stored order; arc sets are rotation-invariant.
#[derive(Debug, Clone, PartialEq)]
pub struct TourArcs {
    cities: Vec<u32>,
}

impl TourArcs {
    pub fn new(cities: Vec<u32>) -> Result<Self, PermProblemError> {
        if cities.len() < 3 {
            return Err(PermProblemError::TourTooShort { len: cities.len() });
        }
        let mut seen = BTreeSet::new();
        for &c in &cities {
            if !seen.insert(c) {
                return Err(PermProblemError::DuplicateCity { city: c });
            }
        }
        Ok(TourArcs { cities })
    }

    pub fn cities(&self) -> &[u32] {
        &self.cities
    }

    pub fn len(&self) -> usize {
        self.cities.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Directed arcs (city, successor), including the closing arc.
    pub fn arcs(&self) -> BTreeSet<(u32, u32)> {
        let n = self.cities.len();
        (0..n)
            .map(|p| (self.cities[p], self.cities[(p + 1) % n]))
            .collect()
    }

    fn position_of(&self, city: u32) -> Result<usize, PermProblemError> {
        self.cities
            .iter()
            .position(|&c| c == city)
            .ok_or(PermProblemError::CityMissing { city })
    }

    /// The tour after removing city `i` and reinserting it directly before
    /// city `j`.
    pub fn apply_insertion(&self, i: u32, j: u32) -> Result<TourArcs, PermProblemError> {
        if i == j {
            return Err(PermProblemError::SameCity { city: i });
        }
        let pi = self.position_of(i)?;
        self.position_of(j)?;
        let mut cities = self.cities.clone();
        cities.remove(pi);
        let pj = cities
            .iter()
            .position(|&c| c == j)
            .expect("city j survives removing city i");
        cities.insert(pj, i);
        Ok(TourArcs { cities })
    }

    /// Arcs lost and gained going from this tour to `other`, each sorted.
    pub fn arc_diff(&self, other: &TourArcs) -> ArcChange {
        let before = self.arcs();
        let after = other.arcs();
        let removed = before.difference(&after).copied().collect();
        let added = after.difference(&before).copied().collect();
        (removed, added)
    }

    /// Removed and added arcs of the insertion of city `i` before city `j`.
    /// Inserting a city before its current successor changes nothing and
    /// returns two empty sets.
    pub fn insertion_move_edges(&self, i: u32, j: u32) -> Result<ArcChange, PermProblemError> {
        let moved = self.apply_insertion(i, j)?;
        Ok(self.arc_diff(&moved))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The published six-city fragment around the insertions of interest.
    fn fragment() -> TourArcs {
        TourArcs::new(vec![10, 11, 12, 16, 17, 18]).unwrap()
    }

    fn arcs(pairs: &[(u32, u32)]) -> Vec<(u32, u32)> {
        let mut v = pairs.to_vec();
        v.sort_unstable();
        v
    }

    #[test]
    fn insert_11_before_18() {
        let (removed, added) = fragment().insertion_move_edges(11, 18).unwrap();
        assert_eq!(removed, arcs(&[(10, 11), (11, 12), (17, 18)]));
        assert_eq!(added, arcs(&[(10, 12), (17, 11), (11, 18)]));
    }

    #[test]
    fn insert_17_before_12() {
        let (removed, added) = fragment().insertion_move_edges(17, 12).unwrap();
        assert_eq!(removed, arcs(&[(16, 17), (17, 18), (11, 12)]));
        assert_eq!(added, arcs(&[(11, 17), (17, 12), (16, 18)]));
    }

    #[test]
    fn sequential_composition_gives_four_arcs_each_way() {
        // Replaying the two insertions one after the other: the transient
        // arcs cancel, leaving a four-in four-out diff.
        let start = fragment();
        let after = start
            .apply_insertion(11, 18)
            .unwrap()
            .apply_insertion(17, 12)
            .unwrap();
        let (removed, added) = start.arc_diff(&after);
        assert_eq!(removed, arcs(&[(16, 17), (17, 18), (10, 11), (11, 12)]));
        assert_eq!(added, arcs(&[(16, 11), (11, 18), (10, 17), (17, 12)]));
    }

    #[test]
    fn noop_insertion_has_empty_diff() {
        let (removed, added) = fragment().insertion_move_edges(11, 12).unwrap();
        assert!(removed.is_empty());
        assert!(added.is_empty());
    }

    #[test]
    fn diff_cardinalities_match_and_patching_reproduces_the_new_arcs() {
        let start = fragment();
        for &(i, j) in &[(11u32, 18u32), (17, 12), (10, 16), (18, 10), (12, 18)] {
            let moved = start.apply_insertion(i, j).unwrap();
            let (removed, added) = start.arc_diff(&moved);
            assert_eq!(removed.len(), added.len());
            let mut patched = start.arcs();
            for r in &removed {
                assert!(patched.remove(r));
            }
            for a in &added {
                assert!(patched.insert(*a));
            }
            assert_eq!(patched, moved.arcs());
            // The new arc set still forms one Hamiltonian cycle.
            let mut succ = std::collections::BTreeMap::new();
            for &(u, v) in &patched {
                assert!(succ.insert(u, v).is_none());
            }
            let mut c = 10u32;
            let mut visited = BTreeSet::new();
            for _ in 0..start.len() {
                assert!(visited.insert(c));
                c = succ[&c];
            }
            assert_eq!(c, 10);
            assert_eq!(visited.len(), start.len());
            assert_eq!(succ.len(), start.len());
        }
    }

    #[test]
    fn bad_inputs_are_rejected() {
        assert!(matches!(
            TourArcs::new(vec![1, 2]),
            Err(PermProblemError::TourTooShort { len: 2 })
        ));
        assert!(matches!(
            TourArcs::new(vec![1, 2, 3, 2]),
            Err(PermProblemError::DuplicateCity { city: 2 })
        ));
        assert!(matches!(
            fragment().insertion_move_edges(11, 11),
            Err(PermProblemError::SameCity { city: 11 })
        ));
        assert!(matches!(
            fragment().insertion_move_edges(11, 99),
            Err(PermProblemError::CityMissing { city: 99 })
        ));
    }
}
