//! Bridges from group elements to the abstract move interface, so the
//! spectral certificate and the enumeration oracles can be run against the
//! same objects.

use std::sync::Arc;

use super::fourier::FiniteGroup;
use super::perm::Permutation;
use crate::move_algebra::MoveHandle;

/// Left-translation move on element indices of an arbitrary group.
pub fn translation_move<G>(group: Arc<G>, h: G::Elem) -> MoveHandle
where
    G: FiniteGroup + Send + Sync + 'static,
    G::Elem: Send + Sync + 'static,
{
    let label = format!("L[{h:?}]");
    MoveHandle::new(label, move |x| {
        group.index_of(&group.translate(&h, &group.element(x)))
    })
}

/// Left-translation by `h` on lexicographic ranks of permutations: rank of
/// `sigma` maps to rank of `h.then(sigma)`.
pub fn perm_translation_move(h: &Permutation) -> MoveHandle {
    let h = h.clone();
    let n = h.len();
    MoveHandle::new(format!("L[{h}]"), move |x| {
        let sigma = Permutation::from_rank(n, x).expect("rank within n!");
        h.then(&sigma).rank().expect("degree supports ranking")
    })
}

/// XOR with `mask` on packed bit-string indices.
pub fn xor_translation_move(mask: u64, n: usize) -> MoveHandle {
    assert!(n <= usize::BITS as usize, "mask length exceeds index width");
    let label: String = (0..n)
        .map(|i| if mask >> i & 1 == 1 { '1' } else { '0' })
        .collect();
    MoveHandle::new(format!("L[{label}]"), move |x| x ^ mask as usize)
}
