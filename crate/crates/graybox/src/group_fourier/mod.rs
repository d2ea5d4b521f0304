//! Group-theoretic machinery: permutations, bit strings, irreducible
//! representations, Fourier transforms, and the spectral non-interaction
//! certificate.

pub mod bits;
pub mod bridge;
pub mod fourier;
pub mod perm;
pub mod yor;

use std::fmt;

pub use bits::{walsh, BitError, BitString, MAX_BITS};
pub use bridge::{perm_translation_move, translation_move, xor_translation_move};
pub use fourier::{
    delta_over_group, fourier_transform, fourier_transform_all, inverse_fourier,
    non_interacting_by_enumeration, non_interaction_certificate, walsh_noninteracting,
    walsh_spectrum, walsh_spectrum_in_place, FiniteGroup, FourierCoefficient, GroupFourierTable,
    Hypercube, IrrepEval, SymmetricGroup, WalshIrrep, MAX_HYPERCUBE_N, MAX_TABLE_CELLS,
};
pub use perm::{factorial, PermError, Permutation, MAX_RANK_N};
pub use yor::{partitions, yor_irreps, Partition, SnIrrep, MAX_YOR_N};

#[derive(Debug, Clone, PartialEq)]
pub enum GroupFourierError {
    /// A group degree outside the supported range.
    UnsupportedDegree { n: usize, max: usize },
    /// An enumeration or cache would exceed its size cap.
    CapacityExceeded { required: usize, cap: usize },
    /// A partition with empty, zero, or increasing parts.
    BadPartition { reason: String },
    /// A function table whose length is not the group order.
    BadFunctionLength { got: usize, expected: usize },
    /// A coefficient list that does not line up with the group's irreps.
    CoefficientMismatch { message: String },
    /// Coefficients whose squared dimensions do not sum to the group order.
    IncompleteIrrepSet { dim_sq_sum: usize, order: usize },
    /// A certificate query for moves that do not commute.
    NonCommuting { left: String, right: String },
    /// A Walsh transform over a length that is not a power of two.
    NotPowerOfTwo { len: usize },
}

impl fmt::Display for GroupFourierError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupFourierError::UnsupportedDegree { n, max } => {
                write!(f, "degree {n} unsupported (must be 1..={max})")
            }
            GroupFourierError::CapacityExceeded { required, cap } => {
                write!(f, "size {required} exceeds cap {cap}")
            }
            GroupFourierError::BadPartition { reason } => write!(f, "bad partition: {reason}"),
            GroupFourierError::BadFunctionLength { got, expected } => {
                write!(f, "function table has {got} values, group order is {expected}")
            }
            GroupFourierError::CoefficientMismatch { message } => {
                write!(f, "coefficient mismatch: {message}")
            }
            GroupFourierError::IncompleteIrrepSet { dim_sq_sum, order } => write!(
                f,
                "irrep set incomplete: squared dimensions sum to {dim_sq_sum}, group order is {order}"
            ),
            GroupFourierError::NonCommuting { left, right } => {
                write!(f, "moves {left} and {right} do not commute")
            }
            GroupFourierError::NotPowerOfTwo { len } => {
                write!(f, "table length {len} is not a power of two")
            }
        }
    }
}

impl std::error::Error for GroupFourierError {}
