//! Fourier transforms over finite groups and the spectral non-interaction
//! certificate.
//!
//! The transform of `f` at an irrep `rho` is the matrix `sum_g f(g) rho(g)`;
//! the inverse recovers `f(g)` as `(1/|G|) sum_rho d_rho tr(fhat(rho)
//! rho(g^-1))`. Moves act on the group by left translation `x -> h.x`, whose
//! effect on the transform is left multiplication by `rho(h^-1)`. Two
//! commuting moves `h1, h2` are non-interacting on `f` exactly when
//! `(rho(h1^-1) - I)(rho(h2^-1) - I) fhat(rho)` vanishes at every irrep,
//! which is what [`non_interaction_certificate`] evaluates.
//!
//! Three routes are provided: plain functions that recompute representation
//! matrices on demand, a [`GroupFourierTable`] that caches every matrix for
//! small groups, and a mask-based Walsh path ([`walsh_spectrum`],
//! [`walsh_noninteracting`]) for bit-string groups where every irrep is the
//! scalar sign function.

use std::fmt;

use nalgebra::DMatrix;

use super::bits::{walsh_sign_masks, BitString};
use super::perm::{factorial, Permutation};
use super::yor::{yor_irreps, SnIrrep};
use super::GroupFourierError;
use crate::Tolerance;

/// Largest bit-string group degree kept enumerable (tables of `2^n` values).
pub const MAX_HYPERCUBE_N: usize = 16;

/// Cap on `|G| * sum(d^2)` for [`GroupFourierTable`]; beyond this the cache
/// itself would dominate memory and the on-demand route should be used.
pub const MAX_TABLE_CELLS: usize = 2_000_000;

/// A finite group whose elements can be enumerated and whose complete irrep
/// list is known. `compose(a, b)` applies `a` first and `b` second, matching
/// [`Permutation::then`].
pub trait FiniteGroup {
    type Elem: Clone + PartialEq + fmt::Debug;
    type Irrep: IrrepEval<Self::Elem>;

    fn order(&self) -> usize;
    fn element(&self, idx: usize) -> Self::Elem;
    fn index_of(&self, g: &Self::Elem) -> usize;
    fn compose(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inverse(&self, g: &Self::Elem) -> Self::Elem;
    fn identity(&self) -> Self::Elem;
    /// The complete list of irreducible representations.
    fn irreps(&self) -> &[Self::Irrep];

    fn commutes(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.compose(a, b) == self.compose(b, a)
    }

    /// The action of move `h` on point `x`: left translation `h . x`.
    fn translate(&self, h: &Self::Elem, x: &Self::Elem) -> Self::Elem {
        self.compose(h, x)
    }
}

/// Evaluation interface of one irreducible representation.
pub trait IrrepEval<E> {
    fn label(&self) -> String;
    fn dim(&self) -> usize;
    fn matrix(&self, g: &E) -> DMatrix<f64>;
}

impl IrrepEval<Permutation> for SnIrrep {
    fn label(&self) -> String {
        self.partition().to_string()
    }

    fn dim(&self) -> usize {
        self.dim()
    }

    fn matrix(&self, g: &Permutation) -> DMatrix<f64> {
        SnIrrep::matrix(self, g)
    }
}

/// The symmetric group on `1..=n`, elements enumerated by lexicographic rank.
pub struct SymmetricGroup {
    n: usize,
    order: usize,
    irreps: Vec<SnIrrep>,
}

impl SymmetricGroup {
    /// Degrees up to [`MAX_YOR_N`](super::yor::MAX_YOR_N) are supported; the
    /// irrep list is built eagerly.
    pub fn new(n: usize) -> Result<Self, GroupFourierError> {
        let irreps = yor_irreps(n)?;
        Ok(SymmetricGroup {
            n,
            order: factorial(n).expect("degree already validated"),
            irreps,
        })
    }

    pub fn degree(&self) -> usize {
        self.n
    }
}

impl FiniteGroup for SymmetricGroup {
    type Elem = Permutation;
    type Irrep = SnIrrep;

    fn order(&self) -> usize {
        self.order
    }

    fn element(&self, idx: usize) -> Permutation {
        Permutation::from_rank(self.n, idx).expect("index in 0..n!")
    }

    fn index_of(&self, g: &Permutation) -> usize {
        g.rank().expect("degree already validated")
    }

    fn compose(&self, a: &Permutation, b: &Permutation) -> Permutation {
        a.then(b)
    }

    fn inverse(&self, g: &Permutation) -> Permutation {
        g.inverse()
    }

    fn identity(&self) -> Permutation {
        Permutation::identity(self.n)
    }

    fn irreps(&self) -> &[SnIrrep] {
        &self.irreps
    }
}

/// One Walsh character of the bit-string XOR group: the sign function
/// `x -> (-1)^(lambda . x)` for a fixed frequency mask `lambda`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalshIrrep {
    lambda: u64,
    n: usize,
}

impl WalshIrrep {
    pub fn lambda(&self) -> u64 {
        self.lambda
    }
}

impl IrrepEval<BitString> for WalshIrrep {
    fn label(&self) -> String {
        BitString::from_mask(self.lambda, self.n)
            .expect("mask validated at construction")
            .to_string()
    }

    fn dim(&self) -> usize {
        1
    }

    fn matrix(&self, g: &BitString) -> DMatrix<f64> {
        assert_eq!(g.len(), self.n, "bit string length does not match irrep");
        DMatrix::from_element(1, 1, walsh_sign_masks(self.lambda, g.mask()) as f64)
    }
}

/// The group of length-`n` bit strings under XOR, enumerated by packed value.
pub struct Hypercube {
    n: usize,
    irreps: Vec<WalshIrrep>,
}

impl Hypercube {
    pub fn new(n: usize) -> Result<Self, GroupFourierError> {
        if n == 0 || n > MAX_HYPERCUBE_N {
            return Err(GroupFourierError::UnsupportedDegree {
                n,
                max: MAX_HYPERCUBE_N,
            });
        }
        let irreps = (0..1u64 << n).map(|lambda| WalshIrrep { lambda, n }).collect();
        Ok(Hypercube { n, irreps })
    }

    pub fn degree(&self) -> usize {
        self.n
    }
}

impl FiniteGroup for Hypercube {
    type Elem = BitString;
    type Irrep = WalshIrrep;

    fn order(&self) -> usize {
        1 << self.n
    }

    fn element(&self, idx: usize) -> BitString {
        BitString::from_mask(idx as u64, self.n).expect("index in 0..2^n")
    }

    fn index_of(&self, g: &BitString) -> usize {
        g.index()
    }

    fn compose(&self, a: &BitString, b: &BitString) -> BitString {
        a.xor(b).expect("group elements share a length")
    }

    fn inverse(&self, g: &BitString) -> BitString {
        *g
    }

    fn identity(&self) -> BitString {
        BitString::zeros(self.n).expect("degree already validated")
    }

    fn irreps(&self) -> &[WalshIrrep] {
        &self.irreps
    }
}

/// One Fourier coefficient: the transform matrix at a labeled irrep.
#[derive(Clone, Debug)]
pub struct FourierCoefficient {
    pub label: String,
    pub matrix: DMatrix<f64>,
}

fn check_function_length<G: FiniteGroup>(group: &G, f: &[f64]) -> Result<(), GroupFourierError> {
    if f.len() != group.order() {
        return Err(GroupFourierError::BadFunctionLength {
            got: f.len(),
            expected: group.order(),
        });
    }
    Ok(())
}

/// Transform of `f` at a single irrep: `sum_g f(g) rho(g)`. `f` is indexed by
/// [`FiniteGroup::element`] order.
pub fn fourier_transform<G: FiniteGroup>(
    group: &G,
    f: &[f64],
    irrep: &G::Irrep,
) -> Result<FourierCoefficient, GroupFourierError> {
    check_function_length(group, f)?;
    let d = irrep.dim();
    let mut acc = DMatrix::<f64>::zeros(d, d);
    for (idx, &value) in f.iter().enumerate() {
        if value != 0.0 {
            acc += irrep.matrix(&group.element(idx)) * value;
        }
    }
    Ok(FourierCoefficient {
        label: irrep.label(),
        matrix: acc,
    })
}

/// Transform of `f` at every irrep of the group.
pub fn fourier_transform_all<G: FiniteGroup>(
    group: &G,
    f: &[f64],
) -> Result<Vec<FourierCoefficient>, GroupFourierError> {
    group
        .irreps()
        .iter()
        .map(|irrep| fourier_transform(group, f, irrep))
        .collect()
}

fn check_coefficients<G: FiniteGroup>(
    group: &G,
    coeffs: &[FourierCoefficient],
) -> Result<(), GroupFourierError> {
    let irreps = group.irreps();
    if coeffs.len() != irreps.len() {
        return Err(GroupFourierError::CoefficientMismatch {
            message: format!(
                "got {} coefficients for {} irreps",
                coeffs.len(),
                irreps.len()
            ),
        });
    }
    let mut dim_sq_sum = 0usize;
    for (coeff, irrep) in coeffs.iter().zip(irreps) {
        if coeff.label != irrep.label() {
            return Err(GroupFourierError::CoefficientMismatch {
                message: format!(
                    "coefficient labeled {} where irrep {} was expected",
                    coeff.label,
                    irrep.label()
                ),
            });
        }
        let d = irrep.dim();
        if coeff.matrix.nrows() != d || coeff.matrix.ncols() != d {
            return Err(GroupFourierError::CoefficientMismatch {
                message: format!(
                    "coefficient {} is {}x{}, irrep dimension is {d}",
                    coeff.label,
                    coeff.matrix.nrows(),
                    coeff.matrix.ncols()
                ),
            });
        }
        dim_sq_sum += d * d;
    }
    if dim_sq_sum != group.order() {
        return Err(GroupFourierError::IncompleteIrrepSet {
            dim_sq_sum,
            order: group.order(),
        });
    }
    Ok(())
}

/// Pointwise inverse transform. Requires the coefficient list to cover the
/// complete irrep set (checked through `sum(d^2) = |G|`), since a partial set
/// cannot reconstruct `f`.
pub fn inverse_fourier<G: FiniteGroup>(
    group: &G,
    coeffs: &[FourierCoefficient],
    g: &G::Elem,
) -> Result<f64, GroupFourierError> {
    check_coefficients(group, coeffs)?;
    let g_inv = group.inverse(g);
    let mut acc = 0.0;
    for (coeff, irrep) in coeffs.iter().zip(group.irreps()) {
        let d = irrep.dim() as f64;
        acc += d * (&coeff.matrix * irrep.matrix(&g_inv)).trace();
    }
    Ok(acc / group.order() as f64)
}

/// Decides non-interaction of the commuting moves `h1`, `h2` on the function
/// with transform `coeffs`, without enumerating the group: the moves are
/// non-interacting exactly when `(rho(h1^-1) - I)(rho(h2^-1) - I) fhat` is
/// zero (under `tol`) at every irrep. Non-commuting moves are refused.
pub fn non_interaction_certificate<G: FiniteGroup>(
    group: &G,
    coeffs: &[FourierCoefficient],
    h1: &G::Elem,
    h2: &G::Elem,
    tol: Tolerance,
) -> Result<bool, GroupFourierError> {
    check_coefficients(group, coeffs)?;
    if !group.commutes(h1, h2) {
        return Err(GroupFourierError::NonCommuting {
            left: format!("{h1:?}"),
            right: format!("{h2:?}"),
        });
    }
    let h1_inv = group.inverse(h1);
    let h2_inv = group.inverse(h2);
    for (coeff, irrep) in coeffs.iter().zip(group.irreps()) {
        let d = irrep.dim();
        let eye = DMatrix::<f64>::identity(d, d);
        let b1 = irrep.matrix(&h1_inv) - &eye;
        let b2 = irrep.matrix(&h2_inv) - &eye;
        let bracket = b1 * b2 * &coeff.matrix;
        if bracket.iter().any(|&v| !tol.is_zero(v)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Delta table of the left-translation move `h` on `f`: entry `i` is
/// `f(h . g_i) - f(g_i)`.
pub fn delta_over_group<G: FiniteGroup>(
    group: &G,
    f: &[f64],
    h: &G::Elem,
) -> Result<Vec<f64>, GroupFourierError> {
    check_function_length(group, f)?;
    Ok((0..group.order())
        .map(|idx| {
            let moved = group.translate(h, &group.element(idx));
            f[group.index_of(&moved)] - f[idx]
        })
        .collect())
}

/// Definitional non-interaction check by full enumeration: the delta of `h2`
/// must be unchanged by first applying `h1`, at every point. Refuses
/// non-commuting moves, mirroring [`non_interaction_certificate`].
pub fn non_interacting_by_enumeration<G: FiniteGroup>(
    group: &G,
    f: &[f64],
    h1: &G::Elem,
    h2: &G::Elem,
    tol: Tolerance,
) -> Result<bool, GroupFourierError> {
    check_function_length(group, f)?;
    if !group.commutes(h1, h2) {
        return Err(GroupFourierError::NonCommuting {
            left: format!("{h1:?}"),
            right: format!("{h2:?}"),
        });
    }
    let delta2 = delta_over_group(group, f, h2)?;
    for idx in 0..group.order() {
        let shifted = group.translate(h1, &group.element(idx));
        if !tol.eq(delta2[group.index_of(&shifted)], delta2[idx]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Cached engine for repeated transforms over one small group: every
/// representation matrix is computed once. Construction refuses groups whose
/// cache would exceed [`MAX_TABLE_CELLS`] matrix cells.
pub struct GroupFourierTable<G: FiniteGroup> {
    group: G,
    inv_index: Vec<usize>,
    /// `matrices[r][i]` is irrep `r` evaluated at element `i`.
    matrices: Vec<Vec<DMatrix<f64>>>,
}

impl<G: FiniteGroup> GroupFourierTable<G> {
    pub fn new(group: G) -> Result<Self, GroupFourierError> {
        let order = group.order();
        let dim_sq_sum: usize = group.irreps().iter().map(|r| r.dim() * r.dim()).sum();
        let cells = order.saturating_mul(dim_sq_sum);
        if cells > MAX_TABLE_CELLS {
            return Err(GroupFourierError::CapacityExceeded {
                required: cells,
                cap: MAX_TABLE_CELLS,
            });
        }
        let elements: Vec<G::Elem> = (0..order).map(|i| group.element(i)).collect();
        let inv_index = elements
            .iter()
            .map(|g| group.index_of(&group.inverse(g)))
            .collect();
        let matrices = group
            .irreps()
            .iter()
            .map(|irrep| elements.iter().map(|g| irrep.matrix(g)).collect())
            .collect();
        Ok(GroupFourierTable {
            group,
            inv_index,
            matrices,
        })
    }

    pub fn group(&self) -> &G {
        &self.group
    }

    /// Same result as [`fourier_transform_all`], from cached matrices.
    pub fn transform_all(&self, f: &[f64]) -> Result<Vec<FourierCoefficient>, GroupFourierError> {
        check_function_length(&self.group, f)?;
        Ok(self
            .group
            .irreps()
            .iter()
            .zip(&self.matrices)
            .map(|(irrep, mats)| {
                let d = irrep.dim();
                let mut acc = DMatrix::<f64>::zeros(d, d);
                for (mat, &value) in mats.iter().zip(f) {
                    if value != 0.0 {
                        acc += mat * value;
                    }
                }
                FourierCoefficient {
                    label: irrep.label(),
                    matrix: acc,
                }
            })
            .collect())
    }

    /// Same result as [`inverse_fourier`], from cached matrices.
    pub fn inverse_at_index(
        &self,
        coeffs: &[FourierCoefficient],
        idx: usize,
    ) -> Result<f64, GroupFourierError> {
        check_coefficients(&self.group, coeffs)?;
        let inv = self.inv_index[idx];
        let mut acc = 0.0;
        for (r, (coeff, irrep)) in coeffs.iter().zip(self.group.irreps()).enumerate() {
            let d = irrep.dim() as f64;
            acc += d * (&coeff.matrix * &self.matrices[r][inv]).trace();
        }
        Ok(acc / self.group.order() as f64)
    }

    /// Same result as [`non_interaction_certificate`], from cached matrices.
    pub fn certificate(
        &self,
        coeffs: &[FourierCoefficient],
        h1: &G::Elem,
        h2: &G::Elem,
        tol: Tolerance,
    ) -> Result<bool, GroupFourierError> {
        check_coefficients(&self.group, coeffs)?;
        if !self.group.commutes(h1, h2) {
            return Err(GroupFourierError::NonCommuting {
                left: format!("{h1:?}"),
                right: format!("{h2:?}"),
            });
        }
        let i1 = self.inv_index[self.group.index_of(h1)];
        let i2 = self.inv_index[self.group.index_of(h2)];
        for (r, (coeff, irrep)) in coeffs.iter().zip(self.group.irreps()).enumerate() {
            let d = irrep.dim();
            let eye = DMatrix::<f64>::identity(d, d);
            let b1 = &self.matrices[r][i1] - &eye;
            let b2 = &self.matrices[r][i2] - &eye;
            let bracket = b1 * b2 * &coeff.matrix;
            if bracket.iter().any(|&v| !tol.is_zero(v)) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// In-place fast Walsh-Hadamard transform: `f[x]` becomes
/// `sum_x f(x) (-1)^(lambda . x)` indexed by the frequency mask `lambda`.
/// The length must be a power of two. Applying it twice multiplies by the
/// length, so the inverse is this transform followed by division.
pub fn walsh_spectrum_in_place(f: &mut [f64]) -> Result<(), GroupFourierError> {
    let len = f.len();
    if len == 0 || !len.is_power_of_two() {
        return Err(GroupFourierError::NotPowerOfTwo { len });
    }
    let mut half = 1;
    while half < len {
        for block in (0..len).step_by(half * 2) {
            for i in block..block + half {
                let (a, b) = (f[i], f[i + half]);
                f[i] = a + b;
                f[i + half] = a - b;
            }
        }
        half *= 2;
    }
    Ok(())
}

/// Allocating wrapper around [`walsh_spectrum_in_place`].
pub fn walsh_spectrum(f: &[f64]) -> Result<Vec<f64>, GroupFourierError> {
    let mut out = f.to_vec();
    walsh_spectrum_in_place(&mut out)?;
    Ok(out)
}

/// Scalar specialization of the non-interaction certificate for bit-string
/// moves on a sparse Walsh spectrum `terms`: the bracket at frequency
/// `lambda` is `((-1)^(lambda.h1) - 1)((-1)^(lambda.h2) - 1) w_lambda`, which
/// survives only when both signs are `-1`. XOR moves always commute, so there
/// is no precondition. Returns true when the moves are non-interacting.
pub fn walsh_noninteracting(terms: &[(u64, f64)], h1: u64, h2: u64, tol: Tolerance) -> bool {
    terms.iter().all(|&(lambda, w)| {
        let s1 = walsh_sign_masks(lambda, h1);
        let s2 = walsh_sign_masks(lambda, h2);
        let bracket = (s1 - 1) as f64 * (s2 - 1) as f64 * w;
        tol.is_zero(bracket)
    })
}
