//! Finite-rank integer lattices with a symmetric bilinear form, sublattices
//! given by generators in ambient coordinates, and the exact operations on
//! them: pairings, determinant and inertia, orthogonal complements,
//! saturation, divisibility and primitivity.

pub mod matrix;
pub mod smith;

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
pub use matrix::{dot, inertia, Inertia, IntMatrix, RatMatrix};
pub use smith::{integer_kernel, smith_normal_form, SmithDecomposition};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerLattice {
    gram: IntMatrix,
}

impl fmt::Debug for IntegerLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegerLattice(rank {}) {:?}", self.rank(), self.gram)
    }
}

/// Integer coordinates in the ambient basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeVector(pub Vec<BigInt>);

/// Rational coordinates in the ambient basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalVector(pub Vec<BigRational>);

impl LatticeVector {
    pub fn from_i64(coords: &[i64]) -> Self {
        LatticeVector(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(n: usize) -> Self {
        LatticeVector(vec![BigInt::zero(); n])
    }

    /// The `i`-th standard basis vector of `Zⁿ`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[i] = BigInt::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// gcd of the coordinates (0 for the zero vector).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    pub fn to_rational(&self) -> RationalVector {
        RationalVector(
            self.0
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        LatticeVector(self.0.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> Self {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }
}

impl RationalVector {
    pub fn zero(n: usize) -> Self {
        RationalVector(vec![BigRational::zero(); n])
    }

    pub fn from_ratios(coords: &[(i64, i64)]) -> Self {
        RationalVector(
            coords
                .iter()
                .map(|&(n, d)| BigRational::new(n.into(), d.into()))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RationalVector(self.0.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> Self {
        RationalVector(self.0.iter().map(|a| -a).collect())
    }

    /// `self + c·v`.
    pub fn axpy(&self, c: &BigRational, v: &Self) -> Self {
        RationalVector(self.0.iter().zip(&v.0).map(|(a, b)| a + c * b).collect())
    }
}

impl From<&LatticeVector> for RationalVector {
    fn from(v: &LatticeVector) -> Self {
        v.to_rational()
    }
}

impl IntegerLattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::NotSquare {
                rows: gram.rows(),
                cols: gram.cols(),
            });
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(IntegerLattice { gram })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(IntMatrix::from_i64(rows))
    }

    /// Diagonal lattice ⟨a₁⟩ ⊕ … ⊕ ⟨aₙ⟩.
    pub fn diagonal(entries: &[i64]) -> Self {
        let mut g = IntMatrix::zeros(entries.len(), entries.len());
        for (i, &a) in entries.iter().enumerate() {
            g[(i, i)] = BigInt::from(a);
        }
        IntegerLattice { gram: g }
    }

    pub fn empty() -> Self {
        IntegerLattice {
            gram: IntMatrix::zeros(0, 0),
        }
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)].is_even())
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if n != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: n,
            });
        }
        Ok(())
    }

    /// `vᵀ·gram·w`.
    pub fn pairing(&self, v: &LatticeVector, w: &LatticeVector) -> Result<BigInt> {
        self.check_len(v.len())?;
        self.check_len(w.len())?;
        Ok(dot(&self.gram.vec_mul(&v.0), &w.0))
    }

    /// The form extended to `L ⊗ Q`.
    pub fn pairing_q(&self, v: &RationalVector, w: &RationalVector) -> Result<BigRational> {
        self.check_len(v.len())?;
        self.check_len(w.len())?;
        let mut acc = BigRational::zero();
        for i in 0..self.rank() {
            if v.0[i].is_zero() {
                continue;
            }
            let mut row = BigRational::zero();
            for j in 0..self.rank() {
                if !w.0[j].is_zero() && !self.gram[(i, j)].is_zero() {
                    row += &w.0[j] * BigRational::from_integer(self.gram[(i, j)].clone());
                }
            }
            acc += &v.0[i] * row;
        }
        Ok(acc)
    }

    pub fn norm(&self, v: &LatticeVector) -> Result<BigInt> {
        self.pairing(v, v)
    }

    pub fn norm_q(&self, v: &RationalVector) -> Result<BigRational> {
        self.pairing_q(v, v)
    }

    pub fn determinant(&self) -> BigInt {
        self.gram.determinant().expect("gram is square")
    }

    pub fn inertia(&self) -> Inertia {
        inertia(&self.gram)
    }

    pub fn det_and_signature(&self) -> (BigInt, Inertia) {
        (self.determinant(), self.inertia())
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }

    pub fn direct_sum(&self, other: &IntegerLattice) -> IntegerLattice {
        IntegerLattice {
            gram: self.gram.block_diag(&other.gram),
        }
    }

    /// Lattice whose form is multiplied by `c`.
    pub fn scaled(&self, c: i64) -> IntegerLattice {
        IntegerLattice {
            gram: self.gram.scale(&BigInt::from(c)),
        }
    }
}

/// Free-function spelling of [`IntegerLattice::pairing`].
pub fn pairing(l: &IntegerLattice, v: &LatticeVector, w: &LatticeVector) -> Result<BigInt> {
    l.pairing(v, w)
}

pub fn det_and_signature(l: &IntegerLattice) -> (BigInt, Inertia) {
    l.det_and_signature()
}

pub fn direct_sum(a: &IntegerLattice, b: &IntegerLattice) -> IntegerLattice {
    a.direct_sum(b)
}

/// A sublattice of an ambient lattice, stored as independent generator rows in
/// ambient coordinates.
#[derive(Debug, Clone)]
pub struct Sublattice {
    ambient: IntegerLattice,
    basis: IntMatrix,
    solver: OnceLock<Arc<CoordinateSolver>>,
}

impl PartialEq for Sublattice {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis == other.basis
    }
}

impl Eq for Sublattice {}

/// Pivot columns `J` of the basis `B` and `(B[:, J])⁻¹`, so that the
/// coordinates of `v` are `v[J]·(B[:, J])⁻¹` whenever `v` is in the span.
#[derive(Debug)]
struct CoordinateSolver {
    pivots: Vec<usize>,
    inverse: RatMatrix,
}

impl CoordinateSolver {
    fn new(basis: &IntMatrix) -> Self {
        let pivots = basis.to_rational().rref().1;
        let k = basis.rows();
        let mut square = RatMatrix::zeros(k, k);
        for i in 0..k {
            for (j, &c) in pivots.iter().enumerate() {
                square[(i, j)] = BigRational::from_integer(basis[(i, c)].clone());
            }
        }
        let inverse = square
            .inverse()
            .expect("pivot block of an independent basis is invertible");
        CoordinateSolver { pivots, inverse }
    }
}

impl Sublattice {
    fn raw(ambient: IntegerLattice, basis: IntMatrix) -> Self {
        Sublattice {
            ambient,
            basis,
            solver: OnceLock::new(),
        }
    }

    pub fn new(ambient: IntegerLattice, basis: IntMatrix) -> Result<Self> {
        if basis.rows() > 0 && basis.cols() != ambient.rank() {
            return Err(Error::DimensionMismatch {
                expected: ambient.rank(),
                found: basis.cols(),
            });
        }
        let basis = if basis.rows() == 0 {
            IntMatrix::zeros(0, ambient.rank())
        } else {
            basis
        };
        if basis.to_rational().rank() != basis.rows() {
            return Err(Error::DependentGenerators);
        }
        Ok(Sublattice::raw(ambient, basis))
    }

    pub fn from_vectors(ambient: &IntegerLattice, vectors: &[LatticeVector]) -> Result<Self> {
        let rows: Vec<Vec<BigInt>> = vectors.iter().map(|v| v.0.clone()).collect();
        let basis = IntMatrix::from_rows(&rows, ambient.rank())?;
        Self::new(ambient.clone(), basis)
    }

    /// Sublattice spanned by (possibly dependent) generators.
    pub fn spanned_by(ambient: &IntegerLattice, generators: &IntMatrix) -> Result<Self> {
        if generators.rows() > 0 && generators.cols() != ambient.rank() {
            return Err(Error::DimensionMismatch {
                expected: ambient.rank(),
                found: generators.cols(),
            });
        }
        let basis = if generators.rows() == 0 {
            IntMatrix::zeros(0, ambient.rank())
        } else {
            generators.hermite_rows()
        };
        Self::new(ambient.clone(), basis)
    }

    pub fn full(ambient: &IntegerLattice) -> Self {
        Sublattice::raw(ambient.clone(), IntMatrix::identity(ambient.rank()))
    }

    pub fn zero(ambient: &IntegerLattice) -> Self {
        Sublattice::raw(ambient.clone(), IntMatrix::zeros(0, ambient.rank()))
    }

    pub fn ambient(&self) -> &IntegerLattice {
        &self.ambient
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn generator(&self, i: usize) -> LatticeVector {
        LatticeVector(self.basis.row(i).to_vec())
    }

    pub fn generators(&self) -> Vec<LatticeVector> {
        (0..self.rank()).map(|i| self.generator(i)).collect()
    }

    /// Induced Gram matrix `basis·gram·basisᵀ`.
    pub fn gram(&self) -> IntMatrix {
        &(&self.basis * self.ambient.gram()) * &self.basis.transpose()
    }

    /// The sublattice as an abstract lattice with its induced form.
    pub fn as_lattice(&self) -> IntegerLattice {
        IntegerLattice { gram: self.gram() }
    }

    /// Same submodule with the Hermite-normal-form basis.
    pub fn canonical(&self) -> Sublattice {
        if self.rank() == 0 {
            return self.clone();
        }
        Sublattice::raw(self.ambient.clone(), self.basis.hermite_rows())
    }

    /// Equality as subsets of the ambient lattice.
    pub fn same_submodule(&self, other: &Sublattice) -> bool {
        self.ambient == other.ambient && self.canonical().basis == other.canonical().basis
    }

    /// Rational coordinates of `v` in this basis, if `v` lies in the rational span.
    pub fn rational_coordinates(&self, v: &RationalVector) -> Result<Option<Vec<BigRational>>> {
        if v.len() != self.ambient.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient.rank(),
                found: v.len(),
            });
        }
        if self.rank() == 0 {
            return Ok(v.is_zero().then(Vec::new));
        }
        let solver = self
            .solver
            .get_or_init(|| Arc::new(CoordinateSolver::new(&self.basis)));
        let picked: Vec<BigRational> = solver.pivots.iter().map(|&c| v.0[c].clone()).collect();
        let coords = solver.inverse.vec_mul(&picked);
        Ok((self.combine_q(&coords) == *v).then_some(coords))
    }

    /// Integer coordinates of `v` in this basis, or `NotInLattice`.
    pub fn coordinates(&self, v: &LatticeVector) -> Result<Vec<BigInt>> {
        let c = self
            .rational_coordinates(&v.to_rational())?
            .ok_or(Error::NotInLattice)?;
        if c.iter().all(|x| x.is_integer()) {
            Ok(c.into_iter().map(|x| x.to_integer()).collect())
        } else {
            Err(Error::NotInLattice)
        }
    }

    pub fn contains(&self, v: &LatticeVector) -> bool {
        self.coordinates(v).is_ok()
    }

    pub fn in_span(&self, v: &RationalVector) -> Result<bool> {
        Ok(self.rational_coordinates(v)?.is_some())
    }

    /// Ambient vector from coordinates in this basis.
    pub fn combine(&self, coords: &[BigInt]) -> LatticeVector {
        LatticeVector(self.basis.vec_mul(coords))
    }

    pub fn combine_q(&self, coords: &[BigRational]) -> RationalVector {
        let n = self.ambient.rank();
        let mut out = vec![BigRational::zero(); n];
        for (row, c) in self.basis.iter_rows().zip(coords) {
            if c.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(row) {
                if !b.is_zero() {
                    *o += c * b;
                }
            }
        }
        RationalVector(out)
    }

    /// Sum of two sublattices of the same ambient lattice.
    pub fn sum(&self, other: &Sublattice) -> Result<Sublattice> {
        if self.ambient != other.ambient {
            return Err(Error::Precondition(
                "sublattices live in different ambient lattices",
            ));
        }
        Sublattice::spanned_by(&self.ambient, &self.basis.vstack(&other.basis)?)
    }

    /// `{v ∈ self | v·s = 0 for all s ∈ other}`, saturated in `self`.
    pub fn orthogonal_complement_within(&self, other: &Sublattice) -> Result<Sublattice> {
        if self.ambient != other.ambient {
            return Err(Error::Precondition(
                "sublattices live in different ambient lattices",
            ));
        }
        if other.rank() == 0 {
            return Ok(self.clone());
        }
        // c·(B_self·G·B_otherᵀ) = 0
        let cross = &(&self.basis * self.ambient.gram()) * &other.basis.transpose();
        let kernel = integer_kernel(&cross.transpose());
        let basis = &kernel * &self.basis;
        Sublattice::new(self.ambient.clone(), basis)
    }

    /// Orthogonal complement in the ambient lattice.
    pub fn orthogonal_complement(&self) -> Sublattice {
        Sublattice::full(&self.ambient)
            .orthogonal_complement_within(self)
            .expect("same ambient")
    }

    /// Smallest primitive sublattice containing `self`.
    pub fn saturation(&self) -> Sublattice {
        if self.rank() == 0 {
            return self.clone();
        }
        let k = integer_kernel(&self.basis);
        let sat = integer_kernel(&k);
        // k has no rows when self has full rank
        let sat = if k.rows() == 0 {
            IntMatrix::identity(self.ambient.rank())
        } else {
            sat
        };
        Sublattice::new(self.ambient.clone(), sat.hermite_rows()).expect("independent rows")
    }

    /// Saturation relative to `outer`, which must contain `self`.
    pub fn saturation_within(&self, outer: &Sublattice) -> Result<Sublattice> {
        if self.rank() == 0 {
            return Ok(self.clone());
        }
        let rows = self
            .generators()
            .iter()
            .map(|g| outer.coordinates(g))
            .collect::<Result<Vec<_>>>()?;
        let coords = IntMatrix::from_rows(&rows, outer.rank())?;
        let k = integer_kernel(&coords);
        let sat = if k.rows() == 0 {
            IntMatrix::identity(outer.rank())
        } else {
            integer_kernel(&k)
        };
        Sublattice::new(self.ambient.clone(), (&sat * &outer.basis).hermite_rows())
    }

    /// `[outer : self]` for a full-rank sublattice of `outer`; `None` when the
    /// ranks differ.
    pub fn index_in(&self, outer: &Sublattice) -> Result<Option<BigInt>> {
        if self.rank() != outer.rank() {
            return Ok(None);
        }
        let rows = self
            .generators()
            .iter()
            .map(|g| outer.coordinates(g))
            .collect::<Result<Vec<_>>>()?;
        let coords = IntMatrix::from_rows(&rows, outer.rank())?;
        Ok(Some(coords.determinant()?.abs()))
    }

    pub fn is_primitive_sublattice(&self) -> bool {
        self.saturation().same_submodule(self)
    }

    /// `[sat(self) : self]`, the index of the sublattice in its saturation.
    pub fn saturation_index(&self) -> BigInt {
        let snf = smith_normal_form(&self.basis);
        snf.invariant_factors()
            .iter()
            .fold(BigInt::one(), |acc, d| acc * d)
    }

    /// gcd of `|v·wᵢ|` over a basis `wᵢ` of `self`; requires `v ∈ self`, `v ≠ 0`.
    pub fn divisibility(&self, v: &LatticeVector) -> Result<BigInt> {
        if v.is_zero() {
            return Err(Error::ZeroVector);
        }
        self.coordinates(v)?;
        let row = self.basis.mul_vec(&self.ambient.gram().mul_vec(&v.0));
        Ok(row.iter().fold(BigInt::zero(), |g, x| g.gcd(x)))
    }

    /// True iff `v` is not a multiple `k·w` with `k > 1` and `w ∈ self`.
    pub fn is_primitive(&self, v: &LatticeVector) -> Result<bool> {
        let c = self.coordinates(v)?;
        if c.iter().all(Zero::is_zero) {
            return Err(Error::ZeroVector);
        }
        Ok(c.iter().fold(BigInt::zero(), |g, x| g.gcd(x)).is_one())
    }
}

pub fn orthogonal_complement(s: &Sublattice) -> Sublattice {
    s.orthogonal_complement()
}

pub fn saturation(s: &Sublattice) -> Sublattice {
    s.saturation()
}

pub fn divisibility(s: &Sublattice, v: &LatticeVector) -> Result<BigInt> {
    s.divisibility(v)
}

pub fn is_primitive(s: &Sublattice, v: &LatticeVector) -> Result<bool> {
    s.is_primitive(v)
}
