//! Involutions of integer lattices, the reflection `r_P`, the mirror
//! involution `r_P ∘ ρ`, the transpose identity for anti-symplectic maps, and
//! the exchange of real nodal fibers.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::lattice::{integer_kernel, IntMatrix, IntegerLattice, RatMatrix, Sublattice};
use crate::mirror_lattice::MirrorSplit;

/// An integer matrix `A` acting on column vectors with `A² = I` and
/// `AᵀGA = G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeInvolution {
    lattice: IntegerLattice,
    matrix: IntMatrix,
}

impl LatticeInvolution {
    pub fn new(lattice: IntegerLattice, matrix: IntMatrix) -> Result<Self> {
        let n = lattice.rank();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: matrix.rows().max(matrix.cols()),
            });
        }
        if &matrix * &matrix != IntMatrix::identity(n) {
            return Err(Error::NotInvolution);
        }
        let g = lattice.gram();
        if &(&matrix.transpose() * g) * &matrix != *g {
            return Err(Error::NotIsometry);
        }
        Ok(LatticeInvolution { lattice, matrix })
    }

    pub fn identity(lattice: &IntegerLattice) -> Self {
        let n = lattice.rank();
        LatticeInvolution {
            lattice: lattice.clone(),
            matrix: IntMatrix::identity(n),
        }
    }

    pub fn negation(lattice: &IntegerLattice) -> Self {
        let n = lattice.rank();
        LatticeInvolution {
            lattice: lattice.clone(),
            matrix: IntMatrix::identity(n).scale(&BigInt::from(-1)),
        }
    }

    pub fn lattice(&self) -> &IntegerLattice {
        &self.lattice
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LatticeInvolution) -> Result<LatticeInvolution> {
        if self.lattice != other.lattice {
            return Err(Error::Precondition("involutions act on different lattices"));
        }
        LatticeInvolution::new(self.lattice.clone(), &self.matrix * &other.matrix)
    }
}

fn kernel_sublattice(l: &IntegerLattice, a: &IntMatrix) -> Result<Sublattice> {
    let k = integer_kernel(a);
    if k.rows() == 0 {
        return Ok(Sublattice::zero(l));
    }
    Sublattice::new(l.clone(), k.hermite_rows())
}

/// `(ker(ρ − I), ker(ρ + I))`, both primitive.
pub fn invariant_sublattices(rho: &LatticeInvolution) -> Result<(Sublattice, Sublattice)> {
    let n = rho.lattice.rank();
    let id = IntMatrix::identity(n);
    let plus = kernel_sublattice(&rho.lattice, &rho.matrix.sub(&id))?;
    let minus = kernel_sublattice(&rho.lattice, &rho.matrix.add(&id))?;
    debug_assert_eq!(plus.rank() + minus.rank(), n);
    Ok((plus, minus))
}

/// The isometry that is the identity on `S` and `−I` on `S⊥`, for `S` with a
/// unimodular induced form: `A = 2·Bᵀ·G_S⁻¹·B·G − I`.
pub fn unimodular_reflection(l: &IntegerLattice, s: &Sublattice) -> Result<LatticeInvolution> {
    if s.ambient() != l {
        return Err(Error::Precondition("sublattice of a different lattice"));
    }
    let n = l.rank();
    if s.rank() == 0 {
        return Ok(LatticeInvolution::negation(l));
    }
    let gs = s.gram();
    let det = gs.determinant()?;
    if det.abs() != BigInt::one() {
        return Err(Error::RequiresUnimodularPlane(det));
    }
    let gs_inv = gs.to_rational().inverse().ok_or(Error::Singular)?;
    let b = s.basis().to_rational();
    let g = l.gram().to_rational();
    let two = BigRational::from_integer(BigInt::from(2));
    let a = (&(&(&b.transpose() * &gs_inv) * &b) * &g)
        .scale(&two)
        .sub(&RatMatrix::identity(n));
    let a = a
        .to_integer()
        .ok_or(Error::Precondition("reflection is not integral"))?;
    LatticeInvolution::new(l.clone(), a)
}

/// `r_P ∘ ρ` for a split of the anti-invariant lattice of `ρ` with `m = 1`.
pub fn mirror_involution(
    rho: &LatticeInvolution,
    split: &MirrorSplit,
) -> Result<LatticeInvolution> {
    if !split.m().is_one() {
        return Err(Error::RequiresUnimodularPlane(split.m().clone()));
    }
    if split.t().ambient() != &rho.lattice {
        return Err(Error::Precondition("split lives in a different lattice"));
    }
    let (_, minus) = invariant_sublattices(rho)?;
    if !minus.same_submodule(split.t()) {
        return Err(Error::Precondition(
            "anti-invariant lattice of the involution is not T",
        ));
    }
    let r_p = unimodular_reflection(&rho.lattice, split.p())?;
    r_p.compose(rho)
}

/// A rational vector space with a nondegenerate skew form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticSpace {
    form: RatMatrix,
}

impl SymplecticSpace {
    pub fn new(form: RatMatrix) -> Result<Self> {
        if !form.is_square() {
            return Err(Error::NotSquare {
                rows: form.rows(),
                cols: form.cols(),
            });
        }
        let n = form.rows();
        if n == 0 || n % 2 == 1 {
            return Err(Error::InvalidSymplecticForm(
                "dimension must be even and positive",
            ));
        }
        if form.add(&form.transpose()) != RatMatrix::zeros(n, n) {
            return Err(Error::InvalidSymplecticForm("form is not skew-symmetric"));
        }
        if form.rank() != n {
            return Err(Error::InvalidSymplecticForm("form is degenerate"));
        }
        Ok(SymplecticSpace { form })
    }

    /// Block diagonal `[[0, 1], [−1, 0]]`.
    pub fn standard(dim: usize) -> Result<Self> {
        let mut j = RatMatrix::zeros(dim, dim);
        for k in (0..dim.saturating_sub(1)).step_by(2) {
            j[(k, k + 1)] = BigRational::one();
            j[(k + 1, k)] = -BigRational::one();
        }
        SymplecticSpace::new(j)
    }

    pub fn dim(&self) -> usize {
        self.form.rows()
    }

    pub fn form(&self) -> &RatMatrix {
        &self.form
    }
}

/// `Ψ_W⁻¹ ∘ (φ⁻¹)ᵗ ∘ Ψ_V + φ` for an anti-symplectic `φ: V → W`, where
/// `Ψ(α) = ω(α, ·)`. The zero matrix certifies the transpose identity.
pub fn transpose_defect(
    v: &SymplecticSpace,
    w: &SymplecticSpace,
    phi: &RatMatrix,
) -> Result<RatMatrix> {
    if phi.rows() != w.dim() || phi.cols() != v.dim() {
        return Err(Error::DimensionMismatch {
            expected: w.dim(),
            found: phi.rows(),
        });
    }
    if &(&phi.transpose() * w.form()) * phi != v.form().scale(&-BigRational::one()) {
        return Err(Error::NotAntiSymplectic);
    }
    let phi_inv = phi.inverse().ok_or(Error::Singular)?;
    let psi_w_inv = w.form().transpose().inverse().ok_or(Error::Singular)?;
    let psi_v = v.form().transpose();
    Ok((&(&psi_w_inv * &phi_inv.transpose()) * &psi_v).add(phi))
}

/// The symplectic transvection `x ↦ x + t·ω(u, x)·u` of the standard form.
pub fn transvection(
    space: &SymplecticSpace,
    u: &[BigRational],
    t: &BigRational,
) -> Result<RatMatrix> {
    let n = space.dim();
    if u.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: u.len(),
        });
    }
    let u_row = RatMatrix::from_rows(&[u.to_vec()], n)?;
    let uu_j = &(&u_row.transpose() * &u_row) * space.form();
    Ok(RatMatrix::identity(n).add(&uu_j.scale(t)))
}

/// Direct sum of `diag(1, −1)` blocks, anti-symplectic for the standard form.
pub fn anti_symplectic_seed(dim: usize) -> RatMatrix {
    let mut s = RatMatrix::identity(dim);
    for k in (1..dim).step_by(2) {
        s[(k, k)] = -BigRational::one();
    }
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RealFiberType {
    FigureEight,
    CirclePoint,
    SingularCircle,
    SmoothOneCircle,
    SmoothTwoCircles,
}

impl RealFiberType {
    pub const ALL: [RealFiberType; 5] = [
        RealFiberType::FigureEight,
        RealFiberType::CirclePoint,
        RealFiberType::SingularCircle,
        RealFiberType::SmoothOneCircle,
        RealFiberType::SmoothTwoCircles,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RealFiberType::FigureEight => "figure_eight",
            RealFiberType::CirclePoint => "circle_point",
            RealFiberType::SingularCircle => "singular_circle",
            RealFiberType::SmoothOneCircle => "smooth_one_circle",
            RealFiberType::SmoothTwoCircles => "smooth_two_circles",
        }
    }

    pub fn is_singular(self) -> bool {
        matches!(
            self,
            RealFiberType::FigureEight | RealFiberType::CirclePoint | RealFiberType::SingularCircle
        )
    }
}

impl fmt::Display for RealFiberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RealFiberType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RealFiberType::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown real fiber type {s:?}")))
    }
}

/// Real locus of a singular fiber after composing the real structure with
/// fiberwise negation.
pub fn real_fiber_dual(t: RealFiberType) -> Result<RealFiberType> {
    match t {
        RealFiberType::FigureEight => Ok(RealFiberType::CirclePoint),
        RealFiberType::CirclePoint => Ok(RealFiberType::FigureEight),
        RealFiberType::SingularCircle => Ok(RealFiberType::SingularCircle),
        RealFiberType::SmoothOneCircle | RealFiberType::SmoothTwoCircles => {
            Err(Error::SmoothFiberType(t.as_str()))
        }
    }
}

/// `ρ` acting as the identity on `M` and `−I` on `M⊥`, for unimodular `M`.
pub fn block_involution(l: &IntegerLattice, m: &Sublattice) -> Result<LatticeInvolution> {
    unimodular_reflection(l, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{k3_lattice, K3_U1, K3_U2};
    use crate::lattice::LatticeVector;
    use crate::mirror_lattice::{check_admissible, construct_mirror};
    use proptest::prelude::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn block(l: &IntegerLattice, range: std::ops::Range<usize>) -> Sublattice {
        let vs: Vec<LatticeVector> = range.map(|i| LatticeVector::unit(l.rank(), i)).collect();
        Sublattice::from_vectors(l, &vs).unwrap()
    }

    fn k3_setup() -> (IntegerLattice, LatticeInvolution, MirrorSplit) {
        let l = k3_lattice();
        let m = block(&l, K3_U1);
        let rho = block_involution(&l, &m).unwrap();
        let (_, t) = invariant_sublattices(&rho).unwrap();
        let pair = check_admissible(
            &t,
            &LatticeVector::unit(22, K3_U2.start),
            &LatticeVector::unit(22, K3_U2.start + 1),
            &BigInt::one(),
        )
        .unwrap();
        (l, rho, construct_mirror(&pair).unwrap())
    }

    #[test]
    fn trivial_involutions() {
        let l = k3_lattice();
        let (plus, minus) = invariant_sublattices(&LatticeInvolution::identity(&l)).unwrap();
        assert_eq!((plus.rank(), minus.rank()), (22, 0));
        let (plus, minus) = invariant_sublattices(&LatticeInvolution::negation(&l)).unwrap();
        assert_eq!((plus.rank(), minus.rank()), (0, 22));
    }

    #[test]
    fn block_involution_fixes_first_plane() {
        let (l, rho, _) = k3_setup();
        let (plus, minus) = invariant_sublattices(&rho).unwrap();
        assert!(plus.same_submodule(&block(&l, K3_U1)));
        assert_eq!(minus.rank(), 20);
        assert!(minus.same_submodule(&block(&l, 2..22)));
    }

    #[test]
    fn rejects_non_involutions() {
        let l = IntegerLattice::diagonal(&[1, 1]);
        let shear = IntMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        assert_eq!(
            LatticeInvolution::new(l.clone(), shear),
            Err(Error::NotInvolution)
        );
        let u = crate::catalog::hyperbolic_plane(1).unwrap();
        let a = IntMatrix::from_i64(&[&[1, 0], &[0, -1]]);
        assert_eq!(LatticeInvolution::new(u, a), Err(Error::NotIsometry));
    }

    #[test]
    fn mirror_involution_on_k3() {
        let (l, rho, split) = k3_setup();
        let mirror = mirror_involution(&rho, &split).unwrap();
        let n = l.rank();
        assert_eq!(mirror.matrix() * mirror.matrix(), IntMatrix::identity(n));
        let (plus, minus) = invariant_sublattices(&mirror).unwrap();
        assert!(plus.same_submodule(split.m_check()));
        assert!(plus.same_submodule(&block(&l, 4..22)));
        let p_plus_m = split.p().sum(&block(&l, K3_U1)).unwrap();
        assert!(minus.same_submodule(&p_plus_m));

        let back = mirror_involution(&mirror, &split.dual_split().unwrap()).unwrap();
        assert_eq!(back, rho);
    }

    #[test]
    fn mirror_involution_checks_preconditions() {
        let (l, _, split) = k3_setup();
        let wrong = LatticeInvolution::negation(&l);
        assert!(matches!(
            mirror_involution(&wrong, &split),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn transpose_defect_examples() {
        let v2 = SymplecticSpace::standard(2).unwrap();
        let seed = anti_symplectic_seed(2);
        assert!(transpose_defect(&v2, &v2, &seed).unwrap().is_zero());
        assert_eq!(
            transpose_defect(&v2, &v2, &RatMatrix::identity(2)),
            Err(Error::NotAntiSymplectic)
        );
        let v4 = SymplecticSpace::standard(4).unwrap();
        assert!(transpose_defect(&v4, &v4, &anti_symplectic_seed(4))
            .unwrap()
            .is_zero());
        assert!(SymplecticSpace::standard(3).is_err());
        assert!(SymplecticSpace::new(RatMatrix::identity(2)).is_err());
    }

    #[test]
    fn transpose_defect_with_distinct_forms() {
        // W carries 3 times the standard form; φ = diag(1, -1/3) is anti-symplectic.
        let v = SymplecticSpace::standard(2).unwrap();
        let w = SymplecticSpace::new(v.form().scale(&r(3))).unwrap();
        let mut phi = RatMatrix::identity(2);
        phi[(1, 1)] = BigRational::new((-1).into(), 3.into());
        assert!(transpose_defect(&v, &w, &phi).unwrap().is_zero());
    }

    #[test]
    fn real_fiber_exchange() {
        assert_eq!(
            real_fiber_dual(RealFiberType::FigureEight),
            Ok(RealFiberType::CirclePoint)
        );
        assert_eq!(
            real_fiber_dual(RealFiberType::CirclePoint),
            Ok(RealFiberType::FigureEight)
        );
        assert_eq!(
            real_fiber_dual(RealFiberType::SingularCircle),
            Ok(RealFiberType::SingularCircle)
        );
        for t in RealFiberType::ALL {
            match real_fiber_dual(t) {
                Ok(d) => assert_eq!(real_fiber_dual(d), Ok(t)),
                Err(e) => assert!(matches!(e, Error::SmoothFiberType(_)) && !t.is_singular()),
            }
            assert_eq!(t.as_str().parse::<RealFiberType>(), Ok(t));
        }
    }

    proptest! {
        #[test]
        fn transvection_composites_satisfy_the_transpose_identity(
            half in 1usize..=3,
            steps in proptest::collection::vec((proptest::collection::vec(-3i64..=3, 6), -4i64..=4), 1..5),
        ) {
            let dim = 2 * half;
            let space = SymplecticSpace::standard(dim).unwrap();
            let mut phi = anti_symplectic_seed(dim);
            for (u, t) in &steps {
                let u: Vec<BigRational> = u[..dim].iter().map(|&x| r(x)).collect();
                phi = &transvection(&space, &u, &r(*t)).unwrap() * &phi;
            }
            prop_assert!(transpose_defect(&space, &space, &phi).unwrap().is_zero());
        }
    }
}
