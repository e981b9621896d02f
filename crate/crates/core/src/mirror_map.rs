//! The mirror map φ: T_M̌ → D_M, its inverse, and the elliptic-curve mirror
//! map φ_A(B + iω) = s_x + (B + iω)·s_y.
//!
//! For a split `T = P ⊕ M̌` with `P = span(E, E') ≅ U(m)`:
//!
//! ```text
//! φ(B̌ + iω̌) = B̌ + E'/m + ((ω̌·ω̌ − B̌·B̌)/2)·E + i(ω̌ − (ω̌·B̌)·E)
//! ```
//!
//! The inverse rescales Ω so that Ω·E = 1 and projects real and imaginary
//! parts onto M̌ ⊗ Q along P ⊗ Q.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::complex::ComplexRational;
use crate::error::{Error, Result};
use crate::mirror_lattice::MirrorSplit;
use crate::period::{in_period_domain, in_tube, PeriodVector, TubePoint};

/// `Ω_A = sx_coeff·s_x + sy_coeff·s_y` normalized so that `sx_coeff = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticPeriod {
    pub sx_coeff: BigRational,
    pub sy_coeff: ComplexRational,
}

impl EllipticPeriod {
    /// τ, the `s_y` coefficient after normalization.
    pub fn tau(&self) -> &ComplexRational {
        &self.sy_coeff
    }
}

pub fn phi(split: &MirrorSplit, p: &TubePoint) -> Result<PeriodVector> {
    if p.lattice().ambient() != split.t().ambient() {
        return Err(Error::Precondition(
            "tube point and split live in different lattices",
        ));
    }
    let mc = split.m_check();
    if !mc.in_span(p.b())? || !mc.in_span(p.omega())? {
        return Err(Error::Precondition(
            "tube point is not over the mirror lattice",
        ));
    }
    if !in_tube(p) {
        return Err(Error::NotInTube(p.omega_sq().to_string()));
    }
    let l = split.t().ambient();
    let b = p.b();
    let w = p.omega();
    let m = BigRational::from_integer(split.m().clone());
    let two = BigRational::from_integer(BigInt::from(2));
    let e = split.e().to_rational();
    let e_prime = split.e_prime().to_rational();

    let coeff_e = (l.norm_q(w)? - l.norm_q(b)?) / two;
    let re = b.axpy(&m.recip(), &e_prime).axpy(&coeff_e, &e);
    let im = w.axpy(&-l.pairing_q(w, b)?, &e);
    PeriodVector::new(split.t().clone(), re, im)
}

/// Rescales `Ω` so that `Ω·E = 1`.
pub fn normalize_period(split: &MirrorSplit, omega: &PeriodVector) -> Result<PeriodVector> {
    let c = omega.pair_with(&split.e().to_rational())?;
    if c.is_zero() {
        return Err(Error::ZeroPairingWithE);
    }
    Ok(omega.scale(&c.recip()?))
}

pub fn phi_inverse(split: &MirrorSplit, omega: &PeriodVector) -> Result<TubePoint> {
    if omega.lattice().ambient() != split.t().ambient() {
        return Err(Error::Precondition(
            "period and split live in different lattices",
        ));
    }
    let t = split.t();
    if !t.in_span(omega.re())? || !t.in_span(omega.im())? {
        return Err(Error::Precondition("period is not in T tensor Q"));
    }
    let normalized = normalize_period(split, omega)?;
    if !in_period_domain(omega) {
        return Err(Error::NotInPeriodDomain(
            crate::period::period_domain_violation(omega).unwrap_or("unknown"),
        ));
    }
    let b = split.project_to_m_check(normalized.re())?;
    let w = split.project_to_m_check(normalized.im())?;
    TubePoint::new(split.m_check().clone(), b, w)
}

pub fn elliptic_phi(b: &BigRational, omega: &BigRational) -> Result<EllipticPeriod> {
    if !omega.is_positive() {
        return Err(Error::NonPositiveOmega(omega.to_string()));
    }
    Ok(EllipticPeriod {
        sx_coeff: BigRational::from_integer(1.into()),
        sy_coeff: ComplexRational::new(b.clone(), omega.clone()),
    })
}

/// `B + iω` from a normalized elliptic period.
pub fn elliptic_phi_inverse(p: &EllipticPeriod) -> Result<(BigRational, BigRational)> {
    if p.sx_coeff.is_zero() {
        return Err(Error::ZeroPeriod);
    }
    let tau = ComplexRational::new(&p.sy_coeff.re / &p.sx_coeff, &p.sy_coeff.im / &p.sx_coeff);
    if !tau.im.is_positive() {
        return Err(Error::NonPositiveOmega(tau.im.to_string()));
    }
    Ok((tau.re, tau.im))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::hyperbolic_plane;
    use crate::lattice::{IntegerLattice, LatticeVector, RationalVector, Sublattice};
    use crate::mirror_lattice::{check_admissible, construct_mirror};
    use crate::period::in_primed;
    use crate::period::PrimedQuery;
    use proptest::prelude::*;

    fn q(c: &[i64]) -> RationalVector {
        RationalVector(
            c.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect(),
        )
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn split_on(l: &IntegerLattice, m: i64) -> MirrorSplit {
        let n = l.rank();
        let t = Sublattice::full(l);
        let pair = check_admissible(
            &t,
            &LatticeVector::unit(n, 0),
            &LatticeVector::unit(n, 1),
            &BigInt::from(m),
        )
        .unwrap();
        construct_mirror(&pair).unwrap()
    }

    fn uu() -> IntegerLattice {
        let u = hyperbolic_plane(1).unwrap();
        u.direct_sum(&u)
    }

    #[test]
    fn phi_examples() {
        let split = split_on(&uu(), 1);
        let p =
            TubePoint::new(split.m_check().clone(), q(&[0, 0, 0, 0]), q(&[0, 0, 1, 1])).unwrap();
        let omega = phi(&split, &p).unwrap();
        assert_eq!(omega.re(), &q(&[1, 1, 0, 0]));
        assert_eq!(omega.im(), &q(&[0, 0, 1, 1]));

        let p2 =
            TubePoint::new(split.m_check().clone(), q(&[0, 0, 1, 0]), q(&[0, 0, 1, 1])).unwrap();
        let omega2 = phi(&split, &p2).unwrap();
        assert_eq!(omega2.re(), &q(&[1, 1, 1, 0]));
        assert_eq!(omega2.im(), &q(&[-1, 0, 1, 1]));
        assert!(omega2.self_pairing().is_zero());

        let l2 = hyperbolic_plane(2)
            .unwrap()
            .direct_sum(&hyperbolic_plane(1).unwrap());
        let split2 = split_on(&l2, 2);
        let p3 =
            TubePoint::new(split2.m_check().clone(), q(&[0, 0, 0, 0]), q(&[0, 0, 1, 1])).unwrap();
        let omega3 = phi(&split2, &p3).unwrap();
        assert_eq!(
            omega3.re(),
            &RationalVector(vec![r(1, 1), r(1, 2), r(0, 1), r(0, 1)])
        );
        assert_eq!(omega3.im(), &q(&[0, 0, 1, 1]));
        assert!(in_period_domain(&omega3));
    }

    #[test]
    fn phi_rejects_points_outside_the_tube() {
        let split = split_on(&uu(), 1);
        let p =
            TubePoint::new(split.m_check().clone(), q(&[0, 0, 0, 0]), q(&[0, 0, 1, -1])).unwrap();
        assert!(matches!(phi(&split, &p), Err(Error::NotInTube(_))));
        let off = TubePoint::new(split.t().clone(), q(&[0, 0, 0, 0]), q(&[1, 1, 0, 0])).unwrap();
        assert!(matches!(phi(&split, &off), Err(Error::Precondition(_))));
    }

    #[test]
    fn phi_inverse_examples() {
        let split = split_on(&uu(), 1);
        let p =
            TubePoint::new(split.m_check().clone(), q(&[0, 0, 0, 0]), q(&[0, 0, 1, 1])).unwrap();
        assert_eq!(phi_inverse(&split, &phi(&split, &p).unwrap()).unwrap(), p);

        let omega =
            PeriodVector::new(split.t().clone(), q(&[1, 1, 1, 0]), q(&[-1, 0, 1, 1])).unwrap();
        let back = phi_inverse(&split, &omega).unwrap();
        assert_eq!(back.b(), &q(&[0, 0, 1, 0]));
        assert_eq!(back.omega(), &q(&[0, 0, 1, 1]));

        let on_mc =
            PeriodVector::new(split.t().clone(), q(&[0, 0, 1, 1]), q(&[0, 0, 1, -1])).unwrap();
        assert_eq!(phi_inverse(&split, &on_mc), Err(Error::ZeroPairingWithE));
    }

    #[test]
    fn phi_inverse_undoes_complex_rescaling() {
        let split = split_on(&uu(), 1);
        let p =
            TubePoint::new(split.m_check().clone(), q(&[0, 0, 2, -1]), q(&[0, 0, 3, 1])).unwrap();
        let omega = phi(&split, &p).unwrap();
        let lambda = ComplexRational::new(r(2, 3), r(-5, 7));
        let scaled = omega.scale(&lambda);
        assert_eq!(phi_inverse(&split, &scaled).unwrap(), p);
        assert_eq!(normalize_period(&split, &scaled).unwrap(), omega);
    }

    #[test]
    fn elliptic_examples() {
        let p = elliptic_phi(&r(0, 1), &r(1, 1)).unwrap();
        assert_eq!(p.sx_coeff, r(1, 1));
        assert_eq!(p.tau(), &ComplexRational::i());
        let p = elliptic_phi(&r(1, 2), &r(3, 1)).unwrap();
        assert_eq!(p.tau(), &ComplexRational::new(r(1, 2), r(3, 1)));
        assert!(matches!(
            elliptic_phi(&r(0, 1), &r(0, 1)),
            Err(Error::NonPositiveOmega(_))
        ));
        assert_eq!(elliptic_phi_inverse(&p).unwrap(), (r(1, 2), r(3, 1)));
    }

    // A split with an indefinite rank-4 mirror lattice: T = U ⊕ U ⊕ ⟨2⟩ ⊕ ⟨-2⟩.
    fn wide_split() -> MirrorSplit {
        let l = uu().direct_sum(&IntegerLattice::diagonal(&[2, -2]));
        split_on(&l, 1)
    }

    proptest! {
        #[test]
        fn quadric_conditions_and_round_trip(
            b in proptest::collection::vec(-10i64..=10, 4),
            w in proptest::collection::vec(-10i64..=10, 4),
            den in 1i64..5,
        ) {
            let split = wide_split();
            let mc = split.m_check().clone();
            let bq: Vec<BigRational> = b.iter().map(|&x| r(x, den)).collect();
            let wq: Vec<BigRational> = w.iter().map(|&x| r(x, 1)).collect();
            let p = TubePoint::from_basis_coords(mc, &bq, &wq).unwrap();
            prop_assume!(in_tube(&p));
            let omega = phi(&split, &p).unwrap();
            prop_assert!(omega.self_pairing().is_zero());
            prop_assert_eq!(omega.hermitian_norm(), BigRational::from_integer(2.into()) * p.omega_sq());
            prop_assert_eq!(phi_inverse(&split, &omega).unwrap(), p.clone());
            let primed_tube = in_primed(PrimedQuery::Tube(&p), &split).unwrap();
            let primed_period = in_primed(PrimedQuery::Period(&omega), &split).unwrap();
            prop_assert_eq!(primed_tube, primed_period);
        }
    }
}
