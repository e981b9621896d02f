//! Rational points of tube domains `T_M = {B + iω : ω·ω > 0}` and period
//! domains `D_M = {Ω : Ω·Ω = 0, Ω·Ω̄ > 0}`, the discriminant locus Δ, and the
//! primed real-codimension-one slices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::complex::ComplexRational;
use crate::error::{Error, Result};
use crate::lattice::{integer_kernel, IntMatrix, LatticeVector, RationalVector, Sublattice};
use crate::mirror_lattice::MirrorSplit;

/// `B + iω` with `B`, `ω` in the rational span of a sublattice, given in
/// ambient coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TubePoint {
    lattice: Sublattice,
    b: RationalVector,
    omega: RationalVector,
}

/// `Ω = re + i·im` with both parts in the rational span of `T`, in ambient
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodVector {
    lattice: Sublattice,
    re: RationalVector,
    im: RationalVector,
}

fn check_in_span(lattice: &Sublattice, v: &RationalVector) -> Result<()> {
    if lattice.in_span(v)? {
        Ok(())
    } else {
        Err(Error::NotInSpan)
    }
}

impl TubePoint {
    pub fn new(lattice: Sublattice, b: RationalVector, omega: RationalVector) -> Result<Self> {
        check_in_span(&lattice, &b)?;
        check_in_span(&lattice, &omega)?;
        Ok(TubePoint { lattice, b, omega })
    }

    /// Builds the point from coordinates in the basis of `lattice`.
    pub fn from_basis_coords(
        lattice: Sublattice,
        b: &[BigRational],
        omega: &[BigRational],
    ) -> Result<Self> {
        for c in [b, omega] {
            if c.len() != lattice.rank() {
                return Err(Error::DimensionMismatch {
                    expected: lattice.rank(),
                    found: c.len(),
                });
            }
        }
        let b = lattice.combine_q(b);
        let omega = lattice.combine_q(omega);
        Ok(TubePoint { lattice, b, omega })
    }

    pub fn lattice(&self) -> &Sublattice {
        &self.lattice
    }

    pub fn b(&self) -> &RationalVector {
        &self.b
    }

    pub fn omega(&self) -> &RationalVector {
        &self.omega
    }

    pub fn omega_sq(&self) -> BigRational {
        self.lattice
            .ambient()
            .norm_q(&self.omega)
            .expect("sized at construction")
    }

    pub fn b_dot_omega(&self) -> BigRational {
        self.lattice
            .ambient()
            .pairing_q(&self.b, &self.omega)
            .expect("sized at construction")
    }
}

impl PeriodVector {
    pub fn new(lattice: Sublattice, re: RationalVector, im: RationalVector) -> Result<Self> {
        check_in_span(&lattice, &re)?;
        check_in_span(&lattice, &im)?;
        Ok(PeriodVector { lattice, re, im })
    }

    pub fn lattice(&self) -> &Sublattice {
        &self.lattice
    }

    pub fn re(&self) -> &RationalVector {
        &self.re
    }

    pub fn im(&self) -> &RationalVector {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Complex bilinear pairing `Ω·Ω`.
    pub fn self_pairing(&self) -> ComplexRational {
        let l = self.lattice.ambient();
        let rr = l.norm_q(&self.re).expect("sized");
        let ii = l.norm_q(&self.im).expect("sized");
        let ri = l.pairing_q(&self.re, &self.im).expect("sized");
        ComplexRational::new(rr - ii, BigRational::from_integer(BigInt::from(2)) * ri)
    }

    /// Hermitian pairing `Ω·Ω̄ = re² + im²`.
    pub fn hermitian_norm(&self) -> BigRational {
        let l = self.lattice.ambient();
        l.norm_q(&self.re).expect("sized") + l.norm_q(&self.im).expect("sized")
    }

    /// `Ω·v` for a rational vector `v`.
    pub fn pair_with(&self, v: &RationalVector) -> Result<ComplexRational> {
        let l = self.lattice.ambient();
        Ok(ComplexRational::new(
            l.pairing_q(&self.re, v)?,
            l.pairing_q(&self.im, v)?,
        ))
    }

    /// `λ·Ω` for a complex scalar.
    pub fn scale(&self, lambda: &ComplexRational) -> PeriodVector {
        let re = self
            .re
            .scale(&lambda.re)
            .axpy(&-lambda.im.clone(), &self.im);
        let im = self.re.scale(&lambda.im).axpy(&lambda.re, &self.im);
        PeriodVector {
            lattice: self.lattice.clone(),
            re,
            im,
        }
    }
}

pub fn in_tube(p: &TubePoint) -> bool {
    p.omega_sq().is_positive()
}

pub fn in_period_domain(omega: &PeriodVector) -> bool {
    omega.self_pairing().is_zero() && omega.hermitian_norm().is_positive()
}

/// Which defining condition of `D_M` fails first, if any.
pub fn period_domain_violation(omega: &PeriodVector) -> Option<&'static str> {
    let sp = omega.self_pairing();
    if !sp.re.is_zero() {
        Some("Re(Omega.Omega) != 0: (ReOmega)^2 != (ImOmega)^2")
    } else if !sp.im.is_zero() {
        Some("Im(Omega.Omega) != 0: ReOmega.ImOmega != 0")
    } else if !omega.hermitian_norm().is_positive() {
        Some("Omega.conj(Omega) <= 0")
    } else {
        None
    }
}

fn clear_denominators(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
        .collect()
}

/// Decides `Ω ∈ Δ`: is there a nonzero `α ∈ T` with `α·Ω = 0`? Solved as the
/// integer kernel of the two rational conditions `α·ReΩ = α·ImΩ = 0`.
pub fn in_delta(omega: &PeriodVector) -> Result<(bool, Option<LatticeVector>)> {
    if omega.is_zero() {
        return Err(Error::ZeroPeriod);
    }
    let t = &omega.lattice;
    let l = t.ambient();
    let mut rows = Vec::with_capacity(2);
    for part in [&omega.re, &omega.im] {
        let row: Vec<BigRational> = t
            .generators()
            .iter()
            .map(|g| l.pairing_q(&g.to_rational(), part))
            .collect::<Result<_>>()?;
        rows.push(clear_denominators(&row));
    }
    let constraints = IntMatrix::from_rows(&rows, t.rank())?;
    let kernel = integer_kernel(&constraints);
    if kernel.rows() == 0 {
        return Ok((false, None));
    }
    Ok((true, Some(t.combine(kernel.row(0)))))
}

/// Arguments accepted by [`in_primed`].
#[derive(Debug, Clone, Copy)]
pub enum PrimedQuery<'a> {
    Tube(&'a TubePoint),
    Period(&'a PeriodVector),
}

/// `T'`: `B·ω = 0`.  `D'`: `ImΩ ∈ M̌ ⊗ Q`.
pub fn in_primed(query: PrimedQuery<'_>, split: &MirrorSplit) -> Result<bool> {
    match query {
        PrimedQuery::Tube(p) => Ok(p.b_dot_omega().is_zero()),
        PrimedQuery::Period(omega) => {
            if omega.lattice.ambient() != split.t().ambient() {
                return Err(Error::DimensionMismatch {
                    expected: split.t().ambient().rank(),
                    found: omega.lattice.ambient().rank(),
                });
            }
            split.m_check().in_span(&omega.im)
        }
    }
}
