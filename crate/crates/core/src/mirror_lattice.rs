//! m-admissible isotropic vectors in a transcendental lattice T and the
//! mirror lattice M̌ = (ZE)⊥/ZE, realised inside T through the embedding
//! α ↦ α − (α·E'/m)·E.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{IntMatrix, LatticeVector, RationalVector, Sublattice};

/// Default coefficient bound for [`find_isotropic`].
pub const DEFAULT_HEIGHT: u32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissiblePair {
    t: Sublattice,
    e: LatticeVector,
    e_prime: LatticeVector,
    m: BigInt,
}

impl AdmissiblePair {
    pub fn t(&self) -> &Sublattice {
        &self.t
    }

    pub fn e(&self) -> &LatticeVector {
        &self.e
    }

    pub fn e_prime(&self) -> &LatticeVector {
        &self.e_prime
    }

    pub fn m(&self) -> &BigInt {
        &self.m
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MirrorSplit {
    pair: AdmissiblePair,
    p: Sublattice,
    m_check: Sublattice,
    section_class: LatticeVector,
}

/// Every primitive `v ∈ T` with coefficients in `[-height, height]` in the
/// basis of `T` and `v·v = 0`, one representative per sign pair.
pub fn find_isotropic(t: &Sublattice, height: u32) -> Vec<LatticeVector> {
    let r = t.rank();
    if r == 0 || height == 0 {
        return Vec::new();
    }
    let gram = t.gram();
    let h = height as i64;
    let mut out = Vec::new();
    let mut coeffs = vec![-h; r];
    loop {
        // canonical sign: first nonzero coefficient positive
        let first = coeffs.iter().find(|&&c| c != 0).copied();
        if first.is_some_and(|c| c > 0) {
            let c: Vec<BigInt> = coeffs.iter().map(|&x| BigInt::from(x)).collect();
            let g = c.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            if g.is_one() && crate::lattice::dot(&gram.vec_mul(&c), &c).is_zero() {
                out.push(t.combine(&c));
            }
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == r {
                return out;
            }
            if coeffs[i] < h {
                coeffs[i] += 1;
                break;
            }
            coeffs[i] = -h;
            i += 1;
        }
    }
}

/// Validates `(E, E')` as an m-admissible pair in `T`.
///
/// The condition "no α ∈ T with 0 < α·E < m" is decided as `div_T(E) >= m`,
/// since `{α·E : α ∈ T} = div_T(E)·Z`. The equivalent splitting condition
/// `T = P ⊕ P⊥` with `P = span(E, E')` is checked as well and a disagreement
/// between the two is reported as [`Error::FormulationMismatch`].
pub fn check_admissible(
    t: &Sublattice,
    e: &LatticeVector,
    e_prime: &LatticeVector,
    m: &BigInt,
) -> Result<AdmissiblePair> {
    if !m.is_positive() {
        return Err(Error::NonPositiveTwist(m.clone()));
    }
    t.coordinates(e)?;
    t.coordinates(e_prime)?;
    let l = t.ambient();
    let ee = l.norm(e)?;
    if !ee.is_zero() {
        return Err(Error::NotIsotropic {
            which: "E",
            value: ee,
        });
    }
    let ff = l.norm(e_prime)?;
    if !ff.is_zero() {
        return Err(Error::NotIsotropic {
            which: "E'",
            value: ff,
        });
    }
    let ef = l.pairing(e, e_prime)?;
    if &ef != m {
        return Err(Error::WrongPairing {
            expected: m.clone(),
            found: ef,
        });
    }
    if !t.is_primitive(e)? {
        return Err(Error::NotPrimitive { which: "E" });
    }
    if !t.is_primitive(e_prime)? {
        return Err(Error::NotPrimitive { which: "E'" });
    }

    let div_e = t.divisibility(e)?;
    let div_f = t.divisibility(e_prime)?;
    let divisibility_ok = &div_e >= m && &div_f >= m;

    let p = Sublattice::from_vectors(l, &[e.clone(), e_prime.clone()])?;
    let p_perp = t.orthogonal_complement_within(&p)?;
    let splitting_ok = p.sum(&p_perp)?.same_submodule(t);

    match (divisibility_ok, splitting_ok) {
        (true, true) => Ok(AdmissiblePair {
            t: t.clone(),
            e: e.clone(),
            e_prime: e_prime.clone(),
            m: m.clone(),
        }),
        (false, false) => {
            let (which, divisibility) = if &div_e < m {
                ("E", div_e)
            } else {
                ("E'", div_f)
            };
            Err(Error::Divisibility {
                which,
                divisibility,
                m: m.clone(),
            })
        }
        (divisibility_ok, splitting_ok) => Err(Error::FormulationMismatch {
            divisibility_ok,
            splitting_ok,
        }),
    }
}

/// Builds `M̌` inside `T` and checks `T = P ⊕ M̌` with index one.
pub fn construct_mirror(pair: &AdmissiblePair) -> Result<MirrorSplit> {
    let t = &pair.t;
    let l = t.ambient();
    let e_line = Sublattice::from_vectors(l, std::slice::from_ref(&pair.e))?;
    let kernel = t.orthogonal_complement_within(&e_line)?;

    let mut images = Vec::with_capacity(kernel.rank());
    for alpha in kernel.generators() {
        images.push(embed_raw(pair, &alpha)?.0);
    }
    let images = IntMatrix::from_rows(&images, l.rank())?;
    let m_check = Sublattice::spanned_by(l, &images)?.saturation_within(t)?;

    let p = Sublattice::from_vectors(l, &[pair.e.clone(), pair.e_prime.clone()])?;
    let sum = p.sum(&m_check)?;
    let index = sum.index_in(t)?;
    match index {
        Some(ref i) if i.is_one() => {}
        Some(i) => {
            return Err(Error::SplittingIndex {
                index: i.to_string(),
            })
        }
        None => {
            return Err(Error::SplittingIndex {
                index: "infinite".into(),
            })
        }
    }
    let det_t = t.as_lattice().determinant().abs();
    let det_p = p.as_lattice().determinant().abs();
    let det_mc = m_check.as_lattice().determinant().abs();
    if det_p * &det_mc != det_t {
        return Err(Error::SplittingIndex {
            index: "determinant identity fails".into(),
        });
    }

    Ok(MirrorSplit {
        section_class: pair.e_prime.sub(&pair.e),
        pair: pair.clone(),
        p,
        m_check,
    })
}

fn embed_raw(pair: &AdmissiblePair, alpha: &LatticeVector) -> Result<LatticeVector> {
    let l = pair.t.ambient();
    let (q, r) = l.pairing(alpha, &pair.e_prime)?.div_rem(&pair.m);
    if !r.is_zero() {
        return Err(Error::Divisibility {
            which: "E'",
            divisibility: l.pairing(alpha, &pair.e_prime)?,
            m: pair.m.clone(),
        });
    }
    Ok(alpha.sub(&pair.e.scale(&q)))
}

impl MirrorSplit {
    pub fn pair(&self) -> &AdmissiblePair {
        &self.pair
    }

    pub fn t(&self) -> &Sublattice {
        &self.pair.t
    }

    pub fn e(&self) -> &LatticeVector {
        &self.pair.e
    }

    pub fn e_prime(&self) -> &LatticeVector {
        &self.pair.e_prime
    }

    pub fn m(&self) -> &BigInt {
        &self.pair.m
    }

    pub fn p(&self) -> &Sublattice {
        &self.p
    }

    pub fn m_check(&self) -> &Sublattice {
        &self.m_check
    }

    /// σ = E' − E.
    pub fn section_class(&self) -> &LatticeVector {
        &self.section_class
    }

    /// `i(α) = α − (α·E'/m)·E` for `α ∈ (ZE)⊥ ⊂ T`.
    pub fn embed(&self, alpha: &LatticeVector) -> Result<LatticeVector> {
        self.pair.t.coordinates(alpha)?;
        if !self
            .pair
            .t
            .ambient()
            .pairing(alpha, &self.pair.e)?
            .is_zero()
        {
            return Err(Error::Precondition("alpha is not orthogonal to E"));
        }
        embed_raw(&self.pair, alpha)
    }

    /// `(a, b)` with `proj_P(v) = a·E + b·E'`.
    pub fn p_coefficients(&self, v: &RationalVector) -> Result<(BigRational, BigRational)> {
        let l = self.pair.t.ambient();
        let m = BigRational::from_integer(self.pair.m.clone());
        let a = l.pairing_q(v, &self.pair.e_prime.to_rational())? / &m;
        let b = l.pairing_q(v, &self.pair.e.to_rational())? / &m;
        Ok((a, b))
    }

    /// Orthogonal projection of `v ∈ T ⊗ Q` onto `P ⊗ Q`.
    pub fn project_to_p(&self, v: &RationalVector) -> Result<RationalVector> {
        let (a, b) = self.p_coefficients(v)?;
        Ok(self
            .pair
            .e
            .to_rational()
            .scale(&a)
            .axpy(&b, &self.pair.e_prime.to_rational()))
    }

    /// Orthogonal projection of `v ∈ T ⊗ Q` onto `M̌ ⊗ Q`.
    pub fn project_to_m_check(&self, v: &RationalVector) -> Result<RationalVector> {
        Ok(v.sub(&self.project_to_p(v)?))
    }

    /// For m = 1: the split of `M̌⊥ = P ⊕ M` by the same pair, whose mirror
    /// lattice is `M` again.
    pub fn dual_split(&self) -> Result<MirrorSplit> {
        if !self.pair.m.is_one() {
            return Err(Error::RequiresUnimodularPlane(self.pair.m.clone()));
        }
        let t_dual = self.m_check.orthogonal_complement();
        let pair = check_admissible(&t_dual, &self.pair.e, &self.pair.e_prime, &self.pair.m)?;
        construct_mirror(&pair)
    }
}
