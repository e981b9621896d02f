//! The table of holomorphic 2-forms and Kähler forms in the complex
//! structures I, J, K of a hyperkähler metric, and phase rotation of Ω.
//!
//! ```text
//! I:  ReΩ + i·ImΩ   ω
//! J:  ω + i·ReΩ     ImΩ
//! K:  ImΩ + i·ω     ReΩ
//! ```

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{IntegerLattice, RationalVector, Sublattice};
use crate::period::{in_period_domain, PeriodVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComplexStructure {
    I,
    J,
    K,
}

impl ComplexStructure {
    pub fn label(self) -> &'static str {
        match self {
            ComplexStructure::I => "I",
            ComplexStructure::J => "J",
            ComplexStructure::K => "K",
        }
    }
}

/// A holomorphic 2-form given by its real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoForm {
    pub re: RationalVector,
    pub im: RationalVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationRow {
    pub structure: ComplexStructure,
    pub holomorphic: TwoForm,
    pub kahler: RationalVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationTable {
    pub rows: [RotationRow; 3],
}

impl RotationTable {
    pub fn row(&self, s: ComplexStructure) -> &RotationRow {
        &self.rows[s as usize]
    }
}

/// Checks `(ReΩ)² = (ImΩ)² = ω² > 0` and mutual orthogonality, naming the
/// first identity that fails.
pub fn check_normalization(
    l: &IntegerLattice,
    omega: &TwoForm,
    kahler: &RationalVector,
) -> Result<()> {
    let rr = l.norm_q(&omega.re)?;
    let ii = l.norm_q(&omega.im)?;
    let ww = l.norm_q(kahler)?;
    if rr != ww {
        return Err(Error::Normalization("(ReΩ)²=ω²"));
    }
    if ii != ww {
        return Err(Error::Normalization("(ImΩ)²=ω²"));
    }
    if !ww.is_positive() {
        return Err(Error::Normalization("ω²>0"));
    }
    if !l.pairing_q(&omega.re, &omega.im)?.is_zero() {
        return Err(Error::Normalization("ReΩ.ImΩ=0"));
    }
    if !l.pairing_q(&omega.re, kahler)?.is_zero() {
        return Err(Error::Normalization("ReΩ.ω=0"));
    }
    if !l.pairing_q(&omega.im, kahler)?.is_zero() {
        return Err(Error::Normalization("ImΩ.ω=0"));
    }
    Ok(())
}

pub fn rotation_table(
    omega: &TwoForm,
    kahler: &RationalVector,
    l: &IntegerLattice,
) -> Result<RotationTable> {
    check_normalization(l, omega, kahler)?;
    let row =
        |structure, re: &RationalVector, im: &RationalVector, k: &RationalVector| RotationRow {
            structure,
            holomorphic: TwoForm {
                re: re.clone(),
                im: im.clone(),
            },
            kahler: k.clone(),
        };
    let table = RotationTable {
        rows: [
            row(ComplexStructure::I, &omega.re, &omega.im, kahler),
            row(ComplexStructure::J, kahler, &omega.re, &omega.im),
            row(ComplexStructure::K, &omega.im, kahler, &omega.re),
        ],
    };
    let full = Sublattice::full(l);
    for r in &table.rows {
        let p = PeriodVector::new(
            full.clone(),
            r.holomorphic.re.clone(),
            r.holomorphic.im.clone(),
        )?;
        debug_assert!(in_period_domain(&p));
    }
    Ok(table)
}

/// `e^{iθ} = c + i·s` with rational `c² + s² = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnitPhase {
    c: BigRational,
    s: BigRational,
}

impl UnitPhase {
    pub fn new(c: BigRational, s: BigRational) -> Result<Self> {
        let n = &c * &c + &s * &s;
        if !n.is_one() {
            return Err(Error::NotUnitPhase(n.to_string()));
        }
        Ok(UnitPhase { c, s })
    }

    /// Rational point of the circle from the stereographic parameter `t`:
    /// `((1 − t²)/(1 + t²), 2t/(1 + t²))`.
    pub fn from_parameter(t: &BigRational) -> Self {
        let one = BigRational::one();
        let d = &one + t * t;
        UnitPhase {
            c: (&one - t * t) / &d,
            s: (t + t) / d,
        }
    }

    pub fn identity() -> Self {
        UnitPhase {
            c: BigRational::one(),
            s: BigRational::zero(),
        }
    }

    pub fn c(&self) -> &BigRational {
        &self.c
    }

    pub fn s(&self) -> &BigRational {
        &self.s
    }

    /// Product of phases.
    pub fn compose(&self, other: &UnitPhase) -> UnitPhase {
        UnitPhase {
            c: &self.c * &other.c - &self.s * &other.s,
            s: &self.s * &other.c + &self.c * &other.s,
        }
    }
}

/// `e^{iθ}·Ω`: `re' = c·re − s·im`, `im' = s·re + c·im`.
pub fn phase_rotate(omega: &TwoForm, theta: &UnitPhase) -> TwoForm {
    TwoForm {
        re: omega.re.scale(&theta.c).axpy(&-theta.s.clone(), &omega.im),
        im: omega.re.scale(&theta.s).axpy(&theta.c, &omega.im),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::hyperbolic_plane;

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

    fn u3() -> IntegerLattice {
        let u = hyperbolic_plane(1).unwrap();
        u.direct_sum(&u).direct_sum(&u)
    }

    fn standard() -> (TwoForm, RationalVector) {
        (
            TwoForm {
                re: q(&[1, 1, 0, 0, 0, 0]),
                im: q(&[0, 0, 1, 1, 0, 0]),
            },
            q(&[0, 0, 0, 0, 1, 1]),
        )
    }

    #[test]
    fn table_rows() {
        let (omega, w) = standard();
        let t = rotation_table(&omega, &w, &u3()).unwrap();
        let k = t.row(ComplexStructure::K);
        assert_eq!(k.holomorphic.re, q(&[0, 0, 1, 1, 0, 0]));
        assert_eq!(k.holomorphic.im, q(&[0, 0, 0, 0, 1, 1]));
        assert_eq!(k.kahler, q(&[1, 1, 0, 0, 0, 0]));
        let i = t.row(ComplexStructure::I);
        assert_eq!(i.holomorphic, omega);
        assert_eq!(i.kahler, w);
        let full = Sublattice::full(&u3());
        for row in &t.rows {
            let p = PeriodVector::new(
                full.clone(),
                row.holomorphic.re.clone(),
                row.holomorphic.im.clone(),
            )
            .unwrap();
            assert!(in_period_domain(&p), "{}", row.structure.label());
        }
    }

    #[test]
    fn table_rejects_unnormalized_input() {
        let (omega, _) = standard();
        // ω = e3 + 2 f3 has ω² = 4 while (ReΩ)² = 2
        let w = q(&[0, 0, 0, 0, 1, 2]);
        assert_eq!(
            rotation_table(&omega, &w, &u3()),
            Err(Error::Normalization("(ReΩ)²=ω²"))
        );
        let skew = TwoForm {
            re: q(&[1, 1, 0, 0, 0, 0]),
            im: q(&[1, 1, 0, 0, 0, 0]),
        };
        assert_eq!(
            rotation_table(&skew, &q(&[0, 0, 0, 0, 1, 1]), &u3()),
            Err(Error::Normalization("ReΩ.ImΩ=0"))
        );
    }

    #[test]
    fn k_row_of_cycled_triple_is_j_row() {
        let (omega, w) = standard();
        let t = rotation_table(&omega, &w, &u3()).unwrap();
        let cycled = TwoForm {
            re: omega.im.clone(),
            im: w.clone(),
        };
        let t2 = rotation_table(&cycled, &omega.re, &u3()).unwrap();
        assert_eq!(
            t2.row(ComplexStructure::K),
            &RotationRow {
                structure: ComplexStructure::K,
                ..t.row(ComplexStructure::J).clone()
            }
        );
    }

    #[test]
    fn phase_examples() {
        let (omega, _) = standard();
        assert_eq!(phase_rotate(&omega, &UnitPhase::identity()), omega);
        let quarter = UnitPhase::new(r(0, 1), r(1, 1)).unwrap();
        let rotated = phase_rotate(&omega, &quarter);
        assert_eq!(rotated.re, omega.im.neg());
        assert_eq!(rotated.im, omega.re);
        let pyth = UnitPhase::new(r(3, 5), r(4, 5)).unwrap();
        let rotated = phase_rotate(&omega, &pyth);
        assert_eq!(
            rotated.re,
            omega.re.scale(&r(3, 5)).axpy(&r(-4, 5), &omega.im)
        );
        let l = u3();
        assert_eq!(
            l.norm_q(&rotated.re).unwrap(),
            l.norm_q(&rotated.im).unwrap()
        );
        assert!(l.pairing_q(&rotated.re, &rotated.im).unwrap().is_zero());
        assert!(matches!(
            UnitPhase::new(r(1, 1), r(1, 1)),
            Err(Error::NotUnitPhase(_))
        ));
    }

    #[test]
    fn phases_compose_as_a_group_action() {
        let (omega, _) = standard();
        for (a, b) in [(r(1, 2), r(3, 1)), (r(-2, 7), r(5, 3)), (r(0, 1), r(1, 1))] {
            let p1 = UnitPhase::from_parameter(&a);
            let p2 = UnitPhase::from_parameter(&b);
            assert!(UnitPhase::new(p1.c().clone(), p1.s().clone()).is_ok());
            let lhs = phase_rotate(&phase_rotate(&omega, &p1), &p2);
            let rhs = phase_rotate(&omega, &p1.compose(&p2));
            assert_eq!(lhs, rhs);
        }
    }
}
