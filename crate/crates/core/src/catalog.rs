//! Named lattices: the hyperbolic plane U(m), the negative-definite E8, and
//! the K3 lattice U ⊕ U ⊕ U ⊕ E8(−1) ⊕ E8(−1).
//!
//! K3 basis indexing: the three hyperbolic planes occupy coordinates
//! (0,1), (2,3), (4,5); the two E8(−1) summands occupy 6..14 and 14..22.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::lattice::{IntMatrix, IntegerLattice};

pub const K3_RANK: usize = 22;

/// Coordinate ranges of the K3 summands.
pub const K3_U1: std::ops::Range<usize> = 0..2;
pub const K3_U2: std::ops::Range<usize> = 2..4;
pub const K3_U3: std::ops::Range<usize> = 4..6;
pub const K3_E8_A: std::ops::Range<usize> = 6..14;
pub const K3_E8_B: std::ops::Range<usize> = 14..22;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CatalogName {
    U(u64),
    E8Minus,
    K3,
}

impl CatalogName {
    pub fn lattice(&self) -> Result<IntegerLattice> {
        match self {
            CatalogName::U(m) => hyperbolic_plane(*m as i64),
            CatalogName::E8Minus => Ok(e8_minus()),
            CatalogName::K3 => Ok(k3_lattice()),
        }
    }
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogName::U(m) => write!(f, "U:{m}"),
            CatalogName::E8Minus => write!(f, "E8-"),
            CatalogName::K3 => write!(f, "K3"),
        }
    }
}

impl FromStr for CatalogName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "K3" => Ok(CatalogName::K3),
            "E8-" => Ok(CatalogName::E8Minus),
            other => {
                let m = other
                    .strip_prefix("U:")
                    .ok_or_else(|| Error::Parse(format!("unknown catalog name {other:?}")))?;
                let m: i64 = m
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad twist in {other:?}")))?;
                if m < 1 {
                    return Err(Error::NonPositiveTwist(BigInt::from(m)));
                }
                Ok(CatalogName::U(m as u64))
            }
        }
    }
}

/// U(m): Gram [[0, m], [m, 0]].
pub fn hyperbolic_plane(m: i64) -> Result<IntegerLattice> {
    if m < 1 {
        return Err(Error::NonPositiveTwist(BigInt::from(m)));
    }
    IntegerLattice::from_i64(&[&[0, m], &[m, 0]])
}

/// Edges of the E8 Dynkin diagram: a chain 0–…–6 with node 7 attached to 4.
const E8_EDGES: [(usize, usize); 7] = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];

/// Negated E8 Cartan matrix: −2 on the diagonal, +1 on Dynkin edges.
pub fn e8_minus() -> IntegerLattice {
    let mut g = IntMatrix::zeros(8, 8);
    for i in 0..8 {
        g[(i, i)] = BigInt::from(-2);
    }
    for &(a, b) in &E8_EDGES {
        g[(a, b)] = BigInt::from(1);
        g[(b, a)] = BigInt::from(1);
    }
    IntegerLattice::new(g).expect("symmetric by construction")
}

pub fn k3_lattice() -> IntegerLattice {
    let u = hyperbolic_plane(1).expect("m = 1");
    let e8 = e8_minus();
    u.direct_sum(&u)
        .direct_sum(&u)
        .direct_sum(&e8)
        .direct_sum(&e8)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn hyperbolic_plane_examples() {
        assert_eq!(
            hyperbolic_plane(1).unwrap().gram(),
            &IntMatrix::from_i64(&[&[0, 1], &[1, 0]])
        );
        assert_eq!(
            hyperbolic_plane(2).unwrap().gram(),
            &IntMatrix::from_i64(&[&[0, 2], &[2, 0]])
        );
        assert_eq!(
            hyperbolic_plane(0),
            Err(Error::NonPositiveTwist(BigInt::from(0)))
        );
        assert_eq!(
            hyperbolic_plane(-3),
            Err(Error::NonPositiveTwist(BigInt::from(-3)))
        );
        for m in 1..=50 {
            let u = hyperbolic_plane(m).unwrap();
            assert!(u.is_even());
            let (det, s) = u.det_and_signature();
            assert_eq!(det, BigInt::from(-m * m));
            assert_eq!((s.positive, s.negative, s.zero), (1, 1, 0));
        }
    }

    #[test]
    fn e8_minus_examples() {
        let e8 = e8_minus();
        assert_eq!(e8.rank(), 8);
        assert!(e8.is_even());
        let (det, s) = e8.det_and_signature();
        assert_eq!(det, BigInt::one());
        assert_eq!((s.positive, s.negative), (0, 8));
        assert!((0..8).all(|i| e8.gram()[(i, i)] == BigInt::from(-2)));
        // unimodular: all invariant factors are 1
        let snf = crate::lattice::smith_normal_form(e8.gram());
        assert_eq!(snf.invariant_factors(), vec![BigInt::one(); 8]);
    }

    #[test]
    fn k3_examples() {
        let l = k3_lattice();
        assert_eq!(l.rank(), K3_RANK);
        let (det, s) = l.det_and_signature();
        assert_eq!((s.positive, s.negative, s.zero), (3, 19, 0));
        assert!(l.is_even());
        assert_eq!(det, BigInt::from(-1));
    }

    #[test]
    fn catalog_names_parse() {
        assert_eq!("K3".parse::<CatalogName>().unwrap(), CatalogName::K3);
        assert_eq!("E8-".parse::<CatalogName>().unwrap(), CatalogName::E8Minus);
        assert_eq!("U:3".parse::<CatalogName>().unwrap(), CatalogName::U(3));
        assert!("U:0".parse::<CatalogName>().is_err());
        assert!("D4".parse::<CatalogName>().is_err());
        assert_eq!(
            CatalogName::U(2).lattice().unwrap(),
            hyperbolic_plane(2).unwrap()
        );
    }
}
