//! Hodge numbers and Euler characteristic of Borcea-Voisin threefolds
//! `X = resolution of (S × A)/(ι, −1)`, and the exchange `N ↔ N'` under
//! mirror symmetry.

use crate::error::{Error, Result};

/// `N` fixed curves of `ι`, the non-rational one of genus `N'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BVData {
    n: i64,
    n_prime: i64,
}

impl BVData {
    pub fn new(n: i64, n_prime: i64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidBvData("N must be at least 1"));
        }
        if n_prime < 0 {
            return Err(Error::InvalidBvData("N' must be non-negative"));
        }
        Ok(BVData { n, n_prime })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn n_prime(&self) -> i64 {
        self.n_prime
    }
}

/// Fixed locus of the involution on the K3 surface. The first two cases are
/// self-mirror and carry no `(N, N')`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FixedLocus {
    Empty,
    TwoEllipticCurves,
    Curves(BVData),
}

impl FixedLocus {
    pub fn data(&self) -> Result<BVData> {
        match self {
            FixedLocus::Curves(d) => Ok(*d),
            FixedLocus::Empty | FixedLocus::TwoEllipticCurves => Err(Error::SelfMirrorCase),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HodgePair {
    pub h11: i64,
    pub h21: i64,
}

/// `(11 + 5N − N', 11 + 5N' − N)`.
pub fn hodge_numbers(d: &BVData) -> Result<HodgePair> {
    let h11 = 11 + 5 * d.n - d.n_prime;
    let h21 = 11 + 5 * d.n_prime - d.n;
    if h11 <= 0 {
        return Err(Error::NonPositiveHodge {
            name: "h11",
            value: h11,
        });
    }
    if h21 <= 0 {
        return Err(Error::NonPositiveHodge {
            name: "h21",
            value: h21,
        });
    }
    Ok(HodgePair { h11, h21 })
}

/// `12(N − N')`.
pub fn euler_characteristic(d: &BVData) -> i64 {
    12 * (d.n - d.n_prime)
}

pub fn mirror_swap(d: &BVData) -> Result<BVData> {
    if d.n_prime == 0 {
        return Err(Error::NoMirrorFamily);
    }
    BVData::new(d.n_prime, d.n)
}
