use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact complex rational `re + i·im`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ComplexRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl ComplexRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        ComplexRational { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        ComplexRational {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::real(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::real(BigRational::one())
    }

    pub fn i() -> Self {
        ComplexRational {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ComplexRational {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `|z|²`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// `1/z = z̄ / |z|²`.
    pub fn recip(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(Error::Singular);
        }
        Ok(ComplexRational {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.recip()?)
    }
}

impl Add for &ComplexRational {
    type Output = ComplexRational;
    fn add(self, o: &ComplexRational) -> ComplexRational {
        ComplexRational {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
}

impl Sub for &ComplexRational {
    type Output = ComplexRational;
    fn sub(self, o: &ComplexRational) -> ComplexRational {
        ComplexRational {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
}

impl Mul for &ComplexRational {
    type Output = ComplexRational;
    fn mul(self, o: &ComplexRational) -> ComplexRational {
        ComplexRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Neg for &ComplexRational {
    type Output = ComplexRational;
    fn neg(self) -> ComplexRational {
        ComplexRational {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl fmt::Display for ComplexRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re, self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(a: i64, b: i64) -> ComplexRational {
        ComplexRational::new(
            BigRational::from_integer(a.into()),
            BigRational::from_integer(b.into()),
        )
    }

    #[test]
    fn division_via_conjugate() {
        let z = c(3, 4);
        let w = c(1, -2);
        let q = z.div(&w).unwrap();
        assert_eq!(&q * &w, z);
        assert_eq!(&z * &z.recip().unwrap(), ComplexRational::one());
        assert_eq!(ComplexRational::zero().recip(), Err(Error::Singular));
        assert_eq!(&ComplexRational::i() * &ComplexRational::i(), c(-1, 0));
    }
}
