use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// `left · A · right = diag` with `left`, `right` unimodular and the diagonal
/// entries non-negative, each dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub left: IntMatrix,
    pub diag: IntMatrix,
    pub right: IntMatrix,
}

impl SmithDecomposition {
    /// Nonzero invariant factors d₁ | d₂ | ….
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.diag.rows().min(self.diag.cols());
        (0..n)
            .map(|i| self.diag[(i, i)].clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut left = IntMatrix::identity(m);
    let mut right = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        // pivot: smallest nonzero |entry| of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if d[(i, j)].is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        left.swap_rows(t, pi);
        d.swap_cols(t, pj);
        right.swap_cols(t, pj);

        loop {
            let mut swapped = false;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                left.add_row_multiple(i, t, &q);
                if !d[(i, t)].is_zero() {
                    d.swap_rows(t, i);
                    left.swap_rows(t, i);
                    swapped = true;
                }
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                right.add_col_multiple(j, t, &q);
                if !d[(t, j)].is_zero() {
                    d.swap_cols(t, j);
                    right.swap_cols(t, j);
                    swapped = true;
                }
            }
            if swapped {
                continue;
            }
            // row and column t are clear; enforce divisibility on the rest
            let offender =
                (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&d[(t, t)])));
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    d.add_row_multiple(t, i, &one);
                    left.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            left.negate_row(t);
        }
    }
    SmithDecomposition {
        left,
        diag: d,
        right,
    }
}

/// Basis (as rows) of the integer right kernel `{x ∈ Zⁿ | A·x = 0}`.
/// The kernel of an integer matrix is always saturated in Zⁿ.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let n = a.cols();
    let rows: Vec<Vec<BigInt>> = (r..n).map(|j| snf.right.column(j)).collect();
    IntMatrix::from_rows(&rows, n).expect("consistent width")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check(a: &IntMatrix, expected: &[i64]) {
        let s = smith_normal_form(a);
        assert_eq!(&(&s.left * a) * &s.right, s.diag);
        assert!(s.left.determinant().unwrap().abs().is_one());
        assert!(s.right.determinant().unwrap().abs().is_one());
        let f: Vec<BigInt> = expected.iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(s.invariant_factors(), f);
    }

    #[test]
    fn spec_examples() {
        check(&IntMatrix::from_i64(&[&[0, 1], &[1, 0]]), &[1, 1]);
        check(&IntMatrix::from_i64(&[&[0, 2], &[2, 0]]), &[2, 2]);
        check(&IntMatrix::from_i64(&[&[2, 0], &[0, 4]]), &[2, 4]);
    }

    #[test]
    fn divisibility_is_enforced() {
        // diag(2,3) has invariant factors (1,6)
        check(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]), &[1, 6]);
        check(&IntMatrix::from_i64(&[&[4, 6, 8], &[6, 9, 12]]), &[1]);
        check(&IntMatrix::from_i64(&[&[0, 0], &[0, 0]]), &[]);
    }

    #[test]
    fn kernel_of_pairing_row() {
        // x + 2y - z = 0
        let k = integer_kernel(&IntMatrix::from_i64(&[&[1, 2, -1]]));
        assert_eq!(k.rows(), 2);
        for row in k.iter_rows() {
            let s: BigInt = &row[0] + &row[1] * 2 - &row[2];
            assert!(s.is_zero());
        }
    }
}
