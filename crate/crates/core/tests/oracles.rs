//! Cross-checks against independent brute-force computations.

use k3mirror::catalog::{e8_minus, hyperbolic_plane, k3_lattice};
use k3mirror::census::{fiber_contribution, random_census, total_euler, Kodaira};
use k3mirror::involution::RealFiberType;
use k3mirror::lattice::{smith_normal_form, IntMatrix, IntegerLattice, LatticeVector, Sublattice};
use k3mirror::mirror_lattice::find_isotropic;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Characteristic polynomial coefficients `c_n = 1, c_{n-1}, …, c_0` by
/// Faddeev-LeVerrier.
fn char_poly(g: &IntMatrix) -> Vec<BigRational> {
    let n = g.rows();
    let a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from_integer(g[(i, j)].clone()))
                .collect()
        })
        .collect();
    let mul = |x: &Vec<Vec<BigRational>>, y: &Vec<Vec<BigRational>>| -> Vec<Vec<BigRational>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(BigRational::zero(), |acc, k| acc + &x[i][k] * &y[k][j]))
                    .collect()
            })
            .collect()
    };
    let mut coeffs = vec![BigRational::from_integer(1.into())];
    let mut m: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); n]; n];
    let mut c = BigRational::from_integer(1.into());
    for k in 1..=n {
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += &c;
        }
        let am = mul(&a, &m);
        let tr = (0..n).fold(BigRational::zero(), |acc, i| acc + &am[i][i]);
        c = -tr / BigRational::from_integer(BigInt::from(k));
        coeffs.push(c.clone());
        m = am;
    }
    coeffs
}

/// Positive and negative eigenvalue counts of a symmetric matrix from sign
/// changes of its real-rooted characteristic polynomial.
fn descartes_signature(g: &IntMatrix) -> (usize, usize) {
    let p = char_poly(g);
    let changes = |cs: Vec<BigRational>| {
        let signs: Vec<bool> = cs
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| c.is_positive())
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let pos = changes(p.clone());
    // p(-x): flip the sign of every odd-degree coefficient.
    let n = p.len() - 1;
    let neg = changes(
        p.iter()
            .enumerate()
            .map(|(i, c)| {
                if (n - i) % 2 == 1 {
                    -c.clone()
                } else {
                    c.clone()
                }
            })
            .collect(),
    );
    (pos, neg)
}

fn minors_gcd(a: &IntMatrix, k: usize) -> BigInt {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }
    let mut g = BigInt::zero();
    for rs in subsets(a.rows(), k) {
        for cs in subsets(a.cols(), k) {
            let rows: Vec<Vec<BigInt>> = rs
                .iter()
                .map(|&i| cs.iter().map(|&j| a[(i, j)].clone()).collect())
                .collect();
            g = g.gcd(
                &IntMatrix::from_rows(&rows, k)
                    .unwrap()
                    .determinant()
                    .unwrap(),
            );
        }
    }
    g
}

#[test]
fn catalog_signatures_match_characteristic_polynomials() {
    for (l, expect) in [
        (k3_lattice(), (3, 19)),
        (e8_minus(), (0, 8)),
        (hyperbolic_plane(3).unwrap(), (1, 1)),
    ] {
        assert_eq!(descartes_signature(l.gram()), expect);
        let i = l.inertia();
        assert_eq!((i.positive, i.negative), expect);
        // Constant term is (-1)^n det.
        let p = char_poly(l.gram());
        let n = l.rank();
        let det = if n % 2 == 0 {
            p[n].clone()
        } else {
            -p[n].clone()
        };
        assert_eq!(det, BigRational::from_integer(l.determinant()));
    }
}

#[test]
fn isotropic_search_matches_enumeration() {
    let l = hyperbolic_plane(1)
        .unwrap()
        .direct_sum(&IntegerLattice::diagonal(&[-2]));
    let t = Sublattice::full(&l);
    let h = 3i64;
    let mut brute = 0;
    for a in -h..=h {
        for b in -h..=h {
            for c in -h..=h {
                let v = LatticeVector::from_i64(&[a, b, c]);
                if v.is_zero()
                    || v.content() != BigInt::from(1)
                    || l.norm(&v).unwrap() != BigInt::zero()
                {
                    continue;
                }
                brute += 1;
            }
        }
    }
    let found = find_isotropic(&t, h as u32);
    assert_eq!(2 * found.len(), brute);
    for v in &found {
        assert!(l.norm(v).unwrap().is_zero());
    }
}

#[test]
fn census_totals_match_a_direct_tally() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let c = random_census(&mut rng, 8);
        let mut tally = 0i64;
        for r in &c.census().records {
            let w = match (r.kodaira, r.fixed, r.real) {
                (Kodaira::I1, true, Some(RealFiberType::FigureEight)) => -6,
                (Kodaira::I1, true, Some(RealFiberType::CirclePoint)) => 6,
                _ => 0,
            };
            assert_eq!(fiber_contribution(r), w);
            tally += w;
        }
        assert_eq!(total_euler(&c).unwrap(), tally);
        let euler: usize = c.census().records.iter().map(|r| r.kodaira.euler()).sum();
        assert_eq!(euler, 24);
    }
}

fn small_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..4, 1usize..4).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-9i64..10, r * c).prop_map(move |raw| {
            let rows: Vec<Vec<BigInt>> = (0..r)
                .map(|i| (0..c).map(|j| BigInt::from(raw[i * c + j])).collect())
                .collect();
            IntMatrix::from_rows(&rows, c).unwrap()
        })
    })
}

fn symmetric() -> impl Strategy<Value = IntMatrix> {
    (1usize..6).prop_flat_map(|n| {
        proptest::collection::vec(-5i64..6, n * n).prop_map(move |raw| {
            let mut g = IntMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..=i {
                    g[(i, j)] = BigInt::from(raw[i * n + j]);
                    g[(j, i)] = BigInt::from(raw[i * n + j]);
                }
            }
            g
        })
    })
}

proptest! {
    #[test]
    fn invariant_factors_are_ratios_of_determinantal_divisors(a in small_matrix()) {
        let f = smith_normal_form(&a).invariant_factors();
        let mut prev = BigInt::from(1);
        for k in 1..=a.rows().min(a.cols()) {
            let d = minors_gcd(&a, k);
            if d.is_zero() {
                prop_assert_eq!(f.len(), k - 1);
                break;
            }
            prop_assert_eq!(f[k - 1].abs(), &d / &prev);
            prev = d;
        }
    }

    #[test]
    fn inertia_matches_descartes(g in symmetric()) {
        let l = IntegerLattice::new(g.clone()).unwrap();
        let i = l.inertia();
        prop_assert_eq!((i.positive, i.negative), descartes_signature(&g));
    }

    #[test]
    fn divisibility_is_gcd_of_pairings(g in symmetric(), raw in proptest::collection::vec(-6i64..7, 5)) {
        let l = IntegerLattice::new(g).unwrap();
        let v = LatticeVector::from_i64(&raw[..l.rank()]);
        prop_assume!(!v.is_zero());
        let full = Sublattice::full(&l);
        let brute = (0..l.rank()).fold(BigInt::zero(), |acc, i| acc.gcd(&l.pairing(&v, &LatticeVector::unit(l.rank(), i)).unwrap()));
        let d = full.divisibility(&v);
        if brute.is_zero() {
            prop_assert!(d.is_err() || d.unwrap().is_zero());
        } else {
            prop_assert_eq!(d.unwrap(), brute);
        }
    }
}
