//! Singular fibers of the torus fibration of a Borcea-Voisin threefold over
//! `S³`, their Euler characteristic bookkeeping, and the polynomial model of
//! the base `(S² × S¹)/(z, v) ↦ (−z, −v)`.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::bv::{mirror_swap, BVData};
use crate::error::{Error, Result};
use crate::involution::{real_fiber_dual, RealFiberType};

/// Euler characteristic carried by a fixed nodal fiber, with the sign of its
/// real locus.
pub const NODAL_CONTRIBUTION: i64 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kodaira {
    I1,
    II,
}

impl Kodaira {
    pub fn as_str(self) -> &'static str {
        match self {
            Kodaira::I1 => "I1",
            Kodaira::II => "II",
        }
    }

    /// Euler number of the fiber; the 24-count weights each type by it.
    pub fn euler(self) -> usize {
        match self {
            Kodaira::I1 => 1,
            Kodaira::II => 2,
        }
    }
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kodaira {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "I1" => Ok(Kodaira::I1),
            "II" => Ok(Kodaira::II),
            _ => Err(Error::Parse(format!("unknown Kodaira type {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiberRecord {
    pub kodaira: Kodaira,
    pub fixed: bool,
    pub real: Option<RealFiberType>,
}

impl FiberRecord {
    pub fn fixed_i1(real: RealFiberType) -> Self {
        FiberRecord {
            kodaira: Kodaira::I1,
            fixed: true,
            real: Some(real),
        }
    }

    pub fn fixed_ii() -> Self {
        FiberRecord {
            kodaira: Kodaira::II,
            fixed: true,
            real: Some(RealFiberType::SingularCircle),
        }
    }

    pub fn free(kodaira: Kodaira) -> Self {
        FiberRecord {
            kodaira,
            fixed: false,
            real: None,
        }
    }

    fn violation(&self) -> Option<&'static str> {
        match (self.kodaira, self.fixed, self.real) {
            (_, false, None) => None,
            (_, false, Some(_)) => Some("non-fixed fiber has a real type"),
            (Kodaira::I1, true, Some(RealFiberType::FigureEight | RealFiberType::CirclePoint)) => {
                None
            }
            (Kodaira::I1, true, _) => Some("fixed I1 must be figure_eight or circle_point"),
            (Kodaira::II, true, Some(RealFiberType::SingularCircle)) => None,
            (Kodaira::II, true, _) => Some("fixed II must be singular_circle"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberCensus {
    pub bv: BVData,
    pub records: Vec<FiberRecord>,
}

impl FiberCensus {
    pub fn count(&self, pred: impl Fn(&FiberRecord) -> bool) -> usize {
        self.records.iter().filter(|r| pred(r)).count()
    }

    fn count_real(&self, t: RealFiberType) -> i64 {
        self.count(|r| r.fixed && r.kodaira == Kodaira::I1 && r.real == Some(t)) as i64
    }
}

/// A census that passed every check, with the excess `k` of each nodal real
/// type over its minimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidatedCensus {
    census: FiberCensus,
    k: i64,
}

impl ValidatedCensus {
    pub fn census(&self) -> &FiberCensus {
        &self.census
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn bv(&self) -> BVData {
        self.census.bv
    }
}

pub fn validate_census(c: FiberCensus) -> Result<ValidatedCensus> {
    let mut violations = Vec::new();
    for (i, r) in c.records.iter().enumerate() {
        if let Some(v) = r.violation() {
            violations.push(format!("record_type[{i}]: {v}"));
        }
    }
    let weighted: usize = c.records.iter().map(|r| r.kodaira.euler()).sum();
    if weighted != 24 {
        violations.push(format!(
            "fiber_count: #I1 + 2·#II = {weighted}, expected 24"
        ));
    }
    let free = c.count(|r| !r.fixed);
    if !free.is_multiple_of(2) {
        violations.push(format!(
            "conjugate_pairs: {free} non-fixed fibers, expected an even number"
        ));
    }
    let cp = c.count_real(RealFiberType::CirclePoint);
    let fe = c.count_real(RealFiberType::FigureEight);
    let k = cp - 2 * (c.bv.n() - 1);
    let k_prime = fe - 2 * (c.bv.n_prime() - 1);
    if k != k_prime {
        violations.push(format!(
            "equal_excess: circle_point excess {k} differs from figure_eight excess {k_prime}"
        ));
    } else if k < 0 {
        violations.push(format!("excess_nonnegative: k = {k}"));
    }
    if violations.is_empty() {
        Ok(ValidatedCensus { census: c, k })
    } else {
        Err(Error::CensusViolations(violations))
    }
}

pub fn fiber_contribution(r: &FiberRecord) -> i64 {
    match (r.kodaira, r.fixed, r.real) {
        (Kodaira::I1, true, Some(RealFiberType::FigureEight)) => -NODAL_CONTRIBUTION,
        (Kodaira::I1, true, Some(RealFiberType::CirclePoint)) => NODAL_CONTRIBUTION,
        _ => 0,
    }
}

/// Sum of local contributions, checked against `12(N − N')`.
pub fn total_euler(c: &ValidatedCensus) -> Result<i64> {
    let total: i64 = c.census.records.iter().map(fiber_contribution).sum();
    let expected = crate::bv::euler_characteristic(&c.census.bv);
    if total != expected {
        return Err(Error::EulerMismatch {
            expected,
            found: total,
        });
    }
    Ok(total)
}

pub fn dualize_census(c: &ValidatedCensus) -> Result<ValidatedCensus> {
    let bv = mirror_swap(&c.census.bv)?;
    let records = c
        .census
        .records
        .iter()
        .map(|r| match r.real {
            Some(t) => Ok(FiberRecord {
                real: Some(real_fiber_dual(t)?),
                ..*r
            }),
            None => Ok(*r),
        })
        .collect::<Result<Vec<_>>>()?;
    validate_census(FiberCensus { bv, records })
}

/// Builds a census from counts; fibers are listed fixed I1, fixed II, then
/// free I1 and free II.
pub fn census_from_counts(
    bv: BVData,
    k: i64,
    fixed_ii: usize,
    free_ii: usize,
) -> Result<ValidatedCensus> {
    let cp = 2 * (bv.n() - 1) + k;
    let fe = 2 * (bv.n_prime() - 1) + k;
    if cp < 0 || fe < 0 {
        return Err(Error::CensusViolations(vec![format!(
            "excess_nonnegative: k = {k}"
        )]));
    }
    let fixed_i1 = (cp + fe) as usize;
    let ii = fixed_ii + free_ii;
    let free_i1 = (24usize).checked_sub(2 * ii + fixed_i1).ok_or_else(|| {
        Error::CensusViolations(vec!["fiber_count: too many fixed fibers".to_string()])
    })?;
    let mut records = Vec::with_capacity(24);
    records.extend(std::iter::repeat_n(
        FiberRecord::fixed_i1(RealFiberType::CirclePoint),
        cp as usize,
    ));
    records.extend(std::iter::repeat_n(
        FiberRecord::fixed_i1(RealFiberType::FigureEight),
        fe as usize,
    ));
    records.extend(std::iter::repeat_n(FiberRecord::fixed_ii(), fixed_ii));
    records.extend(std::iter::repeat_n(FiberRecord::free(Kodaira::I1), free_i1));
    records.extend(std::iter::repeat_n(FiberRecord::free(Kodaira::II), free_ii));
    validate_census(FiberCensus { bv, records })
}

/// A random valid census with `N, N' ∈ [1, max_n]`, in shuffled order.
pub fn random_census<R: Rng + ?Sized>(rng: &mut R, max_n: i64) -> ValidatedCensus {
    loop {
        let n = rng.gen_range(1..=max_n);
        let np = rng.gen_range(1..=max_n);
        let ii: i64 = rng.gen_range(0..=12);
        // fixed I1 fibers number 2(N + N' − 2 + k) out of 24 − 2·#II
        let k_max = 12 - ii - (n + np - 2);
        if k_max < 0 {
            continue;
        }
        let k = rng.gen_range(0..=k_max);
        // fixed II count has the parity of #II so the free count is even
        let fixed_ii = ii % 2 + 2 * rng.gen_range(0..=ii / 2);
        let bv = BVData::new(n, np).expect("positive data");
        let mut c = census_from_counts(bv, k, fixed_ii as usize, (ii - fixed_ii) as usize)
            .expect("counts chosen feasible");
        c.census.records.shuffle(rng);
        return c;
    }
}

/// A rational point of `S² × S¹`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasePoint {
    pub x: BigRational,
    pub y: BigRational,
    pub z: BigRational,
    pub u: BigRational,
    pub v: BigRational,
}

impl BasePoint {
    pub fn new(
        x: BigRational,
        y: BigRational,
        z: BigRational,
        u: BigRational,
        v: BigRational,
    ) -> Result<Self> {
        let one = BigRational::one();
        if &x * &x + &y * &y + &z * &z != one || &u * &u + &v * &v != one {
            return Err(Error::NotOnBase);
        }
        Ok(BasePoint { x, y, z, u, v })
    }

    /// Inverse stereographic projections from `(a, b) ∈ Q²` to `S²` and from
    /// `t ∈ Q` to `S¹`.
    pub fn from_parameters(a: &BigRational, b: &BigRational, t: &BigRational) -> Self {
        let one = BigRational::one();
        let s = a * a + b * b;
        let d = &one + &s;
        let two = &one + &one;
        let dt = &one + t * t;
        BasePoint {
            x: &two * a / &d,
            y: &two * b / &d,
            z: (&s - &one) / &d,
            u: (&one - t * t) / &dt,
            v: &two * t / &dt,
        }
    }

    /// `(x, y, z, u, v) ↦ (x, y, −z, u, −v)`.
    pub fn involution(&self) -> BasePoint {
        BasePoint {
            z: -self.z.clone(),
            v: -self.v.clone(),
            ..self.clone()
        }
    }
}

/// Invariant polynomials `(X, Y, Z, U, V, W) = (x, y, z², u, v², zv)`.
pub fn base_embed(p: &BasePoint) -> Result<[BigRational; 6]> {
    let one = BigRational::one();
    if &p.x * &p.x + &p.y * &p.y + &p.z * &p.z != one || &p.u * &p.u + &p.v * &p.v != one {
        return Err(Error::NotOnBase);
    }
    Ok([
        p.x.clone(),
        p.y.clone(),
        &p.z * &p.z,
        p.u.clone(),
        &p.v * &p.v,
        &p.z * &p.v,
    ])
}

/// `X² + Y² + Z = 1`, `U² + V = 1`, `W² = ZV`, `Z ≥ 0`, `V ≥ 0`.
pub fn on_embedded_base(q: &[BigRational; 6]) -> bool {
    let [x, y, z, u, v, w] = q;
    let one = BigRational::one();
    x * x + y * y + z == one
        && u * u + v == one
        && w * w == z * v
        && !z.is_negative()
        && !v.is_negative()
}

impl ValidatedCensus {
    /// Number of fixed type II fibers.
    pub fn fixed_ii(&self) -> usize {
        self.census.count(|r| r.fixed && r.kodaira == Kodaira::II)
    }
}
