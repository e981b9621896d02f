//! Exact property checks over seeded random samples, one per acceptance
//! criterion. Every check recomputes the identities it asserts from raw
//! pairings rather than trusting the predicate helpers of the library.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bv::{euler_characteristic, hodge_numbers, mirror_swap, BVData};
use crate::catalog::{k3_lattice, K3_E8_A, K3_U1, K3_U2};
use crate::census::{base_embed, dualize_census, random_census, total_euler, BasePoint};
use crate::involution::{
    anti_symplectic_seed, block_involution, invariant_sublattices, mirror_involution,
    transpose_defect, transvection, SymplecticSpace,
};
use crate::lattice::{IntMatrix, IntegerLattice, LatticeVector, RationalVector, Sublattice};
use crate::leray::{
    bv_table, check_degeneration, elliptic_betti, elliptic_table, k3_betti, k3_table, y_betti,
    BasisLabel, BvMirror, CircleClass, Filtration,
};
use crate::mirror_lattice::{check_admissible, construct_mirror, MirrorSplit};
use crate::mirror_map::{phi, phi_inverse};
use crate::period::{in_primed, PrimedQuery, TubePoint};

pub const DEFAULT_SEED: u64 = 0x6b33_6d69_7272_6f72;

/// Wall-clock budget for a single check.
pub const TIME_LIMIT: Duration = Duration::from_secs(5);

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl CheckResult {
    pub fn within_budget(&self) -> bool {
        self.elapsed < TIME_LIMIT
    }
}

type Outcome = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn lift<T>(r: crate::Result<T>, what: &str) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

type CheckFn = fn(&mut ChaCha8Rng) -> Outcome;

pub const CHECKS: [(&str, CheckFn); 11] = [
    ("K3 lattice certificate", k3_certificate),
    ("mirror lattice splitting", mirror_splitting),
    ("mirror map identities", mirror_map_identities),
    ("primed slice correspondence", primed_slice),
    ("mirror involution", mirror_involution_check),
    ("anti-symplectic transpose identity", transpose_identity),
    ("Borcea-Voisin duality", bv_duality),
    ("census accounting", census_accounting),
    ("Leray degeneration", leray_degeneration),
    ("Borcea-Voisin mirror period", bv_period),
    ("base embedding model", base_model),
];

/// Runs check `id` (1-based) with a generator seeded from `seed` and `id`.
pub fn run_check(id: usize, seed: u64) -> CheckResult {
    let (name, f) = CHECKS[id - 1];
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (id as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let start = Instant::now();
    let outcome = f(&mut rng);
    let elapsed = start.elapsed();
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CheckResult {
        id,
        name,
        passed,
        detail,
        elapsed,
    }
}

pub fn run_all(seed: u64) -> Vec<CheckResult> {
    (1..=CHECKS.len()).map(|id| run_check(id, seed)).collect()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn random_rational<R: Rng>(rng: &mut R, bound: i64) -> BigRational {
    q(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound))
}

fn block(l: &IntegerLattice, ranges: &[std::ops::Range<usize>]) -> Sublattice {
    let vs: Vec<LatticeVector> = ranges
        .iter()
        .flat_map(|r| r.clone())
        .map(|i| LatticeVector::unit(l.rank(), i))
        .collect();
    Sublattice::from_vectors(l, &vs).expect("coordinate block")
}

/// `M` spanned by coordinate blocks of the K3 lattice, `T = M⊥`, and the
/// admissible pair `(e₂, f₂)` with `m = 1`.
fn k3_split(m_blocks: &[std::ops::Range<usize>]) -> crate::Result<(Sublattice, MirrorSplit)> {
    let l = k3_lattice();
    let m = block(&l, m_blocks);
    let t = m.orthogonal_complement();
    let pair = check_admissible(
        &t,
        &LatticeVector::unit(22, K3_U2.start),
        &LatticeVector::unit(22, K3_U2.start + 1),
        &BigInt::one(),
    )?;
    Ok((m, construct_mirror(&pair)?))
}

fn k3_certificate(_: &mut ChaCha8Rng) -> Outcome {
    let l = k3_lattice();
    let (det, inertia) = l.det_and_signature();
    ensure!(l.is_even(), "not even");
    ensure!(det.abs().is_one(), "det = {det}");
    ensure!(
        (inertia.positive, inertia.negative, inertia.zero) == (3, 19, 0),
        "signature {inertia:?}"
    );
    Ok(format!("rank 22, even, det {det}, signature (3,19)"))
}

fn mirror_splitting(_: &mut ChaCha8Rng) -> Outcome {
    let (m, split) = lift(k3_split(&[K3_U1]), "construct")?;
    let mc = split.m_check();
    ensure!(mc.rank() == 18, "rank M̌ = {}", mc.rank());
    let det_t = lift(split.t().gram().determinant(), "det T")?;
    let det_mc = lift(mc.gram().determinant(), "det M̌")?;
    ensure!(
        det_t.abs() == det_mc.abs(),
        "|det T| = {det_t}, |det M̌| = {det_mc}"
    );
    let sum = lift(split.p().sum(mc), "P + M̌")?;
    let index = lift(sum.index_in(split.t()), "index")?;
    ensure!(
        index == Some(BigInt::one()),
        "index of P ⊕ M̌ in T is {index:?}"
    );
    let dual = lift(split.dual_split(), "double mirror")?;
    ensure!(dual.m_check().same_submodule(&m), "double mirror is not M");
    ensure!(
        dual.m_check().canonical().gram() == m.canonical().gram(),
        "double mirror Gram differs"
    );
    Ok(format!(
        "rank M̌ 18, |det| {det_t}, index 1, double mirror Gram = Gram(M)"
    ))
}

/// Basis positions of the third hyperbolic plane inside `M̌ = U ⊕ E8(−1)²`.
const U_IN_M_CHECK: (usize, usize) = (0, 1);

fn ambient_of(mc: &Sublattice, coords: &[BigRational]) -> RationalVector {
    mc.combine_q(coords)
}

/// Random `B + iω` over `lattice` with basis coefficients whose numerators
/// and denominators are bounded by `bound`, resampled until `ω² > 0`. The
/// basis vectors `hyp.0, hyp.1` span a hyperbolic plane and get coefficients
/// of equal sign; the rest of `ω` is sparse.
fn random_tube_point<R: Rng>(
    rng: &mut R,
    lattice: &Sublattice,
    hyp: (usize, usize),
    bound: i64,
    b_zero: bool,
) -> TubePoint {
    let l = lattice.ambient();
    let n = lattice.rank();
    loop {
        let b: Vec<BigRational> = (0..n)
            .map(|_| {
                if b_zero {
                    BigRational::zero()
                } else {
                    random_rational(rng, bound)
                }
            })
            .collect();
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        let w: Vec<BigRational> = (0..n)
            .map(|i| {
                if i == hyp.0 || i == hyp.1 {
                    q(sign * rng.gen_range(1..=bound), rng.gen_range(1..=bound))
                } else if rng.gen_bool(0.3) {
                    random_rational(rng, bound)
                } else {
                    BigRational::zero()
                }
            })
            .collect();
        let (bv, wv) = (ambient_of(lattice, &b), ambient_of(lattice, &w));
        if l.norm_q(&wv).expect("shape").is_positive() {
            return TubePoint::new(lattice.clone(), bv, wv).expect("in span");
        }
    }
}

fn mirror_map_identities(rng: &mut ChaCha8Rng) -> Outcome {
    let (_, split) = lift(k3_split(&[K3_U1]), "construct")?;
    let l = split.t().ambient().clone();
    let two = q(2, 1);
    let samples = 100;
    for i in 0..samples {
        let p = random_tube_point(rng, split.m_check(), U_IN_M_CHECK, 10, false);
        let omega = lift(phi(&split, &p), "phi")?;
        let (re, im) = (omega.re(), omega.im());
        let rr = l.norm_q(re).unwrap();
        let ii = l.norm_q(im).unwrap();
        let ri = l.pairing_q(re, im).unwrap();
        ensure!(rr == ii && ri.is_zero(), "sample {i}: Ω·Ω ≠ 0");
        let w2 = l.norm_q(p.omega()).unwrap();
        ensure!(rr + ii == &two * &w2, "sample {i}: Ω·Ω̄ ≠ 2ω²");
        let back = lift(phi_inverse(&split, &omega), "phi inverse")?;
        ensure!(back == p, "sample {i}: round trip failed");
    }
    Ok(format!("{samples} points: Ω·Ω = 0, Ω·Ω̄ = 2ω², φ⁻¹∘φ = id"))
}

fn primed_slice(rng: &mut ChaCha8Rng) -> Outcome {
    let (_, split) = lift(k3_split(&[K3_U1]), "construct")?;
    let l = split.t().ambient().clone();
    let mc = split.m_check().clone();
    let samples = 100;
    let mut on_slice = 0;
    for i in 0..samples {
        let mut p = random_tube_point(rng, &mc, U_IN_M_CHECK, 10, i % 10 == 0);
        match i % 4 {
            // project B onto ω⊥, landing exactly on the slice
            1 => {
                let c = p.b_dot_omega() / p.omega_sq();
                let b = p.b().axpy(&-c, p.omega());
                p = TubePoint::new(mc.clone(), b, p.omega().clone()).unwrap();
            }
            // move just off the slice
            2 => {
                let c = p.b_dot_omega() / p.omega_sq();
                let b = p.b().axpy(&(q(1, 1_000_003) - c), p.omega());
                p = TubePoint::new(mc.clone(), b, p.omega().clone()).unwrap();
            }
            _ => {}
        }
        let slice = l.pairing_q(p.b(), p.omega()).unwrap().is_zero();
        on_slice += slice as usize;
        let omega = lift(phi(&split, &p), "phi")?;
        let im_in_mc = lift(mc.in_span(omega.im()), "span")?;
        ensure!(
            slice == im_in_mc,
            "sample {i}: B·ω = 0 is {slice} but Im φ ∈ M̌ is {im_in_mc}"
        );
        let tube = lift(in_primed(PrimedQuery::Tube(&p), &split), "primed tube")?;
        let period = lift(
            in_primed(PrimedQuery::Period(&omega), &split),
            "primed period",
        )?;
        ensure!(
            tube == slice && period == slice,
            "sample {i}: primed predicates disagree"
        );
    }
    Ok(format!("{samples} points, {on_slice} on the slice"))
}

fn mirror_involution_check(_: &mut ChaCha8Rng) -> Outcome {
    let (m, split) = lift(k3_split(&[K3_U1]), "construct")?;
    let l = k3_lattice();
    let rho = lift(block_involution(&l, &m), "ρ")?;
    let mirror = lift(mirror_involution(&rho, &split), "mirror involution")?;
    let a = mirror.matrix();
    ensure!(
        a * a == IntMatrix::identity(22),
        "square is not the identity"
    );
    ensure!(
        &(&a.transpose() * l.gram()) * a == *l.gram(),
        "not an isometry"
    );
    let (plus, minus) = lift(invariant_sublattices(&mirror), "invariant lattices")?;
    ensure!(
        plus.same_submodule(split.m_check()),
        "invariant lattice is not M̌"
    );
    ensure!(
        plus.canonical().gram() == split.m_check().canonical().gram(),
        "invariant Gram differs"
    );
    let p_plus_m = lift(split.p().sum(&m), "P ⊕ M")?;
    ensure!(
        minus.same_submodule(&p_plus_m),
        "anti-invariant lattice is not P ⊕ M"
    );
    let back = lift(
        mirror_involution(&mirror, &lift(split.dual_split(), "dual")?),
        "second mirror",
    )?;
    ensure!(back == rho, "mirror of the mirror involution is not ρ");
    Ok("square = I, AᵀGA = G, fixed M̌ (rank 18), anti-fixed P ⊕ M (rank 4)".into())
}

fn transpose_identity(rng: &mut ChaCha8Rng) -> Outcome {
    let samples = 200;
    for i in 0..samples {
        let dim = 2 * (i % 3 + 1);
        let space = SymplecticSpace::standard(dim).unwrap();
        let mut map = anti_symplectic_seed(dim);
        for _ in 0..rng.gen_range(1..=4) {
            let u: Vec<BigRational> = (0..dim).map(|_| q(rng.gen_range(-3..=3), 1)).collect();
            let t = random_rational(rng, 3);
            map = &lift(transvection(&space, &u, &t), "transvection")? * &map;
        }
        let defect = lift(transpose_defect(&space, &space, &map), "defect")?;
        ensure!(defect.is_zero(), "sample {i} (dim {dim}): nonzero defect");
    }
    Ok(format!("{samples} maps in dims 2, 4, 6"))
}

fn bv_duality(_: &mut ChaCha8Rng) -> Outcome {
    for n in 1..=11 {
        for np in 1..=11 {
            let d = BVData::new(n, np).unwrap();
            let s = lift(mirror_swap(&d), "swap")?;
            let h = lift(hodge_numbers(&d), "hodge")?;
            let hs = lift(hodge_numbers(&s), "hodge")?;
            ensure!(
                (h.h11, h.h21) == (11 + 5 * n - np, 11 + 5 * np - n),
                "({n},{np}): hodge numbers"
            );
            ensure!(
                (hs.h11, hs.h21) == (h.h21, h.h11),
                "({n},{np}): swap does not exchange h11, h21"
            );
            let e = euler_characteristic(&d);
            ensure!(
                e == 12 * (n - np) && e == 2 * (h.h11 - h.h21),
                "({n},{np}): euler {e}"
            );
            ensure!(euler_characteristic(&s) == -e, "({n},{np}): euler of swap");
        }
    }
    Ok("121 pairs (N, N') ∈ [1,11]²".into())
}

fn census_accounting(rng: &mut ChaCha8Rng) -> Outcome {
    let samples = 1000;
    let mut with_ii = 0;
    for i in 0..samples {
        let c = random_census(rng, 8);
        let r = &c.census().records;
        let weighted: usize = r.iter().map(|f| f.kodaira.euler()).sum();
        ensure!(weighted == 24, "sample {i}: #I1 + 2#II = {weighted}");
        with_ii += (weighted != r.len()) as usize;
        let e = lift(total_euler(&c), "total")?;
        ensure!(
            e == 12 * (c.bv().n() - c.bv().n_prime()),
            "sample {i}: total {e}"
        );
        let d = lift(dualize_census(&c), "dualize")?;
        ensure!(
            lift(total_euler(&d), "dual total")? == -e,
            "sample {i}: dual total"
        );
        ensure!(
            lift(dualize_census(&d), "dualize twice")? == c,
            "sample {i}: not an involution"
        );
    }
    Ok(format!(
        "{samples} censuses ({with_ii} with type II fibers)"
    ))
}

fn leray_degeneration(_: &mut ChaCha8Rng) -> Outcome {
    for r in 1..=19 {
        let t = lift(bv_table(r), "table")?;
        let b = lift(y_betti(r), "betti")?;
        ensure!(
            check_degeneration(&t, &b),
            "r = {r}: sums {:?} vs {b:?}",
            t.antidiagonal_sums()
        );
        let quotients = Filtration::from_table(&t, 3).quotients();
        ensure!(
            quotients == [1, 21 - r as u64, 21 - r as u64, 1],
            "r = {r}: quotients {quotients:?}"
        );
    }
    let k3 = lift(k3_table(1), "k3 table")?;
    ensure!(
        check_degeneration(&k3, &k3_betti()),
        "K3 sums {:?}",
        k3.antidiagonal_sums()
    );
    let e = elliptic_table();
    let s = e.swap_rows();
    ensure!(s.swap_rows() == e, "row swap is not an involution");
    ensure!(
        check_degeneration(&s, &elliptic_betti()),
        "row swap changes sums"
    );
    Ok("r = 1..19, K3 (1,0,22,0,1), elliptic row swap".into())
}

fn bv_period(rng: &mut ChaCha8Rng) -> Outcome {
    // M = U ⊕ E8(−1), T = U ⊕ U ⊕ E8(−1)
    let (m, split) = lift(k3_split(&[K3_U1, K3_E8_A]), "construct")?;
    let ctx = lift(BvMirror::new(&split, &m), "context")?;
    let samples = 50;
    for i in 0..samples {
        let p1 = random_tube_point(rng, &m, (0, 1), 10, i == 0);
        let b2 = random_rational(rng, 10);
        let w2 = q(rng.gen_range(1..=10), rng.gen_range(1..=10));
        let tp = lift(ctx.period(&p1, &b2, &w2), "period")?;
        let lead = tp.get(BasisLabel::EPrime, CircleClass::Sx);
        ensure!(
            lead.re.is_one() && lead.im.is_zero(),
            "sample {i}: E'⊗s_x coefficient {lead}"
        );
        let back = lift(ctx.recover(&tp), "recover")?;
        ensure!(
            back.p1 == p1 && back.b2 == b2 && back.omega2 == w2,
            "sample {i}: recovery differs"
        );
        ensure!(
            lift(ctx.factors_in_domains(&tp), "factors")?,
            "sample {i}: factor outside its domain"
        );
    }
    Ok(format!("{samples} inputs over M = U ⊕ E8(−1)"))
}

fn base_model(rng: &mut ChaCha8Rng) -> Outcome {
    let samples = 1000;
    let one = BigRational::one();
    for i in 0..samples {
        let (a, b, t) = (
            random_rational(rng, 20),
            random_rational(rng, 20),
            random_rational(rng, 20),
        );
        let p = BasePoint::from_parameters(&a, &b, &t);
        ensure!(
            &p.x * &p.x + &p.y * &p.y + &p.z * &p.z == one,
            "sample {i}: not on S²"
        );
        ensure!(&p.u * &p.u + &p.v * &p.v == one, "sample {i}: not on S¹");
        let [x, y, z, u, v, w] = lift(base_embed(&p), "embed")?;
        ensure!(&x * &x + &y * &y + &z == one, "sample {i}: X² + Y² + Z ≠ 1");
        ensure!(&u * &u + &v == one, "sample {i}: U² + V ≠ 1");
        ensure!(&w * &w == &z * &v, "sample {i}: W² ≠ ZV");
        ensure!(
            !z.is_negative() && !v.is_negative(),
            "sample {i}: Z or V negative"
        );
        let image = lift(base_embed(&p.involution()), "embed")?;
        ensure!(
            image == [x, y, z, u, v, w],
            "sample {i}: not invariant under the involution"
        );
    }
    Ok(format!("{samples} rational points of S² × S¹"))
}
