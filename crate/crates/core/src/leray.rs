//! `E₂` pages of the Leray spectral sequences of the torus fibrations of a
//! K3 surface over `S²`, an elliptic curve over `S¹`, and a Borcea-Voisin
//! quotient `Y = (S × A)/G` over `S³`, together with the mirror period of `Y`
//! expressed in the factored basis `{E, E', M} ⊗ {s_x, s_y}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::Signed;

use crate::complex::ComplexRational;
use crate::error::{Error, Result};
use crate::lattice::{LatticeVector, Sublattice};
use crate::mirror_lattice::MirrorSplit;
use crate::mirror_map::phi;
use crate::period::{in_period_domain, PeriodVector, TubePoint};

/// One `E₂^{p,q}` term: its dimension and named summands with their ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub summands: Vec<(String, u64)>,
}

impl Entry {
    fn new(summands: &[(&str, u64)]) -> Self {
        Entry {
            summands: summands.iter().map(|(l, d)| (l.to_string(), *d)).collect(),
        }
    }

    pub fn dim(&self) -> u64 {
        self.summands.iter().map(|(_, d)| d).sum()
    }

    pub fn label(&self) -> String {
        self.summands
            .iter()
            .map(|(l, _)| l.as_str())
            .collect::<Vec<_>>()
            .join(" ⊕ ")
    }
}

/// Nonzero entries of an `E₂` page on the grid `0..=max_p × 0..=max_q`,
/// keyed by `(p, q)` with `p` the base degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralTable {
    max_p: usize,
    max_q: usize,
    entries: BTreeMap<(usize, usize), Entry>,
}

impl SpectralTable {
    fn new(max_p: usize, max_q: usize, entries: Vec<((usize, usize), Entry)>) -> Self {
        SpectralTable {
            max_p,
            max_q,
            entries: entries.into_iter().collect(),
        }
    }

    pub fn max_p(&self) -> usize {
        self.max_p
    }

    pub fn max_q(&self) -> usize {
        self.max_q
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), Entry> {
        &self.entries
    }

    pub fn entry(&self, p: usize, q: usize) -> Option<&Entry> {
        self.entries.get(&(p, q))
    }

    pub fn dim(&self, p: usize, q: usize) -> u64 {
        self.entry(p, q).map_or(0, Entry::dim)
    }

    /// Adds `delta` to the rank of the first summand at `(p, q)`.
    pub fn perturb(&mut self, p: usize, q: usize, delta: u64) {
        let e = self.entries.entry((p, q)).or_insert_with(|| Entry {
            summands: vec![("?".into(), 0)],
        });
        e.summands[0].1 += delta;
    }

    /// `q ↦ max_q − q`; labels travel with their entries.
    pub fn swap_rows(&self) -> SpectralTable {
        SpectralTable {
            max_p: self.max_p,
            max_q: self.max_q,
            entries: self
                .entries
                .iter()
                .map(|(&(p, q), e)| ((p, self.max_q - q), e.clone()))
                .collect(),
        }
    }

    pub fn antidiagonal_sums(&self) -> Vec<u64> {
        let mut sums = vec![0; self.max_p + self.max_q + 1];
        for (&(p, q), e) in &self.entries {
            sums[p + q] += e.dim();
        }
        sums
    }
}

impl fmt::Display for SpectralTable {
    /// Rows printed top-down from `q = max_q`, columns by `p`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in (0..=self.max_q).rev() {
            let cells: Vec<String> = (0..=self.max_p)
                .map(|p| match self.entry(p, q) {
                    Some(e) => format!("{} [{}]", e.dim(), e.label()),
                    None => "0".to_string(),
                })
                .collect();
            writeln!(f, "q={q}: {}", cells.join(" | "))?;
        }
        Ok(())
    }
}

fn check_rank(r: usize, max: usize) -> Result<()> {
    if !(1..=max).contains(&r) {
        return Err(Error::RankOutOfRange {
            rank: r,
            min: 1,
            max,
        });
    }
    Ok(())
}

/// Leray `E₂` of a K3 fibered over `S²` with polarization lattice of rank `r`.
pub fn k3_table(r: usize) -> Result<SpectralTable> {
    check_rank(r, 20)?;
    Ok(SpectralTable::new(
        2,
        2,
        vec![
            ((0, 0), Entry::new(&[("Q", 1)])),
            ((2, 0), Entry::new(&[("QE", 1)])),
            ((0, 2), Entry::new(&[("Qσ≅QE′", 1)])),
            ((2, 2), Entry::new(&[("Q", 1)])),
            ((1, 1), Entry::new(&[("H¹(S²,R¹f_*Q)", 20)])),
        ],
    ))
}

pub fn elliptic_table() -> SpectralTable {
    SpectralTable::new(
        1,
        1,
        vec![
            ((0, 0), Entry::new(&[("Q", 1)])),
            ((1, 0), Entry::new(&[("Qs_y", 1)])),
            ((0, 1), Entry::new(&[("Qs_x", 1)])),
            ((1, 1), Entry::new(&[("Q", 1)])),
        ],
    )
}

/// Leray `E₂` of `Y → S³` where `M` has rank `r` and `M̌` rank `20 − r`.
pub fn bv_table(r: usize) -> Result<SpectralTable> {
    check_rank(r, 19)?;
    let r = r as u64;
    let mc = 20 - r;
    Ok(SpectralTable::new(
        3,
        3,
        vec![
            ((0, 0), Entry::new(&[("Q", 1)])),
            ((3, 0), Entry::new(&[("QE⊗s_y", 1)])),
            ((0, 3), Entry::new(&[("QE′⊗s_x", 1)])),
            ((3, 3), Entry::new(&[("Q", 1)])),
            ((1, 1), Entry::new(&[("M_Q", r), ("Q", 1)])),
            ((2, 2), Entry::new(&[("M_Q", r), ("Q", 1)])),
            ((1, 2), Entry::new(&[("QE′⊗s_y", 1), ("M̌_Q⊗s_x", mc)])),
            ((2, 1), Entry::new(&[("M̌_Q⊗s_y", mc), ("QE⊗s_x", 1)])),
        ],
    ))
}

/// Betti numbers `b₀..b₆` of `Y`.
pub fn y_betti(r: usize) -> Result<Vec<u64>> {
    check_rank(r, 19)?;
    let r = r as u64;
    Ok(vec![1, 0, r + 1, 2 * (22 - r), r + 1, 0, 1])
}

pub fn k3_betti() -> Vec<u64> {
    vec![1, 0, 22, 0, 1]
}

pub fn elliptic_betti() -> Vec<u64> {
    vec![1, 2, 1]
}

/// Whether every antidiagonal sum equals the Betti number in that degree.
pub fn check_degeneration(t: &SpectralTable, betti: &[u64]) -> bool {
    t.antidiagonal_sums() == betti
}

/// `0 ⊆ F₀ ⊆ … ⊆ F_n = Hⁿ` with `F_i/F_{i−1} ≅ E₂^{n−i,i}`, stored as the
/// cumulative dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filtration {
    pub dims: Vec<u64>,
}

impl Filtration {
    pub fn from_table(t: &SpectralTable, n: usize) -> Filtration {
        let mut dims = Vec::with_capacity(n + 1);
        let mut acc = 0;
        for i in 0..=n {
            if i <= t.max_q && n - i <= t.max_p {
                acc += t.dim(n - i, i);
            }
            dims.push(acc);
        }
        Filtration { dims }
    }

    pub fn quotients(&self) -> Vec<u64> {
        let mut prev = 0;
        self.dims
            .iter()
            .map(|&d| {
                let q = d - prev;
                prev = d;
                q
            })
            .collect()
    }
}

/// Basis vectors of `P ⊕ M`: `E`, `E'`, then the basis of `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisLabel {
    E,
    EPrime,
    M(usize),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::E => f.write_str("E"),
            BasisLabel::EPrime => f.write_str("E'"),
            BasisLabel::M(i) => write!(f, "m{i}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CircleClass {
    Sx,
    Sy,
}

impl fmt::Display for CircleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CircleClass::Sx => "s_x",
            CircleClass::Sy => "s_y",
        })
    }
}

/// A class of `(P ⊕ M)_C ⊗ H¹(A, C)` by its nonzero components.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorPeriod {
    pub components: BTreeMap<(BasisLabel, CircleClass), ComplexRational>,
}

impl TensorPeriod {
    pub fn get(&self, b: BasisLabel, c: CircleClass) -> ComplexRational {
        self.components
            .get(&(b, c))
            .cloned()
            .unwrap_or_else(ComplexRational::zero)
    }

    /// Image in `F₂/F₁`: drops the `E ⊗ s_x`, `E ⊗ s_y` and `M ⊗ s_y`
    /// components, leaving `E' ⊗ s_y`, `M ⊗ s_x` and the `E' ⊗ s_x` term
    /// of `F₃/F₂`.
    pub fn reduce_mod_f1(&self) -> TensorPeriod {
        TensorPeriod {
            components: self
                .components
                .iter()
                .filter(|((b, c), _)| {
                    !matches!(
                        (b, c),
                        (BasisLabel::E, _) | (BasisLabel::M(_), CircleClass::Sy)
                    )
                })
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }
}

fn label_of(i: usize) -> BasisLabel {
    match i {
        0 => BasisLabel::E,
        1 => BasisLabel::EPrime,
        j => BasisLabel::M(j - 2),
    }
}

/// Kähler data `(p1, (B₂, ω₂))` read back from a mirror period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recovered {
    pub p1: TubePoint,
    pub b2: BigRational,
    pub omega2: BigRational,
}

/// A split `T = P ⊕ M̌` with `m = 1` together with its dual split of
/// `P ⊕ M` and the factored basis `[E, E', m₁, …, m_r]`.
#[derive(Debug, Clone)]
pub struct BvMirror {
    m: Sublattice,
    dual: MirrorSplit,
    basis: Sublattice,
}

impl BvMirror {
    /// `m` must span the orthogonal complement of `T`; its basis fixes the
    /// labels `m₀, m₁, …`.
    pub fn new(split: &MirrorSplit, m: &Sublattice) -> Result<Self> {
        let dual = split.dual_split()?;
        if !m.same_submodule(dual.m_check()) {
            return Err(Error::Precondition(
                "M is not the orthogonal complement of T",
            ));
        }
        let mut vs: Vec<LatticeVector> = vec![split.e().clone(), split.e_prime().clone()];
        vs.extend(m.generators());
        let basis = Sublattice::from_vectors(split.t().ambient(), &vs)?;
        Ok(BvMirror {
            m: m.clone(),
            dual,
            basis,
        })
    }

    pub fn m(&self) -> &Sublattice {
        &self.m
    }

    /// The split of `P ⊕ M` whose mirror lattice is `M`.
    pub fn dual(&self) -> &MirrorSplit {
        &self.dual
    }

    /// The mirror period `Ω_S ⊗ (s_x + τ s_y)` of `Y̌` attached to the Kähler
    /// data `(B₁ + iω₁, B₂ + iω₂)` of `Y`, where `Ω_S = φ̌(B₁ + iω₁)` is the
    /// K3 mirror map with the roles of `M` and `M̌` exchanged and
    /// `τ = B₂ + iω₂`.
    pub fn period(
        &self,
        p1: &TubePoint,
        b2: &BigRational,
        w2: &BigRational,
    ) -> Result<TensorPeriod> {
        if !p1.lattice().same_submodule(&self.m) {
            return Err(Error::Precondition("Kähler data is not over M"));
        }
        if !w2.is_positive() {
            return Err(Error::NonPositiveOmega(w2.to_string()));
        }
        let p1 = TubePoint::new(
            self.dual.m_check().clone(),
            p1.b().clone(),
            p1.omega().clone(),
        )?;
        let omega_s = phi(&self.dual, &p1)?;
        let re = self
            .basis
            .rational_coordinates(omega_s.re())?
            .ok_or(Error::NotInSpan)?;
        let im = self
            .basis
            .rational_coordinates(omega_s.im())?
            .ok_or(Error::NotInSpan)?;
        let tau = ComplexRational::new(b2.clone(), w2.clone());

        let mut components = BTreeMap::new();
        for (i, (a, b)) in re.into_iter().zip(im).enumerate() {
            let c = ComplexRational::new(a, b);
            if c.is_zero() {
                continue;
            }
            components.insert((label_of(i), CircleClass::Sy), &c * &tau);
            components.insert((label_of(i), CircleClass::Sx), c);
        }
        Ok(TensorPeriod { components })
    }

    /// Inverts `period`: requires the `E' ⊗ s_x` coefficient to be 1, checks
    /// that the class factors as `(s_x block) ⊗ (s_x + τ s_y)`, reads `τ`
    /// from `E' ⊗ s_y` and `B₁ + iω₁` from the `M ⊗ s_x` components of the
    /// image in `F₂/F₁`.
    pub fn recover(&self, period: &TensorPeriod) -> Result<Recovered> {
        if period.get(BasisLabel::EPrime, CircleClass::Sx) != ComplexRational::one() {
            return Err(Error::Normalization("E'⊗s_x coefficient is not 1"));
        }
        let tau = period.get(BasisLabel::EPrime, CircleClass::Sy);
        if !tau.im.is_positive() {
            return Err(Error::NonPositiveOmega(tau.im.to_string()));
        }
        let labels: BTreeSet<BasisLabel> = period.components.keys().map(|(b, _)| *b).collect();
        for b in labels {
            if period.get(b, CircleClass::Sy) != &period.get(b, CircleClass::Sx) * &tau {
                return Err(Error::Precondition(
                    "class does not factor through s_x + τ s_y",
                ));
            }
        }
        let reduced = period.reduce_mod_f1();
        let (b1, w1): (Vec<_>, Vec<_>) = (0..self.m.rank())
            .map(|i| {
                let c = reduced.get(BasisLabel::M(i), CircleClass::Sx);
                (c.re, c.im)
            })
            .unzip();
        let p1 = TubePoint::from_basis_coords(self.m.clone(), &b1, &w1)?;
        Ok(Recovered {
            p1,
            b2: tau.re,
            omega2: tau.im,
        })
    }

    /// The `s_x` block as a period of `P ⊕ M`, and the `s_y/s_x` ratio on
    /// `E'`.
    pub fn factors(&self, period: &TensorPeriod) -> Result<(PeriodVector, ComplexRational)> {
        let (re, im): (Vec<_>, Vec<_>) = (0..self.basis.rank())
            .map(|i| {
                let c = period.get(label_of(i), CircleClass::Sx);
                (c.re, c.im)
            })
            .unzip();
        let omega_s = PeriodVector::new(
            self.dual.t().clone(),
            self.basis.combine_q(&re),
            self.basis.combine_q(&im),
        )?;
        let sx = period.get(BasisLabel::EPrime, CircleClass::Sx);
        let tau = period.get(BasisLabel::EPrime, CircleClass::Sy).div(&sx)?;
        Ok((omega_s, tau))
    }

    /// Both factors lie in their period domains: `Ω_S·Ω_S = 0`,
    /// `Ω_S·Ω̄_S > 0`, and `Im τ > 0`.
    pub fn factors_in_domains(&self, period: &TensorPeriod) -> Result<bool> {
        let (omega_s, tau) = self.factors(period)?;
        Ok(in_period_domain(&omega_s) && tau.im.is_positive())
    }
}

pub fn bv_mirror_period(
    split: &MirrorSplit,
    m: &Sublattice,
    p1: &TubePoint,
    p2: (&BigRational, &BigRational),
) -> Result<TensorPeriod> {
    BvMirror::new(split, m)?.period(p1, p2.0, p2.1)
}
