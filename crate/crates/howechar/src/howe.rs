//! The four compact dual pairs: root data of both members, admissible
//! weights, support intervals, the embedding of the small torus into the big
//! one, and the coset enumerations used by the character formulas.
//!
//! Coordinates are 0-based throughout; `S_m` lists positions in `h′`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rootsys::{self, Family, RootSystem, WeylElement, WeylIter, DEFAULT_ENUMERATION_CAP};
use crate::torus::{TorusPoint, Weight};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairKind {
    /// `(U(n), U(p,q))`.
    UU,
    /// `(O(2n), Sp(2m,ℝ))`.
    OevenSp,
    /// `(O(2n+1), Sp(2m,ℝ))`.
    OoddSp,
    /// `(U(n,ℍ), O*(2m))`.
    UHOstar,
}

impl FromStr for PairKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<PairKind> {
        match s {
            "UU" => Ok(PairKind::UU),
            "OevenSp" => Ok(PairKind::OevenSp),
            "OoddSp" => Ok(PairKind::OoddSp),
            "UHOstar" => Ok(PairKind::UHOstar),
            other => Err(Error::InvalidArgument(format!("unknown pair kind {other:?}"))),
        }
    }
}

impl fmt::Display for PairKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PairKind::UU => "UU",
            PairKind::OevenSp => "OevenSp",
            PairKind::OoddSp => "OoddSp",
            PairKind::UHOstar => "UHOstar",
        };
        f.write_str(s)
    }
}

/// A compact dual pair `(G, G′)` with `rank G ≤ rank G′`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DualPairSpec {
    UU { n: usize, p: usize, q: usize },
    OevenSp { n: usize, m: usize },
    OoddSp { n: usize, m: usize },
    UHOstar { n: usize, m: usize },
}

impl fmt::Display for DualPairSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            DualPairSpec::UU { n, p, q } => write!(f, "UU({n},{p},{q})"),
            DualPairSpec::OevenSp { n, m } => write!(f, "OevenSp({n},{m})"),
            DualPairSpec::OoddSp { n, m } => write!(f, "OoddSp({n},{m})"),
            DualPairSpec::UHOstar { n, m } => write!(f, "UHOstar({n},{m})"),
        }
    }
}

impl DualPairSpec {
    pub fn uu(n: usize, p: usize, q: usize) -> Result<DualPairSpec> {
        DualPairSpec::UU { n, p, q }.checked()
    }

    pub fn oeven_sp(n: usize, m: usize) -> Result<DualPairSpec> {
        DualPairSpec::OevenSp { n, m }.checked()
    }

    pub fn oodd_sp(n: usize, m: usize) -> Result<DualPairSpec> {
        DualPairSpec::OoddSp { n, m }.checked()
    }

    pub fn uh_ostar(n: usize, m: usize) -> Result<DualPairSpec> {
        DualPairSpec::UHOstar { n, m }.checked()
    }

    /// Builds a pair from its kind; `a` and `b` are `(p, q)` for `UU` and `b` is ignored otherwise.
    pub fn from_kind(kind: PairKind, n: usize, a: usize, b: usize) -> Result<DualPairSpec> {
        match kind {
            PairKind::UU => DualPairSpec::uu(n, a, b),
            PairKind::OevenSp => DualPairSpec::oeven_sp(n, a),
            PairKind::OoddSp => DualPairSpec::oodd_sp(n, a),
            PairKind::UHOstar => DualPairSpec::uh_ostar(n, a),
        }
    }

    fn checked(self) -> Result<DualPairSpec> {
        let n = self.n();
        if n == 0 {
            return Err(Error::InvalidArgument("rank of G must be positive".into()));
        }
        if n > self.gprime_rank() {
            return Err(Error::InvalidArgument(format!(
                "{self}: rank of G exceeds rank of G′"
            )));
        }
        Ok(self)
    }

    pub fn kind(&self) -> PairKind {
        match self {
            DualPairSpec::UU { .. } => PairKind::UU,
            DualPairSpec::OevenSp { .. } => PairKind::OevenSp,
            DualPairSpec::OoddSp { .. } => PairKind::OoddSp,
            DualPairSpec::UHOstar { .. } => PairKind::UHOstar,
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            DualPairSpec::UU { n, .. }
            | DualPairSpec::OevenSp { n, .. }
            | DualPairSpec::OoddSp { n, .. }
            | DualPairSpec::UHOstar { n, .. } => n,
        }
    }

    /// Rank of `G′`: `p+q` or `m`.
    pub fn gprime_rank(&self) -> usize {
        match *self {
            DualPairSpec::UU { p, q, .. } => p + q,
            DualPairSpec::OevenSp { m, .. } | DualPairSpec::OoddSp { m, .. } | DualPairSpec::UHOstar { m, .. } => m,
        }
    }

    pub fn family_g(&self) -> Family {
        match self.kind() {
            PairKind::UU => Family::A,
            PairKind::OevenSp => Family::D,
            PairKind::OoddSp => Family::B,
            PairKind::UHOstar => Family::C,
        }
    }

    pub fn family_gprime(&self) -> Family {
        match self.kind() {
            PairKind::UU => Family::A,
            PairKind::OevenSp | PairKind::OoddSp => Family::C,
            PairKind::UHOstar => Family::D,
        }
    }

    /// Coordinate blocks of the compact Weyl group `W(K′, h′)`.
    pub fn kprime_blocks(&self) -> Vec<Vec<usize>> {
        match *self {
            DualPairSpec::UU { p, q, .. } => vec![(0..p).collect(), (p..p + q).collect()],
            _ => vec![(0..self.gprime_rank()).collect()],
        }
    }

    pub fn rs_g(&self) -> RootSystem {
        let n = self.n();
        RootSystem::on_blocks(self.family_g(), n, vec![(0..n).collect()])
    }

    /// Root system of `G′` with the roots of `K′` marked compact.
    pub fn rs_gprime(&self) -> RootSystem {
        let r = self.gprime_rank();
        let blocks = self.kprime_blocks();
        RootSystem::on_blocks(self.family_gprime(), r, vec![(0..r).collect()])
            .with_compact(|a| is_compact_root(&blocks, a))
    }

    pub fn rs_kprime(&self) -> RootSystem {
        RootSystem::on_blocks(Family::A, self.gprime_rank(), self.kprime_blocks())
    }

    /// `ρ` of `G` in the standard coordinates.
    pub fn rho_g(&self) -> Weight {
        let n = self.n() as i64;
        let coords = (1..=n)
            .map(|k| match self.kind() {
                PairKind::UU => Rational::new(n - 2 * k + 1, 2),
                PairKind::OevenSp => Rational::from_integer(n - k),
                PairKind::OoddSp => Rational::new(2 * (n - k) + 1, 2),
                PairKind::UHOstar => Rational::from_integer(n - k + 1),
            })
            .collect();
        Weight::from_rationals_unchecked(coords)
    }

    /// Half-integer offset `s` with `a_k = μ′_k − s`, `b_k = −μ′_k − s`.
    pub fn support_shift(&self) -> Rational {
        match *self {
            DualPairSpec::UU { n, p, q } => Rational::new((p + q) as i64 - n as i64 - 1, 2),
            DualPairSpec::OevenSp { n, m } => Rational::from_integer(m as i64 - n as i64),
            DualPairSpec::OoddSp { n, m } => Rational::new(2 * (m as i64 - n as i64) - 1, 2),
            DualPairSpec::UHOstar { n, m } => Rational::from_integer(m as i64 - n as i64 - 1),
        }
    }

    /// Central character offset of the correspondence.
    pub fn central_shift(&self) -> Rational {
        let n = self.n() as i64;
        match *self {
            DualPairSpec::UU { p, q, .. } => Rational::new(q as i64 - p as i64, 2),
            DualPairSpec::OevenSp { .. } | DualPairSpec::UHOstar { .. } => Rational::from_integer(-n),
            DualPairSpec::OoddSp { .. } => Rational::new(-(2 * n + 1), 2),
        }
    }

    /// `S_m` without reference to a support interval; checks only that the
    /// two parts land in the `p` and `q` blocks.
    pub fn index_set(&self, m: usize) -> Result<Vec<usize>> {
        match *self {
            DualPairSpec::UU { n, p, q } => {
                if m > n || m > p || n - m > q {
                    return Err(Error::InvalidEmbedding(format!(
                        "m = {m} does not split {n} coordinates into blocks of sizes {p} and {q}"
                    )));
                }
                let big = p + q;
                Ok((0..m).chain(big - n + m..big).collect())
            }
            _ => Ok((0..self.n()).collect()),
        }
    }
}

fn is_compact_root(blocks: &[Vec<usize>], alpha: &Weight) -> bool {
    let support: Vec<usize> = (0..alpha.len()).filter(|&k| !alpha[k].is_zero()).collect();
    let same_block = blocks.iter().any(|b| support.iter().all(|k| b.contains(k)));
    let difference = alpha.coords().iter().any(|c| c.is_negative());
    same_block && difference
}

/// Validated highest weight with its shifted and reversed forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrespondenceData {
    pub nu: Weight,
    /// `ν + ρ`.
    pub mu: Weight,
    /// `μ′_j = μ_{n+1−j}`.
    pub mu_prime: Weight,
    pub central_shift: Rational,
}

fn reject(what: String) -> Result<CorrespondenceData> {
    Err(Error::NotInCorrespondence(what))
}

/// Reverses the coordinate order.
pub fn reverse(w: &Weight) -> Weight {
    Weight::from_rationals_unchecked(w.coords().iter().rev().copied().collect())
}

pub fn validate_weight(pair: &DualPairSpec, nu: &Weight) -> Result<CorrespondenceData> {
    let n = pair.n();
    if nu.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: nu.len(),
        });
    }
    if nu.coords().windows(2).any(|w| w[0] < w[1]) {
        return reject(format!("{nu} is not decreasing"));
    }
    match *pair {
        DualPairSpec::UU { p, q, .. } => {
            let offset = pair.central_shift();
            let parts: Vec<Rational> = nu.coords().iter().map(|c| c - offset).collect();
            if parts.iter().any(|c| !c.is_integer()) {
                return reject(format!("{nu} minus ({q}−{p})/2 is not integral"));
            }
            let pos = parts.iter().filter(|c| c.is_positive()).count();
            let neg = parts.iter().filter(|c| c.is_negative()).count();
            if pos > q {
                return reject(format!("{nu} has {pos} positive parts, more than q = {q}"));
            }
            if neg > p {
                return reject(format!("{nu} has {neg} negative parts, more than p = {p}"));
            }
        }
        _ => {
            if !nu.is_integral() {
                return reject(format!("{nu} is not integral"));
            }
            if nu.coords().iter().any(|c| c.is_negative()) {
                return reject(format!("{nu} has a negative entry"));
            }
            let nonzero = nu.coords().iter().filter(|c| !c.is_zero()).count();
            let bound = n.min(pair.gprime_rank());
            if nonzero > bound {
                return reject(format!("{nu} has more than {bound} nonzero entries"));
            }
        }
    }
    let mu = nu + &pair.rho_g();
    Ok(CorrespondenceData {
        nu: nu.clone(),
        mu_prime: reverse(&mu),
        mu,
        central_shift: pair.central_shift(),
    })
}

/// Admissible embedding parameters `lo ..= hi` with the exponents they derive from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportInterval {
    pub lo: usize,
    pub hi: usize,
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
}

impl SupportInterval {
    pub fn contains(&self, m: usize) -> bool {
        self.lo <= m && m <= self.hi
    }
}

/// `lo = max{k : b_k ≥ 1}` (0 if none) and `hi = min{k : a_k ≥ 1} − 1` (`n` if none), 1-based `k`.
pub fn support_interval(pair: &DualPairSpec, cd: &CorrespondenceData) -> SupportInterval {
    let s = pair.support_shift();
    let a: Vec<Rational> = cd.mu_prime.coords().iter().map(|x| x - s).collect();
    let b: Vec<Rational> = cd.mu_prime.coords().iter().map(|x| -x - s).collect();
    let one = Rational::one();
    let lo = (0..b.len()).filter(|&k| b[k] >= one).map(|k| k + 1).max().unwrap_or(0);
    let hi = (0..a.len())
        .filter(|&k| a[k] >= one)
        .map(|k| k + 1)
        .min()
        .map_or(a.len(), |k| k - 1);
    debug_assert!(lo <= hi, "empty support interval for {}", cd.nu);
    SupportInterval { lo, hi, a, b }
}

/// `S_m`, checked against the support interval.
pub fn embedded_index_set(pair: &DualPairSpec, interval: &SupportInterval, m: usize) -> Result<Vec<usize>> {
    if pair.kind() == PairKind::UU && !interval.contains(m) {
        return Err(Error::InvalidEmbedding(format!(
            "m = {m} outside [{}, {}]",
            interval.lo, interval.hi
        )));
    }
    pair.index_set(m)
}

/// `pr_m`: the angles at the positions of `S_m`, in embedding order.
pub fn project(pair: &DualPairSpec, m: usize, theta: &TorusPoint) -> Result<TorusPoint> {
    if theta.len() != pair.gprime_rank() {
        return Err(Error::DimensionMismatch {
            expected: pair.gprime_rank(),
            got: theta.len(),
        });
    }
    let s = pair.index_set(m)?;
    TorusPoint::new(s.iter().map(|&k| theta.angles()[k]).collect())
}

pub fn kprime_weyl(pair: &DualPairSpec) -> Result<WeylIter> {
    rootsys::weyl_elements(&pair.rs_kprime())
}

/// Root system of `Z′(m)`: the roots of `G′` vanishing on the embedded torus.
pub fn z_root_system(pair: &DualPairSpec, m: usize) -> Result<RootSystem> {
    let s = pair.index_set(m)?;
    let r = pair.gprime_rank();
    let complement: Vec<usize> = (0..r).filter(|k| !s.contains(k)).collect();
    Ok(RootSystem::on_blocks(pair.family_gprime(), r, vec![complement]))
}

/// `ρ_{z′(m)}`.
pub fn rho_z(pair: &DualPairSpec, m: usize) -> Result<Weight> {
    Ok(rootsys::rho(&z_root_system(pair, m)?))
}

pub fn z_weyl(pair: &DualPairSpec, m: usize) -> Result<WeylIter> {
    rootsys::weyl_elements(&z_root_system(pair, m)?)
}

fn permutations(n: usize) -> Result<Vec<Vec<usize>>> {
    if n > DEFAULT_ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            what: format!("permutations of {n} coordinates"),
            cap: DEFAULT_ENUMERATION_CAP,
        });
    }
    let rs = RootSystem::on_blocks(Family::A, n, vec![(0..n).collect()]);
    Ok(rootsys::weyl_elements(&rs)?.map(|w| w.perm).collect())
}

/// Representatives `η` of the cosets entering the character formula.
///
/// `UU`: `η ∈ S_n` with `η({1..m}) ⊇ {1..lo}` and `η({m+1..n}) ⊇ {hi+1..n}`,
/// one per image set `η({1..m})`.
///
/// Other pairs: `η = ε` a sign change with `ε_k = −1` for `k ≤ lo`,
/// `ε_k = +1` for `k > hi`, free in between, even for `G` of type `D`;
/// one per sign pattern.
pub fn eta_cosets(pair: &DualPairSpec, interval: &SupportInterval, m: usize) -> Result<Vec<WeylElement>> {
    let n = pair.n();
    let (lo, hi) = (interval.lo, interval.hi);
    if pair.kind() == PairKind::UU {
        if !interval.contains(m) {
            return Err(Error::InvalidEmbedding(format!("m = {m} outside [{lo}, {hi}]")));
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for perm in permutations(n)? {
            let head: BTreeSet<usize> = perm[..m].iter().copied().collect();
            let tail: BTreeSet<usize> = perm[m..].iter().copied().collect();
            if (0..lo).all(|k| head.contains(&k)) && (hi..n).all(|k| tail.contains(&k)) && seen.insert(head) {
                out.push(WeylElement {
                    perm,
                    signs: vec![1; n],
                });
            }
        }
        return Ok(out);
    }
    if n > DEFAULT_ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            what: format!("sign patterns on {n} coordinates"),
            cap: DEFAULT_ENUMERATION_CAP,
        });
    }
    let even = pair.family_g() == Family::D;
    let mut out = Vec::new();
    for bits in 0u32..1 << n {
        let signs: Vec<i8> = (0..n).map(|k| if bits >> k & 1 == 1 { -1 } else { 1 }).collect();
        let fixed_ok = (0..lo).all(|k| signs[k] == -1) && (hi..n).all(|k| signs[k] == 1);
        let parity_ok = !even || signs.iter().filter(|&&s| s < 0).count() % 2 == 0;
        if fixed_ok && parity_ok {
            out.push(WeylElement {
                perm: (0..n).collect(),
                signs,
            });
        }
    }
    Ok(out)
}
