//! Characters `Θ_Π′` of the representations of `G′` attached to `Π` by the
//! correspondence, evaluated on the compact Cartan subgroup `H′`.
//!
//! Every formula holds up to a global constant; values are unnormalized
//! unless a constant has been attached with [`ThetaCharacter::with_normalization`].

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::howe::{self, CorrespondenceData, DualPairSpec, SupportInterval};
use crate::laurent::{self, ExactEval, LaurentSeries, RationalFunction, RationalPoint};
use crate::rootsys::{self, RootSystem, WeylElement};
use crate::torus::{self, TorusPoint, Weight, DEFAULT_REGULARITY_TOL};
use crate::{ComplexValue, Rational};

/// `Θ_Π′` for one pair, one highest weight and one embedding parameter.
#[derive(Clone, Debug)]
pub struct ThetaCharacter {
    pair: DualPairSpec,
    cd: CorrespondenceData,
    interval: SupportInterval,
    m: usize,
    normalization: Option<Rational>,
    index_set: Vec<usize>,
    /// `(−η⁻¹μ′, sgn η)` for each coset representative.
    eta_terms: Vec<(Weight, i64)>,
    kprime: Vec<WeylElement>,
    rs_gprime: RootSystem,
    /// Positive roots of `G′` not vanishing on the embedded torus.
    nonvanishing: Vec<Weight>,
}

impl ThetaCharacter {
    pub fn new(pair: DualPairSpec, nu: &Weight, m: usize) -> Result<ThetaCharacter> {
        let cd = howe::validate_weight(&pair, nu)?;
        ThetaCharacter::from_data(pair, cd, m)
    }

    pub fn from_data(pair: DualPairSpec, cd: CorrespondenceData, m: usize) -> Result<ThetaCharacter> {
        let interval = howe::support_interval(&pair, &cd);
        let index_set = howe::embedded_index_set(&pair, &interval, m)?;
        let mut eta_terms = Vec::new();
        for eta in howe::eta_cosets(&pair, &interval, m)? {
            let exponent = -&rootsys::act(&eta.inverse(), &cd.mu_prime)?;
            eta_terms.push((exponent, rootsys::sign(&eta)));
        }
        let kprime: Vec<WeylElement> = howe::kprime_weyl(&pair)?.collect();
        let rs_gprime = pair.rs_gprime();
        let nonvanishing = rs_gprime
            .positive_roots
            .iter()
            .filter(|a| index_set.iter().any(|&k| !a[k].is_zero()))
            .cloned()
            .collect();
        Ok(ThetaCharacter {
            pair,
            cd,
            interval,
            m,
            normalization: None,
            index_set,
            eta_terms,
            kprime,
            rs_gprime,
            nonvanishing,
        })
    }

    /// Attaches the constant `C`; it must be nonzero.
    pub fn with_normalization(mut self, c: Rational) -> Result<ThetaCharacter> {
        if c.is_zero() {
            return Err(Error::InvalidArgument("normalization must be nonzero".into()));
        }
        self.normalization = Some(c);
        Ok(self)
    }

    pub fn pair(&self) -> &DualPairSpec {
        &self.pair
    }

    pub fn data(&self) -> &CorrespondenceData {
        &self.cd
    }

    pub fn interval(&self) -> &SupportInterval {
        &self.interval
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn normalization(&self) -> Option<Rational> {
        self.normalization
    }

    pub fn index_set(&self) -> &[usize] {
        &self.index_set
    }

    pub fn eta_terms(&self) -> &[(Weight, i64)] {
        &self.eta_terms
    }

    fn scale(&self) -> f64 {
        self.normalization.map_or(1.0, torus::to_f64)
    }

    fn check_point(&self, theta: &TorusPoint) -> Result<()> {
        if theta.len() != self.pair.gprime_rank() {
            return Err(Error::DimensionMismatch {
                expected: self.pair.gprime_rank(),
                got: theta.len(),
            });
        }
        Ok(())
    }

    /// `ι_S(−η⁻¹μ′) + σρ_{z′}` with sign `sgn(η)·sgn(σ)`, over `η` and `σ ∈ W(Z′)`.
    fn numerator_bases(&self) -> Result<Vec<(Weight, i64)>> {
        let r = self.pair.gprime_rank();
        let rho_z = howe::rho_z(&self.pair, self.m)?;
        let zw: Vec<WeylElement> = howe::z_weyl(&self.pair, self.m)?.collect();
        let mut out = Vec::with_capacity(self.eta_terms.len() * zw.len());
        for (ex, s_eta) in &self.eta_terms {
            let embedded = ex.embed(r, &self.index_set);
            for sigma in &zw {
                out.push((&embedded + &rootsys::act(sigma, &rho_z)?, s_eta * rootsys::sign(sigma)));
            }
        }
        Ok(out)
    }
}

/// `Σ_η Σ_{σ∈W(K′)} sgn(η)·pr(σθ)^{−η⁻¹μ′} / Π_β (σθ)^{β/2} − (σθ)^{−β/2}`,
/// `β` over positive roots of `G′` not vanishing on the embedded torus.
pub fn theta_eval(tc: &ThetaCharacter, theta: &TorusPoint) -> Result<ComplexValue> {
    tc.check_point(theta)?;
    if !torus::is_regular(&tc.rs_gprime, theta, DEFAULT_REGULARITY_TOL) {
        return Err(Error::SingularPoint);
    }
    let mut total = Complex64::zero();
    for sigma in &tc.kprime {
        let st = sigma.act_angles(theta.angles());
        let mut den = Complex64::one();
        for beta in &tc.nonvanishing {
            let f = torus::root_factor(beta, &st);
            if f.norm() < DEFAULT_REGULARITY_TOL {
                return Err(Error::SingularPoint);
            }
            den *= f;
        }
        let pr: Vec<f64> = tc.index_set.iter().map(|&k| st[k]).collect();
        let num: Complex64 = tc
            .eta_terms
            .iter()
            .map(|(ex, s)| Complex64::from_polar(*s as f64, ex.pair_angles(&pr)))
            .sum();
        total += num / den;
    }
    torus::finite(total * tc.scale())
}

/// `Σ_η Σ_{σ∈W(Z′)} Σ_{τ∈W(K′)} sgn(ηστ)·pr(τθ)^{−η⁻¹μ′}·(τθ)^{σρ_{z′}}`.
pub fn theta_numerator_form(tc: &ThetaCharacter, theta: &TorusPoint) -> Result<ComplexValue> {
    tc.check_point(theta)?;
    let bases = tc.numerator_bases()?;
    let mut total = Complex64::zero();
    for tau in &tc.kprime {
        let tt = tau.act_angles(theta.angles());
        let s_tau = rootsys::sign(tau) as f64;
        for (e, s) in &bases {
            total += Complex64::from_polar(s_tau * *s as f64, e.pair_angles(&tt));
        }
    }
    torus::finite(total * tc.scale())
}

/// The numerator form as a Laurent polynomial in `h′` (unnormalized).
pub fn numerator_polynomial(tc: &ThetaCharacter, chamber: &[i64]) -> Result<LaurentSeries> {
    let mut terms = Vec::new();
    for (base, s) in tc.numerator_bases()? {
        for tau in &tc.kprime {
            terms.push((rootsys::act(&tau.inverse(), &base)?, s * rootsys::sign(tau)));
        }
    }
    let lowest = terms
        .iter()
        .map(|(e, _)| e.pair_int(chamber))
        .min()
        .unwrap_or_else(Rational::zero);
    let mut out = LaurentSeries::zero(chamber.to_vec(), Rational::one() - lowest.min(Rational::zero()));
    for (e, s) in terms {
        out.add_term(e, Rational::from_integer(s));
    }
    Ok(out)
}

/// The single-sum forms of `Θ` for `UU(1,p,q)` with integer part `λ₁`:
/// `Π_k h_k^{1/2} Σ_b h_b^{p−λ₁−1} / Π_{a≠b} (h_b − h_a)`,
/// `b ∈ {1..p}` for `m = 1` and `b ∈ {p+1..p+q}` for `m = 0`.
pub fn theta_u1_closed(p: usize, q: usize, lambda1: i64, m: usize, theta: &TorusPoint) -> Result<ComplexValue> {
    if p == 0 || q == 0 || m > 1 {
        return Err(Error::InvalidArgument(format!("closed form needs p, q ≥ 1 and m ∈ {{0, 1}}; got p={p}, q={q}, m={m}")));
    }
    let big = p + q;
    if theta.len() != big {
        return Err(Error::DimensionMismatch {
            expected: big,
            got: theta.len(),
        });
    }
    let t = theta.angles();
    let h: Vec<Complex64> = t.iter().map(|&x| Complex64::from_polar(1.0, x)).collect();
    let k = p as i64 - lambda1 - 1;
    let range = if m == 1 { 0..p } else { p..big };
    let mut sum = Complex64::zero();
    for b in range {
        let mut den = Complex64::one();
        for a in (0..big).filter(|&a| a != b) {
            let d = h[b] - h[a];
            if d.norm() < DEFAULT_REGULARITY_TOL {
                return Err(Error::SingularPoint);
            }
            den *= d;
        }
        sum += h[b].powi(k as i32) / den;
    }
    let half = Complex64::from_polar(1.0, 0.5 * t.iter().sum::<f64>());
    torus::finite(half * sum)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VandermondeMode {
    /// Exact evaluation at `trials` random rational points.
    RandomRational { seed: u64, trials: usize },
    /// Exhaustive evaluation of the cleared identity on a grid large enough
    /// to force the polynomial to vanish identically.
    DeterministicGrid,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(String),
    /// `k` lies outside `[0, p+q−2]`, where the identity is not claimed.
    NotInAssertedRange,
}

fn vandermonde_side(range: std::ops::Range<usize>, total: usize, k: i64) -> RationalFunction {
    let terms = range
        .map(|b| {
            let den = (0..total)
                .filter(|&a| a != b)
                .map(|a| RationalFunction::diff(RationalFunction::var(b), RationalFunction::var(a)))
                .collect();
            RationalFunction::quotient(RationalFunction::var(b).pow(k), RationalFunction::Product(den))
        })
        .collect();
    RationalFunction::Sum(terms)
}

/// `(Σ_{b>p} h_b^k/Π_{a≠b}(h_b−h_a), −Σ_{b≤p} h_b^k/Π_{a≠b}(h_b−h_a))` at an exact point.
pub fn vandermonde_sides(p: usize, q: usize, k: i64, point: &RationalPoint) -> Result<(BigRational, BigRational)> {
    let total = p + q;
    let lhs = vandermonde_side(p..total, total, k).eval_exact(point)?;
    let rhs = -vandermonde_side(0..p, total, k).eval_exact(point)?;
    Ok((lhs, rhs))
}

/// Whether `F_k = Σ_b (−1)^b h_b^k Π_{a<c; a,c≠b} (h_a − h_c)` is the zero polynomial.
///
/// `F_k` has degree at most `d = max(k, total − 2)` in each variable, so it
/// vanishes identically iff it vanishes on `{0..d}^total`.
pub fn cleared_sum_vanishes_on_grid(total: usize, k: u32) -> bool {
    assert!(total <= VANDERMONDE_GRID_MAX, "grid proof supports p+q ≤ {VANDERMONDE_GRID_MAX}");
    if total < 2 {
        return true;
    }
    let side = (k as u64).max(total as u64 - 2) + 1;
    let points = side.pow(total as u32);
    (0..points).into_par_iter().all(|mut idx| {
        let mut h = [0i128; VANDERMONDE_GRID_MAX];
        for x in h.iter_mut().take(total) {
            *x = (idx % side) as i128;
            idx /= side;
        }
        let mut acc: i128 = 0;
        for b in 0..total {
            let mut prod: i128 = 1;
            for a in (0..total).filter(|&a| a != b) {
                for c in (a + 1..total).filter(|&c| c != b) {
                    prod *= h[a] - h[c];
                }
                if prod == 0 {
                    break;
                }
            }
            let term = prod * h[b].pow(k);
            acc += if b % 2 == 0 { term } else { -term };
        }
        acc == 0
    })
}

fn grid_certificate(total: usize, k: u32) -> bool {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u32), bool>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(&v) = cache.lock().expect("cache poisoned").get(&(total, k)) {
        return v;
    }
    let v = cleared_sum_vanishes_on_grid(total, k);
    cache.lock().expect("cache poisoned").insert((total, k), v);
    v
}

/// Largest `p+q` accepted by the grid proof.
pub const VANDERMONDE_GRID_MAX: usize = 8;

/// Checks `Σ_{b=p+1}^{p+q} h_b^k/Π_{a≠b}(h_b−h_a) = −Σ_{b=1}^{p} h_b^k/Π_{a≠b}(h_b−h_a)`.
///
/// The grid mode depends only on `p+q` and `k`: the two sides differ by the
/// full sum, whose cleared form is checked once per `(p+q, k)`.
pub fn vandermonde_identity_check(p: usize, q: usize, k: i64, mode: VandermondeMode) -> Result<Verdict> {
    if p == 0 || q == 0 {
        return Err(Error::InvalidArgument("p and q must be positive".into()));
    }
    let total = p + q;
    if k < 0 || k > total as i64 - 2 {
        return Ok(Verdict::NotInAssertedRange);
    }
    match mode {
        VandermondeMode::DeterministicGrid => {
            if total > VANDERMONDE_GRID_MAX {
                return Err(Error::CapExceeded {
                    what: format!("grid proof for p+q = {total}"),
                    cap: VANDERMONDE_GRID_MAX,
                });
            }
            Ok(if grid_certificate(total, k as u32) {
                Verdict::Holds
            } else {
                Verdict::Fails(format!("cleared sum nonzero on the grid for p+q = {total}, k = {k}"))
            })
        }
        VandermondeMode::RandomRational { seed, trials } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..trials {
                let mut coords: Vec<BigRational> = Vec::with_capacity(total);
                while coords.len() < total {
                    let x = BigRational::new(BigInt::from(rng.gen_range(-60i64..=60)), BigInt::from(rng.gen_range(1i64..=24)));
                    if !coords.contains(&x) {
                        coords.push(x);
                    }
                }
                let point = RationalPoint(coords);
                let (lhs, rhs) = vandermonde_sides(p, q, k, &point)?;
                if lhs != rhs {
                    return Ok(Verdict::Fails(format!("{lhs} ≠ {rhs} at {:?}", point.0)));
                }
            }
            Ok(Verdict::Holds)
        }
    }
}

/// `P/Δ₊` expanded in the chamber `(N, …, 1)`, exact at all pairings within
/// `depth` of its highest nonzero term; returns the series and that top pairing.
pub fn compact_series(tc: &ThetaCharacter, depth: Rational) -> Result<(LaurentSeries, Rational)> {
    if depth.is_negative() {
        return Err(Error::InvalidArgument("depth must be non-negative".into()));
    }
    let chamber = laurent::default_chamber(tc.pair.gprime_rank());
    let poly = numerator_polynomial(tc, &chamber)?;
    let noncompact = tc.rs_gprime.noncompact_positive_roots();
    let Some(poly_top) = poly.leading_pairing() else {
        return Err(Error::FormulaInconsistency("numerator polynomial vanishes".into()));
    };
    let drop: Rational = noncompact.iter().map(|b| b.pair_int(&chamber)).sum::<Rational>() / Rational::from_integer(2);
    let mut top = poly_top - drop;
    loop {
        let floor = top - depth;
        let mut ser = poly.retruncate(-floor);
        for beta in &noncompact {
            let Some(hi) = ser.leading_pairing() else { break };
            let width = (hi - floor).max(Rational::zero());
            let factor = laurent::expand_inverse_root_factor(beta, &chamber, width)?;
            let wide = width.max(-floor);
            ser = laurent::series_mul(&ser.retruncate(wide), &factor.retruncate(wide))?.retruncate(-floor);
        }
        match ser.leading_pairing() {
            Some(actual) if actual < top => top = actual,
            Some(actual) => return Ok((ser, actual)),
            None => return Err(Error::FormulaInconsistency("expansion vanishes to the requested depth".into())),
        }
    }
}

fn strictly_dominant(blocks: &[Vec<usize>], e: &Weight) -> bool {
    blocks.iter().all(|b| b.windows(2).all(|w| e[w[0]] > e[w[1]]))
}

/// `K′`-types of `Π′` down to `depth` below the minimal one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KTypeExpansion {
    /// `C` with `C·P/Δ₊` having minimal `K′`-type multiplicity 1.
    pub constant: Rational,
    pub minimal: Weight,
    pub multiplicities: BTreeMap<Weight, i64>,
}

pub fn ktype_expansion(tc: &ThetaCharacter, depth: i64) -> Result<KTypeExpansion> {
    let (ser, top) = compact_series(tc, Rational::from_integer(depth))?;
    let blocks = tc.pair.kprime_blocks();
    let rho_k = rootsys::rho(&tc.pair.rs_kprime());
    let top_term = ser.terms().find(|(e, _)| ser.pairing(e) == top).map(|(e, c)| (e.clone(), *c));
    let Some((top_exp, top_coef)) = top_term.filter(|(e, _)| strictly_dominant(&blocks, e)) else {
        return Err(Error::FormulaInconsistency("highest term is not K′-dominant".into()));
    };
    let constant = top_coef.recip();
    let mut multiplicities = BTreeMap::new();
    for (e, c) in ser.terms() {
        if !strictly_dominant(&blocks, e) {
            continue;
        }
        let mult = c * constant;
        if !mult.is_integer() || mult.is_negative() {
            return Err(Error::FormulaInconsistency(format!("multiplicity {mult} at {e}")));
        }
        multiplicities.insert(e - &rho_k, mult.to_integer());
    }
    Ok(KTypeExpansion {
        constant,
        minimal: &top_exp - &rho_k,
        multiplicities,
    })
}

fn inverse_constant(tc: &ThetaCharacter, shifted: &Weight, kprime: &RootSystem, depth: Rational) -> Result<Rational> {
    let (ser, _) = compact_series(tc, depth)?;
    let mut acc = Rational::zero();
    for sigma in rootsys::weyl_elements(kprime)? {
        acc += ser.coefficient(&rootsys::act(&sigma, shifted)?) * Rational::from_integer(rootsys::sign(&sigma));
    }
    Ok(acc / Rational::from_integer(kprime.weyl_order() as i64))
}

/// `C` from `C⁻¹ = (1/|W(K′)|) Σ_σ sgn(σ)·[h^{σ(λ+ρ_K′)}] P/Δ₊`.
pub fn normalizing_constant(tc: &ThetaCharacter, lambda_min: &Weight, depth: i64) -> Result<Rational> {
    let kprime = tc.pair.rs_kprime();
    if lambda_min.len() != kprime.rank {
        return Err(Error::DimensionMismatch {
            expected: kprime.rank,
            got: lambda_min.len(),
        });
    }
    if !kprime.is_dominant(lambda_min) {
        return Err(Error::NotDominant(lambda_min.to_string()));
    }
    let shifted = lambda_min + &rootsys::rho(&kprime);
    let at = inverse_constant(tc, &shifted, &kprime, Rational::from_integer(depth))?;
    let later = inverse_constant(tc, &shifted, &kprime, Rational::from_integer(depth + 5))?;
    if at != later {
        return Err(Error::TruncationTooSmall(at.to_string(), later.to_string()));
    }
    if at.is_zero() {
        return Err(Error::NotMinimalKType(lambda_min.to_string()));
    }
    Ok(at.recip())
}
