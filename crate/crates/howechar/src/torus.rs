//! Weights, torus points and the numeric evaluation of monomials and Weyl
//! denominators on a compact torus.
//!
//! Angles are stored in the canonical window `(-π, π]`. Half-integral
//! exponents are evaluated literally on that representative, so `h^μ` for
//! half-integral `μ` depends on the representative; this is the double-cover
//! convention. Integral exponent combinations are genuine torus functions.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rootsys::{self, RootSystem};
use crate::{ComplexValue, Rational};

/// Default lower bound on `|sin(α(θ)/2)|` for a point to count as regular.
pub const DEFAULT_REGULARITY_TOL: f64 = 1e-9;

/// Rational coordinate vector in the `e_k` basis; denominators are 1 or 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Vec<Rational>);

impl Weight {
    pub fn new(coords: Vec<Rational>) -> Result<Weight> {
        if let Some(bad) = coords.iter().find(|c| *c.denom() != 1 && *c.denom() != 2) {
            return Err(Error::BadDenominator(bad.to_string()));
        }
        Ok(Weight(coords))
    }

    pub(crate) fn from_rationals_unchecked(coords: Vec<Rational>) -> Weight {
        debug_assert!(coords.iter().all(|c| *c.denom() <= 2));
        Weight(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Weight {
        Weight(coords.iter().map(|&c| Rational::from_integer(c)).collect())
    }

    pub fn zeros(n: usize) -> Weight {
        Weight(vec![Rational::zero(); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &Weight) -> Rational {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// Pairing with an integer direction such as a chamber vector.
    pub fn pair_int(&self, d: &[i64]) -> Rational {
        self.0
            .iter()
            .zip(d)
            .map(|(a, &b)| a * Rational::from_integer(b))
            .sum()
    }

    /// `⟨μ, θ⟩` as a real number.
    pub fn pair_angles(&self, theta: &[f64]) -> f64 {
        self.0
            .iter()
            .zip(theta)
            .map(|(a, t)| to_f64(*a) * t)
            .sum()
    }

    /// Multiplies by a rational; the result must keep denominators 1 or 2.
    pub fn scale(&self, s: Rational) -> Weight {
        Weight::from_rationals_unchecked(self.0.iter().map(|c| c * s).collect())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|c| to_f64(*c)).collect()
    }

    /// Places `self` at positions `at` of a zero vector of length `len`.
    pub fn embed(&self, len: usize, at: &[usize]) -> Weight {
        let mut out = vec![Rational::zero(); len];
        for (v, &k) in self.0.iter().zip(at) {
            out[k] = *v;
        }
        Weight(out)
    }
}

pub(crate) fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

impl Index<usize> for Weight {
    type Output = Rational;
    fn index(&self, k: usize) -> &Rational {
        &self.0[k]
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.len(), rhs.len(), "weight length mismatch");
        Weight::from_rationals_unchecked(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        assert_eq!(self.len(), rhs.len(), "weight length mismatch");
        Weight::from_rationals_unchecked(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight::from_rationals_unchecked(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Reduces an angle into `(-π, π]`.
pub fn canonical_angle(t: f64) -> f64 {
    let mut r = t % (2.0 * PI);
    if r <= -PI {
        r += 2.0 * PI;
    }
    if r > PI {
        r -= 2.0 * PI;
    }
    r
}

/// Point of a compact torus given by its canonical angles.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusPoint(Vec<f64>);

impl TorusPoint {
    pub fn new(angles: Vec<f64>) -> Result<TorusPoint> {
        if angles.iter().any(|a| !a.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(TorusPoint(angles.into_iter().map(canonical_angle).collect()))
    }

    pub fn angles(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `w·θ` with the weight action rule, re-canonicalised.
    pub fn act(&self, w: &rootsys::WeylElement) -> TorusPoint {
        TorusPoint(w.act_angles(&self.0).into_iter().map(canonical_angle).collect())
    }
}

fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

pub(crate) fn finite(z: Complex64) -> Result<ComplexValue> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite)
    }
}

/// `e^{i⟨μ, θ⟩}` on the stored representative.
pub fn eval_monomial(theta: &TorusPoint, mu: &Weight) -> Result<ComplexValue> {
    check_len(theta.len(), mu.len())?;
    finite(Complex64::from_polar(1.0, mu.pair_angles(&theta.0)))
}

/// `e^{iα(θ)/2} − e^{−iα(θ)/2} = 2i·sin(α(θ)/2)`.
pub(crate) fn root_factor(alpha: &Weight, theta: &[f64]) -> Complex64 {
    Complex64::new(0.0, 2.0 * (0.5 * alpha.pair_angles(theta)).sin())
}

/// Product of root factors over the positive roots selected by `select`.
pub fn restricted_denominator(
    rs: &RootSystem,
    select: impl Fn(&Weight) -> bool,
    theta: &TorusPoint,
) -> Result<ComplexValue> {
    check_len(rs.rank, theta.len())?;
    let z = rs
        .positive_roots
        .iter()
        .filter(|a| select(a))
        .map(|a| root_factor(a, &theta.0))
        .product();
    finite(z)
}

pub fn weyl_denominator(rs: &RootSystem, theta: &TorusPoint) -> Result<ComplexValue> {
    restricted_denominator(rs, |_| true, theta)
}

/// The alternating form `Σ_w sgn(w) e^{i⟨wρ, θ⟩}` of the Weyl denominator.
pub fn weyl_denominator_alternating(rs: &RootSystem, theta: &TorusPoint) -> Result<ComplexValue> {
    check_len(rs.rank, theta.len())?;
    let rho = rootsys::rho(rs);
    let mut acc = Complex64::zero();
    for w in rootsys::weyl_elements(rs)? {
        let e = rootsys::act(&w, &rho)?;
        acc += Complex64::from_polar(rootsys::sign(&w) as f64, e.pair_angles(&theta.0));
    }
    finite(acc)
}

pub fn is_regular(rs: &RootSystem, theta: &TorusPoint, tol: f64) -> bool {
    rs.positive_roots
        .iter()
        .all(|a| (0.5 * a.pair_angles(&theta.0)).sin().abs() >= tol)
}

/// Parses `"a"`, `"a/b"` or a decimal with at most one half, such as `"-1.5"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim().replace('\u{2212}', "-");
    let bad = || Error::InvalidArgument(format!("cannot parse rational {s:?}"));
    if let Some((a, b)) = s.split_once('/') {
        let a: i64 = a.trim().parse().map_err(|_| bad())?;
        let b: i64 = b.trim().parse().map_err(|_| bad())?;
        if b == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(a, b));
    }
    if let Ok(a) = s.parse::<i64>() {
        return Ok(Rational::from_integer(a));
    }
    let x: f64 = s.parse().map_err(|_| bad())?;
    let twice = 2.0 * x;
    if twice.is_finite() && twice.fract() == 0.0 {
        return Ok(Rational::new(twice as i64, 2));
    }
    Err(bad())
}

/// Parses a comma-separated weight.
pub fn parse_weight(s: &str) -> Result<Weight> {
    let coords = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(parse_rational)
        .collect::<Result<Vec<_>>>()?;
    Weight::new(coords)
}
