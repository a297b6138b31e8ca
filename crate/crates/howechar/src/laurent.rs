//! Exact formal Laurent sums in the torus variables `h_1, …, h_r` with
//! rational (possibly half-integral) exponents.
//!
//! A series carries a chamber vector `d` and a truncation `T`: terms whose
//! exponent pairs with `d` below `-T` are discarded. Inverse root factors are
//! expanded as geometric series that move away from `d`, so every term of such
//! an expansion has negative pairing and products never lift discarded terms
//! back above the horizon.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::torus::{self, TorusPoint, Weight};
use crate::{ComplexValue, Rational};

/// Default truncation bound.
pub const DEFAULT_TRUNCATION: i64 = 40;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    terms: BTreeMap<Weight, Rational>,
    chamber: Vec<i64>,
    truncation: Rational,
}

/// The default chamber `(r, r−1, …, 1)`.
pub fn default_chamber(rank: usize) -> Vec<i64> {
    (1..=rank as i64).rev().collect()
}

impl LaurentSeries {
    pub fn zero(chamber: Vec<i64>, truncation: Rational) -> LaurentSeries {
        LaurentSeries {
            terms: BTreeMap::new(),
            chamber,
            truncation,
        }
    }

    pub fn monomial(exponent: Weight, coeff: Rational, chamber: Vec<i64>, truncation: Rational) -> LaurentSeries {
        let mut s = LaurentSeries::zero(chamber, truncation);
        s.add_term(exponent, coeff);
        s
    }

    pub fn one(chamber: Vec<i64>, truncation: Rational) -> LaurentSeries {
        let r = chamber.len();
        LaurentSeries::monomial(Weight::zeros(r), Rational::one(), chamber, truncation)
    }

    pub fn rank(&self) -> usize {
        self.chamber.len()
    }

    pub fn chamber(&self) -> &[i64] {
        &self.chamber
    }

    pub fn truncation(&self) -> Rational {
        self.truncation
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponent: &Weight) -> Rational {
        self.terms.get(exponent).copied().unwrap_or_else(Rational::zero)
    }

    pub fn pairing(&self, exponent: &Weight) -> Rational {
        exponent.pair_int(&self.chamber)
    }

    /// Largest chamber pairing among stored terms.
    pub fn leading_pairing(&self) -> Option<Rational> {
        self.terms.keys().map(|e| self.pairing(e)).max()
    }

    fn keeps(&self, exponent: &Weight) -> bool {
        self.pairing(exponent) >= -self.truncation
    }

    /// Adds `coeff·h^exponent`, respecting the truncation and dropping zeros.
    pub fn add_term(&mut self, exponent: Weight, coeff: Rational) {
        assert_eq!(exponent.len(), self.rank(), "exponent length mismatch");
        if coeff.is_zero() || !self.keeps(&exponent) {
            return;
        }
        match self.terms.entry(exponent) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Same terms under a different truncation.
    pub fn retruncate(&self, truncation: Rational) -> LaurentSeries {
        let mut out = LaurentSeries::zero(self.chamber.clone(), truncation);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), *c);
        }
        out
    }

    fn compatible(&self, other: &LaurentSeries) -> Result<Rational> {
        if self.rank() != other.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: other.rank(),
            });
        }
        if self.chamber != other.chamber {
            return Err(Error::ChamberMismatch);
        }
        Ok(self.truncation.min(other.truncation))
    }

    pub fn scale(&self, s: Rational) -> LaurentSeries {
        let mut out = LaurentSeries::zero(self.chamber.clone(), self.truncation);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * s);
        }
        out
    }

    /// Evaluates the finite sum at a torus point (literal exponents).
    pub fn eval_angles(&self, theta: &TorusPoint) -> Result<ComplexValue> {
        let mut acc = Complex64::zero();
        for (e, c) in &self.terms {
            acc += torus::eval_monomial(theta, e)? * torus::to_f64(*c);
        }
        torus::finite(acc)
    }
}

pub fn series_add(a: &LaurentSeries, b: &LaurentSeries) -> Result<LaurentSeries> {
    let t = a.compatible(b)?;
    let mut out = a.retruncate(t);
    for (e, c) in &b.terms {
        out.add_term(e.clone(), *c);
    }
    Ok(out)
}

pub fn series_sub(a: &LaurentSeries, b: &LaurentSeries) -> Result<LaurentSeries> {
    series_add(a, &b.scale(-Rational::one()))
}

pub fn series_mul(a: &LaurentSeries, b: &LaurentSeries) -> Result<LaurentSeries> {
    let t = a.compatible(b)?;
    let mut out = LaurentSeries::zero(a.chamber.clone(), t);
    for (ea, ca) in &a.terms {
        for (eb, cb) in &b.terms {
            out.add_term(ea + eb, ca * cb);
        }
    }
    Ok(out)
}

/// Expansion of `1/(h^{β/2} − h^{−β/2})` in the direction of `chamber`.
///
/// For `⟨β, d⟩ > 0` this is `h^{−β/2} Σ_k h^{−kβ}`; otherwise
/// `−h^{β/2} Σ_k h^{kβ}`. Terms with pairing below `−T` are dropped.
pub fn expand_inverse_root_factor(beta: &Weight, chamber: &[i64], truncation: Rational) -> Result<LaurentSeries> {
    if beta.len() != chamber.len() {
        return Err(Error::DimensionMismatch {
            expected: chamber.len(),
            got: beta.len(),
        });
    }
    let p = beta.pair_int(chamber);
    if p.is_zero() {
        return Err(Error::NonConvergentDirection(beta.to_string()));
    }
    let (step, sign) = if p.is_positive() {
        (-beta, Rational::one())
    } else {
        (beta.clone(), -Rational::one())
    };
    let mut out = LaurentSeries::zero(chamber.to_vec(), truncation);
    let mut e = step.scale(Rational::new(1, 2));
    while e.pair_int(chamber) >= -truncation {
        out.add_term(e.clone(), sign);
        e = &e + &step;
    }
    Ok(out)
}

/// Substitution values for `h_1, …, h_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPoint(pub Vec<BigRational>);

impl RationalPoint {
    pub fn from_ints(v: &[i64]) -> RationalPoint {
        RationalPoint(v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
    }

    pub fn from_ratios(v: &[(i64, i64)]) -> RationalPoint {
        RationalPoint(
            v.iter()
                .map(|&(a, b)| BigRational::new(BigInt::from(a), BigInt::from(b)))
                .collect(),
        )
    }
}

fn pow_exact(x: &BigRational, k: i64) -> Result<BigRational> {
    if k >= 0 {
        return Ok(num_traits::pow(x.clone(), k as usize));
    }
    if x.is_zero() {
        return Err(Error::PoleAtPoint);
    }
    Ok(num_traits::pow(x.recip(), (-k) as usize))
}

/// Symbolic rational function in the torus variables, evaluated exactly.
#[derive(Clone, Debug, PartialEq)]
pub enum RationalFunction {
    Const(BigRational),
    Var(usize),
    Pow(Box<RationalFunction>, i64),
    Neg(Box<RationalFunction>),
    Sum(Vec<RationalFunction>),
    Product(Vec<RationalFunction>),
    Quotient(Box<RationalFunction>, Box<RationalFunction>),
}

impl RationalFunction {
    pub fn var(k: usize) -> RationalFunction {
        RationalFunction::Var(k)
    }

    pub fn pow(self, k: i64) -> RationalFunction {
        RationalFunction::Pow(Box::new(self), k)
    }

    pub fn diff(a: RationalFunction, b: RationalFunction) -> RationalFunction {
        RationalFunction::Sum(vec![a, RationalFunction::Neg(Box::new(b))])
    }

    pub fn quotient(a: RationalFunction, b: RationalFunction) -> RationalFunction {
        RationalFunction::Quotient(Box::new(a), Box::new(b))
    }
}

/// Exact evaluation at a rational point.
pub trait ExactEval {
    fn eval_exact(&self, p: &RationalPoint) -> Result<BigRational>;
}

impl ExactEval for RationalFunction {
    fn eval_exact(&self, p: &RationalPoint) -> Result<BigRational> {
        use RationalFunction::*;
        Ok(match self {
            Const(c) => c.clone(),
            Var(k) => p
                .0
                .get(*k)
                .cloned()
                .ok_or(Error::DimensionMismatch { expected: k + 1, got: p.0.len() })?,
            Pow(f, k) => pow_exact(&f.eval_exact(p)?, *k)?,
            Neg(f) => -f.eval_exact(p)?,
            Sum(fs) => {
                let mut acc = BigRational::zero();
                for f in fs {
                    acc += f.eval_exact(p)?;
                }
                acc
            }
            Product(fs) => {
                let mut acc = BigRational::one();
                for f in fs {
                    acc *= f.eval_exact(p)?;
                }
                acc
            }
            Quotient(a, b) => {
                let den = b.eval_exact(p)?;
                if den.is_zero() {
                    return Err(Error::PoleAtPoint);
                }
                a.eval_exact(p)? / den
            }
        })
    }
}

impl ExactEval for LaurentSeries {
    fn eval_exact(&self, p: &RationalPoint) -> Result<BigRational> {
        if p.0.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: p.0.len(),
            });
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = BigRational::new(BigInt::from(*c.numer()), BigInt::from(*c.denom()));
            for (x, k) in p.0.iter().zip(e.coords()) {
                if !k.is_integer() {
                    return Err(Error::NonIntegralExponent(e.to_string()));
                }
                term *= pow_exact(x, k.to_integer())?;
            }
            acc += term;
        }
        Ok(acc)
    }
}

pub fn eval_exact<T: ExactEval + ?Sized>(f: &T, p: &RationalPoint) -> Result<BigRational> {
    f.eval_exact(p)
}
