//! Weyl character and dimension formulas, a Gelfand–Tsetlin oracle for
//! `U(n)` characters, and torus quadrature for inner products of class
//! functions.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rootsys::{self, RootSystem};
use crate::torus::{self, TorusPoint, Weight, DEFAULT_REGULARITY_TOL};
use crate::ComplexValue;

/// Largest `|λ|` accepted by the Gelfand–Tsetlin oracle.
pub const SCHUR_MAX_SIZE: i64 = 12;
/// Largest number of variables accepted by the Gelfand–Tsetlin oracle.
pub const SCHUR_MAX_VARS: usize = 5;

fn require_dominant(rs: &RootSystem, lambda: &Weight) -> Result<()> {
    if lambda.len() != rs.rank {
        return Err(Error::DimensionMismatch {
            expected: rs.rank,
            got: lambda.len(),
        });
    }
    if rs.is_dominant(lambda) {
        Ok(())
    } else {
        Err(Error::NotDominant(lambda.to_string()))
    }
}

/// `Σ_w sgn(w) e^{i⟨w(λ+ρ), θ⟩} / Π_{α>0} (e^{iα(θ)/2} − e^{−iα(θ)/2})`.
pub fn weyl_character(rs: &RootSystem, lambda: &Weight, theta: &TorusPoint) -> Result<ComplexValue> {
    require_dominant(rs, lambda)?;
    if theta.len() != rs.rank {
        return Err(Error::DimensionMismatch {
            expected: rs.rank,
            got: theta.len(),
        });
    }
    if !torus::is_regular(rs, theta, DEFAULT_REGULARITY_TOL) {
        return Err(Error::SingularPoint);
    }
    let shifted = lambda + &rootsys::rho(rs);
    let mut num = Complex64::zero();
    for w in rootsys::weyl_elements(rs)? {
        let e = rootsys::act(&w, &shifted)?;
        num += Complex64::from_polar(rootsys::sign(&w) as f64, e.pair_angles(theta.angles()));
    }
    torus::finite(num / torus::weyl_denominator(rs, theta)?)
}

fn big(r: crate::Rational) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// `Π_{α>0} ⟨λ+ρ, α⟩ / ⟨ρ, α⟩` in exact arithmetic.
pub fn weyl_dimension(rs: &RootSystem, lambda: &Weight) -> Result<u128> {
    require_dominant(rs, lambda)?;
    let rho = rootsys::rho(rs);
    let shifted = lambda + &rho;
    let mut acc = BigRational::one();
    for a in &rs.positive_roots {
        acc *= big(shifted.dot(a)) / big(rho.dot(a));
    }
    assert!(acc.is_integer(), "Weyl dimension {acc} is not integral");
    acc.to_integer()
        .to_u128()
        .ok_or_else(|| Error::InvalidArgument("dimension exceeds u128".into()))
}

fn check_partition(lambda: &[i64]) -> Result<()> {
    if lambda.windows(2).any(|p| p[0] < p[1]) || lambda.iter().any(|&x| x < 0) {
        return Err(Error::NotDominant(format!("{lambda:?}")));
    }
    let size: i64 = lambda.iter().sum();
    if size > SCHUR_MAX_SIZE || lambda.len() > SCHUR_MAX_VARS {
        return Err(Error::CapExceeded {
            what: format!("partition {lambda:?}"),
            cap: SCHUR_MAX_SIZE as usize,
        });
    }
    Ok(())
}

/// Weight vectors of all Gelfand–Tsetlin patterns with top row `λ`.
///
/// Entry `k` of a weight is `|row_{k+1}| − |row_k|`, where `row_k` has length `k`.
pub fn gelfand_tsetlin_weights(lambda: &[i64]) -> Result<Vec<Vec<i64>>> {
    check_partition(lambda)?;
    let n = lambda.len();
    let mut out = Vec::new();
    let mut rows: Vec<Vec<i64>> = vec![Vec::new(); n + 1];
    rows[n] = lambda.to_vec();
    fill_rows(n, &mut rows, &mut out);
    Ok(out)
}

fn fill_rows(level: usize, rows: &mut Vec<Vec<i64>>, out: &mut Vec<Vec<i64>>) {
    if level == 0 {
        let sums: Vec<i64> = rows.iter().map(|r| r.iter().sum()).collect();
        out.push((1..rows.len()).map(|k| sums[k] - sums[k - 1]).collect());
        return;
    }
    let upper = rows[level].clone();
    let len = level - 1;
    let mut row = vec![0i64; len];
    interlace(&upper, 0, &mut row, level, rows, out);
}

fn interlace(
    upper: &[i64],
    i: usize,
    row: &mut Vec<i64>,
    level: usize,
    rows: &mut Vec<Vec<i64>>,
    out: &mut Vec<Vec<i64>>,
) {
    if i == row.len() {
        rows[level - 1] = row.clone();
        fill_rows(level - 1, rows, out);
        return;
    }
    for v in upper[i + 1]..=upper[i] {
        row[i] = v;
        interlace(upper, i + 1, row, level, rows, out);
    }
}

/// Number of Gelfand–Tsetlin patterns with top row `λ`.
pub fn gelfand_tsetlin_count(lambda: &[i64]) -> Result<u64> {
    Ok(gelfand_tsetlin_weights(lambda)?.len() as u64)
}

/// Schur polynomial `s_λ(x)` as a sum over Gelfand–Tsetlin patterns.
pub fn schur_oracle(lambda: &[i64], x: &[ComplexValue]) -> Result<ComplexValue> {
    if x.len() != lambda.len() {
        return Err(Error::DimensionMismatch {
            expected: lambda.len(),
            got: x.len(),
        });
    }
    let mut acc = Complex64::zero();
    for wt in gelfand_tsetlin_weights(lambda)? {
        acc += wt
            .iter()
            .zip(x)
            .map(|(&k, z)| z.powi(k as i32))
            .product::<Complex64>();
    }
    torus::finite(acc)
}

/// Exact Schur polynomial at a rational point.
pub fn schur_oracle_exact(lambda: &[i64], x: &[BigRational]) -> Result<BigRational> {
    if x.len() != lambda.len() {
        return Err(Error::DimensionMismatch {
            expected: lambda.len(),
            got: x.len(),
        });
    }
    let mut acc = BigRational::zero();
    for wt in gelfand_tsetlin_weights(lambda)? {
        let mut term = BigRational::one();
        for (&k, z) in wt.iter().zip(x) {
            term *= num_traits::pow(z.clone(), k as usize);
        }
        acc += term;
    }
    Ok(acc)
}

/// Uniform product grid on the torus with `n` points per angle.
///
/// Axis `k` of `r` is shifted by `π(1 + k/r)/n`, so no two axes share a
/// lattice and no root of type A–D vanishes on a grid point when `n` is even.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadratureGrid {
    pub n: usize,
    pub rank: usize,
}

impl QuadratureGrid {
    pub fn new(n: usize, rank: usize) -> Result<QuadratureGrid> {
        if n < 2 {
            return Err(Error::InvalidArgument("quadrature needs at least 2 points per axis".into()));
        }
        Ok(QuadratureGrid { n, rank })
    }

    pub fn len(&self) -> usize {
        self.n.pow(self.rank as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn point(&self, mut index: usize) -> Vec<f64> {
        let step = 2.0 * PI / self.n as f64;
        (0..self.rank)
            .map(|k| {
                let j = index % self.n;
                index /= self.n;
                let offset = PI * (1.0 + k as f64 / self.rank as f64) / self.n as f64;
                j as f64 * step + offset
            })
            .collect()
    }
}

/// Class-function evaluator on a torus.
pub type ClassFunction<'a> = dyn Fn(&TorusPoint) -> Result<ComplexValue> + Sync + 'a;

/// `(1/|W|)·avg f·conj(g)·|Δ|²` for a family of class functions at once.
///
/// Points where an evaluator reports a singular point are skipped; more than
/// 1% skipped points is an error.
pub fn torus_gram_matrix(fs: &[&ClassFunction<'_>], rs_k: &RootSystem, grid: QuadratureGrid) -> Result<Vec<Vec<ComplexValue>>> {
    if grid.rank != rs_k.rank {
        return Err(Error::DimensionMismatch {
            expected: rs_k.rank,
            got: grid.rank,
        });
    }
    let k = fs.len();
    let mut acc = vec![vec![Complex64::zero(); k]; k];
    let mut skipped = 0usize;
    let mut values = vec![Complex64::zero(); k];
    'points: for idx in 0..grid.len() {
        let theta = TorusPoint::new(grid.point(idx))?;
        for (v, f) in values.iter_mut().zip(fs) {
            match f(&theta) {
                Ok(z) => *v = z,
                Err(Error::SingularPoint) => {
                    skipped += 1;
                    continue 'points;
                }
                Err(e) => return Err(e),
            }
        }
        let weight = torus::weyl_denominator(rs_k, &theta)?.norm_sqr();
        for i in 0..k {
            let wi = values[i] * weight;
            for j in 0..k {
                acc[i][j] += wi * values[j].conj();
            }
        }
    }
    if skipped * 100 > grid.len() {
        return Err(Error::QuadratureUnreliable {
            skipped,
            total: grid.len(),
        });
    }
    let scale = 1.0 / (grid.len() as f64 * rs_k.weyl_order() as f64);
    Ok(acc
        .into_iter()
        .map(|row| row.into_iter().map(|z| z * scale).collect())
        .collect())
}

pub fn torus_inner_product(f: &ClassFunction<'_>, g: &ClassFunction<'_>, rs_k: &RootSystem, grid: QuadratureGrid) -> Result<ComplexValue> {
    Ok(torus_gram_matrix(&[f, g], rs_k, grid)?[0][1])
}

/// Whether every coordinate is a non-negative integer and the sequence weakly decreases.
pub fn is_partition(lambda: &Weight) -> bool {
    lambda.is_integral()
        && lambda.coords().iter().all(|c| !c.is_negative())
        && lambda.coords().windows(2).all(|p| p[0] >= p[1])
}
