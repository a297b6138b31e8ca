//! Fourier transforms of coadjoint orbits through the finite Weyl-sum
//! formula, with two independent oracles for `U(n)`: Haar Monte-Carlo and the
//! HCIZ determinant.
//!
//! Points of the torus algebra are `X = i·diag(x)`; pairings use the trace form.

use std::collections::BTreeSet;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::howe::PairKind;
use crate::rootsys::{self, Family, RootSystem};
use crate::torus::{self, Weight, DEFAULT_REGULARITY_TOL};
use crate::{ComplexValue, Rational};

/// Orbit parameter `λ` with `P_λ = {α : ⟨λ, α⟩ > 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitParameter {
    pub lambda: Weight,
    pub p_lambda: Vec<Weight>,
    pub n_noncompact: usize,
    rs_k: RootSystem,
}

impl OrbitParameter {
    /// `rs_k` is the compact subsystem; roots of `rs_g` outside it count as non-compact.
    pub fn new(rs_g: &RootSystem, rs_k: &RootSystem, lambda: Weight) -> Result<OrbitParameter> {
        if lambda.len() != rs_g.rank || rs_k.rank != rs_g.rank {
            return Err(Error::DimensionMismatch {
                expected: rs_g.rank,
                got: lambda.len(),
            });
        }
        let mut p_lambda = Vec::new();
        let mut n_noncompact = 0;
        for a in &rs_g.positive_roots {
            let s = lambda.dot(a);
            if s.is_zero() {
                continue;
            }
            let root = if s.is_positive() { a.clone() } else { -a };
            if !rs_k.positive_roots.contains(a) {
                n_noncompact += 1;
            }
            p_lambda.push(root);
        }
        Ok(OrbitParameter {
            lambda,
            p_lambda,
            n_noncompact,
            rs_k: rs_k.clone(),
        })
    }

    /// Orbit of `λ` under `U(n)`, acting on itself.
    pub fn unitary(lambda: Weight) -> Result<OrbitParameter> {
        let rs = rootsys::build_root_system(Family::A, lambda.len())?;
        OrbitParameter::new(&rs, &rs, lambda)
    }
}

/// `B(x, y) = scale·Σ x_k y_k` on torus coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BilinearFormB {
    pub scale: f64,
}

impl BilinearFormB {
    pub fn for_pair(kind: PairKind) -> BilinearFormB {
        let scale = match kind {
            PairKind::UHOstar => -2.0 * std::f64::consts::PI,
            _ => -std::f64::consts::PI,
        };
        BilinearFormB { scale }
    }

    pub fn eval(&self, x: &[f64], y: &[f64]) -> f64 {
        self.scale * x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>()
    }
}

/// `(−1)^{n(λ)} Σ_{w ∈ W(k)/W(k)^λ} e^{i⟨wλ, x⟩} / Π_{α∈P_λ} i⟨wα, x⟩`.
pub fn rdv_fourier(op: &OrbitParameter, x: &[f64]) -> Result<ComplexValue> {
    if x.len() != op.lambda.len() {
        return Err(Error::DimensionMismatch {
            expected: op.lambda.len(),
            got: x.len(),
        });
    }
    let mut seen = BTreeSet::new();
    let mut total = Complex64::zero();
    for w in rootsys::weyl_elements(&op.rs_k)? {
        let wl = rootsys::act(&w, &op.lambda)?;
        if !seen.insert(wl.clone()) {
            continue;
        }
        let mut den = Complex64::new(1.0, 0.0);
        for a in &op.p_lambda {
            let v = rootsys::act(&w, a)?.pair_angles(x);
            if v.abs() < DEFAULT_REGULARITY_TOL {
                return Err(Error::SingularPoint);
            }
            den *= Complex64::new(0.0, v);
        }
        total += Complex64::from_polar(1.0, wl.pair_angles(x)) / den;
    }
    let sign = if op.n_noncompact.is_multiple_of(2) { 1.0 } else { -1.0 };
    torus::finite(total * sign)
}

/// `Π_{α∈P_λ} ⟨λ, α⟩`.
pub fn liouville_normalization(op: &OrbitParameter) -> f64 {
    op.p_lambda
        .iter()
        .map(|a| torus::to_f64(op.lambda.dot(a)))
        .product()
}

/// Liouville volume over Haar volume for a regular `U(n)` orbit, `1/Π_{p<n} p!`.
pub fn unitary_orbit_constant(n: usize) -> f64 {
    (1..n).map(|p| 1.0 / (1..=p).map(|k| k as f64).product::<f64>()).product()
}

/// The constant `F(λ, εx)/Π_α⟨λ,α⟩` at a small `εx`, which tends to
/// [`unitary_orbit_constant`] as `ε → 0`.
pub fn calibrate_orbit_constant(lambda: &Weight, x: &[f64], eps: f64) -> Result<f64> {
    let op = OrbitParameter::unitary(lambda.clone())?;
    let small: Vec<f64> = x.iter().map(|v| v * eps).collect();
    Ok(rdv_fourier(&op, &small)?.re / liouville_normalization(&op))
}

/// A Haar-random unitary: QR of a complex Gaussian matrix with `R`'s diagonal phases moved into `Q`.
pub fn haar_unitary(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<Complex64> {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let z = DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex64::new(re * scale, im * scale)
    });
    let qr = z.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonteCarloEstimate {
    pub mean: ComplexValue,
    /// Standard error of the complex mean, `sqrt((Var re + Var im)/N)`.
    pub std_error: f64,
    pub samples: usize,
}

const MC_CHUNK: usize = 8192;

/// `κ·Π⟨λ,α⟩·E_u[e^{i tr(diag(x) u diag(λ) u*)}]` with `κ` from [`unitary_orbit_constant`].
///
/// Chunk `c` draws from stream `c` of a ChaCha8 generator seeded with `seed`;
/// chunks are reduced in index order, so the result is independent of the thread count.
pub fn orbit_integral_monte_carlo(lambda: &Weight, x: &[f64], samples: usize, seed: u64) -> Result<MonteCarloEstimate> {
    let n = lambda.len();
    if x.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: x.len() });
    }
    if samples < 2 {
        return Err(Error::InvalidArgument("need at least two samples".into()));
    }
    let op = OrbitParameter::unitary(lambda.clone())?;
    let lam = lambda.to_f64();
    let chunks = samples.div_ceil(MC_CHUNK);
    let partial: Vec<[f64; 4]> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let count = MC_CHUNK.min(samples - c * MC_CHUNK);
            let mut acc = [0.0; 4];
            for _ in 0..count {
                let u = haar_unitary(n, &mut rng);
                let mut phase = 0.0;
                for j in 0..n {
                    for k in 0..n {
                        phase += x[j] * lam[k] * u[(j, k)].norm_sqr();
                    }
                }
                let (s, co) = phase.sin_cos();
                acc[0] += co;
                acc[1] += s;
                acc[2] += co * co;
                acc[3] += s * s;
            }
            acc
        })
        .collect();
    let mut tot = [0.0; 4];
    for p in &partial {
        for i in 0..4 {
            tot[i] += p[i];
        }
    }
    let nf = samples as f64;
    let (mre, mim) = (tot[0] / nf, tot[1] / nf);
    let var = (tot[2] / nf - mre * mre + tot[3] / nf - mim * mim) * nf / (nf - 1.0);
    let scale = unitary_orbit_constant(n) * liouville_normalization(&op);
    Ok(MonteCarloEstimate {
        mean: Complex64::new(mre, mim) * scale,
        std_error: (var / nf).sqrt() * scale.abs(),
        samples,
    })
}

fn vandermonde(v: &[f64]) -> f64 {
    let mut acc = 1.0;
    for j in 0..v.len() {
        for k in j + 1..v.len() {
            acc *= v[j] - v[k];
        }
    }
    acc
}

/// `κ·Π⟨λ,α⟩·Π_{p<n} p!·det(e^{iλ_k x_j}) / (i^{n(n−1)/2}·Δ(λ)·Δ(x))`.
pub fn orbit_integral_hciz(lambda: &Weight, x: &[f64]) -> Result<ComplexValue> {
    let n = lambda.len();
    if x.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: x.len() });
    }
    let distinct: BTreeSet<&Rational> = lambda.coords().iter().collect();
    if distinct.len() < n {
        return Err(Error::MonteCarloOnly);
    }
    let lam = lambda.to_f64();
    let dx = vandermonde(x);
    if dx.abs() < DEFAULT_REGULARITY_TOL {
        return Err(Error::SingularPoint);
    }
    let m = DMatrix::from_fn(n, n, |j, k| Complex64::from_polar(1.0, lam[k] * x[j]));
    let superfactorial: f64 = (1..n).map(|p| (1..=p).map(|k| k as f64).product::<f64>()).product();
    let ipow = Complex64::new(0.0, 1.0).powi((n * (n - 1) / 2) as i32);
    let average = m.determinant() * superfactorial / (ipow * vandermonde(&lam) * dx);
    let op = OrbitParameter::unitary(lambda.clone())?;
    torus::finite(average * unitary_orbit_constant(n) * liouville_normalization(&op))
}
