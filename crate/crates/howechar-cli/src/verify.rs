//! Invariant suite behind `howechar verify`.
//!
//! Each check returns a one-line detail on success and the first
//! counterexample on failure. Detail strings carry no timings, so the report
//! is reproducible.

use std::f64::consts::PI;

use howechar::howe::{self, DualPairSpec, PairKind};
use howechar::orbits::{self, OrbitParameter};
use howechar::rootsys::{self, Family, RootSystem};
use howechar::thetachar::{self, ThetaCharacter, VandermondeMode, Verdict};
use howechar::torus::{self, TorusPoint, Weight};
use howechar::weylchar::{self, ClassFunction, QuadratureGrid};
use howechar::{ComplexValue, Rational};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::output::{Meta, Report};

type Check = Result<String, String>;

/// Ranges for one run of the suite.
struct Scope {
    max_rank: usize,
    max_size: i64,
    points: usize,
    quadrature: usize,
    quadrature_rank: usize,
    identity_total: usize,
    u1_max: usize,
    mc_samples: usize,
}

const QUICK: Scope = Scope {
    max_rank: 3,
    max_size: 4,
    points: 5,
    quadrature: 32,
    quadrature_rank: 2,
    identity_total: 6,
    u1_max: 2,
    mc_samples: 100_000,
};

const FULL: Scope = Scope {
    max_rank: 4,
    max_size: 6,
    points: 20,
    quadrature: 64,
    quadrature_rank: 3,
    identity_total: 8,
    u1_max: 3,
    mc_samples: 1_000_000,
};

fn err(e: howechar::Error) -> String {
    format!("{}: {e}", e.name())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn regular_points(rs: &RootSystem, count: usize, rng: &mut ChaCha8Rng) -> Vec<TorusPoint> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let angles = (0..rs.rank).map(|_| rng.gen_range(-PI..PI)).collect();
        let t = TorusPoint::new(angles).expect("finite angles");
        if torus::is_regular(rs, &t, 1e-2) {
            out.push(t);
        }
    }
    out
}

/// Relative spread of the ratios `a/b` around their mean.
fn spread(pairs: &[(ComplexValue, ComplexValue)]) -> f64 {
    let ratios: Vec<Complex64> = pairs.iter().map(|(a, b)| a / b).collect();
    let mean = ratios.iter().sum::<Complex64>() / ratios.len() as f64;
    ratios.iter().map(|r| (r - mean).norm()).fold(0.0, f64::max) / mean.norm()
}

fn partitions(n: usize, max: i64) -> Vec<Vec<i64>> {
    fn go(n: usize, cap: i64, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..=cap.min(left) {
            cur.push(v);
            go(n, v, left - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, max, max, &mut Vec::new(), &mut out);
    out
}

fn type_a(n: usize) -> Result<RootSystem, String> {
    rootsys::build_root_system(Family::A, n).map_err(err)
}

fn characters_vs_patterns(s: &Scope, tol: f64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut count = 0;
    for n in 1..=s.max_rank {
        let rs = type_a(n)?;
        let pts = regular_points(&rs, s.points, &mut rng);
        for lam in partitions(n, s.max_size) {
            for t in &pts {
                let a = weylchar::weyl_character(&rs, &Weight::from_ints(&lam), t).map_err(err)?;
                let x: Vec<Complex64> = t.angles().iter().map(|&v| Complex64::from_polar(1.0, v)).collect();
                let b = weylchar::schur_oracle(&lam, &x).map_err(err)?;
                ensure((a - b).norm() <= tol * b.norm().max(1.0), || format!("λ={lam:?}: {a} vs {b}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} evaluations agree"))
}

fn dimensions(s: &Scope) -> Check {
    let mut count = 0;
    for n in 1..=s.max_rank {
        let rs = type_a(n)?;
        for lam in partitions(n, s.max_size) {
            let d = weylchar::weyl_dimension(&rs, &Weight::from_ints(&lam)).map_err(err)?;
            let gt = weylchar::gelfand_tsetlin_count(&lam).map_err(err)?;
            ensure(d == gt as u128, || format!("λ={lam:?}: {d} vs {gt} patterns"))?;
            count += 1;
        }
    }
    Ok(format!("{count} dimensions equal pattern counts"))
}

fn orthonormality(s: &Scope) -> Check {
    let mut count = 0;
    for n in 1..=s.quadrature_rank {
        let rs = type_a(n)?;
        let grid = QuadratureGrid::new(s.quadrature, n).map_err(err)?;
        let lams: Vec<Weight> = partitions(n, 4).iter().map(|l| Weight::from_ints(l)).collect();
        let fs: Vec<Box<ClassFunction<'_>>> = lams
            .iter()
            .map(|l| Box::new(|t: &TorusPoint| weylchar::weyl_character(&rs, l, t)) as Box<ClassFunction<'_>>)
            .collect();
        let refs: Vec<&ClassFunction<'_>> = fs.iter().map(|f| f.as_ref()).collect();
        let gram = weylchar::torus_gram_matrix(&refs, &rs, grid).map_err(err)?;
        for (i, row) in gram.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                ensure((v - expect).norm() <= 1e-8, || format!("⟨{}, {}⟩ = {v}", lams[i], lams[j]))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} inner products match δ"))
}

fn identity(s: &Scope) -> Check {
    let mut count = 0;
    for total in 2..=s.identity_total {
        for p in 1..total {
            for k in 0..=total as i64 - 2 {
                let v = thetachar::vandermonde_identity_check(p, total - p, k, VandermondeMode::DeterministicGrid).map_err(err)?;
                ensure(v == Verdict::Holds, || format!("p={p} q={} k={k}: {v:?}", total - p))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} instances proved"))
}

fn u1(p: usize, q: usize, lambda: i64, m: usize) -> howechar::Result<ThetaCharacter> {
    let nu = Weight::new(vec![Rational::new(2 * lambda + q as i64 - p as i64, 2)])?;
    ThetaCharacter::new(DualPairSpec::uu(1, p, q)?, &nu, m)
}

fn closed_forms(s: &Scope, tol: f64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut count = 0;
    for p in 1..=s.u1_max {
        for q in 1..=s.u1_max {
            let pts = regular_points(&type_a(p + q)?, s.points.max(3), &mut rng);
            for lambda in -(q as i64) - 2..=p as i64 + 2 {
                for m in 0..=1 {
                    let Ok(tc) = u1(p, q, lambda, m) else { continue };
                    let pairs = pts
                        .iter()
                        .map(|t| {
                            let a = thetachar::theta_eval(&tc, t)?;
                            Ok((a, thetachar::theta_u1_closed(p, q, lambda, m, t)?))
                        })
                        .collect::<howechar::Result<Vec<_>>>()
                        .map_err(err)?;
                    let sp = spread(&pairs);
                    ensure(sp <= tol, || format!("UU(1,{p},{q}) λ₁={lambda} m={m}: spread {sp:.1e}"))?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} instances proportional to the closed form"))
}

fn embedding_independence(s: &Scope, tol: f64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut count = 0;
    for p in 1..=s.u1_max {
        for q in 1..=s.u1_max {
            let pts = regular_points(&type_a(p + q)?, s.points.max(3), &mut rng);
            for lambda in 1 - q as i64..p as i64 {
                let (t0, t1) = (u1(p, q, lambda, 0).map_err(err)?, u1(p, q, lambda, 1).map_err(err)?);
                let pairs = pts
                    .iter()
                    .map(|t| Ok((thetachar::theta_eval(&t0, t)?, thetachar::theta_eval(&t1, t)?)))
                    .collect::<howechar::Result<Vec<_>>>()
                    .map_err(err)?;
                let sp = spread(&pairs);
                ensure(sp <= tol, || format!("UU(1,{p},{q}) λ₁={lambda}: spread {sp:.1e}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} ratios constant in the point"))
}

fn numerator_forms(s: &Scope, tol: f64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let max_n = if s.max_rank > 3 { 2 } else { 1 };
    let mut cases: Vec<(DualPairSpec, Weight)> = Vec::new();
    for n in 1..=max_n {
        let top = Weight::from_ints(&vec![1; n]);
        cases.push((DualPairSpec::oeven_sp(n, 3).map_err(err)?, top.clone()));
        cases.push((DualPairSpec::oodd_sp(n, 3).map_err(err)?, top.clone()));
        cases.push((DualPairSpec::uh_ostar(n, 3).map_err(err)?, top));
        let uu = DualPairSpec::uu(n, 2, 2).map_err(err)?;
        cases.push((uu, Weight::new(vec![uu.central_shift(); n]).map_err(err)?));
    }
    let mut count = 0;
    for (pair, nu) in cases {
        let cd = howe::validate_weight(&pair, &nu).map_err(err)?;
        let iv = howe::support_interval(&pair, &cd);
        let ms: Vec<usize> = if pair.kind() == PairKind::UU { (iv.lo..=iv.hi).collect() } else { vec![0] };
        let rs = pair.rs_gprime();
        let pts = regular_points(&rs, s.points.max(3), &mut rng);
        for m in ms {
            let Ok(tc) = ThetaCharacter::from_data(pair, cd.clone(), m) else { continue };
            let pairs = pts
                .iter()
                .map(|t| {
                    let num = thetachar::theta_numerator_form(&tc, t)?;
                    Ok((num, torus::weyl_denominator(&rs, t)? * thetachar::theta_eval(&tc, t)?))
                })
                .collect::<howechar::Result<Vec<_>>>()
                .map_err(err)?;
            let sp = spread(&pairs);
            ensure(sp <= tol, || format!("{pair} ν={nu} m={m}: spread {sp:.1e}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} numerator forms consistent"))
}

fn support_table(s: &Scope) -> Check {
    let mut count = 0;
    for p in 1..=s.u1_max + 1 {
        for q in 1..=s.u1_max + 1 {
            let pair = DualPairSpec::uu(1, p, q).map_err(err)?;
            for lambda in -(q as i64) - 2..=p as i64 + 2 {
                let nu = Weight::new(vec![Rational::new(2 * lambda + q as i64 - p as i64, 2)]).map_err(err)?;
                let iv = howe::support_interval(&pair, &howe::validate_weight(&pair, &nu).map_err(err)?);
                let expect = if lambda <= -(q as i64) {
                    (1, 1)
                } else if lambda >= p as i64 {
                    (0, 0)
                } else {
                    (0, 1)
                };
                ensure((iv.lo, iv.hi) == expect, || format!("UU(1,{p},{q}) λ₁={lambda}: {:?}", (iv.lo, iv.hi)))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} table entries"))
}

fn orbit_transforms(s: &Scope, tol: f64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut count = 0;
    for n in 2..=3usize {
        while count < 10 * (n - 1) {
            let mut lam: Vec<i64> = (0..n).map(|_| rng.gen_range(-4..=4)).collect();
            lam.sort_unstable_by(|a, b| b.cmp(a));
            lam.dedup();
            let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
            if lam.len() < n || (0..n).any(|i| (i + 1..n).any(|j| (x[i] - x[j]).abs() < 0.05)) {
                continue;
            }
            let w = Weight::from_ints(&lam);
            let a = orbits::rdv_fourier(&OrbitParameter::unitary(w.clone()).map_err(err)?, &x).map_err(err)?;
            let b = orbits::orbit_integral_hciz(&w, &x).map_err(err)?;
            ensure((a - b).norm() <= 10.0 * tol * b.norm(), || format!("λ={lam:?} x={x:?}: {a} vs {b}"))?;
            count += 1;
        }
    }
    let w = Weight::from_ints(&[2, 0, -1]);
    let x = [0.6, -0.3, 0.2];
    let exact = orbits::rdv_fourier(&OrbitParameter::unitary(w.clone()).map_err(err)?, &x).map_err(err)?;
    let est = orbits::orbit_integral_monte_carlo(&w, &x, s.mc_samples, 7).map_err(err)?;
    let z = (est.mean - exact).norm() / est.std_error;
    ensure(z <= 3.0, || format!("Monte-Carlo {} ± {:.1e} vs {exact}", est.mean, est.std_error))?;
    Ok(format!("{count} determinant comparisons; Monte-Carlo within {z:.2} standard errors"))
}

fn ktypes() -> Check {
    let mut count = 0;
    for lambda in -3..=3 {
        for m in 0..=1 {
            let Ok(tc) = u1(1, 1, lambda, m) else { continue };
            let kt = thetachar::ktype_expansion(&tc, 20).map_err(err)?;
            ensure(kt.multiplicities.values().all(|&v| v >= 0), || format!("λ₁={lambda}: negative multiplicity"))?;
            ensure(kt.multiplicities.get(&kt.minimal) == Some(&1), || format!("λ₁={lambda}: minimal K-type not simple"))?;
            ensure(kt.multiplicities.len() == 21, || format!("λ₁={lambda}: {} K-types, expected 21", kt.multiplicities.len()))?;
            count += 1;
        }
    }
    Ok(format!("{count} expansions with a simple minimal K-type"))
}

fn denominators(s: &Scope, tol: f64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut systems = Vec::new();
    for (f, lo) in [(Family::A, 1), (Family::B, 1), (Family::C, 1), (Family::D, 2)] {
        for n in lo..=s.max_rank {
            systems.push(rootsys::build_root_system(f, n).map_err(err)?);
        }
    }
    for pair in [DualPairSpec::uu(2, 2, 2), DualPairSpec::oeven_sp(2, 3), DualPairSpec::uh_ostar(2, 3)] {
        let pair = pair.map_err(err)?;
        systems.extend([pair.rs_g(), pair.rs_gprime(), pair.rs_kprime()]);
    }
    for rs in &systems {
        for _ in 0..s.points {
            let t = TorusPoint::new((0..rs.rank).map(|_| rng.gen_range(-PI..PI)).collect()).map_err(err)?;
            let a = torus::weyl_denominator(rs, &t).map_err(err)?;
            let b = torus::weyl_denominator_alternating(rs, &t).map_err(err)?;
            ensure((a - b).norm() <= 10.0 * tol * (1.0 + b.norm()), || format!("{:?}{}: {a} vs {b}", rs.family, rs.rank))?;
        }
    }
    Ok(format!("{} root systems", systems.len()))
}

pub fn run_suite(quick: bool, tol: f64) -> Report {
    let s = if quick { &QUICK } else { &FULL };
    let checks: Vec<(&str, Check)> = vec![
        ("weyl-character-vs-schur", characters_vs_patterns(s, tol)),
        ("dimension-vs-patterns", dimensions(s)),
        ("orthonormality", orthonormality(s)),
        ("vandermonde-identity", identity(s)),
        ("u1-closed-forms", closed_forms(s, tol)),
        ("embedding-independence", embedding_independence(s, tol)),
        ("numerator-form", numerator_forms(s, tol)),
        ("support-table", support_table(s)),
        ("orbit-transforms", orbit_transforms(s, tol)),
        ("ktypes", ktypes()),
        ("weyl-denominator", denominators(s, tol)),
    ];
    let mut meta = Meta::new();
    meta.insert("suite", json!(if quick { "quick" } else { "full" }));
    meta.insert("tolerance", json!(tol));
    let results = checks
        .into_iter()
        .map(|(name, outcome)| match outcome {
            Ok(detail) => json!({ "check": name, "passed": true, "detail": detail }),
            Err(detail) => json!({ "check": name, "passed": false, "detail": detail }),
        })
        .collect();
    Report::new(meta, results)
}
