//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary so the lines always reach stdout; exits nonzero if
//! any criterion fails.

use std::f64::consts::PI;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use howechar::howe::{self, DualPairSpec};
use howechar::orbits::{self, OrbitParameter};
use howechar::rootsys::{self, Family, RootSystem};
use howechar::thetachar::{self, ThetaCharacter, VandermondeMode, Verdict};
use howechar::torus::{self, TorusPoint, Weight};
use howechar::weylchar::{self, QuadratureGrid};
use howechar::{ComplexValue, Rational};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.1?}, limit {limit:?}"))
}

/// Random points at least `margin` away from every singular hyperplane of `rs`.
fn regular_points(rs: &RootSystem, count: usize, rng: &mut ChaCha8Rng) -> Vec<TorusPoint> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let angles: Vec<f64> = (0..rs.rank).map(|_| rng.gen_range(-PI..PI)).collect();
        let t = TorusPoint::new(angles).expect("finite angles");
        if torus::is_regular(rs, &t, 1e-2) {
            out.push(t);
        }
    }
    out
}

/// Largest deviation of the ratios `a_i / b_i` from their mean, relative to the mean.
fn ratio_spread(pairs: &[(ComplexValue, ComplexValue)]) -> (ComplexValue, f64) {
    let ratios: Vec<Complex64> = pairs.iter().map(|(a, b)| a / b).collect();
    let mean = ratios.iter().sum::<Complex64>() / ratios.len() as f64;
    let spread = ratios.iter().map(|r| (r - mean).norm()).fold(0.0, f64::max) / mean.norm();
    (mean, spread)
}

/// Partitions with at most `n` parts and size at most `max`, padded to length `n`.
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

/// Oracle: hook-content formula `Π_{boxes} (n + c)/h`.
fn hook_content_dimension(lambda: &[i64]) -> u128 {
    let n = lambda.len() as i64;
    let conj = |j: i64| lambda.iter().filter(|&&l| l > j).count() as i64;
    let (mut num, mut den) = (1u128, 1u128);
    for (i, &row) in lambda.iter().enumerate() {
        for j in 0..row {
            let content = j - i as i64;
            let hook = (row - j) + (conj(j) - i as i64) - 1;
            num *= (n + content) as u128;
            den *= hook as u128;
        }
    }
    num / den
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut checked = 0;
    let mut worst = 0.0f64;
    for n in 1..=4 {
        let rs = rootsys::build_root_system(Family::A, n).map_err(|e| e.to_string())?;
        let pts = regular_points(&rs, 20, &mut rng);
        for lam in partitions(n, 6) {
            let w = Weight::from_ints(&lam);
            for t in &pts {
                let a = weylchar::weyl_character(&rs, &w, t).map_err(|e| e.to_string())?;
                let x: Vec<Complex64> = t.angles().iter().map(|&th| Complex64::from_polar(1.0, th)).collect();
                let b = weylchar::schur_oracle(&lam, &x).map_err(|e| e.to_string())?;
                let rel = (a - b).norm() / b.norm().max(1e-300);
                worst = worst.max(rel);
                ensure(rel <= 1e-10, || format!("λ={lam:?} θ={:?}: {a} vs {b}", t.angles()))?;
                checked += 1;
            }
        }
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!("{checked} evaluations, worst relative error {worst:.1e}, {:.1?}", start.elapsed()))
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    for n in 1..=4 {
        let rs = rootsys::build_root_system(Family::A, n).map_err(|e| e.to_string())?;
        for lam in partitions(n, 6) {
            let d = weylchar::weyl_dimension(&rs, &Weight::from_ints(&lam)).map_err(|e| e.to_string())?;
            let gt = weylchar::gelfand_tsetlin_count(&lam).map_err(|e| e.to_string())?;
            let hook = hook_content_dimension(&lam);
            ensure(d == gt as u128 && d == hook, || format!("λ={lam:?}: weyl {d}, patterns {gt}, hook-content {hook}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} highest weights, exact equality"))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut entries = 0;
    let mut worst = 0.0f64;
    for n in 1..=3 {
        let rs = rootsys::build_root_system(Family::A, n).map_err(|e| e.to_string())?;
        let grid = QuadratureGrid::new(64, n).map_err(|e| e.to_string())?;
        let lams: Vec<Weight> = partitions(n, 4).iter().map(|l| Weight::from_ints(l)).collect();
        let fs: Vec<Box<weylchar::ClassFunction<'_>>> = lams
            .iter()
            .map(|l| {
                let rs = rs.clone();
                let l = l.clone();
                Box::new(move |t: &TorusPoint| weylchar::weyl_character(&rs, &l, t)) as Box<weylchar::ClassFunction<'_>>
            })
            .collect();
        let refs: Vec<&weylchar::ClassFunction<'_>> = fs.iter().map(|b| b.as_ref()).collect();
        let gram = weylchar::torus_gram_matrix(&refs, &rs, grid).map_err(|e| e.to_string())?;
        for i in 0..lams.len() {
            for j in 0..lams.len() {
                let expect = if i == j { 1.0 } else { 0.0 };
                let err = (gram[i][j] - Complex64::new(expect, 0.0)).norm();
                worst = worst.max(err);
                ensure(err <= 1e-8, || format!("n={n} ⟨{}, {}⟩ = {}", lams[i], lams[j], gram[i][j]))?;
                entries += 1;
            }
        }
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!("{entries} inner products, worst deviation {worst:.1e}, {:.1?}", start.elapsed()))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for total in 2..=8usize {
        for p in 1..total {
            let q = total - p;
            for k in 0..=total as i64 - 2 {
                let v = thetachar::vandermonde_identity_check(p, q, k, VandermondeMode::DeterministicGrid).map_err(|e| e.to_string())?;
                ensure(v == Verdict::Holds, || format!("p={p} q={q} k={k}: {v:?}"))?;
                checked += 1;
            }
            let edge = thetachar::vandermonde_identity_check(p, q, total as i64 - 1, VandermondeMode::DeterministicGrid)
                .map_err(|e| e.to_string())?;
            ensure(edge == Verdict::NotInAssertedRange, || format!("p={p} q={q} k=p+q−1: {edge:?}"))?;
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("{checked} (p,q,k) instances proved on grids, {:.1?}", start.elapsed()))
}

fn u1_weight(p: usize, q: usize, lambda: i64) -> Weight {
    Weight::new(vec![Rational::new(2 * lambda + q as i64 - p as i64, 2)]).expect("half-integer weight")
}

fn u1_character(p: usize, q: usize, lambda: i64, m: usize) -> Result<ThetaCharacter, String> {
    let pair = DualPairSpec::uu(1, p, q).map_err(|e| e.to_string())?;
    ThetaCharacter::new(pair, &u1_weight(p, q, lambda), m).map_err(|e| e.to_string())
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let mut instances = 0;
    let mut worst = 0.0f64;
    let mut unit_ratio = None;
    for p in 1..=3usize {
        for q in 1..=3usize {
            let big = DualPairSpec::uu(1, p, q).map_err(|e| e.to_string())?.rs_gprime();
            let pts = regular_points(&big, 10, &mut rng);
            for lambda in -(q as i64) + 1..p as i64 {
                let (t0, t1) = (u1_character(p, q, lambda, 0)?, u1_character(p, q, lambda, 1)?);
                let mut pairs = Vec::new();
                for t in &pts {
                    let a = thetachar::theta_eval(&t0, t).map_err(|e| e.to_string())?;
                    let b = thetachar::theta_eval(&t1, t).map_err(|e| e.to_string())?;
                    pairs.push((a, b));
                }
                let (ratio, spread) = ratio_spread(&pairs);
                worst = worst.max(spread);
                ensure(spread <= 1e-9, || format!("UU(1,{p},{q}) λ₁={lambda}: spread {spread:.1e}"))?;
                // Factor the combinatorial ratio p!(q−1)!/((p−1)!q!) and the
                // orientation sign (−1)^{p+q−1} of the m = 0 denominator.
                let comb = factorial(p) * factorial(q - 1) / (factorial(p - 1) * factorial(q));
                let orient = if (p + q - 1) % 2 == 0 { 1.0 } else { -1.0 };
                let reduced = ratio / (comb * orient);
                ensure((reduced + 1.0).norm() <= 1e-9, || format!("UU(1,{p},{q}) λ₁={lambda}: reduced ratio {reduced}"))?;
                if (p, q) == (1, 1) {
                    unit_ratio = Some((ratio, reduced));
                }
                instances += 1;
            }
        }
    }
    let (raw, reduced) = unit_ratio.ok_or("no (1,1) instance")?;
    Ok(format!(
        "{instances} instances, worst spread {worst:.1e}; (1,1): measured {raw:.6}, reduced {reduced:.6}"
    ))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let mut instances = 0;
    let mut worst = 0.0f64;
    for p in 1..=3usize {
        for q in 1..=3usize {
            let pair = DualPairSpec::uu(1, p, q).map_err(|e| e.to_string())?;
            let pts = regular_points(&pair.rs_gprime(), 10, &mut rng);
            for lambda in -(q as i64) - 2..=p as i64 + 2 {
                for m in 0..=1 {
                    let Ok(tc) = u1_character(p, q, lambda, m) else { continue };
                    let mut pairs = Vec::new();
                    for t in &pts {
                        let a = thetachar::theta_eval(&tc, t).map_err(|e| e.to_string())?;
                        let b = thetachar::theta_u1_closed(p, q, lambda, m, t).map_err(|e| e.to_string())?;
                        pairs.push((a, b));
                    }
                    let (_, spread) = ratio_spread(&pairs);
                    worst = worst.max(spread);
                    ensure(spread <= 1e-9, || format!("UU(1,{p},{q}) λ₁={lambda} m={m}: spread {spread:.1e}"))?;
                    instances += 1;
                }
            }
        }
    }
    Ok(format!("{instances} (p,q,λ₁,m) instances, worst spread {worst:.1e}"))
}

/// Every admissible `(ν, m)` for `pair` with integer parts in `[-3, 3]`.
fn characters(pair: DualPairSpec) -> Vec<ThetaCharacter> {
    let n = pair.n();
    let offset = pair.central_shift();
    let uu = pair.kind() == howe::PairKind::UU;
    let range: Vec<i64> = if uu { (-3..=3).collect() } else { (0..=3).collect() };
    let mut out = Vec::new();
    let mut stack: Vec<Vec<i64>> = range.iter().map(|&v| vec![v]).collect();
    while let Some(cur) = stack.pop() {
        if cur.len() < n {
            for &v in range.iter().filter(|&&v| v <= *cur.last().expect("nonempty")) {
                let mut next = cur.clone();
                next.push(v);
                stack.push(next);
            }
            continue;
        }
        let coords = cur
            .iter()
            .map(|&v| if uu { offset + Rational::from_integer(v) } else { Rational::from_integer(v) })
            .collect();
        let nu = Weight::new(coords).expect("valid weight");
        let Ok(cd) = howe::validate_weight(&pair, &nu) else { continue };
        let iv = howe::support_interval(&pair, &cd);
        let ms: Vec<usize> = if uu { (iv.lo..=iv.hi).collect() } else { vec![0] };
        for m in ms {
            if let Ok(tc) = ThetaCharacter::from_data(pair, cd.clone(), m) {
                out.push(tc);
            }
        }
    }
    out
}

fn numerator_pairs() -> Result<Vec<DualPairSpec>, String> {
    let mut pairs = Vec::new();
    for n in 1..=2 {
        for p in 1..=3 {
            for q in 1..=3 {
                if p + q <= 4 && n <= p + q {
                    pairs.push(DualPairSpec::uu(n, p, q).map_err(|e| e.to_string())?);
                }
            }
        }
        for m in n..=3 {
            pairs.push(DualPairSpec::oeven_sp(n, m).map_err(|e| e.to_string())?);
            pairs.push(DualPairSpec::oodd_sp(n, m).map_err(|e| e.to_string())?);
            pairs.push(DualPairSpec::uh_ostar(n, m).map_err(|e| e.to_string())?);
        }
    }
    Ok(pairs)
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let mut instances = 0;
    let mut kinds = std::collections::BTreeSet::new();
    let mut worst = 0.0f64;
    for pair in numerator_pairs()? {
        let rs = pair.rs_gprime();
        let pts = regular_points(&rs, 10, &mut rng);
        for tc in characters(pair) {
            let mut pairs = Vec::new();
            for t in &pts {
                let num = thetachar::theta_numerator_form(&tc, t).map_err(|e| e.to_string())?;
                let den = torus::weyl_denominator(&rs, t).map_err(|e| e.to_string())? * thetachar::theta_eval(&tc, t).map_err(|e| e.to_string())?;
                pairs.push((num, den));
            }
            let (_, spread) = ratio_spread(&pairs);
            worst = worst.max(spread);
            ensure(spread <= 1e-9, || format!("{pair} ν={} m={}: spread {spread:.1e}", tc.data().nu, tc.m()))?;
            kinds.insert(pair.kind().to_string());
            instances += 1;
        }
    }
    ensure(kinds.len() == 4, || format!("only kinds {kinds:?} exercised"))?;
    Ok(format!("{instances} instances over {} pair kinds, worst spread {worst:.1e}", kinds.len()))
}

/// Oracle: `μ′_k` from `ν` and the per-kind `ρ`, then the interval from thresholds on `a_k`, `b_k`.
fn hand_interval(kind: howe::PairKind, n: usize, m: usize, nu: &[i64]) -> (usize, usize) {
    let (n, m) = (n as f64, m as f64);
    let rho = |k: usize| match kind {
        howe::PairKind::OevenSp => n - k as f64,
        howe::PairKind::OoddSp => n - k as f64 + 0.5,
        _ => unreachable!(),
    };
    let mu: Vec<f64> = nu.iter().enumerate().map(|(i, &v)| v as f64 + rho(i + 1)).collect();
    let mu_prime: Vec<f64> = mu.iter().rev().copied().collect();
    let extra = if kind == howe::PairKind::OoddSp { 0.5 } else { 0.0 };
    let a: Vec<f64> = mu_prime.iter().map(|x| x - m + n + extra).collect();
    let b: Vec<f64> = mu_prime.iter().map(|x| -x - m + n + extra).collect();
    let lo = (0..b.len()).filter(|&k| b[k] >= 1.0).map(|k| k + 1).max().unwrap_or(0);
    let hi = (0..a.len()).filter(|&k| a[k] >= 1.0).map(|k| k + 1).min().map_or(a.len(), |k| k - 1);
    (lo, hi)
}

fn criterion_8() -> Outcome {
    let mut table = 0;
    for p in 1..=4usize {
        for q in 1..=4usize {
            let pair = DualPairSpec::uu(1, p, q).map_err(|e| e.to_string())?;
            for lambda in -(q as i64) - 2..=p as i64 + 2 {
                let cd = howe::validate_weight(&pair, &u1_weight(p, q, lambda)).map_err(|e| e.to_string())?;
                let iv = howe::support_interval(&pair, &cd);
                let expect = if lambda <= -(q as i64) {
                    (1, 1)
                } else if lambda >= p as i64 {
                    (0, 0)
                } else {
                    (0, 1)
                };
                ensure((iv.lo, iv.hi) == expect, || format!("UU(1,{p},{q}) λ₁={lambda}: {:?} vs {expect:?}", (iv.lo, iv.hi)))?;
                table += 1;
            }
        }
    }
    let mut hand = 0;
    for (kind, pair) in [
        (howe::PairKind::OevenSp, DualPairSpec::oeven_sp(2, 3)),
        (howe::PairKind::OoddSp, DualPairSpec::oodd_sp(2, 3)),
    ] {
        let pair = pair.map_err(|e| e.to_string())?;
        for a in 0..=3i64 {
            for b in 0..=a {
                let cd = howe::validate_weight(&pair, &Weight::from_ints(&[a, b])).map_err(|e| e.to_string())?;
                let iv = howe::support_interval(&pair, &cd);
                let expect = hand_interval(kind, 2, 3, &[a, b]);
                ensure((iv.lo, iv.hi) == expect, || format!("{pair} ν=({a},{b}): {:?} vs {expect:?}", (iv.lo, iv.hi)))?;
                hand += 1;
            }
        }
    }
    ensure(hand >= 20, || format!("only {hand} hand-computed instances"))?;
    Ok(format!("{table} case-table entries and {hand} hand-computed intervals agree"))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    let mut worst = 0.0f64;
    for n in 2..=3usize {
        let mut done = 0;
        while done < 20 {
            let mut lam: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
            lam.sort_unstable_by(|a, b| b.cmp(a));
            lam.dedup();
            if lam.len() < n {
                continue;
            }
            let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
            if (0..n).any(|i| (i + 1..n).any(|j| (x[i] - x[j]).abs() < 0.05)) {
                continue;
            }
            let w = Weight::from_ints(&lam);
            let op = OrbitParameter::unitary(w.clone()).map_err(|e| e.to_string())?;
            let a = orbits::rdv_fourier(&op, &x).map_err(|e| e.to_string())?;
            let b = orbits::orbit_integral_hciz(&w, &x).map_err(|e| e.to_string())?;
            let rel = (a - b).norm() / b.norm();
            worst = worst.max(rel);
            ensure(rel <= 1e-10, || format!("U({n}) λ={lam:?} x={x:?}: {a} vs {b}"))?;
            done += 1;
        }
    }
    let mut mc = Vec::new();
    for (lam, x, seed) in [(vec![1, 0], vec![1.0, -0.5], 11u64), (vec![2, 0, -1], vec![0.6, -0.3, 0.2], 12)] {
        let w = Weight::from_ints(&lam);
        let exact = orbits::rdv_fourier(&OrbitParameter::unitary(w.clone()).map_err(|e| e.to_string())?, &x).map_err(|e| e.to_string())?;
        let est = orbits::orbit_integral_monte_carlo(&w, &x, 1_000_000, seed).map_err(|e| e.to_string())?;
        let z = (est.mean - exact).norm() / est.std_error;
        ensure(z <= 3.0, || format!("λ={lam:?}: Monte-Carlo {} ± {:.1e} vs {exact}", est.mean, est.std_error))?;
        mc.push(format!("{z:.2}σ"));
    }
    within(start, Duration::from_secs(180))?;
    Ok(format!(
        "HCIZ worst relative error {worst:.1e}; Monte-Carlo deviations {}, {:.1?}",
        mc.join(", "),
        start.elapsed()
    ))
}

/// Oracle for `UU(1,1,1)`: `h^{ι(−μ′)}/(h^{β/2} − h^{−β/2})` with `β = e₁ − e₂` expands to
/// `Σ_k h^{ι(−μ′) − (k+½)β}`, each term a `U(1)×U(1)` character.
fn u11_ladder(lambda: i64, m: usize, depth: i64) -> Vec<Weight> {
    let slot = if m == 1 { 0 } else { 1 };
    (0..=depth)
        .map(|k| {
            let mut v = [Rational::from_integer(0); 2];
            v[slot] = Rational::from_integer(-lambda);
            let step = Rational::new(2 * k + 1, 2);
            Weight::new(vec![v[0] - step, v[1] + step]).expect("half-integers")
        })
        .collect()
}

fn check_ktypes(tc: &ThetaCharacter, depth: i64) -> Result<thetachar::KTypeExpansion, String> {
    let kt = thetachar::ktype_expansion(tc, depth).map_err(|e| format!("{} ν={}: {e}", tc.pair(), tc.data().nu))?;
    ensure(kt.multiplicities.values().all(|&v| v >= 0), || "negative multiplicity".into())?;
    ensure(kt.multiplicities.get(&kt.minimal) == Some(&1), || format!("minimal K-type {} not simple", kt.minimal))?;
    let c = thetachar::normalizing_constant(tc, &kt.minimal, depth).map_err(|e| e.to_string())?;
    ensure(c == kt.constant, || format!("constant {c} vs expansion {}", kt.constant))?;
    Ok(kt)
}

fn criterion_10() -> Outcome {
    let depth = 20;
    let mut ladders = 0;
    for lambda in -3..=3i64 {
        for m in 0..=1 {
            let Ok(tc) = u1_character(1, 1, lambda, m) else { continue };
            let kt = check_ktypes(&tc, depth)?;
            let got: Vec<Weight> = kt.multiplicities.keys().rev().cloned().collect();
            let mut expect = u11_ladder(lambda, m, depth);
            expect.sort();
            expect.reverse();
            ensure(got == expect, || format!("λ₁={lambda} m={m}: K-types differ from the geometric series"))?;
            ensure(kt.multiplicities.values().all(|&v| v == 1), || format!("λ₁={lambda} m={m}: multiplicity above 1"))?;
            ladders += 1;
        }
    }
    let others = [
        DualPairSpec::oeven_sp(1, 2),
        DualPairSpec::oodd_sp(1, 1),
        DualPairSpec::uh_ostar(1, 2),
    ];
    let mut summary = Vec::new();
    for pair in others {
        let pair = pair.map_err(|e| e.to_string())?;
        let tc = ThetaCharacter::new(pair, &Weight::from_ints(&[1]), 0).map_err(|e| e.to_string())?;
        let kt = check_ktypes(&tc, depth)?;
        summary.push(format!("{pair}: {} K-types", kt.multiplicities.len()));
    }
    Ok(format!("{ladders} UU(1,1,1) ladders match; {}", summary.join(", ")))
}

fn criterion_11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1111);
    let mut systems: Vec<(String, RootSystem)> = Vec::new();
    for (f, lo) in [(Family::A, 1), (Family::B, 1), (Family::C, 1), (Family::D, 2)] {
        for n in lo..=4 {
            systems.push((format!("{f:?}{n}"), rootsys::build_root_system(f, n).map_err(|e| e.to_string())?));
        }
    }
    for pair in numerator_pairs()? {
        systems.push((format!("{pair} g"), pair.rs_g()));
        systems.push((format!("{pair} g′"), pair.rs_gprime()));
        systems.push((format!("{pair} k′"), pair.rs_kprime()));
        for m in 0..=pair.n() {
            if let Ok(z) = howe::z_root_system(&pair, m) {
                systems.push((format!("{pair} z′({m})"), z));
            }
        }
    }
    let mut worst = 0.0f64;
    for (name, rs) in &systems {
        for _ in 0..50 {
            let angles: Vec<f64> = (0..rs.rank).map(|_| rng.gen_range(-PI..PI)).collect();
            let t = TorusPoint::new(angles).map_err(|e| e.to_string())?;
            let a = torus::weyl_denominator(rs, &t).map_err(|e| e.to_string())?;
            let b = torus::weyl_denominator_alternating(rs, &t).map_err(|e| e.to_string())?;
            let err = (a - b).norm() / (1.0 + b.norm());
            worst = worst.max(err);
            ensure(err <= 1e-10, || format!("{name}: {a} vs {b}"))?;
        }
    }
    Ok(format!("{} subsystems × 50 points, worst deviation {worst:.1e}", systems.len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("Weyl character vs Gelfand–Tsetlin oracle", criterion_1),
        ("Weyl dimension vs pattern count", criterion_2),
        ("character orthonormality by torus quadrature", criterion_3),
        ("Vandermonde sum identity, grid proof", criterion_4),
        ("independence of the embedding parameter for UU(1,p,q)", criterion_5),
        ("agreement with the single-sum closed forms", criterion_6),
        ("numerator form over denominator times character", criterion_7),
        ("support interval tables", criterion_8),
        ("orbit Fourier transform vs HCIZ and Monte-Carlo", criterion_9),
        ("K-type expansions", criterion_10),
        ("Weyl denominator product vs alternating sum", criterion_11),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {name}: {detail}", i + 1),
            Err(reason) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {reason}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
