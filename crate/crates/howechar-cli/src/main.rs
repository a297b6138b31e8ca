//! `howechar`: evaluators and verifiers for characters of compact groups and
//! Howe-dual representations, with JSON output.

mod args;
mod output;
mod verify;

use std::process::ExitCode;

use clap::Parser;
use howechar::howe::{self, DualPairSpec, PairKind};
use howechar::orbits::{self, OrbitParameter};
use howechar::rootsys::{self, Family, RootSystem};
use howechar::thetachar::{self, ThetaCharacter, VandermondeMode, Verdict};
use howechar::torus::{self, TorusPoint, Weight};
use howechar::weylchar;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use args::{Cli, Command, EmbedArg, IdentityMode, OracleCommand, PairArgs, PointArgs};
use output::{point_value, rational_list, Meta, Report};

/// Failure classes, mapped to exit codes 2 (usage) and 1 (domain).
pub enum CliError {
    Usage(String),
    Domain(howechar::Error),
    /// `verify` found a failing check; the report is still printed.
    Verification(Box<Report>),
}

impl From<howechar::Error> for CliError {
    fn from(e: howechar::Error) -> CliError {
        CliError::Domain(e)
    }
}

type CliResult<T> = Result<T, CliError>;

/// Rejection cap when sampling regular points.
const MAX_SAMPLE_ATTEMPTS: usize = 1_000_000;

fn configure_threads() -> CliResult<()> {
    let Ok(v) = std::env::var("HOWECHAR_THREADS") else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("HOWECHAR_THREADS must be a positive integer, got {v:?}")))?;
    // A second initialisation can only fail if a pool already exists; keep it.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Explicit points, or `count` random points at least `tol` from every wall of `rs`.
fn sample_points(args: &PointArgs, rs: &RootSystem) -> CliResult<Vec<TorusPoint>> {
    if let Some(count) = args.random_regular {
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        let mut out = Vec::with_capacity(count);
        for _ in 0..MAX_SAMPLE_ATTEMPTS {
            if out.len() == count {
                break;
            }
            let angles: Vec<f64> = (0..rs.rank).map(|_| rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI)).collect();
            let t = TorusPoint::new(angles)?;
            if torus::is_regular(rs, &t, args.tol) {
                out.push(t);
            }
        }
        if out.len() < count {
            return Err(CliError::Domain(howechar::Error::InvalidArgument(format!(
                "no regular points found with margin {}",
                args.tol
            ))));
        }
        return Ok(out);
    }
    if args.theta.is_empty() {
        return Err(CliError::Usage("give --theta or --random-regular".into()));
    }
    Ok(args.theta.iter().map(|a| TorusPoint::new(a.0.clone())).collect::<howechar::Result<_>>()?)
}

/// Random points of `ℝⁿ` with pairwise gaps of at least `tol`, in `(−2, 2)`.
fn sample_lie_points(args: &PointArgs, n: usize) -> CliResult<Vec<Vec<f64>>> {
    if let Some(count) = args.random_regular {
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        let mut out = Vec::with_capacity(count);
        for _ in 0..MAX_SAMPLE_ATTEMPTS {
            if out.len() == count {
                break;
            }
            let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
            if (0..n).all(|i| (i + 1..n).all(|j| (x[i] - x[j]).abs() >= args.tol)) {
                out.push(x);
            }
        }
        return Ok(out);
    }
    if args.theta.is_empty() {
        return Err(CliError::Usage("give --theta or --random-regular".into()));
    }
    Ok(args.theta.iter().map(|a| a.0.clone()).collect())
}

fn build_pair(args: &PairArgs) -> CliResult<(DualPairSpec, Option<EmbedArg>)> {
    let missing = |flag: &str| CliError::Usage(format!("--pair {} needs {flag}", args.pair));
    let kind: PairKind = args.pair.into();
    if kind == PairKind::UU {
        let p = args.p.ok_or_else(|| missing("--p"))?;
        let q = args.q.ok_or_else(|| missing("--q"))?;
        return Ok((DualPairSpec::uu(args.n, p, q)?, args.m));
    }
    let m = match args.m {
        Some(EmbedArg::Fixed(m)) => m,
        _ => return Err(missing("--m <size of G′>")),
    };
    Ok((DualPairSpec::from_kind(kind, args.n, m, 0)?, None))
}

/// The character for `(pair, ν)` at embedding `m`; `auto` picks the lower end of the support interval.
fn build_character(args: &PairArgs, nu: &Weight, warnings: &mut Vec<String>) -> CliResult<ThetaCharacter> {
    let (pair, embed) = build_pair(args)?;
    let cd = howe::validate_weight(&pair, nu)?;
    let m = match embed {
        Some(EmbedArg::Fixed(m)) => m,
        _ => {
            let iv = howe::support_interval(&pair, &cd);
            if pair.kind() == PairKind::UU {
                warnings.push(format!("m chosen as {} from the support interval [{}, {}]", iv.lo, iv.lo, iv.hi));
            }
            iv.lo
        }
    };
    Ok(ThetaCharacter::from_data(pair, cd, m)?)
}

fn pair_meta(tc: &ThetaCharacter, seed: Option<u64>) -> Meta {
    let mut meta = Meta::new();
    meta.pair = Some(tc.pair().to_string());
    meta.nu = Some(rational_list(tc.data().nu.coords()));
    // For pairs other than `UU` the embedding is fixed; `--m` named the size of G′.
    meta.m = (tc.pair().kind() == PairKind::UU).then(|| tc.m());
    meta.seed = seed;
    meta
}

fn seed_of(points: &PointArgs) -> Option<u64> {
    points.random_regular.map(|_| points.seed)
}

fn family_system(family: Family, rank: usize) -> CliResult<RootSystem> {
    Ok(rootsys::build_root_system(family, rank)?)
}

fn run(cli: &Cli) -> CliResult<Report> {
    match &cli.command {
        Command::Roots(a) => {
            let rs = family_system(a.family, a.rank)?;
            let mut meta = Meta::new();
            meta.insert("family", json!(format!("{:?}", a.family)));
            meta.insert("rank", json!(a.rank));
            meta.insert("positive_roots", json!(rs.positive_roots.len()));
            let results = rs.positive_roots.iter().map(|r| json!({ "root": rational_list(r.coords()) })).collect();
            Ok(Report::new(meta, results))
        }
        Command::Rho(a) => {
            let rs = family_system(a.family, a.rank)?;
            let mut meta = Meta::new();
            meta.insert("family", json!(format!("{:?}", a.family)));
            meta.insert("rank", json!(a.rank));
            Ok(Report::new(meta, vec![json!({ "rho": rational_list(rootsys::rho(&rs).coords()) })]))
        }
        Command::Char(a) => {
            let rs = family_system(a.family, a.lambda.len())?;
            let pts = sample_points(&a.points, &rs)?;
            let mut meta = Meta::new();
            meta.insert("family", json!(format!("{:?}", a.family)));
            meta.insert("lambda", json!(rational_list(a.lambda.coords())));
            meta.seed = seed_of(&a.points);
            let results = pts
                .iter()
                .map(|t| Ok(point_value(t.angles(), weylchar::weyl_character(&rs, &a.lambda, t)?)))
                .collect::<CliResult<_>>()?;
            Ok(Report::new(meta, results))
        }
        Command::Dim(a) => {
            let rs = family_system(a.family, a.lambda.len())?;
            let d = weylchar::weyl_dimension(&rs, &a.lambda)?;
            let mut meta = Meta::new();
            meta.insert("family", json!(format!("{:?}", a.family)));
            meta.insert("lambda", json!(rational_list(a.lambda.coords())));
            Ok(Report::new(meta, vec![json!({ "dimension": d.to_string() })]))
        }
        Command::Theta(a) | Command::Numerator(a) => {
            let numerator = matches!(cli.command, Command::Numerator(_));
            let mut warnings = Vec::new();
            let mut tc = build_character(&a.pair, &a.nu, &mut warnings)?;
            if a.normalize {
                let c = thetachar::ktype_expansion(&tc, a.truncation)?.constant;
                tc = tc.with_normalization(c)?;
            } else {
                warnings.push("values carry an undetermined global constant; pass --normalize to fix it".into());
            }
            let pts = sample_points(&a.points, &tc.pair().rs_gprime())?;
            let mut meta = pair_meta(&tc, seed_of(&a.points));
            meta.insert("constant", json!(tc.normalization().map_or("1".into(), |c| c.to_string())));
            meta.insert("normalized", json!(a.normalize));
            meta.insert("index_set", json!(tc.index_set()));
            let results = pts
                .iter()
                .map(|t| {
                    let v = if numerator {
                        thetachar::theta_numerator_form(&tc, t)?
                    } else {
                        thetachar::theta_eval(&tc, t)?
                    };
                    Ok(point_value(t.angles(), v))
                })
                .collect::<CliResult<_>>()?;
            Ok(Report::new(meta, results).with_warnings(warnings))
        }
        Command::ThetaClosedU1(a) => {
            let rs = family_system(Family::A, a.p + a.q)?;
            let pts = sample_points(&a.points, &rs)?;
            let mut meta = Meta::new();
            meta.pair = Some(DualPairSpec::uu(1, a.p, a.q)?.to_string());
            meta.m = Some(a.m);
            meta.seed = seed_of(&a.points);
            meta.insert("lambda1", json!(a.lambda1));
            let results = pts
                .iter()
                .map(|t| Ok(point_value(t.angles(), thetachar::theta_u1_closed(a.p, a.q, a.lambda1, a.m, t)?)))
                .collect::<CliResult<_>>()?;
            let warn = "closed form equals the character up to a global constant".to_string();
            Ok(Report::new(meta, results).with_warnings(vec![warn]))
        }
        Command::Constant(a) => {
            let mut warnings = Vec::new();
            let tc = build_character(&a.pair, &a.nu, &mut warnings)?;
            let (c, minimal) = match &a.lambda_min {
                Some(l) => (thetachar::normalizing_constant(&tc, l, a.truncation)?, l.clone()),
                None => {
                    let kt = thetachar::ktype_expansion(&tc, a.truncation)?;
                    (kt.constant, kt.minimal)
                }
            };
            let mut meta = pair_meta(&tc, None);
            meta.insert("truncation", json!(a.truncation));
            let result = json!({ "constant": c.to_string(), "minimal_ktype": rational_list(minimal.coords()) });
            Ok(Report::new(meta, vec![result]).with_warnings(warnings))
        }
        Command::Ktypes(a) => {
            let mut warnings = Vec::new();
            let tc = build_character(&a.pair, &a.nu, &mut warnings)?;
            let kt = thetachar::ktype_expansion(&tc, a.truncation)?;
            let mut meta = pair_meta(&tc, None);
            meta.insert("truncation", json!(a.truncation));
            meta.insert("constant", json!(kt.constant.to_string()));
            meta.insert("minimal_ktype", json!(rational_list(kt.minimal.coords())));
            let results = kt
                .multiplicities
                .iter()
                .rev()
                .map(|(w, &mult)| json!({ "ktype": rational_list(w.coords()), "multiplicity": mult }))
                .collect();
            Ok(Report::new(meta, results).with_warnings(warnings))
        }
        Command::Support(a) => {
            let (pair, _) = build_pair(&a.pair)?;
            let cd = howe::validate_weight(&pair, &a.nu)?;
            let iv = howe::support_interval(&pair, &cd);
            let mut meta = Meta::new();
            meta.pair = Some(pair.to_string());
            meta.nu = Some(rational_list(cd.nu.coords()));
            meta.insert("mu_prime", json!(rational_list(cd.mu_prime.coords())));
            meta.insert("a", json!(rational_list(&iv.a)));
            meta.insert("b", json!(rational_list(&iv.b)));
            let results = (iv.lo..=iv.hi)
                .map(|m| Ok(json!({ "m": m, "index_set": howe::embedded_index_set(&pair, &iv, m)? })))
                .collect::<CliResult<_>>()?;
            meta.insert("lo", json!(iv.lo));
            meta.insert("hi", json!(iv.hi));
            Ok(Report::new(meta, results))
        }
        Command::Identity(a) => {
            let mode = match a.mode {
                IdentityMode::Grid => VandermondeMode::DeterministicGrid,
                IdentityMode::Random => VandermondeMode::RandomRational {
                    seed: a.seed,
                    trials: a.trials,
                },
            };
            let verdict = match thetachar::vandermonde_identity_check(a.p, a.q, a.k, mode)? {
                Verdict::Holds if a.mode == IdentityMode::Grid => "proved".to_string(),
                Verdict::Holds => "holds at all sampled points".to_string(),
                Verdict::Fails(why) => format!("fails: {why}"),
                Verdict::NotInAssertedRange => "not in asserted range".to_string(),
            };
            let mut meta = Meta::new();
            meta.insert("p", json!(a.p));
            meta.insert("q", json!(a.q));
            meta.insert("k", json!(a.k));
            meta.insert("mode", json!(a.mode.to_string()));
            if a.mode == IdentityMode::Random {
                meta.seed = Some(a.seed);
            }
            Ok(Report::new(meta, vec![json!({ "verdict": verdict })]))
        }
        Command::Rdv(a) => {
            let rs = family_system(a.family, a.lambda.len())?;
            let op = OrbitParameter::new(&rs, &rs, a.lambda.clone())?;
            let xs = sample_lie_points(&a.points, a.lambda.len())?;
            let mut meta = Meta::new();
            meta.insert("family", json!(format!("{:?}", a.family)));
            meta.insert("lambda", json!(rational_list(a.lambda.coords())));
            meta.insert("liouville", json!(orbits::liouville_normalization(&op)));
            meta.seed = seed_of(&a.points);
            let results = xs
                .iter()
                .map(|x| Ok(point_value(x, orbits::rdv_fourier(&op, x)?)))
                .collect::<CliResult<_>>()?;
            Ok(Report::new(meta, results))
        }
        Command::Oracle { oracle } => run_oracle(oracle),
        Command::Verify(a) => {
            let report = verify::run_suite(a.quick, a.tol);
            if report.results.iter().all(|r| r["passed"] == Value::Bool(true)) {
                Ok(report)
            } else {
                Err(CliError::Verification(Box::new(report)))
            }
        }
    }
}

fn integer_parts(lambda: &Weight) -> CliResult<Vec<i64>> {
    lambda
        .coords()
        .iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| CliError::Domain(howechar::Error::NonIntegralExponent(lambda.to_string())))
}

fn run_oracle(cmd: &OracleCommand) -> CliResult<Report> {
    match cmd {
        OracleCommand::Schur { lambda, points } => {
            let parts = integer_parts(lambda)?;
            let rs = family_system(Family::A, parts.len())?;
            let pts = sample_points(points, &rs)?;
            let mut meta = Meta::new();
            meta.insert("oracle", json!("schur"));
            meta.insert("lambda", json!(parts));
            meta.seed = seed_of(points);
            let results = pts
                .iter()
                .map(|t| {
                    let x: Vec<Complex64> = t.angles().iter().map(|&a| Complex64::from_polar(1.0, a)).collect();
                    Ok(point_value(t.angles(), weylchar::schur_oracle(&parts, &x)?))
                })
                .collect::<CliResult<_>>()?;
            Ok(Report::new(meta, results))
        }
        OracleCommand::Gt { lambda } => {
            let parts = integer_parts(lambda)?;
            let weights = weylchar::gelfand_tsetlin_weights(&parts)?;
            let mut meta = Meta::new();
            meta.insert("oracle", json!("gelfand-tsetlin"));
            meta.insert("lambda", json!(parts));
            meta.insert("count", json!(weights.len()));
            let results = weights.iter().map(|w| json!({ "weight": w })).collect();
            Ok(Report::new(meta, results))
        }
        OracleCommand::Hciz { lambda, points } => {
            let xs = sample_lie_points(points, lambda.len())?;
            let mut meta = Meta::new();
            meta.insert("oracle", json!("hciz"));
            meta.insert("lambda", json!(rational_list(lambda.coords())));
            meta.seed = seed_of(points);
            let results = xs
                .iter()
                .map(|x| Ok(point_value(x, orbits::orbit_integral_hciz(lambda, x)?)))
                .collect::<CliResult<_>>()?;
            Ok(Report::new(meta, results))
        }
        OracleCommand::MonteCarlo { lambda, x, samples, seed } => {
            let est = orbits::orbit_integral_monte_carlo(lambda, &x.0, *samples, *seed)?;
            let mut meta = Meta::new();
            meta.insert("oracle", json!("monte-carlo"));
            meta.insert("lambda", json!(rational_list(lambda.coords())));
            meta.insert("samples", json!(est.samples));
            meta.seed = Some(*seed);
            let mut result = point_value(&x.0, est.mean);
            result["std_error"] = json!(est.std_error);
            Ok(Report::new(meta, vec![result]))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = configure_threads().and_then(|()| run(&cli));
    match outcome {
        Ok(report) => {
            report.print(cli.format);
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(e)) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(1)
        }
        Err(CliError::Verification(report)) => {
            report.print(cli.format);
            eprintln!("error: verification failed");
            ExitCode::from(1)
        }
    }
}
