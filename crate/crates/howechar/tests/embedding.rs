//! Characters for different embedding parameters differ by a constant factor.

use std::f64::consts::PI;

use howechar::howe::{self, DualPairSpec};
use howechar::thetachar::{self, ThetaCharacter};
use howechar::torus::{self, TorusPoint, Weight};
use howechar::Rational;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ratios(a: &ThetaCharacter, b: &ThetaCharacter, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    let rs = a.pair().rs_gprime();
    let mut out = Vec::new();
    while out.len() < 8 {
        let t = TorusPoint::new((0..rs.rank).map(|_| rng.gen_range(-PI..PI)).collect()).unwrap();
        if !torus::is_regular(&rs, &t, 1e-2) {
            continue;
        }
        out.push(thetachar::theta_eval(a, &t).unwrap() / thetachar::theta_eval(b, &t).unwrap());
    }
    out
}

#[test]
fn rank_two_ratios_are_constant() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut checked = 0;
    for (p, q) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        let pair = DualPairSpec::uu(2, p, q).unwrap();
        let shift = pair.central_shift();
        for a in -3..=3i64 {
            for b in -3..=a {
                let nu = Weight::new(vec![shift + Rational::from(a), shift + Rational::from(b)]).unwrap();
                let Ok(cd) = howe::validate_weight(&pair, &nu) else { continue };
                let iv = howe::support_interval(&pair, &cd);
                let base = ThetaCharacter::from_data(pair, cd.clone(), iv.lo).unwrap();
                for m in iv.lo + 1..=iv.hi {
                    let other = ThetaCharacter::from_data(pair, cd.clone(), m).unwrap();
                    let r = ratios(&other, &base, &mut rng);
                    let spread = r.iter().map(|x| (x - r[0]).norm()).fold(0.0, f64::max) / r[0].norm();
                    assert!(spread < 1e-9, "{pair} ν={nu} m={m}: spread {spread:.1e}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 0);
}
