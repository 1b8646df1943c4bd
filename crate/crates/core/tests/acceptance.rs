//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::f64::consts::{FRAC_PI_2, PI};
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::{random_rational, random_trig, CORPUS};
use secant::conics::{
    circle_from_b, circle_from_d, enumerate_primitive_triples, hyperbola_from_pplus, parameter_from_triple,
    projection_coincidence_residual, triple_from_parameter, LegOrder,
};
use secant::engine::{antiderivative_via, constant_difference_check, diff_check};
use secant::mercator::{conformality_ratio, mercator_y_numeric};
use secant::substitution::substitution;
use secant::trig::{trig_derivative, verify_log_derivative};
use secant::{apply_substitution, integrate_rational, integrate_trig, parse_trig, Method, SubstitutionKind, VerificationDomain};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn four_method_agreement() -> Outcome {
    let sec = parse_trig("sec(x)").unwrap();
    let dom = VerificationDomain::new(-FRAC_PI_2 + 0.1, FRAC_PI_2 - 0.1, 25, 1e-5).unwrap();
    let mut results = Vec::new();
    for kind in SubstitutionKind::ALL {
        let rep = integrate_trig(&sec, Method::Fixed(kind), &dom);
        let f = rep.antiderivative.ok_or_else(|| format!("{kind} failed: {:?}", rep.failure))?;
        results.push((kind, f));
    }
    for (kind, f) in &results {
        if matches!(kind, SubstitutionKind::Gregory | SubstitutionKind::ModifiedWeierstrass) {
            ensure(f.to_string() == "ln|sec(x)+tan(x)| + C", || format!("{kind} gave {f}"))?;
        }
    }
    let mut worst = 0.0f64;
    for (i, (k1, f1)) in results.iter().enumerate() {
        for (k2, f2) in &results[i + 1..] {
            let (constant, c) = constant_difference_check(f1, f2, &dom).map_err(|e| e.to_string())?;
            ensure(constant && c.abs() < 1e-8, || format!("{k1} vs {k2}: constant={constant}, c={c:e}"))?;
            worst = worst.max(c.abs());
        }
    }
    Ok(format!("4/4 methods succeed, 6 pairs agree, max |C| = {worst:.1e}"))
}

fn derivative_oracle() -> Outcome {
    let dom = VerificationDomain::default();
    ensure(dom.samples == 25 && dom.h == 1e-5, || "unexpected default domain".into())?;
    let mut successes = 0;
    let mut worst = 0.0f64;
    for src in CORPUS {
        let r = parse_trig(src).map_err(|e| format!("{src}: {e}"))?;
        let mut any = false;
        for kind in SubstitutionKind::ALL {
            let Ok(f) = antiderivative_via(&r, kind) else { continue };
            let err = diff_check(&f, &r, &dom).map_err(|e| format!("{src} via {kind}: {e}"))?;
            ensure(err < 1e-6, || format!("{src} via {kind}: rel error {err:e}"))?;
            worst = worst.max(err);
            successes += 1;
            any = true;
        }
        ensure(any, || format!("{src}: no method succeeded"))?;
    }
    Ok(format!("{} integrands, {successes} integrations, max rel error {worst:.1e}", CORPUS.len()))
}

fn symbolic_identities() -> Outcome {
    let p = |s: &str| parse_trig(s).unwrap();
    let cases = [("tan(x)", "sec(x)^2"), ("sec(x)", "sec(x)*tan(x)"), ("sec(x)+tan(x)", "sec(x)*(sec(x)+tan(x))")];
    for (f, df) in cases {
        ensure(trig_derivative(&p(f)) == p(df), || format!("({f})' != {df}"))?;
    }
    ensure(verify_log_derivative(&p("sec(x)"), &p("sec(x)+tan(x)")), || "sec is not (sec+tan)'/(sec+tan)".into())?;
    Ok("3 derivative identities exact, log-derivative verified".into())
}

fn parametrization_exactness() -> Outcome {
    let mut rng = StdRng::seed_from_u64(4);
    for _ in 0..1000 {
        let t = random_rational(&mut rng, 1_000_000, 1_000_000);
        ensure(circle_from_b(&t).on_curve(), || format!("circle_from_b({t}) off circle"))?;
        ensure(circle_from_d(&t).on_curve(), || format!("circle_from_d({t}) off circle"))?;
        if t != secant::arith::int(0) {
            let h = hyperbola_from_pplus(&t).map_err(|e| e.to_string())?;
            ensure(h.on_curve(), || format!("hyperbola_from_pplus({t}) off hyperbola"))?;
        }
    }
    Ok("1000 parameters, all points exact".into())
}

fn brute_force_triples(max_z: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for z in 1..=max_z {
        for x in 1..z {
            for y in x..z {
                if x * x + y * y == z * z && x.gcd(&y) == 1 {
                    out.push((x, y, z));
                }
            }
        }
    }
    out.sort_by_key(|&(x, y, z)| (z, x, y));
    out
}

fn triples() -> Outcome {
    let n100 = enumerate_primitive_triples(100).len();
    ensure(n100 == 16, || format!("{n100} triples with hypotenuse <= 100"))?;
    let oracle = brute_force_triples(500);
    for max_z in 0..=500u64 {
        let got: Vec<(i64, i64, i64)> = enumerate_primitive_triples(max_z)
            .iter()
            .map(|t| {
                let (x, y, z) = t.as_tuple();
                (x.try_into().unwrap(), y.try_into().unwrap(), z.try_into().unwrap())
            })
            .collect();
        let want: Vec<_> = oracle.iter().copied().filter(|t| t.2 <= max_z as i64).collect();
        ensure(got == want, || format!("mismatch at max_z = {max_z}"))?;
    }
    let mut pairs = 0;
    for b in 1..=50i64 {
        for a in 1..b {
            if (a + b) % 2 == 0 || a.gcd(&b) != 1 {
                continue;
            }
            let tr = triple_from_parameter(&BigInt::from(a), &BigInt::from(b)).map_err(|e| e.to_string())?;
            // the odd leg b² − a² is the x-coordinate of the circle point
            let (small, _) = tr.legs();
            let order = if small.is_odd() { LegOrder::Ascending } else { LegOrder::Descending };
            let back = parameter_from_triple(&tr, order);
            ensure(back == secant::arith::rat(a, b), || format!("{a}/{b} -> {tr} -> {back}"))?;
            pairs += 1;
        }
    }
    Ok(format!("16 triples to 100, oracle match for max_z <= 500, {pairs} parameter round trips"))
}

fn gregory_equals_modified() -> Outcome {
    let mut rng = StdRng::seed_from_u64(6);
    let greg = substitution(SubstitutionKind::Gregory);
    let modw = substitution(SubstitutionKind::ModifiedWeierstrass);
    for i in 0..100 {
        let r = random_trig(&mut rng);
        let a = apply_substitution(&r, &greg).map(|s| s.integrand);
        let b = apply_substitution(&r, &modw).map(|s| s.integrand.with_var('u'));
        ensure(a == b, || format!("input #{i} ({r}) differs"))?;
    }
    Ok("100 random integrands pull back identically".into())
}

fn mercator() -> Outcome {
    let exact = (2.0 + 3f64.sqrt()).ln();
    let y = mercator_y_numeric(PI / 3.0, 1e-10).map_err(|e| e.to_string())?;
    let quad_err = (y - exact).abs();
    ensure(quad_err < 1e-9, || format!("quadrature error {quad_err:e}"))?;
    let mut worst = 0.0f64;
    for k in 0..=280 {
        let phi = -1.4 + 0.01 * k as f64;
        let ratio = conformality_ratio(phi, 1e-4).map_err(|e| e.to_string())?;
        worst = worst.max((ratio - 1.0).abs());
    }
    ensure(worst < 1e-6, || format!("conformality off by {worst:e}"))?;
    Ok(format!("quadrature error {quad_err:.1e}, max |ratio - 1| = {worst:.1e} over 281 latitudes"))
}

fn projection_coincidence() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let theta = rng.gen_range(-1.47..1.47);
        let r = projection_coincidence_residual(theta).map_err(|e| e.to_string())?;
        ensure(r < 1e-9, || format!("residual {r:e} at {theta}"))?;
        worst = worst.max(r);
    }
    Ok(format!("100 angles, max residual {worst:.1e}"))
}

fn integration_round_trip() -> Outcome {
    let mut checked = 0;
    for src in CORPUS {
        let r = parse_trig(src).unwrap();
        for kind in SubstitutionKind::ALL {
            let Ok(pulled) = apply_substitution(&r, &substitution(kind)) else { continue };
            let Ok(f) = integrate_rational(&pulled.integrand) else { continue };
            let df = f.derivative_param().ok_or_else(|| format!("{src} via {kind}: no symbolic derivative"))?;
            ensure(df == pulled.integrand, || format!("{src} via {kind}: F' = {df}, f = {}", pulled.integrand))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} rational antiderivatives differentiate back exactly"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("four-method agreement on sec(x)", four_method_agreement),
        ("derivative oracle over corpus", derivative_oracle),
        ("symbolic derivative identities", symbolic_identities),
        ("parametrization exactness", parametrization_exactness),
        ("primitive Pythagorean triples", triples),
        ("Gregory = modified Weierstrass", gregory_equals_modified),
        ("Mercator quadrature and conformality", mercator),
        ("projection coincidence", projection_coincidence),
        ("rational integration round trip", integration_round_trip),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {}. {name}: {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {}. {name}: {detail} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("{} of {} acceptance criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
