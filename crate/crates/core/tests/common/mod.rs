#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;
use secant::arith::{rat, Polynomial, Rational, RationalFunction};
use secant::TrigRational;

/// Integrands every test target shares. Each is integrable by at least one
/// of the four substitutions.
pub const CORPUS: &[&str] = &[
    "sec(x)",
    "tan(x)",
    "sin(x)*cos(x)",
    "1/(1+sin(x))",
    "(1-sin(x))/cos(x)",
    "cos(x)/(1+sin(x))",
    "sin(x)/cos(x) + cos(x)/(1+sin(x))",
    "sec(x)^2",
    "sec(x)*tan(x)",
    "sec(x)*(sec(x)+tan(x))",
    "sec(x)+tan(x)",
    "sec(x)^3",
    "sec(x)^4",
    "sin(x)",
    "cos(x)",
    "1",
    "sin(x)^2",
    "cos(x)^2",
    "sin(x)^3",
    "cos(x)^3",
    "sin(x)^2*cos(x)",
    "sin(x)*cos(x)^2",
    "1/(1-sin(x))",
    "1/(1+cos(x))",
    "sin(x)/cos(x)^2",
    "sin(x)/(1+cos(x))",
    "tan(x)^2",
    "tan(x)*sec(x)^2",
    "cos(x)/(2+sin(x))",
    "1/(1+sin(x))^2",
    "sec(x) - cos(x)",
    "3*sec(x)/2",
    "cos(x)/(1-sin(x)^2)",
    "sin(x)*tan(x)",
];

pub fn random_rational(rng: &mut StdRng, num: i64, den: i64) -> Rational {
    rat(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

pub fn random_poly(rng: &mut StdRng, max_degree: usize, var: char) -> Polynomial {
    let n = rng.gen_range(0..=max_degree);
    let coeffs: Vec<i64> = (0..=n).map(|_| rng.gen_range(-5..=5)).collect();
    Polynomial::from_ints(&coeffs, var)
}

pub fn random_ratfunc(rng: &mut StdRng, var: char) -> RationalFunction {
    let num = random_poly(rng, 3, var);
    let den = loop {
        let d = random_poly(rng, 2, var);
        if !d.is_zero() {
            break d;
        }
    };
    RationalFunction::new(num, den).expect("nonzero denominator")
}

pub fn random_trig(rng: &mut StdRng) -> TrigRational {
    TrigRational::from_parts(random_ratfunc(rng, 'c'), random_ratfunc(rng, 'c'))
}
