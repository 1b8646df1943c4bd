use num_traits::{One, Zero};

use super::IntegrationError;
use crate::arith::{poly_gcd, poly_xgcd, rational_roots, Polynomial, Rational, RationalFunction};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartialFractionTerm {
    PolyPart(Polynomial),
    /// `residue / (u − root)^power`
    LinearPart {
        residue: Rational,
        root: Rational,
        power: u32,
    },
    /// `numerator / quadratic^power`, the quadratic monic without rational roots.
    QuadraticPart {
        numerator: Polynomial,
        quadratic: Polynomial,
        power: u32,
    },
}

impl PartialFractionTerm {
    pub fn to_ratfunc(&self, var: char) -> RationalFunction {
        match self {
            PartialFractionTerm::PolyPart(p) => RationalFunction::from_poly(p.clone()),
            PartialFractionTerm::LinearPart { residue, root, power } => {
                RationalFunction::new(Polynomial::constant(residue.clone(), var), Polynomial::linear_factor(root, var).pow(*power))
                    .expect("nonzero")
            }
            PartialFractionTerm::QuadraticPart { numerator, quadratic, power } => {
                RationalFunction::new(numerator.clone(), quadratic.pow(*power)).expect("nonzero")
            }
        }
    }
}

/// Splits a root-free monic cofactor into monic quadratics. Handles a single
/// quadratic and even polynomials `q(u²)` whose `q` splits over the rationals.
fn split_quadratics(c: &Polynomial) -> Option<Vec<Polynomial>> {
    let var = c.variable();
    match c.degree() {
        Some(0) => return Some(Vec::new()),
        Some(2) => return Some(vec![c.clone()]),
        _ => {}
    }
    let q = c.even_part_in_square()?;
    let roots = rational_roots(&q);
    if roots.len() != q.degree()? {
        return None;
    }
    let quads: Vec<Polynomial> =
        roots.iter().map(|w| Polynomial::from_coeffs(vec![-w.clone(), Rational::zero(), Rational::one()], var)).collect();
    // repeated w would mean c is not squarefree
    for (i, a) in quads.iter().enumerate() {
        if quads[i + 1..].iter().any(|b| !poly_gcd(a, b).is_one()) {
            return None;
        }
    }
    Some(quads)
}

/// Partial fraction decomposition of `f`, whose denominator must be squarefree.
pub fn partial_fractions(f: &RationalFunction) -> Result<Vec<PartialFractionTerm>, IntegrationError> {
    let var = f.variable();
    let den = f.den();
    if !poly_gcd(den, &den.derivative()).is_one() {
        return Err(IntegrationError::NotSquarefree { denominator: den.to_string() });
    }
    let (quot, rem) = f.num().div_rem(den);
    let mut terms = Vec::new();
    if !quot.is_zero() {
        terms.push(PartialFractionTerm::PolyPart(quot));
    }
    if rem.is_zero() {
        return Ok(terms);
    }
    let dden = den.derivative();
    let mut cofactor = den.clone();
    let mut rest = RationalFunction::new(rem.clone(), den.clone()).expect("nonzero");
    for root in rational_roots(den) {
        let residue = rem.eval(&root) / dden.eval(&root);
        cofactor = cofactor.exact_div(&Polynomial::linear_factor(&root, var)).expect("root divides");
        let term = PartialFractionTerm::LinearPart { residue, root, power: 1 };
        rest = &rest - &term.to_ratfunc(var);
        terms.push(term);
    }
    if rest.is_zero() {
        return Ok(terms);
    }
    let unsupported = || IntegrationError::UnsupportedDenominator { denominator: cofactor.to_string() };
    let quads = split_quadratics(&cofactor).ok_or_else(unsupported)?;
    // numerator of `rest` over the full cofactor
    let scaled = rest.num() * &cofactor.exact_div(rest.den()).ok_or_else(unsupported)?;
    for q in &quads {
        let others = cofactor.exact_div(q).expect("factor divides");
        let (_, inv, _) = poly_xgcd(&others, q);
        let numerator = (&scaled * &inv).rem(q);
        if !numerator.is_zero() {
            terms.push(PartialFractionTerm::QuadraticPart { numerator, quadratic: q.clone(), power: 1 });
        }
    }
    Ok(terms)
}
