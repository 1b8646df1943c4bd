//! Exact integration of univariate rational functions, and the
//! [`Antiderivative`] representation shared with the trig pipeline.

mod hermite;
mod partial;

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use hermite::hermite_reduce;
pub use partial::{partial_fractions, PartialFractionTerm};

use crate::arith::{rational_sqrt, render_coefficient, render_ratfunc, Polynomial, Rational, RationalFunction, MINUS};
use crate::trig::{TrigError, TrigRational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntegrationError {
    #[error("unsupported denominator {denominator}: no split into rational linear and quadratic factors")]
    UnsupportedDenominator { denominator: String },
    #[error("arctangent scale is irrational for quadratic {quadratic}")]
    IrrationalAtanScale { quadratic: String },
    #[error("denominator {denominator} is not squarefree")]
    NotSquarefree { denominator: String },
}

/// A function of `x` given by its canonical value and a display text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrigArg {
    pub value: TrigRational,
    pub text: String,
}

/// Argument or payload of an antiderivative term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Rational function of the integration parameter.
    Param(RationalFunction),
    /// Rational function of `sin x`, `cos x`.
    Trig(TrigArg),
}

impl Expr {
    pub fn render(&self) -> String {
        match self {
            Expr::Param(f) => render_ratfunc(f, &f.variable().to_string()),
            Expr::Trig(t) => t.text.clone(),
        }
    }

    /// Value at `at` (the parameter value, or `x` for trig expressions).
    pub fn eval(&self, at: f64, min_den: f64) -> Result<f64, TrigError> {
        match self {
            Expr::Param(f) => {
                let d = f.den().eval_f64(at);
                if d.is_nan() || d.abs() < min_den {
                    return Err(TrigError::SingularPoint { x: at });
                }
                Ok(f.num().eval_f64(at) / d)
            }
            Expr::Trig(t) => t.value.eval_guarded(at, min_den),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Poly(Expr),
    Rational(Expr),
    Log { coeff: Rational, arg: Expr, abs: bool },
    Atan { coeff: Rational, arg: Expr },
}

impl Term {
    fn rank(&self) -> u8 {
        match self {
            Term::Poly(_) => 0,
            Term::Rational(_) => 1,
            Term::Log { .. } => 2,
            Term::Atan { .. } => 3,
        }
    }

    pub fn eval(&self, at: f64, min_den: f64) -> Result<f64, TrigError> {
        Ok(match self {
            Term::Poly(e) | Term::Rational(e) => e.eval(at, min_den)?,
            Term::Log { coeff, arg, .. } => {
                let v = arg.eval(at, min_den)?;
                if v.is_nan() || v.abs() < min_den {
                    return Err(TrigError::SingularPoint { x: at });
                }
                crate::arith::rational_to_f64(coeff) * v.abs().ln()
            }
            Term::Atan { coeff, arg } => crate::arith::rational_to_f64(coeff) * arg.eval(at, min_den)?.atan(),
        })
    }

    /// `(sign, body)` for display; the body is rendered without its sign.
    fn render(&self) -> (bool, String) {
        fn with_coeff(c: &Rational, call: String) -> (bool, String) {
            let a = c.abs();
            let body = if a.is_one() { call } else { format!("{}*{call}", render_coefficient(&a)) };
            (c.is_negative(), body)
        }
        match self {
            Term::Poly(e) | Term::Rational(e) => {
                let text = e.render();
                match text.strip_prefix(MINUS) {
                    Some(rest) if !crate::arith::render::has_top_level_sum(rest) => (true, rest.to_string()),
                    _ => (false, text),
                }
            }
            Term::Log { coeff, arg, abs } => {
                let inner = arg.render();
                let call = if *abs { format!("ln|{inner}|") } else { format!("ln({inner})") };
                with_coeff(coeff, call)
            }
            Term::Atan { coeff, arg } => with_coeff(coeff, format!("atan({})", arg.render())),
        }
    }
}

/// Sum of polynomial, rational, logarithmic and arctangent terms. The
/// constant of integration is implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Antiderivative {
    pub terms: Vec<Term>,
    /// `'x'` once back-substituted, otherwise the parameter symbol.
    pub variable: char,
}

impl Antiderivative {
    pub fn zero(variable: char) -> Self {
        Antiderivative { terms: Vec::new(), variable }
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn eval(&self, at: f64, min_den: f64) -> Result<f64, TrigError> {
        self.terms.iter().map(|t| t.eval(at, min_den)).sum()
    }

    /// Exact derivative of a parameter-domain antiderivative.
    pub fn derivative_param(&self) -> Option<RationalFunction> {
        let mut acc = RationalFunction::zero(self.variable);
        for t in &self.terms {
            let d = match t {
                Term::Poly(Expr::Param(f)) | Term::Rational(Expr::Param(f)) => f.derivative(),
                Term::Log { coeff, arg: Expr::Param(f), .. } => f.derivative().checked_div(f).ok()?.scale(coeff),
                Term::Atan { coeff, arg: Expr::Param(f) } => {
                    let one = RationalFunction::one(self.variable);
                    f.derivative().checked_div(&(&one + &(f * f))).ok()?.scale(coeff)
                }
                _ => return None,
            };
            acc = &acc + &d;
        }
        Some(acc)
    }

    /// Exact derivative in `x` of a back-substituted antiderivative.
    pub fn derivative_trig(&self) -> Option<TrigRational> {
        let mut acc = TrigRational::zero();
        for t in &self.terms {
            let d = match t {
                Term::Poly(Expr::Trig(a)) | Term::Rational(Expr::Trig(a)) => a.value.derivative(),
                Term::Log { coeff, arg: Expr::Trig(a), .. } => a.value.derivative().checked_div(&a.value).ok()?.scale(coeff),
                Term::Atan { coeff, arg: Expr::Trig(a) } => {
                    let denom = &TrigRational::one() + &(&a.value * &a.value);
                    a.value.derivative().checked_div(&denom).ok()?.scale(coeff)
                }
                _ => return None,
            };
            acc = &acc + &d;
        }
        Some(acc)
    }

    /// Puts terms in canonical order: polynomial, rational, logs by argument, atans.
    pub fn sort_terms(&mut self) {
        self.terms.sort_by(|a, b| a.rank().cmp(&b.rank()).then_with(|| arg_order(a, b)));
    }
}

fn param_key(t: &Term) -> Option<(usize, Vec<Rational>)> {
    let f = match t {
        Term::Log { arg: Expr::Param(f), .. } | Term::Atan { arg: Expr::Param(f), .. } => f,
        _ => return None,
    };
    let p = f.num();
    let deg = p.degree().unwrap_or(0);
    if deg == 1 && f.den().is_one() {
        // linear arguments sort by root
        return Some((1, vec![-p.coeff(0) / p.coeff(1)]));
    }
    Some((deg, p.monic().coeffs().to_vec()))
}

fn arg_order(a: &Term, b: &Term) -> Ordering {
    match (param_key(a), param_key(b)) {
        (Some(x), Some(y)) => x.cmp(&y),
        _ => Ordering::Equal,
    }
}

impl fmt::Display for Antiderivative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0 + C");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let (neg, body) = t.render();
            match (i, neg) {
                (0, true) => write!(f, "{MINUS}{body}")?,
                (0, false) => f.write_str(&body)?,
                (_, true) => write!(f, " {MINUS} {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        f.write_str(" + C")
    }
}

/// Log argument for the factor `u − root`, oriented so it reads `u`, `a+u` or `a−u`.
fn linear_log_arg(root: &Rational, var: char) -> RationalFunction {
    let p = if root.is_positive() {
        Polynomial::from_coeffs(vec![root.clone(), -Rational::one()], var)
    } else {
        Polynomial::linear_factor(root, var)
    };
    RationalFunction::from_poly(p)
}

/// `∫ (b·u + c) / (u² + p·u + q) du` as log and arctangent terms.
fn integrate_quadratic(numerator: &Polynomial, quadratic: &Polynomial, var: char) -> Result<Vec<Term>, IntegrationError> {
    let b = numerator.coeff(1);
    let c = numerator.coeff(0);
    let p = quadratic.coeff(1);
    let q = quadratic.coeff(0);
    let two = Rational::from_integer(2.into());
    let half_p = &p / &two;
    let shift = &q - &half_p * &half_p;
    let mut terms = Vec::new();
    if !b.is_zero() {
        terms.push(Term::Log {
            coeff: &b / &two,
            arg: Expr::Param(RationalFunction::from_poly(quadratic.clone())),
            abs: !shift.is_positive(),
        });
    }
    let k_num = &c - &b * &half_p;
    if !k_num.is_zero() {
        let m = rational_sqrt(&shift)
            .filter(|m| !m.is_zero())
            .ok_or_else(|| IntegrationError::IrrationalAtanScale { quadratic: quadratic.to_string() })?;
        let arg = Polynomial::from_coeffs(vec![&half_p / &m, m.recip()], var);
        terms.push(Term::Atan { coeff: &k_num / &m, arg: Expr::Param(RationalFunction::from_poly(arg)) });
    }
    Ok(terms)
}

/// Exact antiderivative of a rational function.
pub fn integrate_rational(f: &RationalFunction) -> Result<Antiderivative, IntegrationError> {
    let var = f.variable();
    let (rational_part, remainder) = hermite_reduce(f);
    let mut out = Antiderivative::zero(var);
    if !rational_part.is_zero() {
        out.terms.push(Term::Rational(Expr::Param(rational_part)));
    }
    for term in partial_fractions(&remainder)? {
        match term {
            PartialFractionTerm::PolyPart(p) => {
                let integral = p.integral();
                if !integral.is_zero() {
                    out.terms.push(Term::Poly(Expr::Param(RationalFunction::from_poly(integral))));
                }
            }
            PartialFractionTerm::LinearPart { residue, root, .. } => {
                out.terms.push(Term::Log { coeff: residue, arg: Expr::Param(linear_log_arg(&root, var)), abs: true });
            }
            PartialFractionTerm::QuadraticPart { numerator, quadratic, .. } => {
                out.terms.extend(integrate_quadratic(&numerator, &quadratic, var)?);
            }
        }
    }
    out.sort_terms();
    Ok(out)
}
