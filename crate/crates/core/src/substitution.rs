//! The four secant substitutions as rational parametrizations.
//!
//! Weierstrass `t = tan(x/2)` and modified Weierstrass `s = tan(x/2 + π/4)`
//! come from stereographic projections of the unit circle from `(−1, 0)` and
//! `(0, 1)`. Gregory `u = sec x + tan x` projects the hyperbola `X² − Y² = 1`
//! from its point at infinity `[1 : −1 : 0]`; pulled back to the circle it
//! gives the same maps as the modified Weierstrass substitution. Barrow
//! `u = sin x` is a structural rewrite for integrands odd in `cos x`.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use thiserror::Error;

use crate::arith::{render_ratfunc, Polynomial, RationalFunction};
use crate::integrate::{Antiderivative, Expr, Term, TrigArg};
use crate::trig::{is_odd_in_cos, TrigError, TrigRational};

/// Default validity interval `(−π/2 + 1/10, π/2 − 1/10)`.
pub const DEFAULT_VALIDITY: (f64, f64) = (-FRAC_PI_2 + 0.1, FRAC_PI_2 - 0.1);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubstitutionKind {
    Gregory,
    ModifiedWeierstrass,
    Barrow,
    Weierstrass,
}

impl SubstitutionKind {
    /// Preference order used by automatic selection.
    pub const ALL: [SubstitutionKind; 4] =
        [SubstitutionKind::Gregory, SubstitutionKind::ModifiedWeierstrass, SubstitutionKind::Barrow, SubstitutionKind::Weierstrass];

    pub fn name(self) -> &'static str {
        match self {
            SubstitutionKind::Gregory => "gregory",
            SubstitutionKind::ModifiedWeierstrass => "modified-weierstrass",
            SubstitutionKind::Barrow => "barrow",
            SubstitutionKind::Weierstrass => "weierstrass",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }

    pub fn param(self) -> char {
        match self {
            SubstitutionKind::Gregory | SubstitutionKind::Barrow => 'u',
            SubstitutionKind::Weierstrass => 't',
            SubstitutionKind::ModifiedWeierstrass => 's',
        }
    }
}

impl fmt::Display for SubstitutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parametrization {
    /// `cos x`, `sin x` and `dx/dparam` as rational functions of the parameter.
    Conic { cos: RationalFunction, sin: RationalFunction, dx: RationalFunction },
    /// `u = sin x`, `du = cos x dx`; needs an integrand odd in `cos x`.
    OddInCos { sin: RationalFunction },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Substitution {
    pub kind: SubstitutionKind,
    pub param: char,
    pub map: Parametrization,
    /// The parameter as a function of `x`.
    pub back_sub: TrigArg,
    /// Open interval of `x` on which the parametrization is regular.
    pub validity: (f64, f64),
}

impl Substitution {
    pub fn cos_expr(&self) -> Option<&RationalFunction> {
        match &self.map {
            Parametrization::Conic { cos, .. } => Some(cos),
            Parametrization::OddInCos { .. } => None,
        }
    }

    pub fn sin_expr(&self) -> &RationalFunction {
        match &self.map {
            Parametrization::Conic { sin, .. } | Parametrization::OddInCos { sin } => sin,
        }
    }

    pub fn dx_expr(&self) -> Option<&RationalFunction> {
        match &self.map {
            Parametrization::Conic { dx, .. } => Some(dx),
            Parametrization::OddInCos { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubstitutionResult {
    pub integrand: RationalFunction,
    pub substitution: Substitution,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstitutionError {
    #[error("{kind} substitution does not apply: integrand is not odd in cos(x)")]
    NotApplicable { kind: SubstitutionKind },
    #[error("denominator vanishes identically after substitution")]
    DenominatorVanishesIdentically,
}

fn rf(num: &[i64], den: &[i64], var: char) -> RationalFunction {
    RationalFunction::new(Polynomial::from_ints(num, var), Polynomial::from_ints(den, var)).expect("nonzero")
}

/// Circle maps from the projection out of `(0, 1)`, shared by Gregory and
/// modified Weierstrass: `cos = 2p/(p²+1)`, `sin = (p²−1)/(p²+1)`, `dx = 2/(p²+1) dp`.
fn sec_plus_tan_maps(var: char) -> Parametrization {
    Parametrization::Conic { cos: rf(&[0, 2], &[1, 0, 1], var), sin: rf(&[-1, 0, 1], &[1, 0, 1], var), dx: rf(&[2], &[1, 0, 1], var) }
}

fn sec_plus_tan() -> TrigArg {
    TrigArg { value: &TrigRational::sec() + &TrigRational::tan(), text: "sec(x)+tan(x)".into() }
}

pub fn substitution(kind: SubstitutionKind) -> Substitution {
    let param = kind.param();
    let (map, back_sub) = match kind {
        SubstitutionKind::Weierstrass => (
            Parametrization::Conic {
                cos: rf(&[1, 0, -1], &[1, 0, 1], param),
                sin: rf(&[0, 2], &[1, 0, 1], param),
                dx: rf(&[2], &[1, 0, 1], param),
            },
            TrigArg {
                value: TrigRational::sin().checked_div(&(&TrigRational::one() + &TrigRational::cos())).expect("1 + cos is nonzero"),
                text: "tan(x/2)".into(),
            },
        ),
        SubstitutionKind::ModifiedWeierstrass | SubstitutionKind::Gregory => (sec_plus_tan_maps(param), sec_plus_tan()),
        SubstitutionKind::Barrow => {
            (Parametrization::OddInCos { sin: RationalFunction::var(param) }, TrigArg { value: TrigRational::sin(), text: "sin(x)".into() })
        }
    };
    Substitution { kind, param, map, back_sub, validity: DEFAULT_VALIDITY }
}

/// Gregory, modified Weierstrass, Barrow, Weierstrass.
pub fn builtin_substitutions() -> Vec<Substitution> {
    SubstitutionKind::ALL.into_iter().map(substitution).collect()
}

/// Rewrites an even rational function of `c` as a function of `u` via `c² = 1 − u²`.
fn even_in_cos_to_param(h: &RationalFunction, var: char) -> Option<RationalFunction> {
    let one_minus_u2 = Polynomial::from_ints(&[1, 0, -1], var);
    let n = h.num().even_part_in_square()?.compose(&one_minus_u2);
    let d = h.den().even_part_in_square()?.compose(&one_minus_u2);
    RationalFunction::new(n, d).ok()
}

/// Pulls `R(cos x, sin x) dx` back to a rational differential in the parameter.
pub fn apply_substitution(r: &TrigRational, sub: &Substitution) -> Result<SubstitutionResult, SubstitutionError> {
    let integrand = match &sub.map {
        Parametrization::Conic { cos, sin, dx } => {
            let alpha = r.alpha().compose(cos).map_err(|_| SubstitutionError::DenominatorVanishesIdentically)?;
            let beta = r.beta().compose(cos).map_err(|_| SubstitutionError::DenominatorVanishesIdentically)?;
            &(&alpha + &(&beta * sin)) * dx
        }
        Parametrization::OddInCos { sin } => {
            if !is_odd_in_cos(r) {
                return Err(SubstitutionError::NotApplicable { kind: sub.kind });
            }
            let c = RationalFunction::var(crate::trig::COS_VAR);
            let not_applicable = || SubstitutionError::NotApplicable { kind: sub.kind };
            let over_c = |f: &RationalFunction| f.checked_div(&c).map_err(|_| not_applicable());
            let a = even_in_cos_to_param(&over_c(r.alpha())?, sub.param).ok_or_else(not_applicable)?;
            let b = even_in_cos_to_param(&over_c(r.beta())?, sub.param).ok_or_else(not_applicable)?;
            &a + &(&b * sin)
        }
    };
    Ok(SubstitutionResult { integrand: integrand.with_var(sub.param), substitution: sub.clone() })
}

fn push_forward(e: &Expr, sub: &Substitution) -> Result<Expr, TrigError> {
    Ok(match e {
        Expr::Param(f) => {
            Expr::Trig(TrigArg { value: sub.back_sub.value.substitute_into(f)?, text: render_ratfunc(f, &sub.back_sub.text) })
        }
        Expr::Trig(_) => e.clone(),
    })
}

/// Replaces the parameter by its expression in `x` in every term.
pub fn back_substitute(f: &Antiderivative, sub: &Substitution) -> Result<Antiderivative, TrigError> {
    let terms = f
        .terms
        .iter()
        .map(|t| {
            Ok(match t {
                Term::Poly(e) => Term::Poly(push_forward(e, sub)?),
                Term::Rational(e) => Term::Rational(push_forward(e, sub)?),
                Term::Log { coeff, arg, abs } => Term::Log { coeff: coeff.clone(), arg: push_forward(arg, sub)?, abs: *abs },
                Term::Atan { coeff, arg } => Term::Atan { coeff: coeff.clone(), arg: push_forward(arg, sub)? },
            })
        })
        .collect::<Result<_, TrigError>>()?;
    Ok(Antiderivative { terms, variable: 'x' })
}
