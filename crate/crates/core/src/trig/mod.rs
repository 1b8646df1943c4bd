//! Canonical rational functions of `cos x` and `sin x`.
//!
//! Every value is an element of the function field of the unit circle,
//! `Q(c)[s] / (s² − (1 − c²))`, stored as `α(c) + β(c)·s` with `α`, `β`
//! normalized rational functions of `c`. Writing both over their least common
//! denominator gives the familiar `(A(c) + B(c)·s) / D(c)` shape with an
//! `s`-free, monic denominator. The representation is unique, so structural
//! equality decides identities such as `(1−s)/c = c/(1+s)`.

mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

pub use parse::{parse_expression, ExprNode, ParseError};

use crate::arith::{poly_gcd, render_poly, Polynomial, Rational, RationalFunction, MINUS};

/// Variable tag for `cos x` in the underlying polynomials.
pub const COS_VAR: char = 'c';

/// Smallest denominator magnitude accepted by [`eval_trig`].
pub const SINGULAR_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TrigError {
    #[error("syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("denominator vanishes identically on the unit circle")]
    DenominatorVanishesOnCircle,
    #[error("singular point at x = {x}")]
    SingularPoint { x: f64 },
}

impl From<ParseError> for TrigError {
    fn from(e: ParseError) -> Self {
        TrigError::Syntax { position: e.position, message: e.message }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrigRational {
    alpha: RationalFunction,
    beta: RationalFunction,
}

impl TrigRational {
    pub fn from_parts(alpha: RationalFunction, beta: RationalFunction) -> Self {
        TrigRational { alpha: alpha.with_var(COS_VAR), beta: beta.with_var(COS_VAR) }
    }

    pub fn zero() -> Self {
        Self::constant(Rational::zero())
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(r: Rational) -> Self {
        Self::from_parts(RationalFunction::constant(r, COS_VAR), RationalFunction::zero(COS_VAR))
    }

    pub fn cos() -> Self {
        Self::from_parts(RationalFunction::var(COS_VAR), RationalFunction::zero(COS_VAR))
    }

    pub fn sin() -> Self {
        Self::from_parts(RationalFunction::zero(COS_VAR), RationalFunction::one(COS_VAR))
    }

    pub fn sec() -> Self {
        Self::cos().inv().expect("cos is nonzero")
    }

    pub fn csc() -> Self {
        Self::sin().inv().expect("sin is nonzero")
    }

    pub fn tan() -> Self {
        Self::sin().checked_div(&Self::cos()).expect("cos is nonzero")
    }

    pub fn cot() -> Self {
        Self::cos().checked_div(&Self::sin()).expect("sin is nonzero")
    }

    /// The `s`-free part `α`.
    pub fn alpha(&self) -> &RationalFunction {
        &self.alpha
    }

    /// The coefficient `β` of `s`.
    pub fn beta(&self) -> &RationalFunction {
        &self.beta
    }

    /// Monic `s`-free denominator `D(c)`.
    pub fn denominator(&self) -> Polynomial {
        let (da, db) = (self.alpha.den(), self.beta.den());
        let g = poly_gcd(da, db);
        (da * &db.exact_div(&g).expect("gcd divides")).with_var(COS_VAR)
    }

    /// `(A(c), B(c))` with `self = (A + B·s) / D`.
    pub fn numerator(&self) -> (Polynomial, Polynomial) {
        let d = self.denominator();
        let scale = |f: &RationalFunction| (f.num() * &d.exact_div(f.den()).expect("lcm is a multiple")).with_var(COS_VAR);
        (scale(&self.alpha), scale(&self.beta))
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.beta.is_zero()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.beta.is_zero() {
            self.alpha.as_constant()
        } else {
            None
        }
    }

    /// `α² − β²(1 − c²)`, the product with the conjugate.
    fn norm(&self) -> RationalFunction {
        let one_minus_c2 = RationalFunction::from_poly(Polynomial::from_ints(&[1, 0, -1], COS_VAR));
        &(&self.alpha * &self.alpha) - &(&(&self.beta * &self.beta) * &one_minus_c2)
    }

    fn conjugate(&self) -> Self {
        TrigRational { alpha: self.alpha.clone(), beta: -&self.beta }
    }

    pub fn inv(&self) -> Result<Self, TrigError> {
        let n = self.norm();
        // the circle is irreducible, so the norm vanishes only for zero
        let n_inv = n.inv().map_err(|_| TrigError::DenominatorVanishesOnCircle)?;
        let conj = self.conjugate();
        Ok(TrigRational { alpha: &conj.alpha * &n_inv, beta: &conj.beta * &n_inv })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, TrigError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self, TrigError> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        TrigRational { alpha: self.alpha.scale(r), beta: self.beta.scale(r) }
    }

    /// Derivative in `x`, using `c' = −s`, `s' = c`:
    /// `(α + βs)' = −β_c(1 − c²) + βc − α_c·s`.
    pub fn derivative(&self) -> Self {
        let one_minus_c2 = RationalFunction::from_poly(Polynomial::from_ints(&[1, 0, -1], COS_VAR));
        let c = RationalFunction::var(COS_VAR);
        let alpha = &(&self.beta * &c) - &(&self.beta.derivative() * &one_minus_c2);
        let beta = -self.alpha.derivative();
        TrigRational { alpha, beta }
    }

    /// Substitutes `−c` for `c`.
    pub fn reflect_cos(&self) -> Self {
        TrigRational { alpha: self.alpha.reflect(), beta: self.beta.reflect() }
    }

    /// Value at `x`; fails when the denominator of `α` or `β` at `cos x` is
    /// below `min_den` in magnitude.
    pub fn eval_guarded(&self, x: f64, min_den: f64) -> Result<f64, TrigError> {
        let (c, s) = (x.cos(), x.sin());
        let part = |f: &RationalFunction| {
            if f.is_zero() {
                return Ok(0.0);
            }
            let d = f.den().eval_f64(c);
            if d.abs() >= min_den {
                Ok(f.num().eval_f64(c) / d)
            } else {
                Err(TrigError::SingularPoint { x })
            }
        };
        Ok(part(&self.alpha)? + part(&self.beta)? * s)
    }

    /// Evaluates a rational function of one variable at this value.
    pub fn substitute_into(&self, f: &RationalFunction) -> Result<Self, TrigError> {
        let horner = |p: &Polynomial| p.coeffs().iter().rev().fold(Self::zero(), |acc, c| &(&acc * self) + &Self::constant(c.clone()));
        horner(f.num()).checked_div(&horner(f.den()))
    }
}

fn render_sc(a: &Polynomial, b: &Polynomial) -> String {
    let cos_text = "cos(x)";
    let sa = if a.is_zero() { String::new() } else { render_poly(a, cos_text) };
    if b.is_zero() {
        return if sa.is_empty() { "0".into() } else { sa };
    }
    let b_terms = b.coeffs().iter().filter(|c| !c.is_zero()).count();
    let sb = if b.is_one() {
        "sin(x)".to_string()
    } else if b_terms == 1 {
        format!("{}*sin(x)", render_poly(b, cos_text))
    } else {
        format!("({})*sin(x)", render_poly(b, cos_text))
    };
    if sa.is_empty() {
        sb
    } else if let Some(rest) = sb.strip_prefix(MINUS) {
        format!("{sa}{MINUS}{rest}")
    } else {
        format!("{sa}+{sb}")
    }
}

impl fmt::Display for TrigRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.numerator();
        let d = self.denominator();
        let num = render_sc(&a, &b);
        if d.is_one() {
            return f.write_str(&num);
        }
        let terms = a.coeffs().iter().chain(b.coeffs()).filter(|c| !c.is_zero()).count();
        let num = if terms > 1 { format!("({num})") } else { num };
        let den = render_poly(&d, "cos(x)");
        if d.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
            write!(f, "{num}/({den})")
        } else {
            write!(f, "{num}/{den}")
        }
    }
}

impl Add for &TrigRational {
    type Output = TrigRational;
    fn add(self, rhs: &TrigRational) -> TrigRational {
        TrigRational { alpha: &self.alpha + &rhs.alpha, beta: &self.beta + &rhs.beta }
    }
}

impl Sub for &TrigRational {
    type Output = TrigRational;
    fn sub(self, rhs: &TrigRational) -> TrigRational {
        TrigRational { alpha: &self.alpha - &rhs.alpha, beta: &self.beta - &rhs.beta }
    }
}

impl Mul for &TrigRational {
    type Output = TrigRational;
    fn mul(self, rhs: &TrigRational) -> TrigRational {
        let one_minus_c2 = RationalFunction::from_poly(Polynomial::from_ints(&[1, 0, -1], COS_VAR));
        let alpha = &(&self.alpha * &rhs.alpha) + &(&(&self.beta * &rhs.beta) * &one_minus_c2);
        let beta = &(&self.alpha * &rhs.beta) + &(&self.beta * &rhs.alpha);
        TrigRational { alpha, beta }
    }
}

impl Neg for &TrigRational {
    type Output = TrigRational;
    fn neg(self) -> TrigRational {
        TrigRational { alpha: -&self.alpha, beta: -&self.beta }
    }
}

impl Add for TrigRational {
    type Output = TrigRational;
    fn add(self, rhs: TrigRational) -> TrigRational {
        &self + &rhs
    }
}

impl Sub for TrigRational {
    type Output = TrigRational;
    fn sub(self, rhs: TrigRational) -> TrigRational {
        &self - &rhs
    }
}

impl Mul for TrigRational {
    type Output = TrigRational;
    fn mul(self, rhs: TrigRational) -> TrigRational {
        &self * &rhs
    }
}

impl Neg for TrigRational {
    type Output = TrigRational;
    fn neg(self) -> TrigRational {
        -&self
    }
}

/// Unreduced bivariate polynomial in `(c, s)`, keyed by `(deg_c, deg_s)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawTrigPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl RawTrigPoly {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn term(mut self, coeff: Rational, deg_c: u32, deg_s: u32) -> Self {
        let entry = self.terms.entry((deg_c, deg_s)).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&(deg_c, deg_s));
        }
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn eval(&self, x: f64) -> f64 {
        let (c, s) = (x.cos(), x.sin());
        self.terms.iter().map(|(&(i, j), k)| crate::arith::rational_to_f64(k) * c.powi(i as i32) * s.powi(j as i32)).sum()
    }

    /// Reduces modulo `s² = 1 − c²`.
    pub fn reduce(&self) -> TrigRational {
        let one_minus_c2 = Polynomial::from_ints(&[1, 0, -1], COS_VAR);
        let mut a = Polynomial::zero(COS_VAR);
        let mut b = Polynomial::zero(COS_VAR);
        for (&(i, j), k) in &self.terms {
            let mono = &Polynomial::monomial(k.clone(), i as usize, COS_VAR) * &one_minus_c2.pow(j / 2);
            if j % 2 == 0 {
                a = &a + &mono;
            } else {
                b = &b + &mono;
            }
        }
        TrigRational::from_parts(RationalFunction::from_poly(a), RationalFunction::from_poly(b))
    }
}

/// Canonical form of `num / den`: `s²` eliminated, denominator rationalized
/// by the conjugate, common factors cancelled, denominator monic.
pub fn canonicalize(num: &RawTrigPoly, den: &RawTrigPoly) -> Result<TrigRational, TrigError> {
    num.reduce().checked_div(&den.reduce())
}

pub fn parse_trig(text: &str) -> Result<TrigRational, TrigError> {
    parse_expression(text)?.to_trig()
}

pub fn trig_derivative(r: &TrigRational) -> TrigRational {
    r.derivative()
}

/// True iff `R(−c, s) = −R(c, s)`.
pub fn is_odd_in_cos(r: &TrigRational) -> bool {
    r.reflect_cos() == -r
}

/// True iff `u' = f·u`, i.e. `f = (ln|u|)'`.
pub fn verify_log_derivative(f: &TrigRational, u: &TrigRational) -> bool {
    !u.is_zero() && u.derivative() == f * u
}

pub fn eval_trig(r: &TrigRational, x: f64) -> Result<f64, TrigError> {
    r.eval_guarded(x, SINGULAR_THRESHOLD)
}
