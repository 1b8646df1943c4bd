use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{poly_gcd, render_ratfunc, ArithError, Polynomial, Rational};

/// Quotient of two polynomials in canonical form: coprime, denominator monic.
///
/// Because the form is canonical, structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

/// Cancels the gcd and rescales so the denominator is monic.
pub fn ratfunc_normalize(num: Polynomial, den: Polynomial) -> Result<RationalFunction, ArithError> {
    if den.is_zero() {
        return Err(ArithError::ZeroDenominator);
    }
    let var = if num.is_constant() { den.variable() } else { num.variable() };
    if num.is_zero() {
        return Ok(RationalFunction::zero(var));
    }
    let g = poly_gcd(&num, &den);
    let (num, den) =
        if g.is_one() { (num, den) } else { (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides")) };
    let lc_inv = den.leading().expect("nonzero").recip();
    Ok(RationalFunction { num: num.scale(&lc_inv).with_var(var), den: den.scale(&lc_inv).with_var(var) })
}

/// Quotient-rule derivative.
pub fn ratfunc_derivative(f: &RationalFunction) -> RationalFunction {
    f.derivative()
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, ArithError> {
        ratfunc_normalize(num, den)
    }

    pub fn zero(var: char) -> Self {
        RationalFunction { num: Polynomial::zero(var), den: Polynomial::one(var) }
    }

    pub fn one(var: char) -> Self {
        Self::constant(Rational::one(), var)
    }

    pub fn constant(c: Rational, var: char) -> Self {
        Self::from_poly(Polynomial::constant(c, var))
    }

    pub fn var(var: char) -> Self {
        Self::from_poly(Polynomial::var(var))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let var = p.variable();
        RationalFunction { num: p, den: Polynomial::one(var) }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn variable(&self) -> char {
        if self.num.is_constant() {
            self.den.variable()
        } else {
            self.num.variable()
        }
    }

    pub fn with_var(self, var: char) -> Self {
        RationalFunction { num: self.num.with_var(var), den: self.den.with_var(var) }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Constant value, if the function is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.variable());
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        ratfunc_normalize(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        if rhs.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        ratfunc_normalize(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn pow(&self, e: i32) -> Result<Self, ArithError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs();
        Ok(RationalFunction { num: base.num.pow(e), den: base.den.pow(e) })
    }

    pub fn derivative(&self) -> Self {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        ratfunc_normalize(num, &self.den * &self.den).expect("nonzero denominator")
    }

    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.num.eval_f64(x) / self.den.eval_f64(x)
    }

    /// Substitutes `inner` for the variable.
    pub fn compose(&self, inner: &RationalFunction) -> Result<Self, ArithError> {
        let n = eval_poly_at(&self.num, inner);
        let d = eval_poly_at(&self.den, inner);
        n.checked_div(&d).map_err(|_| ArithError::ZeroDenominator)
    }

    /// `f(-x)`
    pub fn reflect(&self) -> Self {
        ratfunc_normalize(self.num.reflect(), self.den.reflect()).expect("nonzero denominator")
    }
}

/// Horner evaluation of a polynomial at a rational function.
fn eval_poly_at(p: &Polynomial, x: &RationalFunction) -> RationalFunction {
    let var = x.variable();
    p.coeffs().iter().rev().fold(RationalFunction::zero(var), |acc, c| &(&acc * x) + &RationalFunction::constant(c.clone(), var))
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_ratfunc(self, &self.variable().to_string()))
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return ratfunc_normalize(&self.num + &rhs.num, self.den.clone()).expect("nonzero");
        }
        ratfunc_normalize(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den).expect("nonzero")
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        ratfunc_normalize(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: RationalFunction) -> RationalFunction {
        &self + &rhs
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: RationalFunction) -> RationalFunction {
        &self - &rhs
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: RationalFunction) -> RationalFunction {
        &self * &rhs
    }
}
