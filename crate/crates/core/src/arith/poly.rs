use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{render_poly, ArithError, Rational};

/// Dense univariate polynomial with exact rational coefficients.
///
/// `coeffs[i]` is the coefficient of `var^i`; the highest stored coefficient
/// is never zero, so the zero polynomial has no coefficients at all.
#[derive(Clone, Debug)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
    var: char,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        // constants compare equal regardless of the variable tag
        self.coeffs == other.coeffs && (self.var == other.var || self.coeffs.len() <= 1)
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn from_coeffs(mut coeffs: Vec<Rational>, var: char) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs, var }
    }

    pub fn from_ints(coeffs: &[i64], var: char) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect(), var)
    }

    pub fn zero(var: char) -> Self {
        Polynomial { coeffs: Vec::new(), var }
    }

    pub fn one(var: char) -> Self {
        Self::constant(Rational::one(), var)
    }

    pub fn constant(c: Rational, var: char) -> Self {
        Self::from_coeffs(vec![c], var)
    }

    /// The polynomial `var` itself.
    pub fn var(var: char) -> Self {
        Self::monomial(Rational::one(), 1, var)
    }

    pub fn monomial(c: Rational, degree: usize, var: char) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs, var)
    }

    /// `var - root`
    pub fn linear_factor(root: &Rational, var: char) -> Self {
        Self::from_coeffs(vec![-root.clone(), Rational::one()], var)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn variable(&self) -> char {
        self.var
    }

    pub fn with_var(mut self, var: char) -> Self {
        self.var = var;
        self
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.var);
        }
        Polynomial { coeffs: self.coeffs.iter().map(|a| a * c).collect(), var: self.var }
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(BigInt::from(i))).collect();
        Self::from_coeffs(coeffs, self.var)
    }

    /// Termwise antiderivative with zero constant term.
    pub fn integral(&self) -> Self {
        let mut coeffs = vec![Rational::zero()];
        coeffs.extend(self.coeffs.iter().enumerate().map(|(i, c)| c / Rational::from_integer(BigInt::from(i + 1))));
        Self::from_coeffs(coeffs, self.var)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + super::rational_to_f64(c))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.var);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes `inner` for the variable.
    pub fn compose(&self, inner: &Polynomial) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(inner.var), |acc, c| &(&acc * inner) + &Self::constant(c.clone(), inner.var))
    }

    /// `p(-x)`
    pub fn reflect(&self) -> Self {
        let coeffs = self.coeffs.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect();
        Self::from_coeffs(coeffs, self.var)
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&n| n >= dd) else {
            return (Self::zero(self.var), self.clone());
        };
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = &rem[k + dd] * &lc_inv;
            if q.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * dc;
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot, self.var), Self::from_coeffs(rem, self.var))
    }

    pub fn rem(&self, divisor: &Polynomial) -> Polynomial {
        self.div_rem(divisor).1
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        if divisor.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// True when only even powers occur.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    /// For an even polynomial `p(x) = q(x^2)`, returns `q`.
    pub fn even_part_in_square(&self) -> Option<Polynomial> {
        self.is_even().then(|| Self::from_coeffs(self.coeffs.iter().step_by(2).cloned().collect(), self.var))
    }

    /// Scales to primitive integer coefficients with positive leading term.
    pub fn integer_coeffs(&self) -> Vec<BigInt> {
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if self.leading().is_some_and(Signed::is_negative) { -BigInt::one() } else { BigInt::one() };
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| &c / &g * &sign).collect()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_poly(self, &self.var.to_string()))
    }
}

fn combine(a: &Polynomial, b: &Polynomial, op: impl Fn(&Rational, &Rational) -> Rational) -> Polynomial {
    let n = a.coeffs.len().max(b.coeffs.len());
    let zero = Rational::zero();
    let coeffs = (0..n).map(|i| op(a.coeffs.get(i).unwrap_or(&zero), b.coeffs.get(i).unwrap_or(&zero))).collect();
    let var = if a.is_constant() { b.var } else { a.var };
    Polynomial::from_coeffs(coeffs, var)
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        combine(self, rhs, |x, y| x + y)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        combine(self, rhs, |x, y| x - y)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let var = if self.is_constant() { rhs.var } else { self.var };
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(var);
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(coeffs, var)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { coeffs: self.coeffs.iter().map(|c| -c).collect(), var: self.var }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn poly_gcd(p: &Polynomial, q: &Polynomial) -> Polynomial {
    let (mut a, mut b) = (p.monic(), q.monic());
    while !b.is_zero() {
        let r = a.rem(&b).monic();
        a = b;
        b = r;
    }
    a
}

/// Extended Euclid: returns `(g, s, t)` with `s*p + t*q = g`, `g` monic.
pub fn poly_xgcd(p: &Polynomial, q: &Polynomial) -> (Polynomial, Polynomial, Polynomial) {
    let var = if p.is_constant() { q.var } else { p.var };
    let (mut r0, mut r1) = (p.clone(), q.clone());
    let (mut s0, mut s1) = (Polynomial::one(var), Polynomial::zero(var));
    let (mut t0, mut t1) = (Polynomial::zero(var), Polynomial::one(var));
    while !r1.is_zero() {
        let (quot, rem) = r0.div_rem(&r1);
        let s2 = &s0 - &(&quot * &s1);
        let t2 = &t0 - &(&quot * &t1);
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match r0.leading().cloned() {
        Some(lc) => {
            let inv = lc.recip();
            (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
        }
        None => (r0, s0, t0),
    }
}

/// `leading * Π factor^multiplicity`, factors monic, squarefree and pairwise coprime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeFactorization {
    pub leading: Rational,
    pub factors: Vec<(Polynomial, u32)>,
}

impl SquarefreeFactorization {
    pub fn expand(&self, var: char) -> Polynomial {
        self.factors.iter().fold(Polynomial::constant(self.leading.clone(), var), |acc, (f, m)| &acc * &f.pow(*m))
    }
}

/// Yun's algorithm.
pub fn squarefree_factorization(p: &Polynomial) -> Result<SquarefreeFactorization, ArithError> {
    let leading = p.leading().cloned().ok_or(ArithError::ZeroPolynomial)?;
    let f = p.monic();
    let mut factors = Vec::new();
    if f.is_constant() {
        return Ok(SquarefreeFactorization { leading, factors });
    }
    let df = f.derivative();
    let a0 = poly_gcd(&f, &df);
    let mut b = f.exact_div(&a0).expect("gcd divides");
    let mut c = df.exact_div(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut i = 1u32;
    while !b.is_constant() {
        let a = poly_gcd(&b, &d);
        if !a.is_constant() {
            factors.push((a.clone(), i));
        }
        b = b.exact_div(&a).expect("gcd divides");
        c = d.exact_div(&a).expect("gcd divides");
        d = &c - &b.derivative();
        i += 1;
    }
    Ok(SquarefreeFactorization { leading, factors })
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let other = &n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// All rational roots, repeated by multiplicity, via the rational root theorem.
pub fn rational_roots(p: &Polynomial) -> Vec<Rational> {
    let mut roots = Vec::new();
    let mut f = p.clone();
    if f.is_constant() {
        return roots;
    }
    while f.coeff(0).is_zero() && !f.is_zero() {
        roots.push(Rational::zero());
        f = Polynomial::from_coeffs(f.coeffs[1..].to_vec(), f.var);
    }
    if f.is_constant() {
        return roots;
    }
    let ints = f.integer_coeffs();
    let (a0, an) = (&ints[0], ints.last().expect("nonconstant"));
    let qs = divisors(an);
    for p_div in divisors(a0) {
        for q_div in &qs {
            if !p_div.gcd(q_div).is_one() {
                continue;
            }
            for sign in [1, -1] {
                let cand = Rational::new(&p_div * sign, q_div.clone());
                while !f.is_constant() && f.eval(&cand).is_zero() {
                    f = f.exact_div(&Polynomial::linear_factor(&cand, f.var)).expect("root divides");
                    roots.push(cand.clone());
                }
            }
            if f.is_constant() {
                return roots;
            }
        }
    }
    roots
}
