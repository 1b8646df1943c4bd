//! Plain-text rendering of polynomials and rational functions.
//!
//! Polynomials are written in ascending degree (`1+u^2`, `1−sin(x)`) with
//! U+2212 as the minus sign and `p/q` rational coefficients. The variable may
//! be replaced by an arbitrary expression text, which is parenthesized when it
//! would otherwise bind incorrectly.

use num_traits::{One, Signed, Zero};

use super::{Polynomial, Rational, RationalFunction};

pub const MINUS: char = '\u{2212}';

/// `p/q` or `p`, with a U+2212 sign.
pub fn render_coefficient(c: &Rational) -> String {
    let sign = if c.is_negative() { MINUS.to_string() } else { String::new() };
    let a = c.abs();
    if a.is_integer() {
        format!("{sign}{}", a.numer())
    } else {
        format!("{sign}{}/{}", a.numer(), a.denom())
    }
}

/// True when `text` has an operator outside parentheses or absolute bars.
pub(crate) fn is_compound(text: &str) -> bool {
    let mut depth = 0i32;
    let mut in_abs = false;
    for ch in text.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '|' => in_abs = !in_abs,
            '+' | '*' | '/' if depth == 0 && !in_abs => return true,
            '-' | MINUS if depth == 0 && !in_abs => return true,
            _ => {}
        }
    }
    false
}

/// True when `text` has a binary `+` or `−` outside parentheses.
pub(crate) fn has_top_level_sum(text: &str) -> bool {
    let mut depth = 0i32;
    let mut in_abs = false;
    for (i, ch) in text.chars().enumerate() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '|' => in_abs = !in_abs,
            '+' | '-' | MINUS if i > 0 && depth == 0 && !in_abs => return true,
            _ => {}
        }
    }
    false
}

pub(crate) fn paren(text: &str) -> String {
    if is_compound(text) {
        format!("({text})")
    } else {
        text.to_string()
    }
}

fn render_term(c: &Rational, k: usize, var: &str) -> String {
    let a = c.abs();
    if k == 0 {
        return render_coefficient(&a);
    }
    let bare = a.is_one() && k == 1;
    let base = if bare { var.to_string() } else { paren(var) };
    let power = if k > 1 { format!("{base}^{k}") } else { base };
    if a.is_one() {
        power
    } else {
        format!("{}*{power}", render_coefficient(&a))
    }
}

/// Renders `p` with its variable replaced by `var`.
pub fn render_poly(p: &Polynomial, var: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    let mut first = true;
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        // a leading "+u" term with compound u must keep its parentheses after a minus
        let term =
            if c.is_negative() && is_compound(var) && k == 1 && c.abs().is_one() { format!("({var})") } else { render_term(c, k, var) };
        match (first, c.is_negative()) {
            (true, true) => out.push(MINUS),
            (true, false) => {}
            (false, true) => out.push(MINUS),
            (false, false) => out.push('+'),
        }
        out.push_str(&term);
        first = false;
    }
    out
}

/// Renders `f` with its variable replaced by `var`.
pub fn render_ratfunc(f: &RationalFunction, var: &str) -> String {
    let num = render_poly(f.num(), var);
    if f.den().is_one() {
        return num;
    }
    let den = render_poly(f.den(), var);
    let num_terms = f.num().coeffs().iter().filter(|c| !c.is_zero()).count();
    let num = if num_terms > 1 { format!("({num})") } else { num };
    format!("{num}/{}", paren(&den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn polynomials() {
        assert_eq!(render_poly(&Polynomial::from_ints(&[1, 1], 'u'), "sin(x)"), "1+sin(x)");
        assert_eq!(render_poly(&Polynomial::from_ints(&[1, -1], 'u'), "sin(x)"), "1−sin(x)");
        assert_eq!(render_poly(&Polynomial::from_ints(&[0, 1], 'u'), "sec(x)+tan(x)"), "sec(x)+tan(x)");
        assert_eq!(render_poly(&Polynomial::from_ints(&[1, -1], 'u'), "sec(x)+tan(x)"), "1−(sec(x)+tan(x))");
        assert_eq!(render_poly(&Polynomial::from_ints(&[-3, 0, 2], 'u'), "u"), "−3+2*u^2");
        let half_sq = Polynomial::from_coeffs(vec![rat(0, 1), rat(0, 1), rat(1, 2)], 'u');
        assert_eq!(render_poly(&half_sq, "sin(x)"), "1/2*sin(x)^2");
        assert_eq!(render_poly(&Polynomial::zero('u'), "u"), "0");
    }

    #[test]
    fn rational_functions() {
        let f = RationalFunction::new(Polynomial::from_ints(&[-1], 'u'), Polynomial::from_ints(&[-1, 1], 'u')).unwrap();
        assert_eq!(render_ratfunc(&f, "u"), "−1/(−1+u)");
        let g = RationalFunction::new(Polynomial::from_ints(&[0, 2], 't'), Polynomial::from_ints(&[1, 0, 1], 't')).unwrap();
        assert_eq!(g.to_string(), "2*t/(1+t^2)");
        assert!(is_compound("tan(x)−1"));
        assert!(!is_compound("tan(x/2)"));
    }
}
