use crate::arith::{poly_xgcd, squarefree_factorization, Polynomial, Rational, RationalFunction};

/// Solves `s·a + t·b = c` with `deg s < deg b`, for coprime `a`, `b`.
fn solve_bezout(a: &Polynomial, b: &Polynomial, c: &Polynomial) -> (Polynomial, Polynomial) {
    let (g, s0, _) = poly_xgcd(a, b);
    debug_assert!(g.is_one(), "arguments must be coprime");
    let s = (&s0 * c).rem(b);
    let t = (c - &(&s * a)).exact_div(b).expect("bezout identity");
    (s, t)
}

/// Hermite reduction: returns `(g, h)` with `f = g' + h` and the denominator
/// of `h` squarefree. `h` keeps any polynomial part of `f`.
pub fn hermite_reduce(f: &RationalFunction) -> (RationalFunction, RationalFunction) {
    let var = f.variable();
    let mut g = RationalFunction::zero(var);
    if f.is_zero() {
        return (g, f.clone());
    }
    let mut a = f.num().clone();
    let mut d = f.den().clone();
    let sf = squarefree_factorization(&d).expect("denominator is nonzero");
    for (v, i) in sf.factors.iter().filter(|(_, i)| *i >= 2) {
        let dv = v.derivative();
        let u = d.exact_div(&v.pow(*i)).expect("squarefree factor divides");
        let u_dv = &u * &dv;
        for j in (1..*i).rev() {
            let jr = Rational::from_integer(j.into());
            let rhs = (-&a).scale(&jr.recip());
            let (b, c) = solve_bezout(&u_dv, v, &rhs);
            let term = RationalFunction::new(b.clone(), v.pow(j)).expect("nonzero");
            g = &g + &term;
            a = &(-&c).scale(&jr) - &(&u * &b.derivative());
        }
        d = &u * v;
    }
    (g, RationalFunction::new(a, d).expect("nonzero"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(Polynomial::from_ints(n, 'u'), Polynomial::from_ints(d, 'u')).unwrap()
    }

    #[test]
    fn examples() {
        // 1/(u-1)^2 -> (-1/(u-1), 0)
        let (g, h) = hermite_reduce(&rf(&[1], &[1, -2, 1]));
        assert_eq!(g, rf(&[-1], &[-1, 1]));
        assert!(h.is_zero());

        let (g, h) = hermite_reduce(&rf(&[1], &[0, 1]));
        assert!(g.is_zero());
        assert_eq!(h, rf(&[1], &[0, 1]));

        // (u+1)/u^2 -> (-1/u, 1/u)
        let (g, h) = hermite_reduce(&rf(&[1, 1], &[0, 0, 1]));
        assert_eq!(g, rf(&[-1], &[0, 1]));
        assert_eq!(h, rf(&[1], &[0, 1]));
    }

    proptest! {
        #[test]
        fn reduction_identity(
            num in prop::collection::vec(-4i64..=4, 0..6),
            roots in prop::collection::vec((-3i64..=3, 1u32..=3), 0..3),
            quad_power in 0u32..=3,
        ) {
            let mut den = Polynomial::from_ints(&[1, 0, 1], 'u').pow(quad_power);
            for (r, m) in &roots {
                den = &den * &Polynomial::from_ints(&[-r, 1], 'u').pow(*m);
            }
            let f = RationalFunction::new(Polynomial::from_ints(&num, 'u'), den).unwrap();
            let (g, h) = hermite_reduce(&f);
            prop_assert_eq!(&g.derivative() + &h, f);
            let sf = squarefree_factorization(h.den()).unwrap();
            prop_assert!(sf.factors.iter().all(|(_, m)| *m == 1));
        }
    }
}
