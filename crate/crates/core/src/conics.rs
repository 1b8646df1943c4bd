//! Rational points on the unit circle and the hyperbola `x² − y² = 1`,
//! conversions between the projection parameters, and Pythagorean triples.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::Rational;
use crate::exec::{map_ordered, Execution};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConicError {
    #[error("parameter must be nonzero")]
    ZeroParameter,
    #[error("degenerate parameter a/b = {a}/{b}")]
    DegenerateParameter { a: BigInt, b: BigInt },
    #[error("conversion {from} -> {to} has a pole at {value}")]
    PoleInConversion { from: ParamKind, to: ParamKind, value: Rational },
    #[error("singular point at theta = {theta}")]
    SingularPoint { theta: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Curve {
    Circle,
    Hyperbola,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoint {
    pub x: Rational,
    pub y: Rational,
    pub curve: Curve,
}

impl RationalPoint {
    /// Exact membership test for the point's curve.
    pub fn on_curve(&self) -> bool {
        let (x2, y2) = (&self.x * &self.x, &self.y * &self.y);
        match self.curve {
            Curve::Circle => x2 + y2 == Rational::one(),
            Curve::Hyperbola => x2 - y2 == Rational::one(),
        }
    }
}

/// Projection from `(−1, 0)`: `((1−t²)/(1+t²), 2t/(1+t²))`.
pub fn circle_from_b(t: &Rational) -> RationalPoint {
    let t2 = t * t;
    let one = Rational::one();
    let den = &one + &t2;
    RationalPoint { x: (&one - &t2) / &den, y: (t + t) / &den, curve: Curve::Circle }
}

/// Projection from `(0, 1)`: `(2s/(s²+1), (s²−1)/(s²+1))`.
pub fn circle_from_d(s: &Rational) -> RationalPoint {
    let s2 = s * s;
    let one = Rational::one();
    let den = &s2 + &one;
    RationalPoint { x: (s + s) / &den, y: (&s2 - &one) / &den, curve: Curve::Circle }
}

/// Projection from the point at infinity `[1 : −1 : 0]`: `((u²+1)/(2u), (u²−1)/(2u))`.
pub fn hyperbola_from_pplus(u: &Rational) -> Result<RationalPoint, ConicError> {
    if u.is_zero() {
        return Err(ConicError::ZeroParameter);
    }
    let u2 = u * u;
    let one = Rational::one();
    let den = u + u;
    Ok(RationalPoint { x: (&u2 + &one) / &den, y: (&u2 - &one) / &den, curve: Curve::Hyperbola })
}

/// Primitive triple with `x ≤ y`, `x² + y² = z²`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PythagoreanTriple {
    z: BigInt,
    x: BigInt,
    y: BigInt,
}

impl PythagoreanTriple {
    /// Normalizes any nonzero solution to primitive sorted form.
    pub fn new(x: BigInt, y: BigInt, z: BigInt) -> Option<Self> {
        let (x, y, z) = (x.abs(), y.abs(), z.abs());
        if x.is_zero() || y.is_zero() || &x * &x + &y * &y != &z * &z {
            return None;
        }
        let g = x.gcd(&y).gcd(&z);
        let (x, y, z) = (x / &g, y / &g, z / &g);
        let (x, y) = if x <= y { (x, y) } else { (y, x) };
        Some(PythagoreanTriple { z, x, y })
    }

    pub fn legs(&self) -> (&BigInt, &BigInt) {
        (&self.x, &self.y)
    }

    pub fn hypotenuse(&self) -> &BigInt {
        &self.z
    }

    pub fn as_tuple(&self) -> (BigInt, BigInt, BigInt) {
        (self.x.clone(), self.y.clone(), self.z.clone())
    }
}

impl fmt::Display for PythagoreanTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Clears denominators of `circle_from_b(a/b)`.
pub fn triple_from_parameter(a: &BigInt, b: &BigInt) -> Result<PythagoreanTriple, ConicError> {
    if a.is_zero() || b.is_zero() || a.abs() == b.abs() {
        return Err(ConicError::DegenerateParameter { a: a.clone(), b: b.clone() });
    }
    let (a2, b2) = (a * a, b * b);
    let raw = (&b2 - &a2, BigInt::from(2) * a * b, &a2 + &b2);
    Ok(PythagoreanTriple::new(raw.0, raw.1, raw.2).expect("nondegenerate parameter"))
}

/// Which stored leg plays the role of `X` in `t = Y / (X + Z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LegOrder {
    /// `(X, Y) = (smaller, larger)`
    Ascending,
    /// `(X, Y) = (larger, smaller)`
    Descending,
}

/// Slope parameter `t = Y/(X+Z)` of the circle point `(X/Z, Y/Z)`.
pub fn parameter_from_triple(tr: &PythagoreanTriple, order: LegOrder) -> Rational {
    let (x, y) = match order {
        LegOrder::Ascending => (&tr.x, &tr.y),
        LegOrder::Descending => (&tr.y, &tr.x),
    };
    Rational::new(y.clone(), x + &tr.z)
}

/// Primitive triples with hypotenuse at most `max_z`, by `Z` then smaller leg.
pub fn enumerate_primitive_triples(max_z: u64) -> Vec<PythagoreanTriple> {
    enumerate_primitive_triples_with(max_z, Execution::default())
}

pub fn enumerate_primitive_triples_with(max_z: u64, exec: Execution) -> Vec<PythagoreanTriple> {
    let bmax = (max_z as f64).sqrt() as u64 + 1;
    let bs: Vec<u64> = (2..=bmax).collect();
    let mut out: Vec<PythagoreanTriple> = map_ordered(&bs, exec, |&b| {
        (1..b)
            .filter(|&a| (a + b) % 2 == 1 && a.gcd(&b) == 1 && a * a + b * b <= max_z)
            .filter_map(|a| triple_from_parameter(&a.into(), &b.into()).ok())
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect();
    out.sort();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamKind {
    /// Weierstrass `tan(θ/2)`
    T,
    /// modified Weierstrass `tan(θ/2 + π/4)`
    S,
    /// Gregory `sec θ + tan θ`
    U,
    /// projection to the asymptote, `u/2`
    V,
}

impl ParamKind {
    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "t" => ParamKind::T,
            "s" => ParamKind::S,
            "u" => ParamKind::U,
            "v" => ParamKind::V,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            ParamKind::T => "t",
            ParamKind::S => "s",
            ParamKind::U => "u",
            ParamKind::V => "v",
        }
    }
}

impl fmt::Display for ParamKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConicParameter {
    pub kind: ParamKind,
    pub value: Rational,
}

/// Converts between `t`, `s`, `u`, `v` using `s = u`, `v = u/2`,
/// `s = (1+t)/(1−t)` and `t = (s−1)/(s+1)`.
pub fn param_convert(p: &ConicParameter, target: ParamKind) -> Result<ConicParameter, ConicError> {
    let pole = || ConicError::PoleInConversion { from: p.kind, to: target, value: p.value.clone() };
    let one = Rational::one();
    let two = Rational::from_integer(2.into());
    if p.kind == target {
        return Ok(p.clone());
    }
    // u = 0 and v = 0 have no point on the hyperbola
    if matches!(p.kind, ParamKind::U | ParamKind::V) && p.value.is_zero() {
        return Err(pole());
    }
    let s = match p.kind {
        ParamKind::S | ParamKind::U => p.value.clone(),
        ParamKind::V => &p.value * &two,
        ParamKind::T => {
            let den = &one - &p.value;
            if den.is_zero() {
                return Err(pole());
            }
            (&one + &p.value) / den
        }
    };
    let value = match target {
        ParamKind::S | ParamKind::U => s,
        ParamKind::V => s / two,
        ParamKind::T => {
            let den = &s + &one;
            if den.is_zero() {
                return Err(pole());
            }
            (s - one) / den
        }
    };
    Ok(ConicParameter { kind: target, value })
}

/// `|tan(θ/2 + π/4) − (sec θ + tan θ)|`
pub fn projection_coincidence_residual(theta: f64) -> Result<f64, ConicError> {
    let c = theta.cos();
    if theta.is_nan() || theta.abs() >= FRAC_PI_2 || c.abs() < 1e-12 {
        return Err(ConicError::SingularPoint { theta });
    }
    let lhs = (theta / 2.0 + FRAC_PI_4).tan();
    let rhs = 1.0 / c + theta.tan();
    Ok((lhs - rhs).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use proptest::prelude::*;

    fn triple(x: i64, y: i64, z: i64) -> PythagoreanTriple {
        PythagoreanTriple::new(x.into(), y.into(), z.into()).unwrap()
    }

    #[test]
    fn circle_b() {
        assert_eq!((circle_from_b(&int(0)).x, circle_from_b(&int(0)).y), (int(1), int(0)));
        assert_eq!((circle_from_b(&int(1)).x, circle_from_b(&int(1)).y), (int(0), int(1)));
        let p = circle_from_b(&rat(1, 2));
        assert_eq!((p.x.clone(), p.y.clone()), (rat(3, 5), rat(4, 5)));
        assert!(p.on_curve());
    }

    #[test]
    fn circle_d() {
        let p = |s| {
            let q = circle_from_d(&s);
            (q.x, q.y)
        };
        assert_eq!(p(int(1)), (int(1), int(0)));
        assert_eq!(p(int(0)), (int(0), int(-1)));
        assert_eq!(p(int(2)), (rat(4, 5), rat(3, 5)));
    }

    #[test]
    fn hyperbola() {
        let p = hyperbola_from_pplus(&int(1)).unwrap();
        assert_eq!((p.x, p.y), (int(1), int(0)));
        let p = hyperbola_from_pplus(&int(2)).unwrap();
        assert_eq!((p.x.clone(), p.y.clone()), (rat(5, 4), rat(3, 4)));
        assert!(p.on_curve());
        assert_eq!(hyperbola_from_pplus(&int(0)), Err(ConicError::ZeroParameter));
    }

    #[test]
    fn triples_from_parameters() {
        let t = |a: i64, b: i64| triple_from_parameter(&a.into(), &b.into());
        assert_eq!(t(1, 2).unwrap(), triple(3, 4, 5));
        assert_eq!(t(2, 3).unwrap(), triple(5, 12, 13));
        assert_eq!(t(1, 3).unwrap(), triple(3, 4, 5));
        assert!(matches!(t(0, 3), Err(ConicError::DegenerateParameter { .. })));
        assert!(matches!(t(3, -3), Err(ConicError::DegenerateParameter { .. })));
    }

    #[test]
    fn parameters_from_triples() {
        assert_eq!(parameter_from_triple(&triple(3, 4, 5), LegOrder::Ascending), rat(1, 2));
        assert_eq!(parameter_from_triple(&triple(5, 12, 13), LegOrder::Ascending), rat(2, 3));
        assert_eq!(parameter_from_triple(&triple(3, 4, 5), LegOrder::Descending), rat(1, 3));
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_primitive_triples(5), vec![triple(3, 4, 5)]);
        assert_eq!(enumerate_primitive_triples(13), vec![triple(3, 4, 5), triple(5, 12, 13)]);
        assert_eq!(enumerate_primitive_triples(100).len(), 16);
        assert!(enumerate_primitive_triples(1).is_empty());
    }

    #[test]
    fn conversions() {
        let t = ConicParameter { kind: ParamKind::T, value: rat(1, 2) };
        assert_eq!(param_convert(&t, ParamKind::S).unwrap().value, int(3));
        // cross-check: sec + tan at (cos, sin) = (3/5, 4/5)
        let pt = circle_from_b(&rat(1, 2));
        assert_eq!((int(1) + pt.y) / pt.x, int(3));
        let u = ConicParameter { kind: ParamKind::U, value: int(3) };
        assert_eq!(param_convert(&u, ParamKind::V).unwrap().value, rat(3, 2));
        let t1 = ConicParameter { kind: ParamKind::T, value: int(1) };
        assert!(matches!(param_convert(&t1, ParamKind::S), Err(ConicError::PoleInConversion { .. })));
        let sm1 = ConicParameter { kind: ParamKind::S, value: int(-1) };
        assert!(matches!(param_convert(&sm1, ParamKind::T), Err(ConicError::PoleInConversion { .. })));
        let s = ConicParameter { kind: ParamKind::S, value: int(3) };
        assert_eq!(param_convert(&s, ParamKind::T).unwrap().value, rat(1, 2));
    }

    #[test]
    fn coincidence_residuals() {
        assert!(projection_coincidence_residual(0.0).unwrap() < 1e-15);
        assert!(projection_coincidence_residual(std::f64::consts::FRAC_PI_6).unwrap() < 1e-12);
        assert!(projection_coincidence_residual(1.4).unwrap() < 1e-9);
        assert!(projection_coincidence_residual(FRAC_PI_2).is_err());
    }

    proptest! {
        #[test]
        fn points_lie_on_curves(n in -10_000i64..10_000, d in 1i64..10_000) {
            let r = rat(n, d);
            prop_assert!(circle_from_b(&r).on_curve());
            prop_assert!(circle_from_d(&r).on_curve());
            if n != 0 {
                prop_assert!(hyperbola_from_pplus(&r).unwrap().on_curve());
            }
        }

        #[test]
        fn t_to_s_matches_circle_points(n in -500i64..500, d in 1i64..500) {
            // the point at parameter t on the B-projection is the point at s = (1+t)/(1-t) on the D-projection
            prop_assume!(n != d);
            let t = rat(n, d);
            let s = param_convert(&ConicParameter { kind: ParamKind::T, value: t.clone() }, ParamKind::S).unwrap();
            let (pb, pd) = (circle_from_b(&t), circle_from_d(&s.value));
            prop_assert_eq!((pb.x, pb.y), (pd.x, pd.y));
            let back = param_convert(&s, ParamKind::T).unwrap();
            prop_assert_eq!(back.value, t);
        }
    }
}
