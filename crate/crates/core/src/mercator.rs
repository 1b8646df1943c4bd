//! Mercator ordinate `y(φ) = ∫₀^φ sec` by closed form and by quadrature.
//!
//! Map units are dimensionless: the sphere radius cancels out of the
//! ordinate, and `x` is the longitude itself.

use std::f64::consts::FRAC_PI_2;

use thiserror::Error;

/// Closed-form evaluation requires `|φ| < π/2 − CLOSED_FORM_GUARD`.
pub const CLOSED_FORM_GUARD: f64 = 1e-9;
/// Quadrature and finite differences require `|φ| < π/2 − NUMERIC_GUARD`.
pub const NUMERIC_GUARD: f64 = 1e-6;
/// Panel budget for adaptive Simpson.
pub const MAX_PANELS: usize = 1_000_000;

const MAX_DEPTH: u32 = 60;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MercatorError {
    #[error("latitude {lat} is outside the projectable range")]
    LatitudeOutOfRange { lat: f64 },
    #[error("tolerance {tol} outside [1e-13, 1e-3]")]
    InvalidTolerance { tol: f64 },
    #[error("step {h} outside [1e-8, 1e-2]")]
    InvalidStep { h: f64 },
    #[error("tolerance not met after {panels} panels")]
    ToleranceNotMet { panels: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeoPoint {
    /// longitude θ, radians
    pub lon: f64,
    /// latitude φ, radians
    pub lat: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapPoint {
    pub x: f64,
    pub y: f64,
}

fn check_lat(lat: f64, guard: f64) -> Result<(), MercatorError> {
    if lat.is_finite() && lat.abs() < FRAC_PI_2 - guard {
        Ok(())
    } else {
        Err(MercatorError::LatitudeOutOfRange { lat })
    }
}

/// `ln|sec φ + tan φ|`, evaluated on `|φ|` so that it is exactly odd.
pub fn mercator_y(lat: f64) -> Result<f64, MercatorError> {
    check_lat(lat, CLOSED_FORM_GUARD)?;
    let a = lat.abs();
    Ok(lat.signum() * (1.0 / a.cos() + a.tan()).ln() * if lat == 0.0 { 0.0 } else { 1.0 })
}

struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

/// Adaptive Simpson with the `|S₂ − S₁| ≤ 15ε` acceptance test and
/// Richardson correction.
pub fn adaptive_simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64, MercatorError> {
    let (fa, fb) = (f(a), f(b));
    let m = 0.5 * (a + b);
    let fm = f(m);
    let mut stack = vec![Panel { a, b, fa, fm, fb, whole: simpson(a, b, fa, fm, fb), eps: tol, depth: 0 }];
    let mut total = 0.0;
    let mut panels = 1usize;
    while let Some(p) = stack.pop() {
        let m = 0.5 * (p.a + p.b);
        let (lm, rm) = (0.5 * (p.a + m), 0.5 * (m + p.b));
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson(p.a, m, p.fa, flm, p.fm);
        let right = simpson(m, p.b, p.fm, frm, p.fb);
        let delta = left + right - p.whole;
        if delta.abs() <= 15.0 * p.eps {
            total += left + right + delta / 15.0;
            continue;
        }
        panels += 1;
        if panels > MAX_PANELS || p.depth >= MAX_DEPTH {
            return Err(MercatorError::ToleranceNotMet { panels });
        }
        let eps = 0.5 * p.eps;
        stack.push(Panel { a: m, b: p.b, fa: p.fm, fm: frm, fb: p.fb, whole: right, eps, depth: p.depth + 1 });
        stack.push(Panel { a: p.a, b: m, fa: p.fa, fm: flm, fb: p.fm, whole: left, eps, depth: p.depth + 1 });
    }
    Ok(total)
}

/// `∫₀^φ sec` by adaptive Simpson with absolute error target `tol`.
pub fn mercator_y_numeric(lat: f64, tol: f64) -> Result<f64, MercatorError> {
    check_lat(lat, NUMERIC_GUARD)?;
    if !(1e-13..=1e-3).contains(&tol) {
        return Err(MercatorError::InvalidTolerance { tol });
    }
    if lat == 0.0 {
        return Ok(0.0);
    }
    adaptive_simpson(|p| 1.0 / p.cos(), 0.0, lat, tol)
}

/// `(θ, y(φ))`, both multiplied by `scale` when given.
pub fn project(g: GeoPoint, scale: Option<f64>) -> Result<MapPoint, MercatorError> {
    let y = mercator_y(g.lat)?;
    let k = scale.unwrap_or(1.0);
    Ok(MapPoint { x: k * g.lon, y: k * y })
}

/// Central difference of the ordinate divided by `sec φ`; 1 for a conformal map.
pub fn conformality_ratio(lat: f64, h: f64) -> Result<f64, MercatorError> {
    if !(1e-8..=1e-2).contains(&h) {
        return Err(MercatorError::InvalidStep { h });
    }
    if !(lat.is_finite() && lat.abs() + h < FRAC_PI_2 - NUMERIC_GUARD) {
        return Err(MercatorError::LatitudeOutOfRange { lat });
    }
    let dy = (mercator_y(lat + h)? - mercator_y(lat - h)?) / (2.0 * h);
    Ok(dy * lat.cos())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const LN_2_PLUS_SQRT3: f64 = 1.316_957_896_924_816_7;

    #[test]
    fn closed_form() {
        assert_eq!(mercator_y(0.0).unwrap(), 0.0);
        assert!((mercator_y(PI / 3.0).unwrap() - LN_2_PLUS_SQRT3).abs() < 1e-14);
        assert!((mercator_y(-PI / 3.0).unwrap() + LN_2_PLUS_SQRT3).abs() < 1e-14);
        assert!(mercator_y(FRAC_PI_2).is_err());
    }

    #[test]
    fn quadrature() {
        assert!((mercator_y_numeric(PI / 3.0, 1e-10).unwrap() - LN_2_PLUS_SQRT3).abs() < 1e-9);
        assert_eq!(mercator_y_numeric(0.0, 1e-10).unwrap(), 0.0);
        // inside the closed-form band but not the quadrature band
        assert!(matches!(mercator_y_numeric(FRAC_PI_2 - 5e-7, 1e-10), Err(MercatorError::LatitudeOutOfRange { .. })));
        assert!(matches!(mercator_y_numeric(1.0, 1e-2), Err(MercatorError::InvalidTolerance { .. })));
        assert!((mercator_y_numeric(-1.0, 1e-12).unwrap() + mercator_y(1.0).unwrap()).abs() < 1e-11);
    }

    #[test]
    fn panel_cap_is_reported() {
        // an integrable singularity at 0 defeats the error test before the cap
        let r = adaptive_simpson(|x: f64| if x == 0.0 { 0.0 } else { 1.0 / x.abs().sqrt() }, 0.0, 1.0, 1e-13);
        assert!(matches!(r, Err(MercatorError::ToleranceNotMet { .. })));
    }

    #[test]
    fn projection() {
        assert_eq!(project(GeoPoint { lon: 0.3, lat: 0.0 }, None).unwrap(), MapPoint { x: 0.3, y: 0.0 });
        let p = project(GeoPoint { lon: 1.0, lat: PI / 3.0 }, None).unwrap();
        assert_eq!(p.x, 1.0);
        assert!((p.y - LN_2_PLUS_SQRT3).abs() < 1e-14);
        let scaled = project(GeoPoint { lon: 1.0, lat: PI / 3.0 }, Some(2.0)).unwrap();
        assert_eq!(scaled.x, 2.0);
        assert!(project(GeoPoint { lon: 0.0, lat: 1.6 }, None).is_err());
    }

    #[test]
    fn conformality() {
        assert!((conformality_ratio(0.5, 1e-4).unwrap() - 1.0).abs() < 1e-6);
        assert!((conformality_ratio(0.0, 1e-4).unwrap() - 1.0).abs() < 1e-8);
        assert!(matches!(conformality_ratio(1.57, 1e-2), Err(MercatorError::LatitudeOutOfRange { .. })));
        assert!(matches!(conformality_ratio(0.5, 1.0), Err(MercatorError::InvalidStep { .. })));
    }

    #[test]
    fn odd_and_monotone() {
        let mut prev = f64::NEG_INFINITY;
        for k in 0..100 {
            let phi = -1.55 + 3.1 * k as f64 / 99.0;
            let y = mercator_y(phi).unwrap();
            assert_eq!(mercator_y(-phi).unwrap(), -y);
            assert!(y > prev);
            prev = y;
        }
    }
}
