//! End-to-end pipeline (parse, substitute, integrate, back-substitute) and
//! the numeric oracles that check its output.

use std::fmt;

use thiserror::Error;

use crate::exec::{map_ordered, Execution};
use crate::integrate::{integrate_rational, Antiderivative, IntegrationError};
use crate::substitution::{apply_substitution, back_substitute, substitution, SubstitutionError, SubstitutionKind, DEFAULT_VALIDITY};
use crate::trig::{parse_trig, TrigError, TrigRational};

/// Evaluations closer than this to a pole cause a sample to be re-drawn.
pub const POLE_GUARD: f64 = 1e-6;
/// Total re-draws tolerated before a domain is declared unusable.
pub const MAX_REJECTIONS: usize = 100;
/// Relative derivative error accepted by the soundness check.
pub const VERIFY_TOLERANCE: f64 = 1e-6;
/// Spread below which two antiderivatives count as differing by a constant.
pub const CONSTANT_SPREAD: f64 = 1e-8;

const GOLDEN_FRACTION: f64 = 0.618_033_988_749_894_9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Auto,
    Fixed(SubstitutionKind),
}

impl Method {
    pub fn from_name(name: &str) -> Option<Method> {
        if name == "auto" {
            Some(Method::Auto)
        } else {
            SubstitutionKind::from_name(name).map(Method::Fixed)
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Auto => f.write_str("auto"),
            Method::Fixed(k) => f.write_str(k.name()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerificationDomain {
    pub lo: f64,
    pub hi: f64,
    pub samples: usize,
    /// Finite-difference step.
    pub h: f64,
}

impl Default for VerificationDomain {
    fn default() -> Self {
        VerificationDomain { lo: DEFAULT_VALIDITY.0, hi: DEFAULT_VALIDITY.1, samples: 25, h: 1e-5 }
    }
}

impl VerificationDomain {
    pub fn new(lo: f64, hi: f64, samples: usize, h: f64) -> Result<Self, VerifyError> {
        let d = VerificationDomain { lo, hi, samples, h };
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<(), VerifyError> {
        let ok = self.lo.is_finite() && self.hi.is_finite() && self.lo < self.hi && self.samples > 0 && self.h > 0.0;
        if ok {
            Ok(())
        } else {
            Err(VerifyError::InvalidDomain)
        }
    }

    /// The `k`-th candidate for sample `i`: the cell midpoint, then
    /// golden-ratio offsets inside the same cell.
    fn candidate(&self, i: usize, k: usize) -> f64 {
        let offset = (0.5 + k as f64 * GOLDEN_FRACTION).fract();
        self.lo + (i as f64 + offset) * (self.hi - self.lo) / self.samples as f64
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("verification domain must satisfy lo < hi with positive sample count and step")]
    InvalidDomain,
    #[error("domain unusable: {rejections} samples hit singularities (last at x = {last_x})")]
    DomainUnusable { rejections: usize, last_x: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verification {
    pub samples: usize,
    pub domain: (f64, f64),
    pub max_rel_error: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("parse: {0}")]
    Parse(TrigError),
    #[error("{kind}: {source}")]
    Substitution { kind: SubstitutionKind, source: SubstitutionError },
    #[error("{kind}: {source}")]
    Integration { kind: SubstitutionKind, source: IntegrationError },
    #[error("{kind}: back-substitution failed: {source}")]
    BackSubstitution { kind: SubstitutionKind, source: TrigError },
    #[error("{kind}: verification failed: {source}")]
    Verification { kind: SubstitutionKind, source: VerifyError },
    #[error("{kind}: derivative check failed with relative error {max_rel_error:e}")]
    DerivativeMismatch { kind: SubstitutionKind, max_rel_error: f64 },
    #[error("all methods failed: {}", .0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; "))]
    AllMethodsFailed(Vec<EngineError>),
}

impl EngineError {
    /// Short machine-readable error kind.
    pub fn kind_name(&self) -> &'static str {
        match self {
            EngineError::Parse(TrigError::Syntax { .. }) => "SyntaxError",
            EngineError::Parse(TrigError::DenominatorVanishesOnCircle) => "DenominatorVanishesOnCircle",
            EngineError::Parse(TrigError::SingularPoint { .. }) => "SingularPoint",
            EngineError::Substitution { source: SubstitutionError::NotApplicable { .. }, .. } => "NotApplicable",
            EngineError::Substitution { source: SubstitutionError::DenominatorVanishesIdentically, .. } => "DenominatorVanishesIdentically",
            EngineError::Integration { source: IntegrationError::UnsupportedDenominator { .. }, .. } => "UnsupportedDenominator",
            EngineError::Integration { source: IntegrationError::IrrationalAtanScale { .. }, .. } => "IrrationalAtanScale",
            EngineError::Integration { source: IntegrationError::NotSquarefree { .. }, .. } => "NotSquarefree",
            EngineError::BackSubstitution { .. } => "BackSubstitution",
            EngineError::Verification { source: VerifyError::InvalidDomain, .. } => "InvalidDomain",
            EngineError::Verification { source: VerifyError::DomainUnusable { .. }, .. } => "DomainUnusable",
            EngineError::DerivativeMismatch { .. } => "DerivativeMismatch",
            EngineError::AllMethodsFailed(_) => "AllMethodsFailed",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntegrationReport {
    pub input: String,
    pub method: Method,
    /// Substitution that produced the result.
    pub chosen: Option<SubstitutionKind>,
    pub antiderivative: Option<Antiderivative>,
    pub verification: Option<Verification>,
    pub failure: Option<EngineError>,
}

impl IntegrationReport {
    pub fn is_success(&self) -> bool {
        self.antiderivative.is_some()
    }
}

/// Evaluates `eval` at sample points of `dom`, re-drawing any point where it
/// fails. Fails once the total number of re-draws exceeds [`MAX_REJECTIONS`].
fn sample_with_redraw<F>(dom: &VerificationDomain, exec: Execution, eval: F) -> Result<Vec<(f64, f64)>, VerifyError>
where
    F: Fn(f64) -> Option<f64> + Sync + Send,
{
    dom.validate()?;
    let idx: Vec<usize> = (0..dom.samples).collect();
    let per_point = map_ordered(&idx, exec, |&i| {
        let mut last_x = f64::NAN;
        for k in 0..=MAX_REJECTIONS {
            let x = dom.candidate(i, k);
            if let Some(v) = eval(x) {
                return (Some((x, v)), k, last_x);
            }
            last_x = x;
        }
        (None, MAX_REJECTIONS + 1, last_x)
    });
    let rejections: usize = per_point.iter().map(|p| p.1).sum();
    if rejections > MAX_REJECTIONS || per_point.iter().any(|p| p.0.is_none()) {
        let last_x = per_point.iter().rev().map(|p| p.2).find(|x| !x.is_nan()).unwrap_or(f64::NAN);
        return Err(VerifyError::DomainUnusable { rejections, last_x });
    }
    Ok(per_point.into_iter().filter_map(|p| p.0).collect())
}

/// Max over samples of `|F'(x) − R(x)| / max(1, |R(x)|)`, with `F'` from a
/// fourth-order central difference.
pub fn diff_check(f: &Antiderivative, r: &TrigRational, dom: &VerificationDomain) -> Result<f64, VerifyError> {
    diff_check_with(f, r, dom, Execution::default())
}

pub fn diff_check_with(f: &Antiderivative, r: &TrigRational, dom: &VerificationDomain, exec: Execution) -> Result<f64, VerifyError> {
    let h = dom.h;
    let errors = sample_with_redraw(dom, exec, |x| {
        let rx = r.eval_guarded(x, POLE_GUARD).ok()?;
        let mut v = [0.0; 4];
        for (slot, off) in v.iter_mut().zip([-2.0, -1.0, 1.0, 2.0]) {
            *slot = f.eval(x + off * h, POLE_GUARD).ok()?;
        }
        let fd = (v[0] - 8.0 * v[1] + 8.0 * v[2] - v[3]) / (12.0 * h);
        let err = (fd - rx).abs() / rx.abs().max(1.0);
        err.is_finite().then_some(err)
    })?;
    Ok(errors.into_iter().map(|(_, e)| e).fold(0.0, f64::max))
}

/// Samples `F1 − F2`; constant when max − min < [`CONSTANT_SPREAD`]. Returns the mean.
pub fn constant_difference_check(f1: &Antiderivative, f2: &Antiderivative, dom: &VerificationDomain) -> Result<(bool, f64), VerifyError> {
    let diffs = sample_with_redraw(dom, Execution::default(), |x| {
        let d = f1.eval(x, POLE_GUARD).ok()? - f2.eval(x, POLE_GUARD).ok()?;
        d.is_finite().then_some(d)
    })?;
    let (min, max, sum) = diffs.iter().fold((f64::INFINITY, f64::NEG_INFINITY, 0.0), |(lo, hi, s), &(_, d)| (lo.min(d), hi.max(d), s + d));
    Ok((max - min < CONSTANT_SPREAD, sum / diffs.len() as f64))
}

/// Symbolic part of the pipeline for one substitution.
pub fn antiderivative_via(r: &TrigRational, kind: SubstitutionKind) -> Result<Antiderivative, EngineError> {
    let sub = substitution(kind);
    let pulled = apply_substitution(r, &sub).map_err(|source| EngineError::Substitution { kind, source })?;
    let param_result = integrate_rational(&pulled.integrand).map_err(|source| EngineError::Integration { kind, source })?;
    back_substitute(&param_result, &sub).map_err(|source| EngineError::BackSubstitution { kind, source })
}

fn run_one(r: &TrigRational, kind: SubstitutionKind, dom: &VerificationDomain) -> Result<(Antiderivative, Verification), EngineError> {
    let f = antiderivative_via(r, kind)?;
    let err = diff_check(&f, r, dom).map_err(|source| EngineError::Verification { kind, source })?;
    if err.is_nan() || err >= VERIFY_TOLERANCE {
        return Err(EngineError::DerivativeMismatch { kind, max_rel_error: err });
    }
    let verification = Verification { samples: dom.samples, domain: (dom.lo, dom.hi), max_rel_error: err };
    Ok((f, verification))
}

/// Integrates `r` with the requested method and verifies the result.
///
/// `Auto` runs all four substitutions and keeps the successful result with
/// the fewest terms, then the shortest rendering, remaining ties going to the
/// earlier method in the order Gregory, modified Weierstrass, Barrow,
/// Weierstrass.
pub fn integrate_trig(r: &TrigRational, method: Method, dom: &VerificationDomain) -> IntegrationReport {
    let input = r.to_string();
    let kinds: Vec<SubstitutionKind> = match method {
        Method::Auto => SubstitutionKind::ALL.to_vec(),
        Method::Fixed(k) => vec![k],
    };
    let outcomes: Vec<_> = kinds.iter().map(|&k| (k, run_one(r, k, dom))).collect();
    let mut best: Option<(SubstitutionKind, Antiderivative, Verification)> = None;
    let mut errors = Vec::new();
    for (k, outcome) in outcomes {
        match outcome {
            Ok((f, v)) => {
                if best.as_ref().is_none_or(|(_, b, _)| simplicity(&f) < simplicity(b)) {
                    best = Some((k, f, v));
                }
            }
            Err(e) => errors.push(e),
        }
    }
    match best {
        Some((k, f, v)) => {
            IntegrationReport { input, method, chosen: Some(k), antiderivative: Some(f), verification: Some(v), failure: None }
        }
        None => {
            let failure = if errors.len() == 1 { errors.pop().expect("one error") } else { EngineError::AllMethodsFailed(errors) };
            IntegrationReport { input, method, chosen: None, antiderivative: None, verification: None, failure: Some(failure) }
        }
    }
}

fn simplicity(f: &Antiderivative) -> (usize, usize) {
    (f.term_count(), f.to_string().chars().count())
}

/// Parses `source` and runs [`integrate_trig`].
pub fn integrate_source(source: &str, method: Method, dom: &VerificationDomain) -> IntegrationReport {
    match parse_trig(source) {
        Ok(r) => IntegrationReport { input: source.to_string(), ..integrate_trig(&r, method, dom) },
        Err(e) => IntegrationReport {
            input: source.to_string(),
            method,
            chosen: None,
            antiderivative: None,
            verification: None,
            failure: Some(EngineError::Parse(e)),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::integrate::{Expr, Term, TrigArg};

    fn p(s: &str) -> TrigRational {
        parse_trig(s).unwrap()
    }

    fn ok(src: &str, kind: SubstitutionKind) -> Antiderivative {
        let rep = integrate_trig(&p(src), Method::Fixed(kind), &VerificationDomain::default());
        assert!(rep.is_success(), "{src} via {kind}: {:?}", rep.failure);
        rep.antiderivative.unwrap()
    }

    #[test]
    fn secant_examples() {
        assert_eq!(ok("sec(x)", SubstitutionKind::Gregory).to_string(), "ln|sec(x)+tan(x)| + C");
        assert_eq!(ok("sec(x)", SubstitutionKind::Barrow).to_string(), "1/2*ln|1+sin(x)| − 1/2*ln|1−sin(x)| + C");
    }

    #[test]
    fn barrow_polynomial_term() {
        let f = ok("sin(x)*cos(x)", SubstitutionKind::Barrow);
        assert_eq!(f.terms.len(), 1);
        match &f.terms[0] {
            Term::Poly(Expr::Trig(TrigArg { value, text })) => {
                assert_eq!(value, &p("sin(x)^2/2"));
                assert_eq!(text, "1/2*sin(x)^2");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn irrational_scale_reported() {
        let rep = integrate_trig(&p("1/(2+cos(x))"), Method::Fixed(SubstitutionKind::Weierstrass), &VerificationDomain::default());
        let failure = rep.failure.unwrap();
        assert_eq!(failure.kind_name(), "IrrationalAtanScale");
        let auto = integrate_trig(&p("1/(2+cos(x))"), Method::Auto, &VerificationDomain::default());
        assert!(matches!(auto.failure, Some(EngineError::AllMethodsFailed(ref v)) if v.len() == 4));
    }

    #[test]
    fn auto_prefers_fewest_terms() {
        let rep = integrate_trig(&p("sec(x)"), Method::Auto, &VerificationDomain::default());
        assert_eq!(rep.chosen, Some(SubstitutionKind::Gregory));
        let rep = integrate_trig(&p("sin(x)*cos(x)"), Method::Auto, &VerificationDomain::default());
        assert_eq!(rep.chosen, Some(SubstitutionKind::Barrow));
    }

    #[test]
    fn diff_check_examples() {
        let dom = VerificationDomain::new(-1.47, 1.47, 25, 1e-5).unwrap();
        let greg = ok("sec(x)", SubstitutionKind::Gregory);
        assert!(diff_check(&greg, &p("sec(x)"), &dom).unwrap() < 1e-6);
        assert!(diff_check(&greg, &p("tan(x)"), &dom).unwrap() > 0.1);

        // F = x, held as a polynomial in the sample variable itself
        let lin = Antiderivative { terms: vec![Term::Poly(Expr::Param(crate::arith::RationalFunction::var('x')))], variable: 'x' };
        assert!(diff_check(&lin, &TrigRational::one(), &dom).unwrap() < 1e-9);
        assert_eq!(VerificationDomain::new(1.0, 1.0, 25, 1e-5), Err(VerifyError::InvalidDomain));
    }

    #[test]
    fn constant_difference_examples() {
        let dom = VerificationDomain::default();
        let greg = ok("sec(x)", SubstitutionKind::Gregory);
        let barrow = ok("sec(x)", SubstitutionKind::Barrow);
        let weier = ok("sec(x)", SubstitutionKind::Weierstrass);
        let (is_const, c) = constant_difference_check(&greg, &barrow, &dom).unwrap();
        assert!(is_const && c.abs() < 1e-8);
        let (is_const, c) = constant_difference_check(&greg, &weier, &dom).unwrap();
        assert!(is_const && c.abs() < 1e-8);

        let mut shifted = greg.clone();
        shifted.terms.push(Term::Poly(Expr::Trig(TrigArg { value: crate::trig::TrigRational::constant(int(3)), text: "3".into() })));
        let (is_const, c) = constant_difference_check(&shifted, &greg, &dom).unwrap();
        assert!(is_const && (c - 3.0).abs() < 1e-12);
    }

    #[test]
    fn singular_samples_are_redrawn() {
        // csc has a pole at 0, which is the midpoint of the middle cell
        let f = ok("csc(x)", SubstitutionKind::Gregory);
        let err = diff_check(&f, &p("csc(x)"), &VerificationDomain::default()).unwrap();
        assert!(err < 1e-6);
    }

    #[test]
    fn unusable_domain() {
        // sec has a pole at pi/2; a tiny domain around it cannot be sampled
        let dom = VerificationDomain::new(std::f64::consts::FRAC_PI_2 - 5e-8, std::f64::consts::FRAC_PI_2 + 5e-8, 5, 1e-9).unwrap();
        let f = ok("sec(x)", SubstitutionKind::Gregory);
        assert!(matches!(diff_check(&f, &p("sec(x)"), &dom), Err(VerifyError::DomainUnusable { .. })));
    }
}
