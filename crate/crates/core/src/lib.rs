//! Exact symbolic integration of rational expressions in `sin x` and `cos x`.
//!
//! The four classical substitutions for integrating the secant (Gregory,
//! Barrow, Weierstrass and modified Weierstrass) are implemented as rational
//! parametrizations of the unit circle and the hyperbola `x² − y² = 1`. An
//! integrand is parsed into a canonical element of the function field of the
//! circle, pulled back to a univariate rational function, integrated exactly
//! and pushed forward again. Results are checked numerically against finite
//! differences.

pub mod arith;
pub mod cli;
pub mod conics;
pub mod engine;
pub mod exec;
pub mod integrate;
pub mod mercator;
pub mod substitution;
pub mod trig;

pub use arith::{Polynomial, Rational, RationalFunction};
pub use engine::{integrate_trig, IntegrationReport, Method, VerificationDomain};
pub use integrate::{integrate_rational, Antiderivative};
pub use substitution::{apply_substitution, builtin_substitutions, Substitution, SubstitutionKind};
pub use trig::{parse_trig, TrigRational};
