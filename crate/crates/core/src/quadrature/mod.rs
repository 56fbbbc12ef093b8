//! Gauss-Hermite rules (Golub-Welsch) and convergence-controlled integration
//! on the real line.

mod integrate;
mod rule;

pub(crate) use integrate::integrate_affine;
pub use integrate::{converge, converge_vec, integrate_1d, integrate_2d, ConvergenceOptions, Converged};
pub use rule::{QuadratureRule, RuleKind, MAX_ORDER, MIN_ORDER};
