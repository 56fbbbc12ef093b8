//! The reduced kernel `rho1(y, y') = integral psi(y, x) psi(y', x) dx` and the
//! purity-based entanglement measure built from it.
//!
//! All integrals use Gauss-Hermite rules whose scales follow the Gaussian
//! envelope shared by both families:
//!
//! * the traced-out variable, for fixed `(y, y')`, is centered at
//!   `(y + y') / 2 * (omega^2 - sigma^2) / (omega^2 + sigma^2)` with scale
//!   `sqrt(2 sigma^2 omega^2 / (sigma^2 + omega^2))`;
//! * `rho1^2` is integrated in the rotated pair `s = (y + y') / sqrt 2`,
//!   `d = (y - y') / sqrt 2`, with scales `sqrt((sigma^2 + omega^2) / 2)` and
//!   the conditional width above.
//!
//! With these scales the integrands are low-degree polynomials against the
//! rule's weight, which keeps ratios as extreme as 1e-3 well conditioned.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::symmetric_eigenvalues;
use crate::quadrature::{converge, integrate_affine, ConvergenceOptions, Converged, QuadratureRule};
use crate::state::StateSpec;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Envelope {
    /// Width of the diagonal of `rho1` (the single-particle marginal).
    pub diagonal: f64,
    /// Width across the diagonal; also the width of the traced-out variable.
    pub coherence: f64,
    /// `(omega^2 - sigma^2) / (omega^2 + sigma^2)`.
    pub center_slope: f64,
}

impl Envelope {
    pub fn of(spec: &StateSpec) -> Self {
        let s2 = spec.sigma().powi(2);
        let o2 = spec.omega().powi(2);
        Self {
            diagonal: ((s2 + o2) / 2.0).sqrt(),
            coherence: (2.0 * s2 * o2 / (s2 + o2)).sqrt(),
            center_slope: (o2 - s2) / (o2 + s2),
        }
    }
}

/// `rho1(y, y')` with a traced-out rule of the given order.
pub(crate) fn kernel_element(
    spec: &StateSpec,
    env: &Envelope,
    rule: &QuadratureRule,
    y: f64,
    yp: f64,
) -> Result<f64> {
    let center = 0.5 * (y + yp) * env.center_slope;
    integrate_affine(
        |x| spec.amplitude(y, x) * spec.amplitude(yp, x),
        rule,
        center,
        env.coherence,
    )
}

/// One-photon cross-spectral density `W(x1, x1')`; for real amplitudes this
/// is the reduced kernel itself.
pub fn cross_spectral_density(
    spec: &StateSpec,
    x1: f64,
    x1p: f64,
    opts: &ConvergenceOptions,
) -> Result<Converged<f64>> {
    let env = Envelope::of(spec);
    converge(
        |n| kernel_element(spec, &env, &QuadratureRule::gauss_hermite(n)?, x1, x1p),
        opts,
    )
}

/// `integral integral rho1(y, y')^2 dy dy'` at a single order.
pub fn purity_at_order(spec: &StateSpec, order: usize) -> Result<f64> {
    let env = Envelope::of(spec);
    let rule = QuadratureRule::gauss_hermite(order)?;
    let s_rule = rule.mapped(env.diagonal, 0.0)?;
    let d_rule = rule.mapped(env.coherence, 0.0)?;
    let r2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut total = 0.0;
    for (&s, &ws) in s_rule.nodes().iter().zip(s_rule.weights()) {
        let mut row = 0.0;
        for (&d, &wd) in d_rule.nodes().iter().zip(d_rule.weights()) {
            let rho = kernel_element(spec, &env, &rule, r2 * (s + d), r2 * (s - d))?;
            row += wd * rho * rho;
        }
        total += ws * row;
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GemEstimate {
    pub e2: f64,
    pub purity: f64,
    pub order_used: usize,
    pub delta: f64,
}

/// `E^2 = 2 (1 - purity)` from the converged triple integral.
pub fn gem_numeric(spec: &StateSpec, opts: &ConvergenceOptions) -> Result<GemEstimate> {
    let c = converge(|n| purity_at_order(spec, n), opts)?;
    let mut e2 = 2.0 * (1.0 - c.value);
    const SLACK: f64 = 1e-9;
    if (-SLACK..0.0).contains(&e2) {
        e2 = 0.0;
    } else if e2 > 2.0 && e2 <= 2.0 + SLACK {
        e2 = 2.0;
    } else if !(0.0..=2.0).contains(&e2) {
        return Err(Error::OutOfRange {
            quantity: "E^2",
            value: e2,
        });
    }
    Ok(GemEstimate {
        e2,
        purity: c.value,
        order_used: c.order_used,
        delta: 2.0 * c.delta,
    })
}

/// `rho1` sampled on a tensor grid of the retained variable.
#[derive(Debug, Clone)]
pub struct ReducedKernel {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// Row-major `rho1(nodes[i], nodes[j])`.
    pub values: Vec<f64>,
    pub traced_order: usize,
}

impl ReducedKernel {
    pub fn build(spec: &StateSpec, retained_order: usize, traced_order: usize) -> Result<Self> {
        let env = Envelope::of(spec);
        let retained = QuadratureRule::gauss_hermite(retained_order)?.mapped(env.diagonal, 0.0)?;
        let traced = QuadratureRule::gauss_hermite(traced_order)?;
        let n = retained_order;
        let nodes = retained.nodes().to_vec();
        let mut values = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                values[i * n + j] = kernel_element(spec, &env, &traced, nodes[i], nodes[j])?;
            }
        }
        Ok(Self {
            nodes,
            weights: retained.weights().to_vec(),
            values,
            traced_order,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.len() + j]
    }

    pub fn trace(&self) -> f64 {
        (0..self.len()).map(|i| self.weights[i] * self.at(i, i)).sum()
    }

    /// Largest `|rho1(i, j) - rho1(j, i)|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.len();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| (self.at(i, j) - self.at(j, i)).abs())
            .fold(0.0, f64::max)
    }

    /// Eigenvalues of `sqrt(w_i) rho1(i, j) sqrt(w_j)`, ascending.
    pub fn weighted_eigenvalues(&self) -> Result<Vec<f64>> {
        let n = self.len();
        let a = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                (self.weights[i] * self.weights[j]).sqrt() * self.at(i, j)
            })
            .collect();
        symmetric_eigenvalues(n, a)
    }
}
