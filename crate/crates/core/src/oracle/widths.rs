//! Marginal and anti-diagonal widths, in the convention where
//! `E^2 = 2 (1 - f / sigma1)` for the Gaussian family.
//!
//! Both widths are `sqrt(2)` times a second-moment standard deviation.

use serde::Serialize;

use super::kernel::{kernel_element, Envelope};
use super::moments::moments;
use crate::error::{Error, Result};
use crate::quadrature::{converge_vec, ConvergenceOptions, QuadratureRule};
use crate::state::StateSpec;

fn antidiagonal_moments(spec: &StateSpec, order: usize) -> Result<Vec<f64>> {
    let env = Envelope::of(spec);
    let rule = QuadratureRule::gauss_hermite(order)?;
    let outer = rule.mapped(env.coherence, 0.0)?;
    let (mut m0, mut m2) = (0.0, 0.0);
    for (&x, &w) in outer.nodes().iter().zip(outer.weights()) {
        let v = kernel_element(spec, &env, &rule, x, -x)?;
        m0 += w * v;
        m2 += w * x * x * v;
    }
    Ok(vec![m0, m2])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Width {
    pub value: f64,
    pub order_used: usize,
}

/// Width `f` of the profile `W(x, -x)`.
///
/// Fails with [`Error::DegenerateProfile`] when the profile integrates to
/// (numerically) zero, which happens for the non-Gaussian family.
pub fn antidiagonal_width(spec: &StateSpec, opts: &ConvergenceOptions) -> Result<Width> {
    let c = converge_vec(|n| antidiagonal_moments(spec, n), opts)?;
    let (m0, m2) = (c.value[0], c.value[1]);
    let reference = m2.abs() / Envelope::of(spec).coherence.powi(2);
    if m0.abs() <= 1e-9 * reference {
        return Err(Error::DegenerateProfile("zeroth moment"));
    }
    let variance = m2 / m0;
    if !(variance > 0.0) {
        return Err(Error::DegenerateProfile("second moment"));
    }
    Ok(Width {
        value: (2.0 * variance).sqrt(),
        order_used: c.order_used,
    })
}

/// Marginal width `sigma1 = sqrt(2 Var(x1))`.
pub fn marginal_width(spec: &StateSpec, opts: &ConvergenceOptions) -> Result<Width> {
    let m = moments(spec, opts)?;
    Ok(Width {
        value: (2.0 * m.var_x(0)).sqrt(),
        order_used: m.order_used,
    })
}
