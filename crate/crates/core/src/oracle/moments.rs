//! First and second moments of position and momentum, and the second-order
//! separability test built from them.
//!
//! Integrals run in `u = (x1 - x2) / sqrt 2`, `v = (x1 + x2) / sqrt 2`
//! (unit Jacobian) with rule scales `sigma` and `omega`, where both families
//! separate. Momentum terms use the analytic gradient: `<p_j> = -i int psi
//! d_j psi`, `<p_j p_k> = int d_j psi d_k psi`, `<x_j p_k> = -i int x_j psi
//! d_k psi`. Products of non-commuting operators are symmetrized, which for
//! a real amplitude is the real part.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;
use crate::quadrature::{converge_vec, ConvergenceOptions, QuadratureRule};
use crate::roots::bisect;
use crate::state::{Family, StateSpec};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Moments {
    /// `int |psi|^2`.
    pub norm: f64,
    pub mean_x: [f64; 2],
    pub mean_p: [Complex64; 2],
    /// `<dx_j dx_k>`.
    pub cov_x: [[f64; 2]; 2],
    /// `<dp_j dp_k>`.
    pub cov_p: [[f64; 2]; 2],
    /// Unsymmetrized `<x_j p_k>`; the diagonal carries the `i/2` commutator.
    pub xp: [[Complex64; 2]; 2],
    /// `Re <dx_j dp_k>`, the symmetrized covariance.
    pub cov_xp_sym: [[f64; 2]; 2],
    pub order_used: usize,
    pub delta: f64,
}

impl Moments {
    pub fn var_x(&self, j: usize) -> f64 {
        self.cov_x[j][j]
    }

    pub fn var_p(&self, j: usize) -> f64 {
        self.cov_p[j][j]
    }

    /// `<dx1 dx2><dp1 dp2> - <dx1 dp2><dp1 dx2>`.
    pub fn ph_value(&self) -> f64 {
        self.cov_x[0][1] * self.cov_p[0][1] - self.cov_xp_sym[0][1] * self.cov_xp_sym[1][0]
    }
}

// Raw integrals, in this order.
const N_TERMS: usize = 16;

fn raw_integrals(spec: &StateSpec, order: usize) -> Result<Vec<f64>> {
    let rule = QuadratureRule::gauss_hermite(order)?;
    let u_rule = rule.mapped(spec.sigma(), 0.0)?;
    let v_rule = rule.mapped(spec.omega(), 0.0)?;
    let r2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut acc = vec![0.0; N_TERMS];
    let mut row = [0.0; N_TERMS];
    for (&u, &wu) in u_rule.nodes().iter().zip(u_rule.weights()) {
        row.fill(0.0);
        for (&v, &wv) in v_rule.nodes().iter().zip(v_rule.weights()) {
            let x1 = r2 * (v + u);
            let x2 = r2 * (v - u);
            let psi = spec.amplitude(x1, x2);
            let (d1, d2) = spec.amplitude_gradient(x1, x2);
            let p2 = psi * psi;
            let terms = [
                p2,
                x1 * p2,
                x2 * p2,
                x1 * x1 * p2,
                x2 * x2 * p2,
                x1 * x2 * p2,
                psi * d1,
                psi * d2,
                d1 * d1,
                d2 * d2,
                d1 * d2,
                x1 * psi * d1,
                x1 * psi * d2,
                x2 * psi * d1,
                x2 * psi * d2,
                0.0,
            ];
            for (r, t) in row.iter_mut().zip(terms) {
                *r += wv * t;
            }
        }
        for (a, r) in acc.iter_mut().zip(row) {
            *a += wu * r;
        }
    }
    Ok(acc)
}

pub fn moments(spec: &StateSpec, opts: &ConvergenceOptions) -> Result<Moments> {
    let c = converge_vec(|n| raw_integrals(spec, n), opts)?;
    let m = &c.value;
    let minus_i = Complex64::new(0.0, -1.0);

    let mean_x = [m[1], m[2]];
    let mean_p = [minus_i * m[6], minus_i * m[7]];
    let second_x = [[m[3], m[5]], [m[5], m[4]]];
    let second_p = [[m[8], m[10]], [m[10], m[9]]];
    let xp = [
        [minus_i * m[11], minus_i * m[12]],
        [minus_i * m[13], minus_i * m[14]],
    ];

    let mut cov_x = [[0.0; 2]; 2];
    let mut cov_p = [[0.0; 2]; 2];
    let mut cov_xp_sym = [[0.0; 2]; 2];
    for j in 0..2 {
        for k in 0..2 {
            cov_x[j][k] = second_x[j][k] - mean_x[j] * mean_x[k];
            cov_p[j][k] = second_p[j][k] - (mean_p[j].conj() * mean_p[k]).re;
            cov_xp_sym[j][k] = xp[j][k].re - mean_x[j] * mean_p[k].re;
        }
    }
    Ok(Moments {
        norm: m[0],
        mean_x,
        mean_p,
        cov_x,
        cov_p,
        xp,
        cov_xp_sym,
        order_used: c.order_used,
        delta: c.delta,
    })
}

/// Values below this count as a second-order violation.
pub const PH_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhCriterion {
    pub value: f64,
    pub separable_by_second_order: bool,
    pub order_used: usize,
}

pub fn ph_criterion(spec: &StateSpec, opts: &ConvergenceOptions) -> Result<PhCriterion> {
    let m = moments(spec, opts)?;
    let value = m.ph_value();
    Ok(PhCriterion {
        value,
        separable_by_second_order: value >= -PH_SLACK,
        order_used: m.order_used,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlindWindow {
    /// Lower `omega / sigma` root.
    pub lower: f64,
    /// Upper `omega / sigma` root.
    pub upper: f64,
    /// Largest quadrature order any evaluation needed.
    pub order_used: usize,
}

pub const WINDOW_ROOT_TOLERANCE: f64 = 1e-6;

/// Range of `omega / sigma` over which the non-Gaussian state passes the
/// second-order test. Computed at `sigma = 1`; the criterion is
/// scale-invariant.
pub fn ph_blind_window(opts: &ConvergenceOptions) -> Result<BlindWindow> {
    let order = std::cell::Cell::new(0);
    let value = |ratio: f64| -> Result<f64> {
        let spec = StateSpec::new(Family::NonGaussian, 1.0, ratio)?;
        let c = ph_criterion(&spec, opts)?;
        order.set(order.get().max(c.order_used));
        Ok(c.value)
    };
    let lower = bisect(value, 0.1, 1.0, WINDOW_ROOT_TOLERANCE)?;
    let upper = bisect(value, 1.0, 10.0, WINDOW_ROOT_TOLERANCE)?;
    Ok(BlindWindow {
        lower,
        upper,
        order_used: order.get(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> ConvergenceOptions {
        ConvergenceOptions::default()
    }

    #[test]
    fn gaussian_sigma1_omega2() {
        let m = moments(&StateSpec::gaussian(1.0, 2.0).unwrap(), &opts()).unwrap();
        assert!((m.norm - 1.0).abs() < 1e-10);
        assert!((m.cov_x[0][1] - 0.75).abs() < 1e-9);
        assert!((m.cov_p[0][1] + 0.1875).abs() < 1e-9);
        assert!((m.var_x(0) - 1.25).abs() < 1e-8);
        assert!((m.var_p(0) - 0.3125).abs() < 1e-9);
        assert!((m.ph_value() + 0.140625).abs() < 1e-9);
    }

    #[test]
    fn real_state_first_moments_vanish() {
        for spec in [
            StateSpec::gaussian(0.4, 3.0).unwrap(),
            StateSpec::non_gaussian(2.0, 0.6).unwrap(),
        ] {
            let m = moments(&spec, &opts()).unwrap();
            for j in 0..2 {
                assert!(m.mean_x[j].abs() < 1e-9);
                assert!(m.mean_p[j].norm() < 1e-9);
                for k in 0..2 {
                    assert!(m.cov_xp_sym[j][k].abs() < 1e-9);
                }
                // [x, p] = i
                assert!((m.xp[j][j].im - 0.5).abs() < 1e-9);
            }
            assert!(m.xp[0][1].norm() < 1e-9 && m.xp[1][0].norm() < 1e-9);
        }
    }

    #[test]
    fn criterion_flags() {
        let c = ph_criterion(&StateSpec::gaussian(1.0, 1.0).unwrap(), &opts()).unwrap();
        assert!(c.value.abs() < 1e-12 && c.separable_by_second_order);
        let c = ph_criterion(&StateSpec::gaussian(1.0, 2.0).unwrap(), &opts()).unwrap();
        assert!((c.value + 0.140625).abs() < 1e-6 && !c.separable_by_second_order);
        let c = ph_criterion(&StateSpec::non_gaussian(1.0, 1.0).unwrap(), &opts()).unwrap();
        assert!(c.value >= 0.0 && c.separable_by_second_order);
    }

    #[test]
    fn blind_window_roots() {
        let w = ph_blind_window(&opts()).unwrap();
        assert!((w.upper - 1.7321).abs() < 0.01, "{}", w.upper);
        assert!((w.lower - 0.5774).abs() < 0.01, "{}", w.lower);
        assert!((w.lower * w.upper - 1.0).abs() < 1e-4);
    }
}
