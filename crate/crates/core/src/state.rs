//! Two-particle transverse wavefunctions.
//!
//! Both families share the double-Gaussian envelope
//! `exp(-(x1-x2)^2 / 4 sigma^2) * exp(-(x1+x2)^2 / 4 omega^2)`; the
//! non-Gaussian family carries an extra `(x1 + x2)` factor. Amplitudes are
//! real and normalized analytically.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    GaussianEpr,
    NonGaussian,
}

impl Family {
    /// Sign picked up by the amplitude under `(x1, x2) -> (-x1, -x2)`.
    pub fn parity(self) -> f64 {
        match self {
            Family::GaussianEpr => 1.0,
            Family::NonGaussian => -1.0,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::GaussianEpr => "gaussian",
            Family::NonGaussian => "nongaussian",
        })
    }
}

fn check_width(name: &'static str, value: f64) -> Result<f64> {
    if !value.is_finite() {
        return Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite",
        });
    }
    if value <= 0.0 {
        return Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be strictly positive",
        });
    }
    Ok(value)
}

/// Dimensionless width ratio `sigma / omega`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Ratio(f64);

impl Ratio {
    pub fn new(sigma_over_omega: f64) -> Result<Self> {
        check_width("sigma/omega", sigma_over_omega).map(Ratio)
    }

    pub fn sigma_over_omega(self) -> f64 {
        self.0
    }

    pub fn omega_over_sigma(self) -> f64 {
        1.0 / self.0
    }

    pub fn inverse(self) -> Ratio {
        Ratio(1.0 / self.0)
    }
}

/// A validated member of one of the two state families.
///
/// Lengths are in whatever unit the caller uses consistently (meters for
/// SPDC work, dimensionless for theory sweeps); momenta are then wavenumbers
/// in the reciprocal unit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StateSpec {
    family: Family,
    sigma: f64,
    omega: f64,
}

impl StateSpec {
    pub fn new(family: Family, sigma: f64, omega: f64) -> Result<Self> {
        Ok(Self {
            family,
            sigma: check_width("sigma", sigma)?,
            omega: check_width("omega", omega)?,
        })
    }

    pub fn gaussian(sigma: f64, omega: f64) -> Result<Self> {
        Self::new(Family::GaussianEpr, sigma, omega)
    }

    pub fn non_gaussian(sigma: f64, omega: f64) -> Result<Self> {
        Self::new(Family::NonGaussian, sigma, omega)
    }

    /// State with `omega = 1` and the given ratio.
    pub fn from_ratio(family: Family, ratio: Ratio) -> Self {
        Self {
            family,
            sigma: ratio.sigma_over_omega(),
            omega: 1.0,
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn ratio(&self) -> Ratio {
        Ratio(self.sigma / self.omega)
    }

    /// Same family with every length multiplied by `factor`.
    pub fn rescaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.family, self.sigma * factor, self.omega * factor)
    }

    /// Same family with sigma and omega exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            family: self.family,
            sigma: self.omega,
            omega: self.sigma,
        }
    }

    /// Analytic normalization prefactor.
    pub fn normalization(&self) -> f64 {
        match self.family {
            Family::GaussianEpr => (PI * self.sigma * self.omega).powf(-0.5),
            Family::NonGaussian => (PI * self.sigma * self.omega.powi(3)).powf(-0.5),
        }
    }

    #[inline]
    fn envelope(&self, x1: f64, x2: f64) -> f64 {
        let d = x1 - x2;
        let s = x1 + x2;
        (-d * d / (4.0 * self.sigma * self.sigma) - s * s / (4.0 * self.omega * self.omega)).exp()
    }

    /// Normalized amplitude `psi(x1, x2)`.
    #[inline]
    pub fn amplitude(&self, x1: f64, x2: f64) -> f64 {
        let g = self.normalization() * self.envelope(x1, x2);
        match self.family {
            Family::GaussianEpr => g,
            Family::NonGaussian => (x1 + x2) * g,
        }
    }

    /// Analytic `(d psi / d x1, d psi / d x2)`.
    pub fn amplitude_gradient(&self, x1: f64, x2: f64) -> (f64, f64) {
        let d = x1 - x2;
        let s = x1 + x2;
        let a = d / (2.0 * self.sigma * self.sigma);
        let b = s / (2.0 * self.omega * self.omega);
        let g = self.normalization() * self.envelope(x1, x2);
        match self.family {
            Family::GaussianEpr => (g * (-a - b), g * (a - b)),
            Family::NonGaussian => (g + s * g * (-a - b), g + s * g * (a - b)),
        }
    }
}
