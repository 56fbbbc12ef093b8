//! Down-converted photon pairs mapped onto the Gaussian family.
//!
//! A crystal of length `L` pumped at wavelength `lambda_p` gives
//! `sigma = sqrt(L lambda_p / 6 pi)`; the pump width sets `omega`. Whether a
//! quoted pump width is the full width `omega` or the waist `sigma_p`
//! (`omega = 2 sigma_p`) is always stated explicitly with
//! [`WidthConvention`]. All lengths are meters.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::closed::{gem_closed, widths_closed};
use crate::error::{Error, Result};
use crate::report::EntanglementReport;
use crate::roots::bisect;
use crate::state::{Family, StateSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WidthConvention {
    /// The quoted width is `omega` itself.
    #[default]
    FullWidthOmega,
    /// The quoted width is the waist `sigma_p`, so `omega = 2 sigma_p`.
    WaistSigmaP,
}

impl WidthConvention {
    pub fn to_omega(self, pump_width: f64) -> f64 {
        match self {
            WidthConvention::FullWidthOmega => pump_width,
            WidthConvention::WaistSigmaP => 2.0 * pump_width,
        }
    }

    pub fn from_omega(self, omega: f64) -> f64 {
        match self {
            WidthConvention::FullWidthOmega => omega,
            WidthConvention::WaistSigmaP => 0.5 * omega,
        }
    }
}

fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite and positive",
        })
    }
}

/// `sqrt(L lambda_p / 6 pi)`.
pub fn correlation_width(crystal_length: f64, pump_wavelength: f64) -> f64 {
    (crystal_length * pump_wavelength / (6.0 * PI)).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpdcSetup {
    crystal_length: f64,
    pump_wavelength: f64,
    pump_width: f64,
    convention: WidthConvention,
}

impl SpdcSetup {
    pub fn new(
        crystal_length: f64,
        pump_wavelength: f64,
        pump_width: f64,
        convention: WidthConvention,
    ) -> Result<Self> {
        Ok(Self {
            crystal_length: positive("crystal_length", crystal_length)?,
            pump_wavelength: positive("pump_wavelength", pump_wavelength)?,
            pump_width: positive("pump_width", pump_width)?,
            convention,
        })
    }

    pub fn crystal_length(&self) -> f64 {
        self.crystal_length
    }

    pub fn pump_wavelength(&self) -> f64 {
        self.pump_wavelength
    }

    pub fn pump_width(&self) -> f64 {
        self.pump_width
    }

    pub fn convention(&self) -> WidthConvention {
        self.convention
    }

    pub fn sigma(&self) -> f64 {
        correlation_width(self.crystal_length, self.pump_wavelength)
    }

    pub fn omega(&self) -> f64 {
        self.convention.to_omega(self.pump_width)
    }

    /// Pump waist `sigma_p = omega / 2`.
    pub fn pump_waist(&self) -> f64 {
        0.5 * self.omega()
    }
}

pub fn map_to_state(setup: &SpdcSetup) -> StateSpec {
    StateSpec::new(Family::GaussianEpr, setup.sigma(), setup.omega())
        .expect("validated setup yields positive widths")
}

/// `E^2 = 2 (sqrt(a) - 1)^2 / (a + 1)` with `a = L lambda_p / (24 pi sigma_p^2)`.
pub fn biphoton_e2(setup: &SpdcSetup) -> f64 {
    let sp = setup.pump_waist();
    let a = setup.crystal_length * setup.pump_wavelength / (24.0 * PI * sp * sp);
    2.0 * (a.sqrt() - 1.0).powi(2) / (a + 1.0)
}

/// Closed-form report for the mapped state, with `E^2` taken from the
/// setup-parameter formula.
pub fn biphoton_gem(setup: &SpdcSetup) -> Result<EntanglementReport> {
    EntanglementReport::with_e2(&map_to_state(setup), biphoton_e2(setup))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    OmegaAboveSigma,
    OmegaBelowSigma,
}

/// Bracket span, in decades of `omega / sigma`, searched for the inverse.
const INVERSE_DECADES: f64 = 12.0;

/// Pump width (in `convention`) that gives `target_e2` on the chosen branch.
pub fn required_pump_width(
    crystal_length: f64,
    pump_wavelength: f64,
    target_e2: f64,
    branch: Branch,
    convention: WidthConvention,
) -> Result<f64> {
    positive("crystal_length", crystal_length)?;
    positive("pump_wavelength", pump_wavelength)?;
    if !(0.0..2.0).contains(&target_e2) {
        return Err(Error::OutOfRange {
            quantity: "target E^2 (needs 0 <= E^2 < 2)",
            value: target_e2,
        });
    }
    let sigma = correlation_width(crystal_length, pump_wavelength);
    let ln_sigma = sigma.ln();
    let span = INVERSE_DECADES * std::f64::consts::LN_10;
    let (lo, hi) = match branch {
        Branch::OmegaAboveSigma => (ln_sigma, ln_sigma + span),
        Branch::OmegaBelowSigma => (ln_sigma - span, ln_sigma),
    };
    let residual = |ln_omega: f64| -> Result<f64> {
        let spec = StateSpec::gaussian(sigma, ln_omega.exp())?;
        Ok(gem_closed(&spec) - target_e2)
    };
    if residual(ln_sigma)? >= 0.0 {
        return Ok(convention.from_omega(sigma));
    }
    let ln_omega = bisect(residual, lo, hi, 1e-11)?;
    Ok(convention.from_omega(ln_omega.exp()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasuredWidths {
    /// Width of the anti-diagonal cross-spectral density `W(x, -x)`.
    pub f: f64,
    /// Width of the down-converted beam.
    pub sigma1: f64,
}

impl MeasuredWidths {
    pub fn new(f: f64, sigma1: f64) -> Result<Self> {
        Ok(Self {
            f: positive("f", f)?,
            sigma1: positive("sigma1", sigma1)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InferredGem {
    pub e2: f64,
    /// Set when `f > sigma1` and the raw value was negative.
    pub clamped: bool,
}

/// `E^2 = 2 (1 - f / sigma1)`.
pub fn infer_gem_from_measurement(m: &MeasuredWidths) -> InferredGem {
    let raw = 2.0 * (1.0 - m.f / m.sigma1);
    InferredGem {
        e2: raw.clamp(0.0, 2.0),
        clamped: raw < 0.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Spread {
    pub delta_x: [f64; 2],
    pub delta_k: [f64; 2],
    /// `delta_x[0] * delta_k[0]`.
    pub product: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UncertaintyReport {
    /// `sqrt(omega^2 + sigma^2)` and `sqrt(1/sigma^2 + 1/omega^2) / 4`.
    pub quoted_convention: Spread,
    /// Standard deviations of `|psi|^2` and of its momentum distribution.
    pub second_moment: Spread,
}

pub fn uncertainty_report(spec: &StateSpec) -> Result<UncertaintyReport> {
    // widths_closed rejects the non-Gaussian family.
    widths_closed(spec)?;
    let s2 = spec.sigma().powi(2);
    let o2 = spec.omega().powi(2);
    let spread = |dx: f64, dk: f64| Spread {
        delta_x: [dx, dx],
        delta_k: [dk, dk],
        product: dx * dk,
    };
    let k = (1.0 / s2 + 1.0 / o2).sqrt();
    Ok(UncertaintyReport {
        quoted_convention: spread((s2 + o2).sqrt(), 0.25 * k),
        second_moment: spread(0.5 * (s2 + o2).sqrt(), 0.5 * k),
    })
}

/// Unnormalized transverse momentum amplitude
/// `sinc(L lambda_p (q1 - q2)^2 / 8 pi) * exp(-sigma_p^2 (q1 + q2)^2)` along
/// one transverse axis. For plotting only.
pub fn momentum_amplitude(setup: &SpdcSetup, q1: f64, q2: f64) -> f64 {
    let theta = setup.crystal_length * setup.pump_wavelength * (q1 - q2).powi(2) / (8.0 * PI);
    let sinc = if theta == 0.0 { 1.0 } else { theta.sin() / theta };
    let sp = setup.pump_waist();
    sinc * (-sp * sp * (q1 + q2).powi(2)).exp()
}
