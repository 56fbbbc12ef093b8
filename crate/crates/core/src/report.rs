//! Single-point entanglement reports. Every number carries a provenance
//! label: `closed-form`, `quadrature(order=N)` or `svd(modes=N)`.

use serde::Serialize;

use crate::closed::{
    gem_closed, percent_entanglement, ph_value_closed, schmidt_number_2d, widths_closed,
};
use crate::error::Result;
use crate::oracle::{gem_numeric, ph_criterion, schmidt_spectrum_converged};
use crate::quadrature::{ConvergenceOptions, MAX_ORDER};
use crate::state::{Family, StateSpec};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Labeled {
    pub value: f64,
    pub provenance: String,
}

impl Labeled {
    pub fn closed(value: f64) -> Self {
        Self {
            value,
            provenance: "closed-form".into(),
        }
    }

    pub fn quadrature(value: f64, order: usize) -> Self {
        Self {
            value,
            provenance: format!("quadrature(order={order})"),
        }
    }

    pub fn svd(value: f64, modes: usize) -> Self {
        Self {
            value,
            provenance: format!("svd(modes={modes})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WidthPair {
    pub marginal: Labeled,
    pub conditional: Labeled,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleGem {
    pub e2: Labeled,
    pub percent: Labeled,
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntanglementReport {
    pub family: Family,
    pub sigma: f64,
    pub omega: f64,
    pub ratio_sigma_over_omega: f64,
    pub e2: Labeled,
    pub percent: Labeled,
    /// `(sigma/omega + omega/sigma)^2 / 4`; Gaussian family only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schmidt_k: Option<Labeled>,
    /// `1 / sum c^4` of the one-dimensional Schmidt spectrum.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schmidt_k1: Option<Labeled>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schmidt_k1_squared: Option<Labeled>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ph_value: Option<Labeled>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub separable_by_second_order: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub widths: Option<WidthPair>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleGem>,
}

impl EntanglementReport {
    /// Everything available without numerical integration.
    pub fn closed_form(spec: &StateSpec) -> Result<Self> {
        Self::with_e2(spec, gem_closed(spec))
    }

    /// Like [`closed_form`](Self::closed_form) but with `E^2` supplied by the
    /// caller (used by the SPDC route, which evaluates its own formula).
    pub(crate) fn with_e2(spec: &StateSpec, e2: f64) -> Result<Self> {
        let gaussian = spec.family() == Family::GaussianEpr;
        let ph = if gaussian {
            Some(Labeled::closed(ph_value_closed(spec)?))
        } else {
            None
        };
        Ok(Self {
            family: spec.family(),
            sigma: spec.sigma(),
            omega: spec.omega(),
            ratio_sigma_over_omega: spec.ratio().sigma_over_omega(),
            e2: Labeled::closed(e2),
            percent: Labeled::closed(percent_entanglement(e2)?),
            schmidt_k: if gaussian {
                Some(Labeled::closed(schmidt_number_2d(spec)?))
            } else {
                None
            },
            schmidt_k1: None,
            schmidt_k1_squared: None,
            separable_by_second_order: ph.as_ref().map(|p| p.value >= -crate::oracle::PH_SLACK),
            ph_value: ph,
            widths: if gaussian {
                let w = widths_closed(spec)?;
                Some(WidthPair {
                    marginal: Labeled::closed(w.marginal),
                    conditional: Labeled::closed(w.conditional),
                })
            } else {
                None
            },
            oracle: None,
        })
    }

    /// Adds `K1` from the SVD oracle.
    pub fn add_schmidt(&mut self, spec: &StateSpec) -> Result<()> {
        let s = schmidt_spectrum_converged(spec, 64, MAX_ORDER)?;
        let k1 = s.schmidt_number();
        self.schmidt_k1 = Some(Labeled::svd(k1, s.modes));
        self.schmidt_k1_squared = Some(Labeled::svd(k1 * k1, s.modes));
        Ok(())
    }

    /// Fills the separability value from moments when no closed form exists.
    pub fn add_ph_oracle(&mut self, spec: &StateSpec, opts: &ConvergenceOptions) -> Result<()> {
        if self.ph_value.is_none() {
            let c = ph_criterion(spec, opts)?;
            self.ph_value = Some(Labeled::quadrature(c.value, c.order_used));
            self.separable_by_second_order = Some(c.separable_by_second_order);
        }
        Ok(())
    }

    pub fn add_gem_oracle(&mut self, spec: &StateSpec, opts: &ConvergenceOptions) -> Result<()> {
        let g = gem_numeric(spec, opts)?;
        self.oracle = Some(OracleGem {
            e2: Labeled::quadrature(g.e2, g.order_used),
            percent: Labeled::quadrature(percent_entanglement(g.e2)?, g.order_used),
            delta: g.delta,
        });
        Ok(())
    }
}
