//! Closed-form entanglement quantities.
//!
//! Everything here is a pure function of `(sigma, omega)`, and most of it of
//! the ratio alone. The numerical oracles in [`crate::oracle`] reproduce each
//! of these independently.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::state::{Family, Ratio, StateSpec};

/// Generalized entanglement measure `E^2`, bounded by 0 and 2.
pub fn gem_closed(spec: &StateSpec) -> f64 {
    let (s, o) = (spec.sigma(), spec.omega());
    let s2 = s * s;
    let o2 = o * o;
    match spec.family() {
        Family::GaussianEpr => 2.0 * (s - o).powi(2) / (s2 + o2),
        Family::NonGaussian => {
            2.0 - s * o * (3.0 * o2 * o2 + 2.0 * o2 * s2 + 3.0 * s2 * s2) / (s2 + o2).powi(3)
        }
    }
}

/// [`gem_closed`] written in `r = sigma / omega` only.
pub fn gem_closed_ratio(family: Family, ratio: Ratio) -> f64 {
    let r = ratio.sigma_over_omega();
    let r2 = r * r;
    match family {
        Family::GaussianEpr => 2.0 * (r - 1.0).powi(2) / (r2 + 1.0),
        Family::NonGaussian => 2.0 - r * (3.0 + 2.0 * r2 + 3.0 * r2 * r2) / (1.0 + r2).powi(3),
    }
}

/// Percent entanglement, `E^2 * 100 / 2`.
pub fn percent_entanglement(e2: f64) -> Result<f64> {
    if !(0.0..=2.0).contains(&e2) {
        return Err(Error::OutOfRange {
            quantity: "E^2",
            value: e2,
        });
    }
    Ok(e2 * 50.0)
}

fn require_gaussian(spec: &StateSpec, operation: &'static str) -> Result<()> {
    match spec.family() {
        Family::GaussianEpr => Ok(()),
        family => Err(Error::Unsupported { operation, family }),
    }
}

/// Reduced-state purity `2 sigma omega / (sigma^2 + omega^2)` of the Gaussian
/// family.
pub fn purity_closed(spec: &StateSpec) -> Result<f64> {
    require_gaussian(spec, "purity_closed")?;
    let (s, o) = (spec.sigma(), spec.omega());
    Ok(2.0 * s * o / (s * s + o * o))
}

/// Schmidt number `K = (sigma/omega + omega/sigma)^2 / 4` as commonly quoted
/// for SPDC photons.
pub fn schmidt_number_2d(spec: &StateSpec) -> Result<f64> {
    require_gaussian(spec, "schmidt_number_2d")?;
    let r = spec.ratio().sigma_over_omega();
    Ok(0.25 * (r + 1.0 / r).powi(2))
}

/// Second-order separability value
/// `<dx1 dx2><dp1 dp2> - <dx1 dp2><dp1 dx2>` with hbar = 1.
pub fn ph_value_closed(spec: &StateSpec) -> Result<f64> {
    require_gaussian(spec, "ph_value_closed")?;
    let r = spec.ratio().sigma_over_omega();
    Ok(-(r - 1.0 / r).powi(2) / 16.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Widths {
    /// Marginal width `sqrt((sigma^2 + omega^2) / 2)`.
    pub marginal: f64,
    /// Conditional width `sqrt(2 sigma^2 omega^2 / (sigma^2 + omega^2))`.
    pub conditional: f64,
}

impl Widths {
    /// `conditional / marginal`, which equals the reduced-state purity.
    pub fn ratio(&self) -> f64 {
        self.conditional / self.marginal
    }
}

pub fn widths_closed(spec: &StateSpec) -> Result<Widths> {
    require_gaussian(spec, "widths_closed")?;
    let s2 = spec.sigma().powi(2);
    let o2 = spec.omega().powi(2);
    Ok(Widths {
        marginal: ((s2 + o2) / 2.0).sqrt(),
        conditional: (2.0 * s2 * o2 / (s2 + o2)).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: f64, o: f64) -> StateSpec {
        StateSpec::gaussian(s, o).unwrap()
    }

    #[test]
    fn gem_examples() {
        assert_eq!(gem_closed(&g(1.7, 1.7)), 0.0);
        let e2 = gem_closed(&g(10.0, 1.0));
        assert!((e2 - 1.60396).abs() < 1e-5, "{e2}");
        assert!((percent_entanglement(e2).unwrap() - 80.198).abs() < 1e-3);
        let ng = StateSpec::non_gaussian(1.0, 1.0).unwrap();
        assert_eq!(gem_closed(&ng), 1.0);
        let ng = StateSpec::non_gaussian(1.0, 2.0).unwrap();
        assert!((gem_closed(&ng) - 1.056).abs() < 1e-15);
    }

    #[test]
    fn ratio_form_agrees() {
        for &(s, o) in &[(0.3, 2.0), (5.0, 0.01), (1.0, 1.0), (2.5, 2.4)] {
            for fam in [Family::GaussianEpr, Family::NonGaussian] {
                let spec = StateSpec::new(fam, s, o).unwrap();
                let a = gem_closed(&spec);
                let b = gem_closed_ratio(fam, spec.ratio());
                assert!((a - b).abs() < 1e-14, "{fam} {s} {o}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn percent_bounds() {
        assert_eq!(percent_entanglement(2.0).unwrap(), 100.0);
        assert!((percent_entanglement(1.832).unwrap() - 91.6).abs() < 1e-12);
        assert!((percent_entanglement(1.796).unwrap() - 89.8).abs() < 1e-12);
        assert!(percent_entanglement(-1e-3).is_err());
        assert!(percent_entanglement(2.0001).is_err());
        assert!(percent_entanglement(f64::NAN).is_err());
    }

    #[test]
    fn schmidt_examples() {
        assert_eq!(schmidt_number_2d(&g(2.0, 2.0)).unwrap(), 1.0);
        assert!((schmidt_number_2d(&g(10.0, 1.0)).unwrap() - 25.5025).abs() < 1e-12);
        assert!((schmidt_number_2d(&g(2.0, 1.0)).unwrap() - 1.5625).abs() < 1e-15);
        let ng = StateSpec::non_gaussian(1.0, 2.0).unwrap();
        assert!(matches!(
            schmidt_number_2d(&ng),
            Err(Error::Unsupported { .. })
        ));
    }

    #[test]
    fn ph_examples() {
        assert_eq!(ph_value_closed(&g(1.0, 1.0)).unwrap(), 0.0);
        assert!((ph_value_closed(&g(1.0, 2.0)).unwrap() + 0.140625).abs() < 1e-15);
        assert!((ph_value_closed(&g(1.0, 3.0)).unwrap() + 4.0 / 9.0).abs() < 1e-15);
        assert!(ph_value_closed(&StateSpec::non_gaussian(1.0, 1.0).unwrap()).is_err());
    }

    #[test]
    fn widths_examples() {
        let w = widths_closed(&g(1.0, 1.0)).unwrap();
        assert_eq!((w.marginal, w.conditional, w.ratio()), (1.0, 1.0, 1.0));
        let w = widths_closed(&g(1.0, 2.0)).unwrap();
        assert!((w.ratio() - 0.8).abs() < 1e-15);
        assert!((w.marginal - 2.5f64.sqrt()).abs() < 1e-15);
        assert!((w.conditional - 1.6f64.sqrt()).abs() < 1e-15);
        assert!((w.marginal - 1.581139).abs() < 1e-6);
        assert!((w.conditional - 1.264911).abs() < 1e-6);
    }

    #[test]
    fn limits_reach_two() {
        assert!(gem_closed(&g(1e-6, 1.0)) >= 2.0 - 1e-5);
        assert!(gem_closed(&g(1.0, 1e-6)) >= 2.0 - 1e-5);
    }

    #[test]
    fn gem_matches_purity_and_schmidt_identities() {
        let mut r = 1e-3f64;
        while r < 1e3 {
            let spec = g(r, 1.0);
            let p = purity_closed(&spec).unwrap();
            assert!((gem_closed(&spec) - 2.0 * (1.0 - p)).abs() < 1e-13);
            let k = schmidt_number_2d(&spec).unwrap();
            assert!((k - p.powi(-2)).abs() <= 1e-12 * k);
            r *= 1.37;
        }
    }
}
