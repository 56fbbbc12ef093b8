//! Schmidt spectrum from the singular values of the discretized amplitude.
//!
//! The amplitude is sampled on a symmetric Gauss-Hermite grid with scale
//! `sqrt(sigma omega)`, for which the Hermite-function modes of the
//! Gaussian family map onto orthonormal grid vectors. Both families have a
//! definite parity under `(x1, x2) -> (-x1, -x2)`, so the weighted matrix
//! splits into two half-size blocks whose singular values are computed
//! separately.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::singular_values;
use crate::quadrature::{QuadratureRule, MAX_ORDER};
use crate::state::StateSpec;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchmidtSpectrum {
    /// Descending, normalized so that the squares sum to one.
    pub coefficients: Vec<f64>,
    /// `|1 - sum s_n^2|` before normalization: amplitude mass the grid misses.
    pub truncation_error: f64,
    /// Grid size actually used.
    pub modes: usize,
}

impl SchmidtSpectrum {
    /// `sum c_n^4`.
    pub fn purity(&self) -> f64 {
        self.coefficients.iter().map(|c| c.powi(4)).sum()
    }

    /// `K1 = 1 / sum c_n^4`.
    pub fn schmidt_number(&self) -> f64 {
        1.0 / self.purity()
    }

    /// `sum c_n^2` over the trailing `fraction` of the retained modes.
    pub fn tail_mass(&self, fraction: f64) -> f64 {
        let n = self.coefficients.len();
        let start = n - ((n as f64 * fraction).ceil() as usize).clamp(1, n);
        self.coefficients[start..].iter().map(|c| c * c).sum()
    }
}

pub fn schmidt_spectrum(spec: &StateSpec, modes: usize) -> Result<SchmidtSpectrum> {
    if modes < 8 {
        return Err(Error::InvalidParameter {
            name: "modes",
            value: modes as f64,
            reason: "must be at least 8",
        });
    }
    let n = modes + modes % 2;
    let scale = (spec.sigma() * spec.omega()).sqrt();
    let rule = QuadratureRule::gauss_hermite(n)?.mapped(scale, 0.0)?;
    let a = rule.nodes();
    let sw: Vec<f64> = rule.weights().iter().map(|w| w.sqrt()).collect();
    let m = |i: usize, j: usize| spec.amplitude(a[i], a[j]) * sw[i] * sw[j];

    // Node i < n/2 mirrors n - 1 - i. With e_i, o_i the even/odd
    // combinations, the coupled blocks are M_ij + M_ij' and M_ij - M_ij'.
    let half = n / 2;
    let mut plus = vec![vec![0.0; half]; half];
    let mut minus = vec![vec![0.0; half]; half];
    for j in 0..half {
        for i in 0..half {
            let direct = m(i, j);
            let mirrored = m(i, n - 1 - j);
            plus[j][i] = direct + mirrored;
            minus[j][i] = direct - mirrored;
        }
    }
    let (sp, sm) = rayon::join(|| singular_values(plus), || singular_values(minus));
    let mut values = sp?;
    values.extend(sm?);
    values.sort_by(|x, y| y.total_cmp(x));

    let total: f64 = values.iter().map(|s| s * s).sum();
    if !(total > 0.0) {
        return Err(Error::OutOfRange {
            quantity: "discretized norm",
            value: total,
        });
    }
    let norm = total.sqrt();
    Ok(SchmidtSpectrum {
        coefficients: values.iter().map(|s| s / norm).collect(),
        truncation_error: (1.0 - total).abs(),
        modes: n,
    })
}

/// Trailing fraction of modes inspected by [`schmidt_spectrum_converged`].
pub const TAIL_FRACTION: f64 = 0.125;
/// Mass allowed in that tail, and amplitude mass the grid may miss.
pub const TAIL_TOLERANCE: f64 = 1e-8;

/// Grows the grid by `sqrt(2)` from `start_modes` until the last eighth of the spectrum
/// carries less than [`TAIL_TOLERANCE`] of the mass and the truncation error
/// is below the same bound.
pub fn schmidt_spectrum_converged(
    spec: &StateSpec,
    start_modes: usize,
    max_modes: usize,
) -> Result<SchmidtSpectrum> {
    let cap = max_modes.min(MAX_ORDER);
    let mut modes = start_modes;
    loop {
        let s = schmidt_spectrum(spec, modes)?;
        let tail = s.tail_mass(TAIL_FRACTION).max(s.truncation_error);
        if tail < TAIL_TOLERANCE {
            return Ok(s);
        }
        if s.modes >= cap {
            return Err(Error::NotConverged {
                order: s.modes,
                last: tail,
                previous: TAIL_TOLERANCE,
            });
        }
        modes = ((modes as f64 * std::f64::consts::SQRT_2).round() as usize).min(cap);
    }
}

/// `K1 = 1 / sum c_n^4` from a converged spectrum.
pub fn schmidt_number_1d(spec: &StateSpec) -> Result<(f64, SchmidtSpectrum)> {
    let s = schmidt_spectrum_converged(spec, 64, MAX_ORDER)?;
    Ok((s.schmidt_number(), s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_state_has_one_mode() {
        let s = schmidt_spectrum(&StateSpec::gaussian(0.8, 0.8).unwrap(), 32).unwrap();
        assert!((s.coefficients[0] - 1.0).abs() < 1e-8);
        assert!(s.coefficients[1..].iter().all(|c| c.abs() < 1e-8));
        assert!(s.truncation_error < 1e-10);
    }

    #[test]
    fn sigma1_omega2_purity_and_leading_mode() {
        let spec = StateSpec::gaussian(1.0, 2.0).unwrap();
        let s = schmidt_spectrum(&spec, 64).unwrap();
        assert!((s.purity() - 0.8).abs() < 1e-6);
        assert!((s.coefficients[0].powi(2) - 8.0 / 9.0).abs() < 1e-8);
        let sum: f64 = s.coefficients.iter().map(|c| c * c).sum();
        assert!((sum - 1.0).abs() < 1e-12);
        assert!(s.coefficients.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn gaussian_spectrum_is_geometric() {
        for r in [0.3, 0.5, 2.0, 4.0] {
            let spec = StateSpec::gaussian(r, 1.0).unwrap();
            let mu = ((1.0 - r) / (1.0 + r)).powi(2);
            let s = schmidt_spectrum(&spec, 128).unwrap();
            for n in 0..5 {
                let q = s.coefficients[n + 1].powi(2) / s.coefficients[n].powi(2);
                assert!((q - mu).abs() < 1e-8, "r={r} n={n}: {q} vs {mu}");
            }
        }
    }

    #[test]
    fn schmidt_number_examples() {
        let (k, _) = schmidt_number_1d(&StateSpec::gaussian(1.0, 2.0).unwrap()).unwrap();
        assert!((k - 1.25).abs() < 1e-4);
        let (k, _) = schmidt_number_1d(&StateSpec::gaussian(10.0, 1.0).unwrap()).unwrap();
        assert!((k - 5.05).abs() < 1e-4, "{k}");
        assert!((k * k - 25.5025).abs() < 1e-3);
        let (k, _) = schmidt_number_1d(&StateSpec::gaussian(3.0, 3.0).unwrap()).unwrap();
        assert!((k - 1.0).abs() < 1e-8);
    }

    #[test]
    fn too_few_modes() {
        assert!(schmidt_spectrum(&StateSpec::gaussian(1.0, 2.0).unwrap(), 7).is_err());
    }
}
