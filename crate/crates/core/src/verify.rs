//! Self-test suite: closed forms against the numerical oracles, lab
//! examples and quadrature sanity, reported as a pass/fail table.

use std::f64::consts::PI;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::closed::{gem_closed, percent_entanglement, ph_value_closed, schmidt_number_2d};
use crate::error::Result;
use crate::oracle::{
    antidiagonal_width, gem_numeric, marginal_width, ph_blind_window, ph_criterion,
    schmidt_number_1d,
};
use crate::quadrature::{integrate_2d, ConvergenceOptions, QuadratureRule};
use crate::spdc::{biphoton_e2, infer_gem_from_measurement, MeasuredWidths, SpdcSetup, WidthConvention};
use crate::state::{Family, StateSpec};

/// Debug hooks that deliberately break one invariant.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Faults {
    /// Multiplies the non-Gaussian amplitude inside the normalization check.
    pub non_gaussian_normalization_factor: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{mark}  {:<width$}  {}", c.name, c.detail)?;
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        write!(f, "{passed}/{} checks passed", self.checks.len())
    }
}

/// Log-spaced `sigma / omega` values in `[1e-2, 1e2]`.
pub fn log_ratios(count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| 10f64.powf(-2.0 + 4.0 * i as f64 / (count - 1) as f64))
        .collect()
}

/// Ten ratios spread over `[0.1, 10]`, avoiding 1.
pub fn test_ratios() -> Vec<f64> {
    vec![0.1, 0.2, 0.35, 0.5, 0.8, 1.25, 2.0, 2.85, 5.0, 10.0]
}

fn max_over<F>(xs: &[f64], f: F) -> Result<f64>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let values = xs.par_iter().map(|&x| f(x)).collect::<Result<Vec<f64>>>()?;
    Ok(values.into_iter().fold(0.0, f64::max))
}

struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    fn record(&mut self, name: &'static str, outcome: Result<(bool, String)>) {
        let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
        self.checks.push(Check {
            name,
            passed,
            detail,
        });
    }

    fn bound(&mut self, name: &'static str, measured: Result<f64>, limit: f64) {
        self.record(
            name,
            measured.map(|m| (m < limit, format!("max deviation {m:.3e} (limit {limit:.0e})"))),
        );
    }
}

fn normalization(spec: &StateSpec, factor: f64) -> Result<f64> {
    // (u, v) = (x1 - x2, x1 + x2), Jacobian 1/2
    let u = QuadratureRule::gauss_hermite(96)?.mapped(spec.sigma() * 2f64.sqrt(), 0.0)?;
    let v = QuadratureRule::gauss_hermite(96)?.mapped(spec.omega() * 2f64.sqrt(), 0.0)?;
    let total = integrate_2d(
        |u, v| {
            let a = factor * spec.amplitude(0.5 * (u + v), 0.5 * (v - u));
            a * a
        },
        &u,
        &v,
    )?;
    Ok(0.5 * total)
}

pub fn run_checks(opts: &ConvergenceOptions, faults: &Faults) -> VerifyReport {
    let mut s = Suite { checks: Vec::new() };
    let grid = log_ratios(21);
    let ratios = test_ratios();

    s.record("quadrature order-2 rule", (|| {
        let r = QuadratureRule::gauss_hermite(2)?;
        let dn = (r.reference_nodes()[1] - 0.5f64.sqrt()).abs() + (r.reference_nodes()[0] + 0.5f64.sqrt()).abs();
        let dw = r.reference_weights().iter().map(|w| (w - PI.sqrt() / 2.0).abs()).sum::<f64>();
        Ok((dn < 1e-12 && dw < 1e-12, format!("node error {dn:.1e}, weight error {dw:.1e}")))
    })());

    s.bound(
        "normalization gaussian",
        max_over(&ratios, |r| Ok((normalization(&StateSpec::gaussian(r, 1.0)?, 1.0)? - 1.0).abs())),
        1e-8,
    );
    let factor = faults.non_gaussian_normalization_factor.unwrap_or(1.0);
    s.bound(
        "normalization nongaussian",
        max_over(&ratios, |r| Ok((normalization(&StateSpec::non_gaussian(r, 1.0)?, factor)? - 1.0).abs())),
        1e-8,
    );

    s.bound(
        "gradient vs finite difference",
        (|| {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            let mut worst = 0.0f64;
            for k in 0..100 {
                let family = if k % 2 == 0 { Family::GaussianEpr } else { Family::NonGaussian };
                let spec = StateSpec::new(family, rng.gen_range(0.3..3.0), rng.gen_range(0.3..3.0))?;
                let (x1, x2) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
                let h = 1e-5;
                let fd1 = (spec.amplitude(x1 + h, x2) - spec.amplitude(x1 - h, x2)) / (2.0 * h);
                let fd2 = (spec.amplitude(x1, x2 + h) - spec.amplitude(x1, x2 - h)) / (2.0 * h);
                let (d1, d2) = spec.amplitude_gradient(x1, x2);
                let scale = d1.abs().max(d2.abs()).max(spec.normalization() * 1e-3);
                worst = worst.max((d1 - fd1).abs().max((d2 - fd2).abs()) / scale);
            }
            Ok(worst)
        })(),
        1e-6,
    );

    for (name, family) in [
        ("gem oracle vs closed gaussian", Family::GaussianEpr),
        ("gem oracle vs closed nongaussian", Family::NonGaussian),
    ] {
        s.bound(
            name,
            max_over(&grid, |r| {
                let spec = StateSpec::new(family, r, 1.0)?;
                Ok((gem_numeric(&spec, opts)?.e2 - gem_closed(&spec)).abs())
            }),
            1e-6,
        );
    }

    s.bound(
        "schmidt purity vs quadrature",
        max_over(&grid, |r| {
            let mut worst = 0.0f64;
            for family in [Family::GaussianEpr, Family::NonGaussian] {
                let spec = StateSpec::new(family, r, 1.0)?;
                let (_, spectrum) = schmidt_number_1d(&spec)?;
                let e2 = 2.0 * (1.0 - spectrum.purity());
                worst = worst.max((e2 - gem_numeric(&spec, opts)?.e2).abs());
            }
            Ok(worst)
        }),
        1e-5,
    );

    s.record("schmidt number closed form", (|| {
        let k1 = |r: f64| schmidt_number_1d(&StateSpec::gaussian(r, 1.0)?).map(|(k, _)| k);
        let d1 = max_over(&ratios, |r| Ok((k1(r)? - 0.5 * (r + 1.0 / r)).abs()))?;
        let d2 = max_over(&ratios, |r| {
            Ok((k1(r)?.powi(2) - schmidt_number_2d(&StateSpec::gaussian(r, 1.0)?)?).abs())
        })?;
        Ok((d1 < 1e-4 && d2 < 1e-3, format!("K1 deviation {d1:.3e}, K1^2 deviation {d2:.3e}")))
    })());

    s.bound(
        "ph value gaussian",
        max_over(&ratios, |r| {
            let spec = StateSpec::gaussian(r, 1.0)?;
            Ok((ph_criterion(&spec, opts)?.value - ph_value_closed(&spec)?).abs())
        }),
        1e-6,
    );

    s.record("ph blind window nongaussian", (|| {
        let w = ph_blind_window(opts)?;
        let ok = (w.lower - 0.577).abs() < 0.01 && (w.upper - 1.732).abs() < 0.01;
        Ok((ok, format!("lower {:.4}, upper {:.4}", w.lower, w.upper)))
    })());

    s.bound(
        "measurement closure",
        max_over(&ratios, |r| {
            let spec = StateSpec::gaussian(r, 1.0)?;
            let f = antidiagonal_width(&spec, opts)?.value;
            let s1 = marginal_width(&spec, opts)?.value;
            let e2 = infer_gem_from_measurement(&MeasuredWidths::new(f, s1)?).e2;
            Ok((e2 - gem_closed(&spec)).abs())
        }),
        1e-9,
    );

    for (name, l, width, convention, e2_ref, e2_tol, pct_ref) in [
        ("lab example ppktp", 10e-3, 350e-6, WidthConvention::FullWidthOmega, 1.832, 0.002, 91.6),
        ("lab example bbo", 15.76e-3, 180e-6, WidthConvention::WaistSigmaP, 1.796, 0.001, 89.8),
    ] {
        s.record(name, (|| {
            let e2 = biphoton_e2(&SpdcSetup::new(l, 405e-9, width, convention)?);
            let pct = percent_entanglement(e2)?;
            let ok = (e2 - e2_ref).abs() < e2_tol && (pct - pct_ref).abs() < 0.1;
            Ok((ok, format!("E^2 {e2:.4}, {pct:.2}%")))
        })());
    }

    s.record("ratio ten gives eighty percent", (|| {
        let pct = percent_entanglement(gem_closed(&StateSpec::gaussian(10.0, 1.0)?))?;
        Ok(((pct - 80.2).abs() < 0.1, format!("{pct:.3}%")))
    })());

    s.record("nongaussian at equal widths", (|| {
        let spec = StateSpec::non_gaussian(1.0, 1.0)?;
        let closed = gem_closed(&spec);
        let numeric = gem_numeric(&spec, opts)?.e2;
        Ok((closed == 1.0 && (numeric - 1.0).abs() < 1e-6, format!("closed {closed}, oracle {numeric:.9}")))
    })());

    s.record("maximal entanglement limits", (|| {
        let lo = gem_closed(&StateSpec::gaussian(1e-6, 1.0)?);
        let hi = gem_closed(&StateSpec::gaussian(1e6, 1.0)?);
        Ok((lo >= 2.0 - 1e-5 && hi >= 2.0 - 1e-5, format!("{lo:.8}, {hi:.8}")))
    })());

    s.bound(
        "exchange symmetry",
        max_over(&grid, |r| {
            let mut worst = 0.0f64;
            for family in [Family::GaussianEpr, Family::NonGaussian] {
                let spec = StateSpec::new(family, r, 1.0)?;
                worst = worst.max((gem_closed(&spec) - gem_closed(&spec.swapped())).abs());
            }
            Ok(worst)
        }),
        1e-12,
    );

    VerifyReport { checks: s.checks }
}
