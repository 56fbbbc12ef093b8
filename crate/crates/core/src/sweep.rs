//! Parameter sweeps rendered as CSV tables.
//!
//! Points are evaluated in parallel; rows are always emitted in axis order.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed::{gem_closed, percent_entanglement, ph_value_closed};
use crate::error::{Error, Result};
use crate::oracle::{ph_criterion, PH_SLACK};
use crate::quadrature::ConvergenceOptions;
use crate::spdc::{biphoton_e2, SpdcSetup, WidthConvention};
use crate::state::{Family, StateSpec};

/// Bounds of the `omega / sigma` band shaded for the non-Gaussian state.
/// Plot annotation only; the computed window comes from the moment oracle.
pub const ANNOTATION_WINDOW: (f64, f64) = (0.63, 1.58);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    GemGaussian,
    GemNongaussian,
    GemBoth,
    SpdcVsPumpwidth,
    PhValue,
    SurfaceGem,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Axis {
    min: f64,
    max: f64,
    count: usize,
    spacing: Spacing,
}

impl Axis {
    pub fn new(min: f64, max: f64, count: usize, spacing: Spacing) -> Result<Self> {
        if count < 2 {
            return Err(Error::InvalidParameter {
                name: "count",
                value: count as f64,
                reason: "needs at least 2 points",
            });
        }
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(Error::InvalidParameter {
                name: "min",
                value: min,
                reason: "axis needs finite min < max",
            });
        }
        if spacing == Spacing::Log && min <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "min",
                value: min,
                reason: "log spacing needs min > 0",
            });
        }
        Ok(Self {
            min,
            max,
            count,
            spacing,
        })
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn points(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        let (a, b) = match self.spacing {
            Spacing::Linear => (self.min, self.max),
            Spacing::Log => (self.min.log10(), self.max.log10()),
        };
        (0..self.count)
            .map(|i| {
                if i == 0 {
                    return self.min;
                }
                if i == self.count - 1 {
                    return self.max;
                }
                let t = a + (b - a) * (i as f64 / last);
                match self.spacing {
                    Spacing::Linear => t,
                    Spacing::Log => 10f64.powf(t),
                }
            })
            .collect()
    }
}

/// Where the correlation width of an SPDC sweep comes from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum CorrelationSource {
    Crystal {
        crystal_length: f64,
        pump_wavelength: f64,
    },
    /// `sqrt(L lambda_p / 6 pi)` given directly, in meters.
    Sigma(f64),
}

impl CorrelationSource {
    /// A `(L, lambda_p)` pair reproducing this correlation width.
    fn crystal(self) -> (f64, f64) {
        match self {
            CorrelationSource::Crystal {
                crystal_length,
                pump_wavelength,
            } => (crystal_length, pump_wavelength),
            CorrelationSource::Sigma(sigma) => (6.0 * std::f64::consts::PI * sigma * sigma, 1.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRequest {
    pub quantity: Quantity,
    /// Width ratio, pump width or (for surfaces) sigma.
    pub axis: Axis,
    /// Omega axis of a surface sweep.
    pub second_axis: Option<Axis>,
    /// Family for `ph_value` and `surface_gem`.
    pub family: Family,
    pub correlation: Option<CorrelationSource>,
    pub convention: WidthConvention,
}

impl SweepRequest {
    pub fn new(quantity: Quantity, axis: Axis) -> Self {
        Self {
            quantity,
            axis,
            second_axis: None,
            family: Family::GaussianEpr,
            correlation: None,
            convention: WidthConvention::FullWidthOmega,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Number(f64),
    Flag(bool),
    Text(&'static str),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.header.iter().position(|h| *h == name)?;
        self.rows
            .iter()
            .map(|r| match r[j] {
                Cell::Number(v) => Some(v),
                _ => None,
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            for (j, cell) in row.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                match cell {
                    Cell::Number(v) => out.push_str(&format_significant(*v)),
                    Cell::Flag(b) => out.push_str(if *b { "true" } else { "false" }),
                    Cell::Text(t) => out.push_str(t),
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Nine significant digits, fixed notation for moderate exponents, trailing
/// zeros trimmed.
pub fn format_significant(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{v:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..9).contains(&exp) {
        let decimals = (8 - exp) as usize;
        let mut s = String::new();
        write!(s, "{v:.decimals$}").unwrap();
        trim_zeros(&s)
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

fn percent(e2: f64) -> Result<f64> {
    percent_entanglement(e2)
}

fn ratio_rows(
    points: &[f64],
    row: impl Fn(f64) -> Result<Vec<Cell>> + Sync,
) -> Result<Vec<Vec<Cell>>> {
    points.par_iter().map(|&x| row(x)).collect()
}

fn gem_at_ratio(family: Family, sigma_over_omega: f64) -> Result<f64> {
    Ok(gem_closed(&StateSpec::new(family, sigma_over_omega, 1.0)?))
}

pub fn run(req: &SweepRequest, opts: &ConvergenceOptions) -> Result<Table> {
    let xs = req.axis.points();
    use Cell::*;
    let (header, rows) = match req.quantity {
        Quantity::GemGaussian | Quantity::GemNongaussian => {
            let family = if req.quantity == Quantity::GemGaussian {
                Family::GaussianEpr
            } else {
                Family::NonGaussian
            };
            let rows = ratio_rows(&xs, |r| {
                let e2 = gem_at_ratio(family, r)?;
                Ok(vec![Number(r), Number(e2), Number(percent(e2)?)])
            })?;
            (vec!["ratio_sigma_over_omega", "e2", "percent"], rows)
        }
        Quantity::GemBoth => {
            let rows = ratio_rows(&xs, |q| {
                // q is omega / sigma
                let g = gem_at_ratio(Family::GaussianEpr, 1.0 / q)?;
                let ng = gem_at_ratio(Family::NonGaussian, 1.0 / q)?;
                let inside = q > ANNOTATION_WINDOW.0 && q < ANNOTATION_WINDOW.1;
                Ok(vec![
                    Number(q),
                    Number(percent(g)?),
                    Number(percent(ng)?),
                    Flag(inside),
                    Text("annotation_only"),
                    Number(g),
                    Number(ng),
                ])
            })?;
            (
                vec![
                    "ratio_omega_over_sigma",
                    "percent_gaussian",
                    "percent_nongaussian",
                    "in_nongaussian_window",
                    "window_source",
                    "e2_gaussian",
                    "e2_nongaussian",
                ],
                rows,
            )
        }
        Quantity::SpdcVsPumpwidth => {
            let source = req.correlation.ok_or(Error::InvalidParameter {
                name: "correlation",
                value: f64::NAN,
                reason: "spdc sweep needs L and lambda_p, or sigma",
            })?;
            let (l, lp) = source.crystal();
            let rows = ratio_rows(&xs, |w| {
                let setup = SpdcSetup::new(l, lp, w, req.convention)?;
                let e2 = biphoton_e2(&setup);
                Ok(vec![Number(w), Number(setup.omega()), Number(e2), Number(percent(e2)?)])
            })?;
            (vec!["pump_width_m", "omega_m", "e2", "percent"], rows)
        }
        Quantity::PhValue => {
            let family = req.family;
            let rows = ratio_rows(&xs, |r| {
                let spec = StateSpec::new(family, r, 1.0)?;
                let (value, source) = match family {
                    Family::GaussianEpr => (ph_value_closed(&spec)?, "closed-form"),
                    Family::NonGaussian => (ph_criterion(&spec, opts)?.value, "quadrature"),
                };
                Ok(vec![Number(r), Number(value), Flag(value >= -PH_SLACK), Text(source)])
            })?;
            (
                vec!["ratio_sigma_over_omega", "ph_value", "separable_by_second_order", "provenance"],
                rows,
            )
        }
        Quantity::SurfaceGem => {
            let omegas = req
                .second_axis
                .ok_or(Error::InvalidParameter {
                    name: "second_axis",
                    value: f64::NAN,
                    reason: "surface sweep needs an omega axis",
                })?
                .points();
            let grid: Vec<(f64, f64)> = xs
                .iter()
                .flat_map(|&s| omegas.iter().map(move |&o| (s, o)))
                .collect();
            let family = req.family;
            let rows = grid
                .par_iter()
                .map(|&(s, o)| {
                    let e2 = gem_closed(&StateSpec::new(family, s, o)?);
                    Ok(vec![Number(s), Number(o), Number(percent(e2)?), Number(e2)])
                })
                .collect::<Result<Vec<_>>>()?;
            (vec!["sigma", "omega", "percent", "e2"], rows)
        }
    };
    Ok(Table { header, rows })
}
