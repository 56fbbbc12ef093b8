use serde::Serialize;

use super::rule::{QuadratureRule, MAX_ORDER};
use crate::error::{Error, Result};

/// `sum_i w_i f(x_i)` in ascending node order.
pub fn integrate_1d<F: Fn(f64) -> f64>(f: F, rule: &QuadratureRule) -> Result<f64> {
    let mut total = 0.0;
    for (i, (&x, &w)) in rule.nodes().iter().zip(rule.weights()).enumerate() {
        let v = f(x);
        if !v.is_finite() {
            return Err(Error::NonFiniteIntegrand {
                index: i,
                point: vec![x],
            });
        }
        total += w * v;
    }
    Ok(total)
}

/// Tensor-product rule; the outer loop runs over `rule_a`.
pub fn integrate_2d<F: Fn(f64, f64) -> f64>(
    f: F,
    rule_a: &QuadratureRule,
    rule_b: &QuadratureRule,
) -> Result<f64> {
    let nb = rule_b.order();
    let mut total = 0.0;
    for (i, (&a, &wa)) in rule_a.nodes().iter().zip(rule_a.weights()).enumerate() {
        let mut row = 0.0;
        for (j, (&b, &wb)) in rule_b.nodes().iter().zip(rule_b.weights()).enumerate() {
            let v = f(a, b);
            if !v.is_finite() {
                return Err(Error::NonFiniteIntegrand {
                    index: i * nb + j,
                    point: vec![a, b],
                });
            }
            row += wb * v;
        }
        total += wa * row;
    }
    Ok(total)
}

/// Integrates `f` with the unmapped nodes of `rule` moved to
/// `center + scale * t`, without allocating a mapped rule.
pub(crate) fn integrate_affine<F: Fn(f64) -> f64>(
    f: F,
    rule: &QuadratureRule,
    center: f64,
    scale: f64,
) -> Result<f64> {
    let mut total = 0.0;
    for (i, (&t, &w)) in rule
        .reference_nodes()
        .iter()
        .zip(rule.reference_full_weights())
        .enumerate()
    {
        let x = center + scale * t;
        let v = f(x);
        if !v.is_finite() {
            return Err(Error::NonFiniteIntegrand {
                index: i,
                point: vec![x],
            });
        }
        total += w * v;
    }
    Ok(total * scale)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceOptions {
    pub start_order: usize,
    pub tolerance: f64,
    pub max_order: usize,
}

impl Default for ConvergenceOptions {
    fn default() -> Self {
        Self {
            start_order: 64,
            tolerance: 1e-9,
            max_order: MAX_ORDER,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Converged<T> {
    pub value: T,
    pub order_used: usize,
    /// Largest change between the last two orders.
    pub delta: f64,
}

fn settled(prev: f64, cur: f64, tol: f64) -> bool {
    let d = (cur - prev).abs();
    d < tol || (cur.abs() > 1.0 && d / cur.abs() < tol)
}

/// Doubles the order from `opts.start_order` until every component moves by
/// less than the tolerance (relative for components above 1 in magnitude).
pub fn converge_vec<F>(mut integral: F, opts: &ConvergenceOptions) -> Result<Converged<Vec<f64>>>
where
    F: FnMut(usize) -> Result<Vec<f64>>,
{
    if opts.start_order < 16 {
        return Err(Error::InvalidParameter {
            name: "start_order",
            value: opts.start_order as f64,
            reason: "must be at least 16",
        });
    }
    if !(opts.tolerance > 0.0) {
        return Err(Error::InvalidParameter {
            name: "tolerance",
            value: opts.tolerance,
            reason: "must be positive",
        });
    }
    let cap = opts.max_order.min(MAX_ORDER);
    let mut order = opts.start_order;
    let mut prev = integral(order)?;
    loop {
        let next = order * 2;
        if next > cap {
            let (last, previous) = prev.first().map_or((f64::NAN, f64::NAN), |&v| (v, v));
            return Err(Error::NotConverged {
                order,
                last,
                previous,
            });
        }
        let cur = integral(next)?;
        let delta = prev
            .iter()
            .zip(&cur)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if prev
            .iter()
            .zip(&cur)
            .all(|(&a, &b)| settled(a, b, opts.tolerance))
        {
            return Ok(Converged {
                value: cur,
                order_used: next,
                delta,
            });
        }
        if next * 2 > cap {
            let worst = prev
                .iter()
                .zip(&cur)
                .position(|(&a, &b)| !settled(a, b, opts.tolerance))
                .unwrap_or(0);
            return Err(Error::NotConverged {
                order: next,
                last: cur[worst],
                previous: prev[worst],
            });
        }
        prev = cur;
        order = next;
    }
}

pub fn converge<F>(mut integral: F, opts: &ConvergenceOptions) -> Result<Converged<f64>>
where
    F: FnMut(usize) -> Result<f64>,
{
    let c = converge_vec(|n| integral(n).map(|v| vec![v]), opts)?;
    Ok(Converged {
        value: c.value[0],
        order_used: c.order_used,
        delta: c.delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn moment_k2_at_order_16() {
        let r = QuadratureRule::gauss_hermite(16).unwrap();
        let q = integrate_1d(|t| t * t * (-t * t).exp(), &r).unwrap();
        assert!((q - PI.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn weight_sum_is_sqrt_pi() {
        for n in [2, 9, 64, 513] {
            let r = QuadratureRule::gauss_hermite(n).unwrap();
            let s: f64 = r.reference_weights().iter().sum();
            assert!((s - PI.sqrt()).abs() < 1e-12, "n={n}: {s}");
        }
    }

    #[test]
    fn non_finite_integrand_names_the_node() {
        let r = QuadratureRule::gauss_hermite(4).unwrap();
        let err = integrate_1d(|x| if x > 1.0 { f64::NAN } else { 0.0 }, &r).unwrap_err();
        assert!(matches!(err, Error::NonFiniteIntegrand { index: 3, .. }));
        let err = integrate_2d(|_, b| 1.0 / (b - r.nodes()[0]), &r, &r).unwrap_err();
        assert!(matches!(err, Error::NonFiniteIntegrand { index: 0, .. }));
    }

    #[test]
    fn affine_matches_mapped_rule() {
        let r = QuadratureRule::gauss_hermite(40).unwrap();
        let f = |x: f64| (x - 0.3).powi(2) * (-(x - 0.3).powi(2) / 0.5).exp();
        let a = integrate_affine(f, &r, 0.3, 0.5f64.sqrt()).unwrap();
        let b = integrate_1d(f, &r.mapped(0.5f64.sqrt(), 0.3).unwrap()).unwrap();
        assert!((a - b).abs() < 1e-15);
    }

    #[test]
    fn converge_reports_order_and_delta() {
        let opts = ConvergenceOptions::default();
        let c = converge(
            |n| {
                let r = QuadratureRule::gauss_hermite(n)?.mapped(2.0, 0.0)?;
                integrate_1d(|x| (-x * x / 4.0).exp(), &r)
            },
            &opts,
        )
        .unwrap();
        assert_eq!(c.order_used, 128);
        assert!((c.value - 2.0 * PI.sqrt()).abs() < 1e-12);
        assert!(c.delta < 1e-9);
    }

    #[test]
    fn converge_fails_at_cap() {
        let opts = ConvergenceOptions {
            start_order: 16,
            tolerance: 1e-9,
            max_order: 64,
        };
        // |x| has a kink; Gauss-Hermite converges only algebraically.
        let err = converge(
            |n| integrate_1d(|x| x.abs() * (-x * x).exp(), &QuadratureRule::gauss_hermite(n)?),
            &opts,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotConverged { order: 64, .. }));
    }

    #[test]
    fn start_order_precondition() {
        let opts = ConvergenceOptions {
            start_order: 8,
            ..Default::default()
        };
        assert!(converge(|_| Ok(1.0), &opts).is_err());
    }
}
