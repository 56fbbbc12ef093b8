use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::tridiagonal_eigen;

pub const MIN_ORDER: usize = 2;
pub const MAX_ORDER: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RuleKind {
    /// Weight `exp(-t^2)` on the real line.
    GaussHermite,
    /// Gauss-Legendre on (-1, 1) pulled onto the real line by
    /// `x = t / (1 - t^2)`.
    GaussLegendreMapped,
}

/// Reference nodes and weights before any affine map.
#[derive(Debug)]
struct Reference {
    nodes: Vec<f64>,
    /// Weights for the rule's own weight function (`exp(-t^2)` or 1).
    raw_weights: Vec<f64>,
    /// Weights for integrating the full function directly.
    full_weights: Vec<f64>,
}

/// A quadrature rule on the real line, already mapped to `center + scale * t`.
///
/// [`weights`](Self::weights) apply to the full integrand: the Gaussian
/// weight of the Hermite rule has been folded in, so
/// `sum_i weights[i] * f(nodes[i])` approximates the integral of `f`.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    kind: RuleKind,
    order: usize,
    scale: f64,
    center: f64,
    reference: Arc<Reference>,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

fn cache() -> &'static Mutex<HashMap<(RuleKind, usize), Arc<Reference>>> {
    static CACHE: OnceLock<Mutex<HashMap<(RuleKind, usize), Arc<Reference>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn reference(kind: RuleKind, order: usize) -> Result<Arc<Reference>> {
    if !(MIN_ORDER..=MAX_ORDER).contains(&order) {
        return Err(Error::QuadratureOrder(order));
    }
    if let Some(r) = cache().lock().unwrap().get(&(kind, order)) {
        return Ok(Arc::clone(r));
    }
    let built = Arc::new(match kind {
        RuleKind::GaussHermite => build_hermite(order)?,
        RuleKind::GaussLegendreMapped => build_legendre_mapped(order)?,
    });
    cache()
        .lock()
        .unwrap()
        .insert((kind, order), Arc::clone(&built));
    Ok(built)
}

/// Orthonormal Hermite functions at `t`, carried with a running log scale
/// so that neither `exp(-t^2/2)` nor the polynomial growth leaves the f64
/// range. Returns `(h_n, h_{n-1}, ln sum_{k<n} h_k^2)`; the first two share an
/// arbitrary common scale.
fn hermite_functions(n: usize, t: f64) -> (f64, f64, f64) {
    const BIG: f64 = 1e150;
    let mut log_scale = -0.5 * t * t - 0.25 * PI.ln();
    let mut prev = 0.0;
    let mut cur = 1.0;
    let mut sum = 1.0;
    for k in 0..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * t * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        if k + 1 < n {
            sum += cur * cur;
        }
        if cur.abs() > BIG {
            cur /= BIG;
            prev /= BIG;
            sum /= BIG * BIG;
            log_scale += BIG.ln();
        }
    }
    (cur, prev, sum.ln() + 2.0 * log_scale)
}

fn build_hermite(n: usize) -> Result<Reference> {
    let off: Vec<f64> = (1..n).map(|k| (k as f64 / 2.0).sqrt()).collect();
    let eig = tridiagonal_eigen(&vec![0.0; n], &off)?;

    // Two Newton steps on h_n polish the eigenvalues.
    let mut nodes = eig.values;
    for t in nodes.iter_mut() {
        for _ in 0..2 {
            let (hn, hn1, _) = hermite_functions(n, *t);
            let slope = (2.0 * n as f64).sqrt() * hn1 - *t * hn;
            if slope != 0.0 && slope.is_finite() {
                *t -= hn / slope;
            }
        }
    }
    for i in 0..n / 2 {
        let a = 0.5 * (nodes[n - 1 - i] - nodes[i]);
        nodes[i] = -a;
        nodes[n - 1 - i] = a;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }

    let raw_weights: Vec<f64> = (0..n)
        .map(|i| {
            let z = 0.5 * (eig.first_components[i].powi(2) + eig.first_components[n - 1 - i].powi(2));
            PI.sqrt() * z
        })
        .collect();
    // Christoffel numbers times exp(t^2): 1 / sum_k h_k(t)^2.
    let full_weights: Vec<f64> = nodes
        .iter()
        .map(|&t| (-hermite_functions(n, t.abs()).2).exp())
        .collect();
    Ok(Reference {
        nodes,
        raw_weights,
        full_weights,
    })
}

fn build_legendre_mapped(n: usize) -> Result<Reference> {
    let off: Vec<f64> = (1..n)
        .map(|k| {
            let k = k as f64;
            k / (4.0 * k * k - 1.0).sqrt()
        })
        .collect();
    let eig = tridiagonal_eigen(&vec![0.0; n], &off)?;
    let raw_weights: Vec<f64> = eig.first_components.iter().map(|z| 2.0 * z * z).collect();
    let nodes: Vec<f64> = eig.values.iter().map(|&t| t / (1.0 - t * t)).collect();
    let full_weights = eig
        .values
        .iter()
        .zip(&raw_weights)
        .map(|(&t, &w)| w * (1.0 + t * t) / (1.0 - t * t).powi(2))
        .collect();
    Ok(Reference {
        nodes,
        raw_weights,
        full_weights,
    })
}

impl QuadratureRule {
    fn build(kind: RuleKind, order: usize, scale: f64, center: f64) -> Result<Self> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::InvalidParameter {
                name: "scale",
                value: scale,
                reason: "must be finite and positive",
            });
        }
        if !center.is_finite() {
            return Err(Error::InvalidParameter {
                name: "center",
                value: center,
                reason: "must be finite",
            });
        }
        let reference = reference(kind, order)?;
        let nodes = reference.nodes.iter().map(|t| center + scale * t).collect();
        let weights = reference.full_weights.iter().map(|w| scale * w).collect();
        Ok(Self {
            kind,
            order,
            scale,
            center,
            reference,
            nodes,
            weights,
        })
    }

    /// Gauss-Hermite rule for `exp(-t^2)`, scale 1 and center 0.
    pub fn gauss_hermite(order: usize) -> Result<Self> {
        Self::build(RuleKind::GaussHermite, order, 1.0, 0.0)
    }

    pub fn gauss_legendre_mapped(order: usize) -> Result<Self> {
        Self::build(RuleKind::GaussLegendreMapped, order, 1.0, 0.0)
    }

    /// Same reference rule mapped to `center + scale * t`.
    pub fn mapped(&self, scale: f64, center: f64) -> Result<Self> {
        Self::build(self.kind, self.order, scale, center)
    }

    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Unmapped nodes `t`.
    pub fn reference_nodes(&self) -> &[f64] {
        &self.reference.nodes
    }

    /// Classical weights for the rule's own weight function (`exp(-t^2)` for
    /// Hermite). These underflow to zero at the outermost nodes of high
    /// orders; [`weights`](Self::weights) do not.
    pub fn reference_weights(&self) -> &[f64] {
        &self.reference.raw_weights
    }

    /// Full-integrand weights of the unmapped rule.
    pub(crate) fn reference_full_weights(&self) -> &[f64] {
        &self.reference.full_weights
    }
}
