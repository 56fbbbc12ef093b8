use thiserror::Error;

use crate::state::Family;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("{operation} has no closed form for the {family} family")]
    Unsupported {
        operation: &'static str,
        family: Family,
    },

    #[error("quadrature order {0} outside the supported range 2..=1024")]
    QuadratureOrder(usize),

    #[error("integrand is not finite at node {index} (x = {point:?})")]
    NonFiniteIntegrand { index: usize, point: Vec<f64> },

    #[error("quadrature did not converge by order {order}: last {last}, previous {previous}")]
    NotConverged {
        order: usize,
        last: f64,
        previous: f64,
    },

    #[error("eigenvalue iteration exceeded {0} steps")]
    EigenNotConverged(usize),

    #[error("Jacobi SVD did not converge within {0} sweeps")]
    SvdNotConverged(usize),

    #[error("no sign change on bracket [{lo}, {hi}] (f = {f_lo}, {f_hi})")]
    Bracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("{quantity} = {value} lies outside its admissible range")]
    OutOfRange { quantity: &'static str, value: f64 },

    #[error("profile has vanishing or negative {0}; width is undefined")]
    DegenerateProfile(&'static str),

    #[error("cannot parse length {input:?}: {reason}")]
    Unit { input: String, reason: &'static str },
}
