//! Numerical oracles that reproduce the closed forms from first principles:
//! reduced-kernel purity by quadrature, the Schmidt spectrum by SVD, phase
//! space moments, and the widths used for measurement-side inference.

mod kernel;
mod moments;
mod schmidt;
mod widths;

pub use kernel::{cross_spectral_density, gem_numeric, purity_at_order, GemEstimate, ReducedKernel};
pub use moments::{
    moments, ph_blind_window, ph_criterion, BlindWindow, Moments, PhCriterion, PH_SLACK,
    WINDOW_ROOT_TOLERANCE,
};
pub use schmidt::{
    schmidt_number_1d, schmidt_spectrum, schmidt_spectrum_converged, SchmidtSpectrum,
    TAIL_FRACTION, TAIL_TOLERANCE,
};
pub use widths::{antidiagonal_width, marginal_width, Width};
