//! Entanglement inferred from two measurable widths, checked against the
//! state it was generated from, plus the position/momentum spreads.

use gepr::closed::gem_closed;
use gepr::oracle::{antidiagonal_width, marginal_width};
use gepr::quadrature::ConvergenceOptions;
use gepr::spdc::{infer_gem_from_measurement, uncertainty_report, MeasuredWidths};
use gepr::StateSpec;

fn main() -> gepr::Result<()> {
    let opts = ConvergenceOptions::default();
    let spec = StateSpec::gaussian(0.3, 1.0)?;
    let f = antidiagonal_width(&spec, &opts)?;
    let s1 = marginal_width(&spec, &opts)?;
    let inferred = infer_gem_from_measurement(&MeasuredWidths::new(f.value, s1.value)?);
    println!("f = {:.8}, sigma1 = {:.8}", f.value, s1.value);
    println!("E^2 from widths {:.10}, closed form {:.10}", inferred.e2, gem_closed(&spec));

    // a noisy measurement with f > sigma1 is clamped
    let noisy = infer_gem_from_measurement(&MeasuredWidths::new(1.02, 1.0)?);
    println!("f/sigma1 = 1.02 -> E^2 = {} (clamped: {})", noisy.e2, noisy.clamped);

    let u = uncertainty_report(&spec)?;
    println!(
        "dx dk: {:.4} (quoted convention), {:.4} (second moments)",
        u.quoted_convention.product, u.second_moment.product
    );
    Ok(())
}
