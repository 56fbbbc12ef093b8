//! Numerical purity integral and SVD spectrum against the closed forms.

use gepr::closed::gem_closed;
use gepr::oracle::{gem_numeric, schmidt_number_1d};
use gepr::quadrature::ConvergenceOptions;
use gepr::{Family, StateSpec};

fn main() -> gepr::Result<()> {
    let opts = ConvergenceOptions::default();
    for family in [Family::GaussianEpr, Family::NonGaussian] {
        println!("{family}");
        for ratio in [0.05, 0.3, 1.0, 3.0, 20.0] {
            let spec = StateSpec::new(family, ratio, 1.0)?;
            let closed = gem_closed(&spec);
            let q = gem_numeric(&spec, &opts)?;
            let (_, s) = schmidt_number_1d(&spec)?;
            let svd = 2.0 * (1.0 - s.purity());
            println!(
                "  ratio {ratio:>5}: closed {closed:.10}  quadrature {:.10} (order {})  svd {svd:.10} ({} modes)",
                q.e2, q.order_used, s.modes
            );
        }
    }
    Ok(())
}
