//! Second-order separability test for both families, and the range of
//! omega/sigma in which it misses the non-Gaussian state's entanglement.

use gepr::closed::{gem_closed, ph_value_closed};
use gepr::oracle::{ph_blind_window, ph_criterion};
use gepr::quadrature::ConvergenceOptions;
use gepr::StateSpec;

fn main() -> gepr::Result<()> {
    let opts = ConvergenceOptions::default();
    println!("gaussian: moments vs closed form");
    for ratio in [0.25, 0.8, 1.0, 2.5] {
        let s = StateSpec::gaussian(ratio, 1.0)?;
        let c = ph_criterion(&s, &opts)?;
        println!("  {ratio:>5}: {:+.10} {:+.10}", c.value, ph_value_closed(&s)?);
    }

    println!("non-gaussian");
    for omega in [0.4, 0.7, 1.0, 1.5, 2.0] {
        let s = StateSpec::non_gaussian(1.0, omega)?;
        let c = ph_criterion(&s, &opts)?;
        println!(
            "  omega/sigma {omega:>4}: value {:+.6}  passes test: {:<5}  E^2 = {:.4}",
            c.value,
            c.separable_by_second_order,
            gem_closed(&s)
        );
    }
    let w = ph_blind_window(&opts)?;
    println!("blind window: {:.4} < omega/sigma < {:.4}", w.lower, w.upper);
    Ok(())
}
