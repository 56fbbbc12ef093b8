//! Closed-form entanglement of both state families over a range of width
//! ratios.

use gepr::closed::{gem_closed, percent_entanglement, schmidt_number_2d};
use gepr::{Family, StateSpec};

fn main() -> gepr::Result<()> {
    println!("{:>8} {:>10} {:>10} {:>10} {:>10}", "s/O", "E2 gauss", "% gauss", "E2 ng", "% ng");
    for ratio in [0.01, 0.1, 0.5, 1.0, 2.0, 10.0, 100.0] {
        let g = StateSpec::gaussian(ratio, 1.0)?;
        let ng = StateSpec::non_gaussian(ratio, 1.0)?;
        let (eg, eng) = (gem_closed(&g), gem_closed(&ng));
        println!(
            "{ratio:>8} {eg:>10.6} {:>10.3} {eng:>10.6} {:>10.3}",
            percent_entanglement(eg)?,
            percent_entanglement(eng)?
        );
    }

    let s = StateSpec::new(Family::GaussianEpr, 10.0, 1.0)?;
    println!("\nsigma/omega = 10: K = {:.4}", schmidt_number_2d(&s)?);
    Ok(())
}
