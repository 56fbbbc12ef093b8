//! Schmidt coefficients of a Gaussian state and the two Schmidt-number
//! conventions.

use gepr::closed::schmidt_number_2d;
use gepr::oracle::schmidt_number_1d;
use gepr::StateSpec;

fn main() -> gepr::Result<()> {
    let spec = StateSpec::gaussian(1.0, 4.0)?;
    let (k1, s) = schmidt_number_1d(&spec)?;
    for (n, c) in s.coefficients.iter().take(8).enumerate() {
        println!("c_{n} = {c:.8}   c_n^2 = {:.8}", c * c);
    }
    let r = spec.ratio().sigma_over_omega();
    println!("\nK1 (one axis)      = {k1:.8}");
    println!("(r + 1/r) / 2      = {:.8}", 0.5 * (r + 1.0 / r));
    println!("K1^2               = {:.8}", k1 * k1);
    println!("(r + 1/r)^2 / 4    = {:.8}", schmidt_number_2d(&spec)?);
    println!("grid {} modes, missing mass {:.1e}", s.modes, s.truncation_error);
    Ok(())
}
