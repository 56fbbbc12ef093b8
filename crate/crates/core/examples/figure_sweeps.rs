//! Writes the ratio, pump-width and two-family sweeps as CSV files into the
//! directory given as the first argument (default: current directory).

use std::path::PathBuf;

use gepr::quadrature::ConvergenceOptions;
use gepr::sweep::{run, Axis, CorrelationSource, Quantity, Spacing, SweepRequest};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    let opts = ConvergenceOptions::default();
    let ratios = Axis::new(0.01, 100.0, 201, Spacing::Log)?;

    let gaussian = run(&SweepRequest::new(Quantity::GemGaussian, ratios), &opts)?;
    let both = run(&SweepRequest::new(Quantity::GemBoth, ratios), &opts)?;
    let mut pump = SweepRequest::new(Quantity::SpdcVsPumpwidth, Axis::new(1e-6, 1e-3, 301, Spacing::Log)?);
    pump.correlation = Some(CorrelationSource::Sigma(1e-5));
    let pump = run(&pump, &opts)?;

    for (name, table) in [("gem_gaussian.csv", &gaussian), ("gem_both.csv", &both), ("spdc_vs_pumpwidth.csv", &pump)] {
        let path = dir.join(name);
        std::fs::write(&path, table.to_csv())?;
        println!("{} rows -> {}", table.rows.len(), path.display());
    }
    Ok(())
}
