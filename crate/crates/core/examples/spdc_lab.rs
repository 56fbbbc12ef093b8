//! Entanglement of down-converted photon pairs for two crystal setups, and
//! the pump width needed for a target entanglement.

use gepr::closed::percent_entanglement;
use gepr::spdc::{biphoton_gem, required_pump_width, Branch, SpdcSetup, WidthConvention};
use gepr::units::parse_length;

fn show(name: &str, setup: &SpdcSetup) -> gepr::Result<()> {
    let r = biphoton_gem(setup)?;
    println!(
        "{name}: sigma = {:.3} um, omega = {:.1} um, E^2 = {:.4}, {:.1}%",
        setup.sigma() * 1e6,
        setup.omega() * 1e6,
        r.e2.value,
        r.percent.value
    );
    Ok(())
}

fn main() -> gepr::Result<()> {
    let lp = parse_length("405nm")?;
    let ppktp = SpdcSetup::new(parse_length("10mm")?, lp, parse_length("350um")?, WidthConvention::FullWidthOmega)?;
    let bbo = SpdcSetup::new(parse_length("15.76mm")?, lp, parse_length("180um")?, WidthConvention::WaistSigmaP)?;
    show("PPKTP", &ppktp)?;
    show("BBO  ", &bbo)?;

    for target in [0.5, 1.0, 1.5, 1.9] {
        let w = required_pump_width(ppktp.crystal_length(), lp, target, Branch::OmegaAboveSigma, WidthConvention::FullWidthOmega)?;
        println!("E^2 = {target} ({:.0}%) needs omega = {:.2} um", percent_entanglement(target)?, w * 1e6);
    }
    Ok(())
}
