use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use gepr::closed::{gem_closed, percent_entanglement, ph_value_closed, schmidt_number_2d, widths_closed};
use gepr::oracle::{
    antidiagonal_width, marginal_width, ph_blind_window, ph_criterion, schmidt_spectrum,
    schmidt_spectrum_converged,
};
use gepr::quadrature::{ConvergenceOptions, MAX_ORDER};
use gepr::report::{EntanglementReport, Labeled};
use gepr::spdc::{
    biphoton_gem, infer_gem_from_measurement, map_to_state, required_pump_width, uncertainty_report,
    Branch, MeasuredWidths, SpdcSetup, WidthConvention,
};
use gepr::sweep::{self, Axis, CorrelationSource, Quantity, Spacing, SweepRequest};
use gepr::units::{parse_length, parse_width};
use gepr::verify::{run_checks, Faults};
use gepr::{Error, Family, StateSpec};

#[derive(Parser)]
#[command(name = "gepr", version, about = "Entanglement of generalized EPR states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Convergence tolerance for quadrature oracles.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Largest quadrature order (or SVD grid size) the oracles may use.
    #[arg(long, global = true)]
    max_order: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Entanglement report for one state.
    Gem {
        #[command(flatten)]
        state: StateArgs,
        /// Also evaluate the purity integral numerically.
        #[arg(long)]
        oracle: bool,
    },
    /// Biphoton entanglement from crystal and pump parameters.
    Spdc(SpdcArgs),
    /// Parameter sweep as CSV.
    Sweep(SweepArgs),
    /// Run the invariant suite.
    Verify {
        /// Perturb the non-Gaussian normalization by 1%.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Schmidt spectrum from the SVD oracle.
    Schmidt {
        #[command(flatten)]
        state: StateArgs,
        /// Fixed grid size instead of the adaptive one.
        #[arg(long)]
        modes: Option<usize>,
        /// Number of leading coefficients to print.
        #[arg(long, default_value_t = 10)]
        show: usize,
    },
    /// Second-order separability value.
    Ph {
        #[command(flatten)]
        state: StateArgs,
        /// Report the non-Gaussian blind window instead.
        #[arg(long, conflicts_with_all = ["sigma", "omega"])]
        window: bool,
    },
    /// Marginal and anti-diagonal widths, or E^2 from measured widths.
    Widths {
        #[arg(long, requires = "omega")]
        sigma: Option<String>,
        #[arg(long, requires = "sigma")]
        omega: Option<String>,
        /// Measured anti-diagonal width.
        #[arg(long, requires = "sigma1", conflicts_with = "sigma")]
        f: Option<String>,
        /// Measured beam width.
        #[arg(long, requires = "f")]
        sigma1: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Gaussian,
    Nongaussian,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Gaussian => Family::GaussianEpr,
            FamilyArg::Nongaussian => Family::NonGaussian,
        }
    }
}

#[derive(Args)]
struct StateArgs {
    #[arg(long, value_enum, default_value = "gaussian")]
    family: FamilyArg,
    /// Plain number or length with unit (nm, um, mm, m).
    #[arg(long)]
    sigma: Option<String>,
    #[arg(long)]
    omega: Option<String>,
}

impl StateArgs {
    fn spec(&self) -> Result<StateSpec, Failure> {
        let (Some(s), Some(o)) = (&self.sigma, &self.omega) else {
            return Err(Failure::usage("--sigma and --omega are required"));
        };
        Ok(StateSpec::new(self.family.into(), parse_width(s)?, parse_width(o)?)?)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Omega,
    SigmaP,
}

impl From<ConventionArg> for WidthConvention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Omega => WidthConvention::FullWidthOmega,
            ConventionArg::SigmaP => WidthConvention::WaistSigmaP,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveArg {
    PumpWidth,
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchArg {
    Above,
    Below,
}

#[derive(Args)]
struct SpdcArgs {
    /// Crystal length with unit.
    #[arg(long = "L")]
    l: String,
    /// Pump wavelength with unit.
    #[arg(long)]
    lambda_p: String,
    /// Pump width with unit, read according to --width-convention.
    #[arg(long, required_unless_present = "solve")]
    pump_width: Option<String>,
    #[arg(long, value_enum)]
    width_convention: ConventionArg,
    #[arg(long, requires = "target_e2")]
    solve: Option<SolveArg>,
    #[arg(long, requires = "solve")]
    target_e2: Option<f64>,
    /// Which side of the disentangled point to solve on.
    #[arg(long, value_enum, default_value = "above")]
    branch: BranchArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum QuantityArg {
    GemGaussian,
    GemNongaussian,
    GemBoth,
    SpdcVsPumpwidth,
    PhValue,
    SurfaceGem,
}

impl From<QuantityArg> for Quantity {
    fn from(q: QuantityArg) -> Self {
        match q {
            QuantityArg::GemGaussian => Quantity::GemGaussian,
            QuantityArg::GemNongaussian => Quantity::GemNongaussian,
            QuantityArg::GemBoth => Quantity::GemBoth,
            QuantityArg::SpdcVsPumpwidth => Quantity::SpdcVsPumpwidth,
            QuantityArg::PhValue => Quantity::PhValue,
            QuantityArg::SurfaceGem => Quantity::SurfaceGem,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SpacingArg {
    Linear,
    Log,
}

impl From<SpacingArg> for Spacing {
    fn from(s: SpacingArg) -> Self {
        match s {
            SpacingArg::Linear => Spacing::Linear,
            SpacingArg::Log => Spacing::Log,
        }
    }
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    quantity: QuantityArg,
    /// Axis start: a ratio, a pump width with unit, or sigma for surfaces.
    #[arg(long)]
    min: String,
    #[arg(long)]
    max: String,
    #[arg(long, default_value_t = 201)]
    count: usize,
    #[arg(long, value_enum, default_value = "log")]
    spacing: SpacingArg,
    /// Omega axis of a surface sweep.
    #[arg(long)]
    omega_min: Option<String>,
    #[arg(long)]
    omega_max: Option<String>,
    #[arg(long, default_value_t = 51)]
    omega_count: usize,
    #[arg(long, value_enum, default_value = "log")]
    omega_spacing: SpacingArg,
    #[arg(long, value_enum, default_value = "gaussian")]
    family: FamilyArg,
    /// Crystal length for spdc sweeps.
    #[arg(long = "L", requires = "lambda_p", conflicts_with = "sigma")]
    l: Option<String>,
    #[arg(long, requires = "l")]
    lambda_p: Option<String>,
    /// Correlation width sqrt(L lambda_p / 6 pi) for spdc sweeps.
    #[arg(long)]
    sigma: Option<String>,
    #[arg(long, value_enum, default_value = "omega")]
    width_convention: ConventionArg,
}

enum Failure {
    Usage(String),
    Compute(String),
    Io(String),
    Verify { table: String, failed: String },
}

impl Failure {
    fn usage(msg: &str) -> Self {
        Failure::Usage(msg.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter { .. }
            | Error::Unit { .. }
            | Error::Unsupported { .. }
            | Error::QuadratureOrder(_)
            | Error::OutOfRange { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

fn options(cli: &Cli) -> Result<ConvergenceOptions, Failure> {
    let mut opts = ConvergenceOptions::default();
    if let Some(t) = cli.tolerance {
        if !(t.is_finite() && t > 0.0) {
            return Err(Failure::usage("--tolerance must be positive"));
        }
        opts.tolerance = t;
    }
    if let Some(m) = cli.max_order {
        if !(opts.start_order..=MAX_ORDER).contains(&m) {
            return Err(Failure::Usage(format!(
                "--max-order must lie in {}..={MAX_ORDER}",
                opts.start_order
            )));
        }
        opts.max_order = m;
    }
    Ok(opts)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn gem(state: &StateArgs, oracle: bool, opts: &ConvergenceOptions) -> Result<String, Failure> {
    let spec = state.spec()?;
    let mut report = EntanglementReport::closed_form(&spec)?;
    report.add_schmidt(&spec)?;
    report.add_ph_oracle(&spec, opts)?;
    if oracle {
        report.add_gem_oracle(&spec, opts)?;
    }
    Ok(to_json(&report))
}

fn spdc(args: &SpdcArgs) -> Result<String, Failure> {
    let l = parse_length(&args.l)?;
    let lp = parse_length(&args.lambda_p)?;
    let convention: WidthConvention = args.width_convention.into();
    if args.solve.is_some() {
        let target = args.target_e2.expect("clap enforces --target-e2");
        let branch = match args.branch {
            BranchArg::Above => Branch::OmegaAboveSigma,
            BranchArg::Below => Branch::OmegaBelowSigma,
        };
        let width = required_pump_width(l, lp, target, branch, convention)?;
        return Ok(to_json(&json!({
            "crystal_length_m": l,
            "pump_wavelength_m": lp,
            "target_e2": target,
            "branch": branch,
            "convention": convention,
            "pump_width_m": Labeled::closed(width),
        })));
    }
    let width = parse_length(args.pump_width.as_deref().expect("clap enforces --pump-width"))?;
    let setup = SpdcSetup::new(l, lp, width, convention)?;
    let spec = map_to_state(&setup);
    let mut report = biphoton_gem(&setup)?;
    report.add_schmidt(&spec)?;
    Ok(to_json(&json!({
        "setup": setup,
        "sigma_m": setup.sigma(),
        "omega_m": setup.omega(),
        "report": report,
        "uncertainty": uncertainty_report(&spec)?,
    })))
}

fn sweep_cmd(args: &SweepArgs, opts: &ConvergenceOptions) -> Result<String, Failure> {
    let quantity: Quantity = args.quantity.into();
    let axis = Axis::new(
        parse_width(&args.min)?,
        parse_width(&args.max)?,
        args.count,
        args.spacing.into(),
    )?;
    let mut req = SweepRequest::new(quantity, axis);
    req.family = args.family.into();
    req.convention = args.width_convention.into();
    if quantity == Quantity::SurfaceGem {
        let (Some(lo), Some(hi)) = (&args.omega_min, &args.omega_max) else {
            return Err(Failure::usage("surface_gem needs --omega-min and --omega-max"));
        };
        req.second_axis = Some(Axis::new(
            parse_width(lo)?,
            parse_width(hi)?,
            args.omega_count,
            args.omega_spacing.into(),
        )?);
    }
    if quantity == Quantity::SpdcVsPumpwidth {
        req.correlation = Some(match (&args.l, &args.lambda_p, &args.sigma) {
            (Some(l), Some(lp), _) => CorrelationSource::Crystal {
                crystal_length: parse_length(l)?,
                pump_wavelength: parse_length(lp)?,
            },
            (_, _, Some(s)) => CorrelationSource::Sigma(parse_length(s)?),
            _ => return Err(Failure::usage("spdc_vs_pumpwidth needs --L and --lambda-p, or --sigma")),
        });
    }
    Ok(sweep::run(&req, opts)?.to_csv())
}

fn verify(inject_fault: bool, opts: &ConvergenceOptions) -> Result<String, Failure> {
    let faults = Faults {
        non_gaussian_normalization_factor: inject_fault.then_some(1.01),
    };
    let report = run_checks(opts, &faults);
    let table = format!("{report}\n");
    if report.all_passed() {
        Ok(table)
    } else {
        let names: Vec<&str> = report.failures().map(|c| c.name).collect();
        Err(Failure::Verify {
            table,
            failed: names.join(", "),
        })
    }
}

fn schmidt(state: &StateArgs, modes: Option<usize>, show: usize, max_order: usize) -> Result<String, Failure> {
    let spec = state.spec()?;
    let s = match modes {
        Some(m) => schmidt_spectrum(&spec, m)?,
        None => schmidt_spectrum_converged(&spec, 64, max_order)?,
    };
    let k1 = s.schmidt_number();
    let k_two_axis = match spec.family() {
        Family::GaussianEpr => Some(Labeled::closed(schmidt_number_2d(&spec)?)),
        Family::NonGaussian => None,
    };
    let shown: Vec<f64> = s.coefficients.iter().take(show).copied().collect();
    Ok(to_json(&json!({
        "family": spec.family(),
        "sigma": spec.sigma(),
        "omega": spec.omega(),
        "schmidt_k1": Labeled::svd(k1, s.modes),
        "schmidt_k1_squared": Labeled::svd(k1 * k1, s.modes),
        "schmidt_k": k_two_axis,
        "e2": Labeled::svd(2.0 * (1.0 - s.purity()), s.modes),
        "e2_closed": Labeled::closed(gem_closed(&spec)),
        "truncation_error": s.truncation_error,
        "leading_coefficients": { "values": shown, "provenance": format!("svd(modes={})", s.modes) },
    })))
}

fn ph(state: &StateArgs, window: bool, opts: &ConvergenceOptions) -> Result<String, Failure> {
    if window {
        let w = ph_blind_window(opts)?;
        return Ok(to_json(&json!({
            "family": Family::NonGaussian,
            "omega_over_sigma_lower": Labeled::quadrature(w.lower, w.order_used),
            "omega_over_sigma_upper": Labeled::quadrature(w.upper, w.order_used),
        })));
    }
    let spec = state.spec()?;
    let c = ph_criterion(&spec, opts)?;
    let closed = match spec.family() {
        Family::GaussianEpr => Some(Labeled::closed(ph_value_closed(&spec)?)),
        Family::NonGaussian => None,
    };
    Ok(to_json(&json!({
        "family": spec.family(),
        "sigma": spec.sigma(),
        "omega": spec.omega(),
        "ph_value": Labeled::quadrature(c.value, c.order_used),
        "ph_value_closed": closed,
        "separable_by_second_order": c.separable_by_second_order,
    })))
}

fn widths(
    sigma: &Option<String>,
    omega: &Option<String>,
    f: &Option<String>,
    sigma1: &Option<String>,
    opts: &ConvergenceOptions,
) -> Result<String, Failure> {
    if let (Some(f), Some(s1)) = (f, sigma1) {
        let m = MeasuredWidths::new(parse_width(f)?, parse_width(s1)?)?;
        let inferred = infer_gem_from_measurement(&m);
        return Ok(to_json(&json!({
            "f": m.f,
            "sigma1": m.sigma1,
            "e2": Labeled::closed(inferred.e2),
            "percent": Labeled::closed(percent_entanglement(inferred.e2)?),
            "clamped": inferred.clamped,
        })));
    }
    let (Some(s), Some(o)) = (sigma, omega) else {
        return Err(Failure::usage("give --sigma and --omega, or --f and --sigma1"));
    };
    let spec = StateSpec::gaussian(parse_width(s)?, parse_width(o)?)?;
    let closed = widths_closed(&spec)?;
    let f = antidiagonal_width(&spec, opts)?;
    let s1 = marginal_width(&spec, opts)?;
    let inferred = infer_gem_from_measurement(&MeasuredWidths::new(f.value, s1.value)?);
    Ok(to_json(&json!({
        "sigma": spec.sigma(),
        "omega": spec.omega(),
        "sigma1": Labeled::closed(closed.marginal),
        "f": Labeled::closed(closed.conditional),
        "sigma1_oracle": Labeled::quadrature(s1.value, s1.order_used),
        "f_oracle": Labeled::quadrature(f.value, f.order_used),
        "e2_from_widths": Labeled::quadrature(inferred.e2, f.order_used.max(s1.order_used)),
        "e2_closed": Labeled::closed(gem_closed(&spec)),
    })))
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let opts = options(cli)?;
    match &cli.command {
        Command::Gem { state, oracle } => gem(state, *oracle, &opts),
        Command::Spdc(args) => spdc(args),
        Command::Sweep(args) => sweep_cmd(args, &opts),
        Command::Verify { inject_fault } => verify(*inject_fault, &opts),
        Command::Schmidt { state, modes, show } => schmidt(state, *modes, *show, opts.max_order),
        Command::Ph { state, window } => ph(state, *window, &opts),
        Command::Widths { sigma, omega, f, sigma1 } => widths(sigma, omega, f, sigma1, &opts),
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match run(&cli) {
        Ok(text) => emit(&cli, &text),
        Err(Failure::Verify { table, failed }) => emit(&cli, &table).and(Err(Failure::Verify {
            table: String::new(),
            failed,
        })),
        Err(e) => Err(e),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify { failed, .. }) => {
            eprintln!("gepr: verification failed: {failed}");
            ExitCode::from(1)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("gepr: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("gepr: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("gepr: {msg}");
            ExitCode::from(3)
        }
    }
}
