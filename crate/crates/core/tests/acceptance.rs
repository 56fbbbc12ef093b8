//! Acceptance criteria, one line each. Run with
//! `cargo test --test acceptance -- --nocapture` to see the table.

use std::f64::consts::PI;

use gepr::closed::{gem_closed, percent_entanglement, ph_value_closed, schmidt_number_2d};
use gepr::oracle::{
    antidiagonal_width, gem_numeric, marginal_width, ph_blind_window, ph_criterion,
    schmidt_number_1d,
};
use gepr::quadrature::{ConvergenceOptions, QuadratureRule};
use gepr::spdc::{
    biphoton_e2, correlation_width, infer_gem_from_measurement, MeasuredWidths, SpdcSetup,
    WidthConvention,
};
use gepr::sweep::{run, Axis, CorrelationSource, Quantity, Spacing, SweepRequest};
use gepr::verify::{log_ratios, test_ratios};
use gepr::{Family, StateSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = gepr::Result<(bool, String)>;

fn lab_example() -> Outcome {
    let e2 = biphoton_e2(&SpdcSetup::new(10e-3, 405e-9, 350e-6, WidthConvention::FullWidthOmega)?);
    let pct = percent_entanglement(e2)?;
    Ok(((e2 - 1.832).abs() <= 0.002 && (pct - 91.6).abs() <= 0.1, format!("E^2 {e2:.4}, {pct:.2}%")))
}

fn bbo_example() -> Outcome {
    let e2 = biphoton_e2(&SpdcSetup::new(15.76e-3, 405e-9, 180e-6, WidthConvention::WaistSigmaP)?);
    let pct = percent_entanglement(e2)?;
    Ok(((e2 - 1.796).abs() <= 0.001 && (pct - 89.8).abs() <= 0.1, format!("E^2 {e2:.4}, {pct:.2}%")))
}

fn ratio_ten() -> Outcome {
    let pct = percent_entanglement(gem_closed(&StateSpec::gaussian(10.0, 1.0)?))?;
    Ok(((pct - 80.2).abs() <= 0.1, format!("{pct:.3}%")))
}

fn oracle_equivalence(opts: &ConvergenceOptions) -> Outcome {
    let (mut quad, mut svd) = (0.0f64, 0.0f64);
    for r in log_ratios(21) {
        for family in [Family::GaussianEpr, Family::NonGaussian] {
            let spec = StateSpec::new(family, r, 1.0)?;
            let numeric = gem_numeric(&spec, opts)?.e2;
            quad = quad.max((numeric - gem_closed(&spec)).abs());
            let (_, s) = schmidt_number_1d(&spec)?;
            svd = svd.max((2.0 * (1.0 - s.purity()) - numeric).abs());
        }
    }
    Ok((quad < 1e-6 && svd < 1e-5, format!("quadrature {quad:.2e}, schmidt {svd:.2e}")))
}

fn equal_width_nongaussian(opts: &ConvergenceOptions) -> Outcome {
    let spec = StateSpec::non_gaussian(1.0, 1.0)?;
    let closed = gem_closed(&spec);
    let numeric = gem_numeric(&spec, opts)?.e2;
    Ok((closed == 1.0 && (numeric - 1.0).abs() < 1e-6, format!("closed {closed}, numeric {numeric:.10}")))
}

fn ph_criterion_check(opts: &ConvergenceOptions) -> Outcome {
    let mut worst = 0.0f64;
    for r in test_ratios() {
        let spec = StateSpec::gaussian(r, 1.0)?;
        worst = worst.max((ph_criterion(&spec, opts)?.value - ph_value_closed(&spec)?).abs());
    }
    let w = ph_blind_window(opts)?;
    let ok = worst < 1e-6 && (w.lower - 0.577).abs() <= 0.01 && (w.upper - 1.732).abs() <= 0.01;
    Ok((ok, format!("value {worst:.2e}, window {:.4}..{:.4}", w.lower, w.upper)))
}

fn schmidt_relation() -> Outcome {
    let (mut d1, mut d2) = (0.0f64, 0.0f64);
    for r in test_ratios() {
        let spec = StateSpec::gaussian(r, 1.0)?;
        let (k1, _) = schmidt_number_1d(&spec)?;
        d1 = d1.max((k1 - 0.5 * (r + 1.0 / r)).abs());
        d2 = d2.max((k1 * k1 - schmidt_number_2d(&spec)?).abs());
    }
    Ok((d1 < 1e-4 && d2 < 1e-3, format!("K1 {d1:.2e}, K1^2 {d2:.2e}")))
}

fn measurement_closure(opts: &ConvergenceOptions) -> Outcome {
    let mut worst = 0.0f64;
    for r in test_ratios() {
        let spec = StateSpec::gaussian(r, 1.0)?;
        let f = antidiagonal_width(&spec, opts)?.value;
        let s1 = marginal_width(&spec, opts)?.value;
        let e2 = infer_gem_from_measurement(&MeasuredWidths::new(f, s1)?).e2;
        worst = worst.max((e2 - gem_closed(&spec)).abs());
    }
    Ok((worst < 1e-9, format!("{worst:.2e}")))
}

fn limits() -> Outcome {
    let lo = gem_closed(&StateSpec::gaussian(1e-6, 1.0)?);
    let hi = gem_closed(&StateSpec::gaussian(1e6, 1.0)?);
    Ok((lo >= 2.0 - 1e-5 && hi >= 2.0 - 1e-5, format!("{lo:.8}, {hi:.8}")))
}

fn figures(opts: &ConvergenceOptions) -> Outcome {
    let ratios = Axis::new(0.01, 100.0, 201, Spacing::Log)?;
    let fig2 = run(&SweepRequest::new(Quantity::GemGaussian, ratios), opts)?;
    let r = fig2.column("ratio_sigma_over_omega").unwrap();
    let e2 = fig2.column("e2").unwrap();
    let asym = (0..e2.len()).map(|i| (e2[i] - e2[e2.len() - 1 - i]).abs()).fold(0.0, f64::max);
    let zeros: Vec<usize> = (0..e2.len()).filter(|&i| e2[i] < 1e-12).collect();
    let fig2_ok = asym < 1e-9 && zeros == [100];

    let sigma = 1e-5;
    let mut req = SweepRequest::new(Quantity::SpdcVsPumpwidth, Axis::new(1e-6, 1e-3, 301, Spacing::Log)?);
    req.correlation = Some(CorrelationSource::Sigma(sigma));
    let fig5 = run(&req, opts)?;
    let widths = fig5.column("pump_width_m").unwrap();
    let e2 = fig5.column("e2").unwrap();
    let imin = (0..e2.len()).min_by(|&a, &b| e2[a].total_cmp(&e2[b])).unwrap();
    // same sigma expressed through a crystal: L lambda / 6 pi = sigma^2
    let lp = 405e-9;
    let l = 6.0 * PI * sigma * sigma / lp;
    let at_sigma = biphoton_e2(&SpdcSetup::new(l, lp, correlation_width(l, lp), WidthConvention::FullWidthOmega)?);
    let fig5_ok = (widths[imin] / sigma - 1.0).abs() < 1e-9 && at_sigma.abs() < 1e-12;

    let fig6 = run(&SweepRequest::new(Quantity::GemBoth, ratios), opts)?;
    let g = fig6.column("percent_gaussian").unwrap();
    let ng = fig6.column("percent_nongaussian").unwrap();
    let above = g.iter().zip(&ng).all(|(g, n)| n > g);
    let ng_min = ng.iter().copied().fold(f64::INFINITY, f64::min);

    Ok((
        fig2_ok && fig5_ok && above,
        format!(
            "ratio sweep asymmetry {asym:.1e}, zero at {:?}; pump dip at {:.4e} m (E^2 {at_sigma:.1e}); non-gaussian above everywhere: {above}, min {ng_min:.3}%",
            zeros.iter().map(|&i| r[i]).collect::<Vec<_>>(),
            widths[imin]
        ),
    ))
}

fn hygiene() -> Outcome {
    let mut norm = 0.0f64;
    for r in test_ratios() {
        for family in [Family::GaussianEpr, Family::NonGaussian] {
            let spec = StateSpec::new(family, r, 1.0)?;
            // (u, v) = (x1 - x2, x1 + x2) separates the envelope
            let u = QuadratureRule::gauss_hermite(96)?.mapped(spec.sigma() * 2f64.sqrt(), 0.0)?;
            let v = QuadratureRule::gauss_hermite(96)?.mapped(spec.omega() * 2f64.sqrt(), 0.0)?;
            let mut total = 0.0;
            for (&ui, &wu) in u.nodes().iter().zip(u.weights()) {
                for (&vj, &wv) in v.nodes().iter().zip(v.weights()) {
                    let a = spec.amplitude(0.5 * (ui + vj), 0.5 * (vj - ui));
                    total += wu * wv * a * a;
                }
            }
            norm = norm.max((0.5 * total - 1.0).abs());
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut grad = 0.0f64;
    for k in 0..100 {
        let family = if k % 2 == 0 { Family::GaussianEpr } else { Family::NonGaussian };
        let spec = StateSpec::new(family, rng.gen_range(0.3..3.0), rng.gen_range(0.3..3.0))?;
        let (x1, x2) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let h = 1e-5;
        let fd1 = (spec.amplitude(x1 + h, x2) - spec.amplitude(x1 - h, x2)) / (2.0 * h);
        let fd2 = (spec.amplitude(x1, x2 + h) - spec.amplitude(x1, x2 - h)) / (2.0 * h);
        let (d1, d2) = spec.amplitude_gradient(x1, x2);
        let scale = d1.abs().max(d2.abs()).max(spec.normalization() * 1e-3);
        grad = grad.max((d1 - fd1).abs().max((d2 - fd2).abs()) / scale);
    }

    let rule = QuadratureRule::gauss_hermite(2)?;
    let half = 0.5f64.sqrt();
    let nodes = rule.reference_nodes();
    let dn = (nodes[0] + half).abs().max((nodes[1] - half).abs());
    let dw = rule
        .reference_weights()
        .iter()
        .map(|w| (w - PI.sqrt() / 2.0).abs())
        .fold(0.0, f64::max);

    Ok((
        norm < 1e-8 && grad < 1e-6 && dn < 1e-12 && dw < 1e-12,
        format!("normalization {norm:.1e}, gradient {grad:.1e}, order-2 nodes {dn:.1e} weights {dw:.1e}"),
    ))
}

#[test]
fn acceptance() {
    let opts = ConvergenceOptions::default();
    let criteria: Vec<(&str, Outcome)> = vec![
        ("ppktp lab example", lab_example()),
        ("bbo lab example", bbo_example()),
        ("ratio ten", ratio_ten()),
        ("oracle equivalence", oracle_equivalence(&opts)),
        ("non-gaussian at equal widths", equal_width_nongaussian(&opts)),
        ("second-order criterion", ph_criterion_check(&opts)),
        ("schmidt relation", schmidt_relation()),
        ("measurement closure", measurement_closure(&opts)),
        ("limits", limits()),
        ("figure sweeps", figures(&opts)),
        ("numerical hygiene", hygiene()),
    ];

    let mut failed = Vec::new();
    for (i, (name, outcome)) in criteria.into_iter().enumerate() {
        let (ok, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
        println!("{:>2} {} {name}: {detail}", i + 1, if ok { "PASS" } else { "FAIL" });
        if !ok {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}
