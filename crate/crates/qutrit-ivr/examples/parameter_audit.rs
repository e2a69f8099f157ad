//! Compare the two routes to the trajectory's spin parameters — the
//! closed-form expressions and the outer-product pipeline — and print where
//! they part ways. At theta = pi/2 the two disagree strongly at the half
//! period: the closed forms give populations (1/2, 0, 1/2) while the state
//! itself is fully in the top level.

use qutrit_ivr::cascade::{audit_parameters, CascadeParams, PARAM_NAMES};

fn main() {
    let p = CascadeParams::from_angular(1.0, std::f64::consts::FRAC_PI_2, 0.0).unwrap();
    let grid: Vec<f64> = (0..=8)
        .map(|k| std::f64::consts::PI * k as f64 / 4.0)
        .collect();
    let report = audit_parameters(&p, &grid).unwrap();

    println!("per-parameter max |closed form - pipeline| over omega*t in [0, 2pi]:");
    for (name, d) in PARAM_NAMES.iter().zip(report.max_by_param) {
        println!("  {name:>6}: {d:.3e}");
    }
    println!("overall: {:.3e}", report.max_overall);
    for note in &report.notes {
        println!("note: {note}");
    }

    let half = &report.samples[4]; // omega*t = pi
    println!("\nat omega*t = pi:");
    println!("  closed-form populations: {:?}", half.paper.omega);
    println!("  pipeline populations:    {:?}", half.pipeline.omega);
}
