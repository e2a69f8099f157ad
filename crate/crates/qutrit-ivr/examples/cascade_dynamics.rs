//! Closed-form evolution of the driven three-level ladder from the ground
//! state, cross-validated against a fixed-step RK4 integration.

use num_complex::Complex64;
use qutrit_ivr::cascade::{build_hamiltonian, evolve_closed_form, CascadeParams};
use qutrit_ivr::linalg::{integrate_schrodinger, Vec3};

fn main() {
    let p = CascadeParams::from_angular(1.0, 3.0, 0.0).unwrap();
    let h = build_hamiltonian(&p);
    let ground = Vec3([
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
    ]);

    println!("omega = {}, theta = {}, delta = {}", p.omega, p.theta, p.delta);
    println!("{:>8} {:>12} {:>12} {:>12} {:>12}", "omega*t", "pop0", "pop1", "pop2", "rk4 diff");

    let dt = 1e-3 * p.period();
    for step in 0..=8 {
        let wt = std::f64::consts::PI * step as f64 / 4.0;
        let t = wt / p.omega;
        let exact = evolve_closed_form(&p, t);
        let amps = exact.amplitudes();
        let numeric = if t > 0.0 {
            integrate_schrodinger(&h, &ground, t, dt).unwrap()
        } else {
            ground.clone()
        };
        let diff = (0..3)
            .map(|k| (numeric.0[k] - amps[k]).norm())
            .fold(0.0f64, f64::max);
        println!(
            "{:8.4} {:12.8} {:12.8} {:12.8} {:12.3e}",
            wt,
            amps[0].norm_sqr(),
            amps[1].norm_sqr(),
            amps[2].norm_sqr(),
            diff
        );
    }
}
