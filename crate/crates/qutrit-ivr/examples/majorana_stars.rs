//! Star representation of pure states: amplitudes -> two points on the unit
//! sphere and back, including states where a star sits at a pole.

use num_complex::Complex64;
use qutrit_ivr::majorana::{stars_to_state, state_to_stars, Star, StarPair};
use qutrit_ivr::QutritState;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn report(label: &str, psi: &QutritState) {
    let stars = state_to_stars(psi).unwrap();
    let back = stars_to_state(&stars);
    println!("{label}");
    for (k, s) in stars.0.iter().enumerate() {
        println!("  star {}: theta = {:.12}, phi = {:.12}", k + 1, s.theta, s.phi);
    }
    println!("  round-trip overlap: {:.15}", psi.overlap(&back));
}

fn main() {
    report(
        "generic state (0.6, 0.48+0.36i, 0.4+0.34i)/N:",
        &QutritState::from_unnormalized([c(0.6, 0.0), c(0.48, 0.36), c(0.4, 0.34)]).unwrap(),
    );
    report(
        "ground state |−1> (both stars at the north pole):",
        &QutritState::new([c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap(),
    );
    report(
        "middle state |0> (antipodal stars):",
        &QutritState::new([c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).unwrap(),
    );
    report(
        "top state |+1> (both stars at the south pole):",
        &QutritState::new([c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap(),
    );

    // and the reverse direction, from a chosen star pair
    let pair = StarPair::new(Star::new(1.0, 1.0).unwrap(), Star::new(2.0, 4.0).unwrap());
    let psi = stars_to_state(&pair);
    println!("state from stars (1,1) and (2,4): {:?}", psi.amplitudes());
}
