//! Build the three invariant vectors w, u, v for a few states and confirm
//! their squared norms reproduce the first three trace invariants.

use num_complex::Complex64;
use qutrit_ivr::density::{matrix_to_params, pure_from_state};
use qutrit_ivr::invariants::{invariant_vectors, norm_sq, vector_angles};
use qutrit_ivr::linalg::trace_powers;
use qutrit_ivr::{QutritState, SpinParams};

fn show(label: &str, p: &SpinParams) {
    let iv = invariant_vectors(p).unwrap();
    println!("{label}");
    println!("  w = {:?}  |w|^2 = {:.15}", iv.w, norm_sq(&iv.w));
    println!("  u = {:?}  |u|^2 = {:.15}", iv.u, norm_sq(&iv.u));
    println!("  v = {:?}  |v|^2 = {:.15}", iv.v, norm_sq(&iv.v));
    let ang = vector_angles(&iv.v).unwrap();
    println!("  v angles: psi = {:.12} rad, chi = {:.12} rad", ang.psi, ang.chi);
}

fn main() {
    let c = Complex64::new;
    let s = std::f64::consts::FRAC_1_SQRT_2;

    // the equal superposition of the two upper levels
    let psi = QutritState::new([c(s, 0.0), c(s, 0.0), c(0.0, 0.0)]).unwrap();
    let p = pure_from_state(&psi).unwrap();
    show("pure (|1> + |0>)/sqrt(2):", &p);

    let (t1, t2, t3) = trace_powers(&psi.density_matrix()).unwrap();
    println!(
        "  trace invariants: Tr rho = {t1:.15}, Tr rho^2 = {t2:.15}, 3Tr rho^2 - 2Tr rho^3 = {:.15}",
        3.0 * t2 - 2.0 * t3
    );

    // a mixture: 3/4 ground + 1/4 top
    let ground = QutritState::new([c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
    let top = QutritState::new([c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
    let mut rho = ground.density_matrix().scale(c(0.75, 0.0));
    let rho2 = top.density_matrix().scale(c(0.25, 0.0));
    for i in 0..3 {
        for j in 0..3 {
            rho.0[i][j] += rho2.0[i][j];
        }
    }
    show("mixed 3/4 ground + 1/4 top:", &matrix_to_params(&rho).unwrap());

    let third = 1.0 / 3.0;
    let mixed = SpinParams { omega: [third; 3], a: [0.0; 3], q: [0.0; 3] };
    show("maximally mixed:", &mixed);
    println!("  (|v| = sqrt(7/27) = {:.15} here)", (7.0f64 / 27.0).sqrt());
}
