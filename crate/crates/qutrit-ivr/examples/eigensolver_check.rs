//! The in-repo 3x3 Hermitian eigensolver against the ladder Hamiltonian,
//! whose spectrum is known in closed form: (-omega, 0, omega).

use qutrit_ivr::cascade::{analytic_eigenvectors, build_hamiltonian, CascadeParams};
use qutrit_ivr::linalg::eigensystem_oracle;

fn main() {
    let p = CascadeParams::from_angular(2.5, 1.2, 0.7).unwrap();
    let h = build_hamiltonian(&p);

    let eig = eigensystem_oracle(&h).unwrap();
    println!("numerical eigenvalues: {:?}", eig.iter().map(|e| e.0).collect::<Vec<_>>());
    println!("closed form:           [{}, 0, {}]", -p.omega, p.omega);

    for ((lam, vec), closed) in eig.iter().zip(analytic_eigenvectors(&p)) {
        // residual of the numerical pair and overlap with the closed form
        let r = h
            .mul_vec(vec)
            .add(&vec.scale(num_complex::Complex64::new(-lam, 0.0)))
            .norm();
        let overlap = vec.dot(&closed).norm();
        println!("lambda = {lam:+.12}: |Hv - lambda v| = {r:.3e}, |<numeric|closed>| = {overlap:.15}");
    }
}
