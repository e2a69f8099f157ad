//! Emit the trajectory tables used for plotting: the full 32-column CSV for
//! two mixing angles, written to the current directory.

use std::fs::File;

use qutrit_ivr::cascade::CascadeParams;
use qutrit_ivr::commands::{cmd_evolve, EvolveConfig};

fn main() {
    for theta in [3.0, 5.0] {
        let cfg = EvolveConfig::defaults(CascadeParams::from_angular(1.0, theta, 0.0).unwrap());
        let path = format!("trajectory_theta{theta}.csv");
        let mut file = File::create(&path).unwrap();
        cmd_evolve(&cfg, &mut file).unwrap();
        println!("wrote {path} ({} samples over omega*t in [0, 4pi])", cfg.samples);
    }
}
