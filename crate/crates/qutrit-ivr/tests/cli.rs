//! Process-level checks of the `qutrit-ivr` binary: headers, determinism,
//! JSON shape, and exit codes.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qutrit-ivr"))
}

#[test]
fn evolve_emits_contracted_header_and_is_deterministic() {
    let run = || {
        let out = bin()
            .args(["evolve", "--theta", "3.0", "--samples", "16"])
            .output()
            .unwrap();
        assert!(out.status.success());
        String::from_utf8(out.stdout).unwrap()
    };
    let first = run();
    assert!(first.starts_with(
        "t,omega_t,re_psi0,im_psi0,re_psi1,im_psi1,re_psi2,im_psi2,\
         omega1,omega2,omega3,q1,q2,q3,a1,a2,a3,\
         w1,w2,w3,u1,u2,u3,v1,v2,v3,psi1,psi2,psi3,chi1,chi2,chi3\n"
    ));
    assert_eq!(first.lines().count(), 17);
    assert_eq!(first, run());
}

#[test]
fn audit_reports_divergence_fields() {
    let out = bin()
        .args([
            "audit",
            "--theta",
            "1.5707963267948966",
            "--t-max",
            "3.141592653589793",
            "--samples",
            "3",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["max_overall_divergence"].as_f64().unwrap() > 0.4);
    let omega3 = v["divergence"]
        .as_array()
        .unwrap()
        .iter()
        .find(|d| d["parameter"] == "omega3")
        .unwrap();
    assert!(omega3["max_abs_divergence"].as_f64().unwrap() > 0.4);
    assert!(v["samples"].as_array().unwrap().len() == 3);
}

#[test]
fn msr_sweep_header_and_constancy() {
    let out = bin()
        .args(["msr-sweep", "--samples", "5"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "theta2,psi1,chi1,psi2,chi2,psi3,chi3"
    );
    let expected = (1.0f64 / 3.0f64.sqrt()).acos();
    for line in lines {
        let cols: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
        assert!((cols[5] - expected).abs() <= 1e-9);
    }
}

#[test]
fn convert_round_trips_between_input_kinds() {
    let out = bin()
        .args(["convert", "--state", "1,0,1,0,0,0"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["params"]["omega1"].as_f64().unwrap() - 0.5).abs() <= 1e-12);
    assert!(v["stars"].is_array());

    // feed the emitted parameters back in as density input
    let params = serde_json::to_string(&v["params"]).unwrap();
    let out2 = bin()
        .args(["convert", "--params-json", &params])
        .output()
        .unwrap();
    assert!(out2.status.success());
    let v2: serde_json::Value = serde_json::from_slice(&out2.stdout).unwrap();
    assert!(v2["purity"]["cubic"]["pass"].as_bool().unwrap());
    for q in v2["purity"]["quadratic"].as_array().unwrap() {
        assert!(q["pass"].as_bool().unwrap());
    }
}

#[test]
fn convert_mixed_state_omits_stars() {
    let third = 1.0 / 3.0;
    let params = format!(
        r#"{{"omega1":{third},"omega2":{third},"omega3":{third},
            "q1":0,"q2":0,"q3":0,"a1":0,"a2":0,"a3":0}}"#
    );
    let out = bin().args(["convert", "--params-json", &params]).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["stars"].is_null());
}

#[test]
fn bad_input_exits_one_zero_state_exits_two() {
    let out = bin().args(["convert", "--state", "nonsense"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));

    let out = bin().args(["convert", "--state", "0,0,0,0,0,0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
