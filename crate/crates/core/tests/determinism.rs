//! Two runs of the same instance must produce identical reports except for
//! the measured runtimes, which describe the run rather than the instance.
//! The node set, the quadrature weights, and the reduction order are all
//! fixed by the grid resolution, so even the floating-point terms have to
//! agree bitwise.

use arakelov_p1::verify::{parse_instance, verify, InstanceSpec};
use std::fs;
use std::path::PathBuf;

fn fixture(name: &str) -> InstanceSpec {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name]
        .iter()
        .collect();
    let text = fs::read_to_string(&path).expect("fixture file");
    parse_instance(&text).expect("fixture parses")
}

/// Report JSON with the runtimes nulled out, parsed back to a value.
fn comparable_json(report_json: &str) -> serde_json::Value {
    let mut value: serde_json::Value = serde_json::from_str(report_json).expect("report JSON");
    let runtimes = value
        .get_mut("diagnostics")
        .and_then(|d| d.get_mut("runtimes_ms"))
        .expect("diagnostics.runtimes_ms present");
    *runtimes = serde_json::Value::Null;
    value
}

#[test]
fn all_fixtures_parse() {
    for name in ["p1z-x0-2x1.json", "p1z-split.json", "p1z-fs-gamma4.json"] {
        let spec = fixture(name);
        assert!(!spec.label.is_empty(), "{name} carries a label");
    }
}

#[test]
fn repeated_runs_agree_bitwise_outside_runtimes() {
    for name in ["p1z-x0-2x1.json", "p1z-split.json", "p1z-fs-gamma4.json"] {
        let mut spec = fixture(name);
        spec.grid.resolution = 24;
        let first = verify(&spec).expect("first run");
        let second = verify(&spec).expect("second run");
        let a = comparable_json(&first.to_json());
        let b = comparable_json(&second.to_json());
        assert_eq!(a, b, "reports for {name} differ beyond runtimes");
    }
}

#[test]
fn floating_terms_are_bitwise_stable() {
    let mut spec = fixture("p1z-x0-2x1.json");
    spec.grid.resolution = 16;
    let first = verify(&spec).expect("first run");
    let second = verify(&spec).expect("second run");
    for (label, x, y) in [
        ("lhs_c2", first.lhs_c2, second.lhs_c2),
        ("rhs_c1c1", first.rhs_c1c1, second.rhs_c1c1),
        (
            "rhs_bott_chern_integral",
            first.rhs_bott_chern_integral,
            second.rhs_bott_chern_integral,
        ),
        ("residual", first.residual, second.residual),
    ] {
        let x = x.expect("complete report").to_bits();
        let y = y.expect("complete report").to_bits();
        assert_eq!(x, y, "term {label} moved between runs");
    }
    assert_eq!(
        first.rhs_log_gamma.to_bits(),
        second.rhs_log_gamma.to_bits()
    );
    assert_eq!(
        first.diagnostics.gamma_order,
        second.diagnostics.gamma_order
    );
}
