use std::time::{Duration, Instant};

use toric_deform::presets::{verify_example, PRESET_NAMES};

#[test]
fn every_preset_passes_within_five_seconds() {
    let start = Instant::now();
    for name in PRESET_NAMES {
        let r = verify_example(name, 3, 12).unwrap();
        for c in &r.checks {
            assert!(c.passed, "{name}: {} ({})", c.name, c.detail);
        }
    }
    assert!(start.elapsed() < Duration::from_secs(5), "{:?}", start.elapsed());
}

#[test]
fn ca1_for_small_exponents() {
    for p in 1..=4 {
        let r = verify_example("cA1", p, 8).unwrap();
        assert!(r.passed(), "p = {p}");
        let z = if p == 1 { "z".to_string() } else { format!("z^{p}") };
        assert!(r.lines.iter().any(|l| l.contains(&format!("x*y - u^2 - t1*{z}"))), "{:?}", r.lines);
    }
}
