// Metric axioms over every program up to N tokens (6 takes a couple of
// minutes in release mode).
//
//   cargo run --release --example axioms -- 5
use interpreter_metric::harness::{axiom_suite, UniverseSpec};
use interpreter_metric::{Catalog, Lab};

fn main() -> interpreter_metric::Result<()> {
    let n = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(5);
    let lab = Lab::default();
    let r = axiom_suite(&lab, &UniverseSpec::new(n), &Catalog::base(lab.modulus()))?;
    println!("{}", serde_json::to_string_pretty(&r.to_json()).unwrap());
    Ok(())
}
