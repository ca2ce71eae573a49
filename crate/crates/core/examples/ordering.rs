// Comment variants versus expression rewrites.
//
//   cargo run --release --example ordering
use interpreter_metric::harness::{ordering_experiment, UniverseSpec};
use interpreter_metric::{Catalog, Lab};

fn main() -> interpreter_metric::Result<()> {
    let lab = Lab::default();
    let r = ordering_experiment(&lab, &UniverseSpec::new(7), &Catalog::base(lab.modulus()))?;
    println!("{}", serde_json::to_string_pretty(&r.to_json()).unwrap());
    Ok(())
}
