// Connected fraction of equivalent pairs per step budget, as CSV.
//
//   cargo run --release --example sweep -- 5
use interpreter_metric::harness::{budget_sweep, sweep_csv, UniverseSpec};
use interpreter_metric::{Catalog, Lab};

fn main() -> interpreter_metric::Result<()> {
    let n = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(5);
    let lab = Lab::default();
    let r = budget_sweep(&lab, &UniverseSpec::new(n), &Catalog::base(lab.modulus()))?;
    print!("{}", sweep_csv(&r.rows));
    println!("never connected: {} of {}; e.g. {:?}", r.never_connected, r.equivalent_pairs, r.example_unconnected);
    Ok(())
}
