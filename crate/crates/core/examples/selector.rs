// The selector counterexample, end to end.
//
//   cargo run --release --example selector
use interpreter_metric::harness::selector_demo;
use interpreter_metric::Lab;

fn main() -> interpreter_metric::Result<()> {
    let r = selector_demo(&Lab::default())?;
    println!("{}", serde_json::to_string_pretty(&r.to_json()).unwrap());
    Ok(())
}
