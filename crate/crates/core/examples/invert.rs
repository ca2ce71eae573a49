// The inverse construction: digits into the comment, then InvDovetail(s).
//
//   cargo run --release --example invert
use interpreter_metric::transform::build_inverse_chain;
use interpreter_metric::{Lab, Transformation};

fn main() -> interpreter_metric::Result<()> {
    let lab = Lab::default();
    for (term, text) in [("StripComment", "# 3 x"), ("AddZeroElim", "# 3 ( x + 0 )"), ("FoldConst", "( 2 * 3 )")] {
        let s: Transformation = term.parse()?;
        let p = lab.parse(text)?;
        let plan = build_inverse_chain(&lab, &s, &p)?;
        let steps: Vec<String> = plan.steps.iter().map(ToString::to_string).collect();
        println!("{term}: {p} -> {}", plan.image);
        println!("  back via [{}] = {} ({} bits max)", steps.join(", "), plan.execute(&lab), plan.max_step_complexity().0);
    }
    Ok(())
}
