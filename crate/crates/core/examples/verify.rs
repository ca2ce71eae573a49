// Exhaustive interpreter verification; FlipSelector is the invalid one.
//
//   cargo run --release --example verify
use interpreter_metric::transform::verify;
use interpreter_metric::{Lab, Transformation};

fn main() -> interpreter_metric::Result<()> {
    let lab = Lab::default();
    for term in ["StripComment", "CommuteAdd", "InvDovetail (FoldConst)", "FlipSelector"] {
        let t: Transformation = term.parse()?;
        let r = verify(&lab, &t, 7)?;
        print!("{:<28} {:>2} bits  {:?} over {} programs", t.to_string(), t.complexity().0, r.verdict, r.programs_checked);
        match r.counterexample {
            Some(cx) => println!("  e.g. {} -> {} ({} vs {})", cx.program, cx.image, cx.program_table, cx.image_table),
            None => println!(),
        }
    }
    Ok(())
}
