// Self-delimiting bit encodings of transformations and their costs.
//
//   cargo run --example encoding
use interpreter_metric::transform::Bits;
use interpreter_metric::{Lab, Transformation};

fn main() -> interpreter_metric::Result<()> {
    let _ = Lab::default();
    for term in ["Id", "StripComment", "AppendCommentDigit 7", "UnfoldConstAdd 3", "InvDovetail (CommuteAdd)"] {
        let t: Transformation = term.parse()?;
        let bits = t.encode();
        let back = Transformation::decode(&bits)?;
        println!("{:<26} {:<16} raw {:>2}  cost {:>2}  round trip {}", term, bits.to_string(), t.raw_len(), t.complexity().0, back == t);
    }
    let bad: Bits = "0000".parse()?;
    println!("decode 0000: {}", Transformation::decode(&bad).unwrap_err());
    Ok(())
}
