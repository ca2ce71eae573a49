// Canonical enumeration: shorter programs first, then token order.
//
//   cargo run --example enumerate -- 3
use interpreter_metric::lang::ProgramIndex;
use interpreter_metric::Lab;

fn main() -> interpreter_metric::Result<()> {
    let max: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(3);
    let lab = Lab::default();
    let e = lab.enumeration();
    for k in 1..=8 {
        println!("{k} tokens: {} programs (index from {})", e.level_count(k), e.level_start(k));
    }
    for (i, p) in e.iter_upto(max)?.enumerate() {
        println!("{i:>4}  {p}");
    }
    let p = lab.parse("# 1 2 # 3")?;
    let i = lab.index_of(&p)?;
    println!("index of `{p}` = {}; back: {}", i.0, lab.program_at(ProgramIndex(i.0))?);
    Ok(())
}
