// Parse programs, run them on every input and compare their functions.
//
//   cargo run --example evaluate
use interpreter_metric::lang::{equivalent, evaluate, table};
use interpreter_metric::Lab;

fn main() -> interpreter_metric::Result<()> {
    let lab = Lab::default();
    let m = lab.modulus();
    for text in ["x", "( x + x )", "( 2 * x )", "# 4 2 ( x * x )", "1 x S ( x + 1 )", "2 x S ( x + 1 )"] {
        let p = lab.parse(text)?;
        println!("{:<20} f(3) = {}  table {}", p.to_string(), evaluate(&p, 3, m), table(&p, m));
    }
    let a = lab.parse("( x + x )")?;
    let b = lab.parse("( 2 * x )")?;
    println!("{a} ~ {b}: {}", equivalent(&a, &b, m));

    match lab.parse("# 3 # x") {
        Ok(p) => println!("unexpected: {p}"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
