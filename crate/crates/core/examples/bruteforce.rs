// The exhaustive chain oracle next to the graph search.
//
//   cargo run --release --example bruteforce
use interpreter_metric::metric::{distance, distance_bruteforce, SearchBounds};
use interpreter_metric::{Catalog, Lab};

fn main() -> interpreter_metric::Result<()> {
    let lab = Lab::default();
    let cat = Catalog::base(lab.modulus());
    let bounds = SearchBounds {
        max_program_tokens: Some(5),
        max_chain_length: Some(4),
        max_explored: None,
    };
    for (a, b) in [("# 3 x", "# 7 x"), ("( 1 + x )", "( x + 1 )"), ("( x + x )", "( 2 * x )")] {
        let (p, q) = (lab.parse(a)?, lab.parse(b)?);
        let fast = distance(&lab, &p, &q, &cat, &bounds)?;
        for len in 1..=4 {
            let slow = distance_bruteforce(&lab, &p, &q, &cat, len, Some(5));
            println!("{a} -> {b}  len<={len}: oracle {:?}", slow.value.map(|v| v.0));
        }
        println!("{a} -> {b}  search: {:?}", fast.value.map(|v| v.0));
    }
    Ok(())
}
