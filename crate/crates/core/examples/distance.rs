// Chain distances with witnesses, checked independently.
//
//   cargo run --release --example distance -- "# 3 x" "x"
use interpreter_metric::metric::{check_chain, distance, symmetrized_distance, SearchBounds};
use interpreter_metric::{Catalog, Lab};

fn main() -> interpreter_metric::Result<()> {
    let mut args = std::env::args().skip(1);
    let p = args.next().unwrap_or_else(|| "# 3 x".into());
    let q = args.next().unwrap_or_else(|| "x".into());
    let lab = Lab::default();
    let cat = Catalog::base(lab.modulus());
    let (p, q) = (lab.parse(&p)?, lab.parse(&q)?);

    let d = distance(&lab, &p, &q, &cat, &SearchBounds::default())?;
    println!("{}", serde_json::to_string_pretty(&d.to_json(&lab)).unwrap());
    if let Some(w) = &d.witness {
        let c = check_chain(&lab, w, &cat);
        println!("witness re-checked: valid {} at {} bits", c.valid, c.max_complexity.0);
    }
    let s = symmetrized_distance(&lab, &p, &q, &cat, &SearchBounds::default())?;
    println!("symmetrized: {:?} (gap {:?})", s.value.map(|v| v.0), s.gap());
    Ok(())
}
