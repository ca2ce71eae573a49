// Shipped catalog files: load, describe, save and reload.
//
//   cargo run --release --example catalog
use interpreter_metric::{Catalog, Lab};

fn main() -> interpreter_metric::Result<()> {
    let lab = Lab::default();
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("catalogs");
    let base = Catalog::load(&dir.join("base.cat"), &lab, false)?;
    println!("{}: {} entries, levels {:?}", base.name, base.len(), base.complexity_levels().iter().map(|c| c.0).collect::<Vec<_>>());
    println!("inverse closed: {}, symmetry slack {} bits", base.is_inverse_closed(), base.symmetry_slack());

    let out = std::env::temp_dir().join("im-example-base.cat");
    base.save(&out)?;
    println!("round trip equal: {}", Catalog::load(&out, &lab, false)? == base);

    match Catalog::load(&dir.join("candidates.cat"), &lab, true) {
        Ok(_) => println!("candidates unexpectedly verified"),
        Err(e) => println!("candidates rejected: {e}"),
    }
    Ok(())
}
