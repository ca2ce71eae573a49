use interpreter_metric::harness::{axiom_suite, budget_sweep, ordering_experiment, selector_demo, UniverseSpec};
use interpreter_metric::lang::table;
use interpreter_metric::{Catalog, ComplexityBits, Lab, Transformation};

#[test]
fn selector_demo_passes() {
    let lab = Lab::default();
    let r = selector_demo(&lab).unwrap();
    assert!(r.appends_valid && r.flip_rejected && r.rejected_chain_fails);
    assert!(r.unreachable_under_restriction);
    assert!(r.passed);
    assert_eq!(r.start_table, r.goal_table);
}

#[test]
fn small_axiom_suite() {
    let lab = Lab::default();
    let r = axiom_suite(&lab, &UniverseSpec::new(4), &Catalog::base(lab.modulus())).unwrap();
    assert!(r.passed, "{}", r.to_json());
    assert_eq!(r.universe.programs, 4630 - 4272);
    assert!(r.symmetry.max_gap <= r.symmetry.delta);
    assert_eq!(r.identity.violations.count, 0);
}

#[test]
fn complexity_audit_catches_charged_identity() {
    let lab = Lab::default();
    let cat = Catalog::base(lab.modulus()).with_declared_complexity(&Transformation::Id, ComplexityBits(1));
    let r = axiom_suite(&lab, &UniverseSpec::new(3), &cat).unwrap();
    assert!(!r.complexity_audit.passed);
    assert!(!r.passed);
}

#[test]
fn filtered_universe() {
    let lab = Lab::default();
    let x = lab.parse("x").unwrap();
    let spec = UniverseSpec { max_tokens: 5, filter: Some(table(&x, lab.modulus())) };
    let programs = spec.programs(&lab).unwrap();
    assert!(programs.iter().all(|p| table(p, lab.modulus()) == table(&x, lab.modulus())));
    let r = axiom_suite(&lab, &spec, &Catalog::base(lab.modulus())).unwrap();
    assert!(r.passed);
    assert_eq!(r.universe.classes, 1);
}

#[test]
fn small_sweep_is_monotone() {
    let lab = Lab::default();
    let r = budget_sweep(&lab, &UniverseSpec::new(4), &Catalog::base(lab.modulus())).unwrap();
    assert!(r.monotone);
    assert_eq!(r.rows[0].budget_bits, 0);
    assert_eq!(r.rows[0].connected_fraction, 0.0);
    assert!(r.rows.windows(2).all(|w| w[0].connected_fraction <= w[1].connected_fraction));
    for row in &r.rows {
        let connected = (row.connected_fraction * r.equivalent_pairs as f64).round() as u64;
        assert_eq!(connected + row.unreachable_pairs, r.equivalent_pairs);
    }
}

#[test]
fn small_ordering_experiment() {
    let lab = Lab::default();
    let r = ordering_experiment(&lab, &UniverseSpec::new(5), &Catalog::base(lab.modulus())).unwrap();
    assert_eq!(r.comment_variants.failures.count, 0);
    assert!(r.comment_variants.max_witness_bits <= r.comment_variants.bound_bits);
}
