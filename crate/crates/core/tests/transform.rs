mod common;

use interpreter_metric::lang::{Token, INACTIVE_TOKENS};
use interpreter_metric::transform::{build_inverse_chain, verify, Bits, CatalogEntry, Verdict};
use interpreter_metric::{Catalog, ComplexityBits, Error, Lab, Modulus, Program, Transformation};
use Transformation::*;

fn flat(m: Modulus) -> Vec<Transformation> {
    let mut ts = Catalog::base_rules(m);
    ts.push(FlipSelector);
    ts.extend((m.literal_limit()..10).map(UnfoldConstAdd));
    ts
}

fn every_term(m: Modulus) -> Vec<Transformation> {
    let base = flat(m);
    let once: Vec<_> = base.iter().cloned().map(Transformation::inv_dovetail).collect();
    let twice: Vec<_> = once.iter().cloned().map(Transformation::inv_dovetail).collect();
    base.into_iter().chain(once).chain(twice).collect()
}

/// Re-checks verdicts with the reference evaluator, scanning the same
/// canonical order.
#[test]
fn verdicts_agree_with_reference_evaluator() {
    let lab = Lab::default();
    let programs: Vec<Program> = lab.enumeration().iter_upto(5).unwrap().collect();
    let mut subjects: Vec<Transformation> = Catalog::base(lab.modulus()).transformations().cloned().collect();
    subjects.push(FlipSelector);
    for t in subjects {
        let report = verify(&lab, &t, 5).unwrap();
        let first_bad = programs.iter().find(|p| {
            let before = common::table(&common::chars(&p.to_string()), 5);
            let image = common::chars(&t.apply(&lab, p).to_string());
            !common::is_program(&image, 5) || common::table(&image, 5) != before
        });
        assert_eq!(report.verdict == Verdict::Valid, first_bad.is_none(), "{t}");
        assert_eq!(
            report.counterexample.map(|c| c.program),
            first_bad.map(|p| p.to_string()),
            "{t}"
        );
    }
}

#[test]
fn flip_selector_counterexample() {
    let lab = Lab::default();
    let r = verify(&lab, &FlipSelector, 7).unwrap();
    let cx = r.counterexample.unwrap();
    assert_eq!(cx.program, "1 0 S 1");
    assert_eq!(cx.image, "2 0 S 1");
    assert_eq!(cx.program_table.to_string(), "[0,0,0,0,0]");
    assert_eq!(cx.image_table.to_string(), "[1,1,1,1,1]");
}

/// Every constructor maps every program up to six tokens to a program
/// that survives a text round trip.
#[test]
fn application_is_total() {
    let lab = Lab::default();
    let ts = flat(lab.modulus());
    for p in lab.enumeration().iter_upto(6).unwrap() {
        for t in &ts {
            let q = t.apply(&lab, &p);
            assert_eq!(lab.parse(&q.to_string()).unwrap(), q, "{t} on {p}");
            assert_eq!(t.apply(&lab, &p), q);
        }
    }
}

#[test]
fn normative_encodings() {
    let bits = |t: Transformation| t.encode().to_string();
    assert_eq!(bits(Id), "00000");
    assert_eq!(bits(StripComment), "00001");
    assert_eq!(bits(AppendCommentDigit(7)), "000100111");
    assert_eq!(bits(CommuteAdd), "00011");
    assert_eq!(bits(CommuteMul), "00100");
    assert_eq!(bits(FoldConst), "00101");
    assert_eq!(bits(AddZeroElim), "00110");
    assert_eq!(bits(AddZeroIntro), "00111");
    assert_eq!(bits(MulOneElim), "01000");
    assert_eq!(bits(MulOneIntro), "01001");
    assert_eq!(bits(UnfoldConstAdd(3)), "010100011");
    assert_eq!(bits(ClearInactive), "01100");
    assert_eq!(bits(FlipSelector), "01101");
    assert_eq!(bits(Transformation::inv_dovetail(StripComment)), "0111000001");
    assert_eq!(bits(AppendInactiveToken(Token::Digit(0))).len(), 9);
}

#[test]
fn encode_decode_every_term() {
    let m = Modulus::DEFAULT;
    let mut seen = std::collections::HashSet::new();
    for t in every_term(m) {
        let b = t.encode();
        assert_eq!(Transformation::decode(&b).unwrap(), t);
        assert!(seen.insert(b.clone()), "encodings are distinct");
        let c = t.complexity();
        assert_eq!(c.0 == 0, t == Id);
        if t != Id {
            assert_eq!(c.0 as usize, b.len());
        }
        if let InvDovetail(inner) = &t {
            assert_eq!(c.0, 5 + inner.raw_len());
        }
        assert_eq!(t.to_string().parse::<Transformation>().unwrap(), t);
    }
    assert_eq!(INACTIVE_TOKENS.len(), 15);
}

#[test]
fn malformed_encodings() {
    for bad in ["", "0000", "000100", "0001010101", "01111", "11111", "000000", "01110"] {
        let bits: Bits = bad.parse().unwrap();
        assert!(
            matches!(Transformation::decode(&bits), Err(Error::MalformedEncoding { .. })),
            "`{bad}` should not decode"
        );
    }
}

#[test]
fn rewrite_examples() {
    let lab = Lab::default();
    let run = |t: Transformation, s: &str| t.apply(&lab, &lab.parse(s).unwrap()).to_string();
    assert_eq!(run(StripComment, "# 3 x"), "x");
    assert_eq!(run(StripComment, "x"), "x");
    assert_eq!(run(AppendCommentDigit(0), "x"), "# 0 x");
    assert_eq!(run(AppendCommentDigit(5), "# 0 # 3"), "# 0 5 # 3");
    assert_eq!(run(CommuteAdd, "( ( x + 1 ) + 2 )"), "( 2 + ( x + 1 ) )");
    assert_eq!(run(FoldConst, "( ( 1 + 2 ) * ( 3 + 4 ) )"), "( 3 * ( 3 + 4 ) )");
    assert_eq!(run(FoldConst, "( 3 + 4 )"), "2");
    assert_eq!(run(UnfoldConstAdd(2), "3"), "( 2 + 1 )");
    assert_eq!(run(UnfoldConstAdd(4), "( x * 1 )"), "( x * ( 4 + 2 ) )");
    assert_eq!(run(AddZeroIntro, "# 1 x"), "# 1 ( x + 0 )");
    assert_eq!(run(MulOneElim, "( ( x * 1 ) + 0 )"), "( x + 0 )");
    assert_eq!(run(ClearInactive, "1 x S ( 0"), "1 x S");
    assert_eq!(run(FlipSelector, "1 0 S 1"), "2 0 S 1");
    let p = lab.parse("# 3 x").unwrap();
    let n = lab.index_of(&p).unwrap().0 + 1;
    assert_eq!(run(Transformation::inv_dovetail(StripComment), &format!("# {n} x")), "# 3 x");
}

/// Inverse plans on a small universe: exact recovery, semantics kept at
/// every intermediate, and the step bound.
#[test]
fn inverse_plans_small_universe() {
    let lab = Lab::default();
    let m = lab.modulus();
    let cat = Catalog::base(m);
    for p in lab.enumeration().iter_upto(4).unwrap() {
        let want = common::table(&common::chars(&p.to_string()), 5);
        for s in cat.transformations() {
            let plan = build_inverse_chain(&lab, s, &p).unwrap();
            assert_eq!(plan.n, lab.index_of(&p).unwrap().0 + 1);
            let mut cur = plan.image.clone();
            for step in &plan.steps {
                cur = step.apply(&lab, &cur);
                assert_eq!(common::table(&common::chars(&cur.to_string()), 5), want);
            }
            assert_eq!(cur, p, "{s} on {p}");
            assert!(plan.max_step_complexity().0 <= 9.max(5 + s.raw_len()));
        }
    }
}

#[test]
fn shipped_catalogs() {
    let lab = Lab::default();
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("catalogs");
    let text = std::fs::read_to_string(dir.join("base.cat")).unwrap();
    let base = Catalog::base(lab.modulus());
    assert_eq!(text, base.to_text());
    assert_eq!(Catalog::load(&dir.join("base.cat"), &lab, false).unwrap(), base);
    let err = Catalog::load(&dir.join("candidates.cat"), &lab, true).unwrap_err();
    assert!(matches!(err, Error::VerificationFailed { ref entry, .. } if entry == "FlipSelector"), "{err}");
}

#[test]
fn catalog_text_round_trip_and_errors() {
    let lab = Lab::default();
    let base = Catalog::base(lab.modulus());
    let path = std::env::temp_dir().join(format!("im-test-{}.cat", std::process::id()));
    base.save(&path).unwrap();
    let back = Catalog::load(&path, &lab, false).unwrap();
    assert_eq!(back, base);
    assert_eq!(back.to_text(), base.to_text());
    std::fs::remove_file(&path).ok();

    let err = Catalog::parse_text("# name: x\nStripComment\nFrobnicate\n").unwrap_err();
    assert!(matches!(err, Error::MalformedCatalog { line: 3, .. }), "{err}");
    let err = Catalog::parse_text("StripComment\nStripComment\n").unwrap_err();
    assert!(matches!(err, Error::MalformedCatalog { line: 2, .. }));
    let c = Catalog::parse_text("# bound: 3\nInvDovetail (StripComment)\n").unwrap();
    assert!(c.contains(&Id));
    let e: &CatalogEntry = &c.entries()[1];
    assert_eq!((e.complexity, e.bound), (ComplexityBits(10), 3));
}
