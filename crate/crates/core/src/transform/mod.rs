//! The interpreter space: total program transformations, their encoding and
//! cost, exhaustive verification, the inverse-chain construction and catalogs.

pub mod catalog;
pub mod encoding;
pub mod inverse;
mod term;
pub mod verify;

use crate::lab::Lab;
use crate::lang::{Body, Expr, Numeral, Op, Program, Token};

pub use catalog::{Catalog, CatalogEntry};
pub use encoding::{Bits, ComplexityBits};
pub use inverse::{build_inverse_chain, undo_step, InverseChainPlan};
pub use verify::{verify, verify_all, Verdict, VerificationReport};

/// A total transformation of programs.
///
/// Rewrite constructors act once, at the leftmost-outermost matching node of
/// the active expression, and leave the program unchanged when nothing
/// matches. Comment and inactive-run edits never touch the active expression.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Transformation {
    Id,
    StripComment,
    AppendCommentDigit(u8),
    /// `( A + B )` → `( B + A )`
    CommuteAdd,
    /// `( A * B )` → `( B * A )`
    CommuteMul,
    /// `( c1 op c2 )` → the literal `c1 op c2`
    FoldConst,
    /// `( A + 0 )` → `A`
    AddZeroElim,
    /// `e` → `( e + 0 )` at the root
    AddZeroIntro,
    /// `( A * 1 )` → `A`
    MulOneElim,
    /// `e` → `( e * 1 )` at the root
    MulOneIntro,
    /// constant `c` → `( a + b )` with `b = c - a mod m`
    UnfoldConstAdd(u8),
    AppendInactiveToken(Token),
    ClearInactive,
    /// Swaps the selector digit. Not an interpreter; shipped as the
    /// canonical invalid candidate.
    FlipSelector,
    /// Reads the comment numeral `n`, scans the first `n` enumerated
    /// programs for those the inner interpreter maps onto the comment-free
    /// body, and outputs the last one found; echoes its input otherwise.
    InvDovetail(Box<Transformation>),
}

impl Transformation {
    pub fn inv_dovetail(inner: Transformation) -> Transformation {
        Transformation::InvDovetail(Box::new(inner))
    }

    /// Whether the constructor parameters are in range for the encoding.
    pub fn is_well_formed(&self) -> bool {
        match self {
            Transformation::AppendCommentDigit(d) | Transformation::UnfoldConstAdd(d) => *d < 10,
            Transformation::AppendInactiveToken(t) => t.is_inactive_allowed(),
            Transformation::InvDovetail(inner) => inner.is_well_formed(),
            _ => true,
        }
    }

    pub fn apply(&self, lab: &Lab, p: &Program) -> Program {
        let m = lab.modulus();
        match self {
            Transformation::Id => p.clone(),
            Transformation::StripComment => p.without_comment(),
            Transformation::AppendCommentDigit(d) => {
                let mut out = p.clone();
                match &mut out.comment {
                    Some(n) => n.push(*d),
                    None => out.comment = Some(Numeral::new(d.to_string()).unwrap()),
                }
                out
            }
            Transformation::CommuteAdd => rewrite(p, |e| match e {
                Expr::Bin(l, Op::Add, r) => Some(Expr::Bin(r.clone(), Op::Add, l.clone())),
                _ => None,
            }),
            Transformation::CommuteMul => rewrite(p, |e| match e {
                Expr::Bin(l, Op::Mul, r) => Some(Expr::Bin(r.clone(), Op::Mul, l.clone())),
                _ => None,
            }),
            Transformation::FoldConst => rewrite(p, |e| match e {
                Expr::Bin(l, op, r) => match (&**l, &**r) {
                    (Expr::Const(a), Expr::Const(b)) => {
                        let v = op.apply(*a, *b, m);
                        m.is_literal(v).then_some(Expr::Const(v))
                    }
                    _ => None,
                },
                _ => None,
            }),
            Transformation::AddZeroElim => rewrite(p, |e| match e {
                Expr::Bin(l, Op::Add, r) if **r == Expr::Const(0) => Some((**l).clone()),
                _ => None,
            }),
            Transformation::MulOneElim => rewrite(p, |e| match e {
                Expr::Bin(l, Op::Mul, r) if **r == Expr::Const(1) => Some((**l).clone()),
                _ => None,
            }),
            Transformation::AddZeroIntro => wrap_root(p, Op::Add, 0),
            Transformation::MulOneIntro => wrap_root(p, Op::Mul, 1),
            Transformation::UnfoldConstAdd(a) => {
                let a = *a;
                if !m.is_literal(a) {
                    return p.clone();
                }
                rewrite(p, |e| match e {
                    Expr::Const(c) => {
                        let b = (*c as u32 + m.get() as u32 - a as u32) % m.get() as u32;
                        let b = b as u8;
                        m.is_literal(b)
                            .then(|| Expr::bin(Expr::Const(a), Op::Add, Expr::Const(b)))
                    }
                    _ => None,
                })
            }
            Transformation::AppendInactiveToken(t) => {
                let mut out = p.clone();
                if let Body::Split(s) = &mut out.body {
                    if t.is_inactive_allowed() {
                        s.inactive.push(*t);
                    }
                }
                out
            }
            Transformation::ClearInactive => {
                let mut out = p.clone();
                if let Body::Split(s) = &mut out.body {
                    s.inactive.clear();
                }
                out
            }
            Transformation::FlipSelector => flip_selector(p, lab),
            Transformation::InvDovetail(inner) => {
                let Some(n) = &p.comment else {
                    return p.clone();
                };
                let body = p.without_comment();
                match lab.last_preimage_below(inner, n.value(), &body) {
                    Some(k) => lab.enumeration().program_at_unchecked(k),
                    None => p.clone(),
                }
            }
        }
    }

    /// Runs a sequence of transformations left to right.
    pub fn apply_all<'a>(
        steps: impl IntoIterator<Item = &'a Transformation>,
        lab: &Lab,
        p: &Program,
    ) -> Program {
        steps
            .into_iter()
            .fold(p.clone(), |acc, s| s.apply(lab, &acc))
    }
}

fn rewrite(p: &Program, rule: impl Fn(&Expr) -> Option<Expr>) -> Program {
    let mut out = p.clone();
    rewrite_first(out.body.active_mut(), &rule);
    out
}

/// Rewrites the first match in preorder (leftmost-outermost).
fn rewrite_first(e: &mut Expr, rule: &impl Fn(&Expr) -> Option<Expr>) -> bool {
    if let Some(new) = rule(e) {
        *e = new;
        return true;
    }
    match e {
        Expr::Bin(l, _, r) => rewrite_first(l, rule) || rewrite_first(r, rule),
        _ => false,
    }
}

fn wrap_root(p: &Program, op: Op, unit: u8) -> Program {
    let mut out = p.clone();
    let e = out.body.active_mut();
    let inner = std::mem::replace(e, Expr::Var);
    *e = Expr::bin(inner, op, Expr::Const(unit));
    out
}

/// Swaps `1`/`2`. The runs stay where they are, so the old inactive run
/// becomes the active one; if it does not parse the input is returned as is.
fn flip_selector(p: &Program, lab: &Lab) -> Program {
    let Body::Split(s) = &p.body else {
        return p.clone();
    };
    let mut flipped = s.clone();
    flipped.selector = s.selector.flipped();
    let Ok(active) = Expr::from_tokens(&s.inactive, lab.modulus(), 0) else {
        return p.clone();
    };
    flipped.inactive = s.active.tokens();
    flipped.active = active;
    Program {
        comment: p.comment.clone(),
        body: Body::Split(flipped),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Transformation::*;

    fn lab() -> Lab {
        Lab::default()
    }

    fn run(t: Transformation, text: &str) -> String {
        let lab = lab();
        t.apply(&lab, &lab.parse(text).unwrap()).to_string()
    }

    #[test]
    fn comment_edits() {
        assert_eq!(run(StripComment, "# 3 x"), "x");
        assert_eq!(run(StripComment, "x"), "x");
        assert_eq!(run(AppendCommentDigit(7), "x"), "# 7 x");
        assert_eq!(run(AppendCommentDigit(0), "# 3 x"), "# 3 0 x");
        assert_eq!(run(AppendCommentDigit(4), "1 x S"), "# 4 # 1 x S");
        assert_eq!(run(AppendCommentDigit(4), "2"), "# 4 # 2");
    }

    #[test]
    fn rewrites_fire_leftmost_outermost_once() {
        assert_eq!(run(CommuteAdd, "( ( x + 1 ) + 2 )"), "( 2 + ( x + 1 ) )");
        assert_eq!(run(CommuteAdd, "( ( x + 1 ) * ( 2 + 3 ) )"), "( ( 1 + x ) * ( 2 + 3 ) )");
        assert_eq!(run(CommuteMul, "( x + 1 )"), "( x + 1 )");
        assert_eq!(run(FoldConst, "( ( 2 * 3 ) + ( 4 + 4 ) )"), "( 1 + ( 4 + 4 ) )");
        assert_eq!(run(FoldConst, "# 9 ( 2 + 4 )"), "# 9 # 1");
        assert_eq!(run(AddZeroElim, "( ( x + 0 ) + 0 )"), "( x + 0 )");
        assert_eq!(run(AddZeroElim, "( 0 + x )"), "( 0 + x )");
        assert_eq!(run(MulOneElim, "( 1 * ( x * 1 ) )"), "( 1 * x )");
        assert_eq!(run(AddZeroIntro, "x"), "( x + 0 )");
        assert_eq!(run(MulOneIntro, "1 x S 5"), "1 ( x * 1 ) S 5");
    }

    #[test]
    fn unfold_constant() {
        assert_eq!(run(UnfoldConstAdd(3), "( x + 1 )"), "( x + ( 3 + 3 ) )");
        assert_eq!(run(UnfoldConstAdd(0), "4"), "( 0 + 4 )");
        assert_eq!(run(UnfoldConstAdd(2), "x"), "x");
        // a >= m is never a match
        assert_eq!(run(UnfoldConstAdd(7), "3"), "3");
    }

    #[test]
    fn inactive_edits_leave_plain_bodies_alone() {
        assert_eq!(run(AppendInactiveToken(Token::Open), "1 x S"), "1 x S (");
        assert_eq!(run(AppendInactiveToken(Token::Var), "2 0 S x"), "2 0 x S x");
        assert_eq!(run(AppendInactiveToken(Token::Var), "x"), "x");
        assert_eq!(run(ClearInactive, "2 ( ( S 3"), "2 S 3");
        assert_eq!(run(ClearInactive, "# 5 x"), "# 5 x");
    }

    #[test]
    fn flip_selector_swaps_when_possible() {
        assert_eq!(run(FlipSelector, "1 0 S 1"), "2 0 S 1");
        assert_eq!(run(FlipSelector, "2 0 S 1"), "1 0 S 1");
        assert_eq!(run(FlipSelector, "1 0 S ) ("), "1 0 S ) (");
        assert_eq!(run(FlipSelector, "1 0 S"), "1 0 S");
    }

    #[test]
    fn inv_dovetail_recovers_last_preimage() {
        let lab = lab();
        let target = lab.parse("# 3 x").unwrap();
        let n = lab.index_of(&target).unwrap().0 + 1;
        let input = lab.parse(&format!("# {n} x")).unwrap();
        let out = Transformation::inv_dovetail(StripComment).apply(&lab, &input);
        assert_eq!(out, target);
        // no comment: echo
        assert_eq!(run(Transformation::inv_dovetail(StripComment), "x"), "x");
        // n = 0 scans nothing
        assert_eq!(run(Transformation::inv_dovetail(Id), "# 0 x"), "# 0 x");
    }

    #[test]
    fn inv_dovetail_matches_naive_scan() {
        let lab = lab();
        let inner = AddZeroElim;
        let t = Transformation::inv_dovetail(inner.clone());
        for n in [0u64, 1, 5, 6, 40, 360, 1000] {
            for body in ["x", "3", "( x + 0 )", "1 x S"] {
                let p = lab.parse(&format!("# {n} {}{body}", if body.starts_with(|c: char| c.is_ascii_digit()) { "# " } else { "" })).unwrap();
                let b = p.without_comment();
                let naive = (0..n)
                    .rev()
                    .map(|k| lab.enumeration().program_at_unchecked(k))
                    .find(|q| inner.apply(&lab, q).without_comment() == b)
                    .unwrap_or_else(|| p.clone());
                assert_eq!(t.apply(&lab, &p), naive, "n={n} body={body}");
            }
        }
    }
}
