use std::fmt;

use serde::{Deserialize, Serialize};

use super::token::{tokenize, Token};
use crate::{Error, Result};

/// The modulus `m` of the value domain `Z_m`, restricted to `2..=16`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Modulus(u8);

impl Modulus {
    pub const DEFAULT: Modulus = Modulus(5);

    pub fn new(m: u32) -> Result<Self> {
        if (2..=16).contains(&m) {
            Ok(Modulus(m as u8))
        } else {
            Err(Error::InvalidModulus(m))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    /// Constants that can be written as a single digit token: `0..min(m, 10)`.
    pub fn literal_limit(self) -> u8 {
        self.0.min(10)
    }

    pub fn is_literal(self, c: u8) -> bool {
        c < self.literal_limit()
    }
}

impl Default for Modulus {
    fn default() -> Self {
        Modulus::DEFAULT
    }
}

impl TryFrom<u32> for Modulus {
    type Error = Error;
    fn try_from(m: u32) -> Result<Self> {
        Modulus::new(m)
    }
}

impl From<Modulus> for u32 {
    fn from(m: Modulus) -> u32 {
        m.0 as u32
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    Add,
    Mul,
}

impl Op {
    pub fn token(self) -> Token {
        match self {
            Op::Add => Token::Plus,
            Op::Mul => Token::Star,
        }
    }

    pub fn apply(self, a: u8, b: u8, m: Modulus) -> u8 {
        let m = m.get() as u32;
        let (a, b) = (a as u32, b as u32);
        (match self {
            Op::Add => (a + b) % m,
            Op::Mul => (a * b) % m,
        }) as u8
    }
}

/// Arithmetic expression over one variable `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Var,
    Const(u8),
    Bin(Box<Expr>, Op, Box<Expr>),
}

impl Expr {
    pub fn bin(left: Expr, op: Op, right: Expr) -> Expr {
        Expr::Bin(Box::new(left), op, Box::new(right))
    }

    pub fn token_count(&self) -> usize {
        match self {
            Expr::Var | Expr::Const(_) => 1,
            Expr::Bin(l, _, r) => l.token_count() + r.token_count() + 3,
        }
    }

    pub fn write_tokens(&self, out: &mut Vec<Token>) {
        match self {
            Expr::Var => out.push(Token::Var),
            Expr::Const(c) => out.push(Token::Digit(*c)),
            Expr::Bin(l, op, r) => {
                out.push(Token::Open);
                l.write_tokens(out);
                out.push(op.token());
                r.write_tokens(out);
                out.push(Token::Close);
            }
        }
    }

    pub fn tokens(&self) -> Vec<Token> {
        let mut out = Vec::with_capacity(self.token_count());
        self.write_tokens(&mut out);
        out
    }

    /// Parses a complete token slice as an expression. `offset` is only used
    /// to report positions relative to the whole program.
    pub fn from_tokens(tokens: &[Token], m: Modulus, offset: usize) -> Result<Expr> {
        let mut pos = 0;
        let e = parse_expr(tokens, &mut pos, m, offset)?;
        if pos != tokens.len() {
            return Err(Error::malformed(offset + pos, "trailing tokens after expression"));
        }
        Ok(e)
    }

    pub fn evaluate(&self, x: u8, m: Modulus) -> u8 {
        match self {
            Expr::Var => x,
            Expr::Const(c) => *c,
            Expr::Bin(l, op, r) => op.apply(l.evaluate(x, m), r.evaluate(x, m), m),
        }
    }
}

fn parse_expr(tokens: &[Token], pos: &mut usize, m: Modulus, offset: usize) -> Result<Expr> {
    let at = *pos;
    let Some(&tok) = tokens.get(at) else {
        return Err(Error::malformed(offset + at, "expected an expression"));
    };
    *pos += 1;
    match tok {
        Token::Var => Ok(Expr::Var),
        Token::Digit(c) if m.is_literal(c) => Ok(Expr::Const(c)),
        Token::Digit(c) => Err(Error::malformed(
            offset + at,
            format!("constant {c} is not below the modulus {m}"),
        )),
        Token::Open => {
            let left = parse_expr(tokens, pos, m, offset)?;
            let op = match tokens.get(*pos) {
                Some(Token::Plus) => Op::Add,
                Some(Token::Star) => Op::Mul,
                _ => return Err(Error::malformed(offset + *pos, "expected `+` or `*`")),
            };
            *pos += 1;
            let right = parse_expr(tokens, pos, m, offset)?;
            if tokens.get(*pos) != Some(&Token::Close) {
                return Err(Error::malformed(offset + *pos, "expected `)`"));
            }
            *pos += 1;
            Ok(Expr::bin(left, op, right))
        }
        other => Err(Error::malformed(
            offset + at,
            format!("unexpected `{other}` where an expression was expected"),
        )),
    }
}

/// Which half of a split program runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Selector {
    First,
    Second,
}

impl Selector {
    pub fn token(self) -> Token {
        match self {
            Selector::First => Token::Digit(1),
            Selector::Second => Token::Digit(2),
        }
    }

    pub fn flipped(self) -> Selector {
        match self {
            Selector::First => Selector::Second,
            Selector::Second => Selector::First,
        }
    }
}

/// `1 <active> S <inactive>` or `2 <inactive> S <active>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Split {
    pub selector: Selector,
    pub active: Expr,
    pub inactive: Vec<Token>,
}

impl Split {
    /// Tokens before `S` (`run1`) and after it (`run2`).
    pub fn runs(&self) -> (Vec<Token>, Vec<Token>) {
        match self.selector {
            Selector::First => (self.active.tokens(), self.inactive.clone()),
            Selector::Second => (self.inactive.clone(), self.active.tokens()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Body {
    Plain(Expr),
    Split(Split),
}

impl Body {
    /// The expression that actually runs.
    pub fn active(&self) -> &Expr {
        match self {
            Body::Plain(e) => e,
            Body::Split(s) => &s.active,
        }
    }

    pub fn active_mut(&mut self) -> &mut Expr {
        match self {
            Body::Plain(e) => e,
            Body::Split(s) => &mut s.active,
        }
    }

    fn starts_with_digit(&self) -> bool {
        match self {
            Body::Plain(Expr::Const(_)) | Body::Split(_) => true,
            Body::Plain(_) => false,
        }
    }

    pub fn token_count(&self) -> usize {
        match self {
            Body::Plain(e) => e.token_count(),
            Body::Split(s) => 2 + s.active.token_count() + s.inactive.len(),
        }
    }

    pub fn write_tokens(&self, out: &mut Vec<Token>) {
        match self {
            Body::Plain(e) => e.write_tokens(out),
            Body::Split(s) => {
                out.push(s.selector.token());
                match s.selector {
                    Selector::First => {
                        s.active.write_tokens(out);
                        out.push(Token::Sep);
                        out.extend_from_slice(&s.inactive);
                    }
                    Selector::Second => {
                        out.extend_from_slice(&s.inactive);
                        out.push(Token::Sep);
                        s.active.write_tokens(out);
                    }
                }
            }
        }
    }
}

/// A comment: a non-empty decimal numeral, leading zeros allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Numeral(String);

impl Numeral {
    pub fn new(digits: impl Into<String>) -> Result<Self> {
        let digits = digits.into();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::malformed(0, format!("`{digits}` is not a decimal numeral")));
        }
        Ok(Numeral(digits))
    }

    pub fn digits(&self) -> &str {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, d: u8) {
        debug_assert!(d < 10);
        self.0.push((b'0' + d) as char);
    }

    /// Numeric value, saturating at `u64::MAX`.
    pub fn value(&self) -> u64 {
        self.0.bytes().fold(0u64, |acc, b| {
            acc.saturating_mul(10).saturating_add((b - b'0') as u64)
        })
    }
}

impl fmt::Display for Numeral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A program of the toy language: an optional comment numeral and a body.
///
/// Canonical text is single-space-separated tokens. A comment is `#` followed
/// by its digits; when the body itself begins with a digit (a constant or a
/// selector) a second `#` closes the comment so the digit run stays
/// unambiguous, e.g. `# 1 2 # 3` is comment `12` on the constant `3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Program {
    pub comment: Option<Numeral>,
    pub body: Body,
}

/// Canonical enumeration order: shorter first, then token order.
impl Ord for Program {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.token_count()
            .cmp(&other.token_count())
            .then_with(|| self.tokens().cmp(&other.tokens()))
    }
}

impl PartialOrd for Program {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Program {
    pub fn plain(e: Expr) -> Program {
        Program {
            comment: None,
            body: Body::Plain(e),
        }
    }

    pub fn parse(text: &str, m: Modulus) -> Result<Program> {
        Program::from_tokens(&tokenize(text)?, m)
    }

    pub fn from_tokens(tokens: &[Token], m: Modulus) -> Result<Program> {
        let mut pos = 0;
        let mut comment = None;
        if tokens.first() == Some(&Token::Hash) {
            pos = 1;
            let mut digits = String::new();
            while let Some(Token::Digit(d)) = tokens.get(pos) {
                digits.push((b'0' + d) as char);
                pos += 1;
            }
            if digits.is_empty() {
                return Err(Error::malformed(pos, "comment `#` must be followed by digits"));
            }
            if tokens.get(pos) == Some(&Token::Hash) {
                if !matches!(tokens.get(pos + 1), Some(Token::Digit(_))) {
                    return Err(Error::malformed(
                        pos,
                        "a closing `#` is only written before a body that starts with a digit",
                    ));
                }
                pos += 1;
            }
            comment = Some(Numeral(digits));
        }
        let body = parse_body(&tokens[pos..], m, pos)?;
        Ok(Program { comment, body })
    }

    pub fn token_count(&self) -> usize {
        let comment = match &self.comment {
            None => 0,
            Some(n) => 1 + n.len() + usize::from(self.body.starts_with_digit()),
        };
        comment + self.body.token_count()
    }

    pub fn write_tokens(&self, out: &mut Vec<Token>) {
        if let Some(n) = &self.comment {
            out.push(Token::Hash);
            out.extend(n.0.bytes().map(|b| Token::Digit(b - b'0')));
            if self.body.starts_with_digit() {
                out.push(Token::Hash);
            }
        }
        self.body.write_tokens(out);
    }

    pub fn tokens(&self) -> Vec<Token> {
        let mut out = Vec::with_capacity(self.token_count());
        self.write_tokens(&mut out);
        out
    }

    /// Token codes of the canonical serialization; the enumeration sorts on these.
    pub fn codes(&self) -> Vec<u8> {
        self.tokens().into_iter().map(Token::code).collect()
    }

    /// The same program with its comment removed.
    pub fn without_comment(&self) -> Program {
        Program {
            comment: None,
            body: self.body.clone(),
        }
    }

    pub fn with_comment(&self, comment: Numeral) -> Program {
        Program {
            comment: Some(comment),
            body: self.body.clone(),
        }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.tokens().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

fn parse_body(tokens: &[Token], m: Modulus, offset: usize) -> Result<Body> {
    if tokens.is_empty() {
        return Err(Error::malformed(offset, "missing program body"));
    }
    if let Some(i) = tokens.iter().position(|&t| t == Token::Hash) {
        return Err(Error::malformed(offset + i, "stray `#`"));
    }
    let seps: Vec<usize> = tokens
        .iter()
        .enumerate()
        .filter(|(_, &t)| t == Token::Sep)
        .map(|(i, _)| i)
        .collect();
    match seps.as_slice() {
        [] => Ok(Body::Plain(Expr::from_tokens(tokens, m, offset)?)),
        [s] => {
            let selector = match tokens[0] {
                Token::Digit(1) => Selector::First,
                Token::Digit(2) => Selector::Second,
                _ => {
                    return Err(Error::malformed(
                        offset,
                        "a program containing `S` must start with selector `1` or `2`",
                    ))
                }
            };
            if *s == 0 {
                return Err(Error::malformed(offset, "missing selector before `S`"));
            }
            let run1 = &tokens[1..*s];
            let run2 = &tokens[s + 1..];
            let (active, inactive) = match selector {
                Selector::First => (Expr::from_tokens(run1, m, offset + 1)?, run2.to_vec()),
                Selector::Second => (Expr::from_tokens(run2, m, offset + s + 1)?, run1.to_vec()),
            };
            Ok(Body::Split(Split {
                selector,
                active,
                inactive,
            }))
        }
        [_, second, ..] => Err(Error::malformed(offset + second, "stray `S`")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m5() -> Modulus {
        Modulus::DEFAULT
    }

    fn p(text: &str) -> Program {
        Program::parse(text, m5()).unwrap()
    }

    #[test]
    fn parses_plain_and_commented() {
        assert_eq!(
            p("( x + 1 )"),
            Program::plain(Expr::bin(Expr::Var, Op::Add, Expr::Const(1)))
        );
        let c = p("# 3 x");
        assert_eq!(c.comment.as_ref().unwrap().digits(), "3");
        assert_eq!(c.body, Body::Plain(Expr::Var));
    }

    #[test]
    fn inactive_run_need_not_parse() {
        let s = p("1 x S ) (");
        let Body::Split(split) = &s.body else { panic!() };
        assert_eq!(split.selector, Selector::First);
        assert_eq!(split.active, Expr::Var);
        assert_eq!(split.inactive, vec![Token::Close, Token::Open]);
        let (run1, run2) = split.runs();
        assert_eq!(run1, vec![Token::Var]);
        assert_eq!(run2, vec![Token::Close, Token::Open]);
    }

    #[test]
    fn canonical_serialization() {
        let prog = Program::plain(Expr::Var).with_comment(Numeral::new("3").unwrap());
        assert_eq!(prog.to_string(), "# 3 x");
        let split = Program {
            comment: None,
            body: Body::Split(Split {
                selector: Selector::Second,
                active: Expr::Const(0),
                inactive: vec![],
            }),
        };
        assert_eq!(split.to_string(), "2 S 0");
        assert_eq!(p("(x*x)").to_string(), "( x * x )");
        assert_eq!(p("# 42 ( x + x )").to_string(), "# 4 2 ( x + x )");
    }

    #[test]
    fn comment_before_digit_body_is_closed() {
        let prog = p("# 1 2 # 3");
        assert_eq!(prog.comment.as_ref().unwrap().digits(), "12");
        assert_eq!(prog.body, Body::Plain(Expr::Const(3)));
        assert_eq!(prog.token_count(), 5);
        let split = p("# 7 # 1 x S");
        assert_eq!(split.to_string(), "# 7 # 1 x S");
        // without the closing `#` the digits are all comment
        assert!(Program::parse("# 1 2", m5()).is_err());
        // a closing `#` before a non-digit body is not canonical
        assert!(Program::parse("# 1 # x", m5()).is_err());
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "", "#", "# x", "( x + 1", "x x", "5", "( x + 7 )", "x S", "1 x S S", "3 x S",
            "1 ( S x", "2 x S ( x", "x #", "1 x S #", "S x", "( x - 1 )",
        ] {
            assert!(Program::parse(bad, m5()).is_err(), "accepted `{bad}`");
        }
    }

    #[test]
    fn error_positions_point_at_offender() {
        match Program::parse("1 x S S", m5()) {
            Err(Error::MalformedProgram { position, .. }) => assert_eq!(position, 3),
            other => panic!("{other:?}"),
        }
        match Program::parse("# 3 ( x + 9 )", m5()) {
            Err(Error::MalformedProgram { position, .. }) => assert_eq!(position, 5),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn larger_moduli_allow_more_literals() {
        let m = Modulus::new(12).unwrap();
        assert!(Program::parse("( x + 9 )", m).is_ok());
        assert_eq!(m.literal_limit(), 10);
        assert!(Modulus::new(1).is_err());
        assert!(Modulus::new(17).is_err());
    }

    #[test]
    fn numeral_value_saturates() {
        assert_eq!(Numeral::new("007").unwrap().value(), 7);
        assert_eq!(Numeral::new("9".repeat(40)).unwrap().value(), u64::MAX);
        assert!(Numeral::new("").is_err());
        assert!(Numeral::new("1a").is_err());
    }
}
