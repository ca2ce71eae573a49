//! Textual terms: `StripComment`, `AppendCommentDigit 7`,
//! `AppendInactiveToken (`, `InvDovetail (StripComment)`.

use std::fmt;
use std::str::FromStr;

use super::Transformation;
use crate::lang::Token;
use crate::Error;

impl Transformation {
    pub fn name(&self) -> &'static str {
        use Transformation::*;
        match self {
            Id => "Id",
            StripComment => "StripComment",
            AppendCommentDigit(_) => "AppendCommentDigit",
            CommuteAdd => "CommuteAdd",
            CommuteMul => "CommuteMul",
            FoldConst => "FoldConst",
            AddZeroElim => "AddZeroElim",
            AddZeroIntro => "AddZeroIntro",
            MulOneElim => "MulOneElim",
            MulOneIntro => "MulOneIntro",
            UnfoldConstAdd(_) => "UnfoldConstAdd",
            AppendInactiveToken(_) => "AppendInactiveToken",
            ClearInactive => "ClearInactive",
            FlipSelector => "FlipSelector",
            InvDovetail(_) => "InvDovetail",
        }
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Transformation::AppendCommentDigit(d) | Transformation::UnfoldConstAdd(d) => {
                write!(f, "{} {d}", self.name())
            }
            Transformation::AppendInactiveToken(t) => write!(f, "{} {t}", self.name()),
            Transformation::InvDovetail(inner) => write!(f, "InvDovetail ({inner})"),
            _ => f.write_str(self.name()),
        }
    }
}

#[derive(Debug, PartialEq)]
enum Lexeme<'a> {
    Word(&'a str),
    Char(char),
}

fn lex(s: &str) -> Vec<Lexeme<'_>> {
    let mut out = Vec::new();
    let mut rest = s;
    while let Some(c) = rest.chars().next() {
        if c.is_whitespace() {
            rest = &rest[c.len_utf8()..];
        } else if c.is_ascii_alphabetic() {
            let end = rest
                .find(|ch: char| !ch.is_ascii_alphabetic())
                .unwrap_or(rest.len());
            out.push(Lexeme::Word(&rest[..end]));
            rest = &rest[end..];
        } else {
            out.push(Lexeme::Char(c));
            rest = &rest[c.len_utf8()..];
        }
    }
    out
}

struct TermParser<'a> {
    lexemes: Vec<Lexeme<'a>>,
    pos: usize,
    text: &'a str,
}

impl<'a> TermParser<'a> {
    fn err(&self, reason: impl Into<String>) -> Error {
        Error::MalformedTransformation {
            term: self.text.to_string(),
            reason: reason.into(),
        }
    }

    fn next(&mut self) -> Option<&Lexeme<'a>> {
        let l = self.lexemes.get(self.pos);
        self.pos += 1;
        l
    }

    fn digit(&mut self) -> Result<u8, Error> {
        match self.next() {
            Some(Lexeme::Char(c)) if c.is_ascii_digit() => Ok(*c as u8 - b'0'),
            _ => Err(self.err("expected a single digit parameter")),
        }
    }

    fn token(&mut self) -> Result<Token, Error> {
        let t = match self.next() {
            Some(Lexeme::Char(c)) => Token::from_char(*c),
            Some(Lexeme::Word(w)) if *w == "x" => Some(Token::Var),
            _ => None,
        };
        match t {
            Some(t) if t.is_inactive_allowed() => Ok(t),
            _ => Err(self.err("expected an inactive-run token (any token but `S` and `#`)")),
        }
    }

    fn term(&mut self) -> Result<Transformation, Error> {
        use Transformation::*;
        let name = match self.next() {
            Some(Lexeme::Word(w)) => *w,
            _ => return Err(self.err("expected a constructor name")),
        };
        Ok(match name {
            "Id" => Id,
            "StripComment" => StripComment,
            "AppendCommentDigit" => AppendCommentDigit(self.digit()?),
            "CommuteAdd" => CommuteAdd,
            "CommuteMul" => CommuteMul,
            "FoldConst" => FoldConst,
            "AddZeroElim" => AddZeroElim,
            "AddZeroIntro" => AddZeroIntro,
            "MulOneElim" => MulOneElim,
            "MulOneIntro" => MulOneIntro,
            "UnfoldConstAdd" => UnfoldConstAdd(self.digit()?),
            "AppendInactiveToken" => AppendInactiveToken(self.token()?),
            "ClearInactive" => ClearInactive,
            "FlipSelector" => FlipSelector,
            "InvDovetail" => {
                if self.next() != Some(&Lexeme::Char('(')) {
                    return Err(self.err("expected `(` after InvDovetail"));
                }
                let inner = self.term()?;
                if self.next() != Some(&Lexeme::Char(')')) {
                    return Err(self.err("expected `)` closing InvDovetail"));
                }
                Transformation::inv_dovetail(inner)
            }
            other => return Err(self.err(format!("unknown constructor `{other}`"))),
        })
    }
}

impl FromStr for Transformation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut p = TermParser {
            lexemes: lex(s),
            pos: 0,
            text: s,
        };
        let t = p.term()?;
        if p.pos != p.lexemes.len() {
            return Err(p.err("trailing input"));
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terms_round_trip() {
        for text in [
            "Id",
            "AppendCommentDigit 7",
            "UnfoldConstAdd 0",
            "AppendInactiveToken (",
            "AppendInactiveToken x",
            "InvDovetail (StripComment)",
            "InvDovetail (AppendInactiveToken ))",
            "InvDovetail (InvDovetail (AppendInactiveToken ())",
        ] {
            let t: Transformation = text.parse().unwrap();
            assert_eq!(t.to_string(), text);
        }
    }

    #[test]
    fn lenient_spacing() {
        let t: Transformation = "InvDovetail(AppendCommentDigit 3)".parse().unwrap();
        assert_eq!(t.to_string(), "InvDovetail (AppendCommentDigit 3)");
    }

    #[test]
    fn rejects_garbage() {
        for bad in [
            "",
            "Nope",
            "AppendCommentDigit",
            "AppendCommentDigit 12",
            "AppendInactiveToken S",
            "AppendInactiveToken #",
            "InvDovetail StripComment",
            "InvDovetail (StripComment",
            "Id Id",
        ] {
            assert!(bad.parse::<Transformation>().is_err(), "accepted {bad:?}");
        }
    }
}
