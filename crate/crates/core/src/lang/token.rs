use std::fmt;

/// One token of the program alphabet.
///
/// The derived ordering is the normative token order used by the canonical
/// enumeration: `0 < 1 < ... < 9 < # < ( < ) < * < + < S < x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Token {
    Digit(u8),
    Hash,
    Open,
    Close,
    Star,
    Plus,
    Sep,
    Var,
}

/// Number of distinct tokens in the alphabet.
pub const ALPHABET_SIZE: usize = 17;

/// Tokens allowed in an inactive run (everything except `S` and `#`).
pub const INACTIVE_TOKENS: [Token; 15] = [
    Token::Digit(0),
    Token::Digit(1),
    Token::Digit(2),
    Token::Digit(3),
    Token::Digit(4),
    Token::Digit(5),
    Token::Digit(6),
    Token::Digit(7),
    Token::Digit(8),
    Token::Digit(9),
    Token::Open,
    Token::Close,
    Token::Star,
    Token::Plus,
    Token::Var,
];

impl Token {
    /// Position in the token order, 0..17.
    pub fn code(self) -> u8 {
        match self {
            Token::Digit(d) => d,
            Token::Hash => 10,
            Token::Open => 11,
            Token::Close => 12,
            Token::Star => 13,
            Token::Plus => 14,
            Token::Sep => 15,
            Token::Var => 16,
        }
    }

    pub fn from_code(code: u8) -> Option<Token> {
        Some(match code {
            0..=9 => Token::Digit(code),
            10 => Token::Hash,
            11 => Token::Open,
            12 => Token::Close,
            13 => Token::Star,
            14 => Token::Plus,
            15 => Token::Sep,
            16 => Token::Var,
            _ => return None,
        })
    }

    pub fn from_char(c: char) -> Option<Token> {
        Some(match c {
            '0'..='9' => Token::Digit(c as u8 - b'0'),
            '#' => Token::Hash,
            '(' => Token::Open,
            ')' => Token::Close,
            '*' => Token::Star,
            '+' => Token::Plus,
            'S' => Token::Sep,
            'x' => Token::Var,
            _ => return None,
        })
    }

    pub fn as_char(self) -> char {
        match self {
            Token::Digit(d) => (b'0' + d) as char,
            Token::Hash => '#',
            Token::Open => '(',
            Token::Close => ')',
            Token::Star => '*',
            Token::Plus => '+',
            Token::Sep => 'S',
            Token::Var => 'x',
        }
    }

    /// True for tokens that may appear in an inactive run.
    pub fn is_inactive_allowed(self) -> bool {
        !matches!(self, Token::Sep | Token::Hash)
    }

    /// 4-bit code of an inactive-run token (its rank among [`INACTIVE_TOKENS`]).
    pub fn inactive_code(self) -> Option<u8> {
        INACTIVE_TOKENS
            .iter()
            .position(|&t| t == self)
            .map(|i| i as u8)
    }

    pub fn from_inactive_code(code: u8) -> Option<Token> {
        INACTIVE_TOKENS.get(code as usize).copied()
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Splits program text into tokens. Every token is a single character, so
/// whitespace is only a separator and `(x+1)` reads the same as `( x + 1 )`.
pub fn tokenize(text: &str) -> Result<Vec<Token>, crate::Error> {
    let mut out = Vec::new();
    for c in text.chars() {
        if c.is_whitespace() {
            continue;
        }
        match Token::from_char(c) {
            Some(t) => out.push(t),
            None => {
                return Err(crate::Error::malformed(
                    out.len(),
                    format!("character `{c}` is not in the alphabet"),
                ))
            }
        }
    }
    Ok(out)
}
