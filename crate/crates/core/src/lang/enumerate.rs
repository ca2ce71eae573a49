//! Canonical enumeration of programs: by token count, then lexicographically
//! under the token order. Positions in this order are the program indices.
//!
//! Each length level is materialized on first use as a sorted vector of
//! packed token strings (5 bits per token), so programs of up to
//! [`MAX_PACKED_TOKENS`] tokens can be indexed.

use std::sync::OnceLock;

use serde::Serialize;

use super::syntax::{Modulus, Program};
use super::token::{Token, INACTIVE_TOKENS};
use crate::{Error, Result};

pub const DEFAULT_CEILING: u64 = 1_000_000;
pub const MAX_PACKED_TOKENS: usize = 12;

const BITS: u32 = 5;

/// Position of a program in the canonical enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ProgramIndex(pub u64);

#[derive(Debug)]
pub struct Enumeration {
    modulus: Modulus,
    ceiling: u64,
    levels: Vec<OnceLock<Vec<u64>>>,
    counts: Vec<u64>,
}

impl Enumeration {
    pub fn new(modulus: Modulus, ceiling: u64) -> Self {
        Enumeration {
            modulus,
            ceiling,
            levels: (0..=MAX_PACKED_TOKENS).map(|_| OnceLock::new()).collect(),
            counts: level_counts(modulus, MAX_PACKED_TOKENS),
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn ceiling(&self) -> u64 {
        self.ceiling
    }

    /// Number of programs with exactly `tokens` tokens (saturating).
    pub fn level_count(&self, tokens: usize) -> u64 {
        self.counts.get(tokens).copied().unwrap_or(u64::MAX)
    }

    /// Index of the first program with `tokens` tokens (saturating).
    pub fn level_start(&self, tokens: usize) -> u64 {
        (0..tokens).fold(0u64, |acc, l| acc.saturating_add(self.level_count(l)))
    }

    /// Number of programs with at most `max_tokens` tokens.
    pub fn count_upto(&self, max_tokens: usize) -> u64 {
        self.level_start(max_tokens + 1)
    }

    /// Checks that every program of at most `max_tokens` tokens has an index
    /// below the ceiling.
    pub fn check_bound(&self, max_tokens: usize) -> Result<u64> {
        let n = self.count_upto(max_tokens);
        if n > self.ceiling || max_tokens > MAX_PACKED_TOKENS {
            return Err(Error::EnumerationCeilingExceeded {
                requested: n,
                ceiling: self.ceiling,
            });
        }
        Ok(n)
    }

    fn level(&self, tokens: usize) -> &[u64] {
        self.levels[tokens].get_or_init(|| generate_level(self.modulus, tokens))
    }

    pub fn program_at(&self, index: ProgramIndex) -> Result<Program> {
        let i = index.0;
        if i >= self.ceiling {
            return Err(Error::EnumerationCeilingExceeded {
                requested: i,
                ceiling: self.ceiling,
            });
        }
        let mut start = 0u64;
        for len in 1..=MAX_PACKED_TOKENS {
            let count = self.level_count(len);
            if i < start.saturating_add(count) {
                let packed = self.level(len)[(i - start) as usize];
                return Ok(unpack_program(packed, len, self.modulus));
            }
            start = start.saturating_add(count);
        }
        Err(Error::EnumerationCeilingExceeded {
            requested: i,
            ceiling: start,
        })
    }

    /// Program at `index`, which the caller knows lies below the ceiling.
    pub(crate) fn program_at_unchecked(&self, index: u64) -> Program {
        self.program_at(ProgramIndex(index))
            .expect("index below ceiling")
    }

    pub fn index_of(&self, p: &Program) -> Result<ProgramIndex> {
        let len = p.token_count();
        let start = self.level_start(len);
        if len > MAX_PACKED_TOKENS || start >= self.ceiling {
            return Err(Error::EnumerationCeilingExceeded {
                requested: start,
                ceiling: self.ceiling,
            });
        }
        let packed = pack(p.tokens().into_iter().map(Token::code));
        let pos = self
            .level(len)
            .binary_search(&packed)
            .expect("every well-formed program is enumerated");
        let index = start + pos as u64;
        if index >= self.ceiling {
            return Err(Error::EnumerationCeilingExceeded {
                requested: index,
                ceiling: self.ceiling,
            });
        }
        Ok(ProgramIndex(index))
    }

    /// All programs with at most `max_tokens` tokens, in canonical order.
    pub fn iter_upto(&self, max_tokens: usize) -> Result<impl Iterator<Item = Program> + '_> {
        self.check_bound(max_tokens)?;
        let m = self.modulus;
        Ok((1..=max_tokens).flat_map(move |len| {
            self.level(len)
                .iter()
                .map(move |&packed| unpack_program(packed, len, m))
        }))
    }

    pub fn enumerate(&self, max_tokens: usize) -> Result<Vec<Program>> {
        Ok(self.iter_upto(max_tokens)?.collect())
    }
}

fn pack(codes: impl IntoIterator<Item = u8>) -> u64 {
    codes
        .into_iter()
        .fold(0u64, |acc, c| (acc << BITS) | c as u64)
}

fn unpack_program(packed: u64, len: usize, m: Modulus) -> Program {
    let tokens: Vec<Token> = (0..len)
        .rev()
        .map(|i| Token::from_code(((packed >> (BITS as usize * i)) & 0x1f) as u8).unwrap())
        .collect();
    Program::from_tokens(&tokens, m).expect("enumerated programs are well-formed")
}

/// Packed token string of known length.
#[derive(Clone, Copy)]
struct Packed {
    bits: u64,
    len: usize,
}

impl Packed {
    fn token(t: Token) -> Packed {
        Packed {
            bits: t.code() as u64,
            len: 1,
        }
    }

    fn then(self, other: Packed) -> Packed {
        Packed {
            bits: if other.len == 0 { self.bits } else { (self.bits << (BITS as usize * other.len)) | other.bits },
            len: self.len + other.len,
        }
    }
}

const EMPTY: Packed = Packed { bits: 0, len: 0 };

struct Generator {
    modulus: Modulus,
    exprs: Vec<Vec<Packed>>,
}

impl Generator {
    fn new(modulus: Modulus, max: usize) -> Self {
        let mut exprs: Vec<Vec<Packed>> = vec![Vec::new(); max + 1];
        if max >= 1 {
            for c in 0..modulus.literal_limit() {
                exprs[1].push(Packed::token(Token::Digit(c)));
            }
            exprs[1].push(Packed::token(Token::Var));
        }
        for len in 5..=max {
            let mut out = Vec::new();
            for left in 1..len - 3 {
                let right = len - 3 - left;
                for &l in &exprs[left] {
                    for &r in &exprs[right] {
                        for op in [Token::Plus, Token::Star] {
                            out.push(
                                Packed::token(Token::Open)
                                    .then(l)
                                    .then(Packed::token(op))
                                    .then(r)
                                    .then(Packed::token(Token::Close)),
                            );
                        }
                    }
                }
            }
            exprs[len] = out;
        }
        Generator { modulus, exprs }
    }

    fn inactive_runs(len: usize, f: &mut impl FnMut(Packed)) {
        fn go(left: usize, acc: Packed, f: &mut impl FnMut(Packed)) {
            if left == 0 {
                f(acc);
                return;
            }
            for t in INACTIVE_TOKENS {
                go(left - 1, acc.then(Packed::token(t)), f);
            }
        }
        go(len, EMPTY, f);
    }

    /// Bodies of exactly `len` tokens; `digit_led` selects bodies whose
    /// first token is a digit (constants and split forms) or the rest.
    fn bodies(&self, len: usize, digit_led: bool, f: &mut impl FnMut(Packed)) {
        if len == 0 {
            return;
        }
        for &e in &self.exprs[len] {
            let is_const = len == 1 && e.bits < 10;
            if is_const == digit_led {
                f(e);
            }
        }
        if !digit_led || len < 3 {
            return;
        }
        let sep = Packed::token(Token::Sep);
        for active_len in 1..=len - 2 {
            let run = len - 2 - active_len;
            for &e in &self.exprs[active_len] {
                Self::inactive_runs(run, &mut |r| {
                    f(Packed::token(Token::Digit(1)).then(e).then(sep).then(r));
                    f(Packed::token(Token::Digit(2)).then(r).then(sep).then(e));
                });
            }
        }
    }

    fn level(&self, len: usize) -> Vec<u64> {
        let mut out = Vec::new();
        let mut push = |p: Packed| {
            debug_assert_eq!(p.len, len);
            out.push(p.bits)
        };
        self.bodies(len, false, &mut push);
        self.bodies(len, true, &mut push);
        // `#` + k digits + body, with a closing `#` before digit-led bodies
        for k in 1..len {
            let mut numerals = Vec::new();
            Self::numerals(k, EMPTY, &mut numerals);
            let hash = Packed::token(Token::Hash);
            for &n in &numerals {
                let head = hash.then(n);
                self.bodies(len - 1 - k, false, &mut |b| push(head.then(b)));
                if len >= k + 2 {
                    self.bodies(len - 2 - k, true, &mut |b| push(head.then(hash).then(b)));
                }
            }
        }
        let _ = self.modulus;
        out.sort_unstable();
        out
    }

    fn numerals(k: usize, acc: Packed, out: &mut Vec<Packed>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for d in 0..10 {
            Self::numerals(k - 1, acc.then(Packed::token(Token::Digit(d))), out);
        }
    }
}

fn generate_level(modulus: Modulus, len: usize) -> Vec<u64> {
    if len == 0 {
        return Vec::new();
    }
    Generator::new(modulus, len).level(len)
}

/// Closed-form level sizes, independent of the generator.
fn level_counts(m: Modulus, max: usize) -> Vec<u64> {
    let lit = m.literal_limit() as u128;
    let mut expr = vec![0u128; max + 1];
    if max >= 1 {
        expr[1] = lit + 1;
    }
    for len in 5..=max {
        expr[len] = (1..len - 3).map(|a| 2 * expr[a] * expr[len - 3 - a]).sum();
    }
    let pow15 = |r: usize| 15u128.pow(r as u32);
    // digit-led bodies: constants and split forms
    let digit_led = |len: usize| -> u128 {
        let consts = if len == 1 { lit } else { 0 };
        let splits: u128 = if len >= 3 {
            (1..=len - 2).map(|a| 2 * expr[a] * pow15(len - 2 - a)).sum()
        } else {
            0
        };
        consts + splits
    };
    let other = |len: usize| -> u128 {
        if len == 0 {
            0
        } else {
            expr[len] - if len == 1 { lit } else { 0 }
        }
    };
    (0..=max)
        .map(|len| {
            if len == 0 {
                return 0;
            }
            let mut total = other(len) + digit_led(len);
            for k in 1..len {
                let numerals = 10u128.pow(k as u32);
                let mut bodies = other(len - 1 - k);
                if len >= k + 3 {
                    bodies += digit_led(len - 2 - k);
                }
                total += numerals * bodies;
            }
            u64::try_from(total).unwrap_or(u64::MAX)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_levels_match_closed_form_counts() {
        let e = Enumeration::new(Modulus::DEFAULT, DEFAULT_CEILING);
        for len in 1..=6 {
            assert_eq!(e.level(len).len() as u64, e.level_count(len), "level {len}");
        }
    }

    #[test]
    fn first_programs() {
        let e = Enumeration::new(Modulus::DEFAULT, DEFAULT_CEILING);
        let one: Vec<String> = e.enumerate(1).unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(one, ["0", "1", "2", "3", "4", "x"]);
        assert_eq!(e.level_count(2), 0);
    }

    #[test]
    fn index_roundtrip_small() {
        let e = Enumeration::new(Modulus::DEFAULT, DEFAULT_CEILING);
        for (i, p) in e.iter_upto(5).unwrap().enumerate() {
            assert_eq!(e.index_of(&p).unwrap(), ProgramIndex(i as u64));
            assert_eq!(e.program_at(ProgramIndex(i as u64)).unwrap(), p);
        }
    }

    #[test]
    fn ceiling_is_enforced() {
        let e = Enumeration::new(Modulus::DEFAULT, 10);
        assert!(e.program_at(ProgramIndex(9)).is_ok());
        assert!(matches!(
            e.program_at(ProgramIndex(10)),
            Err(Error::EnumerationCeilingExceeded { .. })
        ));
        let late = Program::parse("( x + x )", Modulus::DEFAULT).unwrap();
        assert!(e.index_of(&late).is_err());
        assert!(e.check_bound(5).is_err());
    }
}
