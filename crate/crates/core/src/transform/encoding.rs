//! Normative self-delimiting encoding of transformations.
//!
//! | constructor           | opcode  | parameter              |
//! |-----------------------|---------|------------------------|
//! | `Id`                  | `00000` |                        |
//! | `StripComment`        | `00001` |                        |
//! | `AppendCommentDigit`  | `00010` | 4-bit digit            |
//! | `CommuteAdd`          | `00011` |                        |
//! | `CommuteMul`          | `00100` |                        |
//! | `FoldConst`           | `00101` |                        |
//! | `AddZeroElim`         | `00110` |                        |
//! | `AddZeroIntro`        | `00111` |                        |
//! | `MulOneElim`          | `01000` |                        |
//! | `MulOneIntro`         | `01001` |                        |
//! | `UnfoldConstAdd`      | `01010` | 4-bit constant         |
//! | `AppendInactiveToken` | `01011` | 4-bit inactive token   |
//! | `ClearInactive`       | `01100` |                        |
//! | `FlipSelector`        | `01101` |                        |
//! | `InvDovetail`         | `01110` | inner encoding         |
//!
//! The cost of a transformation is its encoded length in bits, except that
//! `Id` costs 0.

use std::fmt;

use serde::{Serialize, Serializer};

use super::Transformation;
use crate::lang::Token;
use crate::{Error, Result};

pub const OPCODE_BITS: usize = 5;
pub const PARAM_BITS: usize = 4;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits(pub Vec<bool>);

impl Bits {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn push(&mut self, value: u8, width: usize) {
        for i in (0..width).rev() {
            self.0.push((value >> i) & 1 == 1);
        }
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Bits {
    type Err = Error;
    fn from_str(s: &str) -> Result<Bits> {
        s.chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::MalformedEncoding {
                    position: i,
                    reason: format!("`{c}` is not a bit"),
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(Bits)
    }
}

/// Surrogate description length of an interpreter, in bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ComplexityBits(pub u32);

impl fmt::Display for ComplexityBits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} bits", self.0)
    }
}

impl Serialize for ComplexityBits {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u32(self.0)
    }
}

fn opcode(t: &Transformation) -> u8 {
    use Transformation::*;
    match t {
        Id => 0,
        StripComment => 1,
        AppendCommentDigit(_) => 2,
        CommuteAdd => 3,
        CommuteMul => 4,
        FoldConst => 5,
        AddZeroElim => 6,
        AddZeroIntro => 7,
        MulOneElim => 8,
        MulOneIntro => 9,
        UnfoldConstAdd(_) => 10,
        AppendInactiveToken(_) => 11,
        ClearInactive => 12,
        FlipSelector => 13,
        InvDovetail(_) => 14,
    }
}

impl Transformation {
    /// # Panics
    ///
    /// If a parameter is out of its 4-bit range (see [`Transformation::is_well_formed`]).
    pub fn encode(&self) -> Bits {
        let mut bits = Bits::default();
        encode_into(self, &mut bits);
        bits
    }

    pub fn decode(bits: &Bits) -> Result<Transformation> {
        let mut pos = 0;
        let t = decode_at(&bits.0, &mut pos)?;
        if pos != bits.len() {
            return Err(Error::MalformedEncoding {
                position: pos,
                reason: "trailing bits".into(),
            });
        }
        Ok(t)
    }

    /// Encoded length with every opcode counted, `Id` included.
    pub fn raw_len(&self) -> u32 {
        match self {
            Transformation::AppendCommentDigit(_)
            | Transformation::UnfoldConstAdd(_)
            | Transformation::AppendInactiveToken(_) => (OPCODE_BITS + PARAM_BITS) as u32,
            Transformation::InvDovetail(inner) => OPCODE_BITS as u32 + inner.raw_len(),
            _ => OPCODE_BITS as u32,
        }
    }

    pub fn complexity(&self) -> ComplexityBits {
        match self {
            Transformation::Id => ComplexityBits(0),
            other => ComplexityBits(other.raw_len()),
        }
    }
}

fn encode_into(t: &Transformation, bits: &mut Bits) {
    assert!(t.is_well_formed(), "parameter out of range in {t}");
    bits.push(opcode(t), OPCODE_BITS);
    match t {
        Transformation::AppendCommentDigit(d) | Transformation::UnfoldConstAdd(d) => {
            bits.push(*d, PARAM_BITS)
        }
        Transformation::AppendInactiveToken(tok) => {
            bits.push(tok.inactive_code().unwrap(), PARAM_BITS)
        }
        Transformation::InvDovetail(inner) => encode_into(inner, bits),
        _ => {}
    }
}

fn read(bits: &[bool], pos: &mut usize, width: usize) -> Result<u8> {
    if *pos + width > bits.len() {
        return Err(Error::MalformedEncoding {
            position: bits.len(),
            reason: format!("truncated: needed {width} more bits"),
        });
    }
    let v = bits[*pos..*pos + width]
        .iter()
        .fold(0u8, |acc, &b| (acc << 1) | b as u8);
    *pos += width;
    Ok(v)
}

fn decode_at(bits: &[bool], pos: &mut usize) -> Result<Transformation> {
    use Transformation::*;
    let start = *pos;
    let op = read(bits, pos, OPCODE_BITS)?;
    let param_at = *pos;
    let digit = |pos: &mut usize| -> Result<u8> {
        let d = read(bits, pos, PARAM_BITS)?;
        if d < 10 {
            Ok(d)
        } else {
            Err(Error::MalformedEncoding {
                position: param_at,
                reason: format!("parameter {d} is not a decimal digit"),
            })
        }
    };
    Ok(match op {
        0 => Id,
        1 => StripComment,
        2 => AppendCommentDigit(digit(pos)?),
        3 => CommuteAdd,
        4 => CommuteMul,
        5 => FoldConst,
        6 => AddZeroElim,
        7 => AddZeroIntro,
        8 => MulOneElim,
        9 => MulOneIntro,
        10 => UnfoldConstAdd(digit(pos)?),
        11 => {
            let code = read(bits, pos, PARAM_BITS)?;
            AppendInactiveToken(Token::from_inactive_code(code).ok_or_else(|| {
                Error::MalformedEncoding {
                    position: param_at,
                    reason: format!("no inactive token has code {code}"),
                }
            })?)
        }
        12 => ClearInactive,
        13 => FlipSelector,
        14 => InvDovetail(Box::new(decode_at(bits, pos)?)),
        _ => {
            return Err(Error::MalformedEncoding {
                position: start,
                reason: format!("unknown opcode {op:05b}"),
            })
        }
    })
}
