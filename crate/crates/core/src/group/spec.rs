//! Group-spec expressions: the tree, its builder, and its text grammar.
//!
//! ```text
//! expr   := cprod ('x' cprod)*          direct product, left-assoc
//! cprod  := power ('*' power)*          central product, left-assoc
//! power  := atom ('^' INT | '^{*' INT '}')*
//! atom   := 'C' INT | 'D8' | 'Q8' | '(' expr ')'
//! ```
//!
//! `C2^m` denotes the elementary abelian group of rank `m`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::leaves::{cyclic, dihedral8, elementary, quaternion8};
use super::{GroupError, GroupTable};

/// Default order cap for [`build`].
pub const DEFAULT_BUILD_CAP: usize = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    /// `C_{2^k}`.
    Cyclic(u32),
    Dihedral8,
    Quaternion8,
    /// `C_2^m`.
    Elementary(u32),
    Direct(Box<GroupSpec>, Box<GroupSpec>),
    Central(Box<GroupSpec>, Box<GroupSpec>),
    DirectPower(Box<GroupSpec>, u32),
    CentralPower(Box<GroupSpec>, u32),
}

impl GroupSpec {
    pub fn direct(a: GroupSpec, b: GroupSpec) -> Self {
        Self::Direct(Box::new(a), Box::new(b))
    }

    pub fn central(a: GroupSpec, b: GroupSpec) -> Self {
        Self::Central(Box::new(a), Box::new(b))
    }

    pub fn direct_power(a: GroupSpec, k: u32) -> Self {
        Self::DirectPower(Box::new(a), k)
    }

    pub fn central_power(a: GroupSpec, k: u32) -> Self {
        Self::CentralPower(Box::new(a), k)
    }

    /// `G x C_2^m`, or `G` itself when `m == 0`.
    pub fn times_elementary(self, m: u32) -> Self {
        if m == 0 {
            self
        } else {
            Self::direct(self, Self::Elementary(m))
        }
    }

    /// `n` with `|G| = 2^n`, computed from the tree without building.
    pub fn log2_order(&self) -> u32 {
        match self {
            Self::Cyclic(k) | Self::Elementary(k) => *k,
            Self::Dihedral8 | Self::Quaternion8 => 3,
            Self::Direct(a, b) => a.log2_order() + b.log2_order(),
            Self::Central(a, b) => (a.log2_order() + b.log2_order()).saturating_sub(1),
            Self::DirectPower(a, k) => a.log2_order() * k,
            Self::CentralPower(a, k) => (a.log2_order() * k).saturating_sub(k.saturating_sub(1)),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Self::Direct(..) => 0,
            Self::Central(..) => 1,
            Self::DirectPower(..) | Self::CentralPower(..) | Self::Elementary(_) => 2,
            _ => 3,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        let paren = self.precedence() < min_prec;
        if paren {
            f.write_str("(")?;
        }
        match self {
            Self::Cyclic(k) => write!(f, "C{}", 1u64 << k)?,
            Self::Dihedral8 => f.write_str("D8")?,
            Self::Quaternion8 => f.write_str("Q8")?,
            Self::Elementary(m) => write!(f, "C2^{m}")?,
            Self::Direct(a, b) => {
                a.fmt_at(f, 0)?;
                f.write_str(" x ")?;
                b.fmt_at(f, 1)?;
            }
            Self::Central(a, b) => {
                a.fmt_at(f, 1)?;
                f.write_str(" * ")?;
                b.fmt_at(f, 2)?;
            }
            Self::DirectPower(a, k) => {
                // C2^k would reparse as the elementary group.
                if **a == Self::Cyclic(1) {
                    write!(f, "C2^{k}")?;
                } else {
                    a.fmt_at(f, 2)?;
                    write!(f, "^{k}")?;
                }
            }
            Self::CentralPower(a, k) => {
                a.fmt_at(f, 2)?;
                write!(f, "^{{*{k}}}")?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

/// Builds the table for `spec` under [`DEFAULT_BUILD_CAP`].
pub fn build(spec: &GroupSpec) -> Result<GroupTable, GroupError> {
    build_capped(spec, DEFAULT_BUILD_CAP)
}

pub fn build_capped(spec: &GroupSpec, cap: usize) -> Result<GroupTable, GroupError> {
    let order = 1usize.checked_shl(spec.log2_order()).unwrap_or(usize::MAX);
    if order > cap {
        return Err(GroupError::OrderCap { order, cap });
    }
    Ok(build_node(spec)?.relabel(spec.to_string()))
}

fn build_node(spec: &GroupSpec) -> Result<GroupTable, GroupError> {
    match spec {
        GroupSpec::Cyclic(k) => cyclic(*k),
        GroupSpec::Dihedral8 => Ok(dihedral8()),
        GroupSpec::Quaternion8 => Ok(quaternion8()),
        GroupSpec::Elementary(m) => elementary(*m),
        GroupSpec::Direct(a, b) => GroupTable::direct_product(&build_node(a)?, &build_node(b)?),
        GroupSpec::Central(a, b) => GroupTable::central_product(&build_node(a)?, &build_node(b)?),
        GroupSpec::DirectPower(a, k) | GroupSpec::CentralPower(a, k) => {
            if *k == 0 {
                return Err(GroupError::ZeroPower);
            }
            let central = matches!(spec, GroupSpec::CentralPower(..));
            let base = build_node(a)?;
            let mut acc = base.clone();
            for _ in 1..*k {
                acc = if central {
                    GroupTable::central_product(&acc, &base)?
                } else {
                    GroupTable::direct_product(&acc, &base)?
                };
            }
            Ok(acc)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl FromStr for GroupSpec {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut p = Parser { src: s, pos: 0 };
        let spec = p.expr()?;
        p.skip_ws();
        if p.pos < s.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(spec)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> ParseError {
        ParseError {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    /// Consumes `c` after optional whitespace.
    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn int(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        self.src[start..self.pos].parse().map_err(|_| ParseError {
            offset: start,
            message: "integer out of range".into(),
        })
    }

    fn expr(&mut self) -> Result<GroupSpec, ParseError> {
        let mut lhs = self.cprod()?;
        while self.eat('x') || self.eat('×') {
            lhs = GroupSpec::direct(lhs, self.cprod()?);
        }
        Ok(lhs)
    }

    fn cprod(&mut self) -> Result<GroupSpec, ParseError> {
        let mut lhs = self.power()?;
        while self.eat('*') {
            lhs = GroupSpec::central(lhs, self.power()?);
        }
        Ok(lhs)
    }

    fn power(&mut self) -> Result<GroupSpec, ParseError> {
        let mut base = self.atom()?;
        while self.eat('^') {
            if self.eat('{') {
                self.expect('*')?;
                let at = self.pos;
                let k = self.int()?;
                self.expect('}')?;
                base = GroupSpec::central_power(base, positive(k, at)?);
            } else {
                let at = self.pos;
                let k = self.int()?;
                base = if base == GroupSpec::Cyclic(1) {
                    GroupSpec::Elementary(u32::try_from(k).ok().filter(|&k| k < 64).ok_or(
                        ParseError {
                            offset: at,
                            message: "rank too large".into(),
                        },
                    )?)
                } else {
                    GroupSpec::direct_power(base, positive(k, at)?)
                };
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<GroupSpec, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some('D') | Some('Q') => {
                let quaternion = self.peek() == Some('Q');
                self.pos += 1;
                if self.src[self.pos..].starts_with('8') {
                    self.pos += 1;
                    Ok(if quaternion {
                        GroupSpec::Quaternion8
                    } else {
                        GroupSpec::Dihedral8
                    })
                } else {
                    Err(self.error("only D8 and Q8 are supported"))
                }
            }
            Some('C') => {
                self.pos += 1;
                let digits_at = self.pos;
                if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    return Err(self.error("expected the cyclic order"));
                }
                let n = self.int()?;
                if n < 2 || !n.is_power_of_two() {
                    return Err(ParseError {
                        offset: digits_at,
                        message: format!("C{n} is not a cyclic 2-group of order >= 2"),
                    });
                }
                Ok(GroupSpec::Cyclic(n.trailing_zeros()))
            }
            None => Err(ParseError {
                offset: start,
                message: "unexpected end of input".into(),
            }),
            Some(_) => Err(self.error("expected a group")),
        }
    }
}

fn positive(k: u64, at: usize) -> Result<u32, ParseError> {
    u32::try_from(k).ok().filter(|&k| k >= 1).ok_or(ParseError {
        offset: at,
        message: "power must be a positive integer".into(),
    })
}
