use std::fmt;
use std::ops::Neg;

use serde::Serialize;

/// A message symbol from the odd-sized alphabet `{-L_s, ..., 0, ..., +L_s}`.
///
/// The wrapped integer is the signed level: `-k` stands for `-L_k`, `0` for the
/// zero message and `+k` for `+L_k`. The real value attached to a level lives in
/// [`MessageAlphabet`](super::MessageAlphabet).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default, Serialize)]
#[serde(transparent)]
pub struct Symbol(i8);

impl Symbol {
    pub const ZERO: Symbol = Symbol(0);

    pub const fn new(level: i8) -> Self {
        Symbol(level)
    }

    /// The symbol at 0-based position `idx` of `M_1, ..., M_{N_s}` for an
    /// alphabet with `s` positive levels.
    pub const fn from_index(idx: usize, s: u8) -> Self {
        Symbol(idx as i8 - s as i8)
    }

    pub const fn level(self) -> i8 {
        self.0
    }

    /// 0-based position in `M_1, ..., M_{N_s}`.
    pub const fn index(self, s: u8) -> usize {
        (self.0 + s as i8) as usize
    }

    pub const fn magnitude(self) -> u8 {
        self.0.unsigned_abs()
    }

    pub const fn is_negative(self) -> bool {
        self.0 < 0
    }
}

impl Neg for Symbol {
    type Output = Symbol;

    fn neg(self) -> Symbol {
        Symbol(-self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => write!(f, "0"),
            k if k < 0 => write!(f, "-L{}", -k),
            k => write!(f, "+L{k}"),
        }
    }
}

/// Channel value `y = (-1)^r C` seen by a variable node on the BSC.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Channel {
    /// `+C`, received bit 0.
    Plus,
    /// `-C`, received bit 1.
    Minus,
}

impl Channel {
    pub fn from_bit(bit: u8) -> Self {
        if bit & 1 == 0 {
            Channel::Plus
        } else {
            Channel::Minus
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Channel::Plus => 0,
            Channel::Minus => 1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Channel::Plus => Channel::Minus,
            Channel::Minus => Channel::Plus,
        }
    }
}
