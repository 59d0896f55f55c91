//! Basis-index bit manipulation and classical bit strings.
//!
//! Convention used everywhere in this crate: qubit 0 is the **most
//! significant** bit of a basis-state index. A register of `k` qubits in
//! basis state `|b_0 b_1 … b_{k-1}⟩` has index `Σ b_i · 2^{k-1-i}`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Bit of `index` at qubit position `pos` in a `width`-qubit register.
#[inline]
pub fn bit_at(index: usize, pos: usize, width: usize) -> usize {
    (index >> (width - 1 - pos)) & 1
}

/// Extract the bits of `index` at `positions`, packed so that
/// `positions[0]` becomes the most significant bit of the result.
#[inline]
pub fn gather_bits(index: usize, positions: &[usize], width: usize) -> usize {
    let mut out = 0;
    for &p in positions {
        out = (out << 1) | bit_at(index, p, width);
    }
    out
}

/// Spread the bits of `sub` (with `positions[0]` as its most significant
/// bit) into a `width`-bit index, zero elsewhere.
#[inline]
pub fn scatter_bits(sub: usize, positions: &[usize], width: usize) -> usize {
    let mut out = 0;
    let t = positions.len();
    for (i, &p) in positions.iter().enumerate() {
        let bit = (sub >> (t - 1 - i)) & 1;
        out |= bit << (width - 1 - p);
    }
    out
}

/// Clear the bits of `index` at `positions`.
#[inline]
pub fn clear_bits(index: usize, positions: &[usize], width: usize) -> usize {
    let mut out = index;
    for &p in positions {
        out &= !(1 << (width - 1 - p));
    }
    out
}

/// Check that qubit positions are distinct and within range.
pub fn check_positions(positions: &[usize], width: usize) -> Result<()> {
    let mut seen = vec![false; width];
    for &p in positions {
        if p >= width {
            return Err(Error::QubitIndex {
                index: p,
                total: width,
            });
        }
        if seen[p] {
            return Err(Error::DuplicateQubit(p));
        }
        seen[p] = true;
    }
    Ok(())
}

/// A fixed-length classical bit string, e.g. a message for Alice to send.
///
/// Bit 0 is written leftmost and is the most significant bit of
/// [`BitString::index`], matching the qubit convention above.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn new(bits: Vec<bool>) -> Self {
        BitString { bits }
    }

    pub fn zeros(len: usize) -> Self {
        BitString {
            bits: vec![false; len],
        }
    }

    /// The `len`-bit string whose packed index is `index`.
    pub fn from_index(index: usize, len: usize) -> Self {
        let bits = (0..len)
            .map(|i| (index >> (len - 1 - i)) & 1 == 1)
            .collect();
        BitString { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bit(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Packed index with bit 0 as the most significant bit.
    pub fn index(&self) -> usize {
        self.bits.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }

    /// All `2^len` bit strings of the given length, in index order.
    pub fn all(len: usize) -> impl Iterator<Item = BitString> {
        (0..1usize << len).map(move |i| BitString::from_index(i, len))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => {
                    return Err(Error::Parameter(format!(
                        "invalid bit character '{c}' in \"{s}\""
                    )))
                }
            }
        }
        Ok(BitString { bits })
    }
}
