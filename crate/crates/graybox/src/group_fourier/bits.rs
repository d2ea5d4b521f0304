//! Fixed-length bit strings under XOR, and the Walsh sign function.
//!
//! A `BitString` of length `n` packs its bits into a `u64` (bit `i` of the
//! word is variable `i`), so `n` is capped at 64. XOR makes the set of all
//! length-`n` strings an abelian group in which every element is its own
//! inverse; a bit-flip move is XOR with the mask of flipped variables.

use std::fmt;

/// Maximum supported bit-string length.
pub const MAX_BITS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BitError {
    TooLong { n: usize },
    LengthMismatch { left: usize, right: usize },
    Parse { message: String },
}

impl fmt::Display for BitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BitError::TooLong { n } => write!(f, "bit string length {n} exceeds {MAX_BITS}"),
            BitError::LengthMismatch { left, right } => {
                write!(f, "bit string lengths differ: {left} vs {right}")
            }
            BitError::Parse { message } => write!(f, "bit string parse error: {message}"),
        }
    }
}

impl std::error::Error for BitError {}

/// A bit string of fixed length `n <= 64`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitString {
    bits: u64,
    n: usize,
}

impl BitString {
    pub fn zeros(n: usize) -> Result<Self, BitError> {
        if n > MAX_BITS {
            return Err(BitError::TooLong { n });
        }
        Ok(BitString { bits: 0, n })
    }

    /// Builds from a packed word; bits at positions `>= n` must be clear.
    pub fn from_mask(bits: u64, n: usize) -> Result<Self, BitError> {
        if n > MAX_BITS {
            return Err(BitError::TooLong { n });
        }
        if n < MAX_BITS && bits >> n != 0 {
            return Err(BitError::Parse {
                message: format!("mask {bits:#x} has bits beyond position {n}"),
            });
        }
        Ok(BitString { bits, n })
    }

    /// Parses a string of `0`/`1` characters; the first character is bit 0.
    pub fn parse(text: &str) -> Result<Self, BitError> {
        let text = text.trim();
        if text.is_empty() {
            return Err(BitError::Parse {
                message: "empty bit string".to_string(),
            });
        }
        if text.len() > MAX_BITS {
            return Err(BitError::TooLong { n: text.len() });
        }
        let mut bits = 0u64;
        for (i, c) in text.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => {
                    return Err(BitError::Parse {
                        message: format!("bad character '{c}' at position {i}"),
                    })
                }
            }
        }
        Ok(BitString {
            bits,
            n: text.len(),
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// The packed word; bit `i` is variable `i`.
    pub fn mask(&self) -> u64 {
        self.bits
    }

    /// The packed word as a table index in `0..2^n`.
    pub fn index(&self) -> usize {
        self.bits as usize
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.n, "bit index out of range");
        self.bits >> i & 1 == 1
    }

    #[must_use]
    pub fn with_bit(&self, i: usize, value: bool) -> BitString {
        assert!(i < self.n, "bit index out of range");
        let mut bits = self.bits & !(1 << i);
        if value {
            bits |= 1 << i;
        }
        BitString { bits, n: self.n }
    }

    #[must_use]
    pub fn flipped(&self, i: usize) -> BitString {
        assert!(i < self.n, "bit index out of range");
        BitString {
            bits: self.bits ^ (1 << i),
            n: self.n,
        }
    }

    /// Group operation: bitwise XOR. Both operands must share a length.
    pub fn xor(&self, other: &BitString) -> Result<BitString, BitError> {
        if self.n != other.n {
            return Err(BitError::LengthMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(BitString {
            bits: self.bits ^ other.bits,
            n: self.n,
        })
    }

    pub fn count_ones(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Indices of set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(|&i| self.get(i))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString[{self}]")
    }
}

/// Walsh sign `(-1)^(lambda . x)`: `-1` when `lambda` and `x` share an odd
/// number of set bits, `+1` otherwise.
pub fn walsh(lambda: &BitString, x: &BitString) -> Result<i32, BitError> {
    if lambda.len() != x.len() {
        return Err(BitError::LengthMismatch {
            left: lambda.len(),
            right: x.len(),
        });
    }
    Ok(walsh_sign_masks(lambda.mask(), x.mask()))
}

/// Mask-level Walsh sign, for hot paths that have already validated lengths.
#[inline]
pub fn walsh_sign_masks(lambda: u64, x: u64) -> i32 {
    if (lambda & x).count_ones() % 2 == 1 {
        -1
    } else {
        1
    }
}
