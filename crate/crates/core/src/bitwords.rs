//! Bitstring and Dyck-word primitives.
//!
//! Bit positions are 1-based throughout the public API: position 1 is the
//! leftmost character of the textual rendering. Internally words are plain
//! `Vec<u8>` buffers holding one `0`/`1` per byte, which keeps single-bit
//! flips in the generator's hot loop to a single XOR.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite bitstring with an explicit length, so leading zeros survive.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BitWord {
    bits: Vec<u8>,
}

/// Result of [`BitWord::classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordClass {
    Dyck,
    NearDyck,
    Other,
}

impl BitWord {
    pub fn from_bits(bits: Vec<u8>) -> Result<Self> {
        if let Some(&b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidBit(b));
        }
        Ok(Self { bits })
    }

    /// Caller guarantees every byte is 0 or 1.
    pub(crate) fn from_bits_unchecked(bits: Vec<u8>) -> Self {
        debug_assert!(bits.iter().all(|&b| b <= 1));
        Self { bits }
    }

    pub fn zeros(len: usize) -> Self {
        Self { bits: vec![0; len] }
    }

    /// `1^ones 0^zeros`
    pub fn ones_then_zeros(ones: usize, zeros: usize) -> Self {
        let mut bits = vec![1; ones];
        bits.resize(ones + zeros, 0);
        Self { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    /// Bit at 1-based position `p`.
    pub fn get(&self, p: usize) -> Option<u8> {
        p.checked_sub(1).and_then(|i| self.bits.get(i).copied())
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub(crate) fn bits_mut(&mut self) -> &mut [u8] {
        &mut self.bits
    }

    pub fn into_bits(self) -> Vec<u8> {
        self.bits
    }

    fn check_position(&self, p: usize) -> Result<()> {
        if p == 0 || p > self.bits.len() {
            return Err(Error::PositionOutOfBounds {
                position: p,
                len: self.bits.len(),
            });
        }
        Ok(())
    }

    /// Copy of `self` with position `p` toggled.
    pub fn flip(&self, p: usize) -> Result<Self> {
        let mut out = self.clone();
        out.flip_in_place(p)?;
        Ok(out)
    }

    pub fn flip_in_place(&mut self, p: usize) -> Result<()> {
        self.check_position(p)?;
        self.bits[p - 1] ^= 1;
        Ok(())
    }

    /// Complement of the reversal.
    pub fn rev_complement(&self) -> Self {
        Self {
            bits: rev_complement_bits(&self.bits),
        }
    }

    pub fn classify(&self) -> WordClass {
        classify_bits(&self.bits)
    }

    /// Substring covering 1-based positions `start..=end`; empty when `end < start`.
    pub fn subword(&self, start: usize, end: usize) -> Self {
        if end < start {
            return Self::default();
        }
        Self {
            bits: self.bits[start - 1..end].to_vec(),
        }
    }

    pub fn concat<'a, I>(parts: I) -> Self
    where
        I: IntoIterator<Item = &'a [u8]>,
    {
        let mut bits = Vec::new();
        for part in parts {
            bits.extend_from_slice(part);
        }
        Self { bits }
    }

    /// Packs the word into an integer, position 1 as the most significant bit.
    /// Only meaningful for words of at most 64 bits.
    pub fn to_u64(&self) -> u64 {
        debug_assert!(self.bits.len() <= 64);
        self.bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64)
    }

    pub fn from_u64(value: u64, len: usize) -> Self {
        debug_assert!(len <= 64);
        let bits = (0..len)
            .map(|i| ((value >> (len - 1 - i)) & 1) as u8)
            .collect();
        Self { bits }
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self
            .bits
            .iter()
            .map(|&b| if b == 1 { '1' } else { '0' })
            .collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitWord({self})")
    }
}

impl FromStr for BitWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::InvalidChar(other)),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(Self { bits })
    }
}

pub(crate) fn rev_complement_bits(bits: &[u8]) -> Vec<u8> {
    bits.iter().rev().map(|&b| b ^ 1).collect()
}

pub(crate) fn classify_bits(bits: &[u8]) -> WordClass {
    if !bits.len().is_multiple_of(2) {
        return WordClass::Other;
    }
    let mut height = 0i64;
    let mut violations = 0usize;
    for &b in bits {
        height += if b == 1 { 1 } else { -1 };
        if height < 0 {
            violations += 1;
        }
    }
    match (height, violations) {
        (0, 0) => WordClass::Dyck,
        (0, 1) => WordClass::NearDyck,
        _ => WordClass::Other,
    }
}

macro_rules! word_newtype {
    ($(#[$meta:meta])* $name:ident, $class:expr, $err:expr) => {
        $(#[$meta])*
        #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(BitWord);

        impl $name {
            /// Half the length: the number of 1s.
            pub fn order(&self) -> usize {
                self.0.len() / 2
            }

            pub fn word(&self) -> &BitWord {
                &self.0
            }

            pub fn bits(&self) -> &[u8] {
                self.0.bits()
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn into_word(self) -> BitWord {
                self.0
            }

            pub(crate) fn from_word_unchecked(word: BitWord) -> Self {
                debug_assert_eq!(word.classify(), $class);
                Self(word)
            }
        }

        impl TryFrom<BitWord> for $name {
            type Error = Error;

            fn try_from(word: BitWord) -> Result<Self> {
                if word.classify() == $class {
                    Ok(Self(word))
                } else {
                    Err($err)
                }
            }
        }

        impl FromStr for $name {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                Self::try_from(s.parse::<BitWord>()?)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt::Display::fmt(&self.0, f)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}({})", stringify!($name), self.0)
            }
        }

        impl AsRef<BitWord> for $name {
            fn as_ref(&self) -> &BitWord {
                &self.0
            }
        }
    };
}

word_newtype!(
    /// A word in which every prefix has at least as many 1s as 0s, balanced
    /// overall. The empty word is a Dyck word.
    DyckWord,
    WordClass::Dyck,
    Error::Unbalanced
);

word_newtype!(
    /// A balanced word with exactly one prefix holding more 0s than 1s.
    NearDyckWord,
    WordClass::NearDyck,
    Error::NotNearDyck
);

impl DyckWord {
    pub fn empty() -> Self {
        Self(BitWord::default())
    }

    /// Builds `1 u 0 v`.
    pub fn compose(u: &DyckWord, v: &DyckWord) -> Self {
        Self(BitWord::concat([
            &[1u8][..],
            u.bits(),
            &[0u8][..],
            v.bits(),
        ]))
    }
}

impl NearDyckWord {
    /// Builds `u 0 1 v`.
    pub fn compose(u: &DyckWord, v: &DyckWord) -> Self {
        Self(BitWord::concat([u.bits(), &[0u8, 1u8][..], v.bits()]))
    }
}

/// Pairs each up-step with the down-step that closes it at the same height.
///
/// Entries are 1-based: `partner(p) = q` with `partner(q) = p`. One table
/// built for a Dyck word `x` serves every Dyck substring of `x` that shows up
/// in the flip-sequence recursion, since those substrings are internally
/// matched.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MatchTable {
    partner: Vec<usize>,
    stack: Vec<usize>,
}

impl MatchTable {
    pub fn build(x: &DyckWord) -> Self {
        let mut table = Self::default();
        table
            .rebuild(x.bits())
            .expect("DyckWord is balanced by construction");
        table
    }

    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        let mut table = Self::default();
        table.rebuild(bits)?;
        Ok(table)
    }

    /// Rebuilds in place, reusing the existing allocation.
    pub fn rebuild(&mut self, bits: &[u8]) -> Result<()> {
        let len = bits.len();
        // every slot is overwritten when `bits` is balanced
        self.partner.resize(len, 0);
        self.stack.resize(len / 2 + 1, 0);
        let mut depth = 0usize;
        for (i, &b) in bits.iter().enumerate() {
            let p = i + 1;
            if b == 1 {
                if depth == self.stack.len() {
                    return Err(Error::Unbalanced);
                }
                self.stack[depth] = p;
                depth += 1;
            } else {
                if depth == 0 {
                    return Err(Error::Unbalanced);
                }
                depth -= 1;
                let open = self.stack[depth];
                self.partner[open - 1] = p;
                self.partner[p - 1] = open;
            }
        }
        if depth != 0 {
            return Err(Error::Unbalanced);
        }
        Ok(())
    }

    /// Partner of 1-based position `p`.
    #[inline]
    pub fn partner(&self, p: usize) -> usize {
        self.partner[p - 1]
    }

    pub fn len(&self) -> usize {
        self.partner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partner.is_empty()
    }

    /// `(open, close)` pairs in order of the opening position.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.partner
            .iter()
            .enumerate()
            .map(|(i, &q)| (i + 1, q))
            .filter(|&(p, q)| p < q)
    }

    pub(crate) fn reserve(&mut self, len: usize) {
        self.partner.reserve(len);
        self.stack.reserve(len);
    }

    pub(crate) fn capacity_bytes(&self) -> usize {
        (self.partner.capacity() + self.stack.capacity()) * std::mem::size_of::<usize>()
    }
}

/// Splits `x = 1u0v` into `(u, v)` using the match table of `x`.
pub fn decompose_dyck(x: &DyckWord, table: &MatchTable) -> Result<(DyckWord, DyckWord)> {
    if x.is_empty() {
        return Err(Error::EmptyDecomposition);
    }
    let close = table.partner(1);
    let u = x.word().subword(2, close - 1);
    let v = x.word().subword(close + 1, x.len());
    Ok((
        DyckWord::from_word_unchecked(u),
        DyckWord::from_word_unchecked(v),
    ))
}

/// 0-based index of the `0` in `y = u01v`: the step that enters height -1.
pub(crate) fn near_dyck_split(bits: &[u8]) -> Option<usize> {
    let mut height = 0i64;
    for (i, &b) in bits.iter().enumerate() {
        height += if b == 1 { 1 } else { -1 };
        if height < 0 {
            return Some(i);
        }
    }
    None
}

/// Splits `y = u01v` into `(u, v)`.
pub fn decompose_near_dyck(y: &NearDyckWord) -> Result<(DyckWord, DyckWord)> {
    let i = near_dyck_split(y.bits()).ok_or(Error::NotNearDyck)?;
    let u = BitWord::from_bits_unchecked(y.bits()[..i].to_vec());
    let v = BitWord::from_bits_unchecked(y.bits()[i + 2..].to_vec());
    Ok((
        DyckWord::from_word_unchecked(u),
        DyckWord::from_word_unchecked(v),
    ))
}

/// All Dyck words with `m` up-steps, in increasing lexicographic order.
pub fn dyck_words(m: usize) -> Vec<DyckWord> {
    fn extend(buf: &mut Vec<u8>, ones: usize, zeros: usize, m: usize, out: &mut Vec<DyckWord>) {
        if buf.len() == 2 * m {
            out.push(DyckWord(BitWord::from_bits_unchecked(buf.clone())));
            return;
        }
        if zeros < ones {
            buf.push(0);
            extend(buf, ones, zeros + 1, m, out);
            buf.pop();
        }
        if ones < m {
            buf.push(1);
            extend(buf, ones + 1, zeros, m, out);
            buf.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(2 * m), 0, 0, m, &mut out);
    out
}

/// All words of length `len` and weight `weight`, in increasing lexicographic order.
pub fn words_of_weight(len: usize, weight: usize) -> Vec<BitWord> {
    fn extend(buf: &mut Vec<u8>, ones: usize, len: usize, weight: usize, out: &mut Vec<BitWord>) {
        if buf.len() == len {
            out.push(BitWord::from_bits_unchecked(buf.clone()));
            return;
        }
        let remaining = len - buf.len();
        if weight - ones < remaining {
            buf.push(0);
            extend(buf, ones, len, weight, out);
            buf.pop();
        }
        if ones < weight {
            buf.push(1);
            extend(buf, ones + 1, len, weight, out);
            buf.pop();
        }
    }
    let mut out = Vec::new();
    if weight <= len {
        extend(&mut Vec::with_capacity(len), 0, len, weight, &mut out);
    }
    out
}

/// All near-Dyck words with `m` up-steps, in increasing lexicographic order.
pub fn near_dyck_words(m: usize) -> Vec<NearDyckWord> {
    words_of_weight(2 * m, m)
        .into_iter()
        .filter(|w| w.classify() == WordClass::NearDyck)
        .map(NearDyckWord)
        .collect()
}
