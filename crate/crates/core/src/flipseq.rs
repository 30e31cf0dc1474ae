//! Flip sequences for the paths that cover the lower half of the middle
//! levels graph.
//!
//! For a Dyck word `x = 1u0v` the sequence `sigma(x)` lists the positions to
//! toggle, one after another, to walk from `x` to `u01v`. Along the way the
//! Dyck subpaths of `x` are visited by increasing height: first flipping the
//! rightmost and then the leftmost step of each subpath on the way up, then
//! the left neighbour and the right end again on the way back. The word
//! itself is never modified while the sequence is computed.

use std::fmt;

use crate::bitwords::{BitWord, DyckWord, MatchTable, NearDyckWord};
use crate::error::{Error, Result};

/// 1-based positions to toggle, in order.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct FlipSequence(Vec<usize>);

impl FlipSequence {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl From<Vec<usize>> for FlipSequence {
    fn from(v: Vec<usize>) -> Self {
        Self(v)
    }
}

impl fmt::Debug for FlipSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl PartialEq<[usize]> for FlipSequence {
    fn eq(&self, other: &[usize]) -> bool {
        self.0 == other
    }
}

impl<const N: usize> PartialEq<[usize; N]> for FlipSequence {
    fn eq(&self, other: &[usize; N]) -> bool {
        self.0 == other
    }
}

/// Vertices visited by a walk, starting vertex included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathListing {
    vertices: Vec<BitWord>,
}

impl PathListing {
    pub fn vertices(&self) -> &[BitWord] {
        &self.vertices
    }

    pub fn first(&self) -> &BitWord {
        &self.vertices[0]
    }

    pub fn last(&self) -> &BitWord {
        self.vertices
            .last()
            .expect("a path has at least one vertex")
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn into_vertices(self) -> Vec<BitWord> {
        self.vertices
    }
}

#[derive(Clone, Copy, Debug)]
enum Task {
    /// Flip sequence of the Dyck substring at positions `start..end` (end exclusive).
    Sub { start: usize, end: usize },
    /// Emit the two positions verbatim.
    Emit(usize, usize),
}

/// Reusable buffers for computing flip sequences without allocating.
#[derive(Debug, Default, Clone)]
pub struct FlipScratch {
    table: MatchTable,
    tasks: Vec<Task>,
}

impl FlipScratch {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends the sub-recursion for the substring `start..end` of the word
    /// whose match table is loaded.
    fn push_sub(&mut self, start: usize, end: usize, out: &mut Vec<usize>) {
        self.tasks.clear();
        self.tasks.push(Task::Sub { start, end });
        while let Some(task) = self.tasks.pop() {
            match task {
                Task::Emit(p, q) => {
                    out.push(p);
                    out.push(q);
                }
                Task::Sub { mut start, mut end } => {
                    // x' = 1 u' 0 v' at `start`; u' handled inline, the rest deferred
                    while start < end {
                        let close = self.table.partner(start);
                        out.push(close);
                        out.push(start);
                        if close + 1 < end {
                            self.tasks.push(Task::Sub {
                                start: close + 1,
                                end,
                            });
                        }
                        self.tasks.push(Task::Emit(start - 1, close));
                        start += 1;
                        end = close;
                    }
                }
            }
        }
    }

    /// Writes `sigma(x)` for the nonempty Dyck word `bits` into `out`.
    pub(crate) fn sigma_into(&mut self, bits: &[u8], out: &mut Vec<usize>) -> Result<()> {
        if bits.is_empty() {
            return Err(Error::EmptyDecomposition);
        }
        self.table.rebuild(bits)?;
        out.clear();
        let close = self.table.partner(1);
        out.push(close);
        out.push(1);
        self.push_sub(2, close, out);
        Ok(())
    }

    /// Writes the modified sequence for `y = 101w0v` into `out`.
    pub(crate) fn tsigma_target_into(&mut self, bits: &[u8], out: &mut Vec<usize>) -> Result<()> {
        if !bits.starts_with(&[1, 0, 1]) {
            return Err(Error::NotInTauImage);
        }
        self.table.rebuild(bits)?;
        out.clear();
        // the 0 closing the 1 at position 3 sits right after w
        let close = self.table.partner(3);
        out.extend_from_slice(&[close, 1, 2, 3, 1, 2]);
        self.push_sub(4, close, out);
        Ok(())
    }

    /// Pre-sizes the buffers for words of length `2n`.
    pub(crate) fn reserve(&mut self, n: usize) {
        self.table.reserve(2 * n);
        self.tasks.reserve(2 * n + 2);
    }

    pub(crate) fn capacity_bytes(&self) -> usize {
        self.table.capacity_bytes() + self.tasks.capacity() * std::mem::size_of::<Task>()
    }
}

pub(crate) fn tsigma_source_into(bits: &[u8], out: &mut Vec<usize>) -> Result<()> {
    if !bits.starts_with(&[1, 1, 0]) {
        return Err(Error::NotInTauDomain);
    }
    out.clear();
    out.extend_from_slice(&[3, 1]);
    Ok(())
}

pub fn sigma(x: &DyckWord) -> Result<FlipSequence> {
    let mut out = Vec::with_capacity(x.len());
    FlipScratch::new().sigma_into(x.bits(), &mut out)?;
    Ok(FlipSequence(out))
}

/// Modified sequence for the first member `x = 110w0v` of a flippable pair.
pub fn tsigma_source(x: &DyckWord) -> Result<FlipSequence> {
    let mut out = Vec::with_capacity(2);
    tsigma_source_into(x.bits(), &mut out)?;
    Ok(FlipSequence(out))
}

/// Modified sequence for the second member `y = 101w0v` of a flippable pair.
pub fn tsigma_target(y: &DyckWord) -> Result<FlipSequence> {
    let mut out = Vec::with_capacity(y.len());
    FlipScratch::new().tsigma_target_into(y.bits(), &mut out)?;
    Ok(FlipSequence(out))
}

pub fn apply_flips(x: &BitWord, flips: &[usize]) -> Result<PathListing> {
    let mut vertices = Vec::with_capacity(flips.len() + 1);
    let mut current = x.clone();
    vertices.push(current.clone());
    for &p in flips {
        current.flip_in_place(p)?;
        vertices.push(current.clone());
    }
    Ok(PathListing { vertices })
}

/// Last vertex of the sigma-path from `x = 1u0v`, which is `u01v`.
pub fn last_vertex(x: &DyckWord) -> Result<NearDyckWord> {
    if x.is_empty() {
        return Err(Error::EmptyDecomposition);
    }
    let table = MatchTable::build(x);
    let close = table.partner(1);
    let bits = x.bits();
    let word = BitWord::concat([&bits[1..close - 1], &[0u8, 1u8][..], &bits[close..]]);
    Ok(NearDyckWord::from_word_unchecked(word))
}
