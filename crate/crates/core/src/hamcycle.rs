//! Hamilton cycle generator for the middle levels graph.
//!
//! The graph on words of length `2n+1` and weight `n` or `n+1` splits into a
//! lower copy (last bit 0), an upper copy (last bit 1, the reverse-complement
//! image of the lower one) and the matching edges that toggle the last bit.
//! The generator alternates between walking a path of the lower copy forward,
//! crossing a matching edge, walking a path of the upper copy backward and
//! crossing back. Each round visits exactly `4n + 2` vertices and ends at a
//! vertex `z0` with `z` a Dyck word, which is where the next flip sequence is
//! chosen.
//!
//! Flip sequences are computed once per round in O(n) and then replayed one
//! position per step, so a long run costs O(1) amortized per vertex and O(n)
//! memory overall.

use crate::bitwords::{near_dyck_split, rev_complement_bits, BitWord, DyckWord, WordClass};
use crate::error::{Error, Result};
use crate::flipseq::{tsigma_source_into, FlipScratch, FlipSequence};
use crate::trees::{in_tau_domain, in_tau_image, TreeScratch};

/// Whether flippable pairs are ever switched to their modified sequences.
///
/// With `Off` the generator walks the 2-factor made of one cycle per plane
/// tree instead of a single Hamilton cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Flips {
    #[default]
    On,
    Off,
}

/// What the next call to [`HamCycle::step`] does.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    /// Toggle the next entry of the forward sequence.
    Forward,
    /// Set the last bit to 1.
    MatchUp,
    /// Toggle the mirrored position of the previous entry of the backward sequence.
    Backward,
    /// Set the last bit to 0.
    MatchDown,
}

/// Receives visited vertices in order.
pub trait VisitSink {
    fn visit(&mut self, vertex: &BitWord);
}

impl<F: FnMut(&BitWord)> VisitSink for F {
    fn visit(&mut self, vertex: &BitWord) {
        self(vertex)
    }
}

/// Resumable cursor over the Hamilton cycle.
#[derive(Debug, Clone)]
pub struct HamCycle {
    n: usize,
    y: BitWord,
    visited: u64,
    seq: Vec<usize>,
    cursor: usize,
    phase: Phase,
    flips: Flips,
    flip_scratch: FlipScratch,
    tree_scratch: TreeScratch,
    buf: Vec<u8>,
}

fn check_vertex(n: usize, x: &BitWord) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let weight = x.weight();
    if x.len() != 2 * n + 1 || (weight != n && weight != n + 1) {
        return Err(Error::NotMiddleLevels {
            n,
            len: x.len(),
            weight,
        });
    }
    Ok(())
}

impl HamCycle {
    /// Cursor positioned at `x`, which counts as the first visited vertex.
    pub fn new(n: usize, x: &BitWord) -> Result<Self> {
        Self::with_flips(n, x, Flips::On)
    }

    /// Cursor at `1^n 0^(n+1)`.
    pub fn canonical(n: usize) -> Result<Self> {
        Self::new(n, &BitWord::ones_then_zeros(n, n + 1))
    }

    pub fn with_flips(n: usize, x: &BitWord, flips: Flips) -> Result<Self> {
        check_vertex(n, x)?;
        let mut state = Self {
            n,
            y: x.clone(),
            visited: 1,
            seq: Vec::with_capacity(4 * n + 6),
            cursor: 0,
            phase: Phase::Forward,
            flips,
            flip_scratch: FlipScratch::new(),
            tree_scratch: TreeScratch::default(),
            buf: Vec::with_capacity(2 * n),
        };
        state.flip_scratch.reserve(n + 1);
        state.tree_scratch.reserve(n + 1);
        state.locate()?;
        Ok(state)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn current(&self) -> &BitWord {
        &self.y
    }

    /// Number of vertices visited so far, the starting vertex included.
    pub fn visited(&self) -> u64 {
        self.visited
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn flips(&self) -> Flips {
        self.flips
    }

    /// True when the current vertex is `z0` with `z` a Dyck word.
    pub fn at_round_start(&self) -> bool {
        self.phase == Phase::Forward && self.cursor == 0
    }

    /// The flip sequence currently being replayed.
    pub fn pending(&self) -> &[usize] {
        &self.seq
    }

    /// Advances to the next vertex and returns the 1-based position toggled.
    #[inline]
    pub fn step(&mut self) -> usize {
        let last = 2 * self.n + 1;
        let bits = self.y.bits_mut();
        let p = match self.phase {
            Phase::Forward => {
                let p = self.seq[self.cursor];
                self.cursor += 1;
                bits[p - 1] ^= 1;
                if self.cursor == self.seq.len() {
                    self.phase = Phase::MatchUp;
                }
                p
            }
            Phase::Backward => {
                self.cursor -= 1;
                let p = last - self.seq[self.cursor];
                bits[p - 1] ^= 1;
                if self.cursor == 0 {
                    self.phase = Phase::MatchDown;
                }
                p
            }
            Phase::MatchUp => {
                bits[last - 1] = 1;
                self.load_backward();
                self.phase = Phase::Backward;
                last
            }
            Phase::MatchDown => {
                bits[last - 1] = 0;
                self.load_forward();
                self.phase = Phase::Forward;
                last
            }
        };
        self.visited += 1;
        p
    }

    /// Advances one vertex and returns it.
    pub fn next_vertex(&mut self) -> &BitWord {
        self.step();
        &self.y
    }

    /// Bytes of heap owned by the generator; independent of how far it has run.
    pub fn heap_bytes(&self) -> usize {
        self.y.len()
            + self.seq.capacity() * std::mem::size_of::<usize>()
            + self.buf.capacity()
            + self.flip_scratch.capacity_bytes()
            + self.tree_scratch.capacity_bytes()
    }

    /// Forward sequence for the Dyck word in the lower `2n` bits.
    fn load_forward(&mut self) {
        let z = &self.y.bits()[..2 * self.n];
        select_into(
            z,
            self.flips,
            &mut self.flip_scratch,
            &mut self.tree_scratch,
            &mut self.buf,
            &mut self.seq,
        );
        self.cursor = 0;
    }

    /// Backward sequence for the near-Dyck word `u01v` in the lower `2n` bits:
    /// sigma of `1 rc(v) 0 rc(u)`, replayed from the end.
    fn load_backward(&mut self) {
        let z = &self.y.bits()[..2 * self.n];
        let split = near_dyck_split(z).expect("upper copy entered at a near-Dyck word");
        let (u, v) = (&z[..split], &z[split + 2..]);
        self.buf.clear();
        self.buf.push(1);
        self.buf.extend(v.iter().rev().map(|&b| b ^ 1));
        self.buf.push(0);
        self.buf.extend(u.iter().rev().map(|&b| b ^ 1));
        self.flip_scratch
            .sigma_into(&self.buf, &mut self.seq)
            .expect("1 rc(v) 0 rc(u) is a nonempty Dyck word");
        self.cursor = self.seq.len();
    }

    /// Sets phase, sequence and cursor so that the current vertex `y` sits at
    /// its place on the cycle.
    fn locate(&mut self) -> Result<()> {
        let n = self.n;
        let z = self.y.bits()[..2 * n].to_vec();
        if self.y.bits()[2 * n] == 0 {
            if crate::bitwords::classify_bits(&z) == WordClass::Dyck {
                self.phase = Phase::Forward;
                self.load_forward();
                return Ok(());
            }
            let first = first_vertex_bits(&z)?;
            let mut starts = vec![first.clone()];
            if self.flips == Flips::On {
                if let Some((source, target)) = self.flipped_pair(&first) {
                    starts = vec![source, target];
                }
            }
            for start in starts {
                select_into(
                    &start,
                    self.flips,
                    &mut self.flip_scratch,
                    &mut self.tree_scratch,
                    &mut self.buf,
                    &mut self.seq,
                );
                if let Some(k) = position_on_path(&start, &self.seq, &z) {
                    self.cursor = k;
                    self.phase = if k == self.seq.len() {
                        Phase::MatchUp
                    } else {
                        Phase::Forward
                    };
                    return Ok(());
                }
            }
            Err(Error::NotOnPath(self.y.to_string()))
        } else {
            let mirrored = rev_complement_bits(&z);
            let first = first_vertex_bits(&mirrored)?;
            self.flip_scratch
                .sigma_into(&first, &mut self.seq)
                .expect("first vertex is a nonempty Dyck word");
            let k = position_on_path(&first, &self.seq, &mirrored)
                .ok_or_else(|| Error::NotOnPath(self.y.to_string()))?;
            self.cursor = k;
            self.phase = if k == 0 {
                Phase::MatchDown
            } else {
                Phase::Backward
            };
            Ok(())
        }
    }

    /// The flippable pair containing `first` if that pair gets modified sequences.
    fn flipped_pair(&mut self, first: &[u8]) -> Option<(Vec<u8>, Vec<u8>)> {
        if !in_tau_domain(first) && !in_tau_image(first) {
            return None;
        }
        let mut other = first.to_vec();
        other.swap(1, 2);
        if in_tau_domain(first) && self.tree_scratch.is_flip_tree(first).ok()? {
            Some((first.to_vec(), other))
        } else if in_tau_image(first) && self.tree_scratch.is_flip_tree(&other).ok()? {
            Some((other, first.to_vec()))
        } else {
            None
        }
    }
}

/// Index `k` such that applying the first `k` flips to `start` yields `target`.
fn position_on_path(start: &[u8], flips: &[usize], target: &[u8]) -> Option<usize> {
    let mut current = start.to_vec();
    let mut distance = current.iter().zip(target).filter(|(a, b)| a != b).count();
    for (k, &p) in flips.iter().enumerate() {
        if distance == 0 {
            return Some(k);
        }
        current[p - 1] ^= 1;
        if current[p - 1] == target[p - 1] {
            distance -= 1;
        } else {
            distance += 1;
        }
    }
    (distance == 0).then_some(flips.len())
}

fn select_into(
    z: &[u8],
    flips: Flips,
    flip_scratch: &mut FlipScratch,
    tree_scratch: &mut TreeScratch,
    buf: &mut Vec<u8>,
    out: &mut Vec<usize>,
) {
    if flips == Flips::On {
        if in_tau_domain(z)
            && tree_scratch
                .is_flip_tree(z)
                .expect("z is in the tau domain")
        {
            tsigma_source_into(z, out).expect("z is in the tau domain");
            return;
        }
        if in_tau_image(z) {
            buf.clear();
            buf.extend_from_slice(z);
            buf.swap(1, 2);
            if tree_scratch
                .is_flip_tree(buf)
                .expect("preimage is in the tau domain")
            {
                flip_scratch
                    .tsigma_target_into(z, out)
                    .expect("z is in the tau image");
                return;
            }
        }
    }
    flip_scratch
        .sigma_into(z, out)
        .expect("round starts at a nonempty Dyck word");
}

/// Flip sequence used for the forward path starting at `z`: the modified
/// sequence when `z` belongs to a flipped pair, plain sigma otherwise.
pub fn select_forward_sequence(z: &DyckWord) -> Result<FlipSequence> {
    select_forward_sequence_with(z, Flips::On)
}

pub fn select_forward_sequence_with(z: &DyckWord, flips: Flips) -> Result<FlipSequence> {
    if z.is_empty() {
        return Err(Error::EmptyDecomposition);
    }
    let mut out = Vec::with_capacity(z.len());
    select_into(
        z.bits(),
        flips,
        &mut FlipScratch::new(),
        &mut TreeScratch::default(),
        &mut Vec::new(),
        &mut out,
    );
    Ok(FlipSequence::from(out))
}

/// The Dyck word `y` whose sigma-path passes through `z`.
pub fn first_vertex_of(z: &BitWord) -> Result<DyckWord> {
    let bits = first_vertex_bits(z.bits())?;
    Ok(DyckWord::from_word_unchecked(BitWord::from_bits_unchecked(
        bits,
    )))
}

/// Splits the lattice path `z` into
///
/// ```text
/// u_1 0 u_2 0 ... u_d 0 w 0 1 v_d 1 ... v_1 1 v     weight n,   unique lowest point
/// u_1 0 ... u_d 0 1 w 1 v_d 1 ... v_1 1 v           weight n+1, unique lowest point
/// u_1 0 ... u_d 0 1 w 0 v_d 1 ... v_1 1 v           weight n,   several lowest points
/// u_1 0 ... u_d 1 w 0 1 v_d 1 ... v_1 1 v           weight n+1, several lowest points
/// ```
///
/// with all pieces Dyck words, and reassembles
/// `1 u_1 1 u_2 ... 1 u_d 1 w 0 v_d 0 ... v_1 0 v`.
fn first_vertex_bits(z: &[u8]) -> Result<Vec<u8>> {
    let len = z.len();
    let weight = z.iter().filter(|&&b| b == 1).count();
    let n = len / 2;
    if !len.is_multiple_of(2) || n == 0 || (weight != n && weight != n + 1) {
        return Err(Error::NotMiddleLevels { n, len, weight });
    }

    // heights[i] after i steps
    let mut heights = Vec::with_capacity(len + 1);
    heights.push(0i64);
    for &b in z {
        let h = heights.last().unwrap() + if b == 1 { 1 } else { -1 };
        heights.push(h);
    }
    let lowest = *heights.iter().min().unwrap();
    let lowest_count = heights.iter().filter(|&&h| h == lowest).count();
    let depth = (-lowest) as usize;

    // first_down[k]: step that first reaches height -k
    let mut first_down = vec![0usize; depth + 1];
    let mut running_min = 0i64;
    for (i, &h) in heights.iter().enumerate().skip(1) {
        if h < running_min {
            running_min = h;
            first_down[(-running_min) as usize] = i;
        }
    }

    // last_up(h): step after which the path stays at height >= h
    let top = heights[len];
    let span = (top - lowest) as usize;
    let mut last_up = vec![0usize; span + 1];
    let mut suffix_min = heights[len];
    for i in (1..=len).rev() {
        suffix_min = suffix_min.min(heights[i]);
        if heights[i - 1] < suffix_min {
            last_up[(suffix_min - lowest) as usize] = i;
        }
    }
    let last_up_at = |h: i64| last_up[(h - lowest) as usize];

    // Pieces as 1-based inclusive ranges `(start, end)`, empty when end < start.
    let piece = |start: usize, end: usize| (start, end);
    let mut left: Vec<(usize, usize)> = Vec::new();
    let w: (usize, usize);
    let mut right: Vec<(usize, usize)> = Vec::new();

    let push_left = |left: &mut Vec<(usize, usize)>, count: usize| {
        for k in 1..=count {
            left.push(piece(first_down[k - 1] + 1, first_down[k] - 1));
        }
    };
    // pieces between successive last up-steps to heights `from..=to`, starting at `begin`
    let split_right = |right: &mut Vec<(usize, usize)>, begin: usize, from: i64, to: i64| {
        let mut start = begin;
        for h in from..=to {
            let step = last_up_at(h);
            right.push(piece(start, step - 1));
            start = step + 1;
        }
        right.push(piece(start, len));
    };

    match (weight == n, lowest_count == 1) {
        (true, true) => {
            let d = depth - 1;
            push_left(&mut left, d);
            w = piece(first_down[d] + 1, first_down[d + 1] - 1);
            let up = first_down[d + 1] + 1;
            debug_assert_eq!(up, last_up_at(lowest + 1));
            split_right(&mut right, up + 1, lowest + 2, 0);
        }
        (false, true) => {
            let d = depth;
            push_left(&mut left, d);
            let up = first_down[d] + 1;
            debug_assert_eq!(up, last_up_at(lowest + 1));
            let mut pieces = Vec::new();
            split_right(&mut pieces, up + 1, lowest + 2, 2);
            w = pieces[0];
            right.extend_from_slice(&pieces[1..]);
        }
        (true, false) => {
            let d = depth;
            push_left(&mut left, d);
            let open = first_down[d] + 1;
            // first return to the lowest height after reaching it
            let close = (open..=len)
                .find(|&i| heights[i] == lowest)
                .expect("lowest height revisited");
            w = piece(open + 1, close - 1);
            split_right(&mut right, close + 1, lowest + 1, 0);
        }
        (false, false) => {
            let d = depth + 1;
            push_left(&mut left, d - 1);
            let close = (0..=len).rev().find(|&i| heights[i] == lowest).unwrap();
            let open = (0..close).rev().find(|&i| heights[i] == lowest).unwrap() + 1;
            left.push(piece(first_down[d - 1] + 1, open - 1));
            w = piece(open + 1, close - 1);
            let up = close + 1;
            debug_assert_eq!(up, last_up_at(lowest + 1));
            split_right(&mut right, up + 1, lowest + 2, 2);
        }
    }

    let slice = |(start, end): (usize, usize)| -> &[u8] {
        if end < start {
            &[]
        } else {
            &z[start - 1..end]
        }
    };
    let (tail, middle) = right.split_last().expect("right side ends with v");
    let mut y = Vec::with_capacity(len);
    for &u in &left {
        y.push(1);
        y.extend_from_slice(slice(u));
    }
    y.push(1);
    y.extend_from_slice(slice(w));
    y.push(0);
    for &v in middle {
        y.extend_from_slice(slice(v));
        y.push(0);
    }
    y.extend_from_slice(slice(*tail));
    debug_assert_eq!(crate::bitwords::classify_bits(&y), WordClass::Dyck);
    Ok(y)
}

/// Walks forward from `x` to the first vertex `z0` with `z` a Dyck word.
///
/// Returns the generator parked at that vertex together with every vertex
/// visited on the way, `x` and the final vertex included.
pub fn init(n: usize, x: &BitWord) -> Result<(HamCycle, Vec<BitWord>)> {
    init_with(n, x, Flips::On)
}

pub fn init_with(n: usize, x: &BitWord, flips: Flips) -> Result<(HamCycle, Vec<BitWord>)> {
    let mut state = HamCycle::with_flips(n, x, flips)?;
    let mut visited = vec![x.clone()];
    while !state.at_round_start() {
        visited.push(state.next_vertex().clone());
    }
    Ok((state, visited))
}

/// Visits `count` consecutive vertices of the Hamilton cycle starting at `x`.
///
/// `x` is the first vertex handed to `sink`; counts beyond the cycle length
/// wrap around.
pub fn ham_cycle<S: VisitSink>(n: usize, x: &BitWord, count: u64, sink: S) -> Result<()> {
    ham_cycle_with(n, x, count, Flips::On, sink)
}

pub fn ham_cycle_with<S: VisitSink>(
    n: usize,
    x: &BitWord,
    count: u64,
    flips: Flips,
    mut sink: S,
) -> Result<()> {
    let mut state = HamCycle::with_flips(n, x, flips)?;
    if count == 0 {
        return Ok(());
    }
    sink.visit(state.current());
    for _ in 1..count {
        state.step();
        sink.visit(state.current());
    }
    Ok(())
}

/// Number of vertices of the middle levels graph, `2 * binom(2n+1, n)`, if it
/// fits in a `u64`.
pub fn vertex_count(n: usize) -> Option<u64> {
    let mut c: u128 = 1;
    for i in 0..n as u128 {
        c = c.checked_mul(2 * n as u128 + 1 - i)? / (i + 1);
    }
    u64::try_from(c.checked_mul(2)?).ok()
}
