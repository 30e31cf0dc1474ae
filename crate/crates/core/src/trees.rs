//! Rooted and plane trees encoded as Dyck words.
//!
//! A Dyck word with `n` up-steps is read as an ordered rooted tree with `n`
//! edges: a `1` descends to a new rightmost child, a `0` returns to the
//! parent. Forgetting the root but keeping the cyclic order of neighbours at
//! every vertex gives a plane tree; rotating a rooted tree (moving the root to
//! its leftmost child) walks through all rootings of the same plane tree.
//!
//! The heavy lifting happens on [`PlaneTree`], a flat adjacency structure with
//! cyclic neighbour lists, where a rooting is just a pair (root vertex, slot of
//! its leftmost child) and one rotation costs O(1).

use crate::bitwords::{BitWord, DyckWord};
use crate::error::{Error, Result};

/// Ordered rooted tree. Vertex ids follow preorder; the root is vertex 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
}

impl RootedTree {
    pub fn from_dyck(x: &DyckWord) -> Self {
        let mut parent = vec![None];
        let mut children = vec![Vec::new()];
        let mut current = 0;
        for &b in x.bits() {
            if b == 1 {
                let id = parent.len();
                parent.push(Some(current));
                children.push(Vec::new());
                children[current].push(id);
                current = id;
            } else {
                current = parent[current].expect("Dyck word never climbs above the root");
            }
        }
        Self { parent, children }
    }

    pub fn to_dyck(&self) -> DyckWord {
        let mut bits = Vec::with_capacity(2 * self.edge_count());
        let mut stack = vec![(0usize, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (v, i) = *top;
            if let Some(&c) = self.children[v].get(i) {
                top.1 += 1;
                bits.push(1);
                stack.push((c, 0));
            } else {
                stack.pop();
                if !stack.is_empty() {
                    bits.push(0);
                }
            }
        }
        DyckWord::from_word_unchecked(BitWord::from_bits_unchecked(bits))
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn edge_count(&self) -> usize {
        self.parent.len() - 1
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Degree in the underlying unrooted tree.
    pub fn degree(&self, v: usize) -> usize {
        self.children[v].len() + usize::from(self.parent[v].is_some())
    }

    /// Neighbours of `v`: parent first (if any), then children left to right.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.parent[v]
            .into_iter()
            .chain(self.children[v].iter().copied())
    }
}

pub fn tree_from_dyck(x: &DyckWord) -> RootedTree {
    RootedTree::from_dyck(x)
}

pub fn dyck_from_tree(t: &RootedTree) -> DyckWord {
    t.to_dyck()
}

/// The one or two central vertices of a tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Centers {
    One(usize),
    Two(usize, usize),
}

impl Centers {
    pub fn to_vec(self) -> Vec<usize> {
        match self {
            Centers::One(c) => vec![c],
            Centers::Two(a, b) => vec![a, b],
        }
    }
}

/// Centers by stripping leaves in rounds.
pub fn centers(t: &RootedTree) -> Centers {
    let mut plane = PlaneTree::default();
    plane.rebuild(t.to_dyck().bits());
    plane.centers()
}

/// Start index of the lexicographically least rotation of `s` (Booth).
///
/// Ties between equal rotations go to the smallest index. Returns 0 for an
/// empty slice.
pub fn booth_min_rotation<T: Ord>(s: &[T]) -> usize {
    let mut failure = Vec::new();
    booth_with(s, &mut failure)
}

fn booth_with<T: Ord>(s: &[T], failure: &mut Vec<isize>) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    failure.clear();
    failure.resize(2 * n, -1);
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = &s[j % n];
        let mut i = failure[j - k - 1];
        while i != -1 && *sj != s[(k + i as usize + 1) % n] {
            if *sj < s[(k + i as usize + 1) % n] {
                k = j - i as usize - 1;
            }
            i = failure[i as usize];
        }
        if i == -1 && *sj != s[k % n] {
            if *sj < s[k % n] {
                k = j;
            }
            failure[j - k] = -1;
        } else {
            failure[j - k] = i + 1;
        }
    }
    k % n
}

/// Moves the root to its leftmost child: `1u0v` becomes `u1v0`.
pub fn rotate(x: &DyckWord) -> Result<DyckWord> {
    if x.is_empty() {
        return Err(Error::EmptyDecomposition);
    }
    let close = matching_close(x.bits(), 0);
    let bits = x.bits();
    let word = BitWord::concat([&bits[1..close], &[1u8][..], &bits[close + 1..], &[0u8][..]]);
    Ok(DyckWord::from_word_unchecked(word))
}

/// 0-based index of the 0 closing the 1 at 0-based index `open`.
fn matching_close(bits: &[u8], open: usize) -> usize {
    let mut height = 0i64;
    for (i, &b) in bits.iter().enumerate().skip(open) {
        height += if b == 1 { 1 } else { -1 };
        if height == 0 {
            return i;
        }
    }
    unreachable!("caller passes a balanced word")
}

/// Canonically rooted representative of the rotation class of `x`.
pub fn canonical_root(x: &DyckWord) -> DyckWord {
    if x.is_empty() {
        return DyckWord::empty();
    }
    let mut scratch = TreeScratch::default();
    scratch.tree.rebuild(x.bits());
    let rooting = scratch.canonical_rooting();
    let mut out = Vec::with_capacity(x.len());
    scratch.tree.encode(rooting, &mut out, &mut scratch.frames);
    DyckWord::from_word_unchecked(BitWord::from_bits_unchecked(out))
}

/// Identifies a plane tree: equal keys iff the rooted trees are rotations of
/// one another.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlaneClassKey(DyckWord);

impl PlaneClassKey {
    pub fn of(x: &DyckWord) -> Self {
        Self(canonical_root(x))
    }

    pub fn canonical(&self) -> &DyckWord {
        &self.0
    }
}

/// Leaf count, non-terminal leaf count and maximum degree of a plane tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature {
    pub leaves: usize,
    pub nonterminal_leaves: usize,
    pub max_degree: usize,
}

pub(crate) fn in_tau_domain(bits: &[u8]) -> bool {
    bits.starts_with(&[1, 1, 0])
}

pub(crate) fn in_tau_image(bits: &[u8]) -> bool {
    bits.starts_with(&[1, 0, 1])
}

/// `110w0v` to `101w0v`: the leftmost grandchild edge becomes the leftmost
/// child edge of the root.
pub fn tau(x: &DyckWord) -> Result<DyckWord> {
    if !in_tau_domain(x.bits()) {
        return Err(Error::NotInTauDomain);
    }
    let mut bits = x.bits().to_vec();
    bits.swap(1, 2);
    Ok(DyckWord::from_word_unchecked(BitWord::from_bits_unchecked(
        bits,
    )))
}

pub fn tau_inverse(y: &DyckWord) -> Result<DyckWord> {
    if !in_tau_image(y.bits()) {
        return Err(Error::NotInTauImage);
    }
    let mut bits = y.bits().to_vec();
    bits.swap(1, 2);
    Ok(DyckWord::from_word_unchecked(BitWord::from_bits_unchecked(
        bits,
    )))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreePredicates {
    pub is_star: bool,
    pub has_thin_leaf: bool,
    pub is_dumbbell: bool,
}

pub fn tree_predicates(x: &DyckWord) -> TreePredicates {
    let mut tree = PlaneTree::default();
    tree.rebuild(x.bits());
    TreePredicates {
        is_star: tree.is_star(),
        has_thin_leaf: tree.has_thin_leaf(),
        is_dumbbell: tree.inner_vertex_count() == 2,
    }
}

/// Decides whether the flippable pair `(x, tau(x))` is flipped.
///
/// Returns true for at most one member of every rotation class.
pub fn is_flip_tree(x: &DyckWord) -> Result<bool> {
    TreeScratch::default().is_flip_tree(x.bits())
}

/// A rooting of a plane tree: the root and the slot of its leftmost child.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Rooting {
    root: usize,
    first: usize,
}

/// Tree with cyclically ordered neighbour lists in flat storage.
///
/// `nbr[offset[v]..offset[v + 1]]` are the neighbours of `v` in cyclic order;
/// `twin[s]` is the slot of `v` inside the list of `nbr[s]`.
#[derive(Debug, Clone, Default)]
pub(crate) struct PlaneTree {
    offset: Vec<usize>,
    nbr: Vec<usize>,
    twin: Vec<usize>,
    parent: Vec<usize>,
    fill: Vec<usize>,
    strip: Vec<usize>,
    layer: Vec<usize>,
    next: Vec<usize>,
}

impl PlaneTree {
    /// Loads the tree of a nonempty Dyck word, rooted at vertex 0 with the
    /// first child in slot 0.
    pub(crate) fn rebuild(&mut self, bits: &[u8]) {
        let n = bits.len() / 2;
        let vertices = n + 1;
        self.parent.clear();
        self.parent.resize(vertices, usize::MAX);
        self.offset.clear();
        self.offset.resize(vertices + 1, 0);

        // preorder ids, degree counts in offset[v + 1]
        let mut current = 0usize;
        let mut next_id = 1usize;
        for &b in bits {
            if b == 1 {
                self.parent[next_id] = current;
                self.offset[current + 1] += 1;
                self.offset[next_id + 1] += 1;
                current = next_id;
                next_id += 1;
            } else {
                current = self.parent[current];
            }
        }
        for v in 0..vertices {
            self.offset[v + 1] += self.offset[v];
        }

        self.nbr.clear();
        self.nbr.resize(2 * n, 0);
        self.twin.clear();
        self.twin.resize(2 * n, 0);
        self.fill.clear();
        self.fill.extend_from_slice(&self.offset[..vertices]);
        // non-root vertices keep their parent in slot 0
        for v in 1..vertices {
            self.fill[v] += 1;
        }
        for v in 1..vertices {
            let p = self.parent[v];
            let slot_in_p = self.fill[p];
            self.fill[p] += 1;
            let slot_in_v = self.offset[v];
            self.nbr[slot_in_p] = v;
            self.nbr[slot_in_v] = p;
            self.twin[slot_in_p] = 0;
            self.twin[slot_in_v] = slot_in_p - self.offset[p];
        }
    }

    pub(crate) fn vertex_count(&self) -> usize {
        self.offset.len() - 1
    }

    #[inline]
    pub(crate) fn degree(&self, v: usize) -> usize {
        self.offset[v + 1] - self.offset[v]
    }

    #[inline]
    fn neighbor(&self, v: usize, slot: usize) -> usize {
        self.nbr[self.offset[v] + slot]
    }

    #[inline]
    fn twin_slot(&self, v: usize, slot: usize) -> usize {
        self.twin[self.offset[v] + slot]
    }

    fn slot_of(&self, v: usize, w: usize) -> usize {
        (0..self.degree(v))
            .find(|&s| self.neighbor(v, s) == w)
            .expect("vertices are adjacent")
    }

    pub(crate) fn is_leaf(&self, v: usize) -> bool {
        self.degree(v) == 1
    }

    pub(crate) fn inner_vertex_count(&self) -> usize {
        (0..self.vertex_count())
            .filter(|&v| self.degree(v) >= 2)
            .count()
    }

    pub(crate) fn is_star(&self) -> bool {
        self.inner_vertex_count() <= 1
    }

    pub(crate) fn has_thin_leaf(&self) -> bool {
        (0..self.vertex_count()).any(|v| self.is_leaf(v) && self.degree(self.neighbor(v, 0)) == 2)
    }

    pub(crate) fn neighbors(&self, v: usize) -> &[usize] {
        &self.nbr[self.offset[v]..self.offset[v + 1]]
    }

    /// Rotation: the leftmost child becomes the root, the old root its last child.
    #[inline]
    fn rotate(&self, r: Rooting) -> Rooting {
        let c = self.neighbor(r.root, r.first);
        let back = self.twin_slot(r.root, r.first);
        Rooting {
            root: c,
            first: (back + 1) % self.degree(c),
        }
    }

    fn centers(&mut self) -> Centers {
        let vertices = self.vertex_count();
        if vertices == 1 {
            return Centers::One(0);
        }
        let mut degree = std::mem::take(&mut self.strip);
        let mut layer = std::mem::take(&mut self.layer);
        let mut next = std::mem::take(&mut self.next);
        degree.clear();
        degree.extend((0..vertices).map(|v| self.degree(v)));
        layer.clear();
        layer.extend((0..vertices).filter(|&v| degree[v] == 1));
        let mut remaining = vertices;
        while remaining > 2 {
            remaining -= layer.len();
            next.clear();
            for &leaf in &layer {
                degree[leaf] = 0;
                for &w in self.neighbors(leaf) {
                    if degree[w] > 0 {
                        degree[w] -= 1;
                        if degree[w] == 1 {
                            next.push(w);
                        }
                    }
                }
            }
            std::mem::swap(&mut layer, &mut next);
        }
        let result = match layer.as_slice() {
            [c] => Centers::One(*c),
            [a, b] => Centers::Two((*a).min(*b), (*a).max(*b)),
            _ => unreachable!("leaf stripping ends with one or two vertices"),
        };
        self.strip = degree;
        self.layer = layer;
        self.next = next;
        result
    }

    /// Writes the Dyck word of the tree under `rooting`.
    fn encode(&self, rooting: Rooting, out: &mut Vec<u8>, frames: &mut Vec<Frame>) {
        out.clear();
        self.start_encode(rooting, frames);
        self.run_encode(frames, |b| {
            out.push(b);
            true
        });
    }

    /// Whether the Dyck word of the tree under `rooting` equals `bits`,
    /// stopping at the first difference.
    fn encodes_to(&self, rooting: Rooting, bits: &[u8], frames: &mut Vec<Frame>) -> bool {
        self.start_encode(rooting, frames);
        let mut i = 0;
        let complete = self.run_encode(frames, |b| {
            let same = bits.get(i) == Some(&b);
            i += 1;
            same
        });
        complete && i == bits.len()
    }

    fn start_encode(&self, rooting: Rooting, frames: &mut Vec<Frame>) {
        frames.clear();
        frames.push(Frame {
            vertex: rooting.root,
            start: rooting.first,
            count: self.degree(rooting.root),
            done: 0,
        });
    }

    /// Writes the Dyck word of the subtree hanging from `slot` of `v`, not
    /// including the edge to it.
    fn encode_branch(&self, v: usize, slot: usize, out: &mut Vec<u8>, frames: &mut Vec<Frame>) {
        let child = self.neighbor(v, slot);
        let back = self.twin_slot(v, slot);
        let deg = self.degree(child);
        frames.clear();
        frames.push(Frame {
            vertex: child,
            start: (back + 1) % deg,
            count: deg - 1,
            done: 0,
        });
        self.run_encode(frames, |b| {
            out.push(b);
            true
        });
    }

    /// Depth-first walk from the frames on the stack; `emit` returns false to stop.
    /// Returns whether the walk ran to completion.
    fn run_encode(&self, frames: &mut Vec<Frame>, mut emit: impl FnMut(u8) -> bool) -> bool {
        while let Some(top) = frames.last_mut() {
            if top.done < top.count {
                let deg = self.offset[top.vertex + 1] - self.offset[top.vertex];
                let slot = (top.start + top.done) % deg;
                top.done += 1;
                let v = top.vertex;
                let child = self.neighbor(v, slot);
                let back = self.twin_slot(v, slot);
                let child_deg = self.degree(child);
                if !emit(1) {
                    return false;
                }
                frames.push(Frame {
                    vertex: child,
                    start: (back + 1) % child_deg,
                    count: child_deg - 1,
                    done: 0,
                });
            } else {
                frames.pop();
                if !frames.is_empty() && !emit(0) {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Frame {
    vertex: usize,
    start: usize,
    count: usize,
    done: usize,
}

/// `bits = 1(10)^k 0 v`.
fn first_child_has_only_leaves(bits: &[u8]) -> bool {
    let mut i = 1;
    while bits.get(i..i + 2) == Some(&[1, 0]) {
        i += 2;
    }
    bits.get(i) == Some(&0)
}

/// Whether some leaf of the unrooted tree of the nonempty Dyck word `bits`
/// is adjacent to a vertex of degree 2.
fn word_has_thin_leaf(bits: &[u8]) -> bool {
    // a non-root vertex whose only child is a leaf
    if bits.windows(4).any(|w| w == [1, 1, 0, 0]) {
        return true;
    }
    let mut depth = 0usize;
    let mut top_pairs = 0usize;
    let mut leaf_child = false;
    let mut first_close = 0;
    for (i, &b) in bits.iter().enumerate() {
        if b == 1 {
            depth += 1;
        } else {
            depth -= 1;
            if depth == 0 {
                top_pairs += 1;
                leaf_child |= i >= 1 && bits[i - 1] == 1;
                if top_pairs == 1 {
                    first_close = i;
                }
            }
        }
    }
    match top_pairs {
        // root of degree 2 with a leaf child
        2 => leaf_child,
        // the root is a leaf; its child has degree 2 iff it has exactly one child
        1 => {
            let inner = &bits[1..first_close];
            let mut depth = 0usize;
            let mut pairs = 0usize;
            for &b in inner {
                if b == 1 {
                    depth += 1;
                } else {
                    depth -= 1;
                    pairs += usize::from(depth == 0);
                }
            }
            pairs == 1
        }
        _ => false,
    }
}

/// Reusable buffers for canonical rooting and the flip-tree test.
#[derive(Debug, Clone, Default)]
pub(crate) struct TreeScratch {
    tree: PlaneTree,
    frames: Vec<Frame>,
    symbols: Vec<i8>,
    branch: Vec<u8>,
    boundaries: Vec<usize>,
    failure: Vec<isize>,
    enc_a: Vec<u8>,
    enc_b: Vec<u8>,
    inner_neighbors: Vec<usize>,
}

impl TreeScratch {
    fn canonical_rooting(&mut self) -> Rooting {
        match self.tree.centers() {
            Centers::Two(a, b) => {
                let ra = Rooting {
                    root: a,
                    first: self.tree.slot_of(a, b),
                };
                let rb = Rooting {
                    root: b,
                    first: self.tree.slot_of(b, a),
                };
                self.tree.encode(ra, &mut self.enc_a, &mut self.frames);
                self.tree.encode(rb, &mut self.enc_b, &mut self.frames);
                if self.enc_b < self.enc_a {
                    rb
                } else {
                    ra
                }
            }
            Centers::One(c) => {
                // (-1, y_1, -1, y_2, ..., -1, y_k) over the branches at c
                self.symbols.clear();
                self.boundaries.clear();
                for slot in 0..self.tree.degree(c) {
                    self.boundaries.push(self.symbols.len());
                    self.symbols.push(-1);
                    self.branch.clear();
                    self.tree
                        .encode_branch(c, slot, &mut self.branch, &mut self.frames);
                    self.symbols.extend(self.branch.iter().map(|&b| b as i8));
                }
                let start = booth_with(&self.symbols, &mut self.failure);
                let first = self
                    .boundaries
                    .binary_search(&start)
                    .expect("least rotation starts at a separator");
                Rooting { root: c, first }
            }
        }
    }

    fn inner_neighbor_counts(&mut self) {
        let vertices = self.tree.vertex_count();
        self.inner_neighbors.clear();
        self.inner_neighbors.extend((0..vertices).map(|v| {
            self.tree
                .neighbors(v)
                .iter()
                .filter(|&&w| self.tree.degree(w) >= 2)
                .count()
        }));
    }

    /// `bits` must be a Dyck word.
    pub(crate) fn is_flip_tree(&mut self, bits: &[u8]) -> Result<bool> {
        if !in_tau_domain(bits) {
            return Err(Error::NotInTauDomain);
        }
        // a positive answer means `bits` is itself of the form 1100v, or of the
        // form 1(10)^k 0v with k >= 2 and no thin leaf anywhere
        if bits.starts_with(&[1, 1, 0, 0]) {
            return self.evaluate_flip_tree(bits);
        }
        if !bits.starts_with(&[1, 1, 0, 1, 0]) || !first_child_has_only_leaves(bits) {
            return Ok(false);
        }
        if word_has_thin_leaf(bits) {
            return Ok(false);
        }
        self.evaluate_flip_tree(bits)
    }

    fn evaluate_flip_tree(&mut self, bits: &[u8]) -> Result<bool> {
        self.tree.rebuild(bits);
        if self.tree.is_star() {
            return Ok(false);
        }
        let canonical = self.canonical_rooting();
        let thin = self.tree.has_thin_leaf();
        if !thin {
            self.inner_neighbor_counts();
        }
        let tree = &self.tree;
        let rotations = 2 * (tree.vertex_count() - 1);
        let mut rooting = canonical;
        let mut found = None;
        for _ in 0..rotations {
            let r = rooting.root;
            let c = tree.neighbor(r, rooting.first);
            if thin {
                // 1100v: leftmost child has a single child, which is a leaf
                if tree.degree(c) == 2 {
                    let back = tree.twin_slot(r, rooting.first);
                    let grandchild = tree.neighbor(c, (back + 1) % 2);
                    if tree.is_leaf(grandchild) {
                        found = Some((rooting, None));
                        break;
                    }
                }
            } else {
                // 1(10)^k 0 v with k >= 2: leftmost child has k >= 2 children, all leaves
                let k = tree.degree(c) - 1;
                let root_inner = usize::from(tree.degree(r) >= 2);
                if k >= 2 && self.inner_neighbors[c] == root_inner {
                    // v = (10)^l iff every other child of the root is a leaf
                    let l = (self.inner_neighbors[r] == 1).then(|| tree.degree(r) - 1);
                    found = Some((rooting, Some((k, l))));
                    break;
                }
            }
            rooting = tree.rotate(rooting);
        }
        let (rooting, shape) = found.ok_or(Error::NoMatchingRotation)?;
        if !tree.encodes_to(rooting, bits, &mut self.frames) {
            return Ok(false);
        }
        Ok(match shape {
            Some((k, Some(l))) => l >= k,
            _ => true,
        })
    }

    /// Pre-sizes every buffer for trees with `n` edges.
    pub(crate) fn reserve(&mut self, n: usize) {
        let cap = 4 * n + 4;
        let t = &mut self.tree;
        for buf in [
            &mut t.offset,
            &mut t.nbr,
            &mut t.twin,
            &mut t.parent,
            &mut t.fill,
            &mut t.strip,
            &mut t.layer,
            &mut t.next,
        ] {
            buf.reserve(cap);
        }
        self.boundaries.reserve(cap);
        self.failure.reserve(2 * cap);
        self.inner_neighbors.reserve(cap);
        self.frames.reserve(cap);
        self.symbols.reserve(cap);
        self.branch.reserve(cap);
        self.enc_a.reserve(cap);
        self.enc_b.reserve(cap);
    }

    pub(crate) fn capacity_bytes(&self) -> usize {
        let t = &self.tree;
        let words = t.offset.capacity()
            + t.nbr.capacity()
            + t.twin.capacity()
            + t.parent.capacity()
            + t.fill.capacity()
            + t.strip.capacity()
            + t.layer.capacity()
            + t.next.capacity()
            + self.boundaries.capacity()
            + self.failure.capacity()
            + self.inner_neighbors.capacity();
        words * std::mem::size_of::<usize>()
            + self.frames.capacity() * std::mem::size_of::<Frame>()
            + self.symbols.capacity()
            + self.branch.capacity()
            + self.enc_a.capacity()
            + self.enc_b.capacity()
    }
}

#[cfg(test)]
mod tests {
    use std::collections::{HashMap, HashSet, VecDeque};

    use rand::{Rng, SeedableRng};

    use super::*;
    use crate::bitwords::dyck_words;

    fn dyck(s: &str) -> DyckWord {
        s.parse().unwrap()
    }

    #[test]
    fn tree_from_dyck_examples() {
        let t = tree_from_dyck(&dyck("10"));
        assert_eq!(t.vertex_count(), 2);
        assert_eq!(t.children(0), &[1]);

        // root - a, a has children b and c
        let t = tree_from_dyck(&dyck("110100"));
        assert_eq!(t.children(0), &[1]);
        assert_eq!(t.children(1), &[2, 3]);

        // root - a, a has child b; root - c
        let t = tree_from_dyck(&dyck("110010"));
        assert_eq!(t.children(0), &[1, 3]);
        assert_eq!(t.children(1), &[2]);

        let t = tree_from_dyck(&dyck("1100"));
        assert_eq!(t.children(0), &[1]);
        assert_eq!(t.children(1), &[2]);
        assert_eq!(t.degree(0), 1);
    }

    #[test]
    fn dyck_tree_round_trip() {
        for m in 0..=9 {
            for x in dyck_words(m) {
                let t = tree_from_dyck(&x);
                assert_eq!(t.edge_count(), m);
                assert_eq!(dyck_from_tree(&t), x);
            }
        }
    }

    #[test]
    fn rotate_examples() {
        assert_eq!(rotate(&dyck("111000")).unwrap().to_string(), "110010");
        assert_eq!(rotate(&dyck("10")).unwrap().to_string(), "10");
        assert_eq!(rotate(&dyck("110100")).unwrap().to_string(), "101010");
        assert!(rotate(&DyckWord::empty()).is_err());
    }

    #[test]
    fn rotate_has_period_dividing_twice_the_edges() {
        for m in 1..=8 {
            for x in dyck_words(m) {
                let mut y = x.clone();
                for _ in 0..2 * m {
                    y = rotate(&y).unwrap();
                }
                assert_eq!(y, x);
            }
        }
    }

    #[test]
    fn plane_rotation_matches_word_rotation() {
        let mut frames = Vec::new();
        let mut out = Vec::new();
        for m in 1..=7 {
            for x in dyck_words(m) {
                let mut tree = PlaneTree::default();
                tree.rebuild(x.bits());
                let mut rooting = Rooting { root: 0, first: 0 };
                let mut word = x.clone();
                for _ in 0..2 * m {
                    tree.encode(rooting, &mut out, &mut frames);
                    assert_eq!(out.as_slice(), word.bits());
                    rooting = tree.rotate(rooting);
                    word = rotate(&word).unwrap();
                }
            }
        }
    }

    fn path_tree(vertices: usize) -> RootedTree {
        let mut bits = vec![1; vertices - 1];
        bits.extend(vec![0; vertices - 1]);
        tree_from_dyck(&DyckWord::try_from(BitWord::from_bits(bits).unwrap()).unwrap())
    }

    #[test]
    fn centers_examples() {
        // rooted at an end: ids 0-1-2-3 along the path
        assert_eq!(centers(&path_tree(4)), Centers::Two(1, 2));
        assert_eq!(centers(&tree_from_dyck(&dyck("10101010"))), Centers::One(0));
        // c - root - a - b
        assert_eq!(
            centers(&tree_from_dyck(&dyck("110010"))),
            Centers::Two(0, 1)
        );
        // star centred at a
        assert_eq!(centers(&tree_from_dyck(&dyck("110100"))), Centers::One(1));
    }

    fn eccentricity_centers(t: &RootedTree) -> Vec<usize> {
        let n = t.vertex_count();
        let ecc: Vec<usize> = (0..n)
            .map(|s| {
                let mut dist = vec![usize::MAX; n];
                dist[s] = 0;
                let mut queue = VecDeque::from([s]);
                while let Some(v) = queue.pop_front() {
                    for w in t.neighbors(v) {
                        if dist[w] == usize::MAX {
                            dist[w] = dist[v] + 1;
                            queue.push_back(w);
                        }
                    }
                }
                *dist.iter().max().unwrap()
            })
            .collect();
        let best = *ecc.iter().min().unwrap();
        (0..n).filter(|&v| ecc[v] == best).collect()
    }

    #[test]
    fn centers_agree_with_eccentricity() {
        for m in 0..=10 {
            for x in dyck_words(m) {
                let t = tree_from_dyck(&x);
                assert_eq!(centers(&t).to_vec(), eccentricity_centers(&t), "{x}");
            }
        }
    }

    fn brute_min_rotation(s: &[i8]) -> usize {
        let n = s.len();
        (0..n)
            .min_by(|&a, &b| {
                let ra = s[a..].iter().chain(&s[..a]);
                let rb = s[b..].iter().chain(&s[..b]);
                ra.cmp(rb).then(a.cmp(&b))
            })
            .unwrap()
    }

    #[test]
    fn booth_examples() {
        assert_eq!(booth_min_rotation(&[0i8, 0, 1, 1]), 0);
        let s = [-1i8, 1, 1, 0, 0, -1, 1, 0];
        let k = booth_min_rotation(&s);
        assert_eq!(k, 5);
        let rotated: Vec<i8> = s[k..].iter().chain(&s[..k]).copied().collect();
        assert_eq!(rotated, [-1, 1, 0, -1, 1, 1, 0, 0]);
        assert_eq!(booth_min_rotation(&[1i8, 0]), 1);
        assert_eq!(booth_min_rotation(&[1i8, 0, 1, 0]), 1);
        assert_eq!(booth_min_rotation::<i8>(&[]), 0);
    }

    #[test]
    fn booth_agrees_with_brute_force() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
        for _ in 0..10_000 {
            let len = rng.gen_range(1..=64);
            let alphabet = rng.gen_range(1..=3);
            let s: Vec<i8> = (0..len)
                .map(|_| rng.gen_range(0..alphabet) as i8 - 1)
                .collect();
            assert_eq!(booth_min_rotation(&s), brute_min_rotation(&s), "{s:?}");
        }
    }

    #[test]
    fn canonical_root_examples() {
        assert_eq!(canonical_root(&dyck("110010")).to_string(), "110010");
        assert_eq!(
            canonical_root(&dyck("101010")),
            canonical_root(&dyck("110100"))
        );
        assert_eq!(canonical_root(&dyck("101010")).to_string(), "101010");
        assert_ne!(
            canonical_root(&dyck("101010")),
            canonical_root(&dyck("110010"))
        );
    }

    fn rotation_orbit(x: &DyckWord) -> Vec<DyckWord> {
        let mut orbit = vec![x.clone()];
        let mut y = rotate(x).unwrap();
        while &y != x {
            orbit.push(y.clone());
            y = rotate(&y).unwrap();
        }
        orbit
    }

    #[test]
    fn canonical_root_is_a_class_invariant() {
        for m in 1..=8 {
            let mut seen: HashMap<DyckWord, DyckWord> = HashMap::new();
            let mut keys = HashSet::new();
            for x in dyck_words(m) {
                if seen.contains_key(&x) {
                    continue;
                }
                let orbit = rotation_orbit(&x);
                let key = canonical_root(&x);
                assert!(orbit.contains(&key), "{key} not a rotation of {x}");
                for y in &orbit {
                    assert_eq!(canonical_root(y), key, "{y} vs {x}");
                    seen.insert(y.clone(), key.clone());
                }
                assert!(keys.insert(key), "distinct orbits share a key (m = {m})");
            }
        }
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau(&dyck("110010")).unwrap().to_string(), "101010");
        assert_eq!(tau(&dyck("110100")).unwrap().to_string(), "101100");
        assert_eq!(tau(&dyck("11001100")).unwrap().to_string(), "10101100");
        assert_eq!(tau_inverse(&dyck("101010")).unwrap().to_string(), "110010");
        assert_eq!(tau_inverse(&dyck("101100")).unwrap().to_string(), "110100");
        assert_eq!(tau(&dyck("111000")), Err(Error::NotInTauDomain));
        assert_eq!(tau_inverse(&dyck("111000")), Err(Error::NotInTauImage));
    }

    #[test]
    fn tau_domain_and_image_are_disjoint() {
        for m in 2..=9 {
            let words = dyck_words(m);
            let domain: HashSet<_> = words.iter().filter(|x| in_tau_domain(x.bits())).collect();
            let image: HashSet<_> = words.iter().filter(|x| in_tau_image(x.bits())).collect();
            assert!(domain.is_disjoint(&image));
            for x in &domain {
                let y = tau(x).unwrap();
                assert!(image.contains(&y));
                assert_eq!(&tau_inverse(&y).unwrap(), *x);
            }
            assert_eq!(domain.len(), image.len());
        }
    }

    #[test]
    fn predicate_examples() {
        assert_eq!(
            tree_predicates(&dyck("110100")),
            TreePredicates {
                is_star: true,
                has_thin_leaf: false,
                is_dumbbell: false
            }
        );
        // 3-edge path
        assert_eq!(
            tree_predicates(&dyck("110010")),
            TreePredicates {
                is_star: false,
                has_thin_leaf: true,
                is_dumbbell: true
            }
        );
        assert_eq!(
            tree_predicates(&dyck("11001100")),
            TreePredicates {
                is_star: false,
                has_thin_leaf: true,
                is_dumbbell: false
            }
        );
        assert!(tree_predicates(&dyck("10101010")).is_star);
        // root counts as a leaf when it has one child
        assert!(tree_predicates(&dyck("1100")).is_star);
        assert!(tree_predicates(&dyck("111000")).has_thin_leaf);
    }

    #[test]
    fn flip_tree_examples() {
        assert!(!is_flip_tree(&dyck("110100")).unwrap());
        assert!(is_flip_tree(&dyck("110010")).unwrap());
        assert!(is_flip_tree(&dyck("11001100")).unwrap());
        assert_eq!(is_flip_tree(&dyck("101010")), Err(Error::NotInTauDomain));
    }

    #[test]
    fn at_most_one_flip_tree_per_class() {
        for m in 1..=9 {
            let mut per_class: HashMap<DyckWord, usize> = HashMap::new();
            for x in dyck_words(m)
                .into_iter()
                .filter(|x| in_tau_domain(x.bits()))
            {
                if is_flip_tree(&x).unwrap() {
                    assert!(m >= 3);
                    assert!(!tree_predicates(&x).is_star);
                    *per_class.entry(canonical_root(&x)).or_default() += 1;
                }
            }
            assert!(per_class.values().all(|&c| c == 1), "m = {m}");
        }
    }

    #[test]
    fn prefix_filter_agrees_with_full_evaluation() {
        let mut scratch = TreeScratch::default();
        for m in 3..=10 {
            for x in dyck_words(m)
                .into_iter()
                .filter(|x| in_tau_domain(x.bits()))
            {
                let filtered = scratch.is_flip_tree(x.bits()).unwrap();
                let full = scratch.evaluate_flip_tree(x.bits()).unwrap();
                assert_eq!(filtered, full, "x = {x}");
            }
        }
    }

    #[test]
    fn thin_leaf_from_word_agrees_with_tree() {
        let mut plane = PlaneTree::default();
        for m in 1..=10 {
            for x in dyck_words(m) {
                plane.rebuild(x.bits());
                assert_eq!(
                    word_has_thin_leaf(x.bits()),
                    plane.has_thin_leaf(),
                    "x = {x}"
                );
            }
        }
    }
}
