//! Combinatorial n-trees.
//!
//! A tree with leaves labelled by `{0} ∪ L` is stored by its set of internal
//! edges. Each internal edge cuts the leaves into two sides; we record the
//! side that does not contain the root leaf 0 as a bitmask (bit `i` set for
//! label `i`). Equivalently, this is the clade hanging below the edge when
//! the tree is rooted at leaf 0. Pairwise-compatible clade sets are exactly
//! the trees, so the stored form is canonical up to label-preserving
//! isomorphism.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::LabelPermutation;

/// Bitmask of labels; bit `i` stands for label `i`.
pub type LabelSet = u32;

/// Largest label a tree may carry.
pub const MAX_LABEL: u8 = 31;

pub fn mask_of(labels: impl IntoIterator<Item = u8>) -> LabelSet {
    labels.into_iter().fold(0, |m, l| m | (1 << l))
}

pub fn labels_of(mask: LabelSet) -> Vec<u8> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as u8);
        m &= m - 1;
    }
    out
}

/// Labels `1..=n`.
pub fn full_labels(n: usize) -> LabelSet {
    assert!(n <= MAX_LABEL as usize);
    ((1u64 << (n + 1)) - 2) as LabelSet
}

#[inline]
fn min_label(mask: LabelSet) -> u32 {
    mask.trailing_zeros()
}

/// Lexicographic order on the sorted label lists of two masks.
pub fn lex_cmp(a: LabelSet, b: LabelSet) -> Ordering {
    let (mut a, mut b) = (a, b);
    loop {
        match (a == 0, b == 0) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let (la, lb) = (a.trailing_zeros(), b.trailing_zeros());
        if la != lb {
            return la.cmp(&lb);
        }
        a &= a - 1;
        b &= b - 1;
    }
}

/// Two clades (root-free sides) are compatible iff nested or disjoint.
#[inline]
pub fn compatible(a: LabelSet, b: LabelSet) -> bool {
    a & b == 0 || a & b == a || a & b == b
}

fn fmt_labels(mask: LabelSet) -> String {
    let parts: Vec<String> = labels_of(mask).iter().map(|l| l.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// The bipartition of the leaves determined by one internal edge.
///
/// Stored with 0 on `side_zero`; `v_A` and `v_{[n]∖A}` are the same value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Bipartition {
    /// Nonzero labels of the ambient tree.
    all: LabelSet,
    /// The side without label 0.
    other: LabelSet,
}

impl Bipartition {
    /// `all` is the set of nonzero labels, `other` the side not containing 0.
    pub fn new(all: LabelSet, other: LabelSet) -> Result<Self> {
        if all & 1 != 0 || other & !all != 0 {
            return Err(Error::InvalidTree(format!(
                "bipartition side {} not inside {}",
                fmt_labels(other),
                fmt_labels(all)
            )));
        }
        let zero_side = (all & !other).count_ones() + 1;
        if other.count_ones() < 2 || zero_side < 2 {
            return Err(Error::InvalidTree(format!(
                "bipartition {}|{} has a side with fewer than two labels",
                fmt_labels((all & !other) | 1),
                fmt_labels(other)
            )));
        }
        Ok(Self { all, other })
    }

    /// Build from either side; the side containing 0 may be given.
    pub fn from_side(n: usize, side: &[u8]) -> Result<Self> {
        let all = full_labels(n);
        let mask = mask_of(side.iter().copied());
        if mask & !(all | 1) != 0 {
            return Err(Error::OutOfRange(format!("labels {side:?} exceed n = {n}")));
        }
        let other = if mask & 1 != 0 { all & !mask } else { mask };
        Self::new(all, other)
    }

    pub fn all(&self) -> LabelSet {
        self.all
    }

    pub fn other_mask(&self) -> LabelSet {
        self.other
    }

    pub fn side_zero(&self) -> Vec<u8> {
        labels_of((self.all & !self.other) | 1)
    }

    pub fn side_other(&self) -> Vec<u8> {
        labels_of(self.other)
    }

    pub fn compatible_with(&self, other: &Self) -> bool {
        self.all == other.all && compatible(self.other, other.other)
    }

    /// Image under a permutation of `{0..n}`.
    pub fn relabel(&self, sigma: &LabelPermutation) -> Result<Self> {
        let full = self.all | 1;
        if (full.count_ones() as usize) > sigma.len() || (32 - full.leading_zeros()) as usize > sigma.len() {
            return Err(Error::SizeMismatch { expected: (32 - full.leading_zeros()) as usize, got: sigma.len() });
        }
        let new_full = sigma.apply_mask(full);
        if new_full & 1 == 0 {
            return Err(Error::InvalidPermutation("label 0 not in the image".into()));
        }
        let mut side = sigma.apply_mask(self.other);
        if side & 1 != 0 {
            side = new_full & !side;
        }
        Self::new(new_full & !1, side)
    }
}

impl PartialOrd for Bipartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical edge order: lexicographic on the sorted non-root side.
impl Ord for Bipartition {
    fn cmp(&self, other: &Self) -> Ordering {
        lex_cmp(self.other, other.other).then(self.all.cmp(&other.all))
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z: Vec<String> = self.side_zero().iter().map(|l| l.to_string()).collect();
        let o: Vec<String> = self.side_other().iter().map(|l| l.to_string()).collect();
        write!(f, "{}|{}", z.join(","), o.join(","))
    }
}

/// Explicit graph form of a tree: internal nodes, leaf attachments, internal edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeGraph {
    pub nodes: usize,
    /// Which internal node each leaf label hangs from.
    pub leaf_attach: BTreeMap<u8, usize>,
    pub internal_edges: Vec<(usize, usize)>,
}

/// An n-tree up to label-preserving isomorphism. Edge lengths are not kept.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledTree {
    labels: LabelSet,
    /// Clades, sorted in canonical edge order.
    splits: Vec<LabelSet>,
}

impl LabeledTree {
    /// Build from the set of nonzero labels and the clades of the internal edges.
    pub fn from_splits(labels: LabelSet, mut splits: Vec<LabelSet>) -> Result<Self> {
        if labels & 1 != 0 {
            return Err(Error::InvalidTree("label 0 is implicit".into()));
        }
        if labels == 0 {
            return Err(Error::InvalidTree("a tree needs at least one nonzero label".into()));
        }
        let n = labels.count_ones();
        for &s in &splits {
            if s & !labels != 0 || s.count_ones() < 2 || s.count_ones() > n - 1 {
                return Err(Error::InvalidTree(format!(
                    "{} is not a nontrivial clade of {}",
                    fmt_labels(s),
                    fmt_labels(labels)
                )));
            }
        }
        splits.sort_by(|a, b| lex_cmp(*a, *b));
        for w in splits.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidTree(format!("repeated edge {}", fmt_labels(w[0]))));
            }
        }
        for (i, &a) in splits.iter().enumerate() {
            for &b in &splits[i + 1..] {
                if !compatible(a, b) {
                    return Err(Error::InvalidTree(format!(
                        "edges {} and {} cross",
                        fmt_labels(a),
                        fmt_labels(b)
                    )));
                }
            }
        }
        Ok(Self { labels, splits })
    }

    /// Unchecked constructor for internally generated, already sorted data.
    pub(crate) fn from_sorted_unchecked(labels: LabelSet, splits: Vec<LabelSet>) -> Self {
        debug_assert!(splits.windows(2).all(|w| lex_cmp(w[0], w[1]) == Ordering::Less));
        Self { labels, splits }
    }

    /// The star tree: a single node carrying every leaf (or a bare edge when n = 1).
    pub fn star(labels: LabelSet) -> Result<Self> {
        Self::from_splits(labels, Vec::new())
    }

    pub fn star_n(n: usize) -> Result<Self> {
        check_n(n)?;
        Self::star(full_labels(n))
    }

    /// The tree `v_A` with a single internal edge.
    pub fn vertex_tree(b: &Bipartition) -> Self {
        Self { labels: b.all, splits: vec![b.other] }
    }

    pub fn from_graph(graph: &TreeGraph) -> Result<Self> {
        let labels_with_zero = mask_of(graph.leaf_attach.keys().copied());
        if graph.leaf_attach.keys().any(|&l| l > MAX_LABEL) {
            return Err(Error::OutOfRange("leaf label above 31".into()));
        }
        if labels_with_zero & 1 == 0 {
            return Err(Error::InvalidTree("no leaf carries label 0".into()));
        }
        let labels = labels_with_zero & !1;
        if graph.nodes == 0 {
            return Err(Error::InvalidTree("tree has no internal node".into()));
        }
        let mut adj = vec![Vec::new(); graph.nodes];
        for &(a, b) in &graph.internal_edges {
            if a >= graph.nodes || b >= graph.nodes || a == b {
                return Err(Error::InvalidTree(format!("bad internal edge ({a}, {b})")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        if graph.internal_edges.len() + 1 != graph.nodes {
            return Err(Error::InvalidTree("internal edges do not form a tree".into()));
        }
        let mut leaves_at = vec![0u32; graph.nodes];
        let mut degree: Vec<usize> = adj.iter().map(|a| a.len()).collect();
        for (&label, &node) in &graph.leaf_attach {
            if node >= graph.nodes {
                return Err(Error::InvalidTree(format!("leaf {label} attached to missing node {node}")));
            }
            leaves_at[node] |= 1 << label;
            degree[node] += 1;
        }
        if let Some(v) = degree.iter().position(|&d| d < 3) {
            return Err(Error::InvalidTree(format!("node {v} has degree {}", degree[v])));
        }
        // Root at the node carrying leaf 0, collect clades bottom-up.
        let root = graph.leaf_attach[&0];
        let mut parent = vec![usize::MAX; graph.nodes];
        let mut order = Vec::with_capacity(graph.nodes);
        let mut visited = vec![false; graph.nodes];
        let mut stack = vec![root];
        visited[root] = true;
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in &adj[v] {
                if !visited[w] {
                    visited[w] = true;
                    parent[w] = v;
                    stack.push(w);
                }
            }
        }
        if order.len() != graph.nodes {
            return Err(Error::InvalidTree("internal edges are not connected".into()));
        }
        let mut below = leaves_at.clone();
        let mut splits = Vec::new();
        for &v in order.iter().rev() {
            if v != root {
                splits.push(below[v]);
                let p = parent[v];
                below[p] |= below[v];
            }
        }
        Self::from_splits(labels, splits)
    }

    /// Graph form with node 0 at the root and node `i + 1` below the `i`-th edge.
    pub fn to_graph(&self) -> TreeGraph {
        let k = self.splits.len();
        let parent_of = |c: LabelSet| -> usize {
            self.splits
                .iter()
                .enumerate()
                .filter(|(_, &d)| d != c && d & c == c)
                .min_by_key(|(_, &d)| d.count_ones())
                .map_or(0, |(i, _)| i + 1)
        };
        let mut leaf_attach = BTreeMap::new();
        leaf_attach.insert(0u8, 0usize);
        for l in labels_of(self.labels) {
            let node = self
                .splits
                .iter()
                .enumerate()
                .filter(|(_, &d)| d & (1 << l) != 0)
                .min_by_key(|(_, &d)| d.count_ones())
                .map_or(0, |(i, _)| i + 1);
            leaf_attach.insert(l, node);
        }
        let internal_edges = self.splits.iter().enumerate().map(|(i, &c)| (parent_of(c), i + 1)).collect();
        TreeGraph { nodes: k + 1, leaf_attach, internal_edges }
    }

    /// Number of nonzero labels.
    pub fn n(&self) -> usize {
        self.labels.count_ones() as usize
    }

    pub fn labels(&self) -> LabelSet {
        self.labels
    }

    /// Clades of the internal edges, in canonical edge order.
    pub fn splits(&self) -> &[LabelSet] {
        &self.splits
    }

    pub fn num_internal_edges(&self) -> usize {
        self.splits.len()
    }

    /// Every node has degree three. A bare edge (n = 1) counts as binary.
    pub fn is_binary(&self) -> bool {
        self.n() == 1 || self.splits.len() + 2 == self.n()
    }

    /// One bipartition per internal edge, in canonical edge order.
    pub fn bipartitions(&self) -> Vec<Bipartition> {
        self.splits.iter().map(|&other| Bipartition { all: self.labels, other }).collect()
    }

    /// Children of the node inside clade `c` (or the root when `c` is all labels):
    /// maximal sub-clades plus single leaves not inside any of them.
    fn children_of(&self, c: LabelSet) -> Vec<LabelSet> {
        let inner: Vec<LabelSet> = self.splits.iter().copied().filter(|&d| d != c && d & c == d).collect();
        let maximal: Vec<LabelSet> = inner
            .iter()
            .copied()
            .filter(|&d| !inner.iter().any(|&e| e != d && e & d == d))
            .collect();
        let covered = maximal.iter().fold(0, |m, &d| m | d);
        let mut out = maximal;
        out.extend(labels_of(c & !covered).into_iter().map(|l| 1u32 << l));
        out.sort_by_key(|&d| min_label(d));
        out
    }

    /// Label sets of the subtrees hanging from the root node (the node carrying leaf 0).
    pub fn root_children(&self) -> Vec<LabelSet> {
        if self.n() == 1 {
            return vec![self.labels];
        }
        self.children_of(self.labels)
    }

    /// The subtree inside clade `c`, re-rooted with a new leaf 0 on the cut edge.
    pub fn subtree(&self, c: LabelSet) -> Result<Self> {
        if c & !self.labels != 0 || c == 0 {
            return Err(Error::InvalidTree(format!("{} is not a set of leaves", fmt_labels(c))));
        }
        if c.count_ones() >= 2 && c != self.labels && !self.splits.contains(&c) {
            return Err(Error::InvalidTree(format!("{} is not a clade", fmt_labels(c))));
        }
        let splits = self.splits.iter().copied().filter(|&d| d != c && d & c == d).collect();
        Ok(Self { labels: c, splits })
    }

    /// Cut the root node of a binary tree into the two subtrees hanging off it.
    /// The first returned tree holds the smaller nonzero label.
    pub fn split_at_root(&self) -> Result<(Self, Self)> {
        if self.n() < 2 || !self.is_binary() {
            return Err(Error::NotBinary);
        }
        let children = self.root_children();
        debug_assert_eq!(children.len(), 2);
        Ok((self.subtree(children[0])?, self.subtree(children[1])?))
    }

    /// Join two trees with disjoint labels at a new root node.
    pub fn graft(y: &Self, z: &Self) -> Result<Self> {
        if y.labels & z.labels != 0 {
            return Err(Error::InvalidTree("grafted trees share labels".into()));
        }
        let labels = y.labels | z.labels;
        let mut splits: Vec<LabelSet> = y.splits.iter().chain(&z.splits).copied().collect();
        for side in [y.labels, z.labels] {
            if side.count_ones() >= 2 {
                splits.push(side);
            }
        }
        Self::from_splits(labels, splits)
    }

    /// Collapse one internal edge, merging its endpoints.
    pub fn contract_edge(&self, e: &Bipartition) -> Result<Self> {
        let pos = self
            .splits
            .iter()
            .position(|&s| s == e.other)
            .filter(|_| e.all == self.labels)
            .ok_or_else(|| Error::NoSuchEdge(e.to_string()))?;
        let mut splits = self.splits.clone();
        splits.remove(pos);
        Ok(Self { labels: self.labels, splits })
    }

    /// Replace each leaf label `i` by `sigma(i)`.
    pub fn relabel(&self, sigma: &LabelPermutation) -> Result<Self> {
        let top = 32 - (self.labels | 1).leading_zeros();
        if (top as usize) > sigma.len() {
            return Err(Error::SizeMismatch { expected: top as usize, got: sigma.len() });
        }
        let full = sigma.apply_mask(self.labels | 1);
        if full & 1 == 0 {
            return Err(Error::InvalidPermutation("label 0 not in the image".into()));
        }
        let labels = full & !1;
        let mut splits: Vec<LabelSet> = self
            .splits
            .iter()
            .map(|&s| {
                let img = sigma.apply_mask(s);
                if img & 1 != 0 { full & !img } else { img }
            })
            .collect();
        splits.sort_by(|a, b| lex_cmp(*a, *b));
        Ok(Self { labels, splits })
    }

    /// The caterpillar with leaves `0, σ(1), ..., σ(n-1), n` along its spine.
    ///
    /// `sigma` permutes `{0..n-1}` and fixes 0.
    pub fn caterpillar(sigma: &LabelPermutation) -> Result<Self> {
        let n = sigma.len();
        if n < 3 {
            return Err(Error::OutOfRange(format!("caterpillar needs n >= 3, got {n}")));
        }
        if !sigma.fixes_zero() {
            return Err(Error::MovesRoot);
        }
        let mut splits = Vec::with_capacity(n - 2);
        let mut clade: LabelSet = 1 << n;
        for k in (2..n).rev() {
            clade |= 1 << sigma.apply(k as u8);
            splits.push(clade);
        }
        Self::from_splits(full_labels(n), splits)
    }

    /// Nested-parentheses text form rooted at the node carrying leaf 0.
    pub fn canonical_encoding(&self) -> String {
        let mut out = String::new();
        if self.n() == 1 {
            out.push_str(&format!("(0,{})", self.labels.trailing_zeros()));
            return out;
        }
        out.push_str("(0");
        for child in self.children_of(self.labels) {
            out.push(',');
            self.encode_into(child, &mut out);
        }
        out.push(')');
        out
    }

    fn encode_into(&self, c: LabelSet, out: &mut String) {
        if c.count_ones() == 1 {
            out.push_str(&c.trailing_zeros().to_string());
            return;
        }
        out.push('(');
        for (i, child) in self.children_of(c).into_iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            self.encode_into(child, out);
        }
        out.push(')');
    }

    /// Parse the nested-parentheses form. Any nesting is accepted as long as the
    /// groups form a valid tree; the result is canonical.
    pub fn parse(text: &str) -> Result<Self> {
        let mut parser = TreeParser { bytes: text.trim().as_bytes(), pos: 0 };
        let root = parser.group()?;
        if parser.pos != parser.bytes.len() {
            return Err(Error::Parse(format!("trailing input at byte {}", parser.pos)));
        }
        // A bare edge: one group with two leaves, one of them 0.
        if root.groups.is_empty() && root.leaves.len() == 2 && root.leaves.contains(&0) {
            let other = root.leaves.iter().copied().find(|&l| l != 0).unwrap_or(0);
            if other == 0 {
                return Err(Error::Parse("duplicate leaf 0".into()));
            }
            return Self::star(1 << other);
        }
        let mut graph = TreeGraph { nodes: 0, leaf_attach: BTreeMap::new(), internal_edges: Vec::new() };
        flatten_group(&root, None, &mut graph)?;
        Self::from_graph(&graph)
    }
}

impl fmt::Display for LabeledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_encoding())
    }
}

impl std::str::FromStr for LabeledTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

struct Group {
    leaves: Vec<u8>,
    groups: Vec<Group>,
}

struct TreeParser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl TreeParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.bytes.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse(format!("expected '{}' at byte {}", c as char, self.pos)))
        }
    }

    fn group(&mut self) -> Result<Group> {
        self.expect(b'(')?;
        let mut g = Group { leaves: Vec::new(), groups: Vec::new() };
        loop {
            self.skip_ws();
            match self.bytes.get(self.pos) {
                Some(b'(') => g.groups.push(self.group()?),
                Some(c) if c.is_ascii_digit() => {
                    let start = self.pos;
                    while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap_or("");
                    let label: u8 = s.parse().map_err(|_| Error::Parse(format!("bad label '{s}'")))?;
                    if label > MAX_LABEL {
                        return Err(Error::OutOfRange(format!("label {label} above {MAX_LABEL}")));
                    }
                    g.leaves.push(label);
                }
                _ => return Err(Error::Parse(format!("unexpected input at byte {}", self.pos))),
            }
            self.skip_ws();
            match self.bytes.get(self.pos) {
                Some(b',') => self.pos += 1,
                Some(b')') => {
                    self.pos += 1;
                    return Ok(g);
                }
                _ => return Err(Error::Parse(format!("expected ',' or ')' at byte {}", self.pos))),
            }
        }
    }
}

fn flatten_group(g: &Group, parent: Option<usize>, graph: &mut TreeGraph) -> Result<()> {
    let id = graph.nodes;
    graph.nodes += 1;
    if let Some(p) = parent {
        graph.internal_edges.push((p, id));
    }
    for &l in &g.leaves {
        if graph.leaf_attach.insert(l, id).is_some() {
            return Err(Error::Parse(format!("leaf {l} appears twice")));
        }
    }
    for child in &g.groups {
        flatten_group(child, Some(id), graph)?;
    }
    Ok(())
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n >= MAX_LABEL as usize {
        return Err(Error::OutOfRange(format!("n = {n} outside 1..{}", MAX_LABEL - 1)));
    }
    Ok(())
}

/// All binary trees on labels `{0..n}`, by inserting leaves 3, ..., n one at a
/// time onto every edge. Each tree is produced exactly once.
pub fn enumerate_binary(n: usize) -> Result<Vec<LabeledTree>> {
    check_n(n)?;
    if n == 1 {
        return Ok(vec![LabeledTree::star(full_labels(1))?]);
    }
    let mut current: Vec<Vec<LabelSet>> = vec![Vec::new()];
    for leaf in 3..=n {
        let old_labels = full_labels(leaf - 1);
        let new_count = leaf as u32;
        let mut next = Vec::with_capacity(current.len() * (2 * leaf - 3));
        for splits in &current {
            // Edges: internal clades, leaf edges, and the root edge (all labels).
            let edges = splits
                .iter()
                .copied()
                .chain(labels_of(old_labels).into_iter().map(|l| 1u32 << l))
                .chain(std::iter::once(old_labels));
            for c in edges {
                let mut new_splits: Vec<LabelSet> = splits
                    .iter()
                    .map(|&d| if d & c == c { d | (1 << leaf) } else { d })
                    .collect();
                for extra in [c, c | (1 << leaf)] {
                    let k = extra.count_ones();
                    if (2..new_count).contains(&k) && !new_splits.contains(&extra) {
                        new_splits.push(extra);
                    }
                }
                new_splits.sort_by(|a, b| lex_cmp(*a, *b));
                debug_assert_eq!(new_splits.len(), leaf - 2);
                next.push(new_splits);
            }
        }
        current = next;
    }
    let labels = full_labels(n);
    let mut trees: Vec<LabeledTree> =
        current.into_iter().map(|s| LabeledTree::from_sorted_unchecked(labels, s)).collect();
    sort_by_encoding(&mut trees);
    Ok(trees)
}

/// All trees on labels `{0..n}` with exactly `k` internal edges, sorted by
/// canonical encoding. Lower `k` comes from contracting edge subsets of the
/// binary trees.
pub fn enumerate_trees(n: usize, k: usize) -> Result<Vec<LabeledTree>> {
    check_n(n)?;
    if n < 2 || k > n - 2 {
        return Err(Error::OutOfRange(format!("k = {k} outside [0, {}] for n = {n}", n.saturating_sub(2))));
    }
    let binary = enumerate_binary(n)?;
    if k == n - 2 {
        return Ok(binary);
    }
    let labels = full_labels(n);
    let mut seen: BTreeSet<Vec<LabelSet>> = BTreeSet::new();
    for t in &binary {
        for subset in subsets_of_size(t.splits(), k) {
            seen.insert(subset);
        }
    }
    let mut trees: Vec<LabeledTree> =
        seen.into_iter().map(|s| LabeledTree::from_sorted_unchecked(labels, s)).collect();
    sort_by_encoding(&mut trees);
    Ok(trees)
}

/// All `k`-element subsequences of a sorted slice, each still sorted.
pub(crate) fn subsets_of_size(items: &[LabelSet], k: usize) -> Vec<Vec<LabelSet>> {
    fn rec(items: &[LabelSet], k: usize, start: usize, cur: &mut Vec<LabelSet>, out: &mut Vec<Vec<LabelSet>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

fn sort_by_encoding(trees: &mut Vec<LabeledTree>) {
    let mut keyed: Vec<(String, LabeledTree)> =
        trees.drain(..).map(|t| (t.canonical_encoding(), t)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    trees.extend(keyed.into_iter().map(|(_, t)| t));
}

/// `(2n-3)!!`, the number of binary trees on `n + 1` labelled leaves.
pub fn binary_tree_count(n: usize) -> u128 {
    if n < 2 {
        return 1;
    }
    (1..=(2 * n as u128 - 3)).step_by(2).product()
}
