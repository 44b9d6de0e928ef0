//! Oriented simplicial complexes: the tree space `T_n` and the nerve of the
//! lattice of nontrivial set partitions.
//!
//! A simplex is an ordered list of vertex ids. For trees the order is the
//! canonical edge order of the tree; for partition chains it runs from
//! coarsest to finest. Deleting entry `i` gives the `i`-th face with sign
//! `(-1)^i`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::perm::{sorting_sign, LabelPermutation};
use crate::tree::{enumerate_trees, full_labels, labels_of, lex_cmp, Bipartition, LabelSet, LabeledTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpaceKind {
    TreeSpace,
    PartitionNerve,
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpaceKind::TreeSpace => "tree-space",
            SpaceKind::PartitionNerve => "partition-nerve",
        })
    }
}

impl std::str::FromStr for SpaceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tree-space" | "tree" | "trees" => Ok(SpaceKind::TreeSpace),
            "partition-nerve" | "partition" | "partitions" => Ok(SpaceKind::PartitionNerve),
            _ => Err(Error::Parse(format!("unknown space {s:?}"))),
        }
    }
}

/// A set partition of `{1..n}`, blocks ordered by smallest element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<LabelSet>,
}

impl SetPartition {
    pub fn new(n: usize, mut blocks: Vec<LabelSet>) -> Result<Self> {
        let all = full_labels(n);
        let mut seen = 0;
        for &b in &blocks {
            if b == 0 || b & !all != 0 || b & seen != 0 {
                return Err(Error::InvalidTree(format!("blocks {blocks:?} do not partition 1..{n}")));
            }
            seen |= b;
        }
        if seen != all {
            return Err(Error::InvalidTree(format!("blocks {blocks:?} do not cover 1..{n}")));
        }
        blocks.sort_by_key(|b| b.trailing_zeros());
        Ok(Self { n, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[LabelSet] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Neither a single block nor all singletons.
    pub fn is_nontrivial(&self) -> bool {
        self.blocks.len() >= 2 && self.blocks.len() < self.n
    }

    /// Every block of `self` lies inside a block of `other` (non-strict).
    pub fn refines(&self, other: &Self) -> bool {
        self.n == other.n && self.blocks.iter().all(|&b| other.blocks.iter().any(|&c| b & c == b))
    }

    pub fn strictly_refines(&self, other: &Self) -> bool {
        self.blocks.len() > other.blocks.len() && self.refines(other)
    }

    /// Image under a permutation of `{0..n}` fixing 0.
    pub fn relabel(&self, sigma: &LabelPermutation) -> Result<Self> {
        if !sigma.fixes_zero() {
            return Err(Error::MovesRoot);
        }
        if sigma.len() != self.n + 1 {
            return Err(Error::SizeMismatch { expected: self.n + 1, got: sigma.len() });
        }
        Self::new(self.n, self.blocks.iter().map(|&b| sigma.apply_mask(b)).collect())
    }

    /// Every set partition of `{1..n}`, via restricted growth strings.
    pub fn all(n: usize) -> Vec<Self> {
        fn rec(n: usize, i: usize, blocks: &mut Vec<LabelSet>, out: &mut Vec<SetPartition>) {
            if i > n {
                out.push(SetPartition { n, blocks: blocks.clone() });
                return;
            }
            for b in 0..blocks.len() {
                blocks[b] |= 1 << i;
                rec(n, i + 1, blocks, out);
                blocks[b] &= !(1 << i);
            }
            blocks.push(1 << i);
            rec(n, i + 1, blocks, out);
            blocks.pop();
        }
        let mut out = Vec::new();
        if n >= 1 {
            rec(n, 1, &mut Vec::new(), &mut out);
        }
        out
    }

    pub fn all_nontrivial(n: usize) -> Vec<Self> {
        Self::all(n).into_iter().filter(Self::is_nontrivial).collect()
    }

    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        for part in text.split('|') {
            let mut b = 0;
            for l in part.split(',') {
                let l: u8 = l.trim().parse().map_err(|_| Error::Parse(format!("bad label in {text:?}")))?;
                b |= 1u32 << l;
            }
            blocks.push(b);
        }
        Self::new(n, blocks)
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|&b| labels_of(b).iter().map(u8::to_string).collect::<Vec<_>>().join(","))
            .collect();
        f.write_str(&parts.join("|"))
    }
}

/// A strictly refining chain of nontrivial partitions, coarsest first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartitionChain {
    chain: Vec<SetPartition>,
}

impl PartitionChain {
    pub fn new(chain: Vec<SetPartition>) -> Result<Self> {
        if chain.is_empty() {
            return Err(Error::InvalidTree("empty partition chain".into()));
        }
        if let Some(p) = chain.iter().find(|p| !p.is_nontrivial()) {
            return Err(Error::InvalidTree(format!("partition {p} is trivial")));
        }
        for w in chain.windows(2) {
            if !w[1].strictly_refines(&w[0]) {
                return Err(Error::InvalidTree(format!("{} does not strictly refine {}", w[1], w[0])));
            }
        }
        Ok(Self { chain })
    }

    pub fn entries(&self) -> &[SetPartition] {
        &self.chain
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }
}

impl fmt::Display for PartitionChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.chain.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" > "))
    }
}

/// What a simplex stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimplexLabel {
    Tree(LabeledTree),
    Chain(PartitionChain),
}

impl fmt::Display for SimplexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimplexLabel::Tree(t) => write!(f, "{t}"),
            SimplexLabel::Chain(c) => write!(f, "{c}"),
        }
    }
}

/// Signed permutation of the simplices in one degree: simplex `s` goes to
/// `sign[s] * target[s]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPermutation {
    target: Vec<usize>,
    sign: Vec<i8>,
}

impl SignedPermutation {
    pub fn identity(len: usize) -> Self {
        Self { target: (0..len).collect(), sign: vec![1; len] }
    }

    /// From `(target, sign)` pairs; the targets must be a permutation.
    pub fn from_images(images: Vec<(usize, i8)>) -> Self {
        let (target, sign): (Vec<usize>, Vec<i8>) = images.into_iter().unzip();
        debug_assert!({
            let mut t = target.clone();
            t.sort_unstable();
            t.iter().enumerate().all(|(i, &x)| i == x)
        });
        Self { target, sign }
    }

    pub fn len(&self) -> usize {
        self.target.len()
    }

    pub fn is_empty(&self) -> bool {
        self.target.is_empty()
    }

    pub fn image(&self, s: usize) -> (usize, i8) {
        (self.target[s], self.sign[s])
    }

    /// Apply `self` first, then `next`.
    pub fn then(&self, next: &Self) -> Self {
        let mut target = Vec::with_capacity(self.len());
        let mut sign = Vec::with_capacity(self.len());
        for s in 0..self.len() {
            let (t, a) = self.image(s);
            let (u, b) = next.image(t);
            target.push(u);
            sign.push(a * b);
        }
        Self { target, sign }
    }

    /// Push a chain forward.
    pub fn apply(&self, chain: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::default(); chain.len()];
        for (s, x) in chain.iter().enumerate() {
            let (t, e) = self.image(s);
            out[t] = if e > 0 { x.clone() } else { -x };
        }
        out
    }

    /// Matrix acting on row vectors from the right: row `s` holds `±1` in column `σ(s)`.
    /// With this convention `M(τ∘σ) = M(σ) · M(τ)`.
    pub fn to_matrix(&self) -> IntMatrix {
        IntMatrix::from_triplets(
            self.len(),
            self.len(),
            (0..self.len()).map(|s| (s, self.target[s], BigInt::from(self.sign[s]))),
        )
        .expect("square by construction")
    }

    pub fn trace(&self) -> i64 {
        (0..self.len()).filter(|&s| self.target[s] == s).map(|s| self.sign[s] as i64).sum()
    }
}

/// A finite oriented simplicial complex with integer boundary matrices.
#[derive(Clone, Debug)]
pub struct OrientedComplex {
    kind: SpaceKind,
    n: usize,
    vertex_names: Vec<String>,
    /// Per degree, each simplex as vertex ids in its reference order.
    simplices: Vec<Vec<Vec<u32>>>,
    labels: Vec<Vec<SimplexLabel>>,
    lookup: Vec<HashMap<Vec<u32>, usize>>,
    /// `boundaries[k - 1]` maps k-chains to (k-1)-chains.
    boundaries: Vec<IntMatrix>,
    vertex_by_clade: HashMap<LabelSet, u32>,
    diagnostic: Option<String>,
}

impl OrientedComplex {
    fn assemble(
        kind: SpaceKind,
        n: usize,
        vertex_names: Vec<String>,
        simplices: Vec<Vec<Vec<u32>>>,
        labels: Vec<Vec<SimplexLabel>>,
    ) -> Self {
        let lookup: Vec<HashMap<Vec<u32>, usize>> = simplices
            .iter()
            .map(|level| {
                level
                    .iter()
                    .enumerate()
                    .map(|(i, s)| {
                        let mut key = s.clone();
                        key.sort_unstable();
                        (key, i)
                    })
                    .collect()
            })
            .collect();
        let boundaries = (1..simplices.len())
            .map(|k| {
                let faces = &lookup[k - 1];
                let columns: Vec<Vec<(usize, BigInt)>> = simplices[k]
                    .par_iter()
                    .map(|s| {
                        let mut col: Vec<(usize, BigInt)> = (0..s.len())
                            .map(|i| {
                                let mut key: Vec<u32> =
                                    s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect();
                                key.sort_unstable();
                                let row = *faces.get(&key).expect("complex closed under faces");
                                (row, BigInt::from(if i % 2 == 0 { 1 } else { -1 }))
                            })
                            .collect();
                        col.sort_by_key(|e| e.0);
                        col
                    })
                    .collect();
                IntMatrix::from_columns(simplices[k - 1].len(), columns)
            })
            .collect();
        let vertex_by_clade = labels
            .first()
            .map(|vs| {
                vs.iter()
                    .enumerate()
                    .filter_map(|(i, l)| match l {
                        SimplexLabel::Tree(t) => Some((t.splits()[0], i as u32)),
                        SimplexLabel::Chain(_) => None,
                    })
                    .collect()
            })
            .unwrap_or_default();
        Self { kind, n, vertex_names, simplices, labels, lookup, boundaries, vertex_by_clade, diagnostic: None }
    }

    fn empty(kind: SpaceKind, n: usize, diagnostic: String) -> Self {
        Self {
            kind,
            n,
            vertex_names: Vec::new(),
            simplices: Vec::new(),
            labels: Vec::new(),
            lookup: Vec::new(),
            boundaries: Vec::new(),
            vertex_by_clade: HashMap::new(),
            diagnostic: Some(diagnostic),
        }
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension; -1 for the empty complex.
    pub fn dim(&self) -> isize {
        self.simplices.len() as isize - 1
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn diagnostic(&self) -> Option<&str> {
        self.diagnostic.as_deref()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().iter().enumerate().map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) }).sum()
    }

    pub fn num_simplices(&self, k: usize) -> usize {
        self.simplices.get(k).map_or(0, Vec::len)
    }

    pub fn simplices(&self, k: usize) -> &[Vec<u32>] {
        self.simplices.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn simplex(&self, k: usize, id: usize) -> &[u32] {
        &self.simplices[k][id]
    }

    pub fn label(&self, k: usize, id: usize) -> &SimplexLabel {
        &self.labels[k][id]
    }

    pub fn vertex_name(&self, v: u32) -> &str {
        &self.vertex_names[v as usize]
    }

    /// Id of the simplex with this vertex set, in any order.
    pub fn find(&self, vertices: &[u32]) -> Option<usize> {
        let k = vertices.len().checked_sub(1)?;
        let mut key = vertices.to_vec();
        key.sort_unstable();
        self.lookup.get(k)?.get(&key).copied()
    }

    /// Id of a tree in a tree complex.
    pub fn find_tree(&self, t: &LabeledTree) -> Option<usize> {
        if self.kind != SpaceKind::TreeSpace || t.labels() != full_labels(self.n) {
            return None;
        }
        let ids: Option<Vec<u32>> = t.splits().iter().map(|&s| self.vertex_of_clade(s)).collect();
        self.find(&ids?)
    }

    fn vertex_of_clade(&self, clade: LabelSet) -> Option<u32> {
        self.vertex_by_clade.get(&clade).copied()
    }

    /// Boundary from degree `k` to `k - 1`. Degree 0 maps to the zero space.
    pub fn boundary(&self, k: usize) -> IntMatrix {
        if k == 0 {
            return IntMatrix::zeros(0, self.num_simplices(0));
        }
        self.boundaries.get(k - 1).cloned().unwrap_or_else(|| IntMatrix::zeros(self.num_simplices(k - 1), 0))
    }

    pub fn boundary_ref(&self, k: usize) -> Option<&IntMatrix> {
        k.checked_sub(1).and_then(|i| self.boundaries.get(i))
    }

    /// Boundary matrices of degrees `1..=dim`.
    pub fn boundaries(&self) -> &[IntMatrix] {
        &self.boundaries
    }

    /// Signed permutations induced by relabelling, one per degree.
    ///
    /// Trees admit any permutation of `{0..n}`; partition chains only those fixing 0.
    pub fn induced_simplicial_map(&self, sigma: &LabelPermutation) -> Result<Vec<SignedPermutation>> {
        if sigma.len() != self.n + 1 {
            return Err(Error::SizeMismatch { expected: self.n + 1, got: sigma.len() });
        }
        let vertex_image: Vec<u32> = match self.kind {
            SpaceKind::TreeSpace => {
                let all = full_labels(self.n);
                self.labels
                    .first()
                    .map(|vs| {
                        vs.iter()
                            .map(|l| match l {
                                SimplexLabel::Tree(t) => {
                                    let b = Bipartition::new(all, t.splits()[0])?.relabel(sigma)?;
                                    Ok(self.vertex_by_clade[&b.other_mask()])
                                }
                                SimplexLabel::Chain(_) => unreachable!(),
                            })
                            .collect::<Result<Vec<u32>>>()
                    })
                    .transpose()?
                    .unwrap_or_default()
            }
            SpaceKind::PartitionNerve => {
                if !sigma.fixes_zero() {
                    return Err(Error::MovesRoot);
                }
                let by_name: HashMap<&str, u32> =
                    self.vertex_names.iter().enumerate().map(|(i, s)| (s.as_str(), i as u32)).collect();
                self.labels
                    .first()
                    .map(|vs| {
                        vs.iter()
                            .map(|l| match l {
                                SimplexLabel::Chain(c) => {
                                    let p = c.entries()[0].relabel(sigma)?;
                                    Ok(by_name[p.to_string().as_str()])
                                }
                                SimplexLabel::Tree(_) => unreachable!(),
                            })
                            .collect::<Result<Vec<u32>>>()
                    })
                    .transpose()?
                    .unwrap_or_default()
            }
        };
        Ok(self.induced_by_vertex_map(&vertex_image))
    }

    /// Chain maps from a bijection of vertices preserving simplices.
    pub fn induced_by_vertex_map(&self, vertex_image: &[u32]) -> Vec<SignedPermutation> {
        self.simplices
            .iter()
            .enumerate()
            .map(|(k, level)| {
                let (target, sign): (Vec<usize>, Vec<i8>) = level
                    .par_iter()
                    .map(|s| {
                        let img: Vec<u32> = s.iter().map(|&v| vertex_image[v as usize]).collect();
                        let mut key = img.clone();
                        key.sort_unstable();
                        let t = self.lookup[k][&key];
                        let reference = &self.simplices[k][t];
                        let positions: Vec<usize> =
                            img.iter().map(|v| reference.iter().position(|w| w == v).expect("same vertex set")).collect();
                        (t, sorting_sign(&positions) as i8)
                    })
                    .unzip();
                SignedPermutation { target, sign }
            })
            .collect()
    }

    /// For each simplex of degree `dim - 1`, how many top simplices contain it;
    /// returned as a histogram `count -> number of faces`.
    pub fn codim1_incidence_report(&self) -> BTreeMap<usize, usize> {
        let mut hist = BTreeMap::new();
        let d = self.dim();
        if d < 1 {
            return hist;
        }
        let top = &self.boundaries[d as usize - 1];
        let mut counts = vec![0usize; top.rows()];
        for (r, _, _) in top.triplets() {
            counts[r] += 1;
        }
        for c in counts {
            *hist.entry(c).or_insert(0) += 1;
        }
        hist
    }

    /// Versioned portable dump.
    pub fn export(&self) -> ComplexDump {
        ComplexDump {
            schema: 1,
            kind: self.kind,
            n: self.n,
            f_vector: self.f_vector(),
            vertices: self.vertex_names.clone(),
            simplices: self
                .labels
                .iter()
                .zip(&self.simplices)
                .map(|(ls, ss)| {
                    ls.iter().zip(ss).map(|(l, s)| DumpSimplex { encoding: l.to_string(), vertices: s.clone() }).collect()
                })
                .collect(),
            boundaries: self
                .boundaries
                .iter()
                .enumerate()
                .map(|(i, m)| DumpBoundary {
                    degree: i + 1,
                    rows: m.rows(),
                    cols: m.cols(),
                    entries: m
                        .triplets()
                        .map(|(r, c, v)| (r, c, i64::try_from(v).expect("boundary entries are small")))
                        .collect(),
                })
                .collect(),
        }
    }
}

/// Serializable form of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDump {
    pub schema: u32,
    pub kind: SpaceKind,
    pub n: usize,
    pub f_vector: Vec<usize>,
    pub vertices: Vec<String>,
    pub simplices: Vec<Vec<DumpSimplex>>,
    pub boundaries: Vec<DumpBoundary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DumpSimplex {
    pub encoding: String,
    pub vertices: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DumpBoundary {
    pub degree: usize,
    pub rows: usize,
    pub cols: usize,
    /// `(row, col, value)`.
    pub entries: Vec<(usize, usize, i64)>,
}

impl ComplexDump {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("dump serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let dump: Self = serde_json::from_str(text)?;
        if dump.schema != 1 {
            return Err(Error::Parse(format!("unsupported schema {}", dump.schema)));
        }
        if dump.f_vector.len() != dump.simplices.len() {
            return Err(Error::Parse("f-vector length disagrees with simplex lists".into()));
        }
        for (k, (f, s)) in dump.f_vector.iter().zip(&dump.simplices).enumerate() {
            if *f != s.len() {
                return Err(Error::Parse(format!("f-vector entry {k} is {f} but {} simplices listed", s.len())));
            }
        }
        Ok(dump)
    }

    /// Boundary matrices of degrees `1..=dim`, checked against the f-vector.
    pub fn boundary_matrices(&self) -> Result<Vec<IntMatrix>> {
        let mut out = Vec::new();
        for (i, b) in self.boundaries.iter().enumerate() {
            let k = i + 1;
            if b.degree != k {
                return Err(Error::Parse(format!("boundary {i} has degree {}, expected {k}", b.degree)));
            }
            let (rows, cols) = (self.f_vector.get(k - 1).copied(), self.f_vector.get(k).copied());
            if Some(b.rows) != rows || Some(b.cols) != cols {
                return Err(Error::Parse(format!("boundary in degree {k} has shape {}x{}", b.rows, b.cols)));
            }
            out.push(IntMatrix::from_triplets(
                b.rows,
                b.cols,
                b.entries.iter().map(|&(r, c, v)| (r, c, BigInt::from(v))),
            )?);
        }
        Ok(out)
    }
}

/// `T_n`: vertices are the bipartitions of `{0..n}` with both sides of size at
/// least two; a set of them spans a simplex when they are pairwise compatible.
pub fn build_tree_complex(n: usize) -> Result<OrientedComplex> {
    if n < 3 {
        return Ok(OrientedComplex::empty(
            SpaceKind::TreeSpace,
            n,
            format!("T_{n} is empty: a tree with {} leaves has no internal edge", n + 1),
        ));
    }
    let levels: Vec<Vec<LabeledTree>> = (1..=n - 2).map(|k| enumerate_trees(n, k)).collect::<Result<_>>()?;
    let vertex_id: HashMap<LabelSet, u32> =
        levels[0].iter().enumerate().map(|(i, t)| (t.splits()[0], i as u32)).collect();
    let vertex_names = levels[0].iter().map(|t| t.bipartitions()[0].to_string()).collect();
    let simplices = levels
        .iter()
        .map(|level| level.iter().map(|t| t.splits().iter().map(|s| vertex_id[s]).collect()).collect())
        .collect();
    let labels = levels.into_iter().map(|l| l.into_iter().map(SimplexLabel::Tree).collect()).collect();
    Ok(OrientedComplex::assemble(SpaceKind::TreeSpace, n, vertex_names, simplices, labels))
}

/// The nerve of the poset of nontrivial partitions of `{1..n}`.
pub fn build_partition_nerve(n: usize) -> Result<OrientedComplex> {
    if n < 3 {
        return Ok(OrientedComplex::empty(
            SpaceKind::PartitionNerve,
            n,
            format!("the partition lattice of {n} elements has no nontrivial elements"),
        ));
    }
    if n > 10 {
        return Err(Error::OutOfRange(format!("partition nerve limited to n <= 10, got {n}")));
    }
    let mut parts = SetPartition::all_nontrivial(n);
    parts.sort_by_cached_key(ToString::to_string);
    let names: Vec<String> = parts.iter().map(ToString::to_string).collect();
    let finer: Vec<Vec<u32>> = parts
        .iter()
        .map(|p| (0..parts.len() as u32).filter(|&q| parts[q as usize].strictly_refines(p)).collect())
        .collect();
    let mut by_degree: Vec<Vec<Vec<u32>>> = Vec::new();
    fn extend(chain: &mut Vec<u32>, finer: &[Vec<u32>], out: &mut Vec<Vec<Vec<u32>>>) {
        let k = chain.len() - 1;
        if out.len() <= k {
            out.resize(k + 1, Vec::new());
        }
        out[k].push(chain.clone());
        let last = *chain.last().expect("nonempty") as usize;
        for &q in &finer[last] {
            chain.push(q);
            extend(chain, finer, out);
            chain.pop();
        }
    }
    for v in 0..parts.len() as u32 {
        extend(&mut vec![v], &finer, &mut by_degree);
    }
    let mut simplices = Vec::with_capacity(by_degree.len());
    let mut labels = Vec::with_capacity(by_degree.len());
    for level in by_degree {
        let mut keyed: Vec<(String, Vec<u32>, PartitionChain)> = level
            .into_iter()
            .map(|c| {
                let chain = PartitionChain { chain: c.iter().map(|&v| parts[v as usize].clone()).collect() };
                (chain.to_string(), c, chain)
            })
            .collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        let (s, l): (Vec<_>, Vec<_>) = keyed.into_iter().map(|(_, c, ch)| (c, SimplexLabel::Chain(ch))).unzip();
        simplices.push(s);
        labels.push(l);
    }
    Ok(OrientedComplex::assemble(SpaceKind::PartitionNerve, n, names, simplices, labels))
}

pub fn build_complex(kind: SpaceKind, n: usize) -> Result<OrientedComplex> {
    match kind {
        SpaceKind::TreeSpace => build_tree_complex(n),
        SpaceKind::PartitionNerve => build_partition_nerve(n),
    }
}

/// Sign of the permutation that sorts an edge word into canonical edge order.
pub fn edge_order_sign(edge_word: &[LabelSet]) -> i32 {
    let mut idx: Vec<usize> = (0..edge_word.len()).collect();
    idx.sort_by(|&a, &b| lex_cmp(edge_word[a], edge_word[b]));
    let mut pos = vec![0; idx.len()];
    for (rank, &i) in idx.iter().enumerate() {
        pos[i] = rank;
    }
    sorting_sign(&pos)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_f_vectors() {
        assert_eq!(build_tree_complex(3).unwrap().f_vector(), vec![3]);
        let t4 = build_tree_complex(4).unwrap();
        assert_eq!(t4.f_vector(), vec![10, 15]);
        assert_eq!(t4.euler_characteristic(), -5);
        assert_eq!(build_tree_complex(5).unwrap().f_vector()[2], 105);
        assert!(build_tree_complex(2).unwrap().diagnostic().is_some());
        let l4 = build_partition_nerve(4).unwrap();
        assert_eq!(l4.f_vector(), vec![13, 18]);
        assert_eq!(build_partition_nerve(3).unwrap().f_vector(), vec![3]);
    }

    #[test]
    fn boundary_squares_to_zero() {
        for c in [build_tree_complex(5).unwrap(), build_partition_nerve(5).unwrap()] {
            for k in 2..=c.dim() as usize {
                assert!(c.boundary(k - 1).mul(&c.boundary(k)).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn transposition_on_t3() {
        let c = build_tree_complex(3).unwrap();
        let sigma = LabelPermutation::transposition(4, 0, 1).unwrap();
        let m = &c.induced_simplicial_map(&sigma).unwrap()[0];
        let fixed = c.find_tree(&LabeledTree::vertex_tree(&Bipartition::from_side(3, &[0, 1]).unwrap())).unwrap();
        assert_eq!(m.image(fixed), (fixed, 1));
        assert_eq!(m.trace(), 1);
    }

    #[test]
    fn nerve_rejects_root_moves() {
        let c = build_partition_nerve(4).unwrap();
        let sigma = LabelPermutation::transposition(5, 0, 2).unwrap();
        assert_eq!(c.induced_simplicial_map(&sigma).unwrap_err(), Error::MovesRoot);
    }

    #[test]
    fn incidence_all_three() {
        let c = build_tree_complex(5).unwrap();
        let h = c.codim1_incidence_report();
        assert_eq!(h.keys().copied().collect::<Vec<_>>(), vec![3]);
    }

    #[test]
    fn dump_roundtrip() {
        let c = build_tree_complex(4).unwrap();
        let d = c.export();
        let back = ComplexDump::from_json(&d.to_json()).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.boundary_matrices().unwrap()[0], c.boundary(1));
    }

    #[test]
    fn set_partitions_count() {
        assert_eq!(SetPartition::all(4).len(), 15);
        assert_eq!(SetPartition::all_nontrivial(4).len(), 13);
        let p = SetPartition::parse(4, "1,2|3|4").unwrap();
        assert_eq!(p.to_string(), "1,2|3|4");
        assert!(p.strictly_refines(&SetPartition::parse(4, "1,2,3|4").unwrap()));
    }
}
