//! Permutations of the label set `{0, 1, ..., n}` and cycle types.

use std::fmt;

use crate::error::{Error, Result};

/// A bijection of `{0, ..., len-1}`, stored as its image table.
///
/// `images[i]` is the image of label `i`. Permutations of `{1..n}` are the
/// ones with `images[0] == 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelPermutation {
    images: Vec<u8>,
}

impl LabelPermutation {
    pub fn new(images: Vec<u8>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            let x = x as usize;
            if x >= images.len() || seen[x] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(len: usize) -> Self {
        Self { images: (0..len as u8).collect() }
    }

    /// Swap two labels.
    pub fn transposition(len: usize, a: u8, b: u8) -> Result<Self> {
        if a as usize >= len || b as usize >= len {
            return Err(Error::OutOfRange(format!("transposition ({a} {b}) on {len} labels")));
        }
        let mut images: Vec<u8> = (0..len as u8).collect();
        images.swap(a as usize, b as usize);
        Ok(Self { images })
    }

    /// Build from disjoint cycles, e.g. `[[1, 2, 3]]` sends 1 to 2, 2 to 3, 3 to 1.
    pub fn from_cycles(len: usize, cycles: &[Vec<u8>]) -> Result<Self> {
        let mut images: Vec<u8> = (0..len as u8).collect();
        let mut used = vec![false; len];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                let a_us = a as usize;
                if a_us >= len || used[a_us] {
                    return Err(Error::InvalidPermutation(format!("{cycles:?}")));
                }
                used[a_us] = true;
                images[a_us] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Self { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, label: u8) -> u8 {
        self.images[label as usize]
    }

    /// Image of a label set given as a bitmask.
    pub fn apply_mask(&self, mask: u32) -> u32 {
        let mut out = 0u32;
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros();
            out |= 1 << self.images[i as usize];
            m &= m - 1;
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn fixes_zero(&self) -> bool {
        self.images.first().is_none_or(|&x| x == 0)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch { expected: self.len(), got: other.len() });
        }
        Ok(Self { images: other.images.iter().map(|&i| self.images[i as usize]).collect() })
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0u8; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u8;
        }
        Self { images }
    }

    pub fn cycles(&self) -> Vec<Vec<u8>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i as u8);
                i = self.images[i] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle type on all `len` points.
    pub fn cycle_type(&self) -> Partition {
        Partition::new(self.cycles().iter().map(|c| c.len() as u32).collect())
    }

    /// Cycle type on the points `1..len`; requires `self` to fix 0.
    pub fn cycle_type_nonzero(&self) -> Partition {
        Partition::new(
            self.cycles().iter().filter(|c| c[0] != 0).map(|c| c.len() as u32).collect(),
        )
    }

    /// +1 for even permutations, -1 for odd ones.
    pub fn sign(&self) -> i32 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions.is_multiple_of(2) { 1 } else { -1 }
    }

    /// Every permutation of `{0..len-1}`, lexicographic in the image table.
    pub fn all(len: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut current: Vec<u8> = (0..len as u8).collect();
        loop {
            out.push(Self { images: current.clone() });
            if !next_permutation(&mut current) {
                break;
            }
        }
        out
    }

    /// Every permutation of `{0..len-1}` fixing 0.
    pub fn all_fixing_zero(len: usize) -> Vec<Self> {
        if len == 0 {
            return vec![Self::identity(0)];
        }
        let mut tail: Vec<u8> = (1..len as u8).collect();
        let mut out = Vec::new();
        loop {
            let mut images = vec![0u8];
            images.extend_from_slice(&tail);
            out.push(Self { images });
            if !next_permutation(&mut tail) {
                break;
            }
        }
        out
    }
}

impl fmt::Display for LabelPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Advance to the next permutation in lexicographic order.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Sign of the permutation that sorts `items`; items must be distinct.
pub fn sorting_sign<T: Ord>(items: &[T]) -> i32 {
    let mut inversions = 0usize;
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            if items[i] > items[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) { 1 } else { -1 }
}

/// An integer partition in non-increasing order; indexes cycle types.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn fixed_points(&self) -> usize {
        self.0.iter().filter(|&&p| p == 1).count()
    }

    /// Sign of any permutation of this cycle type.
    pub fn sign(&self) -> i32 {
        let t: u32 = self.0.iter().map(|p| p - 1).sum();
        if t.is_multiple_of(2) { 1 } else { -1 }
    }

    /// Add `k` fixed points.
    pub fn with_fixed_points(&self, k: usize) -> Self {
        let mut parts = self.0.clone();
        parts.extend(std::iter::repeat_n(1, k));
        Self::new(parts)
    }

    /// Remove one fixed point, if there is one.
    pub fn without_fixed_point(&self) -> Option<Self> {
        let pos = self.0.iter().rposition(|&p| p == 1)?;
        let mut parts = self.0.clone();
        parts.remove(pos);
        Some(Self(parts))
    }

    /// All partitions of `m`, in reverse lexicographic order starting at `[m]`.
    pub fn all(m: u32) -> Vec<Self> {
        fn rec(remaining: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition(prefix.clone()));
                return;
            }
            for p in (1..=remaining.min(max)).rev() {
                prefix.push(p);
                rec(remaining - p, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(m, m, &mut Vec::new(), &mut out);
        out
    }

    /// Number of permutations of this cycle type.
    pub fn class_size(&self) -> u128 {
        let m = self.size() as u128;
        let mut denom: u128 = 1;
        let mut counts = std::collections::BTreeMap::new();
        for &p in &self.0 {
            *counts.entry(p).or_insert(0u128) += 1;
            denom *= p as u128;
        }
        for (_, c) in counts {
            denom *= factorial(c);
        }
        factorial(m) / denom
    }

    /// Canonical representative: consecutive cycles over `first..`, longest first.
    /// The returned permutation acts on `{0..len-1}`, fixing points below `first`.
    pub fn representative(&self, len: usize, first: u8) -> Result<LabelPermutation> {
        if first as usize + self.size() as usize > len {
            return Err(Error::OutOfRange(format!(
                "cycle type {self} does not fit on labels {first}..{len}"
            )));
        }
        let mut cycles = Vec::new();
        let mut next = first;
        for &p in &self.0 {
            cycles.push((next..next + p as u8).collect::<Vec<u8>>());
            next += p as u8;
        }
        LabelPermutation::from_cycles(len, &cycles)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.size().cmp(&other.size()).then_with(|| other.0.cmp(&self.0))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split('+')
            .map(|p| p.trim().parse::<u32>().map_err(|e| Error::Parse(format!("{s}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(parts))
    }
}

pub fn factorial(m: u128) -> u128 {
    (1..=m).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_applies_right_first() {
        let s = LabelPermutation::from_cycles(4, &[vec![1, 2]]).unwrap();
        let t = LabelPermutation::from_cycles(4, &[vec![2, 3]]).unwrap();
        let ts = t.compose(&s).unwrap();
        assert_eq!(ts.apply(1), 3);
        assert_eq!(ts.apply(3), 2);
        assert_eq!(ts.apply(2), 1);
    }

    #[test]
    fn partitions_and_class_sizes() {
        let p5 = Partition::all(5);
        assert_eq!(p5.len(), 7);
        let total: u128 = p5.iter().map(|p| p.class_size()).sum();
        assert_eq!(total, 120);
        assert_eq!("3+1".parse::<Partition>().unwrap().to_string(), "3+1");
    }

    #[test]
    fn representative_has_requested_type() {
        for lambda in Partition::all(4) {
            let rep = lambda.representative(5, 1).unwrap();
            assert!(rep.fixes_zero());
            assert_eq!(rep.cycle_type_nonzero(), lambda);
            assert_eq!(rep.sign(), lambda.sign());
        }
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(LabelPermutation::new(vec![0, 0, 1]).is_err());
        assert!(LabelPermutation::new(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn sorting_sign_counts_inversions() {
        assert_eq!(sorting_sign(&[1, 2, 3]), 1);
        assert_eq!(sorting_sign(&[2, 1, 3]), -1);
        assert_eq!(sorting_sign(&[3, 1, 2]), 1);
    }
}
