//! Class functions on symmetric groups, indexed by cycle type.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::complex::OrientedComplex;
use crate::error::{Error, Result};
use crate::homology::{ChainComplex, HomologyBasis};
use crate::lie::{basis_words, generators, Flavor, SuperLieElement};
use crate::perm::{factorial, LabelPermutation, Partition};

/// Cycle types of `Σ_m`, identity first.
pub fn classes(m: usize) -> Vec<Partition> {
    let mut all = Partition::all(m as u32);
    all.reverse();
    all
}

/// A class function on `Σ_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    m: usize,
    /// Aligned with [`classes`].
    values: Vec<i64>,
}

impl Character {
    pub fn from_fn(m: usize, mut f: impl FnMut(&Partition) -> i64) -> Self {
        Self { m, values: classes(m).iter().map(&mut f).collect() }
    }

    pub fn try_from_fn(m: usize, f: impl Fn(&Partition) -> Result<i64> + Sync + Send) -> Result<Self> {
        let values = classes(m).par_iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(Self { m, values })
    }

    pub fn from_values(m: usize, values: Vec<i64>) -> Result<Self> {
        let k = classes(m).len();
        if values.len() != k {
            return Err(Error::SizeMismatch { expected: k, got: values.len() });
        }
        Ok(Self { m, values })
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn value(&self, class: &Partition) -> Result<i64> {
        classes(self.m)
            .iter()
            .position(|c| c == class)
            .map(|i| self.values[i])
            .ok_or_else(|| Error::OutOfRange(format!("{class} is not a cycle type of S_{}", self.m)))
    }

    /// Value at a permutation of `{0..len-1}` restricted to the moved part.
    pub fn at(&self, sigma: &LabelPermutation) -> Result<i64> {
        self.value(&sigma.cycle_type())
    }

    pub fn dimension(&self) -> i64 {
        self.values.first().copied().unwrap_or(1)
    }

    pub fn trivial(m: usize) -> Self {
        Self::from_fn(m, |_| 1)
    }

    pub fn sign(m: usize) -> Self {
        Self::from_fn(m, |p| p.sign() as i64)
    }

    pub fn regular(m: usize) -> Self {
        let order = factorial(m as u128) as i64;
        Self::from_fn(m, |p| if p.fixed_points() == m { order } else { 0 })
    }

    pub fn tensor_sign(&self) -> Self {
        let signs = Self::sign(self.m);
        Self { m: self.m, values: self.values.iter().zip(&signs.values).map(|(a, b)| a * b).collect() }
    }

    /// Restriction to `Σ_{m-1}`, the stabiliser of one point.
    pub fn restrict(&self) -> Result<Self> {
        if self.m == 0 {
            return Err(Error::OutOfRange("cannot restrict a character of S_0".into()));
        }
        let m = self.m - 1;
        classes(m).iter().map(|p| self.value(&p.with_fixed_points(1))).collect::<Result<Vec<_>>>().map(|values| Self { m, values })
    }

    /// Induction from `Σ_m` to `Σ_{m+1}`: at a permutation with `f` fixed
    /// points the value is `f · χ(type with one fixed point removed)`.
    pub fn induce(&self) -> Self {
        let m = self.m + 1;
        Self::from_fn(m, |p| match p.without_fixed_point() {
            Some(q) => p.fixed_points() as i64 * self.value(&q).expect("cycle type of the smaller group"),
            None => 0,
        })
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::CharacterMismatch(format!("S_{} vs S_{}", self.m, other.m)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self { m: self.m, values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self { m: self.m, values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect() })
    }

    /// Classes where the two characters differ.
    pub fn differences(&self, other: &Self) -> Result<Vec<(Partition, i64, i64)>> {
        self.check_same(other)?;
        Ok(classes(self.m)
            .into_iter()
            .zip(self.values.iter().zip(&other.values))
            .filter(|(_, (a, b))| a != b)
            .map(|(p, (a, b))| (p, *a, *b))
            .collect())
    }

    pub fn equal(&self, other: &Self) -> bool {
        self == other
    }

    /// `⟨χ, ψ⟩ = (1/m!) Σ |C| χ(C) ψ(C)`; exact when the result is an integer.
    pub fn inner(&self, other: &Self) -> Result<i64> {
        self.check_same(other)?;
        let total: i128 = classes(self.m)
            .iter()
            .zip(self.values.iter().zip(&other.values))
            .map(|(p, (a, b))| p.class_size() as i128 * *a as i128 * *b as i128)
            .sum();
        let order = factorial(self.m as u128) as i128;
        if total % order != 0 {
            return Err(Error::CharacterMismatch(format!("inner product {total}/{order} is not an integer")));
        }
        Ok((total / order) as i64)
    }

    /// `(type, value)` rows, identity first, types written like "2+1".
    pub fn table(&self) -> Vec<(String, i64)> {
        classes(self.m).iter().map(ToString::to_string).zip(self.values.iter().copied()).collect()
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.table().into_iter().map(|(p, v)| format!("{p}: {v}")).collect();
        write!(f, "S_{} [{}]", self.m, cells.join(", "))
    }
}

/// Character of `Σ_n` acting on the multilinear part by permuting generators.
pub fn lie_character(n: usize, flavor: Flavor) -> Result<Character> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be positive".into()));
    }
    let labels = generators(n);
    let words = basis_words(labels);
    Character::try_from_fn(n, |p| {
        let sigma = p.representative(n + 1, 1)?;
        let mut t = BigInt::default();
        for w in &words {
            let image = SuperLieElement::basis(w, flavor)?.permute_generators(&sigma, false)?;
            t += image.coeff(w);
        }
        to_i64(&t)
    })
}

/// Character of `Σ_{n+1}` on reduced `H_k` of a tree complex (labels `0..n`).
pub fn homology_character(c: &OrientedComplex, k: usize) -> Result<Character> {
    let m = c.n() + 1;
    let cc = ChainComplex::from_complex(c);
    let basis = HomologyBasis::new(&cc, k, true)?;
    if !basis.torsion.is_empty() {
        return Err(Error::Torsion { degree: k, torsion: basis.torsion.iter().map(ToString::to_string).collect() });
    }
    Character::try_from_fn(m, |p| {
        let sigma = p.representative(m, 0)?;
        let maps = c.induced_simplicial_map(&sigma)?;
        to_i64(&basis.trace(&cc, &maps[k], true)?)
    })
}

/// Character of `Σ_n` (fixing 0) on reduced `H_k` of any complex built here.
pub fn homology_character_fixing_root(c: &OrientedComplex, k: usize) -> Result<Character> {
    let n = c.n();
    let cc = ChainComplex::from_complex(c);
    let basis = HomologyBasis::new(&cc, k, true)?;
    if !basis.torsion.is_empty() {
        return Err(Error::Torsion { degree: k, torsion: basis.torsion.iter().map(ToString::to_string).collect() });
    }
    Character::try_from_fn(n, |p| {
        let sigma = p.representative(n + 1, 1)?;
        let maps = c.induced_simplicial_map(&sigma)?;
        to_i64(&basis.trace(&cc, &maps[k], true)?)
    })
}

pub(crate) fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::OutOfRange(format!("{x} does not fit in 64 bits")))
}
