//! The fundamental cycle `F_n`: a top chain of `T_n` with coefficients in
//! the multilinear Lie superring, and the pairing of top cochains against it.
//!
//! Each binary tree `X` contributes `⟨w_X⟩ ⊗ c_X`. Cutting `X` at the root
//! node into `Y` and `Z` gives
//! `w_X = ρ_Y w_Y ρ_Z w_Z` (ρ_Y is the edge above `Y`, omitted for a leaf) and
//! `c_X = (-1)^{|Y|} [c_Y, c_Z]`, starting from `c = x_i` on a single leaf.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{edge_order_sign, OrientedComplex, SpaceKind};
use crate::error::{Error, Result};
use crate::lie::{normalize, BracketExpr, Flavor, SuperLieElement};
use crate::perm::LabelPermutation;
use crate::tree::{enumerate_binary, full_labels, LabelSet, LabeledTree};

/// Which half of a root split is taken as `Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SplitOrder {
    /// `Y` holds the smaller label.
    #[default]
    MinLabel,
    /// `Y` holds the larger label.
    MaxLabel,
    /// `Y` is the half with fewer leaves; ties go to the smaller label.
    SmallerFirst,
}

impl SplitOrder {
    fn order(self, a: LabeledTree, b: LabeledTree) -> (LabeledTree, LabeledTree) {
        // `split_at_root` returns the half with the smaller label first.
        match self {
            SplitOrder::MinLabel => (a, b),
            SplitOrder::MaxLabel => (b, a),
            SplitOrder::SmallerFirst => {
                if b.n() < a.n() {
                    (b, a)
                } else {
                    (a, b)
                }
            }
        }
    }
}

/// One term `⟨w_X⟩ ⊗ c_X` of the fundamental cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleTerm {
    pub tree: LabeledTree,
    /// Internal edges (as clades) in construction order.
    pub edge_word: Vec<LabelSet>,
    /// `c_X = sign * monomial` before normalization.
    pub sign: i32,
    pub monomial: BracketExpr,
    /// `c_X` in the left-regulated basis.
    pub coeff: SuperLieElement,
}

impl CycleTerm {
    /// Sign turning the construction word into the canonical edge order.
    pub fn orientation_sign(&self) -> i32 {
        edge_order_sign(&self.edge_word)
    }

    /// Coefficient of the canonically oriented simplex.
    pub fn oriented_coeff(&self) -> SuperLieElement {
        if self.orientation_sign() == 1 {
            self.coeff.clone()
        } else {
            self.coeff.neg()
        }
    }
}

fn raw_term(t: &LabeledTree, order: SplitOrder) -> Result<(Vec<LabelSet>, i32, BracketExpr)> {
    if t.n() == 1 {
        return Ok((Vec::new(), 1, BracketExpr::gen(t.labels().trailing_zeros() as u8)));
    }
    let (a, b) = t.split_at_root()?;
    let (y, z) = order.order(a, b);
    let (wy, sy, my) = raw_term(&y, order)?;
    let (wz, sz, mz) = raw_term(&z, order)?;
    let mut word = Vec::with_capacity(t.num_internal_edges());
    if y.n() >= 2 {
        word.push(y.labels());
    }
    word.extend(wy);
    if z.n() >= 2 {
        word.push(z.labels());
    }
    word.extend(wz);
    let parity = if y.n() % 2 == 0 { 1 } else { -1 };
    Ok((word, parity * sy * sz, BracketExpr::bracket(my, mz)))
}

/// The term of a binary tree.
pub fn cycle_term(t: &LabeledTree) -> Result<CycleTerm> {
    cycle_term_with(t, SplitOrder::MinLabel)
}

pub fn cycle_term_with(t: &LabeledTree, order: SplitOrder) -> Result<CycleTerm> {
    if !t.is_binary() {
        return Err(Error::NotBinary);
    }
    let (edge_word, sign, monomial) = raw_term(t, order)?;
    let normal = normalize(&monomial, Flavor::Super)?;
    let coeff = if sign == 1 { normal } else { normal.neg() };
    Ok(CycleTerm { tree: t.clone(), edge_word, sign, monomial, coeff })
}

/// A chain in one degree of a complex with coefficients in the Lie superring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleChain {
    pub n: usize,
    pub degree: usize,
    /// Simplex id -> nonzero coefficient.
    pub terms: BTreeMap<usize, SuperLieElement>,
}

impl ModuleChain {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, id: usize) -> Option<&SuperLieElement> {
        self.terms.get(&id)
    }
}

/// Every binary tree with its term, in simplex-id order of `T_n`.
pub fn cycle_terms(n: usize) -> Result<Vec<CycleTerm>> {
    cycle_terms_with(n, SplitOrder::MinLabel)
}

pub fn cycle_terms_with(n: usize, order: SplitOrder) -> Result<Vec<CycleTerm>> {
    if n < 3 {
        return Err(Error::OutOfRange(format!("the fundamental cycle needs n >= 3, got {n}")));
    }
    enumerate_binary(n)?.par_iter().map(|t| cycle_term_with(t, order)).collect()
}

/// `F_n`, with each term moved to the canonical orientation of its simplex.
pub fn build_fundamental_cycle(n: usize) -> Result<ModuleChain> {
    let terms = cycle_terms(n)?;
    Ok(ModuleChain {
        n,
        degree: n - 3,
        terms: terms.iter().enumerate().map(|(id, t)| (id, t.oriented_coeff())).collect(),
    })
}

fn check_tree_complex(c: &OrientedComplex, n: usize) -> Result<()> {
    if c.kind() != SpaceKind::TreeSpace || c.n() != n {
        return Err(Error::DegreeMismatch(format!("chain lives on T_{n}, complex is {} with n = {}", c.kind(), c.n())));
    }
    Ok(())
}

/// Apply the integer boundary to a chain with Lie coefficients.
pub fn boundary_of_module_chain(f: &ModuleChain, c: &OrientedComplex) -> Result<ModuleChain> {
    check_tree_complex(c, f.n)?;
    if f.degree == 0 {
        return Err(Error::DegreeMismatch("the boundary of a 0-chain is not defined here".into()));
    }
    let b = c
        .boundary_ref(f.degree)
        .ok_or_else(|| Error::DegreeMismatch(format!("complex has no simplices in degree {}", f.degree)))?;
    let mut acc: BTreeMap<usize, SuperLieElement> = BTreeMap::new();
    for (&s, e) in &f.terms {
        if s >= b.cols() {
            return Err(Error::OutOfRange(format!("simplex {s} not in degree {}", f.degree)));
        }
        for (r, v) in b.column(s) {
            match acc.get_mut(r) {
                Some(x) => x.add_scaled(e, v)?,
                None => {
                    acc.insert(*r, e.scale(v));
                }
            }
        }
    }
    acc.retain(|_, e| !e.is_zero());
    Ok(ModuleChain { n: f.n, degree: f.degree - 1, terms: acc })
}

/// `σ · F`: relabel simplices and substitute generators.
pub fn act(f: &ModuleChain, c: &OrientedComplex, sigma: &LabelPermutation) -> Result<ModuleChain> {
    check_tree_complex(c, f.n)?;
    if !sigma.fixes_zero() {
        return Err(Error::MovesRoot);
    }
    let maps = c.induced_simplicial_map(sigma)?;
    let m = &maps[f.degree];
    let moved: Vec<(usize, SuperLieElement)> = f
        .terms
        .par_iter()
        .map(|(&s, e)| {
            let (t, sign) = m.image(s);
            let img = e.permute_generators(sigma, false)?;
            Ok((t, if sign > 0 { img } else { img.neg() }))
        })
        .collect::<Result<_>>()?;
    Ok(ModuleChain { n: f.n, degree: f.degree, terms: moved.into_iter().collect() })
}

/// Whether `σ · F = F`.
pub fn verify_invariance(f: &ModuleChain, c: &OrientedComplex, sigma: &LabelPermutation) -> Result<bool> {
    Ok(act(f, c, sigma)? == *f)
}

/// `θ(f) = Σ_X f(X) c_X` for an integer cochain given on canonically
/// oriented top simplices.
pub fn theta_eval(cochain: &[BigInt], f: &ModuleChain) -> Result<SuperLieElement> {
    let mut out = SuperLieElement::zero(full_labels(f.n), Flavor::Super);
    for (&s, e) in &f.terms {
        let v = cochain
            .get(s)
            .ok_or_else(|| Error::DegreeMismatch(format!("cochain has {} entries, simplex {s} needed", cochain.len())))?;
        if !v.is_zero() {
            out.add_scaled(e, v)?;
        }
    }
    Ok(out)
}

/// Indicator cochain of one top simplex.
pub fn indicator(len: usize, id: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); len];
    v[id] = BigInt::from(1);
    v
}

/// For each `σ` in `Σ_{n-1}`: the sign `s` with `θ(f_σ) = s λ_σ`, where
/// `f_σ` is the indicator of the caterpillar `γ_σ`. Fails if some value is
/// not a signed basis element or the wrong one.
pub fn caterpillar_pairings(f: &ModuleChain, c: &OrientedComplex) -> Result<Vec<(LabelPermutation, i32)>> {
    check_tree_complex(c, f.n)?;
    let n = f.n;
    let top = c.num_simplices(n - 3);
    LabelPermutation::all_fixing_zero(n)
        .into_par_iter()
        .map(|sigma| {
            let cat = LabeledTree::caterpillar(&sigma)?;
            let id = c.find_tree(&cat).ok_or_else(|| Error::InvalidTree(format!("caterpillar {cat} not found")))?;
            let value = theta_eval(&indicator(top, id), f)?;
            let expected = SuperLieElement::lambda(&sigma, Flavor::Super)?;
            let (s, word) = value
                .as_signed_basis()
                .ok_or_else(|| Error::CharacterMismatch(format!("θ(f_{sigma}) = {value} is not ± a basis element")))?;
            let (_, want) = expected.as_signed_basis().expect("basis element");
            if word != want {
                return Err(Error::CharacterMismatch(format!("θ(f_{sigma}) = {value}, expected ±{expected}")));
            }
            Ok((sigma, s))
        })
        .collect()
}

/// Number of trees per `(sign, shape)` of the raw coefficient.
pub fn shape_census(terms: &[CycleTerm]) -> BTreeMap<(i32, String), usize> {
    let mut out = BTreeMap::new();
    for t in terms {
        *out.entry((t.sign, t.monomial.shape())).or_insert(0) += 1;
    }
    out
}

/// Exported form of one term.
#[derive(Clone, Debug, Serialize)]
pub struct ExportedTerm {
    pub id: usize,
    pub tree: String,
    pub edge_word: Vec<String>,
    pub orientation_sign: i32,
    pub monomial: String,
    /// Basis word (space separated) -> coefficient as a decimal string.
    pub coefficient: BTreeMap<String, String>,
    pub coefficient_text: String,
}

pub fn export_terms(terms: &[CycleTerm]) -> Vec<ExportedTerm> {
    let names: Vec<String> = (0..terms.first().map_or(0, |t| t.tree.n())).map(letter_name).collect();
    terms
        .iter()
        .enumerate()
        .map(|(id, t)| {
            let oriented = t.oriented_coeff();
            ExportedTerm {
                id,
                tree: t.tree.canonical_encoding(),
                edge_word: t
                    .edge_word
                    .iter()
                    .map(|&m| crate::tree::labels_of(m).iter().map(u8::to_string).collect::<Vec<_>>().join(","))
                    .collect(),
                orientation_sign: t.orientation_sign(),
                monomial: format!("{}{}", if t.sign < 0 { "-" } else { "+" }, t.monomial.to_text_named(Some(&names))),
                coefficient: oriented
                    .terms()
                    .map(|(w, c)| (w.iter().map(u8::to_string).collect::<Vec<_>>().join(" "), c.to_string()))
                    .collect(),
                coefficient_text: oriented.to_text_named(Some(&names)),
            }
        })
        .collect()
}

fn letter_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("x{}", i + 1)
    }
}

/// Per face of the top simplices: the terms meeting it. Used to show that
/// each face's contributions cancel on their own.
pub fn face_contributions(f: &ModuleChain, c: &OrientedComplex) -> Result<HashMap<usize, Vec<(usize, i32)>>> {
    check_tree_complex(c, f.n)?;
    let b = c
        .boundary_ref(f.degree)
        .ok_or_else(|| Error::DegreeMismatch(format!("complex has no simplices in degree {}", f.degree)))?;
    let mut out: HashMap<usize, Vec<(usize, i32)>> = HashMap::new();
    for &s in f.terms.keys() {
        for (r, v) in b.column(s) {
            out.entry(*r).or_default().push((s, if v > &BigInt::zero() { 1 } else { -1 }));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_tree_complex;

    #[test]
    fn base_cases() {
        let t = LabeledTree::star_n(2).unwrap();
        let term = cycle_term(&t).unwrap();
        assert_eq!(term.sign, -1);
        assert_eq!(term.monomial.to_text_named(None), "[1,2]");
        assert!(term.edge_word.is_empty());
    }

    #[test]
    fn split_order_does_not_matter() {
        for n in 3..=6 {
            for t in enumerate_binary(n).unwrap() {
                let a = cycle_term_with(&t, SplitOrder::MinLabel).unwrap().oriented_coeff();
                let b = cycle_term_with(&t, SplitOrder::MaxLabel).unwrap().oriented_coeff();
                let c = cycle_term_with(&t, SplitOrder::SmallerFirst).unwrap().oriented_coeff();
                assert_eq!(a, b, "{t}");
                assert_eq!(a, c, "{t}");
            }
        }
    }

    #[test]
    fn cycle_small() {
        for n in 3..=5 {
            let c = build_tree_complex(n).unwrap();
            let f = build_fundamental_cycle(n).unwrap();
            assert_eq!(f.len() as u128, crate::tree::binary_tree_count(n));
            if n > 3 {
                assert!(boundary_of_module_chain(&f, &c).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn single_term_is_not_a_cycle() {
        let c = build_tree_complex(4).unwrap();
        let f = build_fundamental_cycle(4).unwrap();
        for (&s, e) in &f.terms {
            let one = ModuleChain { n: 4, degree: 1, terms: [(s, e.clone())].into_iter().collect() };
            assert!(!boundary_of_module_chain(&one, &c).unwrap().is_zero());
        }
    }

    #[test]
    fn census_n5() {
        let terms = cycle_terms_with(5, SplitOrder::SmallerFirst).unwrap();
        let census = shape_census(&terms);
        assert_eq!(census.get(&(1, "[*,[*,[*,[*,*]]]]".into())), Some(&60));
        assert_eq!(census.get(&(-1, "[[*,*],[*,[*,*]]]".into())), Some(&30));
        assert_eq!(census.get(&(-1, "[*,[[*,*],[*,*]]]".into())), Some(&15));
        assert_eq!(census.len(), 3);
    }
}
