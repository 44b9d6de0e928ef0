//! The pair `(T_{n+1}, X)`, where `X` is what remains of `T_{n+1}` after
//! removing the open stars of the vertices `v_{0i}`, and the exact sequence
//! `0 -> H_{n-2}(T_{n+1}) -> H_{n-2}(T_{n+1}, X) -> H_{n-3}(X) -> 0`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::character::{homology_character, lie_character, to_i64, Character};
use crate::complex::{build_tree_complex, OrientedComplex, SignedPermutation};
use crate::error::{Error, Result};
use crate::homology::{homology, ChainComplex, HomologyBasis, HomologyResult};
use crate::lie::Flavor;
use crate::matrix::DenseMatrix;
use crate::snf::{smith_normal_form, smith_with_transforms};
use crate::tree::{full_labels, Bipartition, LabelSet};

/// `T_{n+1}` with the subcomplex `X` and the quotient chain complex.
#[derive(Clone, Debug)]
pub struct PairComplex {
    pub n: usize,
    pub ambient: OrientedComplex,
    /// Per degree, ids of ambient simplices lying in `X`, ascending.
    pub sub_ids: Vec<Vec<usize>>,
    /// Per degree, the remaining ids, ascending.
    pub rel_ids: Vec<Vec<usize>>,
    pub ambient_chains: ChainComplex,
    pub sub: ChainComplex,
    pub relative: ChainComplex,
}

/// The vertex `v_{0i}` of `T_m`: the edge cutting off leaves `0` and `i`.
pub fn root_pair_vertex(c: &OrientedComplex, i: u8) -> Result<u32> {
    let m = c.n();
    let clade: LabelSet = full_labels(m) & !(1 << i);
    let b = Bipartition::new(full_labels(m), clade)?;
    let t = crate::tree::LabeledTree::vertex_tree(&b);
    c.find_tree(&t).map(|id| id as u32).ok_or_else(|| Error::InvalidTree(format!("no vertex {b} in T_{m}")))
}

pub fn build_complement_subcomplex(n: usize) -> Result<PairComplex> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("the pair needs n >= 2, got {n}")));
    }
    let ambient = build_tree_complex(n + 1)?;
    let removed: Vec<u32> = (1..=n as u8 + 1).map(|i| root_pair_vertex(&ambient, i)).collect::<Result<_>>()?;
    let mut sub_ids = Vec::new();
    let mut rel_ids = Vec::new();
    for k in 0..=ambient.dim() as usize {
        let (s, r): (Vec<usize>, Vec<usize>) =
            (0..ambient.num_simplices(k)).partition(|&id| !ambient.simplex(k, id).iter().any(|v| removed.contains(v)));
        sub_ids.push(s);
        rel_ids.push(r);
    }
    let ambient_chains = ChainComplex::from_complex(&ambient);
    let sub = ambient_chains.restrict(&sub_ids)?;
    let relative = ambient_chains.restrict(&rel_ids)?;
    relative.check_boundary_squared()?;
    sub.check_boundary_squared()?;
    Ok(PairComplex { n, ambient, sub_ids, rel_ids, ambient_chains, sub, relative })
}

impl PairComplex {
    pub fn sub_f_vector(&self) -> Vec<usize> {
        self.sub.dims().to_vec()
    }

    pub fn relative_f_vector(&self) -> Vec<usize> {
        self.rel_ids.iter().map(Vec::len).collect()
    }

    pub fn sub_euler_characteristic(&self) -> i64 {
        self.sub.dims().iter().enumerate().map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) }).sum()
    }

    /// Signed permutation of `X`'s simplices in degree `k` induced by an
    /// ambient chain map that preserves `X`.
    fn restrict_map(&self, map: &SignedPermutation, k: usize) -> Result<SignedPermutation> {
        let ids = &self.sub_ids[k];
        let mut pos = vec![usize::MAX; self.ambient.num_simplices(k)];
        for (i, &s) in ids.iter().enumerate() {
            pos[s] = i;
        }
        let mut images = Vec::with_capacity(ids.len());
        for &s in ids {
            let (t, e) = map.image(s);
            if pos[t] == usize::MAX {
                return Err(Error::InvalidTree("map does not preserve the subcomplex".into()));
            }
            images.push((pos[t], e));
        }
        Ok(SignedPermutation::from_images(images))
    }
}

pub fn relative_homology(p: &PairComplex) -> Result<HomologyResult> {
    homology(&p.relative, false, false)
}

pub fn sub_homology(p: &PairComplex, reduced: bool) -> Result<HomologyResult> {
    homology(&p.sub, reduced, false)
}

/// Outcome of the integral exactness check.
#[derive(Clone, Debug, Serialize)]
pub struct ExactnessReport {
    pub degree: usize,
    pub ranks: [usize; 3],
    pub composite_zero: bool,
    pub injective: bool,
    pub image_saturated: bool,
    pub surjective: bool,
    pub image_equals_kernel: bool,
    pub rank_sum: bool,
    pub exact: bool,
    pub diagnostics: Vec<String>,
}

fn to_vec_on(ids: &[usize], x: &[BigInt]) -> Vec<BigInt> {
    ids.iter().map(|&i| x[i].clone()).collect()
}

fn lift(ids: &[usize], len: usize, x: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (v, &i) in x.iter().zip(ids) {
        out[i] = v.clone();
    }
    out
}

fn non_unit_factors(m: &DenseMatrix) -> (usize, Vec<(usize, BigInt)>) {
    let f = smith_normal_form(&m.to_sparse());
    let bad = f.invariant_factors.iter().enumerate().filter(|(_, d)| !d.is_one()).map(|(i, d)| (i, d.clone())).collect();
    (f.rank(), bad)
}

/// Builds the maps `M: H_d(T) -> H_d(T, X)` and the connecting map
/// `N: H_d(T, X) -> H_{d-1}(X)` with `d = n - 2` and certifies exactness over
/// the integers via Smith forms.
pub fn exactness_check(p: &PairComplex) -> Result<ExactnessReport> {
    let n = p.n;
    if n < 3 {
        return Err(Error::OutOfRange(format!("exactness check needs n >= 3, got {n}")));
    }
    let d = n - 2;
    let left = HomologyBasis::new(&p.ambient_chains, d, true)?;
    let mid = HomologyBasis::new(&p.relative, d, false)?;
    let right = HomologyBasis::new(&p.sub, d - 1, true)?;
    let mut diagnostics = Vec::new();
    for (name, b) in [("ambient", &left), ("relative", &mid), ("subcomplex", &right)] {
        if !b.torsion.is_empty() {
            diagnostics.push(format!("{name} homology has torsion {:?}", b.torsion.iter().map(ToString::to_string).collect::<Vec<_>>()));
        }
    }
    let (l, m, r) = (left.rank(), mid.rank(), right.rank());

    let m_cols = (0..l)
        .map(|j| mid.coordinates(&p.relative, &to_vec_on(&p.rel_ids[d], &left.representative(j)), false))
        .collect::<Result<Vec<_>>>()?;
    let m_mat = DenseMatrix::from_columns(m, &m_cols);

    let ambient_bd = p.ambient_chains.boundary(d, false);
    let n_cols = (0..m)
        .map(|j| {
            let chain = lift(&p.rel_ids[d], p.ambient.num_simplices(d), &mid.representative(j));
            let bd = ambient_bd.mul_vec(&chain)?;
            let removed: Vec<usize> = p.rel_ids[d - 1].iter().copied().filter(|&i| !bd[i].is_zero()).collect();
            if !removed.is_empty() {
                return Err(Error::Exactness(format!("boundary of relative cycle {j} leaves the subcomplex at {removed:?}")));
            }
            right.coordinates(&p.sub, &to_vec_on(&p.sub_ids[d - 1], &bd), true)
        })
        .collect::<Result<Vec<_>>>()?;
    let n_mat = DenseMatrix::from_columns(r, &n_cols);

    let composite = n_mat.mul(&m_mat)?;
    let composite_zero = composite.is_zero();
    if !composite_zero {
        diagnostics.push("N·M is nonzero".into());
    }
    let (m_rank, m_bad) = non_unit_factors(&m_mat);
    let injective = m_rank == l;
    let image_saturated = m_bad.is_empty();
    if !injective {
        diagnostics.push(format!("M has rank {m_rank}, expected {l}"));
    }
    if !image_saturated {
        diagnostics.push(format!("image of M is not saturated: invariant factors {m_bad:?}"));
    }
    let (n_rank, n_bad) = non_unit_factors(&n_mat);
    let surjective = n_rank == r && n_bad.is_empty();
    if !surjective {
        diagnostics.push(format!("N has rank {n_rank} of {r}; non-unit invariant factors {n_bad:?}"));
    }
    // ker N in the basis of the middle group; M must be a unimodular change of basis onto it.
    let sn = smith_with_transforms(&n_mat);
    let kr = sn.rank();
    let coords = sn.v_inv.mul(&m_mat)?;
    let outside: Vec<usize> = (0..kr).filter(|&i| coords.row(i).iter().any(|v| !v.is_zero())).collect();
    let in_kernel = coords.row_block(kr..coords.rows());
    let image_equals_kernel = outside.is_empty() && in_kernel.rows() == l && {
        let f = smith_normal_form(&in_kernel.to_sparse());
        f.rank() == l && f.all_units()
    };
    if !image_equals_kernel {
        diagnostics.push(format!("image of M differs from ker N; coordinates outside the kernel at rows {outside:?}"));
    }
    let rank_sum = m == l + r;
    if !rank_sum {
        diagnostics.push(format!("rank {m} != {l} + {r}"));
    }
    let exact = composite_zero && injective && image_saturated && surjective && image_equals_kernel && rank_sum && diagnostics.is_empty();
    Ok(ExactnessReport {
        degree: d,
        ranks: [l, m, r],
        composite_zero,
        injective,
        image_saturated,
        surjective,
        image_equals_kernel,
        rank_sum,
        exact,
        diagnostics,
    })
}

/// Character of `Σ_{n+1}` on `ε ⊗ H̃_{n-3}(T_n)`; its restriction to `Σ_n` is `χ(Lie_n)`.
pub fn hat_lie_character(n: usize) -> Result<Character> {
    if n < 3 {
        return Err(Error::OutOfRange(format!("hat-Lie needs n >= 3, got {n}")));
    }
    let t = build_tree_complex(n)?;
    let chi = homology_character(&t, n - 3)?.tensor_sign();
    let lie = lie_character(n, Flavor::Ordinary)?;
    let res = chi.restrict()?;
    if res != lie {
        return Err(Error::CharacterMismatch(format!("restriction {res} differs from Lie character {lie}")));
    }
    Ok(chi)
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterRow {
    pub name: String,
    pub values: Vec<(String, i64)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WhitehouseCharacterCheck {
    pub n: usize,
    pub holds: bool,
    pub rows: Vec<CharacterRow>,
    pub mismatches: Vec<String>,
}

/// `χ(Ind Lie_n) = χ(Lie_{n+1}) + χ(hat-Lie_n)` class by class.
pub fn whitehouse_character_check(n: usize) -> Result<WhitehouseCharacterCheck> {
    let induced = lie_character(n, Flavor::Ordinary)?.induce();
    let lie_next = lie_character(n + 1, Flavor::Ordinary)?;
    let hat = hat_lie_character(n)?;
    let sum = lie_next.add(&hat)?;
    let mismatches: Vec<String> =
        induced.differences(&sum)?.into_iter().map(|(p, a, b)| format!("class {p}: induced {a}, sum {b}")).collect();
    let row = |name: &str, c: &Character| CharacterRow { name: name.into(), values: c.table() };
    Ok(WhitehouseCharacterCheck {
        n,
        holds: mismatches.is_empty(),
        rows: vec![row("induced", &induced), row("lie_next", &lie_next), row("hat_lie", &hat)],
        mismatches,
    })
}

/// Character of `Σ_{n+1}` (permuting labels `1..n+1`) on reduced `H_{n-3}(X)`.
pub fn sub_homology_character(p: &PairComplex) -> Result<Character> {
    let n = p.n;
    let k = n - 3;
    let basis = HomologyBasis::new(&p.sub, k, true)?;
    if !basis.torsion.is_empty() {
        return Err(Error::Torsion { degree: k, torsion: basis.torsion.iter().map(ToString::to_string).collect() });
    }
    Character::try_from_fn(n + 1, |c| {
        let sigma = c.representative(n + 2, 1)?;
        let maps = p.ambient.induced_simplicial_map(&sigma)?;
        let m = p.restrict_map(&maps[k], k)?;
        to_i64(&basis.trace(&p.sub, &m, true)?)
    })
}

/// No simplex of `T_{m}` contains two of the vertices `v_{0i}`.
pub fn stars_disjoint(c: &OrientedComplex) -> Result<bool> {
    let m = c.n();
    let vs: Vec<u32> = (1..=m as u8).map(|i| root_pair_vertex(c, i)).collect::<Result<_>>()?;
    for (a, &x) in vs.iter().enumerate() {
        for &y in &vs[a + 1..] {
            if c.find(&[x, y]).is_some() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// f-vector of the closed star of a vertex.
pub fn closed_star_f_vector(c: &OrientedComplex, v: u32) -> Vec<usize> {
    let top = c.dim();
    if top < 0 {
        return Vec::new();
    }
    let mut f = Vec::new();
    for k in 0..=top as usize {
        let count = c
            .simplices(k)
            .iter()
            .filter(|s| {
                if s.contains(&v) {
                    return true;
                }
                let mut with = s.to_vec();
                with.push(v);
                c.find(&with).is_some()
            })
            .count();
        f.push(count);
    }
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_n3() {
        let p = build_complement_subcomplex(3).unwrap();
        assert_eq!(p.sub_f_vector(), vec![6, 3]);
        let h = sub_homology(&p, true).unwrap();
        assert_eq!(h.betti(0), 2);
        assert_eq!(relative_homology(&p).unwrap().betti(1), 8);
        let r = exactness_check(&p).unwrap();
        assert_eq!(r.ranks, [6, 8, 2]);
        assert!(r.exact, "{:?}", r.diagnostics);
    }

    #[test]
    fn hat_lie_3() {
        let untwisted = homology_character(&build_tree_complex(3).unwrap(), 0).unwrap();
        assert_eq!(untwisted.values(), &[2, 0, 2, -1, 0]);
        let hat = hat_lie_character(3).unwrap();
        assert_eq!(hat.restrict().unwrap().values(), &[2, 0, -1]);
        assert!(whitehouse_character_check(3).unwrap().holds);
    }

    #[test]
    fn stars() {
        for m in 3..=5 {
            let c = build_tree_complex(m).unwrap();
            assert!(stars_disjoint(&c).unwrap());
        }
        let c = build_tree_complex(4).unwrap();
        let v = root_pair_vertex(&c, 4).unwrap();
        let t3 = build_tree_complex(3).unwrap().f_vector();
        assert_eq!(closed_star_f_vector(&c, v), vec![t3[0] + 1, t3[0]]);
    }
}
