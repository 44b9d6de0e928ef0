//! Integral homology of chain complexes of free abelian groups.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{OrientedComplex, SignedPermutation};
use crate::error::{Error, Result};
use crate::matrix::{DenseMatrix, IntMatrix};
use crate::snf::{smith_normal_form, smith_with_transforms, SmithForm};

/// Free chain groups `C_0..C_top` with boundaries `C_k -> C_{k-1}`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    dims: Vec<usize>,
    /// `boundaries[k - 1]` is `∂_k`.
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    pub fn new(dims: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self> {
        if !dims.is_empty() && boundaries.len() + 1 != dims.len() {
            return Err(Error::SizeMismatch { expected: dims.len().saturating_sub(1), got: boundaries.len() });
        }
        for (i, b) in boundaries.iter().enumerate() {
            if b.rows() != dims[i] || b.cols() != dims[i + 1] {
                return Err(Error::DegreeMismatch(format!(
                    "boundary in degree {} is {}x{}, expected {}x{}",
                    i + 1,
                    b.rows(),
                    b.cols(),
                    dims[i],
                    dims[i + 1]
                )));
            }
        }
        Ok(Self { dims, boundaries })
    }

    pub fn from_complex(c: &OrientedComplex) -> Self {
        Self { dims: c.f_vector(), boundaries: c.boundaries().to_vec() }
    }

    /// Top degree, or -1 when there are no chains.
    pub fn top(&self) -> isize {
        self.dims.len() as isize - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, k: usize) -> usize {
        self.dims.get(k).copied().unwrap_or(0)
    }

    /// `∂_k`; in degree 0 the augmentation when `reduced`, else the zero map.
    pub fn boundary(&self, k: usize, reduced: bool) -> IntMatrix {
        if k == 0 {
            let d0 = self.dim(0);
            return if reduced {
                IntMatrix::from_triplets(1, d0, (0..d0).map(|c| (0, c, BigInt::one()))).expect("shape")
            } else {
                IntMatrix::zeros(0, d0)
            };
        }
        match self.boundaries.get(k - 1) {
            Some(b) => b.clone(),
            None => IntMatrix::zeros(self.dim(k - 1), self.dim(k)),
        }
    }

    pub fn boundaries(&self) -> &[IntMatrix] {
        &self.boundaries
    }

    /// `∂_{k-1} ∂_k = 0` for all `k`.
    pub fn check_boundary_squared(&self) -> Result<()> {
        check_boundary_squared(&self.boundaries)
    }

    /// Keep only the listed chain generators in each degree (a quotient when
    /// the dropped generators span a subcomplex).
    pub fn restrict(&self, keep: &[Vec<usize>]) -> Result<Self> {
        if keep.len() != self.dims.len() {
            return Err(Error::SizeMismatch { expected: self.dims.len(), got: keep.len() });
        }
        let mut dims: Vec<usize> = keep.iter().map(Vec::len).collect();
        while dims.last() == Some(&0) {
            dims.pop();
        }
        let boundaries =
            (1..dims.len()).map(|k| self.boundaries[k - 1].submatrix(&keep[k - 1], &keep[k])).collect();
        Ok(Self { dims, boundaries })
    }
}

pub fn check_boundary_squared(boundaries: &[IntMatrix]) -> Result<()> {
    for k in 2..=boundaries.len() {
        let (lower, upper) = (&boundaries[k - 2], &boundaries[k - 1]);
        let prod = lower.mul(upper).map_err(|_| Error::BoundarySquared {
            degree: k,
            detail: format!("shapes {}x{} and {}x{} do not compose", lower.rows(), lower.cols(), upper.rows(), upper.cols()),
        })?;
        let first = prod.triplets().next().map(|(r, c, v)| format!("entry ({r}, {c}) of the composite is {v}"));
        if let Some(first) = first {
            return Err(Error::BoundarySquared { degree: k, detail: format!("{first}; {} nonzero entries", prod.nnz()) });
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeHomology {
    pub degree: isize,
    pub betti: usize,
    #[serde(serialize_with = "ser_bigints")]
    pub torsion: Vec<BigInt>,
}

fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

#[derive(Clone, Debug)]
pub struct HomologyResult {
    pub reduced: bool,
    pub degrees: Vec<DegreeHomology>,
    /// Integer kernel basis of the top boundary, as columns.
    pub top_cycle_basis: Option<DenseMatrix>,
}

impl HomologyResult {
    pub fn betti(&self, k: isize) -> usize {
        self.degrees.iter().find(|d| d.degree == k).map_or(0, |d| d.betti)
    }

    pub fn torsion(&self, k: isize) -> &[BigInt] {
        self.degrees.iter().find(|d| d.degree == k).map_or(&[], |d| d.torsion.as_slice())
    }

    pub fn is_torsion_free(&self) -> bool {
        self.degrees.iter().all(|d| d.torsion.is_empty())
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.degrees.iter().filter(|d| d.degree >= 0).map(|d| d.betti).collect()
    }

    /// Degrees with nonzero homology.
    pub fn support(&self) -> Vec<isize> {
        self.degrees.iter().filter(|d| d.betti > 0 || !d.torsion.is_empty()).map(|d| d.degree).collect()
    }
}

/// Betti numbers and torsion in every degree, from Smith forms of the boundaries.
pub fn homology(cc: &ChainComplex, reduced: bool, with_top_basis: bool) -> Result<HomologyResult> {
    cc.check_boundary_squared()?;
    let top = cc.top();
    if top < 0 {
        let degrees = if reduced { vec![DegreeHomology { degree: -1, betti: 1, torsion: vec![] }] } else { vec![] };
        return Ok(HomologyResult { reduced, degrees, top_cycle_basis: None });
    }
    let top = top as usize;
    let forms: Vec<SmithForm> = (0..=top).into_par_iter().map(|k| smith_normal_form(&cc.boundary(k, reduced))).collect();
    let rank = |k: usize| forms.get(k).map_or(0, SmithForm::rank);
    let mut degrees = Vec::new();
    if reduced && rank(0) == 0 {
        degrees.push(DegreeHomology { degree: -1, betti: 1, torsion: vec![] });
    }
    for k in 0..=top {
        degrees.push(DegreeHomology {
            degree: k as isize,
            betti: cc.dim(k) - rank(k) - rank(k + 1),
            torsion: forms.get(k + 1).map(SmithForm::torsion).unwrap_or_default(),
        });
    }
    let top_cycle_basis = with_top_basis.then(|| smith_with_transforms(&cc.boundary(top, reduced).to_dense()).kernel_basis());
    Ok(HomologyResult { reduced, degrees, top_cycle_basis })
}

pub fn complex_homology(c: &OrientedComplex, reduced: bool) -> Result<HomologyResult> {
    homology(&ChainComplex::from_complex(c), reduced, false)
}

/// An integral basis of the free part of `H_k`, with a way to read off coordinates.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub degree: usize,
    pub torsion: Vec<BigInt>,
    /// Rows of `V⁻¹` past the rank of `∂_k`: cycle -> kernel coordinates.
    to_kernel: DenseMatrix,
    /// Kernel coordinates -> homology coordinates (free part).
    to_homology: DenseMatrix,
    /// Cycle representatives of the basis classes, as columns.
    representatives: DenseMatrix,
}

impl HomologyBasis {
    pub fn new(cc: &ChainComplex, k: usize, reduced: bool) -> Result<Self> {
        let a = cc.boundary(k, reduced).to_dense();
        let s1 = smith_with_transforms(&a);
        let r1 = s1.rank();
        let to_kernel = s1.v_inv.row_block(r1..s1.v_inv.rows());
        let kernel = s1.kernel_basis();
        let b = cc.boundary(k + 1, reduced).to_dense();
        let image = to_kernel.mul(&b)?;
        let s2 = smith_with_transforms(&image);
        let r2 = s2.rank();
        let to_homology = s2.u.row_block(r2..s2.u.rows());
        let representatives = kernel.mul(&s2.u_inv.col_block(r2..s2.u_inv.cols()))?;
        Ok(Self {
            degree: k,
            torsion: s2.form.torsion(),
            to_kernel,
            to_homology,
            representatives,
        })
    }

    pub fn rank(&self) -> usize {
        self.to_homology.rows()
    }

    pub fn representatives(&self) -> &DenseMatrix {
        &self.representatives
    }

    pub fn representative(&self, j: usize) -> Vec<BigInt> {
        self.representatives.column(j)
    }

    /// Coordinates of the class of a cycle. Fails if `x` is not a cycle.
    pub fn coordinates(&self, cc: &ChainComplex, x: &[BigInt], reduced: bool) -> Result<Vec<BigInt>> {
        let bd = cc.boundary(self.degree, reduced).mul_vec(x)?;
        if bd.iter().any(|v| !v.is_zero()) {
            return Err(Error::NotACycle(self.degree));
        }
        let c = self.to_kernel.mul_vec(x)?;
        self.to_homology.mul_vec(&c)
    }

    /// Trace of a chain map (given degree-wise as a signed permutation) on the free part.
    pub fn trace(&self, cc: &ChainComplex, map: &SignedPermutation, reduced: bool) -> Result<BigInt> {
        let mut t = BigInt::zero();
        for j in 0..self.rank() {
            let image = map.apply(&self.representative(j));
            t += &self.coordinates(cc, &image, reduced)?[j];
        }
        Ok(t)
    }

    /// Matrix of a chain map on the free part: column `j` is the image of class `j`.
    pub fn matrix_of(&self, cc: &ChainComplex, map: &SignedPermutation, reduced: bool) -> Result<DenseMatrix> {
        let cols = (0..self.rank())
            .map(|j| self.coordinates(cc, &map.apply(&self.representative(j)), reduced))
            .collect::<Result<Vec<_>>>()?;
        Ok(DenseMatrix::from_columns(self.rank(), &cols))
    }
}

/// Trace of a relabelling on reduced `H_k` of a complex, which must be torsion-free there.
pub fn action_trace(c: &OrientedComplex, sigma: &crate::perm::LabelPermutation, k: usize) -> Result<BigInt> {
    let cc = ChainComplex::from_complex(c);
    let basis = HomologyBasis::new(&cc, k, true)?;
    if !basis.torsion.is_empty() {
        return Err(Error::Torsion { degree: k, torsion: basis.torsion.iter().map(ToString::to_string).collect() });
    }
    let maps = c.induced_simplicial_map(sigma)?;
    basis.trace(&cc, &maps[k], true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_partition_nerve, build_tree_complex};
    use crate::perm::LabelPermutation;

    #[test]
    fn tree_space_homology_small() {
        let t4 = build_tree_complex(4).unwrap();
        let h = complex_homology(&t4, true).unwrap();
        assert_eq!(h.support(), vec![1]);
        assert_eq!(h.betti(1), 6);
        assert!(h.is_torsion_free());
        let hu = complex_homology(&t4, false).unwrap();
        assert_eq!(hu.betti(0), 1);
        assert_eq!(smith_normal_form(&t4.boundary(1)).rank(), 9);
        let l4 = build_partition_nerve(4).unwrap();
        assert_eq!(complex_homology(&l4, true).unwrap().betti(1), 6);
    }

    #[test]
    fn reduced_degree_zero_of_t3() {
        let t3 = build_tree_complex(3).unwrap();
        let h = complex_homology(&t3, true).unwrap();
        assert_eq!(h.betti(0), 2);
        let sigma = LabelPermutation::identity(4);
        assert_eq!(action_trace(&t3, &sigma, 0).unwrap(), BigInt::from(2));
    }

    #[test]
    fn identity_trace_is_rank() {
        let t4 = build_tree_complex(4).unwrap();
        assert_eq!(action_trace(&t4, &LabelPermutation::identity(5), 1).unwrap(), BigInt::from(6));
    }

    #[test]
    fn representatives_are_cycles() {
        let t4 = build_tree_complex(4).unwrap();
        let cc = ChainComplex::from_complex(&t4);
        let b = HomologyBasis::new(&cc, 1, true).unwrap();
        for j in 0..b.rank() {
            let x = b.representative(j);
            let mut e = vec![BigInt::zero(); b.rank()];
            e[j] = BigInt::one();
            assert_eq!(b.coordinates(&cc, &x, true).unwrap(), e);
        }
    }

    #[test]
    fn corrupt_complex_is_rejected() {
        let d1 = IntMatrix::from_triplets(2, 1, [(0, 0, BigInt::one()), (1, 0, BigInt::one())]).unwrap();
        let d2 = IntMatrix::from_triplets(1, 1, [(0, 0, BigInt::one())]).unwrap();
        let cc = ChainComplex::new(vec![2, 1, 1], vec![d1, d2]).unwrap();
        assert!(matches!(homology(&cc, false, false), Err(Error::BoundarySquared { degree: 2, .. })));
    }
}
