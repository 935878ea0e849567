//! Canonical subspaces of κⁿ.
//!
//! A `Subspace` stores a reduced-column-echelon basis, so two equal subspaces
//! have byte-identical basis matrices and multisets of subspaces can be
//! compared directly.

use crate::error::Error;
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    pub ambient_dim: usize,
    /// Columns form the canonical basis; pivot rows strictly increase and
    /// every pivot row is cleared in the other columns.
    pub basis: Matrix,
}

impl Subspace {
    pub fn zero(field: Field, ambient_dim: usize) -> Subspace {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(field, ambient_dim, 0),
        }
    }

    pub fn full(field: Field, ambient_dim: usize) -> Subspace {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(field, ambient_dim),
        }
    }

    /// Canonicalize the column span of `m`.
    pub fn from_span(m: &Matrix) -> Subspace {
        let mut t = m.transpose();
        let pivots = t.rref_in_place();
        let r = pivots.len();
        let mut basis = Matrix::zeros(m.field, m.rows, r);
        for k in 0..r {
            for j in 0..m.rows {
                basis.set(j, k, t.get(k, j).clone());
            }
        }
        Subspace {
            ambient_dim: m.rows,
            basis,
        }
    }

    pub fn field(&self) -> Field {
        self.basis.field
    }

    pub fn dim(&self) -> usize {
        self.basis.cols
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.basis
            .solve(v)
            .map(|s| s.is_some())
            .unwrap_or(false)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|j| self.contains(&other.basis.col(j)))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        Subspace::from_span(&self.basis.hstack(&other.basis))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let f = self.field();
        // solve A a = B b: kernel of [A | -B], read off the a-part
        let joint = self
            .basis
            .hstack(&other.basis.scale(&f.from_i64(-1)));
        let ker = joint.nullspace_matrix();
        let mut vecs = Matrix::zeros(f, self.ambient_dim, ker.cols);
        for k in 0..ker.cols {
            let a: Vec<Scalar> = (0..self.dim()).map(|i| ker.get(i, k).clone()).collect();
            let v = self.basis.mul_vec(&a);
            vecs.set_col(k, &v);
        }
        Subspace::from_span(&vecs)
    }

    /// The column span of `m`.
    pub fn image(m: &Matrix) -> Subspace {
        Subspace::from_span(m)
    }

    /// Canonical kernel of `m`.
    pub fn kernel(m: &Matrix) -> Subspace {
        Subspace::from_span(&m.nullspace_matrix())
    }
}

/// Surjection `Q: κ^ambient → κ^(ambient − dim U)` with kernel exactly `U`.
///
/// The complement is spanned by the non-pivot coordinates of `U`'s canonical
/// basis, so the construction is deterministic.
pub fn quotient_map(ambient_dim: usize, u: &Subspace) -> Matrix {
    assert_eq!(u.ambient_dim, ambient_dim, "subspace not in the ambient space");
    let f = u.field();
    let d = u.dim();
    // pivot row of each basis column = first nonzero entry
    let mut pivot_rows = Vec::with_capacity(d);
    for k in 0..d {
        let r = (0..ambient_dim)
            .find(|&i| !f.is_zero(u.basis.get(i, k)))
            .expect("basis column is nonzero");
        pivot_rows.push(r);
    }
    let is_pivot: Vec<bool> = {
        let mut s = vec![false; ambient_dim];
        for &r in &pivot_rows {
            s[r] = true;
        }
        s
    };
    let free: Vec<usize> = (0..ambient_dim).filter(|&i| !is_pivot[i]).collect();
    let mut q = Matrix::zeros(f, free.len(), ambient_dim);
    for (row, &j) in free.iter().enumerate() {
        q.set(row, j, f.one());
        for (k, &p) in pivot_rows.iter().enumerate() {
            // x'_j = x_j − x_p · (u_k)_j kills the U-component
            q.set(row, p, f.neg(u.basis.get(j, k)));
        }
    }
    q
}

/// `{v : Mv ∈ U}`, canonical. Contains the kernel of `M`.
pub fn preimage(m: &Matrix, u: &Subspace) -> Result<Subspace, Error> {
    if u.ambient_dim != m.rows {
        return Err(Error::DimensionMismatch(format!(
            "preimage: subspace lives in dim {} but matrix has {} rows",
            u.ambient_dim, m.rows
        )));
    }
    let q = quotient_map(m.rows, u);
    Ok(Subspace::kernel(&q.mul(m)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf5() -> Field {
        Field::prime(5).unwrap()
    }

    #[test]
    fn canonical_basis_is_span_independent() {
        let f = gf5();
        let a = Matrix::from_i64(f, 3, 2, &[1, 2, 1, 3, 0, 1]);
        // same span, different generators and order
        let b = Matrix::from_i64(f, 3, 2, &[3, 2, 4, 4, 1, 2]);
        let sa = Subspace::from_span(&a);
        let sb = Subspace::from_span(&b);
        assert_eq!(sa, sb);
        // idempotent re-canonicalization
        assert_eq!(Subspace::from_span(&sa.basis), sa);
    }

    #[test]
    fn nullspace_of_difference_row() {
        let f = gf5();
        // 1x2 matrix (1, -1): kernel is span{(1,1)}
        let m = Matrix::from_i64(f, 1, 2, &[1, -1]);
        let k = Subspace::kernel(&m);
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&[f.from_i64(1), f.from_i64(1)]));
    }

    #[test]
    fn quotient_map_properties() {
        let f = gf5();
        // U = span{(1,1)} in dim 2
        let u = Subspace::from_span(&Matrix::from_i64(f, 2, 1, &[1, 1]));
        let q = quotient_map(2, &u);
        assert_eq!(q.rows, 1);
        assert_eq!(q.rank(), 1);
        assert!(q.mul(&u.basis).is_zero());

        // degenerate ends
        let q0 = quotient_map(3, &Subspace::zero(f, 3));
        assert_eq!(q0, Matrix::identity(f, 3));
        let qf = quotient_map(2, &Subspace::full(f, 2));
        assert_eq!(qf.rows, 0);
    }

    #[test]
    fn preimage_membership() {
        let f = gf5();
        let m = Matrix::from_i64(f, 2, 3, &[1, 0, 2, 0, 1, 3]);
        let u = Subspace::from_span(&Matrix::from_i64(f, 2, 1, &[1, 1]));
        let pre = preimage(&m, &u).unwrap();
        // image of every preimage basis vector lies in U
        for j in 0..pre.dim() {
            let img = m.mul_vec(&pre.basis.col(j));
            assert!(u.contains(&img));
        }
        assert!(pre.contains_subspace(&Subspace::kernel(&m)));
        // full / zero special cases
        assert_eq!(
            preimage(&m, &Subspace::full(f, 2)).unwrap(),
            Subspace::full(f, 3)
        );
        assert_eq!(
            preimage(&m, &Subspace::zero(f, 2)).unwrap(),
            Subspace::kernel(&m)
        );
        // ambient mismatch is an error
        assert!(preimage(&m, &Subspace::zero(f, 3)).is_err());
    }

    #[test]
    fn sum_and_intersection() {
        let f = Field::Rationals;
        let a = Subspace::from_span(&Matrix::from_i64(f, 3, 1, &[1, 0, 1]));
        let b = Subspace::from_span(&Matrix::from_i64(f, 3, 2, &[1, 0, 0, 1, 0, 1]));
        let s = a.sum(&b);
        assert_eq!(s.dim(), 3);
        let i = a.intersect(&b);
        assert_eq!(i.dim(), 0);
        let i2 = s.intersect(&b);
        assert_eq!(i2, b);
    }
}
