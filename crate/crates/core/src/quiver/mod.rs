//! Representations of the line quiver Z and the cyclic quiver G_2m, their
//! block matrices, elementary transformations and full decomposition into
//! bar codes plus monodromy.

mod barcode;
mod build;
mod decompose;
mod transform;
mod walker;

pub use barcode::{BarCode, CodeMultiset};
pub use build::{circle_rep_of_barcode, circle_rep_of_jordan, direct_sum, random_basis_change};
pub use decompose::{decompose_circle, decompose_z, predicted_truncation, Decomposition};
pub use transform::{elementary_circle, elementary_z, TransformKind, TransformRecord};

use crate::canonical::canonical_form;
use crate::error::Error;
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

/// A G_2m-representation: vector spaces V_1..V_2m with α_i: V_{2i−1} → V_{2i}
/// and β_i: V_{2i+1} → V_{2i} (indices cyclic, V_{2m+1} = V_1).
///
/// Storage is 0-indexed: `alpha[j]` maps `odd[j] → even[j]` and `beta[j]`
/// maps `odd[(j+1) mod m] → even[j]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CircleRep {
    pub field: Field,
    pub m: usize,
    pub odd_dims: Vec<usize>,
    pub even_dims: Vec<usize>,
    pub alpha: Vec<Matrix>,
    pub beta: Vec<Matrix>,
}

/// A finite-support Z-representation on the window of critical indices
/// [lo, hi]: even spaces V_{2i} for lo ≤ i ≤ hi, odd spaces V_{2i−1} for
/// lo+1 ≤ i ≤ hi, everything outside the window zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZRep {
    pub field: Field,
    pub lo: i64,
    pub hi: i64,
    /// r_lo .. r_hi
    pub even_dims: Vec<usize>,
    /// n_{lo+1} .. n_hi
    pub odd_dims: Vec<usize>,
    /// α_{lo+1} .. α_hi
    pub alpha: Vec<Matrix>,
    /// β_lo .. β_{hi−1}
    pub beta: Vec<Matrix>,
}

/// 0-based circle position of the 1-based critical index `l` (any integer).
pub(crate) fn pos(l: i64, m: usize) -> usize {
    (l - 1).rem_euclid(m as i64) as usize
}

impl CircleRep {
    pub fn validate(&self) -> Result<(), Error> {
        let m = self.m;
        if m == 0 {
            return Err(Error::InvalidInput("circle representation needs m ≥ 1".into()));
        }
        if self.odd_dims.len() != m
            || self.even_dims.len() != m
            || self.alpha.len() != m
            || self.beta.len() != m
        {
            return Err(Error::InvalidInput("circle representation arrays must have length m".into()));
        }
        for j in 0..m {
            let a = &self.alpha[j];
            if (a.rows, a.cols) != (self.even_dims[j], self.odd_dims[j]) {
                return Err(Error::DimensionMismatch(format!(
                    "alpha[{j}] is {}x{}, expected {}x{}",
                    a.rows, a.cols, self.even_dims[j], self.odd_dims[j]
                )));
            }
            let b = &self.beta[j];
            let src = self.odd_dims[(j + 1) % m];
            if (b.rows, b.cols) != (self.even_dims[j], src) {
                return Err(Error::DimensionMismatch(format!(
                    "beta[{j}] is {}x{}, expected {}x{}",
                    b.rows, b.cols, self.even_dims[j], src
                )));
            }
        }
        Ok(())
    }

    /// The representation with all spaces κ^n and all maps the identity.
    pub fn identity_rep(field: Field, m: usize, n: usize) -> CircleRep {
        CircleRep {
            field,
            m,
            odd_dims: vec![n; m],
            even_dims: vec![n; m],
            alpha: vec![Matrix::identity(field, n); m],
            beta: vec![Matrix::identity(field, n); m],
        }
    }

    pub fn total_dim(&self) -> usize {
        self.odd_dims.iter().sum::<usize>() + self.even_dims.iter().sum::<usize>()
    }

    pub fn odd_dim_at(&self, l: i64) -> usize {
        self.odd_dims[pos(l, self.m)]
    }

    pub fn even_dim_at(&self, l: i64) -> usize {
        self.even_dims[pos(l, self.m)]
    }

    /// α_l: V_{2l−1} → V_{2l}, cyclically.
    pub fn alpha_at(&self, l: i64) -> &Matrix {
        &self.alpha[pos(l, self.m)]
    }

    /// β_l: V_{2l+1} → V_{2l}, cyclically.
    pub fn beta_at(&self, l: i64) -> &Matrix {
        &self.beta[pos(l, self.m)]
    }

    /// The block matrix M(ρ): ⊕V_{2i−1} → ⊕V_{2i} with α_i on the diagonal
    /// and −β_i next to it (−β_m in the corner).
    pub fn block_matrix(&self) -> Matrix {
        let f = self.field;
        let m = self.m;
        let row_off: Vec<usize> = prefix_sums(&self.even_dims);
        let col_off: Vec<usize> = prefix_sums(&self.odd_dims);
        let rows = row_off[m];
        let cols = col_off[m];
        let mut out = Matrix::zeros(f, rows, cols);
        let minus_one = f.from_i64(-1);
        for j in 0..m {
            add_block(&mut out, &self.alpha[j], row_off[j], col_off[j]);
            let neg = self.beta[j].scale(&minus_one);
            add_block(&mut out, &neg, row_off[j], col_off[(j + 1) % m]);
        }
        out
    }

    /// The twist ρ_u: α_1 scaled by u, everything else unchanged.
    pub fn twist(&self, u: &Scalar) -> Result<CircleRep, Error> {
        if self.field.is_zero(u) {
            return Err(Error::InvalidInput("twist by zero".into()));
        }
        let mut out = self.clone();
        out.alpha[0] = self.alpha[0].scale(u);
        Ok(out)
    }

    /// (dim ker M(ρ), dim coker M(ρ)).
    pub fn dker_dcoker(&self) -> (usize, usize) {
        let m = self.block_matrix();
        let r = m.rank();
        (m.cols - r, m.rows - r)
    }

    /// Counts of the four minimal codes at index i (cyclic):
    /// (♯(i,i+1), ♯[i,i], ♯(i,i+1], ♯[i,i+1)), by the rank formulas.
    pub fn local_counts(&self, i: i64) -> (usize, usize, usize, usize) {
        local_counts_core(
            self.field,
            self.beta_at(i),
            self.alpha_at(i + 1),
            self.beta_at(i + 1),
            self.alpha_at(i),
            self.even_dim_at(i),
        )
    }

    /// The periodic lift restricted to the window [lo, hi] of critical
    /// indices (the truncation T_{lo,hi} of ρ̃).
    pub fn unroll(&self, lo: i64, hi: i64) -> ZRep {
        assert!(lo <= hi, "unroll needs lo ≤ hi");
        let even_dims: Vec<usize> = (lo..=hi).map(|l| self.even_dim_at(l)).collect();
        let odd_dims: Vec<usize> = (lo + 1..=hi).map(|l| self.odd_dim_at(l)).collect();
        let alpha: Vec<Matrix> = (lo + 1..=hi).map(|l| self.alpha_at(l).clone()).collect();
        let beta: Vec<Matrix> = (lo..hi).map(|l| self.beta_at(l).clone()).collect();
        ZRep {
            field: self.field,
            lo,
            hi,
            even_dims,
            odd_dims,
            alpha,
            beta,
        }
    }

    /// Monodromy of a regular representation: T = β_m⁻¹·α_m⋯β_1⁻¹·α_1 on V_1.
    pub fn monodromy_of_regular(&self) -> Result<Matrix, Error> {
        let mut t = Matrix::identity(self.field, self.odd_dims[0]);
        for j in 0..self.m {
            if !self.alpha[j].is_invertible() || !self.beta[j].is_invertible() {
                return Err(Error::NotRegular(format!(
                    "map at position {j} is not invertible"
                )));
            }
            t = self.alpha[j].mul(&t);
            t = self.beta[j].inverse()?.mul(&t);
        }
        Ok(t)
    }

    pub fn is_regular(&self) -> bool {
        self.alpha.iter().chain(self.beta.iter()).all(Matrix::is_invertible)
    }

    /// Full decomposition: bar codes in original coordinates plus monodromy.
    pub fn decompose(&self) -> Result<Decomposition, Error> {
        decompose_circle(self)
    }
}

impl ZRep {
    pub fn validate(&self) -> Result<(), Error> {
        let w = (self.hi - self.lo) as usize;
        if self.lo > self.hi {
            return Err(Error::InvalidInput("window must satisfy lo ≤ hi".into()));
        }
        if self.even_dims.len() != w + 1
            || self.odd_dims.len() != w
            || self.alpha.len() != w
            || self.beta.len() != w
        {
            return Err(Error::InvalidInput("window arrays have inconsistent lengths".into()));
        }
        for k in 0..w {
            let a = &self.alpha[k];
            if (a.rows, a.cols) != (self.even_dims[k + 1], self.odd_dims[k]) {
                return Err(Error::DimensionMismatch(format!(
                    "alpha[{k}] is {}x{}, expected {}x{}",
                    a.rows,
                    a.cols,
                    self.even_dims[k + 1],
                    self.odd_dims[k]
                )));
            }
            let b = &self.beta[k];
            if (b.rows, b.cols) != (self.even_dims[k], self.odd_dims[k]) {
                return Err(Error::DimensionMismatch(format!(
                    "beta[{k}] is {}x{}, expected {}x{}",
                    b.rows, b.cols, self.even_dims[k], self.odd_dims[k]
                )));
            }
        }
        Ok(())
    }

    pub fn total_dim(&self) -> usize {
        self.odd_dims.iter().sum::<usize>() + self.even_dims.iter().sum::<usize>()
    }

    pub fn even_dim_at(&self, l: i64) -> usize {
        if l < self.lo || l > self.hi {
            0
        } else {
            self.even_dims[(l - self.lo) as usize]
        }
    }

    pub fn odd_dim_at(&self, l: i64) -> usize {
        if l <= self.lo || l > self.hi {
            0
        } else {
            self.odd_dims[(l - self.lo - 1) as usize]
        }
    }

    /// α_l, a zero-shaped map outside the window.
    pub fn alpha_at(&self, l: i64) -> Matrix {
        if l <= self.lo || l > self.hi {
            Matrix::zeros(self.field, self.even_dim_at(l), self.odd_dim_at(l))
        } else {
            self.alpha[(l - self.lo - 1) as usize].clone()
        }
    }

    /// β_l, a zero-shaped map outside the window.
    pub fn beta_at(&self, l: i64) -> Matrix {
        if l < self.lo || l >= self.hi {
            Matrix::zeros(self.field, self.even_dim_at(l), self.odd_dim_at(l + 1))
        } else {
            self.beta[(l - self.lo) as usize].clone()
        }
    }

    /// The block matrix M(ρ): ⊕V_{2i−1} → ⊕V_{2i}, α_r on the diagonal and
    /// β_{r−1} above it (no signs in the line case).
    pub fn block_matrix(&self) -> Matrix {
        let w = (self.hi - self.lo) as usize;
        let row_off = prefix_sums(&self.even_dims);
        let col_off = prefix_sums(&self.odd_dims);
        let mut out = Matrix::zeros(self.field, row_off[w + 1], col_off[w]);
        for k in 0..w {
            // column block k is V_{2(lo+k+1)−1}
            add_block(&mut out, &self.alpha[k], row_off[k + 1], col_off[k]);
            add_block(&mut out, &self.beta[k], row_off[k], col_off[k]);
        }
        out
    }

    pub fn dker_dcoker(&self) -> (usize, usize) {
        let m = self.block_matrix();
        let r = m.rank();
        (m.cols - r, m.rows - r)
    }

    /// Counts of the four minimal codes at index i:
    /// (♯(i,i+1), ♯[i,i], ♯(i,i+1], ♯[i,i+1)).
    pub fn local_counts(&self, i: i64) -> (usize, usize, usize, usize) {
        local_counts_core(
            self.field,
            &self.beta_at(i),
            &self.alpha_at(i + 1),
            &self.beta_at(i + 1),
            &self.alpha_at(i),
            self.even_dim_at(i),
        )
    }

    pub fn decompose(&self) -> Result<Decomposition, Error> {
        decompose_z(self)
    }
}

fn prefix_sums(dims: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(dims.len() + 1);
    let mut acc = 0;
    out.push(0);
    for &d in dims {
        acc += d;
        out.push(acc);
    }
    out
}

fn add_block(out: &mut Matrix, block: &Matrix, row: usize, col: usize) {
    let f = out.field;
    for i in 0..block.rows {
        for j in 0..block.cols {
            let v = f.add(out.get(row + i, col + j), block.get(i, j));
            out.set(row + i, col + j, v);
        }
    }
}

/// Shared rank formulas behind `local_counts` (Prop P7, with the (i,i+1]
/// formula shifted to use β_{i+1}, α_{i+1} and ker β_i).
fn local_counts_core(
    _field: Field,
    beta_i: &Matrix,
    alpha_ip1: &Matrix,
    beta_ip1: &Matrix,
    alpha_i: &Matrix,
    even_dim_i: usize,
) -> (usize, usize, usize, usize) {
    use crate::subspace::Subspace;
    let ker_beta = Subspace::kernel(beta_i);
    let ker_alpha = Subspace::kernel(alpha_ip1);
    let c_oo = ker_beta.intersect(&ker_alpha).dim();

    let im_beta = Subspace::image(beta_i);
    let im_alpha = Subspace::image(alpha_i);
    let c_cc = even_dim_i - im_beta.sum(&im_alpha).dim();

    let im_beta_next = Subspace::image(beta_ip1);
    let pushed = Subspace::image(&alpha_ip1.mul(&ker_beta.basis));
    let c_oc = im_beta_next.sum(&pushed).dim() - im_beta_next.dim();

    let pushed_down = Subspace::image(&beta_i.mul(&ker_alpha.basis));
    let c_co = im_alpha.sum(&pushed_down).dim() - im_alpha.dim();

    (c_oo, c_cc, c_oc, c_co)
}

/// Monodromy data of a decomposition: the regular-part matrix together with
/// its canonical form.
#[derive(Clone, Debug)]
pub struct Monodromy {
    pub matrix: Matrix,
    pub form: crate::canonical::EndoCanonicalForm,
}

impl Monodromy {
    pub fn empty(field: Field) -> Monodromy {
        let matrix = Matrix::zeros(field, 0, 0);
        Monodromy {
            form: canonical_form(&matrix),
            matrix,
        }
    }

    pub fn of_matrix(matrix: Matrix) -> Monodromy {
        Monodromy {
            form: canonical_form(&matrix),
            matrix,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows
    }
}
