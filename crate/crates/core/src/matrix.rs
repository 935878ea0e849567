//! Dense exact matrices over a runtime-chosen field.
//!
//! Entries are stored row-major. Pivoting is deterministic: the first nonzero
//! entry scanning top-to-bottom within each column, columns left-to-right, so
//! every derived object (echelon forms, kernels, canonical bases) is
//! reproducible.

use crate::error::Error;
use crate::field::{Field, Scalar};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            field,
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Build from integer entries, canonicalized into the field.
    pub fn from_i64(field: Field, rows: usize, cols: usize, data: &[i64]) -> Matrix {
        assert_eq!(data.len(), rows * cols, "entry count mismatch");
        Matrix {
            field,
            rows,
            cols,
            entries: data.iter().map(|&v| field.from_i64(v)).collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.field.is_zero(e))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn set_col(&mut self, j: usize, v: &[Scalar]) {
        assert_eq!(v.len(), self.rows);
        for i in 0..self.rows {
            self.set(i, j, v[i].clone());
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in matrix product");
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = f.add(out.get(i, j), &f.mul(a, rhs.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for j in 0..self.cols {
                    acc = f.add(&acc, &f.mul(self.get(i, j), &v[j]));
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let f = self.field;
        let mut out = self.clone();
        for i in 0..self.rows * self.cols {
            out.entries[i] = f.add(&self.entries[i], &rhs.entries[i]);
        }
        out
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        self.add(&rhs.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let f = self.field;
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = f.mul(e, c);
        }
        out
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows);
        let mut out = Matrix::zeros(self.field, self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                out.set(i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        out
    }

    /// Vertical concatenation, self on top.
    pub fn vstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.cols);
        let mut out = Matrix::zeros(self.field, self.rows + rhs.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..rhs.rows {
            for j in 0..self.cols {
                out.set(self.rows + i, j, rhs.get(i, j).clone());
            }
        }
        out
    }

    pub fn submatrix_cols(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, cols.len());
        for (jj, &j) in cols.iter().enumerate() {
            for i in 0..self.rows {
                out.set(i, jj, self.get(i, j).clone());
            }
        }
        out
    }

    /// In-place reduced row echelon form. Returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            // first nonzero entry scanning top-to-bottom
            let Some(pr) = (r..self.rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.entries.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in c..self.cols {
                let v = f.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && !f.is_zero(self.get(i, c)) {
                    let factor = self.get(i, c).clone();
                    for j in c..self.cols {
                        let v = f.sub(self.get(i, j), &f.mul(&factor, self.get(r, j)));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Columns of a deterministic basis of the kernel `{v : Mv = 0}`.
    ///
    /// The basis is the standard RREF kernel basis (one vector per free
    /// column, with 1 in the free coordinate), which is already in reduced
    /// column echelon form up to column order; callers wanting a canonical
    /// `Subspace` go through `Subspace::from_span`.
    pub fn nullspace_matrix(&self) -> Matrix {
        let f = self.field;
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; self.cols];
            for &c in &pivots {
                s[c] = true;
            }
            s
        };
        let free: Vec<usize> = (0..self.cols).filter(|&c| !pivot_set[c]).collect();
        let mut basis = Matrix::zeros(f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            basis.set(fc, k, f.one());
            for (r, &pc) in pivots.iter().enumerate() {
                basis.set(pc, k, f.neg(m.get(r, fc)));
            }
        }
        basis
    }

    /// Some solution of `Mx = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, Error> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: rhs has length {} but matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut bm = Matrix::zeros(self.field, self.rows, 1);
        for (i, v) in b.iter().enumerate() {
            bm.set(i, 0, v.clone());
        }
        Ok(self.solve_matrix(&bm)?.map(|x| x.col(0)))
    }

    /// Solve `MX = B` column-wise; `None` when any column is inconsistent.
    pub fn solve_matrix(&self, b: &Matrix) -> Result<Option<Matrix>, Error> {
        if b.rows != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: rhs has {} rows but matrix has {}",
                b.rows, self.rows
            )));
        }
        let f = self.field;
        let mut aug = self.hstack(b);
        let pivots = aug.rref_in_place();
        // consistency: no pivot may fall in the rhs block
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(f, self.cols, b.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, aug.get(r, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Matrix, Error> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
        }
        let id = Matrix::identity(self.field, self.rows);
        match self.solve_matrix(&id)? {
            Some(x) if self.rank() == self.rows => Ok(x),
            _ => Err(Error::NotInvertible),
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn rank_zero_and_identity() {
        assert_eq!(Matrix::zeros(q(), 3, 3).rank(), 0);
        for n in 0..5 {
            assert_eq!(Matrix::identity(q(), n).rank(), n);
        }
    }

    #[test]
    fn rank_of_monodromy_matrix_from_worked_example() {
        // the H_1 gluing matrix of the three-circle example
        let m = Matrix::from_i64(q(), 3, 3, &[3, 0, 0, 1, 2, -1, 0, 0, 2]);
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let f = Field::prime(5).unwrap();
        let id = Matrix::identity(f, 3);
        let b = vec![f.from_i64(1), f.from_i64(2), f.from_i64(3)];
        assert_eq!(id.solve(&b).unwrap().unwrap(), b);

        let z = Matrix::zeros(f, 2, 2);
        let b = vec![f.from_i64(1), f.from_i64(0)];
        assert!(z.solve(&b).unwrap().is_none());
    }

    #[test]
    fn rank_nullity() {
        let f = Field::prime(5).unwrap();
        // fixed 4x6 matrix; rank + nullity = 6
        let m = Matrix::from_i64(
            f,
            4,
            6,
            &[
                1, 2, 3, 4, 0, 1, //
                2, 4, 6, 8, 0, 2, //
                0, 1, 0, 1, 1, 0, //
                3, 1, 2, 0, 4, 4,
            ],
        );
        let ns = m.nullspace_matrix();
        assert_eq!(m.rank() + ns.cols, 6);
        // every kernel column multiplies back to zero
        let prod = m.mul(&ns);
        assert!(prod.is_zero());
    }

    #[test]
    fn consistent_systems_substitute_back() {
        let f = Field::prime(5).unwrap();
        // consistent by construction: b = Mx₀
        let m = Matrix::from_i64(f, 3, 4, &[1, 2, 3, 4, 0, 1, 2, 3, 2, 0, 1, 4]);
        let x0 = vec![f.from_i64(1), f.from_i64(3), f.from_i64(0), f.from_i64(2)];
        let b = m.mul_vec(&x0);
        let x = m.solve(&b).unwrap().expect("consistent");
        assert_eq!(m.mul_vec(&x), b);
        // mismatched right-hand side length is an error, not a panic
        assert!(m.solve(&[f.zero()]).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let f = Field::prime(7).unwrap();
        let m = Matrix::from_i64(f, 3, 3, &[1, 2, 0, 0, 1, 3, 5, 0, 1]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(f, 3));
        assert!(Matrix::zeros(f, 2, 2).inverse().is_err());
    }

    #[test]
    fn zero_dimensional_shapes() {
        let m = Matrix::zeros(q(), 0, 3);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.nullspace_matrix().cols, 3);
        let m = Matrix::zeros(q(), 3, 0);
        assert_eq!(m.nullspace_matrix().cols, 0);
        assert!(Matrix::identity(q(), 0).is_invertible());
    }
}
