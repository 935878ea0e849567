//! Canonical forms of endomorphisms: invariant factors via Smith reduction of
//! xI − T over κ[x], split into Jordan cells (λ, k) where the elementary
//! divisors are linear powers, with everything else kept as residual blocks.
//!
//! Similarity of two endomorphisms is decided by equality of invariant-factor
//! lists; matrices are never compared entrywise for that purpose.

use crate::field::{scalar_sort_key, Field, Scalar};
use crate::matrix::Matrix;
use crate::poly::{factor, Poly, PolyFactor};

#[derive(Clone, PartialEq, Debug)]
pub struct EndoCanonicalForm {
    pub char_poly: Poly,
    /// Nonconstant invariant factors, each dividing the next; their product
    /// is the characteristic polynomial.
    pub invariant_factors: Vec<Poly>,
    /// Jordan cells (λ, k), one per linear elementary divisor (x−λ)^k.
    pub split_cells: Vec<(Scalar, usize)>,
    /// Elementary divisors p(x)^e with deg p ≥ 2 (p irreducible whenever the
    /// factoring limits allow deciding it).
    pub residual_blocks: Vec<(Poly, usize)>,
}

impl EndoCanonicalForm {
    pub fn dim(&self) -> usize {
        self.char_poly.deg()
    }

    /// Similarity-equality predicate.
    pub fn same_class(&self, other: &EndoCanonicalForm) -> bool {
        self.invariant_factors == other.invariant_factors
    }

    /// Number of split cells with the given eigenvalue.
    pub fn cells_with_eigenvalue(&self, lambda: &Scalar) -> usize {
        self.split_cells.iter().filter(|(l, _)| l == lambda).count()
    }

    /// True when the characteristic polynomial splits into linear factors.
    pub fn splits(&self) -> bool {
        self.residual_blocks.is_empty()
    }

    /// True when 0 is not an eigenvalue.
    pub fn is_invertible_class(&self) -> bool {
        let f = self.char_poly.field;
        self.char_poly
            .coeffs
            .first()
            .map_or(true, |c| !f.is_zero(c))
    }
}

/// Invariant factors and Jordan data of a square matrix.
pub fn canonical_form(t: &Matrix) -> EndoCanonicalForm {
    assert!(t.is_square(), "canonical form of a non-square matrix");
    let f = t.field;
    let n = t.rows;

    // xI − T as a polynomial matrix
    let mut m: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = f.neg(t.get(i, j));
                    if i == j {
                        Poly::new(f, vec![c, f.one()])
                    } else {
                        Poly::constant(f, c)
                    }
                })
                .collect()
        })
        .collect();

    smith_reduce(f, &mut m);

    let mut invariant_factors: Vec<Poly> = (0..n)
        .map(|i| m[i][i].monic())
        .filter(|d| d.deg() >= 1)
        .collect();
    invariant_factors.sort_by_key(|p| p.deg());

    let mut char_poly = Poly::one(f);
    for d in &invariant_factors {
        char_poly = char_poly.mul(d);
    }
    debug_assert_eq!(char_poly.deg(), n);

    let mut split_cells = Vec::new();
    let mut residual_blocks: Vec<(Poly, usize)> = Vec::new();
    for d in &invariant_factors {
        for fac in factor(d) {
            match fac {
                PolyFactor::Linear { lambda, power } => split_cells.push((lambda, power)),
                PolyFactor::Residual { poly, power } => residual_blocks.push((poly, power)),
            }
        }
    }
    split_cells.sort_by(|a, b| {
        (scalar_sort_key(&a.0), a.1).cmp(&(scalar_sort_key(&b.0), b.1))
    });
    residual_blocks.sort_by_key(|(p, e)| (p.deg(), p.format("x"), *e));

    debug_assert_eq!(
        split_cells.iter().map(|(_, k)| k).sum::<usize>()
            + residual_blocks
                .iter()
                .map(|(p, e)| p.deg() * e)
                .sum::<usize>(),
        n
    );

    EndoCanonicalForm {
        char_poly,
        invariant_factors,
        split_cells,
        residual_blocks,
    }
}

/// Smith normal form of a square polynomial matrix, in place. Diagonal
/// entries end up dividing each other in order.
fn smith_reduce(f: Field, m: &mut Vec<Vec<Poly>>) {
    let n = m.len();
    for k in 0..n {
        'pivot: loop {
            // smallest-degree nonzero entry in the trailing submatrix
            let mut pivot: Option<(usize, usize)> = None;
            let mut best = usize::MAX;
            for i in k..n {
                for j in k..n {
                    if !m[i][j].is_zero() && m[i][j].deg() < best {
                        best = m[i][j].deg();
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            m.swap(k, pi);
            for row in m.iter_mut() {
                row.swap(k, pj);
            }

            let mut dirty = false;
            for i in (k + 1)..n {
                if m[i][k].is_zero() {
                    continue;
                }
                let (q, _) = m[i][k].div_rem(&m[k][k]);
                for j in k..n {
                    let t = q.mul(&m[k][j]);
                    m[i][j] = m[i][j].sub(&t);
                }
                if !m[i][k].is_zero() {
                    dirty = true;
                }
            }
            for j in (k + 1)..n {
                if m[k][j].is_zero() {
                    continue;
                }
                let (q, _) = m[k][j].div_rem(&m[k][k]);
                for i in k..n {
                    let t = q.mul(&m[i][k]);
                    m[i][j] = m[i][j].sub(&t);
                }
                if !m[k][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'pivot;
            }

            // pivot must divide the whole trailing submatrix
            for i in (k + 1)..n {
                for j in (k + 1)..n {
                    if !m[k][k].divides(&m[i][j]) {
                        // fold row i into row k and restart
                        for jj in k..n {
                            let v = m[i][jj].clone();
                            m[k][jj] = m[k][jj].add(&v);
                        }
                        continue 'pivot;
                    }
                }
            }
            break;
        }
    }
    let _ = f;
}

/// The k×k Jordan cell matrix with eigenvalue λ: λ on the diagonal, 1 on the
/// superdiagonal.
pub fn jordan_cell_matrix(field: Field, lambda: &Scalar, k: usize) -> Matrix {
    let mut m = Matrix::zeros(field, k, k);
    for i in 0..k {
        m.set(i, i, lambda.clone());
        if i + 1 < k {
            m.set(i, i + 1, field.one());
        }
    }
    m
}

/// Companion matrix of a monic polynomial.
pub fn companion_matrix(p: &Poly) -> Matrix {
    assert!(p.is_monic() && p.deg() >= 1);
    let f = p.field;
    let n = p.deg();
    let mut m = Matrix::zeros(f, n, n);
    for i in 1..n {
        m.set(i, i - 1, f.one());
    }
    for i in 0..n {
        m.set(i, n - 1, f.neg(&p.coeffs[i]));
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qf() -> Field {
        Field::Rationals
    }

    #[test]
    fn jordan_cell_2_2() {
        let f = qf();
        let t = jordan_cell_matrix(f, &f.from_i64(2), 2);
        assert_eq!(t, Matrix::from_i64(f, 2, 2, &[2, 1, 0, 2]));
        let form = canonical_form(&t);
        assert_eq!(form.split_cells, vec![(f.from_i64(2), 2)]);
        assert!(form.residual_blocks.is_empty());
        assert_eq!(form.invariant_factors.len(), 1);
    }

    #[test]
    fn identity_gives_n_unit_cells() {
        let f = qf();
        for n in 1..5 {
            let form = canonical_form(&Matrix::identity(f, n));
            assert_eq!(form.split_cells, vec![(f.from_i64(1), 1); n]);
            assert_eq!(form.invariant_factors.len(), n);
        }
    }

    #[test]
    fn companion_of_x2_plus_1_over_gf3() {
        let f = Field::prime(3).unwrap();
        let p = Poly::new(f, vec![f.one(), f.zero(), f.one()]);
        let form = canonical_form(&companion_matrix(&p));
        assert!(form.split_cells.is_empty());
        assert_eq!(form.residual_blocks, vec![(p, 1)]);
    }

    #[test]
    fn similarity_is_conjugation_invariant() {
        let f = qf();
        let t = jordan_cell_matrix(f, &f.from_i64(2), 2);
        // conjugate by an invertible matrix
        let p = Matrix::from_i64(f, 2, 2, &[1, 1, 0, 1]);
        let conj = p.mul(&t).mul(&p.inverse().unwrap());
        let a = canonical_form(&t);
        let b = canonical_form(&conj);
        assert!(a.same_class(&b));
        // (2,-1;0,2) is similar to T(2,2)
        let alt = Matrix::from_i64(f, 2, 2, &[2, -1, 0, 2]);
        assert!(a.same_class(&canonical_form(&alt)));
        // but not to the diagonal matrix diag(2,2)
        let diag = Matrix::from_i64(f, 2, 2, &[2, 0, 0, 2]);
        assert!(!a.same_class(&canonical_form(&diag)));
    }

    #[test]
    fn invariant_factors_divide_in_order() {
        let f = qf();
        // diag(1,1,2): invariant factors (x−1) | (x−1)(x−2)
        let t = Matrix::from_i64(f, 3, 3, &[1, 0, 0, 0, 1, 0, 0, 0, 2]);
        let form = canonical_form(&t);
        assert_eq!(form.invariant_factors.len(), 2);
        assert!(form.invariant_factors[0].divides(&form.invariant_factors[1]));
        assert_eq!(form.char_poly.deg(), 3);
        assert_eq!(
            form.split_cells,
            vec![(f.from_i64(1), 1), (f.from_i64(1), 1), (f.from_i64(2), 1)]
        );
    }

    #[test]
    fn zero_dimensional_endomorphism() {
        let f = qf();
        let form = canonical_form(&Matrix::zeros(f, 0, 0));
        assert!(form.invariant_factors.is_empty());
        assert!(form.split_cells.is_empty());
        assert_eq!(form.dim(), 0);
        assert!(form.is_invertible_class());
    }
}
