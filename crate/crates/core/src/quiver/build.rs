//! Constructors for circle representations: interval indecomposables,
//! regular (Jordan) summands, direct sums and basis changes. Used to build
//! examples with known decompositions.

use crate::field::Field;
use crate::matrix::Matrix;

use super::{pos, BarCode, CircleRep};

/// The indecomposable ρ^I(code) as a circle representation: one basis vector
/// per lift of each vertex covered by the code, identity arrows between
/// adjacent alive lifts.
pub fn circle_rep_of_barcode(field: Field, m: usize, code: &BarCode) -> CircleRep {
    let code = code.normalized(m);
    let smin = code.support_min();
    let smax = code.support_max();
    // odd lifts q (fine 2q−1) and even lifts p (fine 2p) inside the support
    let odd_lifts: Vec<i64> = ((smin + 1).div_euclid(2)..=(smax + 1).div_euclid(2))
        .filter(|q| 2 * q - 1 >= smin && 2 * q - 1 <= smax)
        .collect();
    let even_lifts: Vec<i64> = (smin.div_euclid(2)..=smax.div_euclid(2))
        .filter(|p| 2 * p >= smin && 2 * p <= smax)
        .collect();

    let odd_at = |j: usize| -> Vec<i64> {
        odd_lifts.iter().copied().filter(|&q| pos(q, m) == j).collect()
    };
    let even_at = |j: usize| -> Vec<i64> {
        even_lifts.iter().copied().filter(|&p| pos(p, m) == j).collect()
    };

    let mut odd_dims = Vec::with_capacity(m);
    let mut even_dims = Vec::with_capacity(m);
    let mut alpha = Vec::with_capacity(m);
    let mut beta = Vec::with_capacity(m);
    for j in 0..m {
        let odds = odd_at(j);
        let evens = even_at(j);
        odd_dims.push(odds.len());
        even_dims.push(evens.len());
        // α_q sends the odd lift q to the even lift q
        let mut a = Matrix::zeros(field, evens.len(), odds.len());
        for (col, q) in odds.iter().enumerate() {
            if let Some(row) = evens.iter().position(|p| p == q) {
                a.set(row, col, field.one());
            }
        }
        alpha.push(a);
        // β_p sends the odd lift p+1 to the even lift p
        let next_odds = odd_at((j + 1) % m);
        let mut b = Matrix::zeros(field, evens.len(), next_odds.len());
        for (col, q) in next_odds.iter().enumerate() {
            if let Some(row) = evens.iter().position(|&p| p == q - 1) {
                b.set(row, col, field.one());
            }
        }
        beta.push(b);
    }
    CircleRep {
        field,
        m,
        odd_dims,
        even_dims,
        alpha,
        beta,
    }
}

/// The regular representation ρ(V, T): every space κ^k, α_1 = T and all
/// other maps the identity, so the monodromy is exactly T.
pub fn circle_rep_of_jordan(field: Field, m: usize, t: &Matrix) -> CircleRep {
    assert!(t.is_square());
    let k = t.rows;
    let mut rep = CircleRep::identity_rep(field, m, k);
    rep.alpha[0] = t.clone();
    rep
}

/// Vertexwise direct sum.
pub fn direct_sum(reps: &[CircleRep]) -> CircleRep {
    assert!(!reps.is_empty());
    let field = reps[0].field;
    let m = reps[0].m;
    assert!(reps.iter().all(|r| r.m == m && r.field == field));
    let mut out = CircleRep {
        field,
        m,
        odd_dims: vec![0; m],
        even_dims: vec![0; m],
        alpha: Vec::with_capacity(m),
        beta: Vec::with_capacity(m),
    };
    for j in 0..m {
        out.odd_dims[j] = reps.iter().map(|r| r.odd_dims[j]).sum();
        out.even_dims[j] = reps.iter().map(|r| r.even_dims[j]).sum();
        out.alpha.push(block_diag(field, reps.iter().map(|r| &r.alpha[j])));
        out.beta.push(block_diag(field, reps.iter().map(|r| &r.beta[j])));
    }
    out
}

fn block_diag<'a, I: Iterator<Item = &'a Matrix>>(field: Field, blocks: I) -> Matrix {
    let blocks: Vec<&Matrix> = blocks.collect();
    let rows = blocks.iter().map(|b| b.rows).sum();
    let cols = blocks.iter().map(|b| b.cols).sum();
    let mut out = Matrix::zeros(field, rows, cols);
    let (mut r0, mut c0) = (0, 0);
    for b in blocks {
        for i in 0..b.rows {
            for j in 0..b.cols {
                out.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
        r0 += b.rows;
        c0 += b.cols;
    }
    out
}

/// Conjugate by random invertible basis changes at every vertex. The
/// isomorphism class (bar codes and monodromy invariant factors) is
/// unchanged, but the direct-sum structure is hidden.
pub fn random_basis_change<R: FnMut(usize) -> Matrix>(rep: &CircleRep, mut invertible: R) -> CircleRep {
    let m = rep.m;
    let p_odd: Vec<Matrix> = (0..m).map(|j| invertible(rep.odd_dims[j])).collect();
    let p_even: Vec<Matrix> = (0..m).map(|j| invertible(rep.even_dims[j])).collect();
    let mut out = rep.clone();
    for j in 0..m {
        let inv_odd = p_odd[j].inverse().expect("invertible basis change");
        out.alpha[j] = p_even[j].mul(&rep.alpha[j]).mul(&inv_odd);
        let inv_next = p_odd[(j + 1) % m].inverse().expect("invertible basis change");
        out.beta[j] = p_even[j].mul(&rep.beta[j]).mul(&inv_next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn barcode_rep_dimensions_match_coverage() {
        let f = Field::prime(5).unwrap();
        let m = 3;
        for code in [
            BarCode::closed(1, 1),
            BarCode::closed(2, 4),
            BarCode::new(1, 5, false, true),
            BarCode::open(3, 7),
            BarCode::new(2, 9, true, false),
        ] {
            let rep = circle_rep_of_barcode(f, m, &code);
            rep.validate().unwrap();
            for j in 0..m {
                let l = j as i64 + 1;
                assert_eq!(rep.even_dims[j], code.coverage_mod(2 * l, m), "even {l} of {code}");
                assert_eq!(rep.odd_dims[j], code.coverage_mod(2 * l - 1, m), "odd {l} of {code}");
            }
        }
    }

    #[test]
    fn single_point_code_rep() {
        let f = Field::prime(5).unwrap();
        let rep = circle_rep_of_barcode(f, 2, &BarCode::closed(1, 1));
        assert_eq!(rep.even_dims, vec![1, 0]);
        assert_eq!(rep.odd_dims, vec![0, 0]);
        let (dker, dcoker) = rep.dker_dcoker();
        assert_eq!((dker, dcoker), (0, 1));
    }

    #[test]
    fn jordan_rep_is_regular_with_monodromy_t() {
        let f = Field::Rationals;
        let t = crate::canonical::jordan_cell_matrix(f, &f.from_i64(2), 2);
        let rep = circle_rep_of_jordan(f, 4, &t);
        rep.validate().unwrap();
        assert!(rep.is_regular());
        assert_eq!(rep.monodromy_of_regular().unwrap(), t);
    }
}
