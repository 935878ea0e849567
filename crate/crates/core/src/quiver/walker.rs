//! Through-ranks along the zigzag.
//!
//! `tr(u, v)` is the number of interval summands of the (unrolled) zigzag
//! whose support covers the whole fine interval [u, v]; the regular part
//! contributes its full dimension to every pair. It is computed as
//! dom − ker of the relation obtained by composing graphs of the α's and
//! daggered graphs of the β's from u to v, which kills the contribution of
//! every bar that enters or leaves strictly inside the interval.

use crate::field::Field;
use crate::matrix::Matrix;
use crate::relation::LinearRelation;

use super::{pos, CircleRep, ZRep};

/// Access to the zigzag by fine vertex index, with circle representations
/// unrolled periodically and line representations zero outside the window.
pub(crate) trait Zigzag {
    fn zz_field(&self) -> Field;
    fn fine_dim(&self, v: i64) -> usize;
    /// α_l: odd(2l−1) → even(2l)
    fn alpha_fine(&self, l: i64) -> Matrix;
    /// β_l: odd(2l+1) → even(2l)
    fn beta_fine(&self, l: i64) -> Matrix;
}

impl Zigzag for CircleRep {
    fn zz_field(&self) -> Field {
        self.field
    }

    fn fine_dim(&self, v: i64) -> usize {
        if v.rem_euclid(2) == 0 {
            self.even_dims[pos(v.div_euclid(2), self.m)]
        } else {
            self.odd_dims[pos((v + 1).div_euclid(2), self.m)]
        }
    }

    fn alpha_fine(&self, l: i64) -> Matrix {
        self.alpha_at(l).clone()
    }

    fn beta_fine(&self, l: i64) -> Matrix {
        self.beta_at(l).clone()
    }
}

impl Zigzag for ZRep {
    fn zz_field(&self) -> Field {
        self.field
    }

    fn fine_dim(&self, v: i64) -> usize {
        if v.rem_euclid(2) == 0 {
            self.even_dim_at(v.div_euclid(2))
        } else {
            self.odd_dim_at((v + 1).div_euclid(2))
        }
    }

    fn alpha_fine(&self, l: i64) -> Matrix {
        self.alpha_at(l)
    }

    fn beta_fine(&self, l: i64) -> Matrix {
        self.beta_at(l)
    }
}

fn through_count(rel: &LinearRelation) -> usize {
    let p = rel.parts();
    p.dom.dim() - p.ker.dim()
}

/// One step of the relation walk to the right: space(v) ⇝ space(v+1).
fn step_right<Z: Zigzag>(rep: &Z, v: i64) -> LinearRelation {
    if v.rem_euclid(2) != 0 {
        // odd 2l−1 → even 2l along α_l
        let l = (v + 1).div_euclid(2);
        LinearRelation::graph(&rep.alpha_fine(l))
    } else {
        // even 2l → odd 2l+1 against β_l
        let l = v.div_euclid(2);
        LinearRelation::graph(&rep.beta_fine(l)).dagger()
    }
}

/// One step to the left: space(v) ⇝ space(v−1).
fn step_left<Z: Zigzag>(rep: &Z, v: i64) -> LinearRelation {
    if v.rem_euclid(2) != 0 {
        // odd 2l+1 → even 2l along β_l
        let l = (v - 1).div_euclid(2);
        LinearRelation::graph(&rep.beta_fine(l))
    } else {
        // even 2l → odd 2l−1 against α_l
        let l = v.div_euclid(2);
        LinearRelation::graph(&rep.alpha_fine(l)).dagger()
    }
}

/// tr(u, u), tr(u, u+1), …, tr(u, u+steps).
pub(crate) fn through_ranks_right<Z: Zigzag>(rep: &Z, u: i64, steps: usize) -> Vec<usize> {
    let f = rep.zz_field();
    let mut acc = LinearRelation::identity(f, rep.fine_dim(u));
    let mut out = Vec::with_capacity(steps + 1);
    out.push(through_count(&acc));
    for s in 0..steps {
        let v = u + s as i64;
        acc = LinearRelation::compose(&step_right(rep, v), &acc).expect("zigzag shapes agree");
        out.push(through_count(&acc));
    }
    out
}

/// tr(u, u), tr(u−1, u), …, tr(u−steps, u).
pub(crate) fn through_ranks_left<Z: Zigzag>(rep: &Z, u: i64, steps: usize) -> Vec<usize> {
    let f = rep.zz_field();
    let mut acc = LinearRelation::identity(f, rep.fine_dim(u));
    let mut out = Vec::with_capacity(steps + 1);
    out.push(through_count(&acc));
    for s in 0..steps {
        let v = u - s as i64;
        acc = LinearRelation::compose(&step_left(rep, v), &acc).expect("zigzag shapes agree");
        out.push(through_count(&acc));
    }
    out
}

/// Counts, for v = u, u+1, …, of codes whose support starts exactly at the
/// fine vertex u and covers v. Jordan contributions cancel in the
/// difference, so the sequence is eventually zero; scanning stops there.
pub(crate) fn family_counts_right<Z: Zigzag>(rep: &Z, u: i64, cap: usize) -> Vec<usize> {
    let at = through_ranks_right(rep, u, cap);
    let before = through_ranks_right(rep, u - 1, cap + 1);
    let mut out = Vec::new();
    for s in 0..=cap {
        let d = at[s] - before[s + 1];
        out.push(d);
        if d == 0 {
            break;
        }
    }
    out
}

/// Counts, for v = u, u−1, …, of codes whose support ends exactly at the
/// fine vertex u and covers v.
pub(crate) fn family_counts_left<Z: Zigzag>(rep: &Z, u: i64, cap: usize) -> Vec<usize> {
    let at = through_ranks_left(rep, u, cap);
    let after = through_ranks_left(rep, u + 1, cap + 1);
    let mut out = Vec::new();
    for s in 0..=cap {
        let d = at[s] - after[s + 1];
        out.push(d);
        if d == 0 {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::build::circle_rep_of_barcode;
    use crate::quiver::BarCode;

    #[test]
    fn through_ranks_of_identity_rep_are_constant() {
        let f = Field::prime(5).unwrap();
        let rep = CircleRep::identity_rep(f, 3, 2);
        let tr = through_ranks_right(&rep, 1, 12);
        assert!(tr.iter().all(|&x| x == 2));
        let tl = through_ranks_left(&rep, 4, 12);
        assert!(tl.iter().all(|&x| x == 2));
    }

    #[test]
    fn family_counts_see_a_single_code() {
        let f = Field::prime(5).unwrap();
        // code (1, 3] on the circle with m = 2: support fine [3, 6]
        let rep = circle_rep_of_barcode(f, 2, &BarCode::new(1, 3, false, true));
        // family starting at fine 3 (left-open at 1)
        let fam = family_counts_right(&rep, 3, 20);
        assert_eq!(fam, vec![1, 1, 1, 1, 0]);
        // family ending at fine 6 (right-closed at 3)
        let fam = family_counts_left(&rep, 6, 20);
        assert_eq!(fam, vec![1, 1, 1, 1, 0]);
        // no code starts at the even vertex 2
        let fam = family_counts_right(&rep, 2, 20);
        assert_eq!(fam, vec![0]);
    }
}
