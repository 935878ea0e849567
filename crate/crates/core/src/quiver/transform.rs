//! The four elementary transformations T1–T4.
//!
//! Each application returns the reduced representation together with a
//! record of what happened to the bar-code multiset: the codes eliminated
//! outright and, for every longer code of the affected family, the shrink
//! `from → to` with its multiplicity. The multiplicities are computed on the
//! representation *before* the transformation from through-rank differences;
//! they are what makes the backward replay in `decompose` unambiguous when a
//! shrunk code collides with an already-present one.

use crate::error::Error;
use crate::matrix::Matrix;
use crate::subspace::{preimage, quotient_map, Subspace};

use super::walker::{family_counts_left, family_counts_right, Zigzag};
use super::{pos, BarCode, CircleRep, ZRep};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TransformKind {
    T1,
    T2,
    T3,
    T4,
}

#[derive(Clone, Debug)]
pub struct TransformRecord {
    pub kind: TransformKind,
    /// 1-based critical index the transformation was applied at.
    pub index: i64,
    /// Codes eliminated, in the coordinates of the representation the
    /// transformation was applied to.
    pub eliminated: Vec<(BarCode, usize)>,
    /// Shrinks (from, to, multiplicity) applied to the surviving codes of
    /// the affected family.
    pub shrinks: Vec<(BarCode, BarCode, usize)>,
}

impl TransformRecord {
    pub fn is_identity(&self) -> bool {
        self.eliminated.is_empty() && self.shrinks.is_empty()
    }

    fn empty(kind: TransformKind, index: i64) -> TransformRecord {
        TransformRecord {
            kind,
            index,
            eliminated: Vec::new(),
            shrinks: Vec::new(),
        }
    }
}

#[derive(Clone, Debug)]
enum SpaceChange {
    Quotient(Matrix),
    Restrict(Matrix),
}

impl SpaceChange {
    fn new_dim(&self) -> usize {
        match self {
            SpaceChange::Quotient(q) => q.rows,
            SpaceChange::Restrict(b) => b.cols,
        }
    }
}

/// Transport a map through per-space changes. Well-definedness (the map
/// respects the quotients / restrictions) is an invariant of the
/// transformation rules and is checked in debug builds.
fn rebuild_map(f_mat: &Matrix, src: Option<&SpaceChange>, dst: Option<&SpaceChange>) -> Matrix {
    use SpaceChange::*;
    match (src, dst) {
        (None, None) => f_mat.clone(),
        (None, Some(Quotient(q))) => q.mul(f_mat),
        (None, Some(Restrict(b))) => b
            .solve_matrix(f_mat)
            .expect("shape")
            .expect("image lies inside the restricted subspace"),
        (Some(Quotient(q)), dst) => {
            let pushed = match dst {
                None => f_mat.clone(),
                Some(Quotient(q2)) => q2.mul(f_mat),
                Some(Restrict(_)) => unreachable!("quotient source with restricted target"),
            };
            debug_assert!(pushed.mul(&q.nullspace_matrix()).is_zero());
            let section = q
                .solve_matrix(&Matrix::identity(q.field, q.rows))
                .expect("shape")
                .expect("quotient map is surjective");
            pushed.mul(&section)
        }
        (Some(Restrict(b)), dst) => {
            let restricted = f_mat.mul(b);
            match dst {
                None => restricted,
                Some(Restrict(b2)) => b2
                    .solve_matrix(&restricted)
                    .expect("shape")
                    .expect("image lies inside the restricted subspace"),
                Some(Quotient(_)) => unreachable!("restricted source with quotient target"),
            }
        }
    }
}

/// What a transformation does at one vertex of the quiver.
struct Changes {
    /// (is_even, 0-based circle position or window-relative index) → change
    odd: Vec<Option<SpaceChange>>,
    even: Vec<Option<SpaceChange>>,
}

impl Changes {
    fn none(odd_len: usize, even_len: usize) -> Changes {
        Changes {
            odd: (0..odd_len).map(|_| None).collect(),
            even: (0..even_len).map(|_| None).collect(),
        }
    }
}

/// The family scans: counts of codes ending at each fine vertex, walking
/// away from the anchored end. Returns (eliminated, shrinks).
#[allow(clippy::type_complexity)]
fn scan_family<Z: Zigzag>(
    rep: &Z,
    kind: TransformKind,
    i: i64,
    cap: usize,
    normalize_m: Option<usize>,
) -> (Vec<(BarCode, usize)>, Vec<(BarCode, BarCode, usize)>) {
    let norm = |c: BarCode| match normalize_m {
        Some(m) => c.normalized(m),
        None => c,
    };
    let mut eliminated = Vec::new();
    let mut shrinks = Vec::new();
    match kind {
        TransformKind::T1 | TransformKind::T3 => {
            // family anchored on the left: T1 at odd 2i−1 (left-open at i−1),
            // T3 at even 2i (left-closed at i)
            let u = match kind {
                TransformKind::T1 => 2 * i - 1,
                _ => 2 * i,
            };
            let fam = family_counts_right(rep, u, cap);
            assert_eq!(*fam.last().unwrap(), 0, "family scan did not terminate");
            for s in 0..fam.len() - 1 {
                let cnt = fam[s] - fam[s + 1];
                if cnt == 0 {
                    continue;
                }
                let v = u + s as i64;
                let code = norm(BarCode::from_support(u, v));
                // codes not reaching past the transformed pair die
                let cut = match kind {
                    TransformKind::T1 => 2 * i, // (i−1,i) and (i−1,i]
                    _ => 2 * i + 1,             // [i,i] and [i,i+1)
                };
                if v <= cut {
                    eliminated.push((code, cnt));
                } else {
                    let to = norm(BarCode::from_support(u + 2, v));
                    shrinks.push((code, to, cnt));
                }
            }
        }
        TransformKind::T2 | TransformKind::T4 => {
            // family anchored on the right: T2 at odd 2i+1 (right-open at
            // i+1), T4 at even 2i (right-closed at i)
            let u = match kind {
                TransformKind::T2 => 2 * i + 1,
                _ => 2 * i,
            };
            let fam = family_counts_left(rep, u, cap);
            assert_eq!(*fam.last().unwrap(), 0, "family scan did not terminate");
            for s in 0..fam.len() - 1 {
                let cnt = fam[s] - fam[s + 1];
                if cnt == 0 {
                    continue;
                }
                let v = u - s as i64;
                let code = norm(BarCode::from_support(v, u));
                let cut = match kind {
                    TransformKind::T2 => 2 * i, // (i,i+1) and [i,i+1)
                    _ => 2 * i - 1,             // [i,i] and (i−1,i]
                };
                if v >= cut {
                    eliminated.push((code, cnt));
                } else {
                    let to = norm(BarCode::from_support(v, u - 2));
                    shrinks.push((code, to, cnt));
                }
            }
        }
    }
    (eliminated, shrinks)
}

/// Apply an elementary transformation to a circle representation. When the
/// condition map is already injective/surjective the representation is
/// returned unchanged with an identity record.
pub fn elementary_circle(
    rep: &CircleRep,
    kind: TransformKind,
    i: i64,
) -> Result<(CircleRep, TransformRecord), Error> {
    let m = rep.m;
    let f = rep.field;
    let mut changes = Changes::none(m, m);
    let total = rep.total_dim();
    let cap = 2 * m * (total + 2) + 4;

    let anchored_total = match kind {
        TransformKind::T1 => {
            let w = Subspace::kernel(rep.beta_at(i - 1));
            if w.is_zero() {
                return Ok((rep.clone(), TransformRecord::empty(kind, i)));
            }
            let dim = w.dim();
            let pushed = Subspace::image(&rep.alpha_at(i).mul(&w.basis));
            changes.odd[pos(i, m)] = Some(SpaceChange::Quotient(quotient_map(rep.odd_dim_at(i), &w)));
            changes.even[pos(i, m)] =
                Some(SpaceChange::Quotient(quotient_map(rep.even_dim_at(i), &pushed)));
            dim
        }
        TransformKind::T2 => {
            let w = Subspace::kernel(rep.alpha_at(i + 1));
            if w.is_zero() {
                return Ok((rep.clone(), TransformRecord::empty(kind, i)));
            }
            let dim = w.dim();
            let pushed = Subspace::image(&rep.beta_at(i).mul(&w.basis));
            changes.odd[pos(i + 1, m)] =
                Some(SpaceChange::Quotient(quotient_map(rep.odd_dim_at(i + 1), &w)));
            changes.even[pos(i, m)] =
                Some(SpaceChange::Quotient(quotient_map(rep.even_dim_at(i), &pushed)));
            dim
        }
        TransformKind::T3 => {
            let s = Subspace::image(rep.alpha_at(i));
            let codim = rep.even_dim_at(i) - s.dim();
            if codim == 0 {
                return Ok((rep.clone(), TransformRecord::empty(kind, i)));
            }
            let pre = preimage(rep.beta_at(i), &s)?;
            changes.even[pos(i, m)] = Some(SpaceChange::Restrict(s.basis.clone()));
            changes.odd[pos(i + 1, m)] = Some(SpaceChange::Restrict(pre.basis.clone()));
            codim
        }
        TransformKind::T4 => {
            let s = Subspace::image(rep.beta_at(i));
            let codim = rep.even_dim_at(i) - s.dim();
            if codim == 0 {
                return Ok((rep.clone(), TransformRecord::empty(kind, i)));
            }
            let pre = preimage(rep.alpha_at(i), &s)?;
            changes.even[pos(i, m)] = Some(SpaceChange::Restrict(s.basis.clone()));
            changes.odd[pos(i, m)] = Some(SpaceChange::Restrict(pre.basis.clone()));
            codim
        }
    };

    let (eliminated, shrinks) = scan_family(rep, kind, i, cap, Some(m));
    let accounted: usize = eliminated.iter().map(|e| e.1).sum::<usize>()
        + shrinks.iter().map(|s| s.2).sum::<usize>();
    assert_eq!(
        accounted, anchored_total,
        "family scan does not account for the condition subspace"
    );

    let mut out = rep.clone();
    for j in 0..m {
        if let Some(c) = &changes.odd[j] {
            out.odd_dims[j] = c.new_dim();
        }
        if let Some(c) = &changes.even[j] {
            out.even_dims[j] = c.new_dim();
        }
    }
    for j in 0..m {
        out.alpha[j] = rebuild_map(
            &rep.alpha[j],
            changes.odd[j].as_ref(),
            changes.even[j].as_ref(),
        );
        out.beta[j] = rebuild_map(
            &rep.beta[j],
            changes.odd[(j + 1) % m].as_ref(),
            changes.even[j].as_ref(),
        );
    }
    debug_assert!(out.validate().is_ok());
    let _ = f;
    Ok((
        out,
        TransformRecord {
            kind,
            index: i,
            eliminated,
            shrinks,
        },
    ))
}

/// Apply an elementary transformation to a line representation. Maps at the
/// window boundary are zero, so transformations touching absent spaces are
/// identities.
pub fn elementary_z(
    rep: &ZRep,
    kind: TransformKind,
    i: i64,
) -> Result<(ZRep, TransformRecord), Error> {
    let f = rep.field;
    let width = (rep.hi - rep.lo) as usize;
    let cap = 2 * width + 6;
    // window-relative slots: odd k ↔ V_{2(lo+k+1)−1}, even k ↔ V_{2(lo+k)}
    let odd_slot = |l: i64| -> Option<usize> {
        if l > rep.lo && l <= rep.hi {
            Some((l - rep.lo - 1) as usize)
        } else {
            None
        }
    };
    let even_slot = |l: i64| -> Option<usize> {
        if l >= rep.lo && l <= rep.hi {
            Some((l - rep.lo) as usize)
        } else {
            None
        }
    };
    let mut changes = Changes::none(width, width + 1);

    let anchored_total = match kind {
        TransformKind::T1 => {
            let w = Subspace::kernel(&rep.beta_at(i - 1));
            if w.is_zero() {
                return Ok((rep.clone(), TransformRecord::empty(kind, i)));
            }
            let dim = w.dim();
            let pushed = Subspace::image(&rep.alpha_at(i).mul(&w.basis));
            let oj = odd_slot(i).expect("nonzero kernel implies the space is in the window");
            changes.odd[oj] = Some(SpaceChange::Quotient(quotient_map(rep.odd_dim_at(i), &w)));
            if let Some(ej) = even_slot(i) {
                changes.even[ej] =
                    Some(SpaceChange::Quotient(quotient_map(rep.even_dim_at(i), &pushed)));
            }
            dim
        }
        TransformKind::T2 => {
            let w = Subspace::kernel(&rep.alpha_at(i + 1));
            if w.is_zero() {
                return Ok((rep.clone(), TransformRecord::empty(kind, i)));
            }
            let dim = w.dim();
            let pushed = Subspace::image(&rep.beta_at(i).mul(&w.basis));
            let oj = odd_slot(i + 1).expect("nonzero kernel implies the space is in the window");
            changes.odd[oj] = Some(SpaceChange::Quotient(quotient_map(rep.odd_dim_at(i + 1), &w)));
            if let Some(ej) = even_slot(i) {
                changes.even[ej] =
                    Some(SpaceChange::Quotient(quotient_map(rep.even_dim_at(i), &pushed)));
            }
            dim
        }
        TransformKind::T3 => {
            let s = Subspace::image(&rep.alpha_at(i));
            let codim = rep.even_dim_at(i) - s.dim();
            if codim == 0 {
                return Ok((rep.clone(), TransformRecord::empty(kind, i)));
            }
            let pre = preimage(&rep.beta_at(i), &s)?;
            let ej = even_slot(i).expect("proper image implies the space is in the window");
            changes.even[ej] = Some(SpaceChange::Restrict(s.basis.clone()));
            if let Some(oj) = odd_slot(i + 1) {
                changes.odd[oj] = Some(SpaceChange::Restrict(pre.basis.clone()));
            }
            codim
        }
        TransformKind::T4 => {
            let s = Subspace::image(&rep.beta_at(i));
            let codim = rep.even_dim_at(i) - s.dim();
            if codim == 0 {
                return Ok((rep.clone(), TransformRecord::empty(kind, i)));
            }
            let pre = preimage(&rep.alpha_at(i), &s)?;
            let ej = even_slot(i).expect("proper image implies the space is in the window");
            changes.even[ej] = Some(SpaceChange::Restrict(s.basis.clone()));
            if let Some(oj) = odd_slot(i) {
                changes.odd[oj] = Some(SpaceChange::Restrict(pre.basis.clone()));
            }
            codim
        }
    };

    let (eliminated, shrinks) = scan_family(rep, kind, i, cap, None);
    let accounted: usize = eliminated.iter().map(|e| e.1).sum::<usize>()
        + shrinks.iter().map(|s| s.2).sum::<usize>();
    assert_eq!(
        accounted, anchored_total,
        "family scan does not account for the condition subspace"
    );

    let mut out = rep.clone();
    for k in 0..width {
        if let Some(c) = &changes.odd[k] {
            out.odd_dims[k] = c.new_dim();
        }
    }
    for k in 0..=width {
        if let Some(c) = &changes.even[k] {
            out.even_dims[k] = c.new_dim();
        }
    }
    for k in 0..width {
        out.alpha[k] = rebuild_map(
            &rep.alpha[k],
            changes.odd[k].as_ref(),
            changes.even[k + 1].as_ref(),
        );
        out.beta[k] = rebuild_map(
            &rep.beta[k],
            changes.odd[k].as_ref(),
            changes.even[k].as_ref(),
        );
    }
    debug_assert!(out.validate().is_ok());
    let _ = f;
    Ok((
        out,
        TransformRecord {
            kind,
            index: i,
            eliminated,
            shrinks,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::quiver::build::{circle_rep_of_barcode, circle_rep_of_jordan, direct_sum};

    fn gf5() -> Field {
        Field::prime(5).unwrap()
    }

    #[test]
    fn transformations_fix_regular_reps() {
        let f = gf5();
        let t = Matrix::from_i64(f, 2, 2, &[2, 1, 0, 2]);
        let rep = circle_rep_of_jordan(f, 3, &t);
        for kind in [TransformKind::T1, TransformKind::T2, TransformKind::T3, TransformKind::T4] {
            for i in 1..=3 {
                let (out, rec) = elementary_circle(&rep, kind, i).unwrap();
                assert!(rec.is_identity());
                assert_eq!(out, rep);
            }
        }
    }

    #[test]
    fn t1_eliminates_minimal_open_code() {
        let f = gf5();
        // (i−1, i) = (1, 2) with m = 3: eliminated by T1(2)
        let rep = circle_rep_of_barcode(f, 3, &BarCode::open(1, 2));
        let (out, rec) = elementary_circle(&rep, TransformKind::T1, 2).unwrap();
        assert_eq!(rec.eliminated, vec![(BarCode::open(1, 2), 1)]);
        assert!(rec.shrinks.is_empty());
        assert_eq!(out.total_dim(), 0);
    }

    #[test]
    fn t1_shrinks_longer_code_and_records_it() {
        let f = gf5();
        // (1, 4] with m = 4: T1(2) shrinks it to (2, 4]
        let rep = circle_rep_of_barcode(f, 4, &BarCode::new(1, 4, false, true));
        let (out, rec) = elementary_circle(&rep, TransformKind::T1, 2).unwrap();
        assert!(rec.eliminated.is_empty());
        assert_eq!(
            rec.shrinks,
            vec![(BarCode::new(1, 4, false, true), BarCode::new(2, 4, false, true), 1)]
        );
        assert_eq!(out.total_dim(), rep.total_dim() - 2);
    }

    #[test]
    fn merge_of_shrunk_code_is_counted() {
        let f = gf5();
        // (1,3] ⊕ (2,3] with m = 3: T1(2) shrinks (1,3] onto the existing (2,3]
        let a = circle_rep_of_barcode(f, 3, &BarCode::new(1, 3, false, true));
        let b = circle_rep_of_barcode(f, 3, &BarCode::new(2, 3, false, true));
        let rep = direct_sum(&[a, b]);
        let (_, rec) = elementary_circle(&rep, TransformKind::T1, 2).unwrap();
        assert_eq!(
            rec.shrinks,
            vec![(BarCode::new(1, 3, false, true), BarCode::new(2, 3, false, true), 1)]
        );
    }

    #[test]
    fn t3_and_t4_eliminate_point_codes() {
        let f = gf5();
        let rep = circle_rep_of_barcode(f, 3, &BarCode::closed(2, 2));
        let (out3, rec3) = elementary_circle(&rep, TransformKind::T3, 2).unwrap();
        assert_eq!(rec3.eliminated, vec![(BarCode::closed(2, 2), 1)]);
        assert_eq!(out3.total_dim(), 0);
        let (out4, rec4) = elementary_circle(&rep, TransformKind::T4, 2).unwrap();
        assert_eq!(rec4.eliminated, vec![(BarCode::closed(2, 2), 1)]);
        assert_eq!(out4.total_dim(), 0);
    }

    #[test]
    fn t4_shrink_wraps_through_the_seam() {
        let f = gf5();
        // (6,8] with m = 7: T4(1) (right end 8 ≡ 1) shrinks to (6,7]
        let rep = circle_rep_of_barcode(f, 7, &BarCode::new(6, 8, false, true));
        let (_, rec) = elementary_circle(&rep, TransformKind::T4, 1).unwrap();
        assert!(rec.eliminated.is_empty());
        assert_eq!(
            rec.shrinks,
            vec![(BarCode::new(6, 8, false, true), BarCode::new(6, 7, false, true), 1)]
        );
    }

    #[test]
    fn z_transformation_eliminates_left_open_code() {
        let f = gf5();
        let circle = circle_rep_of_barcode(f, 5, &BarCode::open(1, 2));
        let z = circle.unroll(1, 3);
        // the window holds the single translate (1,2)
        let (out, rec) = elementary_z(&z, TransformKind::T1, 2).unwrap();
        assert_eq!(rec.eliminated, vec![(BarCode::open(1, 2), 1)]);
        assert_eq!(out.total_dim(), 0);
    }
}
