//! Full decomposition into bar codes and monodromy.
//!
//! Circle representations are reduced by sweeping the elementary
//! transformations in the fixed order T1(i), T2(i), T3(i), T4(i) for
//! i = 1..m until a sweep changes nothing; the terminal representation is
//! regular and yields the monodromy, and the transcript of records is
//! replayed backwards to express every eliminated code in the original
//! coordinates.
//!
//! Line representations are decomposed directly by the through-rank
//! inclusion–exclusion: the multiplicity of the code with fine support
//! [u, v] is tr(u,v) − tr(u−1,v) − tr(u,v+1) + tr(u−1,v+1). This is a
//! separate code path from the circle sweep, which the truncation laws are
//! tested against.

use crate::error::Error;
use crate::field::{Field, Scalar};

use super::transform::{elementary_circle, TransformKind};
use super::walker::through_ranks_right;
use super::{BarCode, CircleRep, CodeMultiset, Monodromy, ZRep};

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub field: Field,
    /// Sorted, with multiplicity.
    pub barcodes: Vec<BarCode>,
    pub monodromy: Monodromy,
}

impl Decomposition {
    pub fn code_multiset(&self) -> CodeMultiset {
        CodeMultiset::from_codes(self.barcodes.iter().copied())
    }

    pub fn count_closed(&self) -> usize {
        self.barcodes.iter().filter(|c| c.is_closed()).count()
    }

    pub fn count_open(&self) -> usize {
        self.barcodes.iter().filter(|c| c.is_open()).count()
    }

    pub fn count_mixed(&self) -> usize {
        self.barcodes.iter().filter(|c| c.is_mixed()).count()
    }

    /// Number of split Jordan cells with eigenvalue λ.
    pub fn cells_with_eigenvalue(&self, lambda: &Scalar) -> usize {
        self.monodromy.form.cells_with_eigenvalue(lambda)
    }

    /// The kernel/cokernel census of the twisted block matrix:
    /// (dim ker M(ρ_u), dim coker M(ρ_u)) predicted from the decomposition,
    /// valid whenever u⁻¹-eigenvalue cells are split (always over the
    /// eigenvalues the canonical form reports).
    pub fn census(&self, u_inverse: &Scalar) -> (usize, usize) {
        let cells = self.cells_with_eigenvalue(u_inverse);
        (self.count_open() + cells, self.count_closed() + cells)
    }
}

/// Decompose a circle representation by the transformation sweep.
pub fn decompose_circle(rep: &CircleRep) -> Result<Decomposition, Error> {
    rep.validate()?;
    let mut cur = rep.clone();
    let mut records = Vec::new();
    loop {
        let mut changed = false;
        for i in 1..=rep.m as i64 {
            for kind in [
                TransformKind::T1,
                TransformKind::T2,
                TransformKind::T3,
                TransformKind::T4,
            ] {
                let (next, rec) = elementary_circle(&cur, kind, i)?;
                if !rec.is_identity() {
                    assert!(next.total_dim() < cur.total_dim(), "transformation must shrink");
                    cur = next;
                    records.push(rec);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    if !cur.is_regular() {
        return Err(Error::NotRegular(
            "sweep terminated on a non-regular representation".into(),
        ));
    }
    let monodromy = Monodromy::of_matrix(cur.monodromy_of_regular()?);
    debug_assert!(monodromy.form.is_invertible_class());

    // backward bookkeeping: undo the shrinks, collect the eliminations
    let mut codes = CodeMultiset::new();
    for rec in records.iter().rev() {
        for (from, to, cnt) in &rec.shrinks {
            codes.remove(to, *cnt);
            codes.add(*from, *cnt);
        }
        for (code, cnt) in &rec.eliminated {
            codes.add(*code, *cnt);
        }
    }
    let dec = Decomposition {
        field: rep.field,
        barcodes: codes.to_vec(),
        monodromy,
    };
    verify_dimensions_circle(rep, &dec)?;
    Ok(dec)
}

/// Per-vertex dimension accounting: the summand dimension vectors must add
/// up to the input's.
fn verify_dimensions_circle(rep: &CircleRep, dec: &Decomposition) -> Result<(), Error> {
    let jordan = dec.monodromy.dim();
    for j in 0..rep.m {
        let l = j as i64 + 1;
        let odd: usize = dec
            .barcodes
            .iter()
            .map(|c| c.coverage_mod(2 * l - 1, rep.m))
            .sum::<usize>()
            + jordan;
        let even: usize = dec
            .barcodes
            .iter()
            .map(|c| c.coverage_mod(2 * l, rep.m))
            .sum::<usize>()
            + jordan;
        if odd != rep.odd_dims[j] || even != rep.even_dims[j] {
            return Err(Error::InvalidInput(format!(
                "decomposition dimension check failed at position {j}: odd {odd} vs {}, even {even} vs {}",
                rep.odd_dims[j], rep.even_dims[j]
            )));
        }
    }
    Ok(())
}

/// Decompose a finite-support line representation by rank inclusion–exclusion.
pub fn decompose_z(rep: &ZRep) -> Result<Decomposition, Error> {
    rep.validate()?;
    let a = 2 * rep.lo;
    let b = 2 * rep.hi;
    // tr[u][v] for u in [a−1, b], v in [u, b+1]
    let rows: Vec<Vec<usize>> = (a - 1..=b)
        .map(|u| through_ranks_right(rep, u, (b + 1 - u) as usize))
        .collect();
    let tr = |u: i64, v: i64| -> usize {
        debug_assert!(u <= v);
        rows[(u - (a - 1)) as usize][(v - u) as usize]
    };
    let mut codes = CodeMultiset::new();
    for u in a..=b {
        for v in u..=b {
            let mult = (tr(u, v) + tr(u - 1, v + 1)) as i64
                - (tr(u - 1, v) + tr(u, v + 1)) as i64;
            debug_assert!(mult >= 0);
            if mult > 0 {
                codes.add(BarCode::from_support(u, v), mult as usize);
            }
        }
    }
    let dec = Decomposition {
        field: rep.field,
        barcodes: codes.to_vec(),
        monodromy: Monodromy::empty(rep.field),
    };
    // dimension accounting, line version
    for l in rep.lo..=rep.hi {
        for (fine, want) in [(2 * l - 1, rep.odd_dim_at(l)), (2 * l, rep.even_dim_at(l))] {
            let got: usize = dec
                .barcodes
                .iter()
                .filter(|c| c.support_min() <= fine && fine <= c.support_max())
                .count();
            if got != want {
                return Err(Error::InvalidInput(format!(
                    "line decomposition dimension check failed at fine vertex {fine}: {got} vs {want}"
                )));
            }
        }
    }
    Ok(dec)
}

/// The bar codes Obs O39 predicts for the truncation of the periodic lift of
/// a decomposed circle representation to the window [lo, hi]: every
/// translate clipped to the window, plus dim(monodromy) copies of the full
/// closed window.
pub fn predicted_truncation(dec: &Decomposition, m: usize, lo: i64, hi: i64) -> CodeMultiset {
    let period = 2 * m as i64;
    let mut out = CodeMultiset::new();
    for (code, cnt) in dec.code_multiset().iter() {
        // translates whose support meets [2lo, 2hi]
        let t_min = num::Integer::div_ceil(&(2 * lo - code.support_max()), &period);
        let t_max = (2 * hi - code.support_min()).div_euclid(period);
        for t in t_min..=t_max {
            if let Some(clipped) = code.translate(t * m as i64).clip(lo, hi) {
                out.add(clipped, cnt);
            }
        }
    }
    out.add(BarCode::closed(lo, hi), dec.monodromy.dim());
    out
}
