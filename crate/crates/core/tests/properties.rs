//! Property suites for the representation calculus: additivity of the
//! kernel/cokernel dimensions, twist behavior, rebuild round trips and
//! transformation invariants, on seeded random data.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tamebar::field::Field;
use tamebar::matrix::Matrix;
use tamebar::quiver::{
    circle_rep_of_barcode, circle_rep_of_jordan, direct_sum, elementary_circle,
    random_basis_change, BarCode, CircleRep, TransformKind,
};

fn gf5() -> Field {
    Field::prime(5).unwrap()
}

fn random_invertible(rng: &mut ChaCha8Rng, f: Field, n: usize) -> Matrix {
    loop {
        let mut m = Matrix::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, f.from_i64(rng.gen_range(0..5)));
            }
        }
        if m.is_invertible() {
            return m;
        }
    }
}

fn random_barcode(rng: &mut ChaCha8Rng, m: usize) -> BarCode {
    let left = rng.gen_range(1..=m as i64);
    let len = rng.gen_range(0..=2 * m as i64);
    let lc = rng.gen_bool(0.5);
    let rc = if len == 0 { true } else { rng.gen_bool(0.5) };
    let lc = if len == 0 { true } else { lc };
    BarCode::new(left, left + len, lc, rc)
}

#[test]
fn dker_dcoker_additive_under_direct_sum() {
    let f = gf5();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..30 {
        let m = rng.gen_range(1..=3);
        let a = circle_rep_of_barcode(f, m, &random_barcode(&mut rng, m));
        let b = circle_rep_of_barcode(f, m, &random_barcode(&mut rng, m));
        let size = rng.gen_range(0..=2);
        let t = random_invertible(&mut rng, f, size);
        let c = circle_rep_of_jordan(f, m, &t);
        let sum = direct_sum(&[a.clone(), b.clone(), c.clone()]);
        let (ka, cka) = a.dker_dcoker();
        let (kb, ckb) = b.dker_dcoker();
        let (kc, ckc) = c.dker_dcoker();
        assert_eq!(sum.dker_dcoker(), (ka + kb + kc, cka + ckb + ckc));
    }
}

#[test]
fn twist_preserves_dims_and_is_a_group_action() {
    let f = gf5();
    let rep = CircleRep::identity_rep(f, 3, 2);
    let u = f.from_i64(2);
    let tw = rep.twist(&u).unwrap();
    assert_eq!(tw.odd_dims, rep.odd_dims);
    assert_eq!(tw.alpha[0], rep.alpha[0].scale(&u));
    assert_eq!(tw.alpha[1], rep.alpha[1]);
    let back = tw.twist(&f.inv(&u).unwrap()).unwrap();
    assert_eq!(back, rep);
    assert!(rep.twist(&f.zero()).is_err());
    // u = 1 is the identity twist
    assert_eq!(rep.twist(&f.one()).unwrap(), rep);
}

#[test]
fn twist_invariance_for_barcode_only_reps() {
    // with no Jordan part, the kernel and cokernel of the block matrix do
    // not change under twisting
    let f = gf5();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..40 {
        let m = rng.gen_range(1..=4);
        let codes: Vec<BarCode> = (0..rng.gen_range(1..=3))
            .map(|_| random_barcode(&mut rng, m))
            .collect();
        let reps: Vec<CircleRep> = codes.iter().map(|c| circle_rep_of_barcode(f, m, c)).collect();
        let rep = direct_sum(&reps);
        let rep = random_basis_change(&rep, |n| random_invertible(&mut rng, f, n));
        let base = rep.dker_dcoker();
        for u in [2i64, 3, 4] {
            let tw = rep.twist(&f.from_i64(u)).unwrap();
            assert_eq!(tw.dker_dcoker(), base, "codes {codes:?}, u = {u}");
        }
    }
}

#[test]
fn decompose_rebuild_round_trip() {
    let f = gf5();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for trial in 0..25 {
        let m = rng.gen_range(1..=3);
        let mut parts: Vec<CircleRep> = (0..rng.gen_range(0..=3))
            .map(|_| circle_rep_of_barcode(f, m, &random_barcode(&mut rng, m)))
            .collect();
        let size = rng.gen_range(0..=3);
        let t = random_invertible(&mut rng, f, size);
        parts.push(circle_rep_of_jordan(f, m, &t));
        let built = direct_sum(&parts);
        // hide the splitting behind random bases
        let hidden = random_basis_change(&built, |n| random_invertible(&mut rng, f, n));
        let dec = hidden.decompose().unwrap();

        // rebuild from the decomposition and decompose again
        let mut rebuilt_parts: Vec<CircleRep> = dec
            .barcodes
            .iter()
            .map(|c| circle_rep_of_barcode(f, m, c))
            .collect();
        rebuilt_parts.push(circle_rep_of_jordan(f, m, &dec.monodromy.matrix));
        let rebuilt = direct_sum(&rebuilt_parts);
        let dec2 = rebuilt.decompose().unwrap();

        assert_eq!(dec.barcodes, dec2.barcodes, "trial {trial}");
        assert!(
            dec.monodromy.form.same_class(&dec2.monodromy.form),
            "trial {trial}"
        );
    }
}

#[test]
fn decompose_recovers_planted_summands() {
    let f = gf5();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for trial in 0..25 {
        let m = rng.gen_range(1..=3);
        let codes: Vec<BarCode> = (0..rng.gen_range(0..=3))
            .map(|_| random_barcode(&mut rng, m).normalized(m))
            .collect();
        let size = rng.gen_range(0..=3);
        let t = random_invertible(&mut rng, f, size);
        let mut parts: Vec<CircleRep> =
            codes.iter().map(|c| circle_rep_of_barcode(f, m, c)).collect();
        parts.push(circle_rep_of_jordan(f, m, &t));
        let hidden = random_basis_change(&direct_sum(&parts), |n| {
            random_invertible(&mut rng, f, n)
        });
        let dec = hidden.decompose().unwrap();
        let mut want = codes.clone();
        want.sort();
        assert_eq!(dec.barcodes, want, "trial {trial}: planted codes recovered");
        assert!(
            dec.monodromy
                .form
                .same_class(&tamebar::canonical::canonical_form(&t)),
            "trial {trial}: planted monodromy recovered"
        );
    }
}

#[test]
fn line_local_counts_match_multiplicities() {
    let f = gf5();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..20 {
        let m = rng.gen_range(1..=3);
        let codes: Vec<BarCode> = (0..rng.gen_range(1..=3))
            .map(|_| random_barcode(&mut rng, m))
            .collect();
        let reps: Vec<CircleRep> = codes.iter().map(|c| circle_rep_of_barcode(f, m, c)).collect();
        let size = rng.gen_range(0..=2);
        let t = random_invertible(&mut rng, f, size);
        let mut all = reps;
        all.push(circle_rep_of_jordan(f, m, &t));
        let rep = random_basis_change(&direct_sum(&all), |n| random_invertible(&mut rng, f, n));
        let lo = -1i64;
        let hi = 2 * m as i64;
        let z = rep.unroll(lo, hi);
        let dec = z.decompose().unwrap();
        let ms = dec.code_multiset();
        for i in lo..=hi {
            let (c_oo, c_cc, c_oc, c_co) = z.local_counts(i);
            assert_eq!(c_oo, ms.count(&BarCode::open(i, i + 1)), "(i,i+1) at {i}");
            assert_eq!(c_cc, ms.count(&BarCode::closed(i, i)), "[i,i] at {i}");
            assert_eq!(c_oc, ms.count(&BarCode::new(i, i + 1, false, true)), "(i,i+1] at {i}");
            assert_eq!(c_co, ms.count(&BarCode::new(i, i + 1, true, false)), "[i,i+1) at {i}");
        }
    }
}

#[test]
fn transformations_preserve_monodromy_and_shrink_dimension() {
    let f = gf5();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let m = rng.gen_range(1..=3);
        let code = random_barcode(&mut rng, m);
        let size = rng.gen_range(1..=2);
        let t = random_invertible(&mut rng, f, size);
        let rep = direct_sum(&[
            circle_rep_of_barcode(f, m, &code),
            circle_rep_of_jordan(f, m, &t),
        ]);
        let before = rep.decompose().unwrap();
        for kind in [TransformKind::T1, TransformKind::T2, TransformKind::T3, TransformKind::T4] {
            for i in 1..=m as i64 {
                let (next, rec) = elementary_circle(&rep, kind, i).unwrap();
                if rec.is_identity() {
                    assert_eq!(next.total_dim(), rep.total_dim());
                    continue;
                }
                assert!(next.total_dim() < rep.total_dim());
                let after = next.decompose().unwrap();
                assert!(after.monodromy.form.same_class(&before.monodromy.form));
            }
        }
    }
}
