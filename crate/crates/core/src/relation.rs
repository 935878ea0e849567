//! Linear relations R ⊆ V × W and the regular part of a square relation.
//!
//! A relation is stored as the canonical subspace of the stacked space
//! V ⊕ W (source coordinates first). The limit subspaces K± and D± of a
//! square relation stabilize within dim V steps, so they are computed from
//! the n-th relational power.

use crate::canonical::{canonical_form, EndoCanonicalForm};
use crate::error::Error;
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::subspace::{quotient_map, Subspace};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearRelation {
    pub dim_src: usize,
    pub dim_dst: usize,
    /// Canonical subspace of κ^(dim_src + dim_dst).
    pub space: Subspace,
}

/// The four canonical subspaces of a relation.
#[derive(Clone, Debug)]
pub struct RelationParts {
    pub dom: Subspace,
    pub img: Subspace,
    pub ker: Subspace,
    pub mul: Subspace,
}

/// Limit subspaces of a square relation: K− ⊆ D− ⊆ V ⊇ D+ ⊇ K+, D = D− ∩ D+.
#[derive(Clone, Debug)]
pub struct RelationLimits {
    pub k_minus: Subspace,
    pub k_plus: Subspace,
    pub d_minus: Subspace,
    pub d_plus: Subspace,
    pub d: Subspace,
}

/// The invertible map induced by a square relation on D/((K−+K+)∩D).
#[derive(Clone, Debug)]
pub struct RegularPart {
    pub dim: usize,
    pub map: Matrix,
    pub form: EndoCanonicalForm,
}

impl LinearRelation {
    pub fn field(&self) -> Field {
        self.space.field()
    }

    pub fn from_span(field: Field, dim_src: usize, dim_dst: usize, span: &Matrix) -> LinearRelation {
        assert_eq!(span.rows, dim_src + dim_dst);
        let _ = field;
        LinearRelation {
            dim_src,
            dim_dst,
            space: Subspace::from_span(span),
        }
    }

    /// The graph of a linear map, as a relation from its source to its target.
    pub fn graph(m: &Matrix) -> LinearRelation {
        let f = m.field;
        let src = Matrix::identity(f, m.cols);
        LinearRelation::from_span(f, m.cols, m.rows, &src.vstack(m))
    }

    pub fn identity(field: Field, n: usize) -> LinearRelation {
        LinearRelation::graph(&Matrix::identity(field, n))
    }

    /// The full relation V × W.
    pub fn full(field: Field, dim_src: usize, dim_dst: usize) -> LinearRelation {
        LinearRelation {
            dim_src,
            dim_dst,
            space: Subspace::full(field, dim_src + dim_dst),
        }
    }

    /// wR†v iff vRw.
    pub fn dagger(&self) -> LinearRelation {
        let f = self.field();
        let b = &self.space.basis;
        let mut swapped = Matrix::zeros(f, b.rows, b.cols);
        for j in 0..b.cols {
            for i in 0..self.dim_dst {
                swapped.set(i, j, b.get(self.dim_src + i, j).clone());
            }
            for i in 0..self.dim_src {
                swapped.set(self.dim_dst + i, j, b.get(i, j).clone());
            }
        }
        LinearRelation::from_span(f, self.dim_dst, self.dim_src, &swapped)
    }

    /// v (S∘R) u iff there is w with vRw and wSu.
    pub fn compose(s: &LinearRelation, r: &LinearRelation) -> Result<LinearRelation, Error> {
        if r.dim_dst != s.dim_src {
            return Err(Error::DimensionMismatch(format!(
                "compose: inner dimensions {} vs {}",
                r.dim_dst, s.dim_src
            )));
        }
        let f = r.field();
        let br = &r.space.basis;
        let bs = &s.space.basis;
        // agree on the middle block: kernel of [R_mid | -S_mid]
        let mut mid = Matrix::zeros(f, r.dim_dst, br.cols + bs.cols);
        for j in 0..br.cols {
            for i in 0..r.dim_dst {
                mid.set(i, j, br.get(r.dim_src + i, j).clone());
            }
        }
        let minus_one = f.from_i64(-1);
        for j in 0..bs.cols {
            for i in 0..r.dim_dst {
                mid.set(i, br.cols + j, f.mul(bs.get(i, j), &minus_one));
            }
        }
        let ker = mid.nullspace_matrix();
        let mut span = Matrix::zeros(f, r.dim_src + s.dim_dst, ker.cols);
        for k in 0..ker.cols {
            for i in 0..r.dim_src {
                let mut acc = f.zero();
                for j in 0..br.cols {
                    acc = f.add(&acc, &f.mul(br.get(i, j), ker.get(j, k)));
                }
                span.set(i, k, acc);
            }
            for i in 0..s.dim_dst {
                let mut acc = f.zero();
                for j in 0..bs.cols {
                    acc = f.add(&acc, &f.mul(bs.get(s.dim_src + i, j), ker.get(br.cols + j, k)));
                }
                span.set(r.dim_src + i, k, acc);
            }
        }
        Ok(LinearRelation::from_span(f, r.dim_src, s.dim_dst, &span))
    }

    /// The pullback-style relation {(v, w) : f v = g w} given two maps into a
    /// common target. Equals graph(g)† ∘ graph(f).
    pub fn from_pair(f_map: &Matrix, g_map: &Matrix) -> Result<LinearRelation, Error> {
        if f_map.rows != g_map.rows {
            return Err(Error::DimensionMismatch(format!(
                "from_pair: targets have dims {} vs {}",
                f_map.rows, g_map.rows
            )));
        }
        LinearRelation::compose(&LinearRelation::graph(g_map).dagger(), &LinearRelation::graph(f_map))
    }

    pub fn is_square(&self) -> bool {
        self.dim_src == self.dim_dst
    }

    pub fn contains(&self, v: &[Scalar], w: &[Scalar]) -> bool {
        let mut vw = v.to_vec();
        vw.extend_from_slice(w);
        self.space.contains(&vw)
    }

    /// dom, img, ker and mul.
    pub fn parts(&self) -> RelationParts {
        let f = self.field();
        let b = &self.space.basis;
        let top = |j: usize| -> Vec<Scalar> { (0..self.dim_src).map(|i| b.get(i, j).clone()).collect() };
        let bot = |j: usize| -> Vec<Scalar> {
            (0..self.dim_dst)
                .map(|i| b.get(self.dim_src + i, j).clone())
                .collect()
        };
        let mut top_m = Matrix::zeros(f, self.dim_src, b.cols);
        let mut bot_m = Matrix::zeros(f, self.dim_dst, b.cols);
        for j in 0..b.cols {
            top_m.set_col(j, &top(j));
            bot_m.set_col(j, &bot(j));
        }
        let dom = Subspace::from_span(&top_m);
        let img = Subspace::from_span(&bot_m);
        // ker: elements related to 0 = top part of space ∩ (V × 0)
        let ker = Subspace::from_span(&top_m.mul(&bot_m.nullspace_matrix()));
        let mul = Subspace::from_span(&bot_m.mul(&top_m.nullspace_matrix()));
        RelationParts { dom, img, ker, mul }
    }

    /// n-fold relational power of a square relation.
    pub fn power(&self, n: usize) -> Result<LinearRelation, Error> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("power of a non-square relation".into()));
        }
        let mut acc = LinearRelation::identity(self.field(), self.dim_src);
        for _ in 0..n {
            acc = LinearRelation::compose(self, &acc)?;
        }
        Ok(acc)
    }

    /// K±, D± and D, computed from the stabilized n-th power (n = dim V).
    pub fn limits(&self) -> Result<RelationLimits, Error> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("limits of a non-square relation".into()));
        }
        let n = self.dim_src;
        let pn = self.power(n)?;
        let parts = pn.parts();
        let limits = RelationLimits {
            k_plus: parts.ker,
            k_minus: parts.mul,
            d_plus: parts.dom.clone(),
            d_minus: parts.img.clone(),
            d: parts.dom.intersect(&parts.img),
        };
        limits.check()?;
        Ok(limits)
    }

    /// Regular part: the invertible map induced on D/((K−+K+)∩D).
    pub fn regular_part(&self) -> Result<RegularPart, Error> {
        let f = self.field();
        let n = self.dim_src;
        let limits = self.limits()?;
        let d = &limits.d;
        let ksum = limits.k_minus.sum(&limits.k_plus);
        let cut = ksum.intersect(d);

        // coordinates on D, then quotient by the K-part expressed in them
        let bd = &d.basis;
        let cut_in_d = match bd.solve_matrix(&cut.basis)? {
            Some(x) => Subspace::from_span(&x),
            None => return Err(Error::InvalidInput("limit subspaces inconsistent".into())),
        };
        let q_d = quotient_map(d.dim(), &cut_in_d);
        let v_reg_dim = q_d.rows;

        // the alternative presentation must agree in dimension
        let alt = limits
            .k_minus
            .sum(&limits.d_plus)
            .intersect(&limits.d_minus.sum(&limits.k_plus));
        if alt.dim() != ksum.dim() + v_reg_dim {
            return Err(Error::InvalidInput(format!(
                "regular part dimension mismatch: (K−+D+)∩(D−+K+) has dim {} but K−+K+ has dim {} and V_reg dim {}",
                alt.dim(),
                ksum.dim(),
                v_reg_dim
            )));
        }

        // restrict the relation to D × D and push to V_reg × V_reg
        let b = &self.space.basis;
        let mut dd = Matrix::zeros(f, 2 * n, 2 * d.dim());
        for j in 0..d.dim() {
            for i in 0..n {
                dd.set(i, j, bd.get(i, j).clone());
                dd.set(n + i, d.dim() + j, bd.get(i, j).clone());
            }
        }
        let restricted = Subspace::from_span(b).intersect(&Subspace::from_span(&dd));
        // each column of the restricted basis, in D-coordinates, then to V_reg
        let rb = &restricted.basis;
        let mut span = Matrix::zeros(f, 2 * v_reg_dim, rb.cols);
        for j in 0..rb.cols {
            let top: Vec<Scalar> = (0..n).map(|i| rb.get(i, j).clone()).collect();
            let bot: Vec<Scalar> = (0..n).map(|i| rb.get(n + i, j).clone()).collect();
            let top_d = bd
                .solve(&top)?
                .ok_or_else(|| Error::InvalidInput("restricted relation leaves D".into()))?;
            let bot_d = bd
                .solve(&bot)?
                .ok_or_else(|| Error::InvalidInput("restricted relation leaves D".into()))?;
            let top_r = q_d.mul_vec(&top_d);
            let bot_r = q_d.mul_vec(&bot_d);
            for i in 0..v_reg_dim {
                span.set(i, j, top_r[i].clone());
                span.set(v_reg_dim + i, j, bot_r[i].clone());
            }
        }
        let reg_rel = LinearRelation::from_span(f, v_reg_dim, v_reg_dim, &span);

        // Lemma L:1(b): dom = img = everything, ker = mul = 0
        let parts = reg_rel.parts();
        if parts.dom.dim() != v_reg_dim
            || parts.img.dim() != v_reg_dim
            || parts.ker.dim() != 0
            || parts.mul.dim() != 0
        {
            return Err(Error::InvalidInput(format!(
                "regular part is not an isomorphism: dom {} img {} ker {} mul {}",
                parts.dom.dim(),
                parts.img.dim(),
                parts.ker.dim(),
                parts.mul.dim()
            )));
        }

        // read the matrix off the graph
        let rbb = &reg_rel.space.basis;
        let mut top_m = Matrix::zeros(f, v_reg_dim, rbb.cols);
        let mut bot_m = Matrix::zeros(f, v_reg_dim, rbb.cols);
        for j in 0..rbb.cols {
            for i in 0..v_reg_dim {
                top_m.set(i, j, rbb.get(i, j).clone());
                bot_m.set(i, j, rbb.get(v_reg_dim + i, j).clone());
            }
        }
        // columns of top_m span V_reg; map = bot ∘ top⁻¹
        let map = bot_m.mul(&top_m.inverse()?);
        let form = canonical_form(&map);
        if !form.is_invertible_class() {
            return Err(Error::InvalidInput("regular part has eigenvalue zero".into()));
        }
        Ok(RegularPart {
            dim: v_reg_dim,
            map,
            form,
        })
    }
}

impl RelationLimits {
    /// The containments plus the two exchange laws of Prop P:X.
    pub fn check(&self) -> Result<(), Error> {
        let ok = self.d_minus.contains_subspace(&self.k_minus)
            && self.d_plus.contains_subspace(&self.k_plus)
            && self.d_plus == self.d.sum(&self.k_plus)
            && self.d_minus == self.k_minus.sum(&self.d)
            && {
                let a = self.k_minus.intersect(&self.d_plus);
                let b = self.k_minus.intersect(&self.k_plus);
                let c = self.d_minus.intersect(&self.k_plus);
                a == b && b == c
            };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput("relation limit laws violated".into()))
        }
    }
}

/// The monodromy relation of a cyclic zigzag of maps: the composition
/// graph(β_m)† ∘ graph(α_m) ∘ ⋯ ∘ graph(β_1)† ∘ graph(α_1), a square relation
/// on the first odd space.
pub fn relation_from_cycle(alpha: &[Matrix], beta: &[Matrix]) -> Result<LinearRelation, Error> {
    assert_eq!(alpha.len(), beta.len());
    assert!(!alpha.is_empty());
    let f = alpha[0].field;
    let n1 = alpha[0].cols;
    let mut acc = LinearRelation::identity(f, n1);
    for (a, b) in alpha.iter().zip(beta.iter()) {
        if a.rows != b.rows {
            return Err(Error::DimensionMismatch(
                "cycle maps do not share targets".into(),
            ));
        }
        let step = LinearRelation::from_pair(a, b)?;
        acc = LinearRelation::compose(&step, &acc)?;
    }
    if acc.dim_dst != n1 {
        return Err(Error::DimensionMismatch("cycle does not close up".into()));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qf() -> Field {
        Field::Rationals
    }

    #[test]
    fn graph_and_dagger() {
        let f = qf();
        let id = LinearRelation::identity(f, 2);
        assert_eq!(id.space.dim(), 2);
        assert!(id.contains(&[f.from_i64(1), f.from_i64(2)], &[f.from_i64(1), f.from_i64(2)]));

        let m = Matrix::from_i64(f, 2, 2, &[0, 1, 1, 0]);
        let g = LinearRelation::graph(&m);
        assert_eq!(g.dagger().dagger(), g);
    }

    #[test]
    fn compose_is_functorial_on_graphs() {
        let f = Field::prime(5).unwrap();
        let a = Matrix::from_i64(f, 2, 3, &[1, 2, 0, 0, 1, 3]);
        let b = Matrix::from_i64(f, 3, 2, &[1, 0, 2, 1, 0, 4]);
        let ga = LinearRelation::graph(&a);
        let gb = LinearRelation::graph(&b);
        let comp = LinearRelation::compose(&ga, &gb).unwrap();
        assert_eq!(comp, LinearRelation::graph(&a.mul(&b)));
        // identity is neutral
        let idl = LinearRelation::identity(f, 2);
        assert_eq!(LinearRelation::compose(&idl, &ga).unwrap(), ga);
    }

    #[test]
    fn dagger_compose_contains_the_diagonal() {
        let f = Field::prime(5).unwrap();
        let m = Matrix::from_i64(f, 2, 3, &[1, 2, 0, 0, 1, 3]);
        let g = LinearRelation::graph(&m);
        let comp = LinearRelation::compose(&g.dagger(), &g).unwrap();
        // graph(M)† ∘ graph(M) relates every v to itself
        for j in 0..3 {
            let mut e = vec![f.zero(); 3];
            e[j] = f.one();
            assert!(comp.contains(&e, &e));
        }
    }

    #[test]
    fn parts_of_graph_and_full() {
        let f = qf();
        let m = Matrix::from_i64(f, 2, 3, &[1, 0, 1, 0, 0, 0]);
        let p = LinearRelation::graph(&m).parts();
        assert_eq!(p.dom, Subspace::full(f, 3));
        assert_eq!(p.mul.dim(), 0);
        assert_eq!(p.ker, Subspace::kernel(&m));

        let full = LinearRelation::full(f, 2, 3);
        let p = full.parts();
        assert_eq!(p.dom.dim(), 2);
        assert_eq!(p.img.dim(), 3);
        assert_eq!(p.ker.dim(), 2);
        assert_eq!(p.mul.dim(), 3);
    }

    #[test]
    fn limits_of_invertible_graph() {
        let f = qf();
        let t = Matrix::from_i64(f, 2, 2, &[2, 1, 0, 2]);
        let l = LinearRelation::graph(&t).limits().unwrap();
        assert_eq!(l.k_minus.dim(), 0);
        assert_eq!(l.k_plus.dim(), 0);
        assert_eq!(l.d.dim(), 2);
        let reg = LinearRelation::graph(&t).regular_part().unwrap();
        assert_eq!(reg.dim, 2);
        assert!(reg.form.same_class(&canonical_form(&t)));
    }

    #[test]
    fn zero_point_relation() {
        // R = {(0,0)} on κ: D± = 0, K± = 0, V_reg = 0
        let f = qf();
        let r = LinearRelation::from_span(f, 1, 1, &Matrix::zeros(f, 2, 0));
        let l = r.limits().unwrap();
        assert_eq!(l.d_plus.dim(), 0);
        assert_eq!(l.k_plus.dim(), 0);
        let reg = r.regular_part().unwrap();
        assert_eq!(reg.dim, 0);
    }

    #[test]
    fn worked_example_relation_has_jordan_cell_2_2() {
        // ω₁ = (3,0,0; 0,2,−1; 0,0,2; 0,0,0), ω₂ = (0,0,0; 0,1,0; 0,0,1; 0,0,0)
        let f = qf();
        let w1 = Matrix::from_i64(f, 4, 3, &[3, 0, 0, 0, 2, -1, 0, 0, 2, 0, 0, 0]);
        let w2 = Matrix::from_i64(f, 4, 3, &[0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0]);
        let r = LinearRelation::from_pair(&w1, &w2).unwrap();

        let p = r.parts();
        // dom = {v₁ = 0}, mul = {(w₁,0,0)}
        assert_eq!(p.dom.dim(), 2);
        assert!(!p.dom.contains(&[f.one(), f.zero(), f.zero()]));
        assert_eq!(p.mul.dim(), 1);
        assert!(p.mul.contains(&[f.one(), f.zero(), f.zero()]));

        let reg = r.regular_part().unwrap();
        assert_eq!(reg.dim, 2);
        let t22 = crate::canonical::jordan_cell_matrix(f, &f.from_i64(2), 2);
        assert!(reg.form.same_class(&canonical_form(&t22)));
    }

    #[test]
    fn compose_agrees_with_exhaustive_enumeration_over_gf2() {
        use rand::Rng;
        use rand::SeedableRng;
        let f = Field::prime(2).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let dv = rng.gen_range(0..=3);
            let dw = rng.gen_range(0..=3);
            let du = rng.gen_range(0..=3);
            let r = random_relation(&mut rng, f, dv, dw);
            let s = random_relation(&mut rng, f, dw, du);
            let comp = LinearRelation::compose(&s, &r).unwrap();
            // brute force over all GF(2) vectors
            for v in all_vectors(f, dv) {
                for u in all_vectors(f, du) {
                    let direct = comp.contains(&v, &u);
                    let witness = all_vectors(f, dw)
                        .into_iter()
                        .any(|w| r.contains(&v, &w) && s.contains(&w, &u));
                    assert_eq!(direct, witness);
                }
            }
        }
    }

    fn all_vectors(f: Field, n: usize) -> Vec<Vec<Scalar>> {
        (0..(1u32 << n))
            .map(|mask| {
                (0..n)
                    .map(|i| f.from_i64(((mask >> i) & 1) as i64))
                    .collect()
            })
            .collect()
    }

    fn random_relation<R: rand::Rng>(rng: &mut R, f: Field, dv: usize, dw: usize) -> LinearRelation {
        let cols = rng.gen_range(0..=(dv + dw));
        let mut span = Matrix::zeros(f, dv + dw, cols);
        for j in 0..cols {
            for i in 0..dv + dw {
                span.set(i, j, f.from_i64(rng.gen_range(0..2)));
            }
        }
        LinearRelation::from_span(f, dv, dw, &span)
    }
}
