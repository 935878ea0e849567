//! Simplicial homology over the configured field: boundary matrices with the
//! sorted-vertex orientation convention, deterministic cycle bases, and the
//! maps induced on homology by simplicial maps.

use std::collections::BTreeSet;

use crate::error::Error;
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::subspace::{quotient_map, Subspace};

/// A finite simplicial complex on vertices 0..vertex_count. Simplices are
/// stored sorted and deduplicated, closed under faces.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplicialComplex {
    pub vertex_count: usize,
    /// simplices[d] lists the d-simplices, each a strictly increasing vertex
    /// list, in lexicographic order.
    pub simplices: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    /// Build from generating simplices; faces are added automatically.
    pub fn new(vertex_count: usize, generators: &[Vec<usize>]) -> Result<SimplicialComplex, Error> {
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = Vec::new();
        let insert = |s: Vec<usize>, by_dim: &mut Vec<BTreeSet<Vec<usize>>>| {
            let d = s.len() - 1;
            while by_dim.len() <= d {
                by_dim.push(BTreeSet::new());
            }
            by_dim[d].insert(s);
        };
        for g in generators {
            if g.is_empty() {
                return Err(Error::InvalidInput("empty simplex".into()));
            }
            let mut s = g.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != g.len() {
                return Err(Error::InvalidInput(format!(
                    "simplex {g:?} has repeated vertices"
                )));
            }
            if *s.last().unwrap() >= vertex_count {
                return Err(Error::InvalidInput(format!(
                    "simplex {g:?} uses a vertex ≥ {vertex_count}"
                )));
            }
            // all nonempty subsets are faces; dimensions here are tiny
            let n = s.len();
            for mask in 1..(1u32 << n) {
                let face: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                insert(face, &mut by_dim);
            }
        }
        Ok(SimplicialComplex {
            vertex_count,
            simplices: by_dim.into_iter().map(|s| s.into_iter().collect()).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.simplices.len().saturating_sub(1)
    }

    pub fn simplices_of_dim(&self, d: usize) -> &[Vec<usize>] {
        self.simplices.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    fn index_of(&self, d: usize, s: &[usize]) -> Option<usize> {
        self.simplices
            .get(d)?
            .binary_search_by(|probe| probe.as_slice().cmp(s))
            .ok()
    }

    /// The boundary map ∂_r: C_r → C_{r−1} with ∂[v_0..v_r] = Σ (−1)^j
    /// [v_0..v̂_j..v_r] on sorted vertex lists. ∂_0 is the zero map to the
    /// trivial space (unreduced homology).
    pub fn boundary_matrix(&self, field: Field, r: usize) -> Matrix {
        let cols = self.simplices_of_dim(r);
        if r == 0 {
            return Matrix::zeros(field, 0, cols.len());
        }
        let rows = self.simplices_of_dim(r - 1);
        let mut m = Matrix::zeros(field, rows.len(), cols.len());
        for (j, s) in cols.iter().enumerate() {
            for drop in 0..s.len() {
                let face: Vec<usize> = s
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != drop)
                    .map(|(_, &v)| v)
                    .collect();
                let i = self
                    .index_of(r - 1, &face)
                    .expect("complex is closed under faces");
                let sign = field.from_i64(if drop % 2 == 0 { 1 } else { -1 });
                m.set(i, j, sign);
            }
        }
        m
    }

    /// Cycle representatives spanning H_r, deterministic: the canonical
    /// kernel basis of ∂_r extended greedily past the boundary space.
    pub fn homology_basis(&self, field: Field, r: usize) -> HomologyBasis {
        let del_r = self.boundary_matrix(field, r);
        let cycles = Subspace::kernel(&del_r);
        let boundaries = Subspace::image(&self.boundary_matrix(field, r + 1));
        // quotient classes: pick kernel basis vectors independent mod boundaries
        let q = quotient_map(cycles.ambient_dim, &boundaries);
        let mut chosen: Vec<Vec<Scalar>> = Vec::new();
        let mut reduced = Matrix::zeros(field, q.rows, 0);
        for j in 0..cycles.dim() {
            let v = cycles.basis.col(j);
            let qv = q.mul_vec(&v);
            let mut qm = Matrix::zeros(field, q.rows, 1);
            qm.set_col(0, &qv);
            let candidate = reduced.hstack(&qm);
            if candidate.rank() > reduced.rank() {
                reduced = candidate;
                chosen.push(v);
            }
        }
        let dim = chosen.len();
        let mut reps = Matrix::zeros(field, cycles.ambient_dim, dim);
        for (j, v) in chosen.iter().enumerate() {
            reps.set_col(j, v);
        }
        HomologyBasis {
            field,
            degree: r,
            representatives: reps,
            dim,
        }
    }

    /// Betti number in degree r.
    pub fn betti(&self, field: Field, r: usize) -> usize {
        let del_r = self.boundary_matrix(field, r);
        let del_r1 = self.boundary_matrix(field, r + 1);
        (del_r.cols - del_r.rank()) - del_r1.rank()
    }
}

/// A chosen basis of cycle representatives for H_r.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub field: Field,
    pub degree: usize,
    /// Columns are chains in the C_r coordinates.
    pub representatives: Matrix,
    pub dim: usize,
}

/// A simplicial map, stored as its vertex assignment.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplicialMap {
    pub vertex_map: Vec<usize>,
}

impl SimplicialMap {
    pub fn identity(n: usize) -> SimplicialMap {
        SimplicialMap {
            vertex_map: (0..n).collect(),
        }
    }

    /// Check that every simplex of `source` lands on a simplex of `target`.
    pub fn validate(
        &self,
        source: &SimplicialComplex,
        target: &SimplicialComplex,
    ) -> Result<(), Error> {
        if self.vertex_map.len() != source.vertex_count {
            return Err(Error::NotSimplicial(format!(
                "vertex map has {} entries for {} vertices",
                self.vertex_map.len(),
                source.vertex_count
            )));
        }
        if let Some(&v) = self.vertex_map.iter().find(|&&v| v >= target.vertex_count) {
            return Err(Error::NotSimplicial(format!(
                "vertex image {v} outside the target complex"
            )));
        }
        for d in 0..=source.dim() {
            for s in source.simplices_of_dim(d) {
                let mut img: Vec<usize> = s.iter().map(|&v| self.vertex_map[v]).collect();
                img.sort_unstable();
                img.dedup();
                if target.index_of(img.len() - 1, &img).is_none() {
                    return Err(Error::NotSimplicial(format!(
                        "image of {s:?} is not a simplex of the target"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The chain map C_r(source) → C_r(target): degenerate images vanish,
    /// non-degenerate ones carry the sign of the sorting permutation.
    pub fn chain_map(
        &self,
        field: Field,
        source: &SimplicialComplex,
        target: &SimplicialComplex,
        r: usize,
    ) -> Matrix {
        let src = source.simplices_of_dim(r);
        let dst = target.simplices_of_dim(r);
        let mut m = Matrix::zeros(field, dst.len(), src.len());
        for (j, s) in src.iter().enumerate() {
            let img: Vec<usize> = s.iter().map(|&v| self.vertex_map[v]).collect();
            let mut sorted = img.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                continue; // degenerate
            }
            let sign = permutation_sign(&img);
            let i = target
                .index_of(r, &sorted)
                .expect("validated simplicial map");
            m.set(i, j, field.from_i64(sign));
        }
        m
    }
}

fn permutation_sign(values: &[usize]) -> i64 {
    let mut inversions = 0;
    for a in 0..values.len() {
        for b in a + 1..values.len() {
            if values[a] > values[b] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The matrix of H_r(f) in the deterministic homology bases of source and
/// target.
pub fn induced_map(
    field: Field,
    f: &SimplicialMap,
    source: &SimplicialComplex,
    target: &SimplicialComplex,
    r: usize,
) -> Result<Matrix, Error> {
    f.validate(source, target)?;
    let src_basis = source.homology_basis(field, r);
    let dst_basis = target.homology_basis(field, r);
    let chain = f.chain_map(field, source, target, r);
    let images = chain.mul(&src_basis.representatives);
    // express each image as dst-basis combination modulo boundaries
    let boundaries = target.boundary_matrix(field, r + 1);
    let system = dst_basis.representatives.hstack(&boundaries);
    let sol = system
        .solve_matrix(&images)?
        .ok_or_else(|| Error::InvalidInput("cycle image not expressible in homology basis".into()))?;
    let mut out = Matrix::zeros(field, dst_basis.dim, src_basis.dim);
    for i in 0..dst_basis.dim {
        for j in 0..src_basis.dim {
            out.set(i, j, sol.get(i, j).clone());
        }
    }
    Ok(out)
}

/// A polygon with `n ≥ 3` edges: a simplicial circle on vertices 0..n.
pub fn polygon(n: usize) -> SimplicialComplex {
    assert!(n >= 3);
    let gens: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
    SimplicialComplex::new(n, &gens).expect("polygon is simplicial")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qf() -> Field {
        Field::Rationals
    }

    #[test]
    fn edge_boundary() {
        let k = SimplicialComplex::new(2, &[vec![0, 1]]).unwrap();
        let d1 = k.boundary_matrix(qf(), 1);
        assert_eq!(d1, Matrix::from_i64(qf(), 2, 1, &[-1, 1]));
    }

    #[test]
    fn hollow_triangle_boundary_rank() {
        let k = polygon(3);
        let d1 = k.boundary_matrix(qf(), 1);
        assert_eq!((d1.rows, d1.cols), (3, 3));
        assert_eq!(d1.rank(), 2);
        assert_eq!(k.betti(qf(), 0), 1);
        assert_eq!(k.betti(qf(), 1), 1);
    }

    #[test]
    fn boundary_of_boundary_is_zero_on_tetrahedron() {
        let k = SimplicialComplex::new(4, &[vec![0, 1, 2, 3]]).unwrap();
        for r in 1..=3 {
            let a = k.boundary_matrix(qf(), r);
            let b = k.boundary_matrix(qf(), r + 1);
            assert!(a.mul(&b).is_zero(), "∂∘∂ ≠ 0 in degree {r}");
        }
    }

    #[test]
    fn sphere_betti_numbers() {
        // boundary of the 3-simplex: all proper faces of {0,1,2,3}
        let k = SimplicialComplex::new(
            4,
            &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        )
        .unwrap();
        assert_eq!(
            (k.betti(qf(), 0), k.betti(qf(), 1), k.betti(qf(), 2)),
            (1, 0, 1)
        );
    }

    #[test]
    fn hexagon_and_disjoint_circles() {
        let hex = polygon(6);
        assert_eq!(hex.betti(qf(), 1), 1);
        assert_eq!(hex.homology_basis(qf(), 1).dim, 1);
        // point in degree 0
        let pt = SimplicialComplex::new(1, &[vec![0]]).unwrap();
        assert_eq!(pt.homology_basis(qf(), 0).dim, 1);
        // three disjoint triangles
        let gens: Vec<Vec<usize>> = (0..3)
            .flat_map(|c| {
                let o = 3 * c;
                vec![vec![o, o + 1], vec![o + 1, o + 2], vec![o, o + 2]]
            })
            .collect();
        let three = SimplicialComplex::new(9, &gens).unwrap();
        assert_eq!(three.homology_basis(qf(), 1).dim, 3);
        assert_eq!(three.betti(qf(), 0), 3);
    }

    #[test]
    fn induced_identity_and_functoriality() {
        let f = qf();
        let hex = polygon(6);
        let id = SimplicialMap::identity(6);
        assert_eq!(
            induced_map(f, &id, &hex, &hex, 1).unwrap(),
            Matrix::identity(f, 1)
        );

        // functoriality on the reflection composed with itself
        let refl = SimplicialMap {
            vertex_map: (0..6).map(|v| (6 - v) % 6).collect(),
        };
        let r1 = induced_map(f, &refl, &hex, &hex, 1).unwrap();
        let comp = SimplicialMap {
            vertex_map: (0..6).map(|v| refl.vertex_map[refl.vertex_map[v]]).collect(),
        };
        assert_eq!(
            induced_map(f, &comp, &hex, &hex, 1).unwrap(),
            r1.mul(&r1)
        );
    }

    #[test]
    fn reflection_induces_minus_one() {
        let f = qf();
        let hex = polygon(6);
        let refl = SimplicialMap {
            vertex_map: (0..6).map(|v| (6 - v) % 6).collect(),
        };
        let m = induced_map(f, &refl, &hex, &hex, 1).unwrap();
        assert_eq!(m, Matrix::from_i64(f, 1, 1, &[-1]));
    }

    #[test]
    fn doubling_map_induces_times_two() {
        let f = qf();
        let big = polygon(12);
        let hex = polygon(6);
        let double = SimplicialMap {
            vertex_map: (0..12).map(|v| v % 6).collect(),
        };
        let m = induced_map(f, &double, &big, &hex, 1).unwrap();
        assert_eq!(m, Matrix::from_i64(f, 1, 1, &[2]));
    }

    #[test]
    fn insertion_order_does_not_matter() {
        let f = qf();
        let gens: Vec<Vec<usize>> = (0..6).map(|i| vec![i, (i + 1) % 6]).collect();
        let mut shuffled = gens.clone();
        shuffled.reverse();
        shuffled.swap(0, 2);
        let a = SimplicialComplex::new(6, &gens).unwrap();
        let b = SimplicialComplex::new(6, &shuffled).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            a.homology_basis(f, 1).representatives,
            b.homology_basis(f, 1).representatives
        );
    }

    #[test]
    fn invalid_map_is_rejected() {
        let hex = polygon(6);
        let bad = SimplicialMap {
            vertex_map: vec![0, 2, 4, 0, 2, 4], // edge (0,1) ↦ {0,2}: not an edge
        };
        assert!(bad.validate(&hex, &hex).is_err());
    }
}
