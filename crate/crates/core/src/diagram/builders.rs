//! Constructing diagrams whose fibers are wedges of circles and whose maps
//! realize prescribed degree matrices on H_1. Source loops are subdivided
//! finely enough to walk each target loop the required number of times, with
//! basepoint padding, and walk directions are corrected by the orientation
//! signs of the deterministic homology bases so the induced matrices come
//! out exactly as prescribed.

use crate::error::Error;
use crate::field::Field;
use crate::homology::{SimplicialComplex, SimplicialMap};

use super::{DiagramKind, TameDiagram};

/// Edge count of every target loop.
const LOOP_LEN: usize = 6;

/// A wedge of circles with a common basepoint 0.
#[derive(Clone, Debug)]
pub struct Wedge {
    pub complex: SimplicialComplex,
    pub loop_sizes: Vec<usize>,
    offsets: Vec<usize>,
}

impl Wedge {
    pub fn new(loop_sizes: Vec<usize>) -> Wedge {
        assert!(loop_sizes.iter().all(|&l| l >= 3), "loops need ≥ 3 edges");
        let mut offsets = Vec::with_capacity(loop_sizes.len());
        let mut next = 1;
        for &l in &loop_sizes {
            offsets.push(next);
            next += l - 1;
        }
        let mut gens: Vec<Vec<usize>> = vec![vec![0]];
        for (c, &l) in loop_sizes.iter().enumerate() {
            for s in 0..l {
                gens.push(vec![
                    Self::vertex_static(&offsets, c, s, l),
                    Self::vertex_static(&offsets, c, (s + 1) % l, l),
                ]);
            }
        }
        let complex = SimplicialComplex::new(next, &gens).expect("wedge is simplicial");
        Wedge {
            complex,
            loop_sizes,
            offsets,
        }
    }

    fn vertex_static(offsets: &[usize], c: usize, s: usize, _len: usize) -> usize {
        if s == 0 {
            0
        } else {
            offsets[c] + s - 1
        }
    }

    /// Vertex at step s (0 = basepoint) along loop c.
    pub fn vertex(&self, c: usize, s: usize) -> usize {
        Self::vertex_static(&self.offsets, c, s % self.loop_sizes[c], self.loop_sizes[c])
    }

    pub fn loops(&self) -> usize {
        self.loop_sizes.len()
    }

    /// The chain of the forward traversal of loop c, in C_1 coordinates.
    fn forward_cycle(&self, field: Field) -> Vec<Vec<crate::field::Scalar>> {
        let edges = self.complex.simplices_of_dim(1);
        let index_of = |a: usize, b: usize| -> usize {
            let key = vec![a.min(b), a.max(b)];
            edges
                .binary_search_by(|e| e.as_slice().cmp(&key))
                .expect("loop edge present")
        };
        (0..self.loops())
            .map(|c| {
                let mut chain = vec![field.zero(); edges.len()];
                for s in 0..self.loop_sizes[c] {
                    let a = self.vertex(c, s);
                    let b = self.vertex(c, s + 1);
                    let idx = index_of(a, b);
                    let sign = if a < b { 1 } else { -1 };
                    chain[idx] = field.add(&chain[idx], &field.from_i64(sign));
                }
                chain
            })
            .collect()
    }

    /// For each loop, the sign relating the forward traversal to the
    /// homology basis vector, which is checked to sit at the same index.
    pub fn orientation_signs(&self, field: Field) -> Vec<i64> {
        let basis = self.complex.homology_basis(field, 1);
        assert_eq!(basis.dim, self.loops(), "wedge H_1 has one class per loop");
        let forwards = self.forward_cycle(field);
        (0..self.loops())
            .map(|c| {
                let fwd = &forwards[c];
                let col = basis.representatives.col(c);
                let plus = col == *fwd;
                let minus = col
                    .iter()
                    .zip(fwd.iter())
                    .all(|(a, b)| *a == field.neg(b));
                assert!(
                    plus || minus,
                    "homology basis of loop {c} is not ± the forward cycle"
                );
                if plus {
                    1
                } else {
                    -1
                }
            })
            .collect()
    }

    /// Loop size needed to walk the given degrees around the target wedge.
    pub fn required_size(target: &Wedge, degrees_of_one_source_loop: &[i64]) -> usize {
        let need: usize = degrees_of_one_source_loop
            .iter()
            .zip(target.loop_sizes.iter())
            .map(|(&d, &l)| d.unsigned_abs() as usize * l)
            .sum();
        need.max(3)
    }
}

/// A simplicial map between wedges walking loop c of the source around the
/// target loops with the given degrees (`walk[t][c]` turns around loop t).
pub fn wedge_map(src: &Wedge, dst: &Wedge, walk: &[Vec<i64>]) -> SimplicialMap {
    assert_eq!(walk.len(), dst.loops());
    let mut vertex_map = vec![usize::MAX; src.complex.vertex_count];
    vertex_map[0] = 0;
    for c in 0..src.loops() {
        let size = src.loop_sizes[c];
        let mut path = vec![0usize];
        for t in 0..dst.loops() {
            let d = walk[t][c];
            for _ in 0..d.unsigned_abs() {
                if d > 0 {
                    for s in 1..=dst.loop_sizes[t] {
                        path.push(dst.vertex(t, s % dst.loop_sizes[t]));
                    }
                } else {
                    for s in (1..dst.loop_sizes[t]).rev() {
                        path.push(dst.vertex(t, s));
                    }
                    path.push(0);
                }
            }
        }
        assert!(path.len() <= size + 1, "source loop {c} too small for its walk");
        while path.len() < size + 1 {
            path.push(0);
        }
        debug_assert_eq!(path[size], 0);
        for s in 1..size {
            vertex_map[src.vertex(c, s)] = path[s];
        }
    }
    SimplicialMap { vertex_map }
}

/// Realize an integer matrix on H_1 between wedges: `matrix[t][c]` is the
/// required induced-map entry in the deterministic homology bases.
pub fn wedge_map_realizing(src: &Wedge, dst: &Wedge, matrix: &[Vec<i64>]) -> SimplicialMap {
    // orientation bookkeeping is canonical over Q and reduces correctly to
    // every prime field
    let s_src = src.orientation_signs(Field::Rationals);
    let s_dst = dst.orientation_signs(Field::Rationals);
    let walk: Vec<Vec<i64>> = (0..dst.loops())
        .map(|t| {
            (0..src.loops())
                .map(|c| matrix[t][c] * s_src[c] * s_dst[t])
                .collect()
        })
        .collect();
    wedge_map(src, dst, &walk)
}

/// Specification of an angle-valued diagram whose fibers are wedges and
/// whose maps realize the given H_1 matrices.
pub struct WedgeDiagramSpec {
    pub critical_angles: Vec<f64>,
    pub regular_angles: Vec<f64>,
    /// Loop count of each critical fiber X[i].
    pub x_loops: Vec<usize>,
    /// maps_b[i]: R[i] → X[i], as an H_1 integer matrix (rows = X[i] loops).
    pub b_matrices: Vec<Vec<Vec<i64>>>,
    /// maps_a[i]: R[i] → X[i+1 mod m], same convention.
    pub a_matrices: Vec<Vec<Vec<i64>>>,
}

/// Build the circle-kind diagram. The loop counts of the regular fibers are
/// the column counts of the prescribed matrices; their loop sizes are chosen
/// large enough for both walks.
pub fn wedge_circle_diagram(field: Field, spec: &WedgeDiagramSpec) -> Result<TameDiagram, Error> {
    let m = spec.x_loops.len();
    if spec.critical_angles.len() != m
        || spec.regular_angles.len() != m
        || spec.a_matrices.len() != m
        || spec.b_matrices.len() != m
    {
        return Err(Error::InvalidInput("wedge spec arrays must all have length m".into()));
    }
    let xs: Vec<Wedge> = spec
        .x_loops
        .iter()
        .map(|&k| Wedge::new(vec![LOOP_LEN; k]))
        .collect();
    let mut fibers_r = Vec::with_capacity(m);
    let mut maps_a = Vec::with_capacity(m);
    let mut maps_b = Vec::with_capacity(m);
    for i in 0..m {
        let b = &spec.b_matrices[i];
        let a = &spec.a_matrices[i];
        let r_loops = b.first().map_or_else(
            || a.first().map_or(0, Vec::len),
            Vec::len,
        );
        let up = (i + 1) % m;
        if b.len() != spec.x_loops[i] || a.len() != spec.x_loops[up] {
            return Err(Error::InvalidInput(format!(
                "matrix shapes at position {i} do not match the fiber loop counts"
            )));
        }
        let sizes: Vec<usize> = (0..r_loops)
            .map(|c| {
                let col_a: Vec<i64> = a.iter().map(|row| row[c]).collect();
                let col_b: Vec<i64> = b.iter().map(|row| row[c]).collect();
                Wedge::required_size(&xs[up], &col_a).max(Wedge::required_size(&xs[i], &col_b))
            })
            .collect();
        let r = Wedge::new(sizes);
        maps_a.push(wedge_map_realizing(&r, &xs[up], a));
        maps_b.push(wedge_map_realizing(&r, &xs[i], b));
        fibers_r.push(r.complex);
    }
    let d = TameDiagram {
        kind: DiagramKind::Circle,
        field,
        critical_angles: spec.critical_angles.clone(),
        regular_angles: spec.regular_angles.clone(),
        fibers_x: xs.into_iter().map(|w| w.complex).collect(),
        fibers_r,
        maps_a,
        maps_b,
    };
    d.validate()?;
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::induced_map;
    use crate::matrix::Matrix;

    #[test]
    fn wedge_complexes_have_expected_homology() {
        let q = Field::Rationals;
        let w = Wedge::new(vec![6, 6, 6]);
        assert_eq!(w.complex.betti(q, 0), 1);
        assert_eq!(w.complex.betti(q, 1), 3);
        let pt = Wedge::new(vec![]);
        assert_eq!(pt.complex.betti(q, 0), 1);
        assert_eq!(pt.complex.betti(q, 1), 0);
    }

    #[test]
    fn realized_maps_induce_the_prescribed_matrices() {
        let q = Field::Rationals;
        let dst = Wedge::new(vec![6, 6, 6]);
        let spec = vec![vec![3, 0], vec![0, -1], vec![2, 2]];
        let sizes: Vec<usize> = (0..2)
            .map(|c| {
                let col: Vec<i64> = spec.iter().map(|row| row[c]).collect();
                Wedge::required_size(&dst, &col)
            })
            .collect();
        let src = Wedge::new(sizes);
        let f = wedge_map_realizing(&src, &dst, &spec);
        let got = induced_map(q, &f, &src.complex, &dst.complex, 1).unwrap();
        let want = Matrix::from_i64(q, 3, 2, &[3, 0, 0, -1, 2, 2]);
        assert_eq!(got, want);
        // and in degree zero both connected wedges give the identity
        let got0 = induced_map(q, &f, &src.complex, &dst.complex, 0).unwrap();
        assert_eq!(got0, Matrix::identity(q, 1));
    }

    #[test]
    fn realized_maps_reduce_correctly_mod_p() {
        let f2 = Field::prime(2).unwrap();
        let dst = Wedge::new(vec![6]);
        let src = Wedge::new(vec![Wedge::required_size(&dst, &[-1])]);
        let map = wedge_map_realizing(&src, &dst, &[vec![-1]]);
        let got = induced_map(f2, &map, &src.complex, &dst.complex, 1).unwrap();
        assert_eq!(got, Matrix::identity(f2, 1));
    }
}
