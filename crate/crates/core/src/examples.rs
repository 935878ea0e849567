//! Ready-made example data: a circle-valued map on a space glued from three
//! circles, with seven critical angles. The degree-1 representation, the
//! fiber relation presented by a pair of maps into the cut space, and the
//! expected invariants are all exercised by the test suites and shipped as
//! JSON fixtures.

use std::f64::consts::{PI, TAU};

use crate::diagram::builders::{wedge_circle_diagram, WedgeDiagramSpec};
use crate::diagram::{DiagramKind, TameDiagram};
use crate::error::Error;
use crate::field::Field;
use crate::homology::{SimplicialComplex, SimplicialMap};
use crate::matrix::Matrix;
use crate::quiver::CircleRep;

/// The G_14-representation in degree 1 of the three-circles example: seven
/// critical angles, fibers alternating between two and three circles, the
/// gluing map wrapping circle 1 three times around itself and circle 3 over
/// circles 2 and 3 with degrees −1 and 2.
///
/// Its bar codes are (6,8], [2,3] and (4,5), and its monodromy is the
/// Jordan cell (2,2).
pub fn three_circles_rep(field: Field) -> CircleRep {
    let m = 7;
    let odd_dims = vec![3, 2, 3, 2, 3, 2, 3];
    let even_dims = vec![3, 3, 3, 2, 2, 2, 3];
    let tall = |f: Field| Matrix::from_i64(f, 3, 2, &[0, 0, 1, 0, 0, 1]);
    let wide = |f: Field| Matrix::from_i64(f, 2, 3, &[0, 1, 0, 0, 0, 1]);
    let glue = |f: Field| Matrix::from_i64(f, 3, 3, &[3, 0, 0, 0, 2, -1, 0, 0, 2]);
    let alpha = vec![
        Matrix::identity(field, 3),
        tall(field),
        Matrix::identity(field, 3),
        Matrix::identity(field, 2),
        wide(field),
        Matrix::identity(field, 2),
        glue(field),
    ];
    let beta = vec![
        tall(field),
        Matrix::identity(field, 3),
        tall(field),
        wide(field),
        Matrix::identity(field, 2),
        wide(field),
        Matrix::identity(field, 3),
    ];
    let rep = CircleRep {
        field,
        m,
        odd_dims,
        even_dims,
        alpha,
        beta,
    };
    rep.validate().expect("example representation is well-shaped");
    rep
}

/// The degree-0 representation of the same map: all fibers connected, so
/// every space is κ and every map the identity.
pub fn three_circles_rep_degree0(field: Field) -> CircleRep {
    CircleRep::identity_rep(field, 7, 1)
}

/// The fiber relation of the three-circles example presented by two maps
/// ω₁, ω₂: κ³ → κ⁴ into the H_1 of the cut space: R = {(v, w) : ω₁v = ω₂w}.
/// Its regular part is the Jordan cell (2,2).
pub fn three_circles_relation_maps(field: Field) -> (Matrix, Matrix) {
    let w1 = Matrix::from_i64(field, 4, 3, &[3, 0, 0, 0, 2, -1, 0, 0, 2, 0, 0, 0]);
    let w2 = Matrix::from_i64(field, 4, 3, &[0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0]);
    (w1, w2)
}

/// The full simplicial diagram of the three-circles map: wedge fibers and
/// simplicial maps realizing the matrices of `three_circles_rep` in H_1.
pub fn three_circles_diagram(field: Field) -> Result<TameDiagram, Error> {
    let id = |k: usize| -> Vec<Vec<i64>> {
        (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect()
    };
    let tall = vec![vec![0, 0], vec![1, 0], vec![0, 1]];
    let wide = vec![vec![0, 1, 0], vec![0, 0, 1]];
    let glue = vec![vec![3, 0, 0], vec![0, 2, -1], vec![0, 0, 2]];
    let critical_angles: Vec<f64> = (1..=7).map(|i| i as f64 * TAU / 7.0).collect();
    let regular_angles: Vec<f64> = critical_angles.iter().map(|t| t + PI / 7.0).collect();
    // maps_b[i] realizes β_{i+1}; maps_a[i] realizes α_{i+2 (mod 7)}
    let spec = WedgeDiagramSpec {
        critical_angles,
        regular_angles,
        x_loops: vec![3, 3, 3, 2, 2, 2, 3],
        b_matrices: vec![
            tall.clone(),
            id(3),
            tall.clone(),
            wide.clone(),
            id(2),
            wide.clone(),
            id(3),
        ],
        a_matrices: vec![tall, id(3), id(2), wide, id(2), glue, id(3)],
    };
    wedge_circle_diagram(field, &spec)
}

/// Mapping torus of the identity on a hexagon circle: the 2-torus.
pub fn torus_diagram(field: Field) -> Result<TameDiagram, Error> {
    let spec = WedgeDiagramSpec {
        critical_angles: vec![TAU],
        regular_angles: vec![TAU + PI],
        x_loops: vec![1],
        b_matrices: vec![vec![vec![1]]],
        a_matrices: vec![vec![vec![1]]],
    };
    wedge_circle_diagram(field, &spec)
}

/// Mapping torus of the hexagon reflection: the Klein bottle.
pub fn klein_diagram(field: Field) -> Result<TameDiagram, Error> {
    let spec = WedgeDiagramSpec {
        critical_angles: vec![TAU],
        regular_angles: vec![TAU + PI],
        x_loops: vec![1],
        b_matrices: vec![vec![vec![1]]],
        a_matrices: vec![vec![vec![-1]]],
    };
    wedge_circle_diagram(field, &spec)
}

/// Mapping torus of the identity on a point: the circle itself.
pub fn point_diagram(field: Field) -> Result<TameDiagram, Error> {
    let spec = WedgeDiagramSpec {
        critical_angles: vec![TAU],
        regular_angles: vec![TAU + PI],
        x_loops: vec![0],
        b_matrices: vec![vec![]],
        a_matrices: vec![vec![]],
    };
    wedge_circle_diagram(field, &spec)
}

/// The height function on a circle as a real-valued diagram: two critical
/// values with point fibers, a two-point regular fiber between them.
pub fn circle_height_diagram(field: Field) -> Result<TameDiagram, Error> {
    let point = SimplicialComplex::new(1, &[vec![0]])?;
    let two_points = SimplicialComplex::new(2, &[vec![0], vec![1]])?;
    let collapse = SimplicialMap {
        vertex_map: vec![0, 0],
    };
    let d = TameDiagram {
        kind: DiagramKind::Real,
        field,
        critical_angles: vec![0.0, PI],
        regular_angles: vec![PI / 2.0],
        fibers_x: vec![point.clone(), point],
        fibers_r: vec![two_points],
        maps_a: vec![collapse.clone()],
        maps_b: vec![collapse],
    };
    d.validate()?;
    Ok(d)
}
