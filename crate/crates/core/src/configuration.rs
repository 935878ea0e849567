//! Configurations of bar-code endpoints: closed r-codes and open
//! (r−1)-codes collected as points of the plane (real-valued maps) or of the
//! quotient torus R²/Z (angle-valued maps), together with their presentation
//! as a monic complex polynomial. This is the only floating-point corner of
//! the crate; the polynomial tolerance is 1e−9 relative.

use num::complex::Complex64;
use std::f64::consts::TAU;

use crate::diagram::{DiagramKind, InvariantReport};

/// Relative tolerance for the polynomial/root round trip.
pub const POLY_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ConfigKind {
    Plane,
    TorusQuotient,
}

/// The multiset of encoded points: closed [x, y] ↦ (x, y) on or above the
/// diagonal, open (a, b) ↦ (b, a) strictly below it. Torus points are
/// reduced by (x, y) ↦ (x − 2πn, y − 2πn) until x ∈ [0, 2π).
#[derive(Clone, Debug, PartialEq)]
pub struct Configuration {
    pub degree: usize,
    pub kind: ConfigKind,
    pub points: Vec<(f64, f64)>,
}

/// Monic polynomial with the encoded points as roots; coefficients ascending,
/// leading coefficient 1.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfigPolynomial {
    pub coeffs: Vec<Complex64>,
}

/// Collect the configuration of degree r from an analyzed report.
pub fn configuration(report: &InvariantReport, r: usize) -> Configuration {
    let kind = match report.kind {
        DiagramKind::Circle => ConfigKind::TorusQuotient,
        DiagramKind::Real => ConfigKind::Plane,
    };
    let mut points = Vec::new();
    for code in report.codes_of_degree(r) {
        if code.is_closed() {
            let a = report.to_angle_interval(code);
            points.push(reduce(kind, (a.left, a.right)));
        }
    }
    if let Some(r1) = r.checked_sub(1) {
        for code in report.codes_of_degree(r1) {
            if code.is_open() {
                let a = report.to_angle_interval(code);
                points.push(reduce(kind, (a.right, a.left)));
            }
        }
    }
    points.sort_by(|p, q| {
        p.0.total_cmp(&q.0).then(p.1.total_cmp(&q.1))
    });
    Configuration {
        degree: r,
        kind,
        points,
    }
}

fn reduce(kind: ConfigKind, (x, y): (f64, f64)) -> (f64, f64) {
    match kind {
        ConfigKind::Plane => (x, y),
        ConfigKind::TorusQuotient => {
            let n = (x / TAU).floor();
            (x - n * TAU, y - n * TAU)
        }
    }
}

impl Configuration {
    /// The encoded roots in C: x + iy for the plane, e^{(y−x)+ix} for the
    /// torus (the diagonal becomes the unit circle).
    pub fn roots(&self) -> Vec<Complex64> {
        self.points
            .iter()
            .map(|&(x, y)| match self.kind {
                ConfigKind::Plane => Complex64::new(x, y),
                ConfigKind::TorusQuotient => (y - x).exp() * Complex64::new(x.cos(), x.sin()),
            })
            .collect()
    }

    /// Expand the monic polynomial whose roots are the encoded points.
    pub fn polynomial(&self) -> ConfigPolynomial {
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for root in self.roots() {
            // multiply by (z − root)
            let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * root;
            }
            coeffs = next;
        }
        ConfigPolynomial { coeffs }
    }
}

impl ConfigPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Largest coefficient magnitude, the scale for the relative tolerance.
    pub fn scale(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(1.0, f64::max)
    }

    /// Every configured root evaluates to ~0 at the stated tolerance.
    pub fn verify_roots(&self, config: &Configuration) -> bool {
        config.roots().iter().all(|&z| {
            let local = self.scale() * (1.0 + z.norm()).powi(self.degree() as i32);
            self.eval(z).norm() <= POLY_TOLERANCE * local
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_plane_point() {
        let c = Configuration {
            degree: 1,
            kind: ConfigKind::Plane,
            points: vec![(1.0, 2.0)],
        };
        let p = c.polynomial();
        // z − (1 + 2i)
        assert_eq!(p.degree(), 1);
        assert!((p.coeffs[0] - Complex64::new(-1.0, -2.0)).norm() < 1e-15);
        assert!((p.coeffs[1] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(p.verify_roots(&c));
    }

    #[test]
    fn conjugate_points_give_real_coefficients() {
        let c = Configuration {
            degree: 1,
            kind: ConfigKind::Plane,
            points: vec![(1.0, 2.0), (1.0, -2.0)],
        };
        let p = c.polynomial();
        assert!(p.coeffs.iter().all(|z| z.im.abs() < 1e-12));
        assert!(p.verify_roots(&c));
    }

    #[test]
    fn diagonal_points_land_on_the_unit_circle() {
        let c = Configuration {
            degree: 1,
            kind: ConfigKind::TorusQuotient,
            points: vec![(1.25, 1.25)],
        };
        let r = c.roots();
        assert!((r[0].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn torus_reduction_is_shift_invariant() {
        let a = reduce(ConfigKind::TorusQuotient, (1.0 + TAU, 2.5 + TAU));
        let b = reduce(ConfigKind::TorusQuotient, (1.0, 2.5));
        assert!((a.0 - b.0).abs() < 1e-12 && (a.1 - b.1).abs() < 1e-12);
    }

    #[test]
    fn empty_configuration_gives_the_unit_polynomial() {
        let c = Configuration {
            degree: 3,
            kind: ConfigKind::Plane,
            points: vec![],
        };
        let p = c.polynomial();
        assert_eq!(p.coeffs, vec![Complex64::new(1.0, 0.0)]);
    }
}
