//! The tame-map front end: fiber data over critical and regular values,
//! the representations it induces in each homology degree, and the evaluator
//! for the homological quantities those determine.
//!
//! A diagram stores, 0-indexed, the critical fibers `fibers_x[i]` at
//! `critical_angles[i]` and the regular fibers `fibers_r[i]` at
//! `regular_angles[i]`, with simplicial maps `maps_b[i]: R[i] → X[i]` (down)
//! and `maps_a[i]: R[i] → X[i+1 mod m]` (up; for the real kind only
//! i ≤ m−2). Angles are metadata: all computations run on indices.

pub mod builders;
mod checks;

pub use checks::{cross_validate, CheckResult};

use crate::error::Error;
use crate::field::{Field, Scalar};
use crate::homology::{induced_map, SimplicialComplex, SimplicialMap};
use crate::quiver::{BarCode, CircleRep, Decomposition, ZRep};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DiagramKind {
    Real,
    Circle,
}

#[derive(Clone, Debug)]
pub struct TameDiagram {
    pub kind: DiagramKind,
    pub field: Field,
    pub critical_angles: Vec<f64>,
    pub regular_angles: Vec<f64>,
    pub fibers_x: Vec<SimplicialComplex>,
    pub fibers_r: Vec<SimplicialComplex>,
    pub maps_a: Vec<SimplicialMap>,
    pub maps_b: Vec<SimplicialMap>,
}

/// The representation a diagram induces in one homology degree.
#[derive(Clone, Debug)]
pub enum Rep {
    Circle(CircleRep),
    Line(ZRep),
}

impl Rep {
    pub fn decompose(&self) -> Result<Decomposition, Error> {
        match self {
            Rep::Circle(r) => r.decompose(),
            Rep::Line(r) => r.decompose(),
        }
    }

    pub fn dker_dcoker(&self) -> (usize, usize) {
        match self {
            Rep::Circle(r) => r.dker_dcoker(),
            Rep::Line(r) => r.dker_dcoker(),
        }
    }

    pub fn twisted_dker_dcoker(&self, u: &Scalar) -> Result<(usize, usize), Error> {
        match self {
            Rep::Circle(r) => Ok(r.twist(u)?.dker_dcoker()),
            Rep::Line(_) => Err(Error::InvalidInput(
                "twisted coefficients need an angle-valued diagram".into(),
            )),
        }
    }
}

/// Everything computed per degree.
#[derive(Clone, Debug)]
pub struct DegreeReport {
    pub degree: usize,
    pub rep: Rep,
    pub decomposition: Decomposition,
}

/// The full invariant report of a diagram.
#[derive(Clone, Debug)]
pub struct InvariantReport {
    pub kind: DiagramKind,
    pub field: Field,
    pub m: usize,
    pub critical_angles: Vec<f64>,
    pub regular_angles: Vec<f64>,
    pub degrees: Vec<DegreeReport>,
    /// dim H_r(X) via the kernel/cokernel splitting, r = 0..
    pub betti: Vec<usize>,
    /// N_r = ♯closed_r + ♯open_{r−1}, r = 0..
    pub novikov: Vec<usize>,
}

/// One endpoint-converted interval for reporting: angles instead of indices.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AngleInterval {
    pub left: f64,
    pub right: f64,
    pub left_closed: bool,
    pub right_closed: bool,
}

/// The three level-interval dimensions of a window [a, b] on the cyclic
/// cover: homology of the slab, its image in the homology of the cover, and
/// its image in the homology of the base. Both Jordan counting conventions
/// are carried along.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntervalDims {
    pub slab: usize,
    pub into_cover: usize,
    pub into_base: usize,
    pub jordan_total_dim: usize,
    pub jordan_lambda1_cells: usize,
}

impl TameDiagram {
    pub fn m(&self) -> usize {
        self.fibers_x.len()
    }

    pub fn validate(&self) -> Result<(), Error> {
        let m = self.m();
        if m == 0 {
            return Err(Error::InvalidInput("diagram needs at least one critical value".into()));
        }
        let want_r = match self.kind {
            DiagramKind::Circle => m,
            DiagramKind::Real => m - 1,
        };
        if self.critical_angles.len() != m
            || self.regular_angles.len() != want_r
            || self.fibers_r.len() != want_r
            || self.maps_a.len() != want_r
            || self.maps_b.len() != want_r
        {
            return Err(Error::InvalidInput(format!(
                "diagram arrays inconsistent: {m} critical fibers need {want_r} regular fibers and maps"
            )));
        }
        let th = &self.critical_angles;
        let t = &self.regular_angles;
        if th.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput("critical values must be strictly increasing".into()));
        }
        match self.kind {
            DiagramKind::Circle => {
                if th[0] <= 0.0 || th[m - 1] > std::f64::consts::TAU {
                    return Err(Error::InvalidInput(
                        "critical angles must lie in (0, 2π]".into(),
                    ));
                }
                for i in 0..m {
                    let lo = th[i];
                    let hi = if i + 1 < m {
                        th[i + 1]
                    } else {
                        th[0] + std::f64::consts::TAU
                    };
                    if !(t[i] > lo && t[i] < hi) {
                        return Err(Error::InvalidInput(format!(
                            "regular angle t_{} = {} does not interleave ({lo}, {hi})",
                            i + 1,
                            t[i]
                        )));
                    }
                }
            }
            DiagramKind::Real => {
                for i in 0..m - 1 {
                    if !(t[i] > th[i] && t[i] < th[i + 1]) {
                        return Err(Error::InvalidInput(format!(
                            "regular value t_{} = {} does not interleave",
                            i + 1,
                            t[i]
                        )));
                    }
                }
            }
        }
        for i in 0..want_r {
            self.maps_b[i].validate(&self.fibers_r[i], &self.fibers_x[i])?;
            let up_target = match self.kind {
                DiagramKind::Circle => (i + 1) % m,
                DiagramKind::Real => i + 1,
            };
            self.maps_a[i].validate(&self.fibers_r[i], &self.fibers_x[up_target])?;
        }
        Ok(())
    }

    pub fn max_fiber_dim(&self) -> usize {
        self.fibers_x
            .iter()
            .chain(self.fibers_r.iter())
            .map(SimplicialComplex::dim)
            .max()
            .unwrap_or(0)
    }

    /// The quiver representation in homology degree r.
    pub fn build_representation(&self, r: usize) -> Result<Rep, Error> {
        let f = self.field;
        let m = self.m();
        match self.kind {
            DiagramKind::Circle => {
                let even_dims: Vec<usize> =
                    (0..m).map(|j| self.fibers_x[j].homology_basis(f, r).dim).collect();
                let odd_dims: Vec<usize> = (0..m)
                    .map(|j| self.fibers_r[(j + m - 1) % m].homology_basis(f, r).dim)
                    .collect();
                let mut alpha = Vec::with_capacity(m);
                let mut beta = Vec::with_capacity(m);
                for j in 0..m {
                    let k = (j + m - 1) % m;
                    alpha.push(induced_map(f, &self.maps_a[k], &self.fibers_r[k], &self.fibers_x[j], r)?);
                    beta.push(induced_map(
                        f,
                        &self.maps_b[j],
                        &self.fibers_r[j],
                        &self.fibers_x[j],
                        r,
                    )?);
                }
                let rep = CircleRep {
                    field: f,
                    m,
                    odd_dims,
                    even_dims,
                    alpha,
                    beta,
                };
                rep.validate()?;
                Ok(Rep::Circle(rep))
            }
            DiagramKind::Real => {
                let even_dims: Vec<usize> =
                    (0..m).map(|j| self.fibers_x[j].homology_basis(f, r).dim).collect();
                let odd_dims: Vec<usize> =
                    (0..m - 1).map(|k| self.fibers_r[k].homology_basis(f, r).dim).collect();
                let mut alpha = Vec::with_capacity(m - 1);
                let mut beta = Vec::with_capacity(m - 1);
                for k in 0..m - 1 {
                    alpha.push(induced_map(
                        f,
                        &self.maps_a[k],
                        &self.fibers_r[k],
                        &self.fibers_x[k + 1],
                        r,
                    )?);
                    beta.push(induced_map(f, &self.maps_b[k], &self.fibers_r[k], &self.fibers_x[k], r)?);
                }
                let rep = ZRep {
                    field: f,
                    lo: 1,
                    hi: m as i64,
                    even_dims,
                    odd_dims,
                    alpha,
                    beta,
                };
                rep.validate()?;
                Ok(Rep::Line(rep))
            }
        }
    }

    /// Decompose every degree from 0 through max fiber dimension + 1 and
    /// assemble the derived numbers.
    pub fn analyze(&self) -> Result<InvariantReport, Error> {
        self.validate()?;
        let max_deg = self.max_fiber_dim() + 1;
        let mut degrees = Vec::with_capacity(max_deg + 1);
        for r in 0..=max_deg {
            let rep = self.build_representation(r)?;
            let decomposition = rep.decompose()?;
            degrees.push(DegreeReport {
                degree: r,
                rep,
                decomposition,
            });
        }
        let mut report = InvariantReport {
            kind: self.kind,
            field: self.field,
            m: self.m(),
            critical_angles: self.critical_angles.clone(),
            regular_angles: self.regular_angles.clone(),
            degrees,
            betti: Vec::new(),
            novikov: Vec::new(),
        };
        report.betti = (0..=max_deg)
            .map(|r| report.space_homology(r, &self.field.one()))
            .collect::<Result<_, _>>()?;
        report.novikov = (0..=max_deg).map(|r| report.novikov_number(r)).collect();
        Ok(report)
    }
}

impl InvariantReport {
    pub fn degree(&self, r: usize) -> Option<&DegreeReport> {
        self.degrees.get(r)
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.len() - 1
    }

    /// dim H_r(X; uξ): coker of the twisted block matrix in degree r plus
    /// ker in degree r−1. For u = 1 this is the Betti number.
    pub fn space_homology(&self, r: usize, u: &Scalar) -> Result<usize, Error> {
        if self.field.is_zero(u) {
            return Err(Error::InvalidInput("twist by zero".into()));
        }
        let untwisted = self.field.is_one(u);
        let coker = match self.degree(r) {
            None => 0,
            Some(d) => {
                if untwisted {
                    d.rep.dker_dcoker().1
                } else {
                    d.rep.twisted_dker_dcoker(u)?.1
                }
            }
        };
        let ker = match r.checked_sub(1).and_then(|r1| self.degree(r1)) {
            None => 0,
            Some(d) => {
                if untwisted {
                    d.rep.dker_dcoker().0
                } else {
                    d.rep.twisted_dker_dcoker(u)?.0
                }
            }
        };
        Ok(coker + ker)
    }

    /// N_r = ♯closed bar codes in degree r + ♯open bar codes in degree r−1.
    pub fn novikov_number(&self, r: usize) -> usize {
        let closed = self.degree(r).map_or(0, |d| d.decomposition.count_closed());
        let open = r
            .checked_sub(1)
            .and_then(|r1| self.degree(r1))
            .map_or(0, |d| d.decomposition.count_open());
        closed + open
    }

    /// The Novikov summary per degree: free rank over the Laurent ring plus
    /// the monodromy canonical form of the torsion part.
    pub fn novikov_summary(&self, r: usize) -> (usize, Option<&crate::canonical::EndoCanonicalForm>) {
        (
            self.novikov_number(r),
            self.degree(r).map(|d| &d.decomposition.monodromy.form),
        )
    }

    /// Number of split Jordan cells with eigenvalue 1 in degree r.
    pub fn jordan_unit_cells(&self, r: usize) -> usize {
        self.degree(r)
            .map_or(0, |d| d.decomposition.cells_with_eigenvalue(&self.field.one()))
    }

    /// Doubled-coordinate position of an angle on the (lifted) value line:
    /// 2l for the l-th critical lift, 2l+1 strictly between lifts l and l+1.
    pub fn angle_position(&self, theta: f64) -> i64 {
        let th = &self.critical_angles;
        let m = self.m as i64;
        match self.kind {
            DiagramKind::Real => {
                let mut l = 0i64;
                for (i, &c) in th.iter().enumerate() {
                    if c <= theta {
                        l = i as i64 + 1;
                    }
                }
                if l >= 1 && th[(l - 1) as usize] == theta {
                    2 * l
                } else {
                    2 * l + 1
                }
            }
            DiagramKind::Circle => {
                let tau = std::f64::consts::TAU;
                let lift = |l: i64| -> f64 {
                    th[(l - 1).rem_euclid(m) as usize] + tau * ((l - 1).div_euclid(m)) as f64
                };
                // largest l with lift(l) ≤ θ
                let mut l = ((theta - th[0]) / tau).floor() as i64 * m - m;
                while lift(l + 1) <= theta {
                    l += 1;
                }
                if lift(l) == theta {
                    2 * l
                } else {
                    2 * l + 1
                }
            }
        }
    }

    /// dim H_r(X_θ) from the bar codes and the Jordan part.
    pub fn fiber_dim(&self, theta: f64, r: usize) -> usize {
        let Some(d) = self.degree(r) else { return 0 };
        let q = self.angle_position(theta);
        match self.kind {
            DiagramKind::Circle => {
                let jordan = d.decomposition.monodromy.dim();
                d.decomposition
                    .barcodes
                    .iter()
                    .map(|c| c.coverage_mod(q, self.m))
                    .sum::<usize>()
                    + jordan
            }
            DiagramKind::Real => d
                .decomposition
                .barcodes
                .iter()
                .filter(|c| c.support_min() <= q && q <= c.support_max())
                .count(),
        }
    }

    /// Convert a bar code of this report into angle endpoints.
    pub fn to_angle_interval(&self, code: &BarCode) -> AngleInterval {
        let tau = std::f64::consts::TAU;
        let m = self.m as i64;
        let angle_of = |l: i64| -> f64 {
            match self.kind {
                DiagramKind::Real => self.critical_angles[(l - 1) as usize],
                DiagramKind::Circle => {
                    self.critical_angles[(l - 1).rem_euclid(m) as usize]
                        + tau * ((l - 1).div_euclid(m)) as f64
                }
            }
        };
        AngleInterval {
            left: angle_of(code.left),
            right: angle_of(code.right),
            left_closed: code.left_closed,
            right_closed: code.right_closed,
        }
    }

    /// The level-interval dimensions over the window [a, b] (angles on the
    /// lifted line; for the real kind, plain values).
    pub fn interval_dims(&self, a: f64, b: f64, r: usize) -> Result<IntervalDims, Error> {
        if a > b {
            return Err(Error::InvalidInput("interval needs a ≤ b".into()));
        }
        let pa = self.angle_position(a);
        let pb = self.angle_position(b);
        Ok(self.interval_dims_positions(pa, pb, r))
    }

    /// Census at doubled-coordinate window positions; exact.
    pub fn interval_dims_positions(&self, pa: i64, pb: i64, r: usize) -> IntervalDims {
        let jordan_total = self
            .degree(r)
            .map_or(0, |d| d.decomposition.monodromy.dim());
        let jordan_lambda1 = self.jordan_unit_cells(r);

        // counts over translates of the degree-r codes
        let mut slab_closed = 0usize;
        let mut cover_closed = 0usize;
        let mut base_closed = 0usize;
        if let Some(d) = self.degree(r) {
            for code in &d.decomposition.barcodes {
                let mut any_meets = false;
                for t in self.translate_range(code, pa, pb) {
                    let shifted = code.translate(t * self.m as i64);
                    if let Some((_, _, lc, rc)) = clip_positions(&shifted, pa, pb) {
                        any_meets = true;
                        if lc && rc {
                            slab_closed += 1;
                        }
                        if code.is_closed() {
                            cover_closed += 1;
                        }
                    }
                }
                if any_meets && code.is_closed() {
                    base_closed += 1;
                }
            }
        }

        // open (r−1)-codes fully inside the open window
        let mut slab_open = 0usize;
        let mut base_open = 0usize;
        if let Some(d) = r.checked_sub(1).and_then(|r1| self.degree(r1)) {
            for code in &d.decomposition.barcodes {
                if !code.is_open() {
                    continue;
                }
                let mut any_inside = false;
                for t in self.translate_range(code, pa, pb) {
                    let shifted = code.translate(t * self.m as i64);
                    if let Some((lo, hi, lc, rc)) = clip_positions(&shifted, pa, pb) {
                        // unclipped and still open
                        if !lc && !rc && lo == 2 * shifted.left && hi == 2 * shifted.right {
                            slab_open += 1;
                            any_inside = true;
                        }
                    }
                }
                if any_inside {
                    base_open += 1;
                }
            }
        }

        IntervalDims {
            slab: slab_closed + jordan_total + slab_open,
            into_cover: cover_closed + jordan_total + slab_open,
            into_base: base_closed + base_open + jordan_lambda1,
            jordan_total_dim: jordan_total,
            jordan_lambda1_cells: jordan_lambda1,
        }
    }

    fn translate_range(&self, code: &BarCode, pa: i64, pb: i64) -> std::ops::RangeInclusive<i64> {
        match self.kind {
            DiagramKind::Real => 0..=0,
            DiagramKind::Circle => {
                let period = 2 * self.m as i64;
                let t_min = num::Integer::div_ceil(&(pa - code.support_max()), &period);
                let t_max = (pb - code.support_min()).div_euclid(period);
                t_min..=t_max
            }
        }
    }

    /// The point-configuration encoding and the twisted-homology evaluator
    /// live in the `configuration` module; decomposition data is public here.
    pub fn codes_of_degree(&self, r: usize) -> &[BarCode] {
        self.degree(r)
            .map(|d| d.decomposition.barcodes.as_slice())
            .unwrap_or(&[])
    }
}

/// Clip a code's real interval to the closed window [pa, pb] in doubled
/// coordinates. Returns (left, right, left_closed, right_closed) of the
/// intersection or None when empty. A clipped end is closed: the window
/// boundary behaves as an honorary critical value of the slab.
fn clip_positions(code: &BarCode, pa: i64, pb: i64) -> Option<(i64, i64, bool, bool)> {
    let l = 2 * code.left;
    let r = 2 * code.right;
    let (a, lc) = if l >= pa { (l, code.left_closed) } else { (pa, true) };
    let (b, rc) = if r <= pb { (r, code.right_closed) } else { (pb, true) };
    if a < b || (a == b && lc && rc) {
        Some((a, b, lc, rc))
    } else {
        None
    }
}

/// The Betti numbers of one fiber, for shaping reports.
pub fn fiber_betti(field: Field, k: &SimplicialComplex, max_deg: usize) -> Vec<usize> {
    (0..=max_deg).map(|r| k.betti(field, r)).collect()
}

/// Twisted-coefficient evaluation (kept separate so the CLI can expose it
/// without re-analyzing): dim H_r(X; uξ) for every degree of the report.
pub fn twisted_homology(report: &InvariantReport, u: &Scalar) -> Result<Vec<usize>, Error> {
    (0..=report.max_degree())
        .map(|r| report.space_homology(r, u))
        .collect()
}
