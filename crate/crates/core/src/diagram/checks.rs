//! Internal consistency checks run over a full report: the two monodromy
//! routes, the kernel/cokernel censuses, per-vertex fiber dimensions and the
//! Betti/Novikov bookkeeping identity. Failures are results, not errors.

use crate::error::Error;
use crate::field::Field;
use crate::relation::relation_from_cycle;

use super::{DiagramKind, InvariantReport, Rep, TameDiagram};

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn of(name: String, passed: bool, detail: String) -> CheckResult {
        CheckResult {
            name,
            passed,
            detail,
        }
    }
}

/// Run every named check; the diagram is consistent iff all pass.
pub fn cross_validate(d: &TameDiagram, report: &InvariantReport) -> Result<Vec<CheckResult>, Error> {
    let mut out = Vec::new();
    let f = report.field;

    for deg in &report.degrees {
        let r = deg.degree;
        let dec = &deg.decomposition;

        // the regular part of the fiber relation must match the quiver
        // monodromy (invariant-factor equality)
        if let Rep::Circle(rep) = &deg.rep {
            let rel = relation_from_cycle(&rep.alpha, &rep.beta)?;
            match rel.regular_part() {
                Ok(reg) => {
                    let ok = reg.form.same_class(&dec.monodromy.form);
                    out.push(CheckResult::of(
                        format!("monodromy-relation-route[{r}]"),
                        ok,
                        format!(
                            "relation route dim {}, quiver route dim {}",
                            reg.dim,
                            dec.monodromy.dim()
                        ),
                    ));
                }
                Err(e) => out.push(CheckResult::of(
                    format!("monodromy-relation-route[{r}]"),
                    false,
                    format!("regular part failed: {e}"),
                )),
            }

            // kernel/cokernel census of the twisted block matrices
            for u_int in 1..=3i64 {
                if let Field::Prime(p) = f {
                    if (u_int as u64) >= p {
                        continue;
                    }
                }
                let u = f.from_i64(u_int);
                let u_inv = f.inv(&u)?;
                let (dker, dcoker) = rep.twist(&u)?.dker_dcoker();
                let (want_ker, want_coker) = dec.census(&u_inv);
                out.push(CheckResult::of(
                    format!("kernel-census[{r},u={u_int}]"),
                    (dker, dcoker) == (want_ker, want_coker),
                    format!(
                        "ranks give ker {dker} coker {dcoker}, census gives ker {want_ker} coker {want_coker}"
                    ),
                ));
            }
        }

        // fiber dimensions at every sample angle
        let mut ok = true;
        let mut detail = String::new();
        let angles = report
            .critical_angles
            .iter()
            .chain(report.regular_angles.iter());
        for &theta in angles {
            let from_codes = report.fiber_dim(theta, r);
            let actual = match &deg.rep {
                Rep::Circle(rep) => {
                    let q = report.angle_position(theta);
                    if q.rem_euclid(2) == 0 {
                        rep.even_dim_at(q.div_euclid(2))
                    } else {
                        rep.odd_dim_at((q + 1).div_euclid(2))
                    }
                }
                Rep::Line(rep) => {
                    let q = report.angle_position(theta);
                    if q.rem_euclid(2) == 0 {
                        rep.even_dim_at(q.div_euclid(2))
                    } else {
                        rep.odd_dim_at((q + 1).div_euclid(2))
                    }
                }
            };
            if from_codes != actual {
                ok = false;
                detail = format!("at angle {theta}: codes give {from_codes}, space has dim {actual}");
                break;
            }
        }
        out.push(CheckResult::of(
            format!("fiber-dims[{r}]"),
            ok,
            if ok { "all sample angles agree".into() } else { detail },
        ));
    }

    // dim H_r(X) = ♯closed_r + ♯open_{r−1} + ♯unit cells_r + ♯unit cells_{r−1}
    for r in 0..report.betti.len() {
        let beta = report.betti[r];
        let want = report.novikov[r]
            + report.jordan_unit_cells(r)
            + r.checked_sub(1).map_or(0, |r1| report.jordan_unit_cells(r1));
        out.push(CheckResult::of(
            format!("betti-census[{r}]"),
            beta == want,
            format!("rank route {beta}, count route {want}"),
        ));
    }

    let _ = d.kind; // the diagram itself was validated during analyze
    if d.kind == DiagramKind::Real {
        // the real-kind specialization: Betti numbers equal the code counts
        for r in 0..report.betti.len() {
            out.push(CheckResult::of(
                format!("line-betti[{r}]"),
                report.betti[r] == report.novikov[r],
                format!("{} vs {}", report.betti[r], report.novikov[r]),
            ));
        }
    }

    Ok(out)
}
