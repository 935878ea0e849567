//! Stable JSON wire formats. Inputs carry exact numbers only: integers, or
//! fractions as "a/b" strings, canonicalized into the chosen field on
//! ingestion. Report output is deterministic (struct field order, sorted
//! multisets); the only floats are angles and the configuration polynomial.

use serde::{Deserialize, Serialize};

use crate::configuration::{configuration, Configuration};
use crate::diagram::{
    cross_validate, CheckResult, DiagramKind, InvariantReport, Rep, TameDiagram,
};
use crate::error::Error;
use crate::field::{Field, Scalar};
use crate::homology::{SimplicialComplex, SimplicialMap};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::quiver::{BarCode, CircleRep, ZRep};

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(untagged)]
pub enum NumDto {
    Int(i64),
    Str(String),
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(untagged)]
pub enum FieldDto {
    Prime { prime: u64 },
    Name(String),
}

pub fn field_from_dto(dto: &FieldDto) -> Result<Field, Error> {
    match dto {
        FieldDto::Prime { prime } => Field::prime(*prime),
        FieldDto::Name(s) if s == "Q" => Ok(Field::Rationals),
        FieldDto::Name(s) => Err(Error::InvalidField(format!("unknown field {s:?}"))),
    }
}

pub fn field_to_dto(f: Field) -> FieldDto {
    match f {
        Field::Prime(p) => FieldDto::Prime { prime: p },
        Field::Rationals => FieldDto::Name("Q".into()),
    }
}

pub fn scalar_from_dto(field: Field, dto: &NumDto) -> Result<Scalar, Error> {
    match dto {
        NumDto::Int(n) => Ok(field.from_i64(*n)),
        NumDto::Str(s) => {
            let mut parts = s.splitn(2, '/');
            let num: i64 = parts
                .next()
                .unwrap()
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad number {s:?}")))?;
            match parts.next() {
                None => Ok(field.from_i64(num)),
                Some(d) => {
                    let den: i64 = d
                        .trim()
                        .parse()
                        .map_err(|_| Error::InvalidInput(format!("bad number {s:?}")))?;
                    field.from_fraction(num, den)
                }
            }
        }
    }
}

pub fn scalar_to_dto(field: Field, s: &Scalar) -> NumDto {
    match s {
        Scalar::Fp(v) => NumDto::Int(*v as i64),
        Scalar::Rat(r) => {
            if r.is_integer() {
                if let Ok(n) = i64::try_from(r.numer().clone()) {
                    return NumDto::Int(n);
                }
            }
            NumDto::Str(field.format(s))
        }
    }
}

fn matrix_from_flat(field: Field, rows: usize, cols: usize, data: &[NumDto]) -> Result<Matrix, Error> {
    if data.len() != rows * cols {
        return Err(Error::DimensionMismatch(format!(
            "matrix data has {} entries, expected {rows}x{cols}",
            data.len()
        )));
    }
    let mut m = Matrix::zeros(field, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, scalar_from_dto(field, &data[i * cols + j])?);
        }
    }
    Ok(m)
}

fn matrix_to_flat(m: &Matrix) -> Vec<NumDto> {
    let mut out = Vec::with_capacity(m.rows * m.cols);
    for i in 0..m.rows {
        for j in 0..m.cols {
            out.push(scalar_to_dto(m.field, m.get(i, j)));
        }
    }
    out
}

/// Representation file: a circle (G_2m) or line (Z window) representation
/// with dimension vectors n, r and the flat row-major α, β matrices.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct RepDto {
    pub field: FieldDto,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub support: Option<(i64, i64)>,
    pub n: Vec<usize>,
    pub r: Vec<usize>,
    pub alpha: Vec<Vec<NumDto>>,
    pub beta: Vec<Vec<NumDto>>,
}

pub fn rep_from_dto(dto: &RepDto) -> Result<Rep, Error> {
    let field = field_from_dto(&dto.field)?;
    match dto.kind.as_str() {
        "circle" => {
            let m = dto
                .m
                .ok_or_else(|| Error::InvalidInput("circle representation needs \"m\"".into()))?;
            if dto.n.len() != m || dto.r.len() != m || dto.alpha.len() != m || dto.beta.len() != m {
                return Err(Error::InvalidInput("arrays must have length m".into()));
            }
            let mut alpha = Vec::with_capacity(m);
            let mut beta = Vec::with_capacity(m);
            for j in 0..m {
                alpha.push(matrix_from_flat(field, dto.r[j], dto.n[j], &dto.alpha[j])?);
                beta.push(matrix_from_flat(field, dto.r[j], dto.n[(j + 1) % m], &dto.beta[j])?);
            }
            let rep = CircleRep {
                field,
                m,
                odd_dims: dto.n.clone(),
                even_dims: dto.r.clone(),
                alpha,
                beta,
            };
            rep.validate()?;
            Ok(Rep::Circle(rep))
        }
        "line" => {
            let (lo, hi) = dto
                .support
                .ok_or_else(|| Error::InvalidInput("line representation needs \"support\"".into()))?;
            if lo > hi {
                return Err(Error::InvalidInput("support window must satisfy lo ≤ hi".into()));
            }
            let w = (hi - lo) as usize;
            if dto.r.len() != w + 1 || dto.n.len() != w || dto.alpha.len() != w || dto.beta.len() != w {
                return Err(Error::InvalidInput(
                    "line arrays must match the support window".into(),
                ));
            }
            let mut alpha = Vec::with_capacity(w);
            let mut beta = Vec::with_capacity(w);
            for k in 0..w {
                alpha.push(matrix_from_flat(field, dto.r[k + 1], dto.n[k], &dto.alpha[k])?);
                beta.push(matrix_from_flat(field, dto.r[k], dto.n[k], &dto.beta[k])?);
            }
            let rep = ZRep {
                field,
                lo,
                hi,
                even_dims: dto.r.clone(),
                odd_dims: dto.n.clone(),
                alpha,
                beta,
            };
            rep.validate()?;
            Ok(Rep::Line(rep))
        }
        other => Err(Error::InvalidInput(format!("unknown representation kind {other:?}"))),
    }
}

pub fn rep_to_dto(rep: &Rep) -> RepDto {
    match rep {
        Rep::Circle(r) => RepDto {
            field: field_to_dto(r.field),
            kind: "circle".into(),
            m: Some(r.m),
            support: None,
            n: r.odd_dims.clone(),
            r: r.even_dims.clone(),
            alpha: r.alpha.iter().map(matrix_to_flat).collect(),
            beta: r.beta.iter().map(matrix_to_flat).collect(),
        },
        Rep::Line(r) => RepDto {
            field: field_to_dto(r.field),
            kind: "line".into(),
            m: None,
            support: Some((r.lo, r.hi)),
            n: r.odd_dims.clone(),
            r: r.even_dims.clone(),
            alpha: r.alpha.iter().map(matrix_to_flat).collect(),
            beta: r.beta.iter().map(matrix_to_flat).collect(),
        },
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ComplexDto {
    pub vertices: usize,
    pub simplices: Vec<Vec<usize>>,
}

pub fn complex_from_dto(dto: &ComplexDto) -> Result<SimplicialComplex, Error> {
    SimplicialComplex::new(dto.vertices, &dto.simplices)
}

pub fn complex_to_dto(k: &SimplicialComplex) -> ComplexDto {
    ComplexDto {
        vertices: k.vertex_count,
        simplices: k.simplices.iter().flatten().cloned().collect(),
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct MapDto {
    pub vertex_map: Vec<usize>,
}

/// Diagram file: critical/regular fibers with the down maps b and up maps a.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct DiagramDto {
    pub kind: String,
    pub field: FieldDto,
    pub critical_angles: Vec<f64>,
    pub regular_angles: Vec<f64>,
    #[serde(rename = "fibers_X")]
    pub fibers_x: Vec<ComplexDto>,
    #[serde(rename = "fibers_R")]
    pub fibers_r: Vec<ComplexDto>,
    pub maps_a: Vec<MapDto>,
    pub maps_b: Vec<MapDto>,
}

pub fn diagram_from_dto(dto: &DiagramDto) -> Result<TameDiagram, Error> {
    let kind = match dto.kind.as_str() {
        "circle" => DiagramKind::Circle,
        "real" => DiagramKind::Real,
        other => return Err(Error::InvalidInput(format!("unknown diagram kind {other:?}"))),
    };
    let d = TameDiagram {
        kind,
        field: field_from_dto(&dto.field)?,
        critical_angles: dto.critical_angles.clone(),
        regular_angles: dto.regular_angles.clone(),
        fibers_x: dto.fibers_x.iter().map(complex_from_dto).collect::<Result<_, _>>()?,
        fibers_r: dto.fibers_r.iter().map(complex_from_dto).collect::<Result<_, _>>()?,
        maps_a: dto
            .maps_a
            .iter()
            .map(|m| SimplicialMap { vertex_map: m.vertex_map.clone() })
            .collect(),
        maps_b: dto
            .maps_b
            .iter()
            .map(|m| SimplicialMap { vertex_map: m.vertex_map.clone() })
            .collect(),
    };
    d.validate()?;
    Ok(d)
}

pub fn diagram_to_dto(d: &TameDiagram) -> DiagramDto {
    DiagramDto {
        kind: match d.kind {
            DiagramKind::Circle => "circle".into(),
            DiagramKind::Real => "real".into(),
        },
        field: field_to_dto(d.field),
        critical_angles: d.critical_angles.clone(),
        regular_angles: d.regular_angles.clone(),
        fibers_x: d.fibers_x.iter().map(complex_to_dto).collect(),
        fibers_r: d.fibers_r.iter().map(complex_to_dto).collect(),
        maps_a: d
            .maps_a
            .iter()
            .map(|m| MapDto { vertex_map: m.vertex_map.clone() })
            .collect(),
        maps_b: d
            .maps_b
            .iter()
            .map(|m| MapDto { vertex_map: m.vertex_map.clone() })
            .collect(),
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct BarCodeDto {
    pub left: i64,
    pub right: i64,
    pub left_closed: bool,
    pub right_closed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub angle_left: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub angle_right: Option<f64>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct JordanCellDto {
    pub lambda: NumDto,
    pub size: usize,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct MonodromyDto {
    pub dim: usize,
    pub matrix: Vec<NumDto>,
    pub invariant_factors: Vec<Vec<NumDto>>,
    pub jordan_cells: Vec<JordanCellDto>,
    pub residual_blocks: Vec<(Vec<NumDto>, usize)>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct DegreeDto {
    pub degree: usize,
    pub barcodes: Vec<BarCodeDto>,
    pub monodromy: MonodromyDto,
    pub rep: RepDto,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ConfigurationDto {
    pub degree: usize,
    pub kind: String,
    pub points: Vec<(f64, f64)>,
    pub poly: Vec<(f64, f64)>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct CheckDto {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Full report file: everything `analyze` computed.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ReportDto {
    pub kind: String,
    pub field: FieldDto,
    pub m: usize,
    pub critical_angles: Vec<f64>,
    pub regular_angles: Vec<f64>,
    pub betti: Vec<usize>,
    pub novikov: Vec<usize>,
    pub degrees: Vec<DegreeDto>,
    pub configurations: Vec<ConfigurationDto>,
    pub checks: Vec<CheckDto>,
}

fn poly_to_dto(field: Field, p: &Poly) -> Vec<NumDto> {
    p.coeffs.iter().map(|c| scalar_to_dto(field, c)).collect()
}

pub fn configuration_to_dto(c: &Configuration) -> ConfigurationDto {
    let poly = c.polynomial();
    ConfigurationDto {
        degree: c.degree,
        kind: match c.kind {
            crate::configuration::ConfigKind::Plane => "plane".into(),
            crate::configuration::ConfigKind::TorusQuotient => "torus".into(),
        },
        points: c.points.clone(),
        poly: poly.coeffs.iter().map(|z| (z.re, z.im)).collect(),
    }
}

/// Assemble the report file from an analyzed diagram.
pub fn report_to_dto(d: &TameDiagram, report: &InvariantReport) -> Result<ReportDto, Error> {
    let f = report.field;
    let checks = cross_validate(d, report)?;
    let degrees = report
        .degrees
        .iter()
        .map(|deg| {
            let dec = &deg.decomposition;
            DegreeDto {
                degree: deg.degree,
                barcodes: dec
                    .barcodes
                    .iter()
                    .map(|c| {
                        let a = report.to_angle_interval(c);
                        BarCodeDto {
                            left: c.left,
                            right: c.right,
                            left_closed: c.left_closed,
                            right_closed: c.right_closed,
                            angle_left: Some(a.left),
                            angle_right: Some(a.right),
                        }
                    })
                    .collect(),
                monodromy: MonodromyDto {
                    dim: dec.monodromy.dim(),
                    matrix: matrix_to_flat(&dec.monodromy.matrix),
                    invariant_factors: dec
                        .monodromy
                        .form
                        .invariant_factors
                        .iter()
                        .map(|p| poly_to_dto(f, p))
                        .collect(),
                    jordan_cells: dec
                        .monodromy
                        .form
                        .split_cells
                        .iter()
                        .map(|(l, k)| JordanCellDto {
                            lambda: scalar_to_dto(f, l),
                            size: *k,
                        })
                        .collect(),
                    residual_blocks: dec
                        .monodromy
                        .form
                        .residual_blocks
                        .iter()
                        .map(|(p, e)| (poly_to_dto(f, p), *e))
                        .collect(),
                },
                rep: rep_to_dto(&deg.rep),
            }
        })
        .collect();
    let configurations = (0..=report.max_degree())
        .map(|r| configuration_to_dto(&configuration(report, r)))
        .collect();
    Ok(ReportDto {
        kind: match report.kind {
            DiagramKind::Circle => "circle".into(),
            DiagramKind::Real => "real".into(),
        },
        field: field_to_dto(f),
        m: report.m,
        critical_angles: report.critical_angles.clone(),
        regular_angles: report.regular_angles.clone(),
        betti: report.betti.clone(),
        novikov: report.novikov.clone(),
        degrees,
        configurations,
        checks: checks
            .iter()
            .map(|c| CheckDto {
                name: c.name.clone(),
                passed: c.passed,
                detail: c.detail.clone(),
            })
            .collect(),
    })
}

pub fn checks_from_dto(dto: &ReportDto) -> Vec<CheckResult> {
    dto.checks
        .iter()
        .map(|c| CheckResult {
            name: c.name.clone(),
            passed: c.passed,
            detail: c.detail.clone(),
        })
        .collect()
}

/// Decomposition output of the `decompose` and `relation` subcommands.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct DecompositionDto {
    pub field: FieldDto,
    pub barcodes: Vec<BarCodeDto>,
    pub monodromy: MonodromyDto,
}

pub fn decomposition_to_dto(dec: &crate::quiver::Decomposition) -> DecompositionDto {
    let f = dec.field;
    DecompositionDto {
        field: field_to_dto(f),
        barcodes: dec
            .barcodes
            .iter()
            .map(|c| BarCodeDto {
                left: c.left,
                right: c.right,
                left_closed: c.left_closed,
                right_closed: c.right_closed,
                angle_left: None,
                angle_right: None,
            })
            .collect(),
        monodromy: MonodromyDto {
            dim: dec.monodromy.dim(),
            matrix: matrix_to_flat(&dec.monodromy.matrix),
            invariant_factors: dec
                .monodromy
                .form
                .invariant_factors
                .iter()
                .map(|p| poly_to_dto(f, p))
                .collect(),
            jordan_cells: dec
                .monodromy
                .form
                .split_cells
                .iter()
                .map(|(l, k)| JordanCellDto {
                    lambda: scalar_to_dto(f, l),
                    size: *k,
                })
                .collect(),
            residual_blocks: dec
                .monodromy
                .form
                .residual_blocks
                .iter()
                .map(|(p, e)| (poly_to_dto(f, p), *e))
                .collect(),
        },
    }
}

pub fn barcode_from_dto(dto: &BarCodeDto) -> Result<BarCode, Error> {
    let c = BarCode {
        left: dto.left,
        right: dto.right,
        left_closed: dto.left_closed,
        right_closed: dto.right_closed,
    };
    if !c.is_valid() {
        return Err(Error::InvalidInput(format!("invalid bar code {c}")));
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;

    #[test]
    fn rep_round_trip() {
        let rep = Rep::Circle(examples::three_circles_rep(Field::Rationals));
        let dto = rep_to_dto(&rep);
        let json = serde_json::to_string(&dto).unwrap();
        let back: RepDto = serde_json::from_str(&json).unwrap();
        match (rep_from_dto(&back).unwrap(), rep) {
            (Rep::Circle(a), Rep::Circle(b)) => assert_eq!(a, b),
            _ => panic!("kind changed"),
        }
    }

    #[test]
    fn fractions_and_prime_canonicalization() {
        let f5 = Field::prime(5).unwrap();
        let s = scalar_from_dto(f5, &NumDto::Str("1/2".into())).unwrap();
        assert_eq!(s, f5.from_i64(3));
        let q = Field::Rationals;
        let s = scalar_from_dto(q, &NumDto::Str("-4/6".into())).unwrap();
        assert_eq!(q.format(&s), "-2/3");
        assert!(matches!(scalar_to_dto(q, &s), NumDto::Str(v) if v == "-2/3"));
        assert!(scalar_from_dto(q, &NumDto::Str("1/0".into())).is_err());
    }

    #[test]
    fn diagram_round_trip_and_determinism() {
        let d = examples::klein_diagram(Field::Rationals).unwrap();
        let dto = diagram_to_dto(&d);
        let j1 = serde_json::to_string_pretty(&dto).unwrap();
        let back = diagram_from_dto(&serde_json::from_str(&j1).unwrap()).unwrap();
        let j2 = serde_json::to_string_pretty(&diagram_to_dto(&back)).unwrap();
        assert_eq!(j1, j2);
    }

    #[test]
    fn line_rep_round_trip() {
        let f = Field::prime(5).unwrap();
        let rep = examples::three_circles_rep(f).unroll(-1, 4);
        let dto = rep_to_dto(&Rep::Line(rep.clone()));
        let json = serde_json::to_string(&dto).unwrap();
        let back: RepDto = serde_json::from_str(&json).unwrap();
        match rep_from_dto(&back).unwrap() {
            Rep::Line(z) => assert_eq!(z, rep),
            _ => panic!("kind changed"),
        }
    }
}
