//! Command-line surface: stable JSON in, deterministic JSON or text out.
//!
//! Exit codes: 0 success, 1 validation error (malformed input, bad field,
//! non-simplicial map), 2 internal consistency failure (any cross-validation
//! check failed during analyze).

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};


use crate::diagram::{Rep, TameDiagram};
use crate::error::Error;
use crate::field::Field;
use crate::json;
use crate::relation::relation_from_cycle;

#[derive(Parser, Debug)]
#[command(
    name = "tamebar",
    about = "Bar codes, Jordan cells and monodromy of tame real- and angle-valued maps",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct Common {
    /// Override the coefficient field of the input: a prime p, or Q.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decompose a representation file into bar codes and monodromy.
    Decompose { input: PathBuf },
    /// Analyze a diagram file: decompose every degree, evaluate the derived
    /// homological numbers and run all cross-validation checks.
    Analyze {
        input: PathBuf,
        /// Also report twisted homology dims H_r(X; uξ) for this u.
        #[arg(long)]
        twist: Option<i64>,
        /// Restrict the printed degrees (the full analysis still runs).
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Regular part of the fiber relation of a circle representation file
    /// (the monodromy oracle, independent of the decomposition).
    Relation { input: PathBuf },
    /// Level-interval dimensions over a window of the cyclic cover.
    Interval {
        input: PathBuf,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        degree: usize,
    },
    /// Extract the point configuration of one degree from a report file.
    Config {
        input: PathBuf,
        #[arg(long)]
        degree: usize,
    },
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // clap handles --help/--version with success exits
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn parse_field_flag(s: &str) -> Result<Field, Error> {
    if s == "Q" || s == "q" {
        return Ok(Field::Rationals);
    }
    let p: u64 = s
        .parse()
        .map_err(|_| Error::InvalidField(format!("--field expects a prime or Q, got {s:?}")))?;
    Field::prime(p)
}

fn load_rep(path: &PathBuf, field_flag: &Option<String>) -> Result<Rep, Error> {
    let text = std::fs::read_to_string(path)?;
    let mut dto: json::RepDto = serde_json::from_str(&text)?;
    if let Some(fs) = field_flag {
        dto.field = json::field_to_dto(parse_field_flag(fs)?);
    }
    json::rep_from_dto(&dto)
}

fn load_diagram(path: &PathBuf, field_flag: &Option<String>) -> Result<TameDiagram, Error> {
    let text = std::fs::read_to_string(path)?;
    let mut dto: json::DiagramDto = serde_json::from_str(&text)?;
    if let Some(fs) = field_flag {
        dto.field = json::field_to_dto(parse_field_flag(fs)?);
    }
    json::diagram_from_dto(&dto)
}

fn dispatch(cli: &Cli) -> Result<i32, Error> {
    match &cli.command {
        Command::Decompose { input } => {
            let rep = load_rep(input, &cli.common.field)?;
            let dec = rep.decompose()?;
            let dto = json::decomposition_to_dto(&dec);
            match cli.common.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&dto)?),
                Format::Text => print!("{}", render_decomposition(&dto)),
            }
            Ok(0)
        }
        Command::Relation { input } => {
            let rep = load_rep(input, &cli.common.field)?;
            let Rep::Circle(rep) = rep else {
                return Err(Error::InvalidInput(
                    "the relation oracle needs a circle representation".into(),
                ));
            };
            let rel = relation_from_cycle(&rep.alpha, &rep.beta)?;
            let reg = rel.regular_part()?;
            let dec = crate::quiver::Decomposition {
                field: rep.field,
                barcodes: vec![],
                monodromy: crate::quiver::Monodromy::of_matrix(reg.map.clone()),
            };
            let dto = json::decomposition_to_dto(&dec);
            match cli.common.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&dto.monodromy)?),
                Format::Text => {
                    let mut s = String::new();
                    let _ = writeln!(s, "regular part: dim {}", reg.dim);
                    render_monodromy(&mut s, &dto.monodromy);
                    print!("{s}");
                }
            }
            Ok(0)
        }
        Command::Analyze { input, twist, degree } => {
            let d = load_diagram(input, &cli.common.field)?;
            let report = d.analyze()?;
            let mut dto = json::report_to_dto(&d, &report)?;
            if let Some(r) = degree {
                dto.degrees.retain(|deg| deg.degree == *r);
                dto.configurations.retain(|c| c.degree == *r);
            }
            let twisted = match twist {
                Some(u) => Some(crate::diagram::twisted_homology(
                    &report,
                    &report.field.from_i64(*u),
                )?),
                None => None,
            };
            let failed = dto.checks.iter().filter(|c| !c.passed).count();
            match cli.common.format {
                Format::Json => {
                    let mut value = serde_json::to_value(&dto)?;
                    if let Some(t) = &twisted {
                        value["twisted_betti"] = serde_json::to_value(t)?;
                    }
                    println!("{}", serde_json::to_string_pretty(&value)?);
                }
                Format::Text => print!("{}", render_report(&dto, twisted.as_deref())),
            }
            if failed > 0 {
                eprintln!("{failed} consistency check(s) failed");
                return Ok(2);
            }
            Ok(0)
        }
        Command::Interval { input, from, to, degree } => {
            let d = load_diagram(input, &cli.common.field)?;
            let report = d.analyze()?;
            let dims = report.interval_dims(*from, *to, *degree)?;
            if dims.jordan_total_dim != dims.jordan_lambda1_cells {
                eprintln!(
                    "note: the Jordan contribution differs between conventions: total dim {} vs {} unit-eigenvalue cells",
                    dims.jordan_total_dim, dims.jordan_lambda1_cells
                );
            }
            match cli.common.format {
                Format::Json => {
                    let value = serde_json::json!({
                        "degree": degree,
                        "from": from,
                        "to": to,
                        "slab": dims.slab,
                        "into_cover": dims.into_cover,
                        "into_base": dims.into_base,
                        "jordan_total_dim": dims.jordan_total_dim,
                        "jordan_lambda1_cells": dims.jordan_lambda1_cells,
                    });
                    println!("{}", serde_json::to_string_pretty(&value)?);
                }
                Format::Text => {
                    println!("window [{from}, {to}], degree {degree}");
                    println!("  dim H_r(slab)          = {}", dims.slab);
                    println!("  dim im -> H_r(cover)   = {}", dims.into_cover);
                    println!("  dim im -> H_r(base)    = {}", dims.into_base);
                }
            }
            Ok(0)
        }
        Command::Config { input, degree } => {
            let text = std::fs::read_to_string(input)?;
            let dto: json::ReportDto = serde_json::from_str(&text)?;
            let Some(cfg) = dto.configurations.iter().find(|c| c.degree == *degree) else {
                return Err(Error::InvalidInput(format!(
                    "report has no configuration for degree {degree}"
                )));
            };
            match cli.common.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(cfg)?),
                Format::Text => {
                    println!("configuration, degree {degree} ({})", cfg.kind);
                    for (x, y) in &cfg.points {
                        println!("  ({x}, {y})");
                    }
                    println!("  polynomial coefficients (ascending):");
                    for (re, im) in &cfg.poly {
                        println!("    {re} + {im}i");
                    }
                }
            }
            Ok(0)
        }
    }
}

fn format_code(dto: &json::BarCodeDto) -> String {
    format!(
        "{}{},{}{}",
        if dto.left_closed { '[' } else { '(' },
        dto.left,
        dto.right,
        if dto.right_closed { ']' } else { ')' }
    )
}

fn format_num(n: &json::NumDto) -> String {
    match n {
        json::NumDto::Int(v) => v.to_string(),
        json::NumDto::Str(s) => s.clone(),
    }
}

fn format_poly(coeffs: &[json::NumDto]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !matches!(c, json::NumDto::Int(0)))
        .map(|(i, c)| match i {
            0 => format_num(c),
            1 => format!("{}*x", format_num(c)),
            _ => format!("{}*x^{i}", format_num(c)),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn render_monodromy(out: &mut String, m: &json::MonodromyDto) {
    let _ = writeln!(out, "monodromy: dim {}", m.dim);
    for f in &m.invariant_factors {
        let _ = writeln!(out, "  invariant factor: {}", format_poly(f));
    }
    for c in &m.jordan_cells {
        let _ = writeln!(out, "  jordan cell: ({}, {})", format_num(&c.lambda), c.size);
    }
    for (p, e) in &m.residual_blocks {
        let _ = writeln!(out, "  residual block: ({})^{}", format_poly(p), e);
    }
}

fn render_decomposition(dto: &json::DecompositionDto) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "bar codes ({}):", dto.barcodes.len());
    for c in &dto.barcodes {
        let _ = writeln!(s, "  {}", format_code(c));
    }
    render_monodromy(&mut s, &dto.monodromy);
    s
}

fn render_report(dto: &json::ReportDto, twisted: Option<&[usize]>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "kind: {}, m = {}", dto.kind, dto.m);
    let _ = writeln!(s, "betti: {:?}", dto.betti);
    let _ = writeln!(s, "novikov: {:?}", dto.novikov);
    if let Some(t) = twisted {
        let _ = writeln!(s, "twisted betti: {t:?}");
    }
    for deg in &dto.degrees {
        let _ = writeln!(s, "degree {}:", deg.degree);
        for c in &deg.barcodes {
            let _ = writeln!(
                s,
                "  {}  angles [{:.6}, {:.6}]",
                format_code(c),
                c.angle_left.unwrap_or(f64::NAN),
                c.angle_right.unwrap_or(f64::NAN)
            );
        }
        let mut m = String::new();
        render_monodromy(&mut m, &deg.monodromy);
        for line in m.lines() {
            let _ = writeln!(s, "  {line}");
        }
    }
    for cfg in &dto.configurations {
        let _ = writeln!(
            s,
            "configuration[{}]: {} point(s)",
            cfg.degree,
            cfg.points.len()
        );
    }
    for check in &dto.checks {
        let _ = writeln!(
            s,
            "check {}: {} ({})",
            check.name,
            if check.passed { "ok" } else { "FAILED" },
            check.detail
        );
    }
    s
}
