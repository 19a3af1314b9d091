//! CSV and SVG output for shelling tables, plus the subcommand driver.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use shellav::randomtiling::{build_approximant, empirical_shelling, replica_shelling};
use shellav::{
    averaged_shelling, central_square_shells, parse_rational, Basis, ModelSet, PointSetKind, QuadVal, ShellError,
    ShellRecord, Source,
};
use thiserror::Error;

pub const CSV_HEADER: &str = "kind,basis,r2_a,r2_b,r_float,rint_float,sigma_a,sigma_b,sigma_float,source,seed";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Shell(#[from] ShellError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("csv line {line}: {msg}")]
    Csv { line: usize, msg: String },
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
}

impl CliError {
    /// 2 for bad input, 1 for everything detected while computing.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Shell(
                ShellError::InvalidArgument(_) | ShellError::OrderOutOfRange(_) | ShellError::CutoffTooLarge { .. },
            ) => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Svg,
    Both,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Subcommand {
    Central { mmax: u64 },
    Chain { rmax: f64 },
    Penrose { rmax: f64 },
    /// Exact shells, or an empirical count on the perfect approximant of `order`.
    Ammann { rmax: f64, order: Option<u32> },
    AmmannRandom {
        rmax: f64,
        order: u32,
        seed: u64,
        flips_per_vertex: f64,
        replicas: usize,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Subcommand,
    pub output: Option<PathBuf>,
    pub format: Format,
}

/// One CSV row: a shell plus the seed of the run that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub record: ShellRecord,
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let rmax = match self.command {
            Subcommand::Central { mmax } => {
                if mmax == 0 {
                    return Err(CliError::Usage("--mmax must be at least 1".into()));
                }
                None
            }
            Subcommand::Chain { rmax } | Subcommand::Penrose { rmax } | Subcommand::Ammann { rmax, .. } => Some(rmax),
            Subcommand::AmmannRandom {
                rmax,
                replicas,
                flips_per_vertex,
                ..
            } => {
                if replicas == 0 {
                    return Err(CliError::Usage("--replicas must be at least 1".into()));
                }
                if !(flips_per_vertex >= 0.0) || !flips_per_vertex.is_finite() {
                    return Err(CliError::Usage("--flips-per-vertex must be a nonnegative number".into()));
                }
                Some(rmax)
            }
        };
        if let Some(r) = rmax {
            if !(r > 0.0) || !r.is_finite() {
                return Err(CliError::Usage(format!("--rmax must be positive, got {r}")));
            }
        }
        if self.format == Format::Both && self.output.is_none() {
            return Err(CliError::Usage("--format both needs --out".into()));
        }
        Ok(())
    }
}

pub fn compute(command: &Subcommand) -> Result<Vec<Row>, CliError> {
    let exact = |records: Vec<ShellRecord>| records.into_iter().map(|record| Row { record, seed: None }).collect();
    Ok(match *command {
        Subcommand::Central { mmax } => exact(central_square_shells(mmax)?),
        Subcommand::Chain { rmax } => exact(averaged_shelling(&ModelSet::silver_mean()?, rmax)?),
        Subcommand::Penrose { rmax } => exact(averaged_shelling(&ModelSet::penrose()?, rmax)?),
        Subcommand::Ammann { rmax, order: None } => exact(averaged_shelling(&ModelSet::ammann_beenker()?, rmax)?),
        Subcommand::Ammann { rmax, order: Some(k) } => {
            let a = build_approximant(k)?;
            exact(empirical_shelling(a.period, &a.vertices, rmax)?)
        }
        Subcommand::AmmannRandom {
            rmax,
            order,
            seed,
            flips_per_vertex,
            replicas,
        } => replica_shelling(order, flips_per_vertex, seed, replicas, rmax)?
            .into_iter()
            .map(|record| Row { record, seed: Some(seed) })
            .collect(),
    })
}

/// σ ≥ 0 everywhere and radii strictly increasing.
pub fn check_rows(rows: &[Row]) -> Result<(), CliError> {
    for w in rows.windows(2) {
        let (a, b) = (&w[0].record.r2, &w[1].record.r2);
        if a.exact_cmp(b)?.is_ge() {
            return Err(CliError::Inconsistent(format!("radii out of order: {a} then {b}")));
        }
    }
    for row in rows {
        let r = &row.record;
        let negative = match &r.sigma_exact {
            Some(s) => s.sign() < 0,
            None => r.sigma_float < 0.0,
        };
        if negative || r.sigma_float.is_nan() {
            return Err(CliError::Inconsistent(format!("negative σ at r² = {}", r.r2)));
        }
    }
    Ok(())
}

fn basis_name(kind: PointSetKind, basis: Basis) -> &'static str {
    match kind {
        PointSetKind::SquareLattice => "int",
        _ => basis.symbol(),
    }
}

pub fn render_csv(rows: &[Row]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        let r = &row.record;
        let int = r.kind == PointSetKind::SquareLattice;
        let (sa, sb) = match &r.sigma_exact {
            Some(s) if int => (s.a().to_string(), String::new()),
            Some(s) => (s.a().to_string(), s.b().to_string()),
            None => (String::new(), String::new()),
        };
        let r2b = if int { String::new() } else { r.r2.b().to_string() };
        let rint = if int { String::new() } else { r.r_int.to_string() };
        let seed = row.seed.map(|s| s.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.kind.name(),
            basis_name(r.kind, r.r2.basis()),
            r.r2.a(),
            r2b,
            r.r,
            rint,
            sa,
            sb,
            r.sigma_float,
            r.source.name(),
            seed
        )
        .unwrap();
    }
    out
}

pub fn parse_csv(text: &str) -> Result<Vec<Row>, CliError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == CSV_HEADER => {}
        _ => {
            return Err(CliError::Csv {
                line: 1,
                msg: "missing header".into(),
            })
        }
    }
    lines.map(|(i, line)| parse_row(line).map_err(|msg| CliError::Csv { line: i + 1, msg })).collect()
}

fn parse_row(line: &str) -> Result<Row, String> {
    let f: Vec<&str> = line.split(',').collect();
    if f.len() != 11 {
        return Err(format!("expected 11 fields, got {}", f.len()));
    }
    let kind = PointSetKind::from_name(f[0]).ok_or_else(|| format!("unknown kind `{}`", f[0]))?;
    let (basis, int) = match f[1] {
        "int" => (Basis::Sqrt2, true),
        b => (b.parse::<Basis>().map_err(|e| e.to_string())?, false),
    };
    let rational = |s: &str| parse_rational(s).map_err(|e| e.to_string());
    let optional = |s: &str| if s.is_empty() && int { rational("0") } else { rational(s) };
    let float = |s: &str| s.parse::<f64>().map_err(|_| format!("bad number `{s}`"));
    let r2 = QuadVal::new(rational(f[2])?, optional(f[3])?, basis);
    let source = match f[9] {
        "exact" => Source::Exact,
        "empirical" => Source::Empirical,
        s => return Err(format!("unknown source `{s}`")),
    };
    let sigma_exact = match (f[6], f[7]) {
        ("", "") => None,
        (a, b) => Some(QuadVal::new(rational(a)?, optional(b)?, basis)),
    };
    let r = float(f[4])?;
    let r_int = if int { r } else { float(f[5])? };
    let seed = match f[10] {
        "" => None,
        s => Some(s.parse().map_err(|_| format!("bad seed `{s}`"))?),
    };
    Ok(Row {
        record: ShellRecord {
            kind,
            r2,
            r,
            r_int,
            sigma_exact,
            sigma_float: float(f[8])?,
            source,
        },
        seed,
    })
}

const PANEL_W: f64 = 360.0;
const PANEL_H: f64 = 280.0;
const MARGIN: f64 = 50.0;

fn nice_max(v: f64) -> f64 {
    if v <= 0.0 {
        return 1.0;
    }
    let step = 10f64.powf(v.log10().floor());
    (v / step).ceil() * step
}

fn tick(v: f64) -> String {
    let s = format!("{v:.3}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn panel(out: &mut String, x0: f64, points: &[(f64, f64)], xlabel: &str, ymax: f64) {
    let xmax = nice_max(points.iter().map(|p| p.0).fold(0.0, f64::max));
    let (left, top) = (x0 + MARGIN, MARGIN / 2.0);
    let bottom = top + PANEL_H;
    writeln!(out, r#"<g class="panel">"#).unwrap();
    writeln!(
        out,
        r#"<line x1="{left:.2}" y1="{bottom:.2}" x2="{:.2}" y2="{bottom:.2}" stroke="black"/>"#,
        left + PANEL_W
    )
    .unwrap();
    writeln!(out, r#"<line x1="{left:.2}" y1="{top:.2}" x2="{left:.2}" y2="{bottom:.2}" stroke="black"/>"#).unwrap();
    for k in 0..=4 {
        let f = k as f64 / 4.0;
        let (tx, ty) = (left + f * PANEL_W, bottom - f * PANEL_H);
        writeln!(
            out,
            r#"<text x="{tx:.2}" y="{:.2}" font-size="10" text-anchor="middle">{}</text>"#,
            bottom + 14.0,
            tick(xmax * f)
        )
        .unwrap();
        writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-size="10" text-anchor="end">{}</text>"#,
            left - 4.0,
            ty + 3.0,
            tick(ymax * f)
        )
        .unwrap();
    }
    writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" font-size="12" text-anchor="middle">{xlabel}</text>"#,
        left + PANEL_W / 2.0,
        bottom + 32.0
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" font-size="12" text-anchor="middle" transform="rotate(-90 {:.2} {:.2})">σ</text>"#,
        left - 30.0,
        top + PANEL_H / 2.0,
        left - 30.0,
        top + PANEL_H / 2.0
    )
    .unwrap();
    for &(x, y) in points {
        writeln!(
            out,
            r#"<circle cx="{:.2}" cy="{:.2}" r="2.5"/>"#,
            left + x / xmax * PANEL_W,
            bottom - y / ymax * PANEL_H
        )
        .unwrap();
    }
    writeln!(out, "</g>").unwrap();
}

/// Two scatter panels: σ against r and σ against r_int.
pub fn render_svg(records: &[ShellRecord]) -> Result<String, CliError> {
    if records.is_empty() {
        return Err(CliError::Usage("nothing to plot".into()));
    }
    let ymax = nice_max(records.iter().map(|r| r.sigma_float).fold(0.0, f64::max));
    let width = 2.0 * (PANEL_W + MARGIN) + MARGIN;
    let height = PANEL_H + 2.0 * MARGIN;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    let phys: Vec<(f64, f64)> = records.iter().map(|r| (r.r, r.sigma_float)).collect();
    let int: Vec<(f64, f64)> = records.iter().map(|r| (r.r_int, r.sigma_float)).collect();
    panel(&mut out, 0.0, &phys, "r", ymax);
    panel(&mut out, PANEL_W + MARGIN, &int, "r_int", ymax);
    out.push_str("</svg>\n");
    Ok(out)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Runs the computation and writes the requested files. Returns the text for
/// stdout when no `--out` was given.
pub fn run(config: &RunConfig) -> Result<Option<String>, CliError> {
    config.validate()?;
    let rows = compute(&config.command)?;
    check_rows(&rows)?;
    let records: Vec<ShellRecord> = rows.iter().map(|r| r.record.clone()).collect();
    match (&config.output, config.format) {
        (None, Format::Csv) => Ok(Some(render_csv(&rows))),
        (None, Format::Svg) => Ok(Some(render_svg(&records)?)),
        (Some(path), Format::Csv) => write_file(path, &render_csv(&rows)).map(|_| None),
        (Some(path), Format::Svg) => write_file(path, &render_svg(&records)?).map(|_| None),
        (Some(path), Format::Both) => {
            write_file(&path.with_extension("csv"), &render_csv(&rows))?;
            write_file(&path.with_extension("svg"), &render_svg(&records)?)?;
            Ok(None)
        }
        (None, Format::Both) => unreachable!("rejected by validate"),
    }
}
