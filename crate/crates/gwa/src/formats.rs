//! JSON and CSV interchange formats. Counts are always decimal strings.

use std::fmt::Write as _;
use std::str::FromStr;

use gwa_core::asymptotics::{BandReport, CheckedPair, FitReport, InequalityKind, InequalityReport};
use gwa_core::geometry::{c1_pairing, DivisorClass, LatticePolygon, Surface};
use gwa_core::numerics::ln_nat;
use gwa_core::{CountSeries, Nat};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("unknown surface {0:?}; expected plane, blown_plane:<k> or hirzebruch:<s>")]
    Surface(String),
    #[error("invalid class {0:?}; expected comma-separated integers")]
    Class(String),
    #[error("invalid count {0:?}")]
    Count(String),
    #[error("series: {0}")]
    Series(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub fn parse_surface(s: &str) -> Result<Surface, FormatError> {
    let err = || FormatError::Surface(s.to_owned());
    match s.split_once(':') {
        None if s == "plane" => Ok(Surface::Plane),
        Some(("blown_plane", k)) => {
            let k: u32 = k.parse().map_err(|_| err())?;
            if k == 0 {
                Ok(Surface::Plane)
            } else {
                Ok(Surface::BlownPlane { k })
            }
        }
        Some(("hirzebruch", s)) => Ok(Surface::Hirzebruch { s: s.parse().map_err(|_| err())? }),
        _ => Err(err()),
    }
}

pub fn parse_class(s: &str) -> Result<DivisorClass, FormatError> {
    s.split(',')
        .map(|c| c.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map(DivisorClass)
        .map_err(|_| FormatError::Class(s.to_owned()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceDto {
    pub kind: String,
    pub k_or_s: u32,
}

impl From<Surface> for SurfaceDto {
    fn from(s: Surface) -> Self {
        let (kind, k_or_s) = match s {
            Surface::Plane => ("plane", 0),
            Surface::BlownPlane { k } => ("blown_plane", k),
            Surface::Hirzebruch { s } => ("hirzebruch", s),
        };
        SurfaceDto { kind: kind.to_owned(), k_or_s }
    }
}

impl TryFrom<&SurfaceDto> for Surface {
    type Error = FormatError;

    fn try_from(d: &SurfaceDto) -> Result<Self, Self::Error> {
        match d.kind.as_str() {
            "plane" => Ok(Surface::Plane),
            "blown_plane" => Ok(Surface::BlownPlane { k: d.k_or_s }),
            "hirzebruch" => Ok(Surface::Hirzebruch { s: d.k_or_s }),
            other => Err(FormatError::Surface(other.to_owned())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDto {
    pub n: u32,
    pub count: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesFile {
    pub surface: SurfaceDto,
    pub divisor: Vec<i64>,
    pub entries: Vec<EntryDto>,
}

impl From<&CountSeries> for SeriesFile {
    fn from(s: &CountSeries) -> Self {
        SeriesFile {
            surface: s.surface.into(),
            divisor: s.divisor.0.clone(),
            entries: s.entries().iter().map(|e| EntryDto { n: e.n, count: e.count.to_string() }).collect(),
        }
    }
}

impl TryFrom<&SeriesFile> for CountSeries {
    type Error = FormatError;

    fn try_from(f: &SeriesFile) -> Result<Self, Self::Error> {
        let surface = Surface::try_from(&f.surface)?;
        let entries = f
            .entries
            .iter()
            .map(|e| Nat::from_str(&e.count).map(|c| (e.n, c)).map_err(|_| FormatError::Count(e.count.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        CountSeries::from_entries(surface, DivisorClass(f.divisor.clone()), entries)
            .map_err(|e| FormatError::Series(e.to_string()))
    }
}

pub fn series_to_json(s: &CountSeries) -> String {
    serde_json::to_string_pretty(&SeriesFile::from(s)).expect("plain data")
}

pub fn series_from_json(text: &str) -> Result<CountSeries, FormatError> {
    let file: SeriesFile = serde_json::from_str(text)?;
    CountSeries::try_from(&file)
}

/// CSV with columns `n,count,log_count,u_n`, where `u_n = (log N - λ n log n)/n`
/// and `λ = D.c1`. Zero counts leave the log columns empty.
pub fn series_to_csv(s: &CountSeries) -> String {
    let lambda = c1_pairing(&s.divisor, &s.surface).unwrap_or(0) as f64;
    let mut out = String::from("n,count,log_count,u_n\n");
    for e in s.entries() {
        match ln_nat(&e.count) {
            Ok(log) => {
                let n = e.n as f64;
                let u = (log - lambda * n * n.ln()) / n;
                writeln!(out, "{},{},{:.12},{:.12}", e.n, e.count, log, u).unwrap();
            }
            Err(_) => writeln!(out, "{},{},,", e.n, e.count).unwrap(),
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonFile {
    pub vertices: Vec<[i64; 2]>,
    pub boundary_points: i64,
    pub interior_points: i64,
}

impl From<&LatticePolygon> for PolygonFile {
    fn from(p: &LatticePolygon) -> Self {
        PolygonFile {
            vertices: p.vertices().iter().map(|v| [v.x, v.y]).collect(),
            boundary_points: p.boundary_lattice_count(),
            interior_points: p.interior_lattice_count(),
        }
    }
}

pub const TOLERANCE_NOTE: &str = "tolerances are acceptance choices of this tool, not values derived from theory";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReportFile {
    pub lambda_hat: f64,
    pub slope_b: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub constant: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub log_coefficient: Option<f64>,
    pub residual_max: f64,
    pub range: [u32; 2],
    pub lambda_target: i64,
    pub points_used: usize,
    pub excluded_zero: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub passed: Option<bool>,
    pub note: String,
}

impl From<&FitReport> for FitReportFile {
    fn from(r: &FitReport) -> Self {
        FitReportFile {
            lambda_hat: r.lambda_hat,
            slope_b: r.slope_b,
            constant: r.constant,
            log_coefficient: r.log_coefficient,
            residual_max: r.residual_max,
            range: [r.range.0, r.range.1],
            lambda_target: r.lambda_target,
            points_used: r.points_used,
            excluded_zero: r.excluded_zero.clone(),
            tolerance: None,
            passed: None,
            note: TOLERANCE_NOTE.to_owned(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairDto {
    pub n: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n_next: Option<u32>,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

impl From<&CheckedPair> for PairDto {
    fn from(p: &CheckedPair) -> Self {
        PairDto { n: p.n, n_next: p.n_next, lhs: p.lhs.to_string(), rhs: p.rhs.to_string(), holds: p.holds }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityReportFile {
    pub kind: String,
    pub checked_pairs: Vec<PairDto>,
    pub all_hold: bool,
}

impl From<&InequalityReport> for InequalityReportFile {
    fn from(r: &InequalityReport) -> Self {
        InequalityReportFile {
            kind: match r.kind {
                InequalityKind::Monotone => "monotone",
                InequalityKind::Factorial => "factorial",
            }
            .to_owned(),
            checked_pairs: r.checked_pairs.iter().map(PairDto::from).collect(),
            all_hold: r.all_hold,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandReportFile {
    pub lambda: i64,
    pub n_min: u32,
    pub c_lower: f64,
    pub c_upper: f64,
    pub width: f64,
}

impl From<&BandReport> for BandReportFile {
    fn from(b: &BandReport) -> Self {
        BandReportFile { lambda: b.lambda, n_min: b.n_min, c_lower: b.c_lower, c_upper: b.c_upper, width: b.width() }
    }
}
