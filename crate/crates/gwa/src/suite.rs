//! Computations shared by the CLI and the acceptance tests.

use std::sync::Arc;

use anyhow::{bail, Context, Result};
use gwa_core::asymptotics::{
    check_factorial_bound, check_monotone, check_residual_band, fit_lambda_with, FitBasis, DEFAULT_BAND_START,
};
use gwa_core::geometry::{polygon_of, DivisorClass, Surface};
use gwa_core::kontsevich::{series_plane, PlaneCountTable};
use gwa_core::tropical::{IrreducibleCounter, LambdaFunctional, PathTotals};
use gwa_core::{CountSeries, Nat};
use serde::Serialize;

use crate::formats::{BandReportFile, FitReportFile, InequalityReportFile};
use crate::parallel::{Checkpoint, ParallelPathTotals};

/// How a toric count is taken from the lattice-path engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TropicalMode {
    /// Irreducible curves only.
    Irreducible,
    /// Raw weighted path total, reducible configurations included.
    PathTotal,
}

#[derive(Clone)]
pub struct Engine {
    pub lambda: LambdaFunctional,
    pub threads: usize,
    pub checkpoint: Option<Arc<Checkpoint>>,
}

impl Engine {
    pub fn new(lambda: LambdaFunctional, threads: usize) -> Self {
        Engine { lambda, threads, checkpoint: None }
    }

    fn totals(&self) -> ParallelPathTotals {
        let t = ParallelPathTotals::new(self.lambda, self.threads);
        match &self.checkpoint {
            Some(c) => t.with_checkpoint(c.clone()),
            None => t,
        }
    }

    pub fn count(&self, class: &DivisorClass, surface: &Surface, mode: TropicalMode) -> Result<Nat> {
        if !surface.is_toric() {
            bail!("{surface} is not toric; the lattice-path engine needs a toric surface");
        }
        let polygon = polygon_of(class, surface)?;
        Ok(match mode {
            TropicalMode::PathTotal => self.totals().path_total(&polygon, 0)?,
            TropicalMode::Irreducible => IrreducibleCounter::new(&polygon, self.totals())?.count(0)?,
        })
    }
}

/// Irreducible counts are certified only on toric Del Pezzo surfaces.
pub fn default_mode(surface: &Surface) -> TropicalMode {
    if surface.is_toric_del_pezzo() {
        TropicalMode::Irreducible
    } else {
        TropicalMode::PathTotal
    }
}

/// Series `n -> count(nD)` for `n = 1..=n_max`. Plane classes use the recursion.
pub fn compute_series(
    surface: &Surface,
    class: &DivisorClass,
    n_max: u32,
    engine: &Engine,
    mode: TropicalMode,
) -> Result<CountSeries> {
    if *surface == Surface::Plane {
        let d = class.coeffs().first().copied().unwrap_or(0);
        if class.coeffs().len() != 1 || d <= 0 {
            bail!("plane class must be a single positive degree");
        }
        if d == 1 {
            return Ok(series_plane(n_max));
        }
        let mut table = PlaneCountTable::new();
        let entries: Vec<_> = (1..=n_max).map(|n| (n, table.count(n * d as u32))).collect();
        return Ok(CountSeries::from_entries(*surface, class.clone(), entries)?);
    }
    let mut series = CountSeries::new(*surface, class.clone());
    for n in 1..=n_max {
        let count = engine.count(&class.scaled(n as i64), surface, mode).with_context(|| format!("n = {n}"))?;
        series.push(n, count)?;
    }
    Ok(series)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleRow {
    pub degree: u32,
    pub lambda: String,
    pub recursion: String,
    pub tropical: String,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub check: &'static str,
    pub rows: Vec<OracleRow>,
    pub all_hold: bool,
}

/// Recursion against lattice paths on the degree-`d` triangle for every
/// `d` in `2..=max_degree` and every λ.
pub fn oracle_report(max_degree: u32, threads: usize, checkpoint: Option<Arc<Checkpoint>>) -> Result<OracleReport> {
    let mut table = PlaneCountTable::new();
    let mut rows = Vec::new();
    for degree in 2..=max_degree {
        let recursion = table.count(degree);
        for lambda in LambdaFunctional::ALL {
            let engine = Engine { lambda, threads, checkpoint: checkpoint.clone() };
            let tropical =
                engine.count(&DivisorClass::new([degree as i64]), &Surface::Plane, TropicalMode::Irreducible)?;
            rows.push(OracleRow {
                degree,
                lambda: lambda.to_string(),
                equal: tropical == recursion,
                recursion: recursion.to_string(),
                tropical: tropical.to_string(),
            });
        }
    }
    let all_hold = rows.iter().all(|r| r.equal);
    Ok(OracleReport { check: "oracle", rows, all_hold })
}

#[derive(Debug, Clone, Serialize)]
pub struct MonotoneReport {
    pub check: &'static str,
    pub surface: String,
    pub divisor: Vec<i64>,
    #[serde(flatten)]
    pub report: InequalityReportFile,
}

pub fn monotone_report(series: &CountSeries) -> MonotoneReport {
    MonotoneReport {
        check: "monotone",
        surface: series.surface.to_string(),
        divisor: series.divisor.0.clone(),
        report: (&check_monotone(series)).into(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorialReport {
    pub check: &'static str,
    pub s: u32,
    pub upper_mode: &'static str,
    pub lower_mode: &'static str,
    #[serde(flatten)]
    pub report: InequalityReportFile,
}

fn mode_name(m: TropicalMode) -> &'static str {
    match m {
        TropicalMode::Irreducible => "irreducible",
        TropicalMode::PathTotal => "path_total",
    }
}

/// `total(n(sF+E), Σ_s) >= n! * count(n((s-1)F+E), Σ_{s-1})` for `n = 1..=n_max`.
///
/// The upper side uses raw path totals. The lower side uses irreducible
/// counts when `Σ_{s-1}` is Del Pezzo and raw totals otherwise.
pub fn factorial_report(s: u32, n_max: u32, engine: &Engine) -> Result<FactorialReport> {
    if s == 0 {
        bail!("the factorial check needs s >= 1");
    }
    let upper_surface = Surface::Hirzebruch { s };
    let upper =
        compute_series(&upper_surface, &DivisorClass::new([s as i64, 1]), n_max, engine, TropicalMode::PathTotal)?;
    let lower_surface = Surface::Hirzebruch { s: s - 1 };
    let lower_mode = default_mode(&lower_surface);
    let lower = compute_series(&lower_surface, &DivisorClass::new([s as i64 - 1, 1]), n_max, engine, lower_mode)?;
    Ok(FactorialReport {
        check: "factorial",
        s,
        upper_mode: mode_name(TropicalMode::PathTotal),
        lower_mode: mode_name(lower_mode),
        report: (&check_factorial_bound(&upper, &lower)?).into(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct LambdaReport {
    pub check: &'static str,
    pub fit: FitReportFile,
    pub band: BandReportFile,
    /// Band widths over nested tails `n >= t`.
    pub tail_widths: Vec<(u32, f64)>,
    pub tails_non_increasing: bool,
    pub all_hold: bool,
}

pub const TAIL_STARTS: [u32; 5] = [5, 10, 20, 40, 80];

/// Growth-law fit of the series over `range` plus the residual band of
/// `u_n = (log N_n - λ n log n)/n`.
pub fn lambda_report(series: &CountSeries, range: (u32, u32), basis: FitBasis, tolerance: f64) -> Result<LambdaReport> {
    let fit = fit_lambda_with(series, range.0, range.1, basis)?;
    let band = check_residual_band(series, fit.lambda_target, DEFAULT_BAND_START)?;
    let tail_widths: Vec<(u32, f64)> =
        TAIL_STARTS.iter().filter_map(|&t| band.tail(t).map(|b| (t, b.width()))).collect();
    let tails_non_increasing = tail_widths.windows(2).all(|w| w[1].1 <= w[0].1);
    let passed = (fit.lambda_hat - fit.lambda_target as f64).abs() <= tolerance;
    let mut fit_file = FitReportFile::from(&fit);
    fit_file.tolerance = Some(tolerance);
    fit_file.passed = Some(passed);
    Ok(LambdaReport {
        check: "lambda",
        fit: fit_file,
        band: (&band).into(),
        tail_widths,
        tails_non_increasing,
        all_hold: passed && tails_non_increasing,
    })
}
