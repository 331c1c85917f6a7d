//! Growth-law fits and inequality checks over count series.
//!
//! All logarithms are natural.

use alloc::vec::Vec;

use thiserror::Error;

use crate::geometry::{c1_pairing, DivisorClass, GeometryError, Surface};
use crate::numerics::{ln_nat, Combinatorics, Nat};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AsymptoticsError {
    #[error("entries must have strictly increasing n >= 1 (got {got} after {last})")]
    NotIncreasing { last: u32, got: u32 },
    #[error("need at least {needed} usable entries in range, found {found}")]
    TooFewPoints { needed: usize, found: usize },
    #[error("degenerate least-squares system")]
    Degenerate,
    #[error("factorial bound needs Hirzebruch(s) over Hirzebruch(s - 1) with classes sF + E and (s - 1)F + E")]
    FactorialShape,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesEntry {
    pub n: u32,
    pub count: Nat,
}

/// Counts `N_{nD}` of a fixed class `D` on a fixed surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountSeries {
    pub surface: Surface,
    pub divisor: DivisorClass,
    entries: Vec<SeriesEntry>,
}

impl CountSeries {
    pub fn new(surface: Surface, divisor: DivisorClass) -> Self {
        CountSeries { surface, divisor, entries: Vec::new() }
    }

    pub fn from_entries(
        surface: Surface,
        divisor: DivisorClass,
        entries: impl IntoIterator<Item = (u32, Nat)>,
    ) -> Result<Self, AsymptoticsError> {
        let mut s = Self::new(surface, divisor);
        for (n, c) in entries {
            s.push(n, c)?;
        }
        Ok(s)
    }

    pub fn push(&mut self, n: u32, count: Nat) -> Result<(), AsymptoticsError> {
        let last = self.entries.last().map_or(0, |e| e.n);
        if n <= last {
            return Err(AsymptoticsError::NotIncreasing { last, got: n });
        }
        self.entries.push(SeriesEntry { n, count });
        Ok(())
    }

    pub fn entries(&self) -> &[SeriesEntry] {
        &self.entries
    }

    pub fn get(&self, n: u32) -> Option<&Nat> {
        self.entries.binary_search_by_key(&n, |e| e.n).ok().map(|i| &self.entries[i].count)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// `D . c1`, the growth exponent the series should exhibit.
    pub fn lambda_target(&self) -> Result<i64, GeometryError> {
        c1_pairing(&self.divisor, &self.surface)
    }
}

/// Extra basis functions beyond `{n log n, n}`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FitBasis {
    pub constant: bool,
    pub log_n: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub lambda_hat: f64,
    pub slope_b: f64,
    pub constant: Option<f64>,
    pub log_coefficient: Option<f64>,
    /// Max over the range of `|log N_n - model(n)| / n`.
    pub residual_max: f64,
    pub range: (u32, u32),
    pub lambda_target: i64,
    pub points_used: usize,
    /// Entries in range skipped because their count is zero.
    pub excluded_zero: Vec<u32>,
}

/// Least squares of `log N_n` against `{n log n, n}` on `n_min..=n_max`.
pub fn fit_lambda(series: &CountSeries, n_min: u32, n_max: u32) -> Result<FitReport, AsymptoticsError> {
    fit_lambda_with(series, n_min, n_max, FitBasis::default())
}

pub fn fit_lambda_with(
    series: &CountSeries,
    n_min: u32,
    n_max: u32,
    basis: FitBasis,
) -> Result<FitReport, AsymptoticsError> {
    let lambda_target = series.lambda_target()?;
    let mut excluded_zero = Vec::new();
    let mut data: Vec<(f64, f64)> = Vec::new();
    for e in series.entries().iter().filter(|e| (n_min..=n_max).contains(&e.n)) {
        match ln_nat(&e.count) {
            Ok(y) => data.push((e.n as f64, y)),
            Err(_) => excluded_zero.push(e.n),
        }
    }
    let width = 2 + basis.constant as usize + basis.log_n as usize;
    let needed = 4.max(width);
    if data.len() < needed {
        return Err(AsymptoticsError::TooFewPoints { needed, found: data.len() });
    }
    let row = |n: f64| {
        let mut r = alloc::vec![n * libm::log(n), n];
        if basis.constant {
            r.push(1.0);
        }
        if basis.log_n {
            r.push(libm::log(n));
        }
        r
    };
    let rows: Vec<Vec<f64>> = data.iter().map(|&(n, _)| row(n)).collect();
    let ys: Vec<f64> = data.iter().map(|&(_, y)| y).collect();
    let coef = least_squares(&rows, &ys).ok_or(AsymptoticsError::Degenerate)?;

    let residual_max = data.iter().zip(&rows).map(|(&(n, y), r)| libm::fabs(y - dot(r, &coef)) / n).fold(0.0, f64::max);
    let mut rest = coef[2..].iter().copied();
    let constant = if basis.constant { rest.next() } else { None };
    let log_coefficient = if basis.log_n { rest.next() } else { None };
    Ok(FitReport {
        lambda_hat: coef[0],
        slope_b: coef[1],
        constant,
        log_coefficient,
        residual_max,
        range: (n_min, n_max),
        lambda_target,
        points_used: data.len(),
        excluded_zero,
    })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Solves the least-squares problem by Householder QR on the design matrix.
fn least_squares(rows: &[Vec<f64>], ys: &[f64]) -> Option<Vec<f64>> {
    let m = rows.len();
    let k = rows[0].len();
    // Column scaling keeps the n log n and constant columns comparable.
    let scale: Vec<f64> = (0..k).map(|j| libm::sqrt(rows.iter().map(|r| r[j] * r[j]).sum::<f64>())).collect();
    if scale.contains(&0.0) {
        return None;
    }
    let mut a: Vec<Vec<f64>> = rows.iter().map(|r| (0..k).map(|j| r[j] / scale[j]).collect()).collect();
    let mut b = ys.to_vec();
    for j in 0..k {
        let norm = libm::sqrt((j..m).map(|i| a[i][j] * a[i][j]).sum::<f64>());
        if norm < 1e-13 {
            return None;
        }
        let alpha = if a[j][j] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (j..m).map(|i| a[i][j]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        for col in j..k {
            let s: f64 = (j..m).map(|i| v[i - j] * a[i][col]).sum::<f64>() * 2.0 / vnorm2;
            for (i, row) in a.iter_mut().enumerate().skip(j) {
                row[col] -= s * v[i - j];
            }
        }
        let s: f64 = (j..m).map(|i| v[i - j] * b[i]).sum::<f64>() * 2.0 / vnorm2;
        for i in j..m {
            b[i] -= s * v[i - j];
        }
    }
    let mut x = alloc::vec![0.0; k];
    for j in (0..k).rev() {
        let s: f64 = (j + 1..k).map(|c| a[j][c] * x[c]).sum();
        if libm::fabs(a[j][j]) < 1e-13 {
            return None;
        }
        x[j] = (b[j] - s) / a[j][j];
    }
    Some(x.iter().zip(&scale).map(|(v, s)| v / s).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InequalityKind {
    /// `N_{(n+1)D} >= N_{nD}`.
    Monotone,
    /// `N_{n(sF+E)}(Σ_s) >= n! N_{n((s-1)F+E)}(Σ_{s-1})`.
    Factorial,
}

/// One comparison `lhs >= rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckedPair {
    /// For monotone checks the smaller index; the compared entry is `n_next`.
    pub n: u32,
    pub n_next: Option<u32>,
    pub lhs: Nat,
    pub rhs: Nat,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityReport {
    pub kind: InequalityKind,
    pub checked_pairs: Vec<CheckedPair>,
    pub all_hold: bool,
}

impl InequalityReport {
    fn new(kind: InequalityKind, checked_pairs: Vec<CheckedPair>) -> Self {
        let all_hold = checked_pairs.iter().all(|p| p.holds);
        InequalityReport { kind, checked_pairs, all_hold }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckedPair> {
        self.checked_pairs.iter().filter(|p| !p.holds)
    }
}

/// Compares every pair of successive entries.
pub fn check_monotone(series: &CountSeries) -> InequalityReport {
    let pairs = series
        .entries()
        .windows(2)
        .map(|w| CheckedPair {
            n: w[0].n,
            n_next: Some(w[1].n),
            lhs: w[1].count.clone(),
            rhs: w[0].count.clone(),
            holds: w[1].count >= w[0].count,
        })
        .collect();
    InequalityReport::new(InequalityKind::Monotone, pairs)
}

fn factorial_shape_ok(upper: &CountSeries, lower: &CountSeries) -> bool {
    let Surface::Hirzebruch { s } = upper.surface else { return false };
    if s < 1 || upper.divisor.coeffs() != [s as i64, 1] {
        return false;
    }
    match lower.surface {
        Surface::Hirzebruch { s: t } => t + 1 == s && lower.divisor.coeffs() == [t as i64, 1],
        // Curves on Σ_1 away from E are plane curves.
        Surface::Plane => s == 2 && lower.divisor.coeffs() == [1],
        Surface::BlownPlane { .. } => false,
    }
}

/// Checks `upper(n) >= n! * lower(n)` for every `n` present in both series.
///
/// `lower` may also be the plane series of the line class when `s = 2`.
pub fn check_factorial_bound(upper: &CountSeries, lower: &CountSeries) -> Result<InequalityReport, AsymptoticsError> {
    if !factorial_shape_ok(upper, lower) {
        return Err(AsymptoticsError::FactorialShape);
    }
    let mut comb = Combinatorics::new();
    let pairs = upper
        .entries()
        .iter()
        .filter_map(|e| lower.get(e.n).map(|l| (e, l)))
        .map(|(e, l)| {
            let rhs = comb.factorial(e.n as usize) * l.clone();
            CheckedPair { n: e.n, n_next: None, holds: e.count >= rhs, lhs: e.count.clone(), rhs }
        })
        .collect();
    Ok(InequalityReport::new(InequalityKind::Factorial, pairs))
}

#[derive(Debug, Clone, PartialEq)]
pub struct BandReport {
    pub c_lower: f64,
    pub c_upper: f64,
    pub n_min: u32,
    pub lambda: i64,
    /// `(n, u_n)` with `u_n = (log N_n - λ n log n) / n`.
    pub values: Vec<(u32, f64)>,
}

impl BandReport {
    pub fn width(&self) -> f64 {
        self.c_upper - self.c_lower
    }

    /// True if the increments of `u_n` all share one sign, allowing
    /// opposite-sign increments up to `tolerance`.
    pub fn is_monotone_within(&self, tolerance: f64) -> bool {
        let steps: Vec<f64> = self.values.windows(2).map(|w| w[1].1 - w[0].1).collect();
        steps.iter().all(|&d| d >= -tolerance) || steps.iter().all(|&d| d <= tolerance)
    }

    /// The band restricted to `n >= n_min`.
    pub fn tail(&self, n_min: u32) -> Option<BandReport> {
        let values: Vec<(u32, f64)> = self.values.iter().copied().filter(|&(n, _)| n >= n_min).collect();
        band_from(values, n_min, self.lambda)
    }
}

fn band_from(values: Vec<(u32, f64)>, n_min: u32, lambda: i64) -> Option<BandReport> {
    if values.is_empty() {
        return None;
    }
    let c_lower = values.iter().map(|v| v.1).fold(f64::INFINITY, f64::min);
    let c_upper = values.iter().map(|v| v.1).fold(f64::NEG_INFINITY, f64::max);
    Some(BandReport { c_lower, c_upper, n_min, lambda, values })
}

pub const DEFAULT_BAND_START: u32 = 5;

/// Band of `u_n = (log N_n - λ n log n)/n` over entries with `n >= n_min`.
pub fn check_residual_band(series: &CountSeries, lambda: i64, n_min: u32) -> Result<BandReport, AsymptoticsError> {
    let usable: Vec<&SeriesEntry> = series.entries().iter().filter(|e| !e.count.is_zero()).collect();
    if usable.len() < 2 {
        return Err(AsymptoticsError::TooFewPoints { needed: 2, found: usable.len() });
    }
    let values: Vec<(u32, f64)> = usable
        .iter()
        .filter(|e| e.n >= n_min)
        .map(|e| {
            let n = e.n as f64;
            let log = ln_nat(&e.count).expect("non-zero");
            (e.n, (log - lambda as f64 * n * libm::log(n)) / n)
        })
        .collect();
    let found = values.len();
    band_from(values, n_min, lambda).ok_or(AsymptoticsError::TooFewPoints { needed: 1, found })
}
