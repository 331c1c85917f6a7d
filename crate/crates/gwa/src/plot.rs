//! SVG chart of `log N_n / (n log n)` against `n`.

use std::fmt::Write as _;

use anyhow::{bail, Result};
use gwa_core::asymptotics::fit_lambda;
use gwa_core::numerics::ln_nat;
use gwa_core::CountSeries;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const FIT_MIN_POINTS: usize = 4;

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn x(&self, v: f64) -> f64 {
        LEFT + (v - self.x0) / (self.x1 - self.x0) * (WIDTH - LEFT - RIGHT)
    }

    fn y(&self, v: f64) -> f64 {
        HEIGHT - BOTTOM - (v - self.y0) / (self.y1 - self.y0) * (HEIGHT - TOP - BOTTOM)
    }
}

fn polyline(out: &mut String, pts: &[(f64, f64)], style: &str) {
    let coords: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
    writeln!(out, r#"<polyline points="{}" {style}/>"#, coords.join(" ")).unwrap();
}

/// Renders the series. Entries with `n < 2` or zero count are skipped; the
/// fitted curve `λ̂ + b / log n` is drawn only with at least four points.
pub fn render_svg(series: &CountSeries) -> Result<String> {
    if series.is_empty() {
        bail!("series is empty");
    }
    let lambda = series.lambda_target()? as f64;
    let points: Vec<(f64, f64)> = series
        .entries()
        .iter()
        .filter(|e| e.n >= 2)
        .filter_map(|e| {
            let n = e.n as f64;
            ln_nat(&e.count).ok().map(|l| (n, l / (n * n.ln())))
        })
        .collect();
    if points.is_empty() {
        bail!("series has no plottable entries (need n >= 2 with non-zero count)");
    }

    let (mut x0, mut x1) = (points[0].0, points[points.len() - 1].0);
    if x0 == x1 {
        x0 -= 1.0;
        x1 += 1.0;
    }
    let mut y0 = points.iter().map(|p| p.1).fold(lambda, f64::min);
    let mut y1 = points.iter().map(|p| p.1).fold(lambda, f64::max);
    let pad = ((y1 - y0) * 0.05).max(0.05);
    y0 -= pad;
    y1 += pad;
    let frame = Frame { x0, x1, y0, y1 };

    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#).unwrap();
    let (bx0, by0, bx1, by1) = (LEFT, TOP, WIDTH - RIGHT, HEIGHT - BOTTOM);
    polyline(&mut out, &[(bx0, by0), (bx0, by1), (bx1, by1)], r#"fill="none" stroke="black" stroke-width="1""#);
    writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="14" text-anchor="middle">n</text>"#,
        (bx0 + bx1) / 2.0,
        HEIGHT - 15.0
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="15" y="{:.2}" font-family="sans-serif" font-size="14" transform="rotate(-90 15 {:.2})" text-anchor="middle">log N / (n log n)</text>"#,
        (by0 + by1) / 2.0,
        (by0 + by1) / 2.0
    )
    .unwrap();
    for (v, anchor, px, py) in
        [(frame.x0, "start", frame.x(frame.x0), by1 + 18.0), (frame.x1, "end", frame.x(frame.x1), by1 + 18.0)]
    {
        writeln!(
            out,
            r#"<text x="{px:.2}" y="{py:.2}" font-family="sans-serif" font-size="12" text-anchor="{anchor}">{v:.0}</text>"#
        )
        .unwrap();
    }
    for v in [frame.y0, frame.y1] {
        writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="end">{v:.3}</text>"#,
            bx0 - 6.0,
            frame.y(v) + 4.0
        )
        .unwrap();
    }

    let ly = frame.y(lambda);
    writeln!(
        out,
        r##"<line id="reference" x1="{bx0:.2}" y1="{ly:.2}" x2="{bx1:.2}" y2="{ly:.2}" stroke="#c03030" stroke-dasharray="6,4"/>"##
    )
    .unwrap();
    writeln!(
        out,
        r##"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12" fill="#c03030" text-anchor="end">λ = {lambda}</text>"##,
        bx1 - 4.0,
        ly - 6.0
    )
    .unwrap();

    let mapped: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (frame.x(x), frame.y(y))).collect();
    polyline(&mut out, &mapped, r##"id="data" fill="none" stroke="#2050a0" stroke-width="1.5""##);
    for (x, y) in &mapped {
        writeln!(out, r##"<circle class="marker" cx="{x:.2}" cy="{y:.2}" r="2.5" fill="#2050a0"/>"##).unwrap();
    }

    if points.len() >= FIT_MIN_POINTS {
        let n_min = points[0].0 as u32;
        let n_max = points[points.len() - 1].0 as u32;
        if let Ok(fit) = fit_lambda(series, n_min, n_max) {
            let curve: Vec<(f64, f64)> =
                points.iter().map(|&(n, _)| (frame.x(n), frame.y(fit.lambda_hat + fit.slope_b / n.ln()))).collect();
            polyline(
                &mut out,
                &curve,
                r##"id="fit" fill="none" stroke="#30a050" stroke-width="1" stroke-dasharray="2,2""##,
            );
        }
    }
    writeln!(out, "</svg>").unwrap();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use gwa_core::geometry::{DivisorClass, Surface};
    use gwa_core::kontsevich::series_plane;
    use gwa_core::Nat;

    #[test]
    fn plane_plot_has_reference_at_three() {
        let svg = render_svg(&series_plane(200)).unwrap();
        assert!(svg.contains(r#"viewBox="0 0 800 600""#));
        assert!(svg.contains("λ = 3"));
        assert!(svg.contains(r#"id="reference""#));
        assert!(svg.contains(r#"id="fit""#));
        assert_eq!(svg, render_svg(&series_plane(200)).unwrap());
    }

    #[test]
    fn two_points_no_fit() {
        let s = CountSeries::from_entries(
            Surface::Plane,
            DivisorClass::new([1]),
            vec![(2, Nat::from(1u64)), (3, Nat::from(12u64))],
        )
        .unwrap();
        let svg = render_svg(&s).unwrap();
        assert_eq!(svg.matches(r#"class="marker""#).count(), 2);
        assert!(!svg.contains(r#"id="fit""#));
    }

    #[test]
    fn empty_series_is_an_error() {
        assert!(render_svg(&CountSeries::new(Surface::Plane, DivisorClass::new([1]))).is_err());
    }
}
