//! CSV and SVG writers.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{self, Write};

use tfd_complexity::{ComplexityCurve, ComplexitySample};

use crate::config::TimeUnit;

pub const CSV_HEADER: &str = "theta,c_plus,c_minus,c_total,delta_c";

/// 15 significant digits.
fn num(x: f64) -> String {
    format!("{x:.14e}")
}

/// Writes the comment block, header and one row per sample.
pub fn emit_csv<W: Write>(
    w: &mut W,
    curve: &ComplexityCurve,
    time_unit: TimeUnit,
) -> io::Result<()> {
    if curve.samples.is_empty() {
        return Err(io::Error::new(
            io::ErrorKind::InvalidInput,
            "curve has no samples",
        ));
    }
    let p = &curve.params;
    writeln!(w, "# beta_omega={}", p.beta_omega)?;
    writeln!(w, "# beta_omega_ref={}", p.beta_omega_ref)?;
    writeln!(w, "# field_ratio={}", p.field_ratio)?;
    writeln!(w, "# lambda_ref={}", p.lambda_ref)?;
    writeln!(w, "# method={}", curve.scheme.method)?;
    writeln!(
        w,
        "# strict_paper_spectrum={}",
        curve.scheme.strict_paper_spectrum
    )?;
    writeln!(w, "# time_unit={}", time_unit.as_str())?;
    if let Ok(d) = p.derive() {
        writeln!(w, "# alpha={}", num(d.alpha))?;
        writeln!(w, "# lambda={}", num(d.lambda))?;
        writeln!(w, "# d_tilde={}", num(d.d_tilde))?;
        if d.alpha_clamped {
            writeln!(w, "# alpha_clamped=true")?;
        }
    }
    writeln!(w, "# c_at_zero={}", num(curve.c_at_zero))?;
    writeln!(w, "{CSV_HEADER}")?;
    for s in &curve.samples {
        writeln!(
            w,
            "{},{},{},{},{}",
            num(time_unit.convert(s.theta, p.beta_omega)),
            num(s.c_plus),
            num(s.c_minus),
            num(s.c_total),
            num(s.delta_c)
        )?;
    }
    Ok(())
}

pub fn csv_string(curve: &ComplexityCurve, time_unit: TimeUnit) -> String {
    let mut buf = Vec::new();
    emit_csv(&mut buf, curve, time_unit).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("CSV output is ASCII")
}

/// An emitted file read back.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedCsv {
    pub metadata: BTreeMap<String, String>,
    /// `theta` holds the first column as written (phase or `t/β`).
    pub rows: Vec<ComplexitySample>,
}

pub fn parse_csv(text: &str) -> Result<ParsedCsv, String> {
    let mut metadata = BTreeMap::new();
    let mut lines = text.lines().enumerate();
    let mut header_seen = false;
    for (_, line) in lines.by_ref() {
        if let Some(comment) = line.strip_prefix('#') {
            if let Some((k, v)) = comment.trim().split_once('=') {
                metadata.insert(k.trim().to_string(), v.trim().to_string());
            }
            continue;
        }
        if line != CSV_HEADER {
            return Err(format!("unexpected header `{line}`"));
        }
        header_seen = true;
        break;
    }
    if !header_seen {
        return Err("missing header".into());
    }
    let mut rows = Vec::new();
    for (i, line) in lines {
        let fields = line
            .split(',')
            .map(|f| f.parse::<f64>().map_err(|e| format!("line {}: {e}", i + 1)))
            .collect::<Result<Vec<_>, _>>()?;
        let [theta, c_plus, c_minus, c_total, delta_c] = fields[..] else {
            return Err(format!(
                "line {}: expected 5 fields, got {}",
                i + 1,
                fields.len()
            ));
        };
        rows.push(ComplexitySample {
            theta,
            c_plus,
            c_minus,
            c_total,
            delta_c,
        });
    }
    Ok(ParsedCsv { metadata, rows })
}

/// A curve with its legend text.
#[derive(Debug, Clone, Copy)]
pub struct LabeledCurve<'a> {
    pub label: &'a str,
    pub curve: &'a ComplexityCurve,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("nothing to plot: no curves or no samples")]
pub struct EmptyPlot;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;
const PALETTE: [&str; 9] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22",
];

/// Step from {1, 2, 5} × 10ⁿ giving about `target` intervals.
fn tick_step(span: f64, target: f64) -> f64 {
    let raw = span / target;
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let nice = if norm < 1.5 {
        1.0
    } else if norm < 3.5 {
        2.0
    } else if norm < 7.5 {
        5.0
    } else {
        10.0
    };
    nice * mag
}

fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let step = tick_step(hi - lo, 5.0);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

fn tick_label(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if x.abs() >= 1e-3 && x.abs() < 1e4 {
        let s = format!("{x:.4}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        format!("{x:.1e}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// One polyline of `(x, ΔC)` per curve with axes, ticks and a legend.
pub fn render_svg(curves: &[LabeledCurve<'_>], time_unit: TimeUnit) -> Result<String, EmptyPlot> {
    if curves.is_empty() || curves.iter().any(|c| c.curve.samples.is_empty()) {
        return Err(EmptyPlot);
    }
    let points: Vec<Vec<(f64, f64)>> = curves
        .iter()
        .map(|c| {
            c.curve
                .samples
                .iter()
                .map(|s| {
                    (
                        time_unit.convert(s.theta, c.curve.params.beta_omega),
                        s.delta_c,
                    )
                })
                .collect()
        })
        .collect();
    let all = points.iter().flatten();
    let (mut x0, mut x1) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if x1 <= x0 {
        x1 = x0 + 1.0;
    }
    if y1 - y0 <= f64::EPSILON * y1.abs().max(1.0) {
        let pad = y1.abs().max(1.0);
        y0 -= pad;
        y1 += pad;
    } else {
        let pad = 0.05 * (y1 - y0);
        y0 -= pad;
        y1 += pad;
    }
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * plot_w;
    let sy = |y: f64| TOP + (y1 - y) / (y1 - y0) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    for t in ticks(x0, x1) {
        let x = sx(t);
        let yb = TOP + plot_h;
        let _ = writeln!(
            svg,
            r#"<line x1="{x:.2}" y1="{yb}" x2="{x:.2}" y2="{:.2}" stroke="black"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            yb + 5.0,
            yb + 20.0,
            tick_label(t)
        );
    }
    for t in ticks(y0, y1) {
        let y = sy(t);
        let _ = writeln!(
            svg,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{LEFT}" y2="{y:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            LEFT - 5.0,
            LEFT - 8.0,
            y + 4.0,
            tick_label(t)
        );
    }
    if y0 < 0.0 && y1 > 0.0 {
        let y = sy(0.0);
        let _ = writeln!(
            svg,
            r##"<line x1="{LEFT}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#bbbbbb" stroke-dasharray="4 3"/>"##,
            LEFT + plot_w
        );
    }
    let x_label = match time_unit {
        TimeUnit::Phase => "θ = ωt",
        TimeUnit::Beta => "t/β",
    };
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{x_label}</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">ΔC</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0
    );
    for (i, (c, pts)) in curves.iter().zip(&points).enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        let path: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{}"/>"#,
            path.join(" ")
        );
        let ly = TOP + 10.0 + 18.0 * i as f64;
        let lx = LEFT + plot_w + 15.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{colour}" stroke-width="2"/><text x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 20.0,
            lx + 26.0,
            ly + 4.0,
            escape(c.label)
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
