//! Static SVG line charts of directivity against θ.

use std::fmt::Write as _;

use coupled_array::SweepRecord;

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 64.0;
const RIGHT: f64 = 190.0;
const TOP: f64 = 36.0;
const BOTTOM: f64 = 52.0;

const COLORS: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
];
const DASHES: [&str; 3] = ["none", "6 4", "2 3"];

pub struct Series {
    pub label: String,
    pub color: &'static str,
    pub dash: &'static str,
    /// `(θ, G)`; NaN breaks the line.
    pub points: Vec<(f64, f64)>,
}

/// One series per `(algorithm, d_max)` in record order; colour follows the
/// algorithm, dash pattern the aperture.
pub fn series_from_records(records: &[SweepRecord]) -> Vec<Series> {
    let mut keys: Vec<(coupled_array::Algorithm, f64)> = Vec::new();
    for r in records {
        if !keys.iter().any(|&(a, d)| a == r.algorithm && d == r.d_max) {
            keys.push((r.algorithm, r.d_max));
        }
    }
    keys.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let mut apertures: Vec<f64> = keys.iter().map(|k| k.1).collect();
    apertures.sort_by(f64::total_cmp);
    apertures.dedup();
    keys.iter()
        .map(|&(alg, d_max)| {
            let aperture = apertures.iter().position(|&d| d == d_max).unwrap_or(0);
            Series {
                label: format!("{alg}, d_max={d_max}λ"),
                color: COLORS[alg as usize % COLORS.len()],
                dash: DASHES[aperture % DASHES.len()],
                points: records
                    .iter()
                    .filter(|r| r.algorithm == alg && r.d_max == d_max)
                    .map(|r| (r.theta_deg, r.directivity))
                    .collect(),
            }
        })
        .collect()
}

fn nice_step(span: f64) -> f64 {
    let raw = span / 6.0;
    let base = 10f64.powf(raw.log10().floor());
    [1.0, 2.0, 2.5, 5.0, 10.0]
        .iter()
        .map(|m| m * base)
        .find(|&s| s >= raw)
        .unwrap_or(10.0 * base)
}

/// Chart with θ ∈ [0°, 90°] on x and a dashed reference line at `reference`.
pub fn line_chart(title: &str, series: &[Series], reference: f64) -> String {
    let values = series
        .iter()
        .flat_map(|s| s.points.iter().map(|p| p.1))
        .filter(|v| v.is_finite())
        .chain([reference]);
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    let step = nice_step((hi - lo).max(1.0));
    let y_min = ((lo / step).floor() * step).max(0.0);
    let y_max = (hi / step).ceil() * step;
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let px = |theta: f64| LEFT + theta / 90.0 * plot_w;
    let py = |g: f64| TOP + (y_max - g) / (y_max - y_min) * plot_h;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
        LEFT + plot_w / 2.0,
        escape(title)
    );

    let mut theta = 0.0;
    while theta <= 90.0 {
        let x = px(theta);
        let _ = writeln!(
            s,
            r##"<line x1="{x:.1}" y1="{TOP:.1}" x2="{x:.1}" y2="{:.1}" stroke="#e5e5e5"/>"##,
            TOP + plot_h
        );
        let _ = writeln!(
            s,
            r#"<text x="{x:.1}" y="{:.1}" text-anchor="middle">{theta}</text>"#,
            TOP + plot_h + 18.0
        );
        theta += 15.0;
    }
    let mut g = y_min;
    while g <= y_max + 1e-9 {
        let y = py(g);
        let _ = writeln!(
            s,
            r##"<line x1="{LEFT:.1}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}" stroke="#e5e5e5"/>"##,
            LEFT + plot_w
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"#,
            LEFT - 6.0,
            y + 4.0,
            trim(g)
        );
        g += step;
    }
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT:.1}" y="{TOP:.1}" width="{plot_w:.1}" height="{plot_h:.1}" fill="none" stroke="black"/>"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">θ (degrees)</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        s,
        r#"<text transform="translate(18 {:.1}) rotate(-90)" text-anchor="middle">directivity</text>"#,
        TOP + plot_h / 2.0
    );

    let yr = py(reference);
    let _ = writeln!(
        s,
        r#"<line x1="{LEFT:.1}" y1="{yr:.1}" x2="{:.1}" y2="{yr:.1}" stroke="black" stroke-dasharray="4 4"/>"#,
        LEFT + plot_w
    );

    for series in series {
        for run in series.points.split(|p| !p.1.is_finite()) {
            if run.is_empty() {
                continue;
            }
            let pts: Vec<String> = run
                .iter()
                .map(|&(t, g)| format!("{:.2},{:.2}", px(t), py(g)))
                .collect();
            let _ = writeln!(
                s,
                r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="1.6" stroke-dasharray="{}"/>"#,
                pts.join(" "),
                series.color,
                series.dash
            );
        }
    }

    let legend_x = LEFT + plot_w + 14.0;
    let mut legend_y = TOP + 10.0;
    for series in series {
        let _ = writeln!(
            s,
            r#"<line x1="{legend_x:.1}" y1="{legend_y:.1}" x2="{:.1}" y2="{legend_y:.1}" stroke="{}" stroke-width="1.6" stroke-dasharray="{}"/>"#,
            legend_x + 24.0,
            series.color,
            series.dash
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}">{}</text>"#,
            legend_x + 30.0,
            legend_y + 4.0,
            escape(&series.label)
        );
        legend_y += 18.0;
    }
    let _ = writeln!(
        s,
        r#"<line x1="{legend_x:.1}" y1="{legend_y:.1}" x2="{:.1}" y2="{legend_y:.1}" stroke="black" stroke-dasharray="4 4"/>"#,
        legend_x + 24.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}">N = {}</text>"#,
        legend_x + 30.0,
        legend_y + 4.0,
        trim(reference)
    );
    s.push_str("</svg>\n");
    s
}

fn trim(v: f64) -> String {
    let text = format!("{v:.2}");
    text.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
