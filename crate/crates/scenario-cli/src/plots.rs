//! Standalone SVG artifacts with the plotted series embedded as a
//! metadata table, so every figure carries its own data.

use serde_json::Value;

fn svg_header(w: u32, h: u32) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n\
         <rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n"
    )
}

fn embed_table(series: &[(String, Vec<(f64, f64)>)]) -> String {
    let mut rows = String::new();
    for (name, pts) in series {
        rows.push_str(&format!("{name}:"));
        for (x, y) in pts {
            rows.push_str(&format!(" {x:.9e},{y:.9e}"));
        }
        rows.push('\n');
    }
    format!("<metadata id=\"data-table\">\n{rows}</metadata>\n")
}

/// Log-log scatter with a fitted line annotation.
pub fn loglog_plot(
    title: &str,
    series: &[(String, Vec<(f64, f64)>)],
    fit_label: Option<&str>,
) -> String {
    let (w, h) = (640u32, 480u32);
    let margin = 60.0;
    let mut all: Vec<(f64, f64)> = series.iter().flat_map(|(_, p)| p.iter().copied()).collect();
    all.retain(|p| p.0 > 0.0 && p.1 > 0.0);
    if all.is_empty() {
        return empty_plot(title);
    }
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for (x, y) in &all {
        x0 = x0.min(x.log10());
        x1 = x1.max(x.log10());
        y0 = y0.min(y.log10());
        y1 = y1.max(y.log10());
    }
    let pad = |lo: &mut f64, hi: &mut f64| {
        if (*hi - *lo).abs() < 1e-12 {
            *lo -= 0.5;
            *hi += 0.5;
        }
    };
    pad(&mut x0, &mut x1);
    pad(&mut y0, &mut y1);
    let px = |x: f64| margin + (x.log10() - x0) / (x1 - x0) * (w as f64 - 2.0 * margin);
    let py = |y: f64| h as f64 - margin - (y.log10() - y0) / (y1 - y0) * (h as f64 - 2.0 * margin);

    let mut s = svg_header(w, h);
    s.push_str(&format!(
        "<text x=\"{}\" y=\"24\" font-size=\"16\" text-anchor=\"middle\">{title}</text>\n",
        w / 2
    ));
    s.push_str(&format!(
        "<rect x=\"{margin}\" y=\"{margin}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
        w as f64 - 2.0 * margin,
        h as f64 - 2.0 * margin
    ));
    let colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];
    for (si, (name, pts)) in series.iter().enumerate() {
        let color = colors[si % colors.len()];
        let mut path = String::new();
        for (i, (x, y)) in pts.iter().filter(|p| p.0 > 0.0 && p.1 > 0.0).enumerate() {
            let cmd = if i == 0 { 'M' } else { 'L' };
            path.push_str(&format!("{cmd}{:.2},{:.2} ", px(*x), py(*y)));
        }
        s.push_str(&format!(
            "<path d=\"{path}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>\n"
        ));
        for (x, y) in pts.iter().filter(|p| p.0 > 0.0 && p.1 > 0.0) {
            s.push_str(&format!(
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"{color}\"/>\n",
                px(*x),
                py(*y)
            ));
        }
        s.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"12\" fill=\"{color}\">{name}</text>\n",
            w as f64 - margin - 150.0,
            margin + 18.0 * (si as f64 + 1.0)
        ));
    }
    if let Some(label) = fit_label {
        s.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"13\">{label}</text>\n",
            margin + 10.0,
            margin + 20.0
        ));
    }
    s.push_str(&embed_table(series));
    s.push_str("</svg>\n");
    s
}

/// A heat strip: one row of colored cells per series sample.
pub fn heat_strip(title: &str, values: &[(f64, f64)]) -> String {
    if values.is_empty() {
        return empty_plot(title);
    }
    let (w, h) = (640u32, 160u32);
    let margin = 40.0;
    let vmax = values.iter().map(|v| v.1.abs()).fold(1e-300_f64, f64::max);
    let cell_w = (w as f64 - 2.0 * margin) / values.len() as f64;
    let mut s = svg_header(w, h);
    s.push_str(&format!(
        "<text x=\"{}\" y=\"20\" font-size=\"14\" text-anchor=\"middle\">{title}</text>\n",
        w / 2
    ));
    for (i, (_, v)) in values.iter().enumerate() {
        let u = (v.abs() / vmax).clamp(0.0, 1.0);
        let r = (255.0 * u) as u8;
        let b = (255.0 * (1.0 - u)) as u8;
        s.push_str(&format!(
            "<rect x=\"{:.2}\" y=\"40\" width=\"{:.2}\" height=\"60\" fill=\"rgb({r},40,{b})\"/>\n",
            margin + i as f64 * cell_w,
            cell_w + 0.5
        ));
    }
    s.push_str(&embed_table(&[("strip".into(), values.to_vec())]));
    s.push_str("</svg>\n");
    s
}

/// Text rows rendered into an SVG (dominance tables).
pub fn text_panel(title: &str, lines: &[String]) -> String {
    let w = 760u32;
    let h = (60 + 18 * lines.len()) as u32;
    let mut s = svg_header(w, h.max(120));
    s.push_str(&format!(
        "<text x=\"20\" y=\"28\" font-size=\"15\" font-weight=\"bold\">{title}</text>\n"
    ));
    for (i, line) in lines.iter().enumerate() {
        let escaped = line
            .replace('&', "&amp;")
            .replace('<', "&lt;")
            .replace('>', "&gt;");
        s.push_str(&format!(
            "<text x=\"20\" y=\"{}\" font-size=\"12\" font-family=\"monospace\">{escaped}</text>\n",
            52 + 18 * i
        ));
    }
    s.push_str("</svg>\n");
    s
}

pub fn empty_plot(title: &str) -> String {
    let mut s = svg_header(480, 120);
    s.push_str(&format!(
        "<text x=\"240\" y=\"55\" font-size=\"14\" text-anchor=\"middle\">{title}</text>\n\
         <text x=\"240\" y=\"80\" font-size=\"12\" text-anchor=\"middle\" fill=\"gray\">(empty data set)</text>\n"
    ));
    s.push_str("</svg>\n");
    s
}

/// Regenerate the plots a report's series describe.
pub fn plots_from_report(report: &crate::report::RunReport) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for (name, value) in &report.series {
        let pts = parse_series(value);
        match name.as_str() {
            s if s.ends_with("_loglog") => {
                out.push((
                    format!("{name}.svg"),
                    loglog_plot(name, &[(name.clone(), pts)], None),
                ));
            }
            s if s.ends_with("_strip") => {
                out.push((format!("{name}.svg"), heat_strip(name, &pts)));
            }
            _ => {
                if pts.is_empty() {
                    out.push((format!("{name}.svg"), empty_plot(name)));
                } else {
                    out.push((
                        format!("{name}.svg"),
                        loglog_plot(name, &[(name.clone(), pts)], None),
                    ));
                }
            }
        }
    }
    out
}

pub fn parse_series(v: &Value) -> Vec<(f64, f64)> {
    v.as_array()
        .map(|arr| {
            arr.iter()
                .filter_map(|p| {
                    let pair = p.as_array()?;
                    Some((pair.first()?.as_f64()?, pair.get(1)?.as_f64()?))
                })
                .collect()
        })
        .unwrap_or_default()
}
