//! Deterministic SVG line/point charts of an experiment CSV: one panel per
//! metric, x = tau, simulation points with standard-error bars and analytic
//! curves, one series per alpha.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::simulate::CsvRow;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 130.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const COLORS: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axes {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Default for Axes {
    fn default() -> Self {
        Self {
            x_min: 2.0,
            x_max: 3.0,
            y_min: 0.0,
            y_max: 1.0,
        }
    }
}

impl Axes {
    fn validate(&self) -> Result<()> {
        let ok = |lo: f64, hi: f64| lo.is_finite() && hi.is_finite() && lo < hi;
        if ok(self.x_min, self.x_max) && ok(self.y_min, self.y_max) {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "empty or non-finite plot range {self:?}"
            )))
        }
    }

    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x_min) / (self.x_max - self.x_min) * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - BOTTOM - (y - self.y_min) / (self.y_max - self.y_min) * (HEIGHT - TOP - BOTTOM)
    }
}

/// Which CSV columns feed a panel.
pub struct Panel {
    pub file: &'static str,
    pub title: &'static str,
    sim: fn(&CsvRow) -> (Option<f64>, Option<f64>),
    ana: fn(&CsvRow) -> Option<f64>,
}

pub const PANELS: [Panel; 4] = [
    Panel {
        file: "gin_gcc.svg",
        title: "|GIN| / |GCC|",
        sim: |r| (r.gin_gcc_sim, r.gin_gcc_se),
        ana: |r| r.gin_gcc_ana,
    },
    Panel {
        file: "gout_gcc.svg",
        title: "|GOUT| / |GCC|",
        sim: |r| (r.gout_gcc_sim, r.gout_gcc_se),
        ana: |r| r.gout_gcc_ana,
    },
    Panel {
        file: "spread.svg",
        title: "expected spread",
        sim: |r| (r.spread_sim, r.spread_se),
        ana: |r| r.spread_ana,
    },
    Panel {
        file: "vulnerability.svg",
        title: "expected vulnerability",
        sim: |r| (r.vuln_sim, r.vuln_se),
        ana: |r| r.vuln_ana,
    },
];

fn alphas(rows: &[CsvRow]) -> Vec<f64> {
    let mut a: Vec<f64> = rows.iter().map(|r| r.alpha).collect();
    a.sort_by(f64::total_cmp);
    a.dedup();
    a
}

fn tick_label(v: f64) -> String {
    let s = format!("{v:.2}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

pub fn render_panel(panel: &Panel, rows: &[CsvRow], axes: &Axes) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        s,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
        (LEFT + WIDTH - RIGHT) / 2.0,
        panel.title
    );

    let (x0, x1) = (axes.px(axes.x_min), axes.px(axes.x_max));
    let (y0, y1) = (axes.py(axes.y_min), axes.py(axes.y_max));
    let _ = writeln!(
        s,
        r#"<rect x="{x0:.1}" y="{y1:.1}" width="{:.1}" height="{:.1}" fill="none" stroke="black"/>"#,
        x1 - x0,
        y0 - y1
    );
    for i in 0..=10 {
        let t = axes.x_min + (axes.x_max - axes.x_min) * f64::from(i) / 10.0;
        let x = axes.px(t);
        let _ = writeln!(
            s,
            r#"<line x1="{x:.1}" y1="{y0:.1}" x2="{x:.1}" y2="{:.1}" stroke="black"/>"#,
            y0 + 5.0
        );
        if i % 2 == 0 {
            let _ = writeln!(
                s,
                r#"<text x="{x:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
                y0 + 20.0,
                tick_label(t)
            );
        }
    }
    for i in 0..=5 {
        let t = axes.y_min + (axes.y_max - axes.y_min) * f64::from(i) / 5.0;
        let y = axes.py(t);
        let _ = writeln!(
            s,
            r#"<line x1="{:.1}" y1="{y:.1}" x2="{x0:.1}" y2="{y:.1}" stroke="black"/>"#,
            x0 - 5.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"#,
            x0 - 8.0,
            y + 4.0,
            tick_label(t)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">tau</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 15.0
    );

    for (k, alpha) in alphas(rows).into_iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let mut series: Vec<&CsvRow> = rows.iter().filter(|r| r.alpha == alpha).collect();
        series.sort_by(|a, b| a.tau.total_cmp(&b.tau));

        let _ = writeln!(
            s,
            r#"<g class="simulation" data-alpha="{alpha}" fill="{color}" stroke="{color}">"#
        );
        for r in &series {
            if let (Some(m), se) = (panel.sim)(r) {
                let (x, y) = (axes.px(r.tau), axes.py(m));
                if let Some(se) = se.filter(|e| *e > 0.0) {
                    let _ = writeln!(
                        s,
                        r#"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}"/>"#,
                        axes.py(m - se),
                        axes.py(m + se)
                    );
                }
                let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3"/>"#);
            }
        }
        let _ = writeln!(s, "</g>");

        let points: Vec<String> = series
            .iter()
            .filter_map(|r| {
                (panel.ana)(r).map(|v| format!("{:.2},{:.2}", axes.px(r.tau), axes.py(v)))
            })
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline class="analytic" data-alpha="{alpha}" fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            points.join(" ")
        );

        let ly = TOP + 20.0 + 20.0 * k as f64;
        let lx = WIDTH - RIGHT + 15.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx:.1}" y1="{ly:.1}" x2="{:.1}" y2="{ly:.1}" stroke="{color}" stroke-width="1.5"/>"#,
            lx + 20.0
        );
        let _ = writeln!(
            s,
            r#"<circle cx="{:.1}" cy="{ly:.1}" r="3" fill="{color}"/>"#,
            lx + 10.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}">alpha={alpha}</text>"#,
            lx + 26.0,
            ly + 4.0
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Writes the four panels into `out_dir` and returns their paths.
pub fn plot_csv(rows: &[CsvRow], out_dir: &Path, axes: &Axes) -> Result<Vec<PathBuf>> {
    axes.validate()?;
    if rows.is_empty() {
        return Err(Error::NoData("the CSV has no data rows".into()));
    }
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    PANELS
        .iter()
        .map(|panel| {
            let path = out_dir.join(panel.file);
            std::fs::write(&path, render_panel(panel, rows, axes))
                .map_err(|e| Error::io(&path, e))?;
            Ok(path)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(tau: f64, alpha: f64) -> CsvRow {
        CsvRow {
            tau,
            alpha,
            n: 10,
            num_graphs: 1,
            trials: 1,
            gin_gcc_sim: Some(0.9),
            gin_gcc_se: Some(0.01),
            gout_gcc_sim: Some(0.1),
            gout_gcc_se: Some(0.01),
            spread_sim: Some(0.1),
            spread_se: Some(0.0),
            vuln_sim: Some(0.01),
            vuln_se: None,
            gin_gcc_ana: Some(0.95),
            gout_gcc_ana: Some(0.12),
            spread_ana: Some(0.11),
            vuln_ana: None,
        }
    }

    #[test]
    fn series_per_alpha() {
        let rows: Vec<CsvRow> = [0.1, 1.0]
            .iter()
            .flat_map(|&a| [2.1, 2.5].map(|t| row(t, a)))
            .collect();
        let svg = render_panel(&PANELS[0], &rows, &Axes::default());
        assert_eq!(svg.matches(r#"class="simulation""#).count(), 2);
        assert_eq!(svg.matches(r#"class="analytic""#).count(), 2);
        assert_eq!(svg, render_panel(&PANELS[0], &rows, &Axes::default()));
    }

    #[test]
    fn empty_input_is_no_data() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(
            plot_csv(&[], dir.path(), &Axes::default()),
            Err(Error::NoData(_))
        ));
        let bad = Axes {
            x_min: 3.0,
            ..Axes::default()
        };
        assert!(plot_csv(&[row(2.1, 1.0)], dir.path(), &bad).is_err());
    }
}
