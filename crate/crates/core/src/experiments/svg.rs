//! Static line plots of the training and sweep CSVs.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::csv_io::{read_rows, SweepCsvRow, TrainingRow, SWEEP_HEADER, TRAINING_HEADER};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    Training,
    Sweep,
}

const SUPERVISED_COLOR: &str = "#2ca02c";
const GRAPH_COLOR: &str = "#1f77b4";
const PANEL_W: f64 = 360.0;
const PANEL_H: f64 = 260.0;
const MARGIN: f64 = 50.0;

struct Panel<'a> {
    title: &'a str,
    supervised: Vec<(f64, f64)>,
    graph: Vec<(f64, f64)>,
}

/// Writes `<csv stem>.svg` next to the CSV and returns its path.
pub fn emit_svg(csv_path: &Path, kind: PlotKind) -> Result<PathBuf> {
    let (x_label, panels, markers) = match kind {
        PlotKind::Training => {
            let rows: Vec<TrainingRow> = read_rows(csv_path, &TRAINING_HEADER)?;
            let col = |f: fn(&TrainingRow) -> f64| rows.iter().map(|r| (r.step_times_epsilon, f(r))).collect();
            (
                "s·ε",
                [
                    Panel {
                        title: "(a) training",
                        supervised: col(|r| r.supervised_training),
                        graph: col(|r| r.graph_training),
                    },
                    Panel {
                        title: "(b) testing",
                        supervised: col(|r| r.supervised_testing),
                        graph: col(|r| r.graph_testing),
                    },
                ],
                rows.len() == 1,
            )
        }
        PlotKind::Sweep => {
            let rows: Vec<SweepCsvRow> = read_rows(csv_path, &SWEEP_HEADER)?;
            let col = |f: fn(&SweepCsvRow) -> f64| rows.iter().map(|r| (r.s as f64, f(r))).collect();
            (
                "S",
                [
                    Panel {
                        title: "(a) training",
                        supervised: col(|r| r.supervised_training),
                        graph: col(|r| r.graph_training),
                    },
                    Panel {
                        title: "(b) testing",
                        supervised: col(|r| r.supervised_testing),
                        graph: col(|r| r.graph_testing),
                    },
                ],
                true,
            )
        }
    };
    let svg = render(x_label, &panels, markers);
    let out = csv_path.with_extension("svg");
    std::fs::write(&out, svg)?;
    Ok(out)
}

fn x_range(panels: &[Panel]) -> (f64, f64) {
    let xs = panels
        .iter()
        .flat_map(|p| p.supervised.iter().chain(&p.graph))
        .map(|&(x, _)| x);
    let (lo, hi) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)));
    if !lo.is_finite() {
        (0.0, 1.0)
    } else if hi - lo < 1e-12 {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

fn render(x_label: &str, panels: &[Panel], markers: bool) -> String {
    let width = panels.len() as f64 * (PANEL_W + MARGIN) + MARGIN;
    let height = PANEL_H + 2.0 * MARGIN + 30.0;
    let (x_lo, x_hi) = x_range(panels);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (i, panel) in panels.iter().enumerate() {
        let ox = MARGIN + i as f64 * (PANEL_W + MARGIN);
        let oy = MARGIN;
        let px = |x: f64| ox + (x - x_lo) / (x_hi - x_lo) * PANEL_W;
        let py = |y: f64| oy + (1.0 - y) * PANEL_H;
        let _ = writeln!(s, r#"<g>"#);
        let _ = writeln!(
            s,
            r#"<rect x="{ox}" y="{oy}" width="{PANEL_W}" height="{PANEL_H}" fill="none" stroke="black"/>"#
        );
        let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, ox + PANEL_W / 2.0, oy - 10.0, panel.title);
        for tick in 0..=4 {
            let y = tick as f64 / 4.0;
            let _ = writeln!(
                s,
                r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{y:.2}</text>"#,
                ox - 4.0,
                py(y) + 4.0
            );
        }
        for x in [x_lo, x_hi] {
            let _ = writeln!(
                s,
                r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
                px(x),
                oy + PANEL_H + 16.0,
                trim(x)
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{x_label}</text>"#,
            ox + PANEL_W / 2.0,
            oy + PANEL_H + 34.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle" transform="rotate(-90 {:.1} {:.1})">loss</text>"#,
            ox - 34.0,
            oy + PANEL_H / 2.0,
            ox - 34.0,
            oy + PANEL_H / 2.0
        );
        for (series, color, name) in [
            (&panel.supervised, SUPERVISED_COLOR, "supervised"),
            (&panel.graph, GRAPH_COLOR, "supervised+graph"),
        ] {
            let _ = write!(s, r#"<g class="series" data-name="{name}" stroke="{color}" fill="{color}">"#);
            if series.len() > 1 {
                let points: Vec<String> = series.iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
                let _ = write!(s, r#"<polyline fill="none" points="{}"/>"#, points.join(" "));
            }
            if markers || series.len() == 1 {
                for &(x, y) in series.iter() {
                    let _ = write!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="3"/>"#, px(x), py(y));
                }
            }
            let _ = writeln!(s, "</g>");
        }
        let _ = writeln!(s, "</g>");
    }
    let ly = height - 14.0;
    let _ = writeln!(
        s,
        r#"<text x="{MARGIN}" y="{ly}" fill="{SUPERVISED_COLOR}">supervised</text><text x="{}" y="{ly}" fill="{GRAPH_COLOR}">supervised+graph</text>"#,
        MARGIN + 100.0
    );
    s.push_str("</svg>\n");
    s
}

fn trim(x: f64) -> String {
    let text = format!("{x:.3}");
    text.trim_end_matches('0').trim_end_matches('.').to_string()
}
