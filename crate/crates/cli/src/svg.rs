//! Self-contained SVG line plots of sweep output: temperature on the x
//! axis, one polyline per quantity per (j, delta) parameter group.

use std::fmt::Write;

use crate::emit::render_sig;
use crate::error::{CliError, Result};
use crate::sweep::SweepOutput;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const PLOT_LEFT: f64 = 64.0;
const PLOT_RIGHT: f64 = 610.0;
const PLOT_TOP: f64 = 24.0;
const PLOT_BOTTOM: f64 = 448.0;
const TICKS: usize = 6;

const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
    "#bcbd22", "#7f7f7f",
];

struct Series {
    label: String,
    /// Runs of consecutive finite points; gaps split a run.
    runs: Vec<Vec<(f64, f64)>>,
}

/// Renders the sweep as an 800x500 SVG 1.1 document with axes, ticks, and
/// a legend. Fails with EmptySelection when no finite value exists.
pub fn emit_svg(out: &SweepOutput) -> Result<String> {
    let groups = group_spans(out);
    let multi_group = groups.len() > 1;

    let mut series = Vec::new();
    for (qi, q) in out.quantities.iter().enumerate() {
        for &(start, end) in &groups {
            let rows = &out.rows[start..end];
            let mut runs: Vec<Vec<(f64, f64)>> = Vec::new();
            let mut current: Vec<(f64, f64)> = Vec::new();
            for row in rows {
                match row.values[qi] {
                    Some(v) if v.is_finite() => current.push((row.temperature, v)),
                    _ => {
                        if !current.is_empty() {
                            runs.push(std::mem::take(&mut current));
                        }
                    }
                }
            }
            if !current.is_empty() {
                runs.push(current);
            }
            if runs.is_empty() {
                continue;
            }
            let label = if multi_group {
                let first = &out.rows[start];
                format!(
                    "{} j={} delta={}",
                    q.name(),
                    render_sig(first.j, 6),
                    render_sig(first.delta, 6)
                )
            } else {
                q.name().to_string()
            };
            series.push(Series { label, runs });
        }
    }
    if series.is_empty() {
        return Err(CliError::EmptySelection);
    }

    let points = series.iter().flat_map(|s| s.runs.iter().flatten());
    let (mut x_min, mut x_max) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y_min, mut y_max) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in points {
        x_min = x_min.min(x);
        x_max = x_max.max(x);
        y_min = y_min.min(y);
        y_max = y_max.max(y);
    }
    if x_min == x_max {
        x_min -= 1.0;
        x_max += 1.0;
    }
    if y_min == y_max {
        let pad = 1.0f64.max(y_min.abs() * 0.1);
        y_min -= pad;
        y_max += pad;
    } else {
        let pad = (y_max - y_min) * 0.05;
        y_min -= pad;
        y_max += pad;
    }

    let sx = |x: f64| PLOT_LEFT + (x - x_min) / (x_max - x_min) * (PLOT_RIGHT - PLOT_LEFT);
    let sy = |y: f64| PLOT_BOTTOM - (y - y_min) / (y_max - y_min) * (PLOT_BOTTOM - PLOT_TOP);
    let px = |v: f64| format!("{v:.2}");

    let mut doc = String::new();
    let _ = writeln!(
        doc,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    doc.push_str("<rect width=\"800\" height=\"500\" fill=\"#ffffff\"/>\n");

    // Grid lines and tick labels.
    for i in 0..TICKS {
        let f = i as f64 / (TICKS - 1) as f64;
        let xv = x_min + (x_max - x_min) * f;
        let yv = y_min + (y_max - y_min) * f;
        let gx = sx(xv);
        let gy = sy(yv);
        let _ = write!(
            doc,
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"#dddddd\"/>\n\
             <line x1=\"{3}\" y1=\"{4}\" x2=\"{5}\" y2=\"{4}\" stroke=\"#dddddd\"/>\n",
            px(gx),
            px(PLOT_TOP),
            px(PLOT_BOTTOM),
            px(PLOT_LEFT),
            px(gy),
            px(PLOT_RIGHT),
        );
        let _ = writeln!(
            doc,
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"11\" \
             text-anchor=\"middle\">{}</text>",
            px(gx),
            px(PLOT_BOTTOM + 16.0),
            render_sig(xv, 4)
        );
        let _ = writeln!(
            doc,
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"11\" \
             text-anchor=\"end\">{}</text>",
            px(PLOT_LEFT - 6.0),
            px(gy + 4.0),
            render_sig(yv, 4)
        );
    }

    // Axes frame and x-axis label.
    let _ = writeln!(
        doc,
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#000000\"/>",
        px(PLOT_LEFT),
        px(PLOT_TOP),
        px(PLOT_RIGHT - PLOT_LEFT),
        px(PLOT_BOTTOM - PLOT_TOP)
    );
    let _ = writeln!(
        doc,
        "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"12\" \
         text-anchor=\"middle\">temperature</text>",
        px((PLOT_LEFT + PLOT_RIGHT) / 2.0),
        px(HEIGHT - 12.0)
    );

    // Data series.
    for (si, s) in series.iter().enumerate() {
        let color = PALETTE[si % PALETTE.len()];
        for run in &s.runs {
            if run.len() == 1 {
                let (x, y) = run[0];
                let _ = writeln!(
                    doc,
                    "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{color}\"/>",
                    px(sx(x)),
                    px(sy(y))
                );
            } else {
                let pts: Vec<String> = run
                    .iter()
                    .map(|&(x, y)| format!("{},{}", px(sx(x)), px(sy(y))))
                    .collect();
                let _ = writeln!(
                    doc,
                    "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" \
                     points=\"{}\"/>",
                    pts.join(" ")
                );
            }
        }
    }

    // Legend.
    for (si, s) in series.iter().enumerate() {
        let color = PALETTE[si % PALETTE.len()];
        let y = PLOT_TOP + 8.0 + si as f64 * 18.0;
        let _ = write!(
            doc,
            "<rect x=\"{}\" y=\"{}\" width=\"12\" height=\"12\" fill=\"{color}\"/>\n\
             <text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"11\">{}</text>\n",
            px(PLOT_RIGHT + 12.0),
            px(y - 10.0),
            px(PLOT_RIGHT + 30.0),
            px(y),
            s.label
        );
    }

    doc.push_str("</svg>\n");
    Ok(doc)
}

/// Contiguous row spans sharing (j, delta), in row order. Temperatures
/// must be strictly increasing within a span; the sweep builds rows that
/// way by construction.
fn group_spans(out: &SweepOutput) -> Vec<(usize, usize)> {
    let mut spans = Vec::new();
    let mut start = 0;
    for i in 1..=out.rows.len() {
        let boundary = i == out.rows.len()
            || out.rows[i].j != out.rows[start].j
            || out.rows[i].delta != out.rows[start].delta;
        if boundary {
            debug_assert!(out.rows[start..i]
                .windows(2)
                .all(|w| w[0].temperature < w[1].temperature));
            spans.push((start, i));
            start = i;
        }
    }
    spans
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Quantity;
    use crate::sweep::SweepRow;

    fn output(rows: Vec<SweepRow>) -> SweepOutput {
        SweepOutput {
            quantities: vec![Quantity::Work],
            rows,
            warnings: vec![],
        }
    }

    #[test]
    fn plot_contains_axes_polyline_and_legend() {
        let rows = (0..10)
            .map(|i| SweepRow {
                j: 1.0,
                delta: 1.0,
                temperature: 0.5 + i as f64,
                values: vec![Some(0.1 * i as f64)],
            })
            .collect();
        let doc = emit_svg(&output(rows)).unwrap();
        assert!(doc.starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\""));
        assert!(doc.contains("<polyline"));
        assert!(doc.contains(">work</text>"));
        assert!(doc.contains("temperature"));
        assert!(doc.ends_with("</svg>\n"));
        // Self-contained: nothing referenced beyond the one namespace URI.
        assert!(!doc.contains("href"));
    }

    #[test]
    fn single_point_series_renders_a_marker() {
        let rows = vec![SweepRow {
            j: 1.0,
            delta: 1.0,
            temperature: 2.0,
            values: vec![Some(0.25)],
        }];
        let doc = emit_svg(&output(rows)).unwrap();
        assert!(doc.contains("<circle"));
        assert!(!doc.contains("<polyline"));
    }

    #[test]
    fn all_absent_column_is_an_empty_selection() {
        let rows = vec![
            SweepRow {
                j: 1.0,
                delta: 1.0,
                temperature: 1.0,
                values: vec![None],
            },
            SweepRow {
                j: 1.0,
                delta: 1.0,
                temperature: 2.0,
                values: vec![None],
            },
        ];
        match emit_svg(&output(rows)) {
            Err(CliError::EmptySelection) => {}
            other => panic!("expected EmptySelection, got {other:?}"),
        }
    }

    #[test]
    fn absent_gap_splits_the_polyline() {
        let rows = (0..7)
            .map(|i| SweepRow {
                j: 1.0,
                delta: 1.0,
                temperature: 1.0 + i as f64,
                values: vec![if i == 3 { None } else { Some(i as f64) }],
            })
            .collect();
        let doc = emit_svg(&output(rows)).unwrap();
        assert_eq!(doc.matches("<polyline").count(), 2);
    }

    #[test]
    fn parameter_groups_get_separate_series_labels() {
        let mut rows = Vec::new();
        for j in [1.0, 2.0] {
            for i in 0..5 {
                rows.push(SweepRow {
                    j,
                    delta: 1.0,
                    temperature: 1.0 + i as f64,
                    values: vec![Some(j + i as f64)],
                });
            }
        }
        let doc = emit_svg(&output(rows)).unwrap();
        assert!(doc.contains("work j=1 delta=1"));
        assert!(doc.contains("work j=2 delta=1"));
        assert_eq!(doc.matches("<polyline").count(), 2);
    }
}
