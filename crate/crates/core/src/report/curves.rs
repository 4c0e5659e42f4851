//! Error curves: mean (left) and standard deviation (right) of the error rate
//! against `1/n`, one row of panels per dimension.

use std::path::Path;

use crate::error::{Error, Result};
use crate::report::svg::{write_file, Scale, Svg, SERIES_COLORS};
use crate::simulation::SummaryRow;

const PANEL_W: f64 = 320.0;
const PANEL_H: f64 = 220.0;
const GAP: f64 = 70.0;
const LEGEND_H: f64 = 40.0;

fn unique_in_order<K: PartialEq + Copy>(it: impl Iterator<Item = K>) -> Vec<K> {
    let mut out = Vec::new();
    for k in it {
        if !out.contains(&k) {
            out.push(k);
        }
    }
    out
}

pub fn curves_svg(rows: &[SummaryRow]) -> Result<String> {
    let Some(first) = rows.first() else {
        return Err(Error::Render("no rows to plot".into()));
    };
    if rows.iter().any(|r| r.experiment != first.experiment) {
        return Err(Error::Render("rows mix several experiments".into()));
    }
    let dims = unique_in_order(rows.iter().map(|r| r.p));
    let names = unique_in_order(rows.iter().map(|r| r.classifier.as_str()));

    let width = 2.0 * PANEL_W + 3.0 * GAP;
    let height = LEGEND_H + dims.len() as f64 * (PANEL_H + GAP) + GAP / 2.0;
    let mut svg = Svg::new(width, height);
    svg.text(GAP, 20.0, &format!("{}: error rate vs 1/n", first.experiment), r#"font-weight="bold""#);
    for (k, name) in names.iter().enumerate() {
        let x = GAP + 260.0 + k as f64 * 90.0;
        let color = SERIES_COLORS[k % SERIES_COLORS.len()];
        svg.line(x, 16.0, x + 20.0, 16.0, &format!(r#"stroke="{color}" stroke-width="2""#));
        svg.text(x + 24.0, 20.0, name, "");
    }

    for (row_idx, &p) in dims.iter().enumerate() {
        let at_p: Vec<&SummaryRow> = rows.iter().filter(|r| r.p == p).collect();
        let inv: Vec<f64> = at_p.iter().map(|r| 1.0 / r.n as f64).collect();
        let x_lo = inv.iter().cloned().fold(f64::INFINITY, f64::min);
        let x_hi = inv.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let top = LEGEND_H + GAP / 2.0 + row_idx as f64 * (PANEL_H + GAP);

        for (panel_idx, (label, value)) in [
            ("mean", (|r: &SummaryRow| r.mean_err) as fn(&SummaryRow) -> f64),
            ("std", |r: &SummaryRow| r.std_err),
        ]
        .into_iter()
        .enumerate()
        {
            let left = GAP + panel_idx as f64 * (PANEL_W + GAP);
            let y_hi = at_p.iter().map(|r| value(r)).fold(0.0, f64::max);
            let xs = Scale::new(x_lo, x_hi, left, left + PANEL_W);
            let ys = Scale::new(0.0, if y_hi > 0.0 { y_hi * 1.1 } else { 0.0 }, top + PANEL_H, top);

            svg.open_group(&format!(r#"class="panel" data-stat="{label}" data-p="{p}""#));
            svg.rect(left, top, PANEL_W, PANEL_H, r#"fill="none" stroke="black""#);
            svg.text(left + PANEL_W / 2.0, top - 8.0, &format!("p={p} {label} Err"), r#"text-anchor="middle""#);
            svg.text(left + PANEL_W / 2.0, top + PANEL_H + 32.0, "1/n", r#"text-anchor="middle""#);
            let (d_lo, d_hi) = ys.domain();
            for t in [d_lo.max(0.0), (d_lo.max(0.0) + d_hi) / 2.0, d_hi] {
                svg.text(left - 6.0, ys.map(t) + 4.0, &format!("{t:.3}"), r#"text-anchor="end" font-size="10""#);
            }
            let (xd_lo, xd_hi) = xs.domain();
            for t in [xd_lo, xd_hi] {
                svg.text(xs.map(t), top + PANEL_H + 14.0, &format!("{t:.4}"), r#"text-anchor="middle" font-size="10""#);
            }

            for (k, name) in names.iter().enumerate() {
                let mut series: Vec<&SummaryRow> = at_p.iter().copied().filter(|r| r.classifier == *name).collect();
                if series.is_empty() {
                    continue;
                }
                // ascending 1/n
                series.sort_by_key(|r| std::cmp::Reverse(r.n));
                let color = SERIES_COLORS[k % SERIES_COLORS.len()];
                let pts: Vec<(f64, f64)> = series
                    .iter()
                    .map(|r| (xs.map(1.0 / r.n as f64), ys.map(value(r))))
                    .collect();
                svg.polyline(
                    &pts,
                    &format!(r#"class="series" data-classifier="{name}" fill="none" stroke="{color}" stroke-width="1.5""#),
                );
                for (r, &(x, y)) in series.iter().zip(&pts) {
                    svg.circle(
                        x,
                        y,
                        2.5,
                        &format!(
                            r#"class="point" data-classifier="{name}" data-n="{}" data-x="{:.6}" data-y="{:.6}" fill="{color}""#,
                            r.n,
                            1.0 / r.n as f64,
                            value(r)
                        ),
                    );
                }
            }
            svg.close_group();
        }
    }
    Ok(svg.finish())
}

pub fn render_curves(rows: &[SummaryRow], path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), &curves_svg(rows)?)
}
