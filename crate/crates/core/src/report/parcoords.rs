//! Parallel-coordinates figure: one polyline per observation and, optionally,
//! the panels of a cavity stack.

use std::path::Path;

use crate::data::{ClassId, Dataset};
use crate::error::{Error, Result};
use crate::geometry::{to_polyline, CavityStack, Panel};
use crate::report::svg::{write_file, Scale, Svg, CLASS1_COLOR, CLASS2_COLOR};
use crate::scalar::Scalar;

const AXIS_GAP: f64 = 120.0;
const MARGIN: f64 = 60.0;
const HEIGHT: f64 = 420.0;

fn class_color(c: ClassId) -> &'static str {
    match c {
        ClassId::Omega1 => CLASS1_COLOR,
        ClassId::Omega2 => CLASS2_COLOR,
    }
}

fn class_tag(c: ClassId) -> &'static str {
    match c {
        ClassId::Omega1 => "omega1",
        ClassId::Omega2 => "omega2",
    }
}

pub fn parcoords_svg<T: Scalar>(d: &Dataset<T>, stack: Option<&CavityStack<T>>) -> Result<String> {
    let p = d.dim();
    if p < 2 {
        return Err(Error::Render("parallel coordinates need p >= 2".into()));
    }
    if let Some(st) = stack {
        if st.dim() != p {
            return Err(Error::DimensionMismatch {
                expected: p,
                got: st.dim(),
            });
        }
    }

    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut extend = |v: f64| {
        lo = lo.min(v);
        hi = hi.max(v);
    };
    for o in d.observations() {
        o.features().iter().for_each(|v| extend(v.as_f64()));
    }
    if let Some(st) = stack {
        for panel in st.surfaces.iter().flat_map(|s| &s.panels) {
            match panel {
                Panel::Interval { lo, hi, .. } => {
                    extend(lo.as_f64());
                    extend(hi.as_f64());
                }
                Panel::Hull { hull, .. } => hull.vertices().iter().for_each(|v| {
                    extend(v.x.as_f64());
                    extend(v.y.as_f64());
                }),
            }
        }
    }
    if !lo.is_finite() {
        lo = 0.0;
        hi = 1.0;
    }
    let width = 2.0 * MARGIN + (p - 1) as f64 * AXIS_GAP;
    let xs = Scale::new(0.0, (p - 1) as f64, MARGIN, MARGIN + (p - 1) as f64 * AXIS_GAP);
    let ys = Scale::new(lo, hi, HEIGHT - MARGIN, MARGIN);

    let mut svg = Svg::new(width, HEIGHT);
    svg.open_group(r#"class="axes" stroke="black" stroke-width="1""#);
    for i in 0..p {
        let x = xs.map(i as f64);
        svg.line(x, ys.map(ys.domain().0), x, ys.map(ys.domain().1), r#"class="axis""#);
    }
    svg.close_group();
    for i in 0..p {
        // X-bar label: X followed by a combining overline
        svg.text(xs.map(i as f64), HEIGHT - MARGIN / 3.0, &format!("X\u{0304}{}", i + 1), r#"text-anchor="middle""#);
    }

    svg.open_group(r#"class="observations" fill="none" stroke-width="1" stroke-opacity="0.6""#);
    for o in d.observations() {
        let pl = to_polyline(o.features())?;
        let pts: Vec<(f64, f64)> = pl
            .vertices()
            .iter()
            .map(|v| (xs.map(v.x.as_f64()), ys.map(v.y.as_f64())))
            .collect();
        svg.polyline(
            &pts,
            &format!(r#"class="obs {}" stroke="{}""#, class_tag(o.label()), class_color(o.label())),
        );
    }
    svg.close_group();

    if let Some(st) = stack {
        for s in &st.surfaces {
            let dash = if s.depth == 1 { r#" stroke-dasharray="6 4""# } else { "" };
            let width = (3.0 - 0.4 * (s.depth as f64 - 1.0)).max(1.0);
            svg.open_group(&format!(
                r#"class="surface" data-depth="{}" data-owner="{}" fill="none" stroke="{}" stroke-width="{width:.1}"{dash}"#,
                s.depth,
                s.owner,
                class_color(s.owner)
            ));
            for panel in &s.panels {
                match panel {
                    Panel::Interval { axis, lo, hi } => {
                        let x = xs.map(*axis as f64);
                        let off = 4.0 * s.depth as f64;
                        svg.polyline(
                            &[
                                (x - off, ys.map(lo.as_f64())),
                                (x - off, ys.map(hi.as_f64())),
                                (x + off, ys.map(hi.as_f64())),
                                (x + off, ys.map(lo.as_f64())),
                                (x - off, ys.map(lo.as_f64())),
                            ],
                            r#"class="panel""#,
                        );
                    }
                    Panel::Hull { axes: [i, j], hull } => {
                        // each hull vertex (a, b) is the segment from (i, a) to (j, b)
                        svg.open_group(&format!(r#"class="panel" data-axes="{i},{j}""#));
                        for v in hull.vertices() {
                            svg.line(
                                xs.map(*i as f64),
                                ys.map(v.x.as_f64()),
                                xs.map(*j as f64),
                                ys.map(v.y.as_f64()),
                                "",
                            );
                        }
                        svg.close_group();
                    }
                }
            }
            svg.close_group();
        }
    }
    Ok(svg.finish())
}

pub fn render_parcoords<T: Scalar>(d: &Dataset<T>, stack: Option<&CavityStack<T>>, path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), &parcoords_svg(d, stack)?)
}
