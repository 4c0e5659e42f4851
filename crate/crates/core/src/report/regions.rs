//! Decision regions of a two-dimensional model on a regular grid, with the
//! cavity surfaces drawn on top (outer dashed, inner solid).

use std::path::Path;

use crate::classifiers::{Classifier, Model};
use crate::data::{ClassId, Dataset};
use crate::error::{Error, Result};
use crate::geometry::{Panel, Point2, Surface};
use crate::report::svg::{write_file, Scale, Svg, CLASS1_COLOR, CLASS2_COLOR};
use crate::scalar::Scalar;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 40.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegionBounds {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl RegionBounds {
    pub fn square(lo: f64, hi: f64) -> Self {
        RegionBounds {
            x_min: lo,
            x_max: hi,
            y_min: lo,
            y_max: hi,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = [self.x_min, self.x_max, self.y_min, self.y_max].iter().all(|v| v.is_finite())
            && self.x_max > self.x_min
            && self.y_max > self.y_min;
        if ok {
            Ok(())
        } else {
            Err(Error::Render("bounds must be finite with min < max".into()))
        }
    }

    /// Centre of grid cell `(i, j)`, `i` along x and `j` along y.
    pub fn cell_center(&self, resolution: usize, i: usize, j: usize) -> [f64; 2] {
        let dx = (self.x_max - self.x_min) / resolution as f64;
        let dy = (self.y_max - self.y_min) / resolution as f64;
        [
            self.x_min + (i as f64 + 0.5) * dx,
            self.y_min + (j as f64 + 0.5) * dy,
        ]
    }
}

fn fill(c: ClassId) -> &'static str {
    match c {
        ClassId::Omega1 => "#aec7e8",
        ClassId::Omega2 => "#ff9896",
    }
}

fn on_boundary<T: Scalar>(s: &Surface<T>, x: &[T]) -> bool {
    s.panels.iter().any(|p| match p {
        Panel::Interval { axis, lo, hi } => x[*axis] == *lo || x[*axis] == *hi,
        Panel::Hull { axes: [i, j], hull } => hull.vertices().contains(&Point2::new(x[*i], x[*j])),
    })
}

pub fn regions_svg<T: Scalar>(
    model: &Model<T>,
    bounds: RegionBounds,
    resolution: usize,
    data: Option<&Dataset<T>>,
) -> Result<String> {
    if model.dim() != 2 {
        return Err(Error::Render("REGION2D requires p=2".into()));
    }
    if resolution == 0 {
        return Err(Error::Render("resolution must be at least 1".into()));
    }
    bounds.validate()?;
    if let Some(d) = data {
        if d.dim() != 2 {
            return Err(Error::Render("REGION2D requires p=2".into()));
        }
    }

    let xs = Scale::new(bounds.x_min, bounds.x_max, MARGIN, MARGIN + SIZE);
    let ys = Scale::new(bounds.y_min, bounds.y_max, MARGIN + SIZE, MARGIN);
    let cell = SIZE / resolution as f64;
    let mut svg = Svg::new(SIZE + 2.0 * MARGIN, SIZE + 2.0 * MARGIN);

    svg.open_group(&format!(r#"class="grid" data-resolution="{resolution}" stroke="none""#));
    for j in 0..resolution {
        for i in 0..resolution {
            let c = bounds.cell_center(resolution, i, j);
            let x = [T::of(c[0]), T::of(c[1])];
            let class = model.predict(&x);
            svg.rect(
                MARGIN + i as f64 * cell,
                MARGIN + SIZE - (j + 1) as f64 * cell,
                cell,
                cell,
                &format!(r#"class="cell" data-i="{i}" data-j="{j}" data-class="{class}" fill="{}""#, fill(class)),
            );
        }
    }
    svg.close_group();
    svg.rect(MARGIN, MARGIN, SIZE, SIZE, r#"fill="none" stroke="black""#);

    if let Some(stack) = model.stack() {
        for s in &stack.surfaces {
            let style = if s.depth == 1 { r#" stroke-dasharray="6 4""# } else { "" };
            svg.open_group(&format!(
                r#"class="surface" data-depth="{}" fill="none" stroke="black" stroke-width="1.5"{style}"#,
                s.depth
            ));
            match s.panels.as_slice() {
                [Panel::Interval { lo: x0, hi: x1, .. }, Panel::Interval { lo: y0, hi: y1, .. }] => {
                    let (x0, x1, y0, y1) = (xs.map(x0.as_f64()), xs.map(x1.as_f64()), ys.map(y0.as_f64()), ys.map(y1.as_f64()));
                    svg.rect(x0, y1, x1 - x0, y0 - y1, "");
                }
                [Panel::Hull { hull, .. }] => {
                    let pts: Vec<(f64, f64)> = hull
                        .vertices()
                        .iter()
                        .map(|v| (xs.map(v.x.as_f64()), ys.map(v.y.as_f64())))
                        .collect();
                    if pts.len() == 1 {
                        svg.circle(pts[0].0, pts[0].1, 2.0, "");
                    } else {
                        svg.polygon(&pts, "");
                    }
                }
                _ => unreachable!("two-dimensional surfaces have one hull or two intervals"),
            }
            svg.close_group();
        }
    }

    svg.open_group(r#"class="points" stroke="black""#);
    match data {
        Some(d) => {
            for o in d.observations() {
                let f = o.features();
                let bold = model
                    .stack()
                    .map(|st| st.surfaces.iter().any(|s| on_boundary(s, f)))
                    .unwrap_or(false);
                let (r, w, tag) = if bold { (4.0, 2.0, "point bold") } else { (2.5, 0.5, "point") };
                svg.circle(
                    xs.map(f[0].as_f64()),
                    ys.map(f[1].as_f64()),
                    r,
                    &format!(
                        r#"class="{tag}" stroke-width="{w:.1}" fill="{}""#,
                        if o.label() == ClassId::Omega1 { CLASS1_COLOR } else { CLASS2_COLOR }
                    ),
                );
            }
        }
        None => {
            // without data, the hull vertices are the boundary-defining points
            if let Some(st) = model.stack() {
                for s in &st.surfaces {
                    for p in &s.panels {
                        if let Panel::Hull { hull, .. } = p {
                            for v in hull.vertices() {
                                svg.circle(
                                    xs.map(v.x.as_f64()),
                                    ys.map(v.y.as_f64()),
                                    4.0,
                                    &format!(
                                        r#"class="point bold" stroke-width="2.0" fill="{}""#,
                                        if s.owner == ClassId::Omega1 { CLASS1_COLOR } else { CLASS2_COLOR }
                                    ),
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    svg.close_group();
    Ok(svg.finish())
}

pub fn render_regions_2d<T: Scalar>(
    model: &Model<T>,
    bounds: RegionBounds,
    resolution: usize,
    data: Option<&Dataset<T>>,
    path: impl AsRef<Path>,
) -> Result<()> {
    write_file(path.as_ref(), &regions_svg(model, bounds, resolution, data)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifiers::fixtures::nested_example;
    use crate::classifiers::{fit, ClassifierKind, FitConfig, NccConfig};
    use crate::geometry::SurfaceMode;

    fn cells(svg: &str) -> Vec<(usize, usize, String)> {
        svg.lines()
            .filter(|l| l.contains(r#"class="cell""#))
            .map(|l| {
                let attr = |k: &str| l.split(&format!("{k}=\"")).nth(1).unwrap().split('"').next().unwrap().to_string();
                (attr("data-i").parse().unwrap(), attr("data-j").parse().unwrap(), attr("data-class"))
            })
            .collect()
    }

    fn cfg(mode: SurfaceMode) -> FitConfig {
        FitConfig {
            ncc: NccConfig { mode, ..NccConfig::default() },
            ..FitConfig::default()
        }
    }

    #[test]
    fn ncc_shading_is_s1_minus_s2() {
        let m = fit(ClassifierKind::Ncc, &nested_example(), &cfg(SurfaceMode::Box)).unwrap();
        let b = RegionBounds::square(-1.0, 10.0);
        let svg = regions_svg(&m, b, 64, None).unwrap();
        let cs = cells(&svg);
        assert_eq!(cs.len(), 64 * 64);
        for (i, j, class) in cs {
            let [x, y] = b.cell_center(64, i, j);
            let in_s1 = (0.0..=4.0).contains(&x) && (0.0..=4.0).contains(&y);
            let in_s2 = (1.0..=3.0).contains(&x) && (1.0..=3.0).contains(&y);
            let want = if in_s1 && !in_s2 { "1" } else { "2" };
            assert_eq!(class, want, "cell ({i},{j})");
        }
    }

    #[test]
    fn ncda_extends_class1_outside_s1() {
        let m = fit(ClassifierKind::Ncda, &nested_example(), &cfg(SurfaceMode::Box)).unwrap();
        let Model::Ncda(inner) = &m else { unreachable!() };
        let b = RegionBounds::square(-1.0, 10.0);
        let cs = cells(&regions_svg(&m, b, 64, None).unwrap());
        let mut outside_class1 = 0;
        for (i, j, class) in cs {
            let c = b.cell_center(64, i, j);
            let want = if inner.ncc.in_outer(&c) {
                inner.ncc.predict(&c)
            } else {
                inner.lda.predict(&c)
            };
            assert_eq!(class, want.to_string());
            if !inner.ncc.in_outer(&c) && class == "1" {
                outside_class1 += 1;
            }
        }
        assert!(outside_class1 > 0);
    }

    #[test]
    fn single_cell_grid() {
        let m = fit(ClassifierKind::Ncc, &nested_example(), &cfg(SurfaceMode::AdjacentPairHull)).unwrap();
        let cs = cells(&regions_svg(&m, RegionBounds::square(-1.0, 10.0), 1, Some(&nested_example())).unwrap());
        assert_eq!(cs.len(), 1);
    }

    #[test]
    fn wrong_dimension_rejected() {
        let d = crate::classifiers::fixtures::from_rows(&[
            (&[0.0, 0.0, 0.0, 0.0], ClassId::Omega1),
            (&[1.0, 1.0, 1.0, 1.0], ClassId::Omega1),
            (&[2.0, 2.0, 2.0, 3.0], ClassId::Omega2),
        ]);
        let m = fit(ClassifierKind::Ncc, &d, &FitConfig::default()).unwrap();
        let err = regions_svg(&m, RegionBounds::square(0.0, 1.0), 8, None).unwrap_err();
        assert_eq!(err.to_string(), "REGION2D requires p=2");
    }

    #[test]
    fn bold_points_on_boundaries() {
        let d = nested_example();
        let m = fit(ClassifierKind::Ncc, &d, &cfg(SurfaceMode::AdjacentPairHull)).unwrap();
        let svg = regions_svg(&m, RegionBounds::square(-1.0, 10.0), 4, Some(&d)).unwrap();
        // four ω1 corners and the two ends of the ω2 segment; (9,9) is not used
        assert_eq!(svg.matches("class=\"point bold\"").count(), 6);
        assert_eq!(svg.matches("class=\"point\"").count(), 1);
    }
}
