use super::{write_atomic, NumPoly, NumericsError};
use crate::algebra::MultiPoly;
use crate::catalog::PolynomialModel;
use rayon::prelude::*;
use std::fmt::Write as _;
use std::path::Path;

pub const DEFAULT_GRID: usize = 512;
const CANVAS: f64 = 800.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

/// One marching-squares segment on the zero set of a factor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    pub factor: usize,
    pub a: [f64; 2],
    pub b: [f64; 2],
}

/// Zero contours of the boundary factors over the domain box.
#[derive(Clone, Debug)]
pub struct Rendering {
    pub model: String,
    pub axes: [String; 2],
    /// Fixed trailing coordinate for three-coordinate models.
    pub slice: Option<(String, f64)>,
    pub bounds: [(f64, f64); 2],
    pub factors: Vec<(String, MultiPoly)>,
    pub segments: Vec<Segment>,
}

/// Factors drawn for a model: those satisfying the boundary equation, with a
/// product replaced by its listed components.
pub fn contour_factors(model: &PolynomialModel) -> Vec<(String, MultiPoly)> {
    let bf = &model.boundary_factors;
    bf.iter()
        .filter(|b| b.satisfies_boundary)
        .filter(|b| !bf.iter().any(|c| c.component_of.as_deref() == Some(b.label.as_str())))
        .map(|b| (b.label.clone(), b.poly.value.clone()))
        .collect()
}

/// Crossing on the edge `p → q`: secant guess, then bisection to full precision.
fn crossing(f: &impl Fn(f64, f64) -> f64, p: [f64; 2], q: [f64; 2], fp: f64, fq: f64) -> [f64; 2] {
    let at = |t: f64| [p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])];
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let pos_lo = fp > 0.0;
    let mut t = (fp / (fp - fq)).clamp(0.0, 1.0);
    for _ in 0..64 {
        let x = at(t);
        let v = f(x[0], x[1]);
        if v == 0.0 {
            return x;
        }
        if (v > 0.0) == pos_lo {
            lo = t;
        } else {
            hi = t;
        }
        if hi - lo <= f64::EPSILON {
            break;
        }
        t = 0.5 * (lo + hi);
    }
    at(0.5 * (lo + hi))
}

fn march(f: &(impl Fn(f64, f64) -> f64 + Sync), index: usize, bounds: [(f64, f64); 2], grid: usize) -> Vec<Segment> {
    let (dx, dy) = ((bounds[0].1 - bounds[0].0) / grid as f64, (bounds[1].1 - bounds[1].0) / grid as f64);
    let node = |i: usize, j: usize| [bounds[0].0 + i as f64 * dx, bounds[1].0 + j as f64 * dy];
    let values: Vec<Vec<f64>> = (0..=grid)
        .into_par_iter()
        .map(|j| {
            (0..=grid)
                .map(|i| {
                    let p = node(i, j);
                    f(p[0], p[1])
                })
                .collect()
        })
        .collect();
    (0..grid)
        .into_par_iter()
        .flat_map_iter(|j| {
            let values = &values;
            (0..grid).flat_map(move |i| {
                // corners counter-clockwise from bottom-left; edges k joins corner k to k+1
                let c = [node(i, j), node(i + 1, j), node(i + 1, j + 1), node(i, j + 1)];
                let v = [values[j][i], values[j][i + 1], values[j + 1][i + 1], values[j + 1][i]];
                let case = v.iter().enumerate().fold(0, |acc, (k, x)| acc | (((*x > 0.0) as usize) << k));
                let edge = |k: usize| crossing(f, c[k], c[(k + 1) % 4], v[k], v[(k + 1) % 4]);
                let pairs: &[(usize, usize)] = match case {
                    0 | 15 => &[],
                    1 | 14 => &[(3, 0)],
                    2 | 13 => &[(0, 1)],
                    3 | 12 => &[(3, 1)],
                    4 | 11 => &[(1, 2)],
                    6 | 9 => &[(0, 2)],
                    7 | 8 => &[(2, 3)],
                    5 | 10 => {
                        let centre = f(c[0][0] + 0.5 * dx, c[0][1] + 0.5 * dy) > 0.0;
                        // the centre joins the positive corners when it shares their sign
                        if centre == (case == 5) {
                            &[(0, 1), (2, 3)]
                        } else {
                            &[(3, 0), (1, 2)]
                        }
                    }
                    _ => unreachable!(),
                };
                pairs
                    .iter()
                    .map(move |&(e1, e2)| Segment { factor: index, a: edge(e1), b: edge(e2) })
                    .collect::<Vec<_>>()
            })
        })
        .collect()
}

/// Marching squares on each boundary factor over the first two coordinates of
/// the domain box; a third coordinate is held at `slice`.
pub fn render_boundary(model: &PolynomialModel, grid: usize, slice: f64) -> Rendering {
    let vars = model.system.vars();
    let factors = contour_factors(model);
    let bounds = [model.domain_box[0], model.domain_box[1]];
    let segments = factors
        .iter()
        .enumerate()
        .flat_map(|(k, (_, p))| {
            let np = NumPoly::compile(p, &vars);
            let f = |x: f64, y: f64| np.eval(&[x, y, slice]);
            march(&f, k, bounds, grid.max(1))
        })
        .collect();
    Rendering {
        model: model.id.to_string(),
        axes: [vars[0].to_string(), vars[1].to_string()],
        slice: vars.get(2).map(|v| (v.to_string(), slice)),
        bounds,
        factors,
        segments,
    }
}

impl Rendering {
    /// Full coordinates of a contour point.
    pub fn lift(&self, p: [f64; 2]) -> Vec<f64> {
        let mut out = p.to_vec();
        out.extend(self.slice.iter().map(|s| s.1));
        out
    }

    pub fn points(&self) -> impl Iterator<Item = (usize, [f64; 2])> + '_ {
        self.segments.iter().flat_map(|s| [(s.factor, s.a), (s.factor, s.b)])
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y,factor_index\n");
        for (k, p) in self.points() {
            let _ = writeln!(out, "{:.12},{:.12},{k}", p[0], p[1]);
        }
        out
    }

    pub fn to_svg(&self) -> String {
        let [(x0, x1), (y0, y1)] = self.bounds;
        let px = |p: [f64; 2]| ((p[0] - x0) / (x1 - x0) * CANVAS, (y1 - p[1]) / (y1 - y0) * CANVAS);
        let mut out = String::new();
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">"#
        );
        let slice = self.slice.as_ref().map(|(v, z)| format!(", {v} = {z}")).unwrap_or_default();
        let _ = writeln!(out, "<title>{} boundary in ({}, {}){slice}</title>", self.model, self.axes[0], self.axes[1]);
        let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
        for (k, (label, _)) in self.factors.iter().enumerate() {
            let mut d = String::new();
            for s in self.segments.iter().filter(|s| s.factor == k) {
                let (a, b) = (px(s.a), px(s.b));
                let _ = write!(d, "M{:.3} {:.3}L{:.3} {:.3}", a.0, a.1, b.0, b.1);
            }
            let _ = writeln!(
                out,
                r#"<path id="factor-{k}" data-label="{label}" fill="none" stroke="{}" stroke-width="1.2" d="{d}"/>"#,
                PALETTE[k % PALETTE.len()]
            );
        }
        out.push_str("</svg>\n");
        out
    }

    /// Write both files atomically.
    pub fn write(&self, svg: &Path, csv: &Path) -> Result<(), NumericsError> {
        write_atomic(svg, self.to_svg().as_bytes())?;
        write_atomic(csv, self.to_csv().as_bytes())?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{model, ModelId};
    use crate::numerics::min_eigenvalue_at;

    #[test]
    fn circle_contour() {
        let r = render_boundary(&model(ModelId::family(1, 1)), 512, 0.0);
        assert!(r.segments.len() > 1000);
        let worst = r.points().map(|(_, p)| (p[0].hypot(p[1]) - 1.0).abs()).fold(0.0, f64::max);
        assert!(worst < 2.0 / 512.0, "{worst}");
    }

    #[test]
    fn swallow_tail_has_points_everywhere() {
        let m = model(ModelId::fixed(11));
        let r = render_boundary(&m, 256, 0.0);
        assert!(!r.segments.is_empty());
        // both sides of the cusp axis carry contour points
        assert!(r.points().any(|(_, p)| p[0] < -0.1) && r.points().any(|(_, p)| p[0] > 0.05));
    }

    #[test]
    fn sliced_three_dimensional_model() {
        let r = render_boundary(&model(ModelId::fixed(15)), 200, 0.0);
        assert!(!r.segments.is_empty());
        assert_eq!(r.slice.as_ref().unwrap().1, 0.0);
    }

    #[test]
    fn deterministic_output() {
        let m = model(ModelId::family(3, 3));
        let (a, b) = (render_boundary(&m, 128, 0.0), render_boundary(&m, 128, 0.0));
        assert_eq!(a.to_svg(), b.to_svg());
        assert_eq!(a.to_csv(), b.to_csv());
        assert!(a.to_csv().starts_with("x,y,factor_index\n"));
    }

    #[test]
    fn cometric_degenerates_on_contours() {
        for id in [
            ModelId::family(1, 3),
            ModelId::family(3, 2),
            ModelId::family(6, 3),
            ModelId::fixed(11),
            ModelId::fixed(21),
        ] {
            let m = model(id);
            let r = render_boundary(&m, 64, 0.0);
            for (_, p) in r.points() {
                let e = min_eigenvalue_at(&m, &r.lift(p));
                assert!(e <= 1e-6, "{id} at {p:?}: {e}");
            }
        }
    }
}
