//! Deterministic SVG rendering for cycles in the plane.
//!
//! All geometry is clipped to the requested window in exact arithmetic;
//! coordinates are only rounded at the last step, to three decimals, by
//! exact rational rounding. Identical input yields byte-identical output.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use thiserror::Error;
use tropint::cycle::TropicalCycle;
use tropint::polyhedron::HPolyhedron;
use tropint::{rat_int, Int, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlotError {
    #[error("plotting needs a cycle in the plane (ambient dimension 2)")]
    NotPlanar,
    #[error("window must satisfy x0 < x1 and y0 < y1")]
    EmptyWindow,
}

#[derive(Debug, Clone)]
pub struct Window {
    pub x0: Rat,
    pub x1: Rat,
    pub y0: Rat,
    pub y1: Rat,
}

impl Window {
    pub fn new(x0: Rat, x1: Rat, y0: Rat, y1: Rat) -> Result<Window, PlotError> {
        if x0 >= x1 || y0 >= y1 {
            return Err(PlotError::EmptyWindow);
        }
        Ok(Window { x0, x1, y0, y1 })
    }

    pub fn default_square() -> Window {
        Window {
            x0: rat_int(-5),
            x1: rat_int(5),
            y0: rat_int(-5),
            y1: rat_int(5),
        }
    }

    fn contains(&self, p: &[Rat]) -> bool {
        p[0] >= self.x0 && p[0] <= self.x1 && p[1] >= self.y0 && p[1] <= self.y1
    }
}

const MARGIN: i64 = 20;
const SIDE: i64 = 400;

/// Rounds an exact coordinate to three decimals, half away from zero.
fn fmt3(x: &Rat) -> String {
    let scaled = (x * rat_int(1000)).round();
    let n = scaled.to_integer();
    let neg = n.is_negative() && !n.is_zero();
    let a = n.abs();
    let whole = &a / Int::from(1000);
    let frac = &a % Int::from(1000);
    format!("{}{}.{:03}", if neg { "-" } else { "" }, whole, frac)
}

struct Frame {
    window: Window,
}

impl Frame {
    fn to_svg(&self, p: &[Rat]) -> (String, String) {
        let w = &self.window;
        let sx = rat_int(MARGIN) + (&p[0] - &w.x0) * rat_int(SIDE) / (&w.x1 - &w.x0);
        let sy = rat_int(MARGIN) + (&w.y1 - &p[1]) * rat_int(SIDE) / (&w.y1 - &w.y0);
        (fmt3(&sx), fmt3(&sy))
    }
}

/// The portion of a line p + t·d with t in [lo, hi] (None meaning
/// unbounded) that lies inside the window, as exact endpoints.
fn clip_param(
    w: &Window,
    p: &[Rat],
    d: &[Rat],
    mut lo: Option<Rat>,
    mut hi: Option<Rat>,
) -> Option<(Vec<Rat>, Vec<Rat>)> {
    // Window constraints as a·x >= b.
    let constraints: [(Vec<Rat>, Rat); 4] = [
        (vec![rat_int(1), rat_int(0)], w.x0.clone()),
        (vec![rat_int(-1), rat_int(0)], -w.x1.clone()),
        (vec![rat_int(0), rat_int(1)], w.y0.clone()),
        (vec![rat_int(0), rat_int(-1)], -w.y1.clone()),
    ];
    for (a, b) in &constraints {
        let ad = &a[0] * &d[0] + &a[1] * &d[1];
        let ap = &a[0] * &p[0] + &a[1] * &p[1];
        if ad.is_zero() {
            if &ap < b {
                return None;
            }
            continue;
        }
        let t = (b - ap) / &ad;
        if ad.is_positive() {
            lo = Some(match lo {
                Some(l) if l >= t => l,
                _ => t,
            });
        } else {
            hi = Some(match hi {
                Some(h) if h <= t => h,
                _ => t,
            });
        }
    }
    let (lo, hi) = (lo?, hi?);
    if lo > hi {
        return None;
    }
    let at = |t: &Rat| vec![&p[0] + t * &d[0], &p[1] + t * &d[1]];
    Some((at(&lo), at(&hi)))
}

/// One-dimensional cells become clipped segments; the three shapes are a
/// segment (two vertices), a ray (vertex plus ray), and a line (vertex
/// plus lineality direction).
fn edge_span(cell: &HPolyhedron, w: &Window) -> Option<(Vec<Rat>, Vec<Rat>)> {
    let g = cell.generators();
    if g.vertices.len() == 2 {
        let p = g.vertices[0].clone();
        let d: Vec<Rat> = g.vertices[1]
            .iter()
            .zip(&g.vertices[0])
            .map(|(b, a)| b - a)
            .collect();
        clip_param(w, &p, &d, Some(rat_int(0)), Some(rat_int(1)))
    } else if g.vertices.len() == 1 && g.rays.len() == 1 {
        let d: Vec<Rat> = g.rays[0].iter().map(|x| Rat::from_integer(x.clone())).collect();
        clip_param(w, &g.vertices[0], &d, Some(rat_int(0)), None)
    } else if g.vertices.len() == 1 && g.lines.len() == 1 {
        let d: Vec<Rat> = g.lines[0].iter().map(|x| Rat::from_integer(x.clone())).collect();
        clip_param(w, &g.vertices[0], &d, None, None)
    } else {
        None
    }
}

pub fn plot_svg(cycle: &TropicalCycle, window: &Window) -> Result<String, PlotError> {
    if cycle.ambient_dim() != 2 {
        return Err(PlotError::NotPlanar);
    }
    let frame = Frame { window: window.clone() };
    let mut segments: Vec<String> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    let mut dots: BTreeSet<(String, String)> = BTreeSet::new();
    let one = Int::from(1);

    let label_at = |labels: &mut Vec<String>, p: &[Rat], weight: &Int| {
        let (x, y) = frame.to_svg(p);
        labels.push(format!(
            "<text x=\"{x}\" y=\"{y}\" dx=\"5\" dy=\"-5\" font-family=\"monospace\" font-size=\"12\">{weight}</text>"
        ));
    };

    for (cell, weight) in cycle.facets() {
        match cell.dimension() {
            0 => {
                let p = cell.relative_interior_point().expect("point cell");
                if frame.window.contains(&p) {
                    let (x, y) = frame.to_svg(&p);
                    dots.insert((x.clone(), y.clone()));
                    if weight != &one {
                        label_at(&mut labels, &p, weight);
                    }
                }
            }
            1 => {
                if let Some((a, b)) = edge_span(cell, &frame.window) {
                    if a == b {
                        continue;
                    }
                    let (x1, y1) = frame.to_svg(&a);
                    let (x2, y2) = frame.to_svg(&b);
                    segments.push(format!(
                        "<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"#000000\" stroke-width=\"1.5\"/>"
                    ));
                    if weight != &one {
                        let mid: Vec<Rat> = a
                            .iter()
                            .zip(&b)
                            .map(|(u, v)| (u + v) / rat_int(2))
                            .collect();
                        label_at(&mut labels, &mid, weight);
                    }
                }
            }
            2 => {
                // Planar regions render as their boundary edges plus a
                // weight label at an interior point.
                for face in cell.proper_faces() {
                    if face.dimension() == 1 {
                        if let Some((a, b)) = edge_span(&face, &frame.window) {
                            if a == b {
                                continue;
                            }
                            let (x1, y1) = frame.to_svg(&a);
                            let (x2, y2) = frame.to_svg(&b);
                            segments.push(format!(
                                "<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"#000000\" stroke-width=\"1.5\" stroke-dasharray=\"4 3\"/>"
                            ));
                        }
                    }
                }
                if weight != &one {
                    if let Some(p) = cell.relative_interior_point() {
                        if frame.window.contains(&p) {
                            label_at(&mut labels, &p, weight);
                        }
                    }
                }
            }
            _ => {}
        }
        // Vertices of every cell become dots.
        for face in cell.proper_faces() {
            if face.dimension() == 0 {
                let p = face.relative_interior_point().expect("vertex");
                if frame.window.contains(&p) {
                    dots.insert(frame.to_svg(&p));
                }
            }
        }
    }

    let total = MARGIN * 2 + SIDE;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{total}\" height=\"{total}\" viewBox=\"0 0 {total} {total}\">\n"
    ));
    out.push_str(&format!(
        "<rect x=\"{MARGIN}\" y=\"{MARGIN}\" width=\"{SIDE}\" height=\"{SIDE}\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1\"/>\n"
    ));
    for s in &segments {
        out.push_str(s);
        out.push('\n');
    }
    for (x, y) in &dots {
        out.push_str(&format!("<circle cx=\"{x}\" cy=\"{y}\" r=\"3\" fill=\"#000000\"/>\n"));
    }
    for l in &labels {
        out.push_str(l);
        out.push('\n');
    }
    out.push_str("</svg>\n");
    Ok(out)
}
