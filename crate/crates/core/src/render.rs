//! SVG output. Cycles are traced with a parametrisation chosen by their
//! type in the σ-drawing (angle for circles, abscissa for parabolas, branch
//! and rapidity for hyperbolas), then cut where they leave the viewport.
//! Every number is printed with six decimals so output is byte-stable.

use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::cycle::{zero_radius_at, Cycle, Point};
use crate::error::Result;
use crate::hypercomplex::{k_orbit, HyperNumber, Sigma};
use crate::invariants::{ghost, s_ghost};
use crate::jet::JetSpectrum;
use crate::scene::{Element, Panel, Scene, Style};

pub fn fmt6(x: f64) -> String {
    let s = format!("{:.6}", x);
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

/// The rotation-orbit cycle `(2v, 0, u² − σv² + 1, 2v)` through `p`.
pub fn orbit_cycle(p: Point, sigma: Sigma) -> Cycle {
    Cycle::new(2.0 * p.v, 0.0, p.u * p.u - sigma.as_f64() * p.v * p.v + 1.0, 2.0 * p.v)
}

/// Orbit points for `samples` angles spanning `[0, π]`; the rotation by π
/// acts trivially, so bounded orbits come back to `start`. Points at
/// infinity are `None`.
pub fn orbit_points(start: Point, sigma: Sigma, samples: usize) -> Vec<Option<Point>> {
    let last = samples.max(2) - 1;
    let phis: Vec<f64> = (0..=last).map(|j| PI * j as f64 / last as f64).collect();
    k_orbit(HyperNumber::new(start.u, start.v, sigma), &phis)
        .into_iter()
        .map(|z| z.map(Point::from_hyper))
        .collect()
}

type Polyline = Vec<Point>;

/// Splits a sampled curve at gaps and at points outside `view` grown by half
/// its size on every side.
fn clip(points: &[Option<Point>], view: [f64; 4]) -> Vec<Polyline> {
    let [x0, x1, y0, y1] = view;
    let (mx, my) = (0.5 * (x1 - x0), 0.5 * (y1 - y0));
    let inside = |p: &Point| p.u >= x0 - mx && p.u <= x1 + mx && p.v >= y0 - my && p.v <= y1 + my;
    let mut out = Vec::new();
    let mut cur: Polyline = Vec::new();
    for p in points {
        match p {
            Some(p) if p.u.is_finite() && p.v.is_finite() && inside(p) => cur.push(*p),
            _ => {
                if cur.len() > 1 {
                    out.push(std::mem::take(&mut cur));
                } else {
                    cur.clear();
                }
            }
        }
    }
    if cur.len() > 1 {
        out.push(cur);
    }
    out
}

fn linspace(a: f64, b: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |j| a + (b - a) * j as f64 / (n - 1) as f64)
}

/// Polylines of the σ-drawing of `c` inside `view`; an isolated point is
/// returned as a one-element polyline.
pub fn trace_cycle(c: &Cycle, sigma: Sigma, view: [f64; 4], samples: usize) -> Vec<Polyline> {
    let [x0, x1, y0, y1] = view;
    let span = (x1 - x0).max(y1 - y0);
    let scale = c.norm();
    if scale == 0.0 {
        return vec![];
    }
    if c.k.abs() <= 1e-12 * scale {
        // -2lu - 2nv + m = 0.
        let (l, n, m) = (c.l, c.n, c.m);
        let pts: Vec<Option<Point>> = if n.abs() >= l.abs() {
            linspace(x0, x1, samples).map(|u| Some(Point::new(u, (m - 2.0 * l * u) / (2.0 * n)))).collect()
        } else {
            linspace(y0, y1, samples).map(|v| Some(Point::new((m - 2.0 * n * v) / (2.0 * l), v))).collect()
        };
        return clip(&pts, view);
    }
    let c = c.scale(1.0 / c.k);
    let (l, n, m) = (c.l, c.n, c.m);
    match sigma {
        Sigma::Elliptic => {
            let r2 = l * l + n * n - m;
            if r2.abs() <= 1e-12 * (1.0 + l * l + n * n + m.abs()) {
                return vec![vec![Point::new(l, n)]];
            }
            if r2 < 0.0 {
                return vec![];
            }
            let r = r2.sqrt();
            let pts: Vec<Option<Point>> = (0..=samples)
                .map(|j| {
                    let t = 2.0 * PI * j as f64 / samples as f64;
                    Some(Point::new(l + r * t.cos(), n + r * t.sin()))
                })
                .collect();
            clip(&pts, view)
        }
        Sigma::Parabolic => {
            if n.abs() > 1e-12 * (1.0 + l.abs() + m.abs()) {
                let pts: Vec<Option<Point>> = linspace(x0 - 0.5 * span, x1 + 0.5 * span, samples)
                    .map(|u| Some(Point::new(u, (u * u - 2.0 * l * u + m) / (2.0 * n))))
                    .collect();
                return clip(&pts, view);
            }
            // Pair of vertical lines u = l ± √(l² − m).
            let d = l * l - m;
            if d < 0.0 {
                return vec![];
            }
            let mut out = Vec::new();
            for u in [l - d.sqrt(), l + d.sqrt()] {
                let pts: Vec<Option<Point>> = linspace(y0, y1, samples).map(|v| Some(Point::new(u, v))).collect();
                out.extend(clip(&pts, view));
            }
            out
        }
        Sigma::Hyperbolic => {
            // (u − l)² − (v + n)² = ρ, centre (l, −n).
            let (cu, cv) = (l, -n);
            let rho = l * l - n * n - m;
            let reach = span + (cu - 0.5 * (x0 + x1)).abs() + (cv - 0.5 * (y0 + y1)).abs();
            let mut out = Vec::new();
            if rho.abs() <= 1e-12 * (1.0 + l * l + n * n + m.abs()) {
                for sgn in [1.0, -1.0] {
                    let pts: Vec<Option<Point>> = linspace(-reach, reach, samples)
                        .map(|t| Some(Point::new(cu + t, cv + sgn * t)))
                        .collect();
                    out.extend(clip(&pts, view));
                }
                return out;
            }
            let a = rho.abs().sqrt();
            let tmax = (reach / a).asinh() + 0.5;
            for branch in [1.0, -1.0] {
                let pts: Vec<Option<Point>> = linspace(-tmax, tmax, samples)
                    .map(|t| {
                        let (ch, sh) = (branch * a * t.cosh(), a * t.sinh());
                        Some(if rho > 0.0 { Point::new(cu + ch, cv + sh) } else { Point::new(cu + sh, cv + ch) })
                    })
                    .collect();
                out.extend(clip(&pts, view));
            }
            out
        }
    }
}

struct Frame {
    ox: f64,
    oy: f64,
    size: f64,
    view: [f64; 4],
}

impl Frame {
    fn map(&self, p: Point) -> (f64, f64) {
        let [x0, x1, y0, y1] = self.view;
        let sx = self.size / (x1 - x0);
        let sy = self.size / (y1 - y0);
        (self.ox + (p.u - x0) * sx, self.oy + (y1 - p.v) * sy)
    }
}

fn style_attrs(style: &Style) -> String {
    let mut s = format!(" stroke=\"{}\" stroke-width=\"{}\"", style.stroke, fmt6(style.width));
    if let Some(d) = &style.dash {
        let _ = write!(s, " stroke-dasharray=\"{d}\"");
    }
    s
}

fn path_data(frame: &Frame, line: &[Point]) -> String {
    let mut d = String::new();
    for (i, p) in line.iter().enumerate() {
        let (x, y) = frame.map(*p);
        let _ = write!(d, "{}{} {}", if i == 0 { "M" } else { " L" }, fmt6(x), fmt6(y));
    }
    d
}

fn emit_lines(svg: &mut String, frame: &Frame, lines: &[Polyline], style: &Style, class: &str) {
    for line in lines {
        if line.len() == 1 {
            let (x, y) = frame.map(line[0]);
            let _ = writeln!(
                svg,
                "<circle class=\"{class}\" cx=\"{}\" cy=\"{}\" r=\"2.500000\" fill=\"{}\"/>",
                fmt6(x),
                fmt6(y),
                style.stroke
            );
            continue;
        }
        let closed = line.len() > 2 && line[0].dist(line[line.len() - 1]) < 1e-9;
        let mut d = path_data(frame, line);
        if closed {
            d.push_str(" Z");
        }
        let _ = writeln!(svg, "<path class=\"{class}\" d=\"{d}\" fill=\"none\"{}/>", style_attrs(style));
    }
}

/// Polylines for one element of a panel.
pub fn element_lines(panel: &Panel, e: &Element, view: [f64; 4], samples: usize) -> Result<(Vec<Polyline>, &'static str)> {
    let sigma = panel.sigma;
    let params = panel.params();
    Ok(match e {
        Element::Cycle { cycle, .. } => (trace_cycle(&Cycle::from_array(*cycle), sigma, view, samples), "cycle"),
        Element::Orbit { start, .. } => {
            let pts = orbit_points(Point::new(start[0], start[1]), sigma, samples);
            (clip(&pts, view), "orbit")
        }
        Element::Point { at, .. } => (vec![vec![Point::new(at[0], at[1])]], "point"),
        Element::GhostOf { of, .. } => {
            let c = ghost(&panel.cycle_by_id(of)?, sigma, params)?;
            (trace_cycle(&c, sigma, view, samples), "ghost")
        }
        Element::SGhostOf { of, .. } => {
            let c = s_ghost(&panel.cycle_by_id(of)?, sigma, params)?;
            (trace_cycle(&c, sigma, view, samples), "s-ghost")
        }
        Element::ZeroRadiusAt { at, .. } => {
            let c = zero_radius_at(Point::new(at[0], at[1]), params);
            (trace_cycle(&c, sigma, view, samples), "zero-radius")
        }
    })
}

fn element_style(e: &Element) -> &Style {
    match e {
        Element::Cycle { style, .. }
        | Element::Orbit { style, .. }
        | Element::Point { style, .. }
        | Element::GhostOf { style, .. }
        | Element::SGhostOf { style, .. }
        | Element::ZeroRadiusAt { style, .. } => style,
    }
}

fn sigma_name(s: Sigma) -> &'static str {
    match s {
        Sigma::Elliptic => "elliptic",
        Sigma::Parabolic => "parabolic",
        Sigma::Hyperbolic => "hyperbolic",
    }
}

pub fn render(scene: &Scene) -> Result<String> {
    scene.validate()?;
    let pad = 24.0;
    let size = scene.panel_size;
    let cols = scene.columns.min(scene.panels.len()).max(1);
    let rows = scene.panels.len().div_ceil(cols).max(1);
    let head = if scene.title.is_some() { 28.0 } else { 0.0 };
    let width = cols as f64 * (size + pad) + pad;
    let height = rows as f64 * (size + pad + 16.0) + pad + head;

    let mut svg = String::new();
    let _ = writeln!(svg, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        fmt6(width),
        fmt6(height),
        fmt6(width),
        fmt6(height)
    );
    let _ = writeln!(svg, "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>", fmt6(width), fmt6(height));
    if let Some(t) = &scene.title {
        let _ = writeln!(svg, "<text x=\"{}\" y=\"20.000000\" font-size=\"16\" font-family=\"serif\">{}</text>", fmt6(pad), escape(t));
    }

    for (idx, panel) in scene.panels.iter().enumerate() {
        let (r, c) = (idx / cols, idx % cols);
        let frame = Frame {
            ox: pad + c as f64 * (size + pad),
            oy: head + pad + 16.0 + r as f64 * (size + pad + 16.0),
            size,
            view: scene.viewport,
        };
        let _ = writeln!(
            svg,
            "<g id=\"panel-{idx}\" data-sigma=\"{}\" data-sigma-breve=\"{}\">",
            panel.sigma, panel.sigma_breve
        );
        let _ = writeln!(svg, "<clipPath id=\"clip-{idx}\"><rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/></clipPath>",
            fmt6(frame.ox), fmt6(frame.oy), fmt6(size), fmt6(size));
        let label = panel.title.clone().unwrap_or_else(|| {
            format!("σ = {} ({}), σ̆ = {}", panel.sigma, sigma_name(panel.sigma), panel.sigma_breve)
        });
        let _ = writeln!(svg, "<text x=\"{}\" y=\"{}\" font-size=\"12\" font-family=\"serif\">{}</text>",
            fmt6(frame.ox), fmt6(frame.oy - 6.0), escape(&label));
        let _ = writeln!(svg, "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#888888\" stroke-width=\"0.500000\"/>",
            fmt6(frame.ox), fmt6(frame.oy), fmt6(size), fmt6(size));
        let _ = writeln!(svg, "<g clip-path=\"url(#clip-{idx})\">");
        // Axes.
        let [x0, x1, y0, y1] = scene.viewport;
        let axis = Style { stroke: "#bbbbbb".into(), width: 0.5, dash: None };
        if y0 <= 0.0 && y1 >= 0.0 {
            emit_lines(&mut svg, &frame, &[vec![Point::new(x0, 0.0), Point::new(x1, 0.0)]], &axis, "axis");
        }
        if x0 <= 0.0 && x1 >= 0.0 {
            emit_lines(&mut svg, &frame, &[vec![Point::new(0.0, y0), Point::new(0.0, y1)]], &axis, "axis");
        }
        for e in &panel.elements {
            let (lines, class) = element_lines(panel, e, scene.viewport, scene.samples)?;
            emit_lines(&mut svg, &frame, &lines, element_style(e), class);
        }
        let _ = writeln!(svg, "</g>\n</g>");
    }
    let _ = writeln!(svg, "</svg>");
    Ok(svg)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Jet spectrum drawn over the unit disk seen obliquely: each point is a
/// stem at λ whose height is its block length.
pub fn render_spectrum(jets: &JetSpectrum) -> String {
    let (w, h) = (420.0, 360.0);
    let (cx, cy, r, tilt, unit) = (210.0, 250.0, 160.0, 0.45, 36.0);
    let proj = |re: f64, im: f64, z: f64| (cx + r * re, cy - r * tilt * im - unit * z);
    let mut svg = String::new();
    let _ = writeln!(svg, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
    let _ = writeln!(svg, "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        fmt6(w), fmt6(h), fmt6(w), fmt6(h));
    let _ = writeln!(svg, "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>", fmt6(w), fmt6(h));
    let _ = writeln!(svg, "<ellipse class=\"disk\" cx=\"{}\" cy=\"{}\" rx=\"{}\" ry=\"{}\" fill=\"#f2f2f2\" stroke=\"black\" stroke-width=\"1.000000\"/>",
        fmt6(cx), fmt6(cy), fmt6(r), fmt6(r * tilt));
    for p in &jets.points {
        let (bx, by) = proj(p.lambda.re, p.lambda.im, 0.0);
        let (tx, ty) = proj(p.lambda.re, p.lambda.im, p.k as f64);
        let _ = writeln!(svg, "<circle class=\"eigenvalue\" cx=\"{}\" cy=\"{}\" r=\"2.500000\" fill=\"black\"/>", fmt6(bx), fmt6(by));
        let _ = writeln!(svg, "<path class=\"jet\" d=\"M{} {} L{} {}\" stroke=\"#1f4e9c\" stroke-width=\"2.000000\"/>",
            fmt6(bx), fmt6(by), fmt6(tx), fmt6(ty));
        let _ = writeln!(svg, "<circle class=\"jet-top\" cx=\"{}\" cy=\"{}\" r=\"3.500000\" fill=\"#1f4e9c\"/>", fmt6(tx), fmt6(ty));
        let _ = writeln!(svg, "<text x=\"{}\" y=\"{}\" font-size=\"11\" font-family=\"serif\">{}</text>",
            fmt6(tx + 5.0), fmt6(ty), p.k);
    }
    let _ = writeln!(svg, "</svg>");
    svg
}
