//! Deterministic SVG drawings of directed networks.
//!
//! The y axis points up, as in the usual figures. Arcs are drawn as arrows;
//! the two halves of staircase completions can be given their own strokes,
//! and staircase regions can be outlined.

use std::fmt::Write as _;

use crate::approximation::Solution;
use crate::decomposition::{Decomposition, Staircase};
use crate::geometry::{DirectedNetwork, Grid, Orientation, Point, RectilinearNetwork, TerminalSet};

#[derive(Clone, Debug)]
pub struct SvgOptions {
    /// Pixels per coordinate unit.
    pub scale: i64,
    pub margin: i64,
    pub labels: bool,
    /// Arcs drawn in the "up/right" completion stroke.
    pub dir_a: DirectedNetwork,
    /// Arcs drawn in the "down/left" completion stroke.
    pub dir_b: DirectedNetwork,
    /// Closed polygons drawn dashed (staircase regions).
    pub outlines: Vec<Vec<Point>>,
    /// Edges shaded as even and odd subgrids.
    pub even: RectilinearNetwork,
    pub odd: RectilinearNetwork,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            scale: 40,
            margin: 30,
            labels: true,
            dir_a: DirectedNetwork::new(),
            dir_b: DirectedNetwork::new(),
            outlines: Vec::new(),
            even: RectilinearNetwork::new(),
            odd: RectilinearNetwork::new(),
        }
    }
}

/// Boundary of the union of boxes spanned by the far corner and the
/// interior terminals, as a closed polygon in real coordinates.
pub fn staircase_outline(t: &TerminalSet, st: &Staircase) -> Vec<Point> {
    let f = st.frame.apply(st.far_corner);
    let mut steps: Vec<Point> = st.interior.iter().map(|&k| st.frame.apply(t.point(k))).collect();
    steps.sort_by_key(|p| p.x);
    let mut poly = vec![f, Point::new(f.x, steps[0].y)];
    for (k, p) in steps.iter().enumerate() {
        poly.push(*p);
        let next_y = steps.get(k + 1).map_or(f.y, |q| q.y);
        poly.push(Point::new(p.x, next_y));
    }
    poly.into_iter().map(|p| st.frame.invert(p)).collect()
}

/// Options that stroke every completion's two halves apart and outline
/// every staircase region.
pub fn solution_options(t: &TerminalSet, dec: &Decomposition, sol: &Solution) -> SvgOptions {
    let mut opts = SvgOptions::default();
    for c in &sol.completions {
        for (e, o) in c.dir_a.arcs() {
            let _ = opts.dir_a.insert(e, o);
        }
        for (e, o) in c.dir_b.arcs() {
            let _ = opts.dir_b.insert(e, o);
        }
    }
    opts.outlines = dec.staircases.iter().map(|st| staircase_outline(t, st)).collect();
    opts
}

pub fn render_svg(net: &DirectedNetwork, t: &TerminalSet, opts: &SvgOptions) -> String {
    let grid = Grid::new(t);
    let (xs, ys) = (grid.xs(), grid.ys());
    let (x0, x1) = (xs.first().copied().unwrap_or(0), xs.last().copied().unwrap_or(0));
    let (y0, y1) = (ys.first().copied().unwrap_or(0), ys.last().copied().unwrap_or(0));
    let (s, m) = (opts.scale, opts.margin);
    let px = |x: i64| m + (x - x0) * s;
    let py = |y: i64| m + (y1 - y) * s;
    let (w, h) = ((x1 - x0) * s + 2 * m, (y1 - y0) * s + 2 * m);

    let mut out = String::new();
    writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#).unwrap();
    out.push_str(concat!(
        "<defs>\n",
        r#"<marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="context-stroke"/></marker>"#,
        "\n</defs>\n"
    ));
    writeln!(out, r##"<rect x="0" y="0" width="{w}" height="{h}" fill="#ffffff"/>"##).unwrap();

    // Hanan grid
    out.push_str(r##"<g stroke="#e6e6e6" stroke-width="1">"##);
    out.push('\n');
    for &x in xs {
        writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, px(x), py(y0), px(x), py(y1)).unwrap();
    }
    for &y in ys {
        writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, px(x0), py(y), px(x1), py(y)).unwrap();
    }
    out.push_str("</g>\n");

    for (class, edges, colour) in [("even", &opts.even, "#dbe9ff"), ("odd", &opts.odd, "#ffe3d6")] {
        if edges.is_empty() {
            continue;
        }
        writeln!(out, r#"<g class="{class}" stroke="{colour}" stroke-width="8" stroke-linecap="round">"#).unwrap();
        for e in edges.edges() {
            let (a, b) = (grid.point(e.low()), grid.point(e.high()));
            writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, px(a.x), py(a.y), px(b.x), py(b.y)).unwrap();
        }
        out.push_str("</g>\n");
    }

    for poly in &opts.outlines {
        let pts: Vec<String> = poly.iter().map(|p| format!("{},{}", px(p.x), py(p.y))).collect();
        writeln!(
            out,
            r##"<polygon class="staircase" points="{}" fill="none" stroke="#888888" stroke-width="1.5" stroke-dasharray="6 4"/>"##,
            pts.join(" ")
        )
        .unwrap();
    }

    out.push_str(r#"<g class="arcs" stroke-width="2.5" marker-end="url(#arrow)">"#);
    out.push('\n');
    for (e, o) in net.arcs() {
        let (lo, hi) = (grid.point(e.low()), grid.point(e.high()));
        let (a, b) = if o == Orientation::Forward { (lo, hi) } else { (hi, lo) };
        let (colour, dash) = if opts.dir_a.get(&e) == Some(o) {
            ("#1f5fbf", "")
        } else if opts.dir_b.get(&e) == Some(o) {
            ("#c0392b", r#" stroke-dasharray="7 3""#)
        } else {
            ("#222222", "")
        };
        writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{colour}"{dash}/>"#, px(a.x), py(a.y), px(b.x), py(b.y))
            .unwrap();
    }
    out.push_str("</g>\n");

    out.push_str(r##"<g class="terminals" fill="#000000" font-family="sans-serif" font-size="12">"##);
    out.push('\n');
    for (k, p) in t.points().iter().enumerate() {
        writeln!(out, r#"<circle cx="{}" cy="{}" r="5"/>"#, px(p.x), py(p.y)).unwrap();
        if opts.labels {
            writeln!(out, r#"<text x="{}" y="{}">t{k}</text>"#, px(p.x) + 7, py(p.y) - 7).unwrap();
        }
    }
    out.push_str("</g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approximation::solve;

    fn ts(v: &[(i64, i64)]) -> TerminalSet {
        TerminalSet::new(v.iter().map(|&p| p.into()).collect()).unwrap()
    }

    #[test]
    fn single_cell_has_four_arrows() {
        let t = ts(&[(0, 0), (3, 2)]);
        let s = solve(&t).unwrap();
        let svg = render_svg(&s.network, &t, &SvgOptions::default());
        assert_eq!(svg.matches("<line").count() - 4, 4); // minus the four grid lines
        assert!(svg.contains("t1"));
    }

    #[test]
    fn empty_network_draws_terminals_only() {
        let t = ts(&[(0, 0), (3, 2), (5, 1)]);
        let svg = render_svg(&DirectedNetwork::new(), &t, &SvgOptions::default());
        assert_eq!(svg.matches("<circle").count(), 3);
        assert!(!svg.contains(r##"stroke="#222222""##));
    }

    #[test]
    fn flipped_y_axis() {
        let t = ts(&[(0, 0), (3, 2)]);
        let svg = render_svg(&DirectedNetwork::new(), &t, &SvgOptions { labels: false, ..Default::default() });
        // the lower terminal is drawn further down the page
        assert!(svg.contains(r#"<circle cx="30" cy="110" r="5"/>"#));
        assert!(svg.contains(r#"<circle cx="150" cy="30" r="5"/>"#));
    }

    #[test]
    fn outline_of_five_point_staircase() {
        let t = crate::generate::generate_staircase_family(2);
        let dec = crate::decomposition::Decomposition::new(&t);
        let poly = staircase_outline(&t, &dec.staircases[0]);
        let want: Vec<Point> = [(0, 0), (0, 3), (2, 3), (2, 2), (3, 2), (3, 0)].iter().map(|&p| p.into()).collect();
        assert_eq!(poly, want);
    }
}
