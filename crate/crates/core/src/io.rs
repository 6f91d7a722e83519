//! Plain-text instance and network formats.
//!
//! Instance: a terminal count, then one `x y` pair per line.
//! Network: one arc per line, `x1 y1 x2 y2`, directed from the first point
//! to the second; an axis-parallel arc spanning several grid cells is split
//! into unit arcs. In both formats `#` starts a comment.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geometry::{DirectedNetwork, Grid, Node, Point, TerminalSet};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Non-empty, comment-stripped lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let body = l.split_once('#').map_or(l, |(b, _)| b).trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}

fn ints<const N: usize>(line: usize, body: &str) -> Result<[i64; N]> {
    let fields: Vec<&str> = body.split_whitespace().collect();
    if fields.len() != N {
        return Err(parse_err(line, format!("expected {N} integers, found {}", fields.len())));
    }
    let mut out = [0i64; N];
    for (slot, f) in out.iter_mut().zip(fields) {
        *slot = f.parse().map_err(|_| parse_err(line, format!("not an integer: {f:?}")))?;
    }
    Ok(out)
}

pub fn parse_instance(text: &str) -> Result<TerminalSet> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing terminal count"))?;
    let [count] = ints::<1>(hline, header)?;
    let count = usize::try_from(count).map_err(|_| parse_err(hline, "negative terminal count"))?;
    let mut points = Vec::with_capacity(count);
    let mut last = hline;
    for (ln, body) in lines {
        let [x, y] = ints::<2>(ln, body)?;
        if points.len() == count {
            return Err(parse_err(ln, format!("more than {count} terminals")));
        }
        points.push(Point::new(x, y));
        last = ln;
    }
    if points.len() != count {
        return Err(parse_err(last, format!("expected {count} terminals, found {}", points.len())));
    }
    TerminalSet::new(points)
}

pub fn emit_instance(t: &TerminalSet) -> String {
    let mut s = format!("{}\n", t.len());
    for p in t.points() {
        writeln!(s, "{} {}", p.x, p.y).unwrap();
    }
    s
}

/// Reads arcs onto the Hanan grid of `t`.
pub fn parse_network(text: &str, t: &TerminalSet) -> Result<DirectedNetwork> {
    let grid = Grid::new(t);
    let mut net = DirectedNetwork::new();
    for (ln, body) in content_lines(text) {
        let [x1, y1, x2, y2] = ints::<4>(ln, body)?;
        let node = |x, y| grid.node_of(Point::new(x, y)).ok_or_else(|| parse_err(ln, format!("({x}, {y}) is not a grid node")));
        let (a, b) = (node(x1, y1)?, node(x2, y2)?);
        if a == b || (a.ix != b.ix && a.iy != b.iy) {
            return Err(parse_err(ln, "arc must be a non-empty axis-parallel segment"));
        }
        let mut cur = a;
        while cur != b {
            let next = Node::new(step(cur.ix, b.ix), step(cur.iy, b.iy));
            net.insert_step(cur, next).map_err(|_| parse_err(ln, "arc reverses an earlier arc"))?;
            cur = next;
        }
    }
    Ok(net)
}

fn step(from: usize, to: usize) -> usize {
    match from.cmp(&to) {
        std::cmp::Ordering::Less => from + 1,
        std::cmp::Ordering::Greater => from - 1,
        std::cmp::Ordering::Equal => from,
    }
}

/// One unit arc per line, in grid-edge order.
pub fn emit_network(net: &DirectedNetwork, grid: &Grid) -> String {
    let mut s = String::new();
    for (e, o) in net.arcs() {
        let (lo, hi) = (grid.point(e.low()), grid.point(e.high()));
        let (p, q) = if o == crate::geometry::Orientation::Forward { (lo, hi) } else { (hi, lo) };
        writeln!(s, "{} {} {} {}", p.x, p.y, q.x, q.y).unwrap();
    }
    s
}
