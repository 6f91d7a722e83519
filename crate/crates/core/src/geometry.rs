//! Exact integer primitives: terminals, the Hanan grid and (directed)
//! rectilinear networks living on it.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{CoordAxis, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    pub fn l1(self, other: Point) -> i64 {
        (self.x - other.x).abs() + (self.y - other.y).abs()
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point { x, y }
    }
}

/// Terminals in general position: no two share an x or a y coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TerminalSet {
    points: Vec<Point>,
    /// `x_rank[i]` is the 0-based position of terminal `i` in x-sorted order.
    x_rank: Vec<usize>,
    y_rank: Vec<usize>,
    by_x: Vec<usize>,
    by_y: Vec<usize>,
}

impl TerminalSet {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let n = points.len();
        let mut by_x: Vec<usize> = (0..n).collect();
        let mut by_y: Vec<usize> = (0..n).collect();
        by_x.sort_by_key(|&i| points[i].x);
        by_y.sort_by_key(|&i| points[i].y);
        for w in by_x.windows(2) {
            if points[w[0]].x == points[w[1]].x {
                return Err(Error::DuplicateCoordinate { axis: CoordAxis::X, value: points[w[0]].x });
            }
        }
        for w in by_y.windows(2) {
            if points[w[0]].y == points[w[1]].y {
                return Err(Error::DuplicateCoordinate { axis: CoordAxis::Y, value: points[w[0]].y });
            }
        }
        let mut x_rank = vec![0; n];
        let mut y_rank = vec![0; n];
        for (r, &i) in by_x.iter().enumerate() {
            x_rank[i] = r;
        }
        for (r, &i) in by_y.iter().enumerate() {
            y_rank[i] = r;
        }
        Ok(TerminalSet { points, x_rank, y_rank, by_x, by_y })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> Point {
        self.points[i]
    }

    pub fn x_rank(&self) -> &[usize] {
        &self.x_rank
    }

    pub fn y_rank(&self) -> &[usize] {
        &self.y_rank
    }

    /// Terminal indices sorted by increasing x.
    pub fn by_x(&self) -> &[usize] {
        &self.by_x
    }

    /// Terminal indices sorted by increasing y.
    pub fn by_y(&self) -> &[usize] {
        &self.by_y
    }

    /// True iff no terminal other than `i` and `j` lies in the closed box R(t_i, t_j).
    pub fn is_empty_rectangle(&self, i: usize, j: usize) -> bool {
        let r = IsoRectangle::spanning(self.points[i], self.points[j]);
        self.points
            .iter()
            .enumerate()
            .all(|(k, &p)| k == i || k == j || !r.contains(p))
    }

    /// All unordered pairs `i < j` whose bounding box is empty.
    pub fn empty_pairs(&self) -> Vec<(usize, usize)> {
        // Scan in x order keeping the y-staircase of terminals still visible
        // from the left endpoint.
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            let i = self.by_x[a];
            let pi = self.points[i];
            let mut above = i64::MAX;
            let mut below = i64::MIN;
            for &j in &self.by_x[a + 1..] {
                let pj = self.points[j];
                if pj.y > pi.y && pj.y < above {
                    out.push((i.min(j), i.max(j)));
                    above = pj.y;
                } else if pj.y < pi.y && pj.y > below {
                    out.push((i.min(j), i.max(j)));
                    below = pj.y;
                }
            }
        }
        out.sort_unstable();
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slope {
    Positive,
    Negative,
    Degenerate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IsoRectangle {
    pub lo: Point,
    pub hi: Point,
    pub slope: Slope,
}

impl IsoRectangle {
    pub fn spanning(p: Point, q: Point) -> Self {
        let s = (p.x - q.x).signum() * (p.y - q.y).signum();
        let slope = match s {
            1 => Slope::Positive,
            -1 => Slope::Negative,
            _ => Slope::Degenerate,
        };
        IsoRectangle {
            lo: Point::new(p.x.min(q.x), p.y.min(q.y)),
            hi: Point::new(p.x.max(q.x), p.y.max(q.y)),
            slope,
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        self.lo.x <= p.x && p.x <= self.hi.x && self.lo.y <= p.y && p.y <= self.hi.y
    }

    pub fn width(&self) -> i64 {
        self.hi.x - self.lo.x
    }

    pub fn height(&self) -> i64 {
        self.hi.y - self.lo.y
    }

    pub fn perimeter(&self) -> i64 {
        2 * (self.width() + self.height())
    }

    /// Closed intersection, if any.
    pub fn intersection(&self, other: &IsoRectangle) -> Option<(Point, Point)> {
        let lo = Point::new(self.lo.x.max(other.lo.x), self.lo.y.max(other.lo.y));
        let hi = Point::new(self.hi.x.min(other.hi.x), self.hi.y.min(other.hi.y));
        (lo.x <= hi.x && lo.y <= hi.y).then_some((lo, hi))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    Horizontal,
    Vertical,
}

/// A unit edge of the grid between two consecutive crossings.
///
/// Horizontal edges join `(ix, iy)` and `(ix + 1, iy)`, vertical ones join
/// `(ix, iy)` and `(ix, iy + 1)`; indices are grid line ranks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridEdge {
    pub axis: Axis,
    pub ix: u32,
    pub iy: u32,
}

impl GridEdge {
    pub fn horizontal(ix: usize, iy: usize) -> Self {
        GridEdge { axis: Axis::Horizontal, ix: ix as u32, iy: iy as u32 }
    }

    pub fn vertical(ix: usize, iy: usize) -> Self {
        GridEdge { axis: Axis::Vertical, ix: ix as u32, iy: iy as u32 }
    }

    pub fn low(&self) -> Node {
        Node::new(self.ix as usize, self.iy as usize)
    }

    pub fn high(&self) -> Node {
        match self.axis {
            Axis::Horizontal => Node::new(self.ix as usize + 1, self.iy as usize),
            Axis::Vertical => Node::new(self.ix as usize, self.iy as usize + 1),
        }
    }

    /// The edge and orientation of the unit step `from -> to`, if adjacent.
    pub fn between(from: Node, to: Node) -> Option<(GridEdge, Orientation)> {
        let (fx, fy, tx, ty) = (from.ix as i64, from.iy as i64, to.ix as i64, to.iy as i64);
        match (tx - fx, ty - fy) {
            (1, 0) => Some((GridEdge::horizontal(from.ix, from.iy), Orientation::Forward)),
            (-1, 0) => Some((GridEdge::horizontal(to.ix, to.iy), Orientation::Backward)),
            (0, 1) => Some((GridEdge::vertical(from.ix, from.iy), Orientation::Forward)),
            (0, -1) => Some((GridEdge::vertical(to.ix, to.iy), Orientation::Backward)),
            _ => None,
        }
    }
}

/// Direction of an arc along its edge's axis: `Forward` means increasing
/// coordinate (rightward or upward).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orientation {
    Forward,
    Backward,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Forward => Orientation::Backward,
            Orientation::Backward => Orientation::Forward,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Node {
    pub ix: usize,
    pub iy: usize,
}

impl Node {
    pub const fn new(ix: usize, iy: usize) -> Self {
        Node { ix, iy }
    }
}

/// The Hanan grid of a terminal set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    xs: Vec<i64>,
    ys: Vec<i64>,
}

impl Grid {
    pub fn new(terminals: &TerminalSet) -> Self {
        let mut xs: Vec<i64> = terminals.points().iter().map(|p| p.x).collect();
        let mut ys: Vec<i64> = terminals.points().iter().map(|p| p.y).collect();
        xs.sort_unstable();
        ys.sort_unstable();
        Grid { xs, ys }
    }

    pub fn from_lines(mut xs: Vec<i64>, mut ys: Vec<i64>) -> Self {
        xs.sort_unstable();
        xs.dedup();
        ys.sort_unstable();
        ys.dedup();
        Grid { xs, ys }
    }

    pub fn xs(&self) -> &[i64] {
        &self.xs
    }

    pub fn ys(&self) -> &[i64] {
        &self.ys
    }

    pub fn width(&self) -> usize {
        self.xs.len()
    }

    pub fn height(&self) -> usize {
        self.ys.len()
    }

    pub fn node_count(&self) -> usize {
        self.xs.len() * self.ys.len()
    }

    pub fn edge_count(&self) -> usize {
        let (w, h) = (self.xs.len(), self.ys.len());
        if w == 0 || h == 0 {
            return 0;
        }
        h * (w - 1) + w * (h - 1)
    }

    pub fn edges(&self) -> impl Iterator<Item = GridEdge> + '_ {
        let (w, h) = (self.xs.len(), self.ys.len());
        let hor = (0..h).flat_map(move |iy| (0..w.saturating_sub(1)).map(move |ix| GridEdge::horizontal(ix, iy)));
        let ver = (0..w).flat_map(move |ix| (0..h.saturating_sub(1)).map(move |iy| GridEdge::vertical(ix, iy)));
        hor.chain(ver)
    }

    /// Dense index of an edge in `0..edge_count()`, matching `edges()` order.
    pub fn edge_index(&self, e: GridEdge) -> usize {
        let (w, h) = (self.xs.len(), self.ys.len());
        match e.axis {
            Axis::Horizontal => e.iy as usize * (w - 1) + e.ix as usize,
            Axis::Vertical => h * (w - 1) + e.ix as usize * (h - 1) + e.iy as usize,
        }
    }

    pub fn edge_length(&self, e: GridEdge) -> i64 {
        match e.axis {
            Axis::Horizontal => self.xs[e.ix as usize + 1] - self.xs[e.ix as usize],
            Axis::Vertical => self.ys[e.iy as usize + 1] - self.ys[e.iy as usize],
        }
    }

    pub fn point(&self, n: Node) -> Point {
        Point::new(self.xs[n.ix], self.ys[n.iy])
    }

    pub fn node_of(&self, p: Point) -> Option<Node> {
        let ix = self.xs.binary_search(&p.x).ok()?;
        let iy = self.ys.binary_search(&p.y).ok()?;
        Some(Node::new(ix, iy))
    }

    pub fn terminal_nodes(&self, t: &TerminalSet) -> Vec<Node> {
        (0..t.len()).map(|i| Node::new(t.x_rank()[i], t.y_rank()[i])).collect()
    }

    /// Unit edges along the boundary of the box spanned by two nodes.
    pub fn boundary_edges(lo: Node, hi: Node) -> Vec<GridEdge> {
        let mut out = Vec::new();
        for ix in lo.ix..hi.ix {
            out.push(GridEdge::horizontal(ix, lo.iy));
            if hi.iy != lo.iy {
                out.push(GridEdge::horizontal(ix, hi.iy));
            }
        }
        for iy in lo.iy..hi.iy {
            out.push(GridEdge::vertical(lo.ix, iy));
            if hi.ix != lo.ix {
                out.push(GridEdge::vertical(hi.ix, iy));
            }
        }
        out
    }
}

/// Rotation sense of an oriented rectangle boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rotation {
    Clockwise,
    Counterclockwise,
}

impl Rotation {
    pub fn reversed(self) -> Self {
        match self {
            Rotation::Clockwise => Rotation::Counterclockwise,
            Rotation::Counterclockwise => Rotation::Clockwise,
        }
    }
}

/// Arcs of the boundary of the node box `lo..hi` oriented with `rot`.
///
/// Clockwise: left side up, top side right, right side down, bottom side left.
pub fn oriented_boundary(lo: Node, hi: Node, rot: Rotation) -> Vec<(GridEdge, Orientation)> {
    let cw = |e: GridEdge| {
        let o = match e.axis {
            Axis::Vertical if e.ix as usize == lo.ix => Orientation::Forward,
            Axis::Vertical => Orientation::Backward,
            Axis::Horizontal if e.iy as usize == hi.iy => Orientation::Forward,
            Axis::Horizontal => Orientation::Backward,
        };
        (e, o)
    };
    Grid::boundary_edges(lo, hi)
        .into_iter()
        .map(cw)
        .map(|(e, o)| match rot {
            Rotation::Clockwise => (e, o),
            Rotation::Counterclockwise => (e, o.reversed()),
        })
        .collect()
}

/// Undirected network: a set of grid edges.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RectilinearNetwork {
    edges: BTreeSet<GridEdge>,
}

impl RectilinearNetwork {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, e: GridEdge) -> bool {
        self.edges.insert(e)
    }

    pub fn contains(&self, e: &GridEdge) -> bool {
        self.edges.contains(e)
    }

    pub fn edges(&self) -> impl Iterator<Item = &GridEdge> + '_ {
        self.edges.iter()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn length(&self, grid: &Grid) -> i64 {
        self.edges.iter().map(|&e| grid.edge_length(e)).sum()
    }
}

impl FromIterator<GridEdge> for RectilinearNetwork {
    fn from_iter<I: IntoIterator<Item = GridEdge>>(iter: I) -> Self {
        RectilinearNetwork { edges: iter.into_iter().collect() }
    }
}

/// Oriented network: each grid edge carries at most one orientation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DirectedNetwork {
    arcs: BTreeMap<GridEdge, Orientation>,
}

impl DirectedNetwork {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds an arc; fails if the edge already carries the opposite orientation.
    pub fn insert(&mut self, e: GridEdge, o: Orientation) -> Result<bool> {
        match self.arcs.get(&e) {
            Some(&cur) if cur == o => Ok(false),
            Some(_) => Err(Error::OrientationConflict { edge: e }),
            None => {
                self.arcs.insert(e, o);
                Ok(true)
            }
        }
    }

    pub fn insert_step(&mut self, from: Node, to: Node) -> Result<bool> {
        let (e, o) = GridEdge::between(from, to).expect("nodes must be grid neighbours");
        self.insert(e, o)
    }

    pub fn remove(&mut self, e: &GridEdge) -> Option<Orientation> {
        self.arcs.remove(e)
    }

    pub fn get(&self, e: &GridEdge) -> Option<Orientation> {
        self.arcs.get(e).copied()
    }

    pub fn has_step(&self, from: Node, to: Node) -> bool {
        GridEdge::between(from, to).is_some_and(|(e, o)| self.get(&e) == Some(o))
    }

    pub fn arcs(&self) -> impl Iterator<Item = (GridEdge, Orientation)> + '_ {
        self.arcs.iter().map(|(&e, &o)| (e, o))
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn support(&self) -> RectilinearNetwork {
        self.arcs.keys().copied().collect()
    }

    pub fn length(&self, grid: &Grid) -> i64 {
        self.arcs.keys().map(|&e| grid.edge_length(e)).sum()
    }

    /// Merges `other` into `self`, failing on the first opposite orientation.
    pub fn extend_from(&mut self, other: &DirectedNetwork) -> Result<()> {
        for (e, o) in other.arcs() {
            self.insert(e, o)?;
        }
        Ok(())
    }

    pub fn reversed(&self) -> DirectedNetwork {
        DirectedNetwork { arcs: self.arcs.iter().map(|(&e, &o)| (e, o.reversed())).collect() }
    }
}

impl FromIterator<(GridEdge, Orientation)> for DirectedNetwork {
    /// Later arcs overwrite earlier ones on the same edge.
    fn from_iter<I: IntoIterator<Item = (GridEdge, Orientation)>>(iter: I) -> Self {
        DirectedNetwork { arcs: iter.into_iter().collect() }
    }
}
