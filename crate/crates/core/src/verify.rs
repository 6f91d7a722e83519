//! Feasibility checks by monotone reachability.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::decomposition::GeneratingSet;
use crate::geometry::{Axis, DirectedNetwork, Grid, GridEdge, Node, Orientation, TerminalSet};

/// Dense arc lookup for one grid.
pub struct ArcTable {
    width: usize,
    height: usize,
    // +1 forward, -1 backward, 0 absent
    horizontal: Vec<i8>,
    vertical: Vec<i8>,
}

impl ArcTable {
    pub fn new(net: &DirectedNetwork, grid: &Grid) -> Self {
        let (w, h) = (grid.width(), grid.height());
        let mut horizontal = vec![0i8; w * h];
        let mut vertical = vec![0i8; w * h];
        for (e, o) in net.arcs() {
            let v = if o == Orientation::Forward { 1 } else { -1 };
            let k = e.iy as usize * w + e.ix as usize;
            match e.axis {
                Axis::Horizontal => horizontal[k] = v,
                Axis::Vertical => vertical[k] = v,
            }
        }
        ArcTable { width: w, height: h, horizontal, vertical }
    }

    /// Is there an arc stepping from `(ix, iy)` by `dx` in x (`dx` = ±1)?
    fn step_x(&self, ix: usize, iy: usize, dx: i64) -> bool {
        if dx > 0 {
            self.horizontal[iy * self.width + ix] == 1
        } else {
            self.horizontal[iy * self.width + ix - 1] == -1
        }
    }

    fn step_y(&self, ix: usize, iy: usize, dy: i64) -> bool {
        if dy > 0 {
            self.vertical[iy * self.width + ix] == 1
        } else {
            self.vertical[(iy - 1) * self.width + ix] == -1
        }
    }

    /// Nodes reachable from `src` by directed monotone paths, as a dense
    /// `iy * width + ix` mask. Each target is checked inside its own quadrant.
    pub fn monotone_reach(&self, src: Node) -> Vec<bool> {
        let (w, h) = (self.width, self.height);
        let mut out = vec![false; w * h];
        let mut quad = vec![false; w * h];
        for (dx, dy) in [(1i64, 1i64), (-1, 1), (1, -1), (-1, -1)] {
            let xs: Vec<usize> = if dx > 0 { (src.ix..w).collect() } else { (0..=src.ix).rev().collect() };
            let ys: Vec<usize> = if dy > 0 { (src.iy..h).collect() } else { (0..=src.iy).rev().collect() };
            for &iy in &ys {
                for &ix in &xs {
                    let k = iy * w + ix;
                    quad[k] = if ix == src.ix && iy == src.iy {
                        true
                    } else {
                        let from_x = ix != src.ix && {
                            let px = (ix as i64 - dx) as usize;
                            quad[iy * w + px] && self.step_x(px, iy, dx)
                        };
                        from_x
                            || (iy != src.iy && {
                                let py = (iy as i64 - dy) as usize;
                                quad[py * w + ix] && self.step_y(ix, py, dy)
                            })
                    };
                    out[k] |= quad[k];
                }
            }
            for &iy in &ys {
                for &ix in &xs {
                    quad[iy * w + ix] = false;
                }
            }
        }
        out
    }

    /// Sets or clears the arc on one edge.
    pub fn set(&mut self, e: GridEdge, o: Option<Orientation>) {
        let v = match o {
            Some(Orientation::Forward) => 1,
            Some(Orientation::Backward) => -1,
            None => 0,
        };
        let k = e.iy as usize * self.width + e.ix as usize;
        match e.axis {
            Axis::Horizontal => self.horizontal[k] = v,
            Axis::Vertical => self.vertical[k] = v,
        }
    }

    /// Single-pair check, scanning only the box spanned by `a` and `b`.
    pub fn reaches(&self, a: Node, b: Node) -> bool {
        let (dx, dy) = (if b.ix >= a.ix { 1i64 } else { -1 }, if b.iy >= a.iy { 1i64 } else { -1 });
        let (w, h) = (a.ix.abs_diff(b.ix) + 1, a.iy.abs_diff(b.iy) + 1);
        let mut ok = vec![false; w * h];
        let at = |i: usize, d: i64, base: usize| (base as i64 + d * i as i64) as usize;
        for j in 0..h {
            for i in 0..w {
                let (ix, iy) = (at(i, dx, a.ix), at(j, dy, a.iy));
                ok[j * w + i] = (i == 0 && j == 0)
                    || (i > 0 && ok[j * w + i - 1] && self.step_x(at(i - 1, dx, a.ix), iy, dx))
                    || (j > 0 && ok[(j - 1) * w + i] && self.step_y(ix, at(j - 1, dy, a.iy), dy));
            }
        }
        ok[w * h - 1]
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }
}

/// Does `net` hold a directed path `a -> b` of length exactly the L1 distance?
pub fn has_directed_manhattan_path(net: &DirectedNetwork, grid: &Grid, a: Node, b: Node) -> bool {
    let table = ArcTable::new(net, grid);
    table.monotone_reach(a)[b.iy * table.width + b.ix]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub feasible: bool,
    /// Ordered terminal pairs without a directed Manhattan path.
    pub failures: Vec<(usize, usize)>,
    pub checked_pairs: usize,
}

/// Checks the given ordered terminal pairs.
pub fn check_pairs(
    net: &DirectedNetwork,
    t: &TerminalSet,
    pairs: &BTreeSet<(usize, usize)>,
) -> FeasibilityReport {
    let grid = Grid::new(t);
    let table = ArcTable::new(net, &grid);
    let nodes = grid.terminal_nodes(t);
    let sources: BTreeSet<usize> = pairs.iter().map(|p| p.0).collect();
    let failures: Vec<(usize, usize)> = sources
        .into_par_iter()
        .flat_map_iter(|s| {
            let reach = table.monotone_reach(nodes[s]);
            pairs
                .range((s, 0)..=(s, usize::MAX))
                .filter(|&&(_, d)| {
                    let n = nodes[d];
                    !reach[n.iy * table.width + n.ix]
                })
                .copied()
                .collect::<Vec<_>>()
        })
        .collect();
    FeasibilityReport { feasible: failures.is_empty(), failures, checked_pairs: pairs.len() }
}

/// Checks all `n(n-1)` ordered terminal pairs.
pub fn verify_bidirected(net: &DirectedNetwork, t: &TerminalSet) -> FeasibilityReport {
    let n = t.len();
    let pairs: BTreeSet<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    check_pairs(net, t, &pairs)
}

pub fn verify_generating(net: &DirectedNetwork, f: &GeneratingSet, t: &TerminalSet) -> bool {
    check_pairs(net, t, &f.f).feasible
}
