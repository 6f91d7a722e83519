//! Interval dynamic program connecting staircase ports to a corner of two
//! base lines.
//!
//! Ports form an antichain: sorted by increasing x they have strictly
//! decreasing y, and all lie strictly above and to the right of the corner.
//! Every port is joined to what lies below-left of it by one straight
//! segment: either horizontally to the current vertical base or vertically
//! to the current horizontal base. Choosing a port splits the remaining
//! ports into the ones above-left of it and the ones below-right of it.

use std::collections::HashMap;

use crate::geometry::{Axis, GridEdge, RectilinearNetwork};

/// A grid crossing addressed by line indices.
pub type LineNode = (usize, usize);

#[derive(Clone, Debug)]
pub struct PortProblem<'a> {
    pub xs: &'a [i64],
    pub ys: &'a [i64],
    /// Vertical base line index and horizontal base line index.
    pub corner: LineNode,
    /// Sorted by increasing x index.
    pub ports: Vec<LineNode>,
}

/// One straight connection produced by the DP.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Segment {
    pub port: usize,
    /// `Horizontal` runs left to the vertical base, `Vertical` runs down.
    pub axis: Axis,
    /// Line index where the segment starts (an x index for horizontal
    /// segments, a y index for vertical ones).
    pub start: usize,
    /// Segment it hangs from, `None` for the base corner.
    pub parent: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpSolution {
    pub length: i64,
    /// Pre-order of the recursion: split segment, then the part above, then below.
    pub segments: Vec<Segment>,
}

impl DpSolution {
    pub fn network(&self, prob: &PortProblem) -> RectilinearNetwork {
        let mut net = RectilinearNetwork::new();
        for s in &self.segments {
            let (px, py) = prob.ports[s.port];
            match s.axis {
                Axis::Horizontal => (s.start..px).for_each(|ix| {
                    net.insert(GridEdge::horizontal(ix, py));
                }),
                Axis::Vertical => (s.start..py).for_each(|iy| {
                    net.insert(GridEdge::vertical(px, iy));
                }),
            }
        }
        net
    }
}

// Base selectors: 0 is the corner line, m + 1 is the line of port m.
type Key = (u16, u16, u16, u16);

#[derive(Clone, Copy)]
struct Choice {
    value: i64,
    port: usize,
    axis: Axis,
}

struct Solver<'p, 'a> {
    prob: &'p PortProblem<'a>,
    memo: HashMap<Key, Choice>,
}

impl Solver<'_, '_> {
    fn vline(&self, sel: usize) -> usize {
        if sel == 0 {
            self.prob.corner.0
        } else {
            self.prob.ports[sel - 1].0
        }
    }

    fn hline(&self, sel: usize) -> usize {
        if sel == 0 {
            self.prob.corner.1
        } else {
            self.prob.ports[sel - 1].1
        }
    }

    // ports lo..hi (exclusive), vertical base `a`, horizontal base `b`
    fn best(&mut self, lo: usize, hi: usize, a: usize, b: usize) -> i64 {
        if lo >= hi {
            return 0;
        }
        let key = (lo as u16, hi as u16, a as u16, b as u16);
        if let Some(c) = self.memo.get(&key) {
            return c.value;
        }
        let (xs, ys) = (self.prob.xs, self.prob.ys);
        let ax = xs[self.vline(a)];
        let by = ys[self.hline(b)];
        let mut choice = Choice { value: i64::MAX, port: lo, axis: Axis::Horizontal };
        for axis in [Axis::Horizontal, Axis::Vertical] {
            for m in lo..hi {
                let (px, py) = self.prob.ports[m];
                let v = match axis {
                    Axis::Horizontal => {
                        xs[px] - ax + self.best(lo, m, a, m + 1) + self.best(m + 1, hi, a, b)
                    }
                    Axis::Vertical => ys[py] - by + self.best(lo, m, a, b) + self.best(m + 1, hi, m + 1, b),
                };
                if v < choice.value {
                    choice = Choice { value: v, port: m, axis };
                }
            }
        }
        self.memo.insert(key, choice);
        choice.value
    }

    fn rebuild(&self, lo: usize, hi: usize, a: usize, b: usize, seg_of: &mut [usize], out: &mut Vec<Segment>) {
        if lo >= hi {
            return;
        }
        let c = self.memo[&(lo as u16, hi as u16, a as u16, b as u16)];
        let m = c.port;
        let (start, parent) = match c.axis {
            Axis::Horizontal => (self.vline(a), (a > 0).then(|| seg_of[a - 1])),
            Axis::Vertical => (self.hline(b), (b > 0).then(|| seg_of[b - 1])),
        };
        seg_of[m] = out.len();
        out.push(Segment { port: m, axis: c.axis, start, parent });
        match c.axis {
            Axis::Horizontal => {
                self.rebuild(lo, m, a, m + 1, seg_of, out);
                self.rebuild(m + 1, hi, a, b, seg_of, out);
            }
            Axis::Vertical => {
                self.rebuild(lo, m, a, b, seg_of, out);
                self.rebuild(m + 1, hi, m + 1, b, seg_of, out);
            }
        }
    }
}

/// Minimum total length over all split trees, with the tree that attains it.
///
/// Ties prefer a horizontal connection, then the lower-indexed port.
pub fn staircase_dp(prob: &PortProblem) -> DpSolution {
    let k = prob.ports.len();
    debug_assert!(prob.ports.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 > w[1].1));
    debug_assert!(prob.ports.iter().all(|&(x, y)| x > prob.corner.0 && y > prob.corner.1));
    let mut solver = Solver { prob, memo: HashMap::new() };
    let length = solver.best(0, k, 0, 0);
    let mut segments = Vec::with_capacity(k);
    let mut seg_of = vec![usize::MAX; k];
    solver.rebuild(0, k, 0, 0, &mut seg_of, &mut segments);
    DpSolution { length, segments }
}
