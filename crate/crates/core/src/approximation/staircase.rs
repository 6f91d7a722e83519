//! Completing one staircase: ports, two DP trees, rounding, checks.

use crate::decomposition::{Staircase, Symmetry};
use crate::error::{Error, Result};
use crate::geometry::{Axis, DirectedNetwork, Grid, GridEdge, Node, Orientation, Point, RectilinearNetwork, TerminalSet};

use super::dp::{staircase_dp, DpSolution, LineNode, PortProblem};
use super::rounding::{place_connectors, round_half, Half, LineParity};

/// A staircase seen in the canonical frame where it sits in the first
/// quadrant of its origin and its base strips run clockwise.
#[derive(Clone, Debug)]
pub struct StaircaseFrame {
    pub frame: Symmetry,
    /// Canonical coordinates of all terminal lines.
    pub xs: Vec<i64>,
    pub ys: Vec<i64>,
    /// Line indices of the far corner and of the origin.
    pub far: LineNode,
    pub origin: LineNode,
    /// Interior terminals with their canonical nodes, by increasing x.
    pub interior: Vec<(usize, LineNode)>,
    /// Largest row and column used by the staircase.
    pub top: usize,
    pub right: usize,
    col_real: Vec<usize>,
    row_real: Vec<usize>,
}

fn bad_frame(st: &Staircase, detail: String) -> Error {
    Error::DisjointnessViolation { x: st.origin.x, y: st.origin.y, detail }
}

impl StaircaseFrame {
    /// Sets up the canonical frame; the orientation of the base strips is
    /// read off `n_prime`.
    pub fn new(t: &TerminalSet, grid: &Grid, st: &Staircase, n_prime: &DirectedNetwork) -> Result<Self> {
        let first = Self::with_frame(t, grid, st, st.frame)?;
        // the left side of the central rectangle belongs to the far vertical base
        let (p, q) = ((first.far.0, first.far.1), (first.far.0, first.far.1 + 1));
        let (rp, rq) = (first.real_node(p), first.real_node(q));
        if n_prime.has_step(rp, rq) {
            Ok(first)
        } else if n_prime.has_step(rq, rp) {
            Self::with_frame(t, grid, st, st.frame.then_swap())
        } else {
            Err(bad_frame(st, "base strip boundary is missing".into()))
        }
    }

    fn with_frame(t: &TerminalSet, grid: &Grid, st: &Staircase, frame: Symmetry) -> Result<Self> {
        let canon: Vec<Point> = t.points().iter().map(|&p| frame.apply(p)).collect();
        let mut xs: Vec<i64> = canon.iter().map(|p| p.x).collect();
        let mut ys: Vec<i64> = canon.iter().map(|p| p.y).collect();
        xs.sort_unstable();
        ys.sort_unstable();
        let idx = |v: &[i64], c: i64| v.binary_search(&c).expect("corner coordinates are terminal lines");
        let (f, o) = (frame.apply(st.far_corner), frame.apply(st.origin));
        let far = (idx(&xs, f.x), idx(&ys, f.y));
        let origin = (idx(&xs, o.x), idx(&ys, o.y));
        if origin.0 != far.0 + 1 || origin.1 != far.1 + 1 {
            return Err(bad_frame(st, "central rectangle is not a single cell".into()));
        }
        let mut interior: Vec<(usize, LineNode)> = st
            .interior
            .iter()
            .map(|&k| (k, (idx(&xs, canon[k].x), idx(&ys, canon[k].y))))
            .collect();
        interior.sort_by_key(|&(_, n)| n.0);
        let top = interior.iter().map(|&(_, n)| n.1).max().unwrap_or(origin.1);
        let right = interior.iter().map(|&(_, n)| n.0).max().unwrap_or(origin.0);
        // a canonical column fixes one real coordinate, a canonical row the other
        let sign = |neg: bool, c: i64| if neg { -c } else { c };
        let (col_lines, row_lines) = if frame.swap { (grid.ys(), grid.xs()) } else { (grid.xs(), grid.ys()) };
        let col_real = xs.iter().map(|&c| idx(col_lines, sign(frame.neg_x, c))).collect();
        let row_real = ys.iter().map(|&c| idx(row_lines, sign(frame.neg_y, c))).collect();
        Ok(StaircaseFrame { frame, xs, ys, far, origin, interior, top, right, col_real, row_real })
    }

    /// Real grid node of a canonical node.
    pub fn real_node(&self, (cx, cy): LineNode) -> Node {
        let (a, b) = (self.col_real[cx], self.row_real[cy]);
        if self.frame.swap {
            Node::new(b, a)
        } else {
            Node::new(a, b)
        }
    }

    /// Real arc of a canonical arc.
    pub fn real_arc(&self, e: GridEdge, o: Orientation) -> (GridEdge, Orientation) {
        let (lo, hi) = ((e.low().ix, e.low().iy), (e.high().ix, e.high().iy));
        let (from, to) = if o == Orientation::Forward { (lo, hi) } else { (hi, lo) };
        GridEdge::between(self.real_node(from), self.real_node(to)).expect("symmetries keep neighbours adjacent")
    }

    pub fn parity(&self) -> LineParity {
        LineParity { v0: self.far.0, h1: self.far.1 }
    }

    /// Canonical edges of the bounding box from the far corner to (right, top).
    fn box_edges(&self) -> impl Iterator<Item = GridEdge> + '_ {
        let (x0, y0) = self.far;
        let h = (y0..=self.top).flat_map(move |iy| (x0..self.right).map(move |ix| GridEdge::horizontal(ix, iy)));
        let v = (x0..=self.right).flat_map(move |ix| (y0..self.top).map(move |iy| GridEdge::vertical(ix, iy)));
        h.chain(v)
    }

    /// `n_prime` restricted to the bounding box, in canonical coordinates.
    pub fn canonical_fixed(&self, n_prime: &DirectedNetwork) -> DirectedNetwork {
        self.box_edges()
            .filter_map(|e| {
                let (re, ro) = self.real_arc(e, Orientation::Forward);
                n_prime.get(&re).map(|o| (e, if o == ro { Orientation::Forward } else { Orientation::Backward }))
            })
            .collect()
    }

    /// The edges of the staircase on even lines and on odd lines, in real coordinates.
    pub fn subgrids(&self, t: &TerminalSet, grid: &Grid, st: &Staircase) -> EvenOddSubgrids {
        let parity = self.parity();
        let mut out = EvenOddSubgrids::default();
        for e in self.box_edges() {
            let (re, _) = self.real_arc(e, Orientation::Forward);
            if !st.contains_edge(t, grid, re) {
                continue;
            }
            if parity.edge_in(Half::A, e) {
                out.gamma_even.insert(re);
            } else {
                out.gamma_odd.insert(re);
            }
        }
        out
    }

    fn length(&self, e: GridEdge) -> i64 {
        match e.axis {
            Axis::Horizontal => self.xs[e.ix as usize + 1] - self.xs[e.ix as usize],
            Axis::Vertical => self.ys[e.iy as usize + 1] - self.ys[e.iy as usize],
        }
    }
}

/// Staircase edges split by the parity of the line they lie on.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EvenOddSubgrids {
    pub gamma_even: RectilinearNetwork,
    pub gamma_odd: RectilinearNetwork,
}

/// What one staircase adds on top of the strip boundaries.
#[derive(Clone, Debug)]
pub struct StaircaseCompletion {
    pub staircase: usize,
    /// The two DP trees before rounding.
    pub a: RectilinearNetwork,
    pub b: RectilinearNetwork,
    pub dp_length_a: i64,
    pub dp_length_b: i64,
    /// Rounded, directed halves.
    pub dir_a: DirectedNetwork,
    pub dir_b: DirectedNetwork,
    /// Arcs of both halves not already in the strip boundaries.
    pub n_local: DirectedNetwork,
    /// Total length of the unit connectors.
    pub added_orthogonal_length: i64,
    pub length: i64,
}

/// Monotone reachability inside the box: `A` walks up/right from its
/// sources, `B` walks down/left to its sinks (computed backwards).
fn box_reach(fr: &StaircaseFrame, net: &DirectedNetwork, half: Half) -> impl Fn(LineNode) -> bool {
    let (x0, y0) = fr.far;
    let (w, h) = (fr.right - x0 + 1, fr.top - y0 + 1);
    let mut ok = vec![false; w * h];
    let at = |ix: usize, iy: usize| (iy - y0) * w + (ix - x0);
    let has = |from: LineNode, to: LineNode| {
        let (e, o) = GridEdge::between(Node::new(from.0, from.1), Node::new(to.0, to.1)).unwrap();
        net.get(&e) == Some(o)
    };
    match half {
        Half::A => {
            // sources: far vertical base above the origin row, and that row itself
            for iy in y0..=fr.top {
                for ix in x0..=fr.right {
                    let seed = iy == fr.origin.1 || (ix == x0 && iy >= fr.origin.1);
                    let v = seed
                        || (ix > x0 && ok[at(ix - 1, iy)] && has((ix - 1, iy), (ix, iy)))
                        || (iy > y0 && ok[at(ix, iy - 1)] && has((ix, iy - 1), (ix, iy)));
                    ok[at(ix, iy)] = v;
                }
            }
        }
        Half::B => {
            // sinks: near vertical base column and the far horizontal base row
            for iy in y0..=fr.top {
                for ix in x0..=fr.right {
                    let sink = ix == fr.origin.0 || (iy == y0 && ix >= fr.origin.0);
                    let v = sink
                        || (ix > x0 && ok[at(ix - 1, iy)] && has((ix, iy), (ix - 1, iy)))
                        || (iy > y0 && ok[at(ix, iy - 1)] && has((ix, iy), (ix, iy - 1)));
                    ok[at(ix, iy)] = v;
                }
            }
        }
    }
    move |(ix, iy): LineNode| ok[(iy - y0) * w + (ix - x0)]
}

/// Builds, rounds and checks the two halves for staircase `index`.
pub fn complete_staircase(
    t: &TerminalSet,
    grid: &Grid,
    st: &Staircase,
    index: usize,
    n_prime: &DirectedNetwork,
) -> Result<StaircaseCompletion> {
    let fr = StaircaseFrame::new(t, grid, st, n_prime)?;
    let fixed = fr.canonical_fixed(n_prime);
    let violation = |detail: String| Error::DisjointnessViolation { x: st.origin.x, y: st.origin.y, detail };

    let mut a_ports = Vec::with_capacity(fr.interior.len());
    let mut b_ports = Vec::with_capacity(fr.interior.len());
    for &(k, (cx, cy)) in &fr.interior {
        let (pa, pb) = ((cx - 1, cy), (cx, cy - 1));
        let into = GridEdge::between(Node::new(pa.0, pa.1), Node::new(cx, cy)).unwrap();
        let out = GridEdge::between(Node::new(cx, cy), Node::new(pb.0, pb.1)).unwrap();
        if fixed.get(&into.0) != Some(into.1) || fixed.get(&out.0) != Some(out.1) {
            return Err(violation(format!("terminal {k} is not entered from the left and left downwards")));
        }
        a_ports.push(pa);
        b_ports.push(pb);
    }

    let prob_a = PortProblem { xs: &fr.xs, ys: &fr.ys, corner: (fr.far.0, fr.origin.1), ports: a_ports };
    let prob_b = PortProblem { xs: &fr.xs, ys: &fr.ys, corner: (fr.origin.0, fr.far.1), ports: b_ports };
    let sol_a = staircase_dp(&prob_a);
    let sol_b = staircase_dp(&prob_b);
    let parity = fr.parity();
    let mut half_a = round_half(&prob_a, &sol_a, &parity, Half::A).map_err(violation)?;
    let mut half_b = round_half(&prob_b, &sol_b, &parity, Half::B).map_err(violation)?;
    let connectors = place_connectors(&mut half_a, &mut half_b, &fixed, |e| fr.length(e)).map_err(violation)?;
    let (ca, cb) = (half_a.network(), half_b.network());
    if let Some((e, _)) = ca.arcs().find(|(e, _)| cb.get(e).is_some()) {
        return Err(violation(format!("both halves use {e:?}")));
    }

    // every port must be served within the box
    let mut with_fixed = fixed.clone();
    for (e, o) in ca.arcs().chain(cb.arcs()) {
        with_fixed.insert(e, o).map_err(|_| violation(format!("completion reverses a strip arc on {e:?}")))?;
    }
    let reach_a = box_reach(&fr, &with_fixed, Half::A);
    let reach_b = box_reach(&fr, &with_fixed, Half::B);
    for (m, &(k, _)) in fr.interior.iter().enumerate() {
        if !reach_a(prob_a.ports[m]) {
            return Err(Error::CompletionInfeasible { x: st.origin.x, y: st.origin.y, from: st.t_jp, to: k });
        }
        if !reach_b(prob_b.ports[m]) {
            return Err(Error::CompletionInfeasible { x: st.origin.x, y: st.origin.y, from: k, to: st.t_jp });
        }
    }

    let to_real = |net: &DirectedNetwork| -> DirectedNetwork { net.arcs().map(|(e, o)| fr.real_arc(e, o)).collect() };
    let undirected = |sol: &DpSolution, prob: &PortProblem| -> RectilinearNetwork {
        sol.network(prob).edges().map(|&e| fr.real_arc(e, Orientation::Forward).0).collect()
    };
    let dir_a = to_real(&ca);
    let dir_b = to_real(&cb);
    let mut n_local = DirectedNetwork::new();
    for (e, o) in dir_a.arcs().chain(dir_b.arcs()) {
        if n_prime.get(&e).is_none() {
            n_local.insert(e, o).map_err(|_| violation(format!("halves clash on {e:?}")))?;
        }
    }
    let length = n_local.length(grid);
    Ok(StaircaseCompletion {
        staircase: index,
        a: undirected(&sol_a, &prob_a),
        b: undirected(&sol_b, &prob_b),
        dp_length_a: sol_a.length,
        dp_length_b: sol_b.length,
        dir_a,
        dir_b,
        n_local,
        added_orthogonal_length: connectors.iter().map(|&e| fr.length(e)).sum(),
        length,
    })
}
