//! Rounding a DP tree onto one parity class of grid lines.
//!
//! Lines are numbered from the staircase's far corner: vertical line `v_k`
//! and horizontal line `h_k`. The `A` half lives on even lines and is
//! directed up/right; the `B` half lives on odd lines and is directed
//! down/left. A segment that falls on a line of the wrong parity is
//! replaced by a twin one line below (reaching its own port through a unit
//! connector) and, if other segments hang from it, a trunk one line above.

use std::collections::BTreeMap;

use super::dp::{DpSolution, LineNode, PortProblem};
use crate::geometry::{Axis, DirectedNetwork, GridEdge, Node, Orientation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Half {
    A,
    B,
}

impl Half {
    fn orientation(self) -> Orientation {
        match self {
            Half::A => Orientation::Forward,
            Half::B => Orientation::Backward,
        }
    }
}

/// Numbering of canonical grid lines: column `v0 + k` is `v_k`, row
/// `h1 + k - 1` is `h_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LineParity {
    pub v0: usize,
    pub h1: usize,
}

impl LineParity {
    pub fn v_index(&self, ix: usize) -> usize {
        ix - self.v0
    }

    pub fn h_index(&self, iy: usize) -> usize {
        iy + 1 - self.h1
    }

    /// Does a line of the given direction belong to `half`?
    pub fn is_good(&self, half: Half, line_axis: Axis, line: usize) -> bool {
        let k = match line_axis {
            Axis::Vertical => self.v_index(line),
            Axis::Horizontal => self.h_index(line),
        };
        (k % 2 == 0) == (half == Half::A)
    }

    /// Does the unit edge lie on a line of `half`?
    pub fn edge_in(&self, half: Half, e: GridEdge) -> bool {
        match e.axis {
            Axis::Horizontal => self.is_good(half, Axis::Horizontal, e.iy as usize),
            Axis::Vertical => self.is_good(half, Axis::Vertical, e.ix as usize),
        }
    }
}

// (along, across) → (ix, iy) for a segment running along `axis`
fn node(axis: Axis, along: usize, across: usize) -> LineNode {
    match axis {
        Axis::Horizontal => (along, across),
        Axis::Vertical => (across, along),
    }
}

fn unit(axis: Axis, along: usize, across: usize) -> GridEdge {
    match axis {
        Axis::Horizontal => GridEdge::horizontal(along, across),
        Axis::Vertical => GridEdge::vertical(across, along),
    }
}

fn step(from: LineNode, to: LineNode) -> (GridEdge, Orientation) {
    GridEdge::between(Node::new(from.0, from.1), Node::new(to.0, to.1)).expect("unit step")
}

#[derive(Clone, Copy, Debug)]
struct Connector {
    axis: Axis,
    line: usize,
    port: usize,
    twin: bool,
}

/// Arcs of one half, with use counts so shared units survive removals.
#[derive(Clone, Debug)]
pub struct RoundedHalf {
    pub half: Half,
    uses: BTreeMap<GridEdge, (Orientation, u32)>,
    pending: Vec<Connector>,
}

impl RoundedHalf {
    fn add(&mut self, e: GridEdge, o: Orientation) -> Result<(), String> {
        match self.uses.get_mut(&e) {
            Some((cur, n)) if *cur == o => {
                *n += 1;
                Ok(())
            }
            Some(_) => Err(format!("half {:?} demands both orientations on {e:?}", self.half)),
            None => {
                self.uses.insert(e, (o, 1));
                Ok(())
            }
        }
    }

    fn release(&mut self, e: GridEdge) {
        if let Some((_, n)) = self.uses.get_mut(&e) {
            *n -= 1;
            if *n == 0 {
                self.uses.remove(&e);
            }
        }
    }

    fn run(&mut self, axis: Axis, across: usize, from: usize, to: usize) -> Result<(), String> {
        let o = self.half.orientation();
        (from..to).try_for_each(|k| self.add(unit(axis, k, across), o))
    }

    pub fn contains(&self, e: &GridEdge) -> bool {
        self.uses.contains_key(e)
    }

    pub fn network(&self) -> DirectedNetwork {
        self.uses.iter().map(|(&e, &(o, _))| (e, o)).collect()
    }
}

/// Places the segments of `sol` on the lines of `half`; connectors at
/// ports on wrong-parity lines are left for [`place_connectors`].
pub fn round_half(prob: &PortProblem, sol: &DpSolution, parity: &LineParity, half: Half) -> Result<RoundedHalf, String> {
    let segs = &sol.segments;
    let n = segs.len();
    let line: Vec<usize> = segs
        .iter()
        .map(|s| match s.axis {
            Axis::Horizontal => prob.ports[s.port].1,
            Axis::Vertical => prob.ports[s.port].0,
        })
        .collect();
    let along: Vec<usize> = segs
        .iter()
        .map(|s| match s.axis {
            Axis::Horizontal => prob.ports[s.port].0,
            Axis::Vertical => prob.ports[s.port].1,
        })
        .collect();
    let good: Vec<bool> = (0..n).map(|k| parity.is_good(half, segs[k].axis, line[k])).collect();
    let trunk: Vec<usize> = (0..n).map(|k| if good[k] { line[k] } else { line[k] + 1 }).collect();
    let start: Vec<usize> = segs.iter().map(|s| s.parent.map_or(s.start, |p| trunk[p])).collect();
    let base_line = |axis: Axis| match axis {
        Axis::Horizontal => prob.corner.1,
        Axis::Vertical => prob.corner.0,
    };
    let twin: Vec<bool> = (0..n).map(|k| !good[k] && line[k] - 1 != base_line(segs[k].axis)).collect();

    // children precede parents in reverse pre-order
    let mut reach: Vec<Option<usize>> = vec![None; n];
    for k in (0..n).rev() {
        let mut asks = Vec::new();
        if start[k] == along[k] || good[k] {
            asks.push(line[k]);
        } else {
            if twin[k] {
                asks.push(line[k] - 1);
            }
            if reach[k].is_some() {
                asks.push(line[k] + 1);
            }
        }
        if let Some(p) = segs[k].parent {
            let m = asks.into_iter().max();
            reach[p] = reach[p].max(m);
        }
    }

    let mut out = RoundedHalf { half, uses: BTreeMap::new(), pending: Vec::new() };
    for k in 0..n {
        let axis = segs[k].axis;
        if start[k] == along[k] {
            continue;
        }
        if good[k] {
            let end = reach[k].map_or(along[k], |r| r.max(along[k]));
            out.run(axis, line[k], start[k], end)?;
        } else {
            if twin[k] {
                out.run(axis, line[k] - 1, start[k], along[k])?;
            }
            if let Some(r) = reach[k] {
                out.run(axis, line[k] + 1, start[k], r)?;
            }
            out.pending.push(Connector { axis, line: line[k], port: along[k], twin: twin[k] });
        }
    }
    Ok(out)
}

/// Adds the unit connectors of both halves, `A` first.
///
/// A port is reached either straight from its twin line (`c`) or around the
/// cell before it (`c'` then `b`, which makes the twin's last unit `b'`
/// unnecessary). The detour is taken when `c` is occupied, or when it is
/// strictly cheaper because `c'` already exists. Returns the connector
/// edges (`c` or `c'`) actually added.
pub fn place_connectors(
    a: &mut RoundedHalf,
    b: &mut RoundedHalf,
    fixed: &DirectedNetwork,
    length: impl Fn(GridEdge) -> i64,
) -> Result<Vec<GridEdge>, String> {
    let mut added = Vec::new();
    for which in [Half::A, Half::B] {
        let (own, other) = match which {
            Half::A => (&mut *a, &*b),
            Half::B => (&mut *b, &*a),
        };
        let pending = std::mem::take(&mut own.pending);
        for c in pending {
            let arc = |from: LineNode, to: LineNode| match which {
                Half::A => step(from, to),
                Half::B => step(to, from),
            };
            let blocked = |own: &RoundedHalf, (e, o): (GridEdge, Orientation)| {
                other.contains(&e)
                    || fixed.get(&e) == Some(o.reversed())
                    || own.uses.get(&e).is_some_and(|&(cur, _)| cur != o)
            };
            let cost = |own: &RoundedHalf, (e, o): (GridEdge, Orientation)| {
                let present = fixed.get(&e) == Some(o) || own.uses.get(&e).is_some_and(|&(cur, _)| cur == o);
                if present {
                    0
                } else {
                    length(e)
                }
            };
            let (ax, p, l) = (c.axis, c.port, c.line);
            let direct = arc(node(ax, p, l - 1), node(ax, p, l));
            if fixed.get(&direct.0) == Some(direct.1) {
                continue;
            }
            let up = arc(node(ax, p - 1, l - 1), node(ax, p - 1, l));
            let side = arc(node(ax, p - 1, l), node(ax, p, l));
            let spare = unit(ax, p - 1, l - 1);
            let detour_ok = !blocked(own, up) && !blocked(own, side);
            let direct_ok = !blocked(own, direct);
            let detour_cost = || {
                let saved = match own.uses.get(&spare) {
                    Some(&(_, 1)) if c.twin => length(spare),
                    _ => 0,
                };
                cost(own, up) + cost(own, side) - saved
            };
            if direct_ok && !(detour_ok && detour_cost() < cost(own, direct)) {
                own.add(direct.0, direct.1)?;
                added.push(direct.0);
                continue;
            }
            if !detour_ok {
                return Err(format!("no free connector for port at {:?} in half {which:?}", node(ax, p, l)));
            }
            own.add(up.0, up.1)?;
            own.add(side.0, side.1)?;
            if c.twin {
                own.release(spare);
            }
            added.push(up.0);
        }
    }
    Ok(added)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approximation::dp::staircase_dp;

    #[test]
    fn parity_classes_partition_lines() {
        let p = LineParity { v0: 3, h1: 2 };
        assert!(p.is_good(Half::A, Axis::Vertical, 3));
        assert!(p.is_good(Half::B, Axis::Vertical, 4));
        // h_1 is odd, h_2 even
        assert!(p.is_good(Half::B, Axis::Horizontal, 2));
        assert!(p.is_good(Half::A, Axis::Horizontal, 3));
        for ix in 3..10 {
            let e = GridEdge::vertical(ix, 5);
            assert_ne!(p.edge_in(Half::A, e), p.edge_in(Half::B, e));
        }
    }

    #[test]
    fn good_line_segment_is_copied() {
        let xs: Vec<i64> = (0..8).collect();
        let ys = xs.clone();
        // corner (v_0, h_2) = (0, 1); port on row 3 = h_3 (odd, wrong for A)
        // and column 2 = v_2 (even, right for A)
        let prob = PortProblem { xs: &xs, ys: &ys, corner: (0, 1), ports: vec![(2, 5)] };
        let sol = staircase_dp(&prob);
        let parity = LineParity { v0: 0, h1: 0 };
        let r = round_half(&prob, &sol, &parity, Half::A).unwrap();
        // horizontal segment on h_6 (row 5): even → kept on its own line
        let net = r.network();
        assert_eq!(net.len(), 2);
        assert_eq!(net.get(&GridEdge::horizontal(0, 5)), Some(Orientation::Forward));
    }

    #[test]
    fn bad_line_segment_uses_twin_and_connector() {
        let xs: Vec<i64> = (0..8).collect();
        let ys = xs.clone();
        let prob = PortProblem { xs: &xs, ys: &ys, corner: (0, 1), ports: vec![(3, 4)] };
        let sol = staircase_dp(&prob);
        assert_eq!(sol.segments[0].axis, Axis::Horizontal);
        // row 4 is h_5: odd, so the twin runs on row 3
        let parity = LineParity { v0: 0, h1: 0 };
        let mut a = round_half(&prob, &sol, &parity, Half::A).unwrap();
        let mut b = RoundedHalf { half: Half::B, uses: BTreeMap::new(), pending: vec![] };
        let added = place_connectors(&mut a, &mut b, &DirectedNetwork::new(), |_| 1).unwrap();
        assert_eq!(added, vec![GridEdge::vertical(3, 3)]);
        let net = a.network();
        assert!((0..3).all(|ix| net.get(&GridEdge::horizontal(ix, 3)) == Some(Orientation::Forward)));
        assert_eq!(net.get(&GridEdge::vertical(3, 3)), Some(Orientation::Forward));
    }

    #[test]
    fn blocked_connector_is_rerouted() {
        let xs: Vec<i64> = (0..8).collect();
        let ys = xs.clone();
        let prob = PortProblem { xs: &xs, ys: &ys, corner: (0, 1), ports: vec![(3, 4)] };
        let sol = staircase_dp(&prob);
        let parity = LineParity { v0: 0, h1: 0 };
        let mut a = round_half(&prob, &sol, &parity, Half::A).unwrap();
        let mut b = RoundedHalf { half: Half::B, uses: BTreeMap::new(), pending: vec![] };
        b.add(GridEdge::vertical(3, 3), Orientation::Backward).unwrap();
        let added = place_connectors(&mut a, &mut b, &DirectedNetwork::new(), |_| 1).unwrap();
        assert_eq!(added, vec![GridEdge::vertical(2, 3)]);
        let net = a.network();
        assert!(net.get(&GridEdge::horizontal(2, 3)).is_none());
        assert_eq!(net.get(&GridEdge::horizontal(2, 4)), Some(Orientation::Forward));
    }
}
