//! The empty-rectangle network: every empty rectangle's boundary, oriented
//! clockwise for positive slope and counterclockwise for negative slope.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::geometry::{
    oriented_boundary, DirectedNetwork, Grid, GridEdge, IsoRectangle, Node, Rotation, Slope, TerminalSet,
};

#[derive(Clone, Debug)]
pub struct BaselineNetwork {
    pub net: DirectedNetwork,
    /// Empty rectangles (as terminal pairs) demanding each arc.
    pub sources: BTreeMap<GridEdge, Vec<(usize, usize)>>,
}

pub fn build_n_empty(t: &TerminalSet) -> Result<BaselineNetwork> {
    let grid = Grid::new(t);
    let nodes = grid.terminal_nodes(t);
    let mut net = DirectedNetwork::new();
    let mut sources: BTreeMap<GridEdge, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, j) in t.empty_pairs() {
        let r = IsoRectangle::spanning(t.point(i), t.point(j));
        let rot = match r.slope {
            Slope::Positive => Rotation::Clockwise,
            Slope::Negative => Rotation::Counterclockwise,
            Slope::Degenerate => unreachable!("general position rules out degenerate rectangles"),
        };
        let (a, b) = (nodes[i], nodes[j]);
        let lo = Node::new(a.ix.min(b.ix), a.iy.min(b.iy));
        let hi = Node::new(a.ix.max(b.ix), a.iy.max(b.iy));
        for (e, o) in oriented_boundary(lo, hi, rot) {
            net.insert(e, o).map_err(|_| Error::OrientationConflict { edge: e })?;
            sources.entry(e).or_default().push((i, j));
        }
    }
    Ok(BaselineNetwork { net, sources })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Orientation;
    use crate::verify::verify_bidirected;

    fn ts(v: &[(i64, i64)]) -> TerminalSet {
        TerminalSet::new(v.iter().map(|&p| p.into()).collect()).unwrap()
    }

    #[test]
    fn single_rectangle() {
        let t = ts(&[(0, 0), (3, 2)]);
        let b = build_n_empty(&t).unwrap();
        assert_eq!(b.net.length(&Grid::new(&t)), 10);
        assert_eq!(b.net.get(&GridEdge::vertical(0, 0)), Some(Orientation::Forward));

        let t = ts(&[(0, 2), (3, 0)]);
        let b = build_n_empty(&t).unwrap();
        assert_eq!(b.net.length(&Grid::new(&t)), 10);
        assert_eq!(b.net.get(&GridEdge::vertical(0, 0)), Some(Orientation::Backward));
    }

    #[test]
    fn t5_all_pairs() {
        let t = ts(&[(0, 0), (1, 7), (3, 5), (5, 3), (7, 1)]);
        let b = build_n_empty(&t).unwrap();
        let r = verify_bidirected(&b.net, &t);
        assert!(r.feasible);
        assert_eq!(r.checked_pairs, 20);
    }
}
