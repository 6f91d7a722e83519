//! Removal of completion arcs that no staircase pair needs.
//!
//! Strip pairs are served by the strip boundaries, which are never touched,
//! so only the staircase pairs `(t_jp, l)` and `(l, t_jp)` can depend on a
//! completion arc. An arc is dropped when every such pair whose box holds
//! it still has a directed Manhattan path without it.

use crate::decomposition::Decomposition;
use crate::geometry::{DirectedNetwork, Grid, GridEdge, Node, TerminalSet};
use crate::verify::ArcTable;

use super::StaircaseCompletion;

#[derive(Clone, Copy)]
struct Pair {
    from: Node,
    to: Node,
    lo: Node,
    hi: Node,
}

fn span(a: Node, b: Node) -> (Node, Node) {
    (Node::new(a.ix.min(b.ix), a.iy.min(b.iy)), Node::new(a.ix.max(b.ix), a.iy.max(b.iy)))
}

fn inside(lo: Node, hi: Node, e: GridEdge) -> bool {
    let (p, q) = (e.low(), e.high());
    lo.ix <= p.ix && q.ix <= hi.ix && lo.iy <= p.iy && q.iy <= hi.iy
}

/// Greedily removes redundant completion arcs from `network`, longest
/// first. Returns the removed arcs.
pub fn prune_completions(
    t: &TerminalSet,
    grid: &Grid,
    dec: &Decomposition,
    completions: &[StaircaseCompletion],
    network: &mut DirectedNetwork,
) -> DirectedNetwork {
    let nodes = grid.terminal_nodes(t);
    // pairs grouped per staircase, with the staircase's overall box
    let groups: Vec<(Node, Node, Vec<Pair>)> = dec
        .staircases
        .iter()
        .map(|st| {
            let pairs: Vec<Pair> = st
                .interior
                .iter()
                .flat_map(|&l| [(st.t_jp, l), (l, st.t_jp)])
                .map(|(a, b)| {
                    let (lo, hi) = span(nodes[a], nodes[b]);
                    Pair { from: nodes[a], to: nodes[b], lo, hi }
                })
                .collect();
            let lo = Node::new(
                pairs.iter().map(|p| p.lo.ix).min().unwrap_or(0),
                pairs.iter().map(|p| p.lo.iy).min().unwrap_or(0),
            );
            let hi = Node::new(
                pairs.iter().map(|p| p.hi.ix).max().unwrap_or(0),
                pairs.iter().map(|p| p.hi.iy).max().unwrap_or(0),
            );
            (lo, hi, pairs)
        })
        .collect();

    let mut candidates: Vec<GridEdge> = completions.iter().flat_map(|c| c.n_local.arcs().map(|(e, _)| e)).collect();
    candidates.sort_by_key(|&e| (std::cmp::Reverse(grid.edge_length(e)), e));
    candidates.dedup();

    let mut table = ArcTable::new(network, grid);
    let mut removed = DirectedNetwork::new();
    for e in candidates {
        let Some(o) = network.get(&e) else { continue };
        table.set(e, None);
        let still_fine = groups
            .iter()
            .filter(|(lo, hi, _)| inside(*lo, *hi, e))
            .flat_map(|(_, _, pairs)| pairs)
            .filter(|p| inside(p.lo, p.hi, e))
            .all(|p| table.reaches(p.from, p.to));
        if still_fine {
            network.remove(&e);
            removed.insert(e, o).expect("fresh network");
        } else {
            table.set(e, Some(o));
        }
    }
    removed
}
