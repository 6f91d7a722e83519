//! The 2-approximation: oriented strip boundaries per block, plus a
//! rounded completion for every staircase.

pub mod dp;
pub mod prune;
pub mod rounding;
pub mod staircase;

use rayon::prelude::*;

use crate::decomposition::{Block, Decomposition, Strip};
use crate::error::{Error, Result};
use crate::geometry::{oriented_boundary, DirectedNetwork, Grid, Rotation, Slope, TerminalSet};

pub use dp::{staircase_dp, DpSolution, PortProblem, Segment};
pub use rounding::{Half, LineParity};
pub use staircase::{complete_staircase, EvenOddSubgrids, StaircaseCompletion, StaircaseFrame};

/// Rotation chosen for the positive-slope strips of each block;
/// negative-slope strips of the block take the opposite one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockOrientation {
    pub rotations: Vec<Rotation>,
}

fn strip_rotation(s: &Strip, block_rotation: Rotation) -> Rotation {
    match s.rect.slope {
        Slope::Negative => block_rotation.reversed(),
        _ => block_rotation,
    }
}

/// Oriented boundaries of all strips of `block`.
pub fn orient_block_strips(
    block: &Block,
    strips: &[Strip],
    grid: &Grid,
    rotation: Rotation,
) -> Result<DirectedNetwork> {
    let mut net = DirectedNetwork::new();
    add_strips(&mut net, block.strips.iter().map(|&s| &strips[s]), grid, rotation)?;
    Ok(net)
}

fn add_strips<'a>(
    net: &mut DirectedNetwork,
    strips: impl Iterator<Item = &'a Strip>,
    grid: &Grid,
    rotation: Rotation,
) -> Result<()> {
    for s in strips {
        let (lo, hi) = s.node_box(grid);
        for (e, o) in oriented_boundary(lo, hi, strip_rotation(s, rotation)) {
            net.insert(e, o).map_err(|_| Error::IncompatibleStrips { edge: e })?;
        }
    }
    Ok(())
}

/// Union of all strip boundaries under the given per-block rotations.
pub fn strip_network(dec: &Decomposition, grid: &Grid, orientation: &BlockOrientation) -> Result<DirectedNetwork> {
    let mut net = DirectedNetwork::new();
    for (b, block) in dec.blocks.blocks.iter().enumerate() {
        add_strips(&mut net, block.strips.iter().map(|&s| &dec.strips[s]), grid, orientation.rotations[b])?;
    }
    Ok(net)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// Drop completion arcs that no staircase pair needs.
    pub prune: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { prune: true }
    }
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub network: DirectedNetwork,
    /// Strip boundaries alone.
    pub n_prime: DirectedNetwork,
    pub orientation: BlockOrientation,
    /// One completion per staircase, under the chosen rotation of its block.
    pub completions: Vec<StaircaseCompletion>,
    /// Completion arcs removed as redundant.
    pub pruned: DirectedNetwork,
    pub diagnostics: Vec<String>,
}

impl Solution {
    pub fn length(&self, grid: &Grid) -> i64 {
        self.network.length(grid)
    }
}

/// Builds a feasible directed network for `t`.
pub fn solve(t: &TerminalSet) -> Result<Solution> {
    solve_with(t, &Decomposition::new(t), SolveOptions::default())
}

pub fn solve_with(t: &TerminalSet, dec: &Decomposition, opts: SolveOptions) -> Result<Solution> {
    let grid = Grid::new(t);
    let nb = dec.blocks.blocks.len();
    let uniform = |r: Rotation| BlockOrientation { rotations: vec![r; nb] };

    // Completions only look at strips of their own block, so one pass per
    // rotation prices every block at once.
    let mut trials = Vec::with_capacity(2);
    for rot in [Rotation::Clockwise, Rotation::Counterclockwise] {
        let n_prime = strip_network(dec, &grid, &uniform(rot))?;
        let completions = dec
            .staircases
            .par_iter()
            .enumerate()
            .map(|(k, st)| complete_staircase(t, &grid, st, k, &n_prime))
            .collect::<Result<Vec<_>>>()?;
        trials.push(completions);
    }
    let mut cost = vec![[0i64; 2]; nb];
    for (r, comps) in trials.iter().enumerate() {
        for c in comps {
            cost[dec.staircase_block[c.staircase]][r] += c.length;
        }
    }
    let choice: Vec<usize> = cost.iter().map(|c| usize::from(c[1] < c[0])).collect();
    let rotations = choice
        .iter()
        .map(|&r| if r == 0 { Rotation::Clockwise } else { Rotation::Counterclockwise })
        .collect();
    let orientation = BlockOrientation { rotations };
    let n_prime = strip_network(dec, &grid, &orientation)?;
    let mut trials = trials.into_iter();
    let (cw, ccw) = (trials.next().unwrap(), trials.next().unwrap());
    let completions: Vec<StaircaseCompletion> = cw
        .into_iter()
        .zip(ccw)
        .map(|(a, b)| if choice[dec.staircase_block[a.staircase]] == 0 { a } else { b })
        .collect();
    let mut network = n_prime.clone();
    for c in &completions {
        for (e, o) in c.n_local.arcs() {
            network.insert(e, o)?;
        }
    }
    let pruned = if opts.prune {
        prune::prune_completions(t, &grid, dec, &completions, &mut network)
    } else {
        DirectedNetwork::new()
    };
    Ok(Solution { network, n_prime, orientation, completions, pruned, diagnostics: dec.diagnostics.clone() })
}
