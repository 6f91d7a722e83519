//! Strips, crossing configurations, staircases, blocks and the generating set.

use std::collections::BTreeSet;

use crate::geometry::{Axis, Grid, IsoRectangle, Node, Point, Slope, TerminalSet};

/// An empty rectangle spanned by two terminals consecutive along one axis.
///
/// `Axis::Vertical` strips join x-consecutive terminals, `Axis::Horizontal`
/// strips join y-consecutive ones. A pair may define both.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Strip {
    pub axis: Axis,
    /// Terminal with the smaller coordinate along the strip's axis of consecutiveness.
    pub a: usize,
    pub b: usize,
    pub rect: IsoRectangle,
}

impl Strip {
    pub fn terminals(&self) -> (usize, usize) {
        (self.a.min(self.b), self.a.max(self.b))
    }

    /// Grid nodes at the low and high corners of the strip.
    pub fn node_box(&self, grid: &Grid) -> (Node, Node) {
        (grid.node_of(self.rect.lo).unwrap(), grid.node_of(self.rect.hi).unwrap())
    }
}

pub fn find_strips(t: &TerminalSet) -> Vec<Strip> {
    let mut out = Vec::with_capacity(2 * t.len().saturating_sub(1));
    for (axis, order) in [(Axis::Vertical, t.by_x()), (Axis::Horizontal, t.by_y())] {
        for w in order.windows(2) {
            let rect = IsoRectangle::spanning(t.point(w[0]), t.point(w[1]));
            debug_assert!(t.is_empty_rectangle(w[0], w[1]));
            out.push(Strip { axis, a: w[0], b: w[1], rect });
        }
    }
    out
}

/// A reflection/transposition of the plane, used to bring every staircase
/// variant into the first quadrant of its origin.
///
/// Applied as: optional x/y swap first, then optional negation of each axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Symmetry {
    pub swap: bool,
    pub neg_x: bool,
    pub neg_y: bool,
}

impl Symmetry {
    pub fn quadrant(sx: i64, sy: i64) -> Self {
        Symmetry { swap: false, neg_x: sx < 0, neg_y: sy < 0 }
    }

    pub fn apply(&self, p: Point) -> Point {
        let (x, y) = if self.swap { (p.y, p.x) } else { (p.x, p.y) };
        Point::new(if self.neg_x { -x } else { x }, if self.neg_y { -y } else { y })
    }

    pub fn invert(&self, q: Point) -> Point {
        let x = if self.neg_x { -q.x } else { q.x };
        let y = if self.neg_y { -q.y } else { q.y };
        if self.swap {
            Point::new(y, x)
        } else {
            Point::new(x, y)
        }
    }

    /// Number of reflections mod 2: odd symmetries reverse rotation sense.
    pub fn flips_rotation(&self) -> bool {
        (self.swap as u8 + self.neg_x as u8 + self.neg_y as u8) % 2 == 1
    }

    /// This symmetry followed by an x/y swap.
    pub fn then_swap(&self) -> Self {
        Symmetry { swap: !self.swap, neg_x: self.neg_y, neg_y: self.neg_x }
    }
}

/// A vertical and a horizontal strip whose rectangles cross with equal slope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingConfiguration {
    pub vertical: usize,
    pub horizontal: usize,
    pub slope: Slope,
    /// Corner of the central rectangle whose tips lead to `t_i` and `t_j`.
    pub o: Point,
    /// Opposite corner, with tips leading to `t_ip` and `t_jp`.
    pub o_prime: Point,
    pub t_i: usize,
    pub t_j: usize,
    pub t_ip: usize,
    pub t_jp: usize,
}

impl CrossingConfiguration {
    pub fn tips(&self, t: &TerminalSet) -> [(Point, Point); 4] {
        [
            (self.o, t.point(self.t_i)),
            (self.o, t.point(self.t_j)),
            (self.o_prime, t.point(self.t_ip)),
            (self.o_prime, t.point(self.t_jp)),
        ]
    }
}

/// Pairs of strips whose rectangles cross with positive area and equal slope.
pub fn find_crossing_configurations(t: &TerminalSet, strips: &[Strip]) -> Vec<CrossingConfiguration> {
    let mut out = Vec::new();
    for (vi, v) in strips.iter().enumerate().filter(|(_, s)| s.axis == Axis::Vertical) {
        for (hi, h) in strips.iter().enumerate().filter(|(_, s)| s.axis == Axis::Horizontal) {
            if v.rect.slope != h.rect.slope {
                continue;
            }
            let Some((lo, up)) = v.rect.intersection(&h.rect) else { continue };
            if lo.x == up.x || lo.y == up.y {
                continue;
            }
            let (pa, pb) = (t.point(v.a), t.point(v.b));
            let (qa, qb) = (t.point(h.a), t.point(h.b));
            // v.a is left of v.b, h.a is below h.b
            let cc = match v.rect.slope {
                Slope::Positive => CrossingConfiguration {
                    vertical: vi,
                    horizontal: hi,
                    slope: Slope::Positive,
                    o: up,
                    o_prime: lo,
                    t_i: v.b,
                    t_j: h.b,
                    t_ip: v.a,
                    t_jp: h.a,
                },
                Slope::Negative => {
                    // v.a upper-left, h.b upper-left
                    debug_assert!(pa.y > pb.y && qb.x < qa.x);
                    CrossingConfiguration {
                        vertical: vi,
                        horizontal: hi,
                        slope: Slope::Negative,
                        o: Point::new(lo.x, up.y),
                        o_prime: Point::new(up.x, lo.y),
                        t_i: v.a,
                        t_j: h.b,
                        t_ip: v.b,
                        t_jp: h.a,
                    }
                }
                Slope::Degenerate => unreachable!("terminals are in general position"),
            };
            out.push(cc);
        }
    }
    out
}

/// A staircase attached to one corner of a crossing configuration.
///
/// Geometry is described in the canonical frame given by `frame`, in which
/// the staircase lies in the first quadrant of its origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Staircase {
    pub crossing: usize,
    pub frame: Symmetry,
    pub origin: Point,
    pub far_corner: Point,
    /// Vertical base terminals: near the origin, then at the far corner.
    pub t_i: usize,
    pub t_ip: usize,
    /// Horizontal base terminals.
    pub t_j: usize,
    pub t_jp: usize,
    /// Interior terminals in increasing canonical x (hence decreasing canonical y).
    pub interior: Vec<usize>,
    pub alpha: Point,
    pub beta: Point,
}

impl Staircase {
    pub fn canonical(&self, p: Point) -> Point {
        self.frame.apply(p)
    }

    /// True iff `p` lies in the closed union of boxes spanned by the far
    /// corner and the interior terminals, outside the open central rectangle.
    pub fn contains(&self, t: &TerminalSet, p: Point) -> bool {
        self.contains_doubled(t, Point::new(2 * p.x, 2 * p.y))
    }

    /// Membership of a grid edge, decided at its midpoint.
    pub fn contains_edge(&self, t: &TerminalSet, grid: &Grid, e: crate::geometry::GridEdge) -> bool {
        let (a, b) = (grid.point(e.low()), grid.point(e.high()));
        self.contains_doubled(t, Point::new(a.x + b.x, a.y + b.y))
    }

    // coordinates scaled by two so that edge midpoints stay integral
    fn contains_doubled(&self, t: &TerminalSet, p2: Point) -> bool {
        let dbl = |p: Point| {
            let c = self.frame.apply(p);
            Point::new(2 * c.x, 2 * c.y)
        };
        let q = self.frame.apply(p2);
        let (o, f) = (dbl(self.origin), dbl(self.far_corner));
        let in_central_open = q.x > f.x && q.x < o.x && q.y > f.y && q.y < o.y;
        !in_central_open
            && self.interior.iter().any(|&k| {
                let c = dbl(t.point(k));
                q.x >= f.x && q.y >= f.y && q.x <= c.x && q.y <= c.y
            })
    }

    pub fn bases(&self) -> [usize; 4] {
        [self.t_i, self.t_j, self.t_ip, self.t_jp]
    }
}

/// The staircase at the `o` corner (`at_origin`) or at the `o'` corner of `cc`.
pub fn compute_staircase(
    t: &TerminalSet,
    cc: &CrossingConfiguration,
    index: usize,
    at_origin: bool,
) -> Option<Staircase> {
    let (sx, sy) = match (cc.slope, at_origin) {
        (Slope::Positive, true) => (1, 1),
        (Slope::Positive, false) => (-1, -1),
        (Slope::Negative, true) => (-1, 1),
        (Slope::Negative, false) => (1, -1),
        (Slope::Degenerate, _) => return None,
    };
    let frame = Symmetry::quadrant(sx, sy);
    let (origin, far, ti, tj, tip, tjp) = if at_origin {
        (cc.o, cc.o_prime, cc.t_i, cc.t_j, cc.t_ip, cc.t_jp)
    } else {
        (cc.o_prime, cc.o, cc.t_ip, cc.t_jp, cc.t_i, cc.t_j)
    };
    let o = frame.apply(origin);
    let canon = |k: usize| frame.apply(t.point(k));

    // Terminal-free half-bands bound the candidate box from above and right.
    let mut y_cap = i64::MAX;
    let mut x_cap = i64::MAX;
    for k in 0..t.len() {
        let c = canon(k);
        if c.x <= o.x && c.y >= o.y {
            y_cap = y_cap.min(c.y);
        }
        if c.x >= o.x && c.y <= o.y {
            x_cap = x_cap.min(c.x);
        }
    }
    let order: Box<dyn Iterator<Item = &usize>> =
        if sx > 0 { Box::new(t.by_x().iter()) } else { Box::new(t.by_x().iter().rev()) };
    let mut interior = Vec::new();
    let mut lowest = i64::MAX;
    for &k in order {
        let c = canon(k);
        if c.x <= o.x {
            continue;
        }
        if c.x >= x_cap {
            break;
        }
        if c.y > o.y && c.y < y_cap && c.y < lowest {
            interior.push(k);
            lowest = c.y;
        } else if c.y > o.y && c.y < lowest {
            lowest = c.y;
        }
    }
    if interior.is_empty() {
        return None;
    }
    let f = frame.apply(far);
    let top = canon(interior[0]).y;
    let right = canon(*interior.last().unwrap()).x;
    Some(Staircase {
        crossing: index,
        frame,
        origin,
        far_corner: far,
        t_i: ti,
        t_ip: tip,
        t_j: tj,
        t_jp: tjp,
        interior,
        alpha: frame.invert(Point::new(f.x, top)),
        beta: frame.invert(Point::new(right, f.y)),
    })
}

/// Which pair of opposite quadrants is empty at every pivot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotVariant {
    /// Second and fourth quadrants empty: pivots form an increasing chain.
    SecondFourth,
    /// First and third quadrants empty: pivots form a decreasing chain.
    FirstThird,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    /// Terminal indices sorted by x.
    pub terminals: Vec<usize>,
    /// Pivots bounding the block (zero, one or two).
    pub pivots: Vec<usize>,
    /// Indices into the strip list.
    pub strips: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPartition {
    pub variant: PivotVariant,
    pub pivots: Vec<usize>,
    pub blocks: Vec<Block>,
    /// Block of every strip.
    pub strip_block: Vec<usize>,
}

/// Pivots for one variant, sorted by x.
pub fn pivots(t: &TerminalSet, variant: PivotVariant) -> Vec<usize> {
    let ys: Vec<i64> = t.by_x().iter().map(|&i| t.point(i).y).collect();
    let n = ys.len();
    let mut prefix_max = vec![i64::MIN; n + 1];
    let mut prefix_min = vec![i64::MAX; n + 1];
    for k in 0..n {
        prefix_max[k + 1] = prefix_max[k].max(ys[k]);
        prefix_min[k + 1] = prefix_min[k].min(ys[k]);
    }
    let mut suffix_max = vec![i64::MIN; n + 1];
    let mut suffix_min = vec![i64::MAX; n + 1];
    for k in (0..n).rev() {
        suffix_max[k] = suffix_max[k + 1].max(ys[k]);
        suffix_min[k] = suffix_min[k + 1].min(ys[k]);
    }
    (0..n)
        .filter(|&k| match variant {
            // left terminals all lower, right terminals all higher
            PivotVariant::SecondFourth => ys[k] > prefix_max[k] && ys[k] < suffix_min[k + 1],
            PivotVariant::FirstThird => ys[k] < prefix_min[k] && ys[k] > suffix_max[k + 1],
        })
        .map(|k| t.by_x()[k])
        .collect()
}

/// Blocks from the pivot variant with more pivots (ties go to second/fourth).
///
/// Singleton end blocks carry no strips and are dropped.
pub fn compute_blocks(t: &TerminalSet, strips: &[Strip]) -> BlockPartition {
    let p24 = pivots(t, PivotVariant::SecondFourth);
    let p13 = pivots(t, PivotVariant::FirstThird);
    let (variant, piv) =
        if p13.len() > p24.len() { (PivotVariant::FirstThird, p13) } else { (PivotVariant::SecondFourth, p24) };

    // x-rank boundaries between consecutive pivots
    let ranks: Vec<usize> = piv.iter().map(|&p| t.x_rank()[p]).collect();
    let mut groups: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    if ranks.is_empty() {
        groups.push((t.by_x().to_vec(), vec![]));
    } else {
        let n = t.len();
        let mut cuts = vec![0usize];
        cuts.extend(ranks.iter().copied());
        cuts.push(n - 1);
        for w in cuts.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            let members: Vec<usize> = t.by_x()[lo..=hi].to_vec();
            let bounding: Vec<usize> = piv.iter().copied().filter(|p| members.contains(p)).collect();
            groups.push((members, bounding));
        }
    }
    let mut blocks: Vec<Block> = groups
        .into_iter()
        .filter(|(m, _)| m.len() >= 2)
        .map(|(terminals, pivots)| Block { terminals, pivots, strips: vec![] })
        .collect();
    let mut strip_block = Vec::with_capacity(strips.len());
    for (si, s) in strips.iter().enumerate() {
        let (ra, rb) = (t.x_rank()[s.a], t.x_rank()[s.b]);
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        let b = blocks
            .iter()
            .position(|b| t.x_rank()[b.terminals[0]] <= lo && hi <= t.x_rank()[*b.terminals.last().unwrap()])
            .expect("every strip lies in a block");
        blocks[b].strips.push(si);
        strip_block.push(b);
    }
    BlockPartition { variant, pivots: piv, blocks, strip_block }
}

/// Everything the approximation needs about the instance's structure.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub strips: Vec<Strip>,
    pub crossings: Vec<CrossingConfiguration>,
    pub staircases: Vec<Staircase>,
    pub blocks: BlockPartition,
    /// Block owning each staircase.
    pub staircase_block: Vec<usize>,
    pub diagnostics: Vec<String>,
}

impl Decomposition {
    pub fn new(t: &TerminalSet) -> Self {
        let strips = find_strips(t);
        let crossings = find_crossing_configurations(t, &strips);
        let mut staircases = Vec::new();
        for (ci, cc) in crossings.iter().enumerate() {
            for at_origin in [true, false] {
                if let Some(st) = compute_staircase(t, cc, ci, at_origin) {
                    staircases.push(st);
                }
            }
        }
        let blocks = compute_blocks(t, &strips);
        let mut diagnostics = Vec::new();
        let mut staircase_block = Vec::with_capacity(staircases.len());
        for st in &staircases {
            let members: BTreeSet<usize> = st.interior.iter().copied().chain(st.bases()).collect();
            let b = match block_containing(t, &blocks, &members) {
                Some(b) => b,
                None => {
                    diagnostics.push(format!(
                        "staircase at ({}, {}) spans several blocks",
                        st.origin.x, st.origin.y
                    ));
                    blocks.strip_block[crossings[st.crossing].vertical]
                }
            };
            staircase_block.push(b);
        }
        let mut seen = vec![0u8; t.len()];
        for st in &staircases {
            for &k in &st.interior {
                seen[k] += 1;
                if seen[k] == 3 {
                    diagnostics.push(format!("terminal {k} is interior to more than two staircases"));
                }
            }
        }
        Decomposition { strips, crossings, staircases, blocks, staircase_block, diagnostics }
    }
}

/// Index of a block whose x-range holds all `members`.
pub fn block_containing(t: &TerminalSet, blocks: &BlockPartition, members: &BTreeSet<usize>) -> Option<usize> {
    let lo = members.iter().map(|&m| t.x_rank()[m]).min()?;
    let hi = members.iter().map(|&m| t.x_rank()[m]).max()?;
    blocks.blocks.iter().position(|b| {
        t.x_rank()[b.terminals[0]] <= lo && hi <= t.x_rank()[*b.terminals.last().unwrap()]
    })
}

/// T⁺: interior, the four base terminals, and terminals of strips touching the staircase.
pub fn staircase_support_set(t: &TerminalSet, st: &Staircase, strips: &[Strip]) -> BTreeSet<usize> {
    let mut out: BTreeSet<usize> = st.interior.iter().copied().chain(st.bases()).collect();
    let f = st.frame.apply(st.far_corner);
    let o = st.frame.apply(st.origin);
    for s in strips {
        let (a, b) = (st.frame.apply(s.rect.lo), st.frame.apply(s.rect.hi));
        let r = IsoRectangle::spanning(a, b);
        let touches = st.interior.iter().any(|&k| {
            let box_k = IsoRectangle::spanning(f, st.frame.apply(t.point(k)));
            match r.intersection(&box_k) {
                // ignore contact confined to the central rectangle
                Some((lo, hi)) => !(lo.x >= f.x && hi.x <= o.x && lo.y >= f.y && hi.y <= o.y),
                None => false,
            }
        });
        if touches {
            out.insert(s.a);
            out.insert(s.b);
        }
    }
    out
}

/// Ordered terminal pairs: empty rectangles, strips, staircase links.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingSet {
    pub f_empty: BTreeSet<(usize, usize)>,
    pub f_strips: BTreeSet<(usize, usize)>,
    pub f_stairs: BTreeSet<(usize, usize)>,
    pub f: BTreeSet<(usize, usize)>,
}

pub fn generating_set(t: &TerminalSet, dec: &Decomposition) -> GeneratingSet {
    let f_empty: BTreeSet<_> = t.empty_pairs().into_iter().flat_map(|(i, j)| [(i, j), (j, i)]).collect();
    let f_strips: BTreeSet<_> = dec.strips.iter().flat_map(|s| [(s.a, s.b), (s.b, s.a)]).collect();
    let f_stairs: BTreeSet<_> = dec
        .staircases
        .iter()
        .flat_map(|st| st.interior.iter().flat_map(move |&l| [(st.t_jp, l), (l, st.t_jp)]))
        .collect();
    let f = f_strips.union(&f_stairs).copied().collect();
    GeneratingSet { f_empty, f_strips, f_stairs, f }
}
