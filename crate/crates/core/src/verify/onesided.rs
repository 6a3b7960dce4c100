//! Exact decision procedure for codes whose translation vectors all lie strictly on
//! one side of a line.
//!
//! Pairs of partial factorizations are explored as reduced states: the offset between
//! the two end points plus the cells of each side that later figures can still
//! touch. Cells that neither side can touch any more are compared once and dropped.
//! Two pruning rules keep the state space finite: the ends may not drift apart along
//! the main axis by more than one figure, and each end must stay near the region swept
//! by the other side.

use std::collections::HashSet;

use crate::alphabet::{Label, MergeTable};
use crate::code::Code;
use crate::error::{Error, Result};
use crate::figure::{Figure, Mode};
use crate::geometry::{bounding_params, hp, rho, BoundingParams, CodeGeometry};
use crate::point::{Point, Vector, ORIGIN};
use crate::witness::{Kind, Witness};

use super::graph::{StateGraph, Summary};
use super::{Options, SearchStats, Verdict};

/// Regions attached to the end point of a partial factorization.
///
/// `ce_plus(e, w)`: `w` may still be covered by figures appended after end `e`.
/// `cw_plus(e, w)`: `w` lies in the region swept by a factorization ending at `e`.
#[derive(Clone, Debug)]
pub struct Frame {
    pub params: BoundingParams,
    back_a: Vector,
    back_b: Vector,
    trapezoid: Vec<Point>,
    pub rho: u64,
    ball: Vec<Point>,
}

fn line_meet(u: Vector, v: Vector) -> Option<(i128, i128, i128)> {
    let (cu, cv) = (u.dot(u), v.dot(v));
    let den = u.x as i128 * v.y as i128 - u.y as i128 * v.x as i128;
    if den == 0 {
        return None;
    }
    let nx = cu * v.y as i128 - cv * u.y as i128;
    let ny = cv * u.x as i128 - cu * v.x as i128;
    Some(if den < 0 { (-nx, -ny, -den) } else { (nx, ny, den) })
}

impl Frame {
    /// `figs` must be normalized and one-sided with respect to `tau`.
    pub fn new(figs: &[Figure], tau: Vector) -> Result<Frame> {
        let params = bounding_params(figs, tau)?;
        let back_a = -figs[params.first].delta();
        let back_b = -figs[params.last].delta();
        let normals = [params.east, params.north, params.west, params.south];
        // Bounding box of the quadrilateral cut out by the four half-planes at the origin.
        let (mut lo, mut hi) = ((i128::MAX, i128::MAX), (i128::MIN, i128::MIN));
        for i in 0..4 {
            for j in i + 1..4 {
                let Some((nx, ny, den)) = line_meet(normals[i], normals[j]) else { continue };
                let feasible = normals.iter().all(|u| u.x as i128 * nx + u.y as i128 * ny <= u.dot(*u) * den);
                if feasible {
                    lo = (lo.0.min(nx.div_euclid(den)), lo.1.min(ny.div_euclid(den)));
                    hi = (hi.0.max(-(-nx).div_euclid(den)), hi.1.max(-(-ny).div_euclid(den)));
                }
            }
        }
        let mut trapezoid = Vec::new();
        for x in lo.0..=hi.0 {
            for y in lo.1..=hi.1 {
                let t = Point::new(x as i64, y as i64);
                if normals.iter().all(|u| hp(*u, ORIGIN, t)) {
                    trapezoid.push(t);
                }
            }
        }
        let rho = rho(figs)?;
        let r = rho as i64;
        let mut ball = Vec::new();
        for dx in -r..=r {
            let rest = r - dx.abs();
            for dy in -rest..=rest {
                ball.push(Point::new(dx, dy));
            }
        }
        Ok(Frame { params, back_a, back_b, trapezoid, rho, ball })
    }

    pub fn ce_plus(&self, anchor: Point, w: Point) -> bool {
        let p = &self.params;
        hp(p.south, anchor, w) && hp(p.north, anchor, w) && hp(p.west, anchor, w)
    }

    fn in_back_cone(&self, q: Vector) -> bool {
        let (mut a, mut b) = (self.back_a, self.back_b);
        let c = a.cross(b);
        if c == 0 {
            return q.cross(a) == 0 && q.dot(a) >= 0;
        }
        if c < 0 {
            std::mem::swap(&mut a, &mut b);
        }
        a.cross(q) >= 0 && q.cross(b) >= 0
    }

    pub fn cw_plus(&self, anchor: Point, w: Point) -> bool {
        let q = w - anchor;
        self.trapezoid.iter().any(|t| self.in_back_cone(q - *t))
    }

    /// Does the ball of radius `rho` around `e` meet the swept or open region of `anchor`?
    fn near(&self, e: Point, anchor: Point) -> bool {
        self.ball.iter().any(|d| {
            let w = e + *d;
            self.ce_plus(anchor, w) || self.cw_plus(anchor, w)
        })
    }
}

/// Points that figures appended after an end at the origin can still cover: cells of
/// code figures shifted by sums of translation vectors. Exact up to `limit` along
/// `tau`; beyond it every point counts as reachable, which is always safe.
#[derive(Clone, Debug)]
struct Reach {
    tau: Vector,
    limit: i128,
    points: HashSet<Point>,
}

impl Reach {
    fn new(figs: &[Figure], frame: &Frame) -> Reach {
        let tau = frame.params.tau;
        let cells: Vec<Point> = figs.iter().flat_map(|f| f.domain().collect::<Vec<_>>()).collect();
        let dmin = cells.iter().map(|d| tau.dot(*d)).min().expect("non-empty");
        // Far enough to cover any kept cell: one figure behind an end, plus the allowed
        // gap between the two ends.
        let behind = figs
            .iter()
            .flat_map(|f| f.domain().map(move |d| tau.dot(d - f.delta())))
            .max()
            .expect("non-empty");
        let limit = behind + max_advance(figs, tau) + 1;
        let mut seen = HashSet::from([ORIGIN]);
        let mut stack = vec![ORIGIN];
        while let Some(v) = stack.pop() {
            for f in figs {
                let w = v + f.delta();
                if tau.dot(w) + dmin <= limit && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        let points = seen.iter().flat_map(|&v| cells.iter().map(move |&d| v + d)).collect();
        Reach { tau, limit, points }
    }

    fn contains(&self, q: Point) -> bool {
        self.tau.dot(q) > self.limit || self.points.contains(&q)
    }
}

/// Largest advance of a single figure along `tau`. Extending whichever side lags
/// behind keeps the two ends within this distance.
fn max_advance(figs: &[Figure], tau: Vector) -> i128 {
    figs.iter().map(|f| tau.dot(f.delta())).max().expect("non-empty")
}

type Cells = Vec<(Point, Label)>;

/// Reduced state of a pair of partial factorizations, translated so the left end is
/// the origin. `frozen` marks a right side that may not grow any more.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct State {
    right_end: Point,
    left: Cells,
    right: Cells,
    frozen: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

/// Label of a graph edge: one figure appended to one side.
#[derive(Clone, Copy, Debug)]
struct Step {
    side: Side,
    fig: usize,
}

/// First factors on each side after a common prefix; `None` on the right means the
/// right side is exactly the prefix.
#[derive(Clone, Copy, Debug)]
struct Root {
    prefix: usize,
    x: usize,
    y: Option<usize>,
    node: usize,
}

struct Search<'a> {
    figs: &'a [Figure],
    frame: Frame,
    reach: Reach,
    span: i128,
    mode: Mode,
    m: Option<&'a MergeTable>,
}

fn add_cells(cells: &Cells, fig: &Figure, at: Point, mode: Mode, m: Option<&MergeTable>) -> Option<Cells> {
    let mut out = Vec::with_capacity(cells.len() + fig.len());
    let (mut i, mut j) = (0, 0);
    let src = fig.cells();
    while i < cells.len() && j < src.len() {
        let q = (src[j].0 + at, src[j].1);
        match cells[i].0.cmp(&q.0) {
            std::cmp::Ordering::Less => {
                out.push(cells[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(q);
                j += 1;
            }
            std::cmp::Ordering::Equal => match mode {
                Mode::Plain => return None,
                Mode::Merge => {
                    out.push((q.0, m.expect("merge table").apply(cells[i].1, q.1)));
                    i += 1;
                    j += 1;
                }
            },
        }
    }
    out.extend_from_slice(&cells[i..]);
    out.extend(src[j..].iter().map(|&(p, l)| (p + at, l)));
    Some(out)
}

impl<'a> Search<'a> {
    /// Appends `fig` to one side of a state (left end at the origin) and settles the result.
    fn step(&self, s: &State, side: Side, fig: usize) -> Option<State> {
        self.steps(s, &[(side, fig)])
    }

    /// Several appends, settled once at the end.
    fn steps(&self, s: &State, moves: &[(Side, usize)]) -> Option<State> {
        let (mut le, mut re) = (ORIGIN, s.right_end);
        let (mut left, mut right) = (s.left.clone(), s.right.clone());
        for &(side, fig) in moves {
            let z = &self.figs[fig];
            match side {
                Side::Left => {
                    left = add_cells(&left, z, le, self.mode, self.m)?;
                    le = le + z.delta();
                }
                Side::Right => {
                    right = add_cells(&right, z, re, self.mode, self.m)?;
                    re = re + z.delta();
                }
            }
        }
        self.settle(le, re, left, right, s.frozen)
    }

    /// Drops cells that no later figure can reach on either side, after checking that both
    /// sides agree on them, applies the pruning rules, and re-anchors at the left end.
    fn settle(&self, le: Point, re: Point, left: Cells, right: Cells, frozen: bool) -> Option<State> {
        if self.frame.params.tau.dot(le - re).abs() > self.span {
            return None;
        }
        if !self.frame.near(le, re) || !self.frame.near(re, le) {
            return None;
        }
        let shift = -le;
        let open_l = |p: Point| self.reach.contains(p - le);
        let open_r = |p: Point| !frozen && self.reach.contains(p - re);
        let (mut kl, mut kr) = (Vec::with_capacity(left.len()), Vec::with_capacity(right.len()));
        let (mut i, mut j) = (0, 0);
        while i < left.len() || j < right.len() {
            let (p, l, r) = match (left.get(i), right.get(j)) {
                (Some(a), Some(b)) if a.0 == b.0 => {
                    i += 1;
                    j += 1;
                    (a.0, Some(a.1), Some(b.1))
                }
                (Some(a), Some(b)) if b.0 < a.0 => {
                    j += 1;
                    (b.0, None, Some(b.1))
                }
                (Some(a), _) => {
                    i += 1;
                    (a.0, Some(a.1), None)
                }
                (None, Some(b)) => {
                    j += 1;
                    (b.0, None, Some(b.1))
                }
                (None, None) => unreachable!(),
            };
            let (ol, or) = (open_l(p), open_r(p));
            match (l, r) {
                // a cell only one side has, which the other side can no longer cover
                (Some(_), None) if !or => return None,
                (None, Some(_)) if !ol => return None,
                (Some(a), Some(b)) if a != b && (self.mode == Mode::Plain || (!ol && !or)) => return None,
                (Some(_), Some(_)) if !ol && !or => continue,
                _ => {}
            }
            if let Some(a) = l {
                kl.push((p + shift, a));
            }
            if let Some(b) = r {
                kr.push((p + shift, b));
            }
        }
        kl.shrink_to_fit();
        kr.shrink_to_fit();
        Some(State { right_end: re + shift, left: kl, right: kr, frozen })
    }

    fn empty_state() -> State {
        State { right_end: ORIGIN, left: Vec::new(), right: Vec::new(), frozen: false }
    }

    fn is_terminal(s: &State) -> bool {
        s.right_end == ORIGIN && s.left == s.right
    }

    fn successors(&self, s: &State) -> Vec<(Step, Option<State>)> {
        // Only the side whose end lags behind along tau grows (the left one on ties).
        // Any pair of factorizations can be interleaved this way.
        let lead = self.frame.params.tau.dot(s.right_end);
        let side = if lead >= 0 { Side::Left } else { Side::Right };
        if s.frozen && lead <= 0 {
            return Vec::new();
        }
        (0..self.figs.len()).map(|fig| (Step { side, fig }, self.step(s, side, fig))).collect()
    }
}

/// Common prefixes: states reached by appending the same figures to both sides.
/// With plain catenation equal prefixes cancel, so only the empty prefix is needed.
struct Prefixes {
    states: Vec<State>,
    parent: Vec<Option<(usize, usize)>>,
}

impl Prefixes {
    fn explore(search: &Search, with_sets: bool, limit: usize) -> Option<(Prefixes, Vec<u64>)> {
        let mut index = std::collections::HashMap::new();
        let mut pre = Prefixes { states: vec![Search::empty_state()], parent: vec![None] };
        let mut sets = vec![0u64];
        index.insert((pre.states[0].clone(), 0u64), 0usize);
        if search.mode == Mode::Plain {
            return Some((pre, sets));
        }
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for fig in 0..search.figs.len() {
                let s = &pre.states[i];
                let Some(next) = search.steps(s, &[(Side::Left, fig), (Side::Right, fig)]) else { continue };
                let set = if with_sets { sets[i] | 1 << fig } else { 0 };
                if let std::collections::hash_map::Entry::Vacant(e) = index.entry((next.clone(), set)) {
                    if pre.states.len() >= limit {
                        return None;
                    }
                    e.insert(pre.states.len());
                    pre.states.push(next);
                    pre.parent.push(Some((i, fig)));
                    sets.push(set);
                    queue.push_back(pre.states.len() - 1);
                }
            }
        }
        Some((pre, sets))
    }

    fn sequence(&self, mut i: usize) -> Vec<usize> {
        let mut seq = Vec::new();
        while let Some((p, fig)) = self.parent[i] {
            seq.push(fig);
            i = p;
        }
        seq.reverse();
        seq
    }
}

struct Explored {
    graph: StateGraph<State, Step>,
    roots: Vec<Root>,
    prefixes: Prefixes,
    prefix_sets: Vec<u64>,
    /// First discovered terminal whose tree path already violates the kind.
    early: Option<(Vec<usize>, Vec<usize>)>,
}

/// Tree edge that first reached each node, or the root that created it.
#[derive(Clone, Copy)]
enum Parent {
    Root(usize),
    Edge(usize),
}

impl Explored {
    fn tree_sequences(&self, parent: &[Parent], mut v: usize) -> (Vec<usize>, Vec<usize>) {
        let mut path = Vec::new();
        let r = loop {
            match parent[v] {
                Parent::Root(r) => break r,
                Parent::Edge(e) => {
                    path.push(e);
                    v = self.graph.edges[e].0;
                }
            }
        };
        path.reverse();
        let root = &self.roots[r];
        sequences(self, root, self.prefixes.sequence(root.prefix), &path)
    }
}

fn explore(search: &Search, kind: Kind, opts: &Options) -> Option<Explored> {
    let n = search.figs.len();
    let (prefixes, prefix_sets) = Prefixes::explore(search, kind == Kind::Sd, opts.max_states)?;
    let mut ex = Explored { graph: StateGraph::new(), roots: Vec::new(), prefixes, prefix_sets, early: None };
    let mut parent: Vec<Parent> = Vec::new();
    let mut frontier = Vec::new();
    let mut fresh_terminals = Vec::new();
    for pi in 0..ex.prefixes.states.len() {
        let ps = ex.prefixes.states[pi].clone();
        let mut push = |x: usize, y: Option<usize>, st: Option<State>, ex: &mut Explored| {
            if let Some(st) = st {
                let term = Search::is_terminal(&st);
                let (node, fresh) = ex.graph.intern(st, term);
                if fresh {
                    parent.push(Parent::Root(ex.roots.len()));
                    frontier.push(node);
                    if term {
                        fresh_terminals.push(node);
                    }
                }
                ex.roots.push(Root { prefix: pi, x, y, node });
            }
        };
        for x in 0..n {
            for y in x + 1..n {
                let st = search.steps(&ps, &[(Side::Left, x), (Side::Right, y)]);
                push(x, Some(y), st, &mut ex);
            }
            if search.mode == Mode::Merge {
                let st = search.step(&State { frozen: true, ..ps.clone() }, Side::Left, x);
                push(x, None, st, &mut ex);
            }
        }
    }
    loop {
        for t in fresh_terminals.drain(..) {
            let (l, r) = ex.tree_sequences(&parent, t);
            if kind.violated_by(&l, &r) {
                ex.early = Some((l, r));
                return Some(ex);
            }
        }
        if frontier.is_empty() {
            break;
        }
        if ex.graph.len() > opts.max_states {
            return None;
        }
        let graph = &ex.graph;
        let expanded = opts.exec.map(frontier.clone(), |v| search.successors(&graph.states[v]));
        let mut next = Vec::new();
        for (v, succ) in frontier.iter().zip(expanded) {
            for (step, st) in succ {
                if let Some(st) = st {
                    let term = Search::is_terminal(&st);
                    let (u, fresh) = ex.graph.intern(st, term);
                    ex.graph.add_edge(*v, u, step);
                    if fresh {
                        parent.push(Parent::Edge(ex.graph.edges.len() - 1));
                        next.push(u);
                        if term {
                            fresh_terminals.push(u);
                        }
                    }
                }
            }
        }
        frontier = next;
    }
    Some(ex)
}

fn sequences(ex: &Explored, root: &Root, prefix: Vec<usize>, path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut left = prefix.clone();
    let mut right = prefix;
    left.push(root.x);
    right.extend(root.y);
    for &e in path {
        let step = ex.graph.edges[e].2;
        match step.side {
            Side::Left => left.push(step.fig),
            Side::Right => right.push(step.fig),
        }
    }
    (left, right)
}

/// Decides whether a one-sided code is a code (or m-code) of the given kind.
pub fn decide(code: &Code, kind: Kind, mode: Mode, opts: &Options) -> Result<(Verdict, SearchStats)> {
    let tau = match code.geometry() {
        CodeGeometry::OneSided { tau } => tau,
        g => return Err(Error::pre(format!("code is not one-sided ({g})"))),
    };
    let m = code.table_for(mode)?;
    let figs = code.normalized();
    decide_figures(&figs, tau, kind, mode, m, opts)
}

pub(crate) fn decide_figures(
    figs: &[Figure],
    tau: Vector,
    kind: Kind,
    mode: Mode,
    m: Option<&MergeTable>,
    opts: &Options,
) -> Result<(Verdict, SearchStats)> {
    if kind == Kind::Sd && figs.len() > 64 {
        return Err(Error::pre("SD checks support at most 64 figures"));
    }
    let frame = Frame::new(figs, tau)?;
    let reach = Reach::new(figs, &frame);
    let span = max_advance(figs, tau);
    let search = Search { figs, frame, reach, span, mode, m };
    let Some(ex) = explore(&search, kind, opts) else {
        let stats = SearchStats { states: opts.max_states, edges: 0, starts: 0 };
        return Ok((Verdict::Inconclusive(format!("state budget of {} exhausted", opts.max_states)), stats));
    };
    let stats = SearchStats { states: ex.graph.len(), edges: ex.graph.edges.len(), starts: ex.roots.len() };
    let n = figs.len();
    let found = match kind {
        _ if ex.early.is_some() => ex.early.clone(),
        Kind::Ud => {
            let next = ex.graph.to_terminal();
            ex.roots.iter().find(|r| next[r.node].is_some()).map(|r| {
                sequences(&ex, r, ex.prefixes.sequence(r.prefix), &ex.graph.follow(r.node, &next))
            })
        }
        Kind::Msd | Kind::Nd => {
            let tally = |s: &Step| -> Vec<i64> {
                let sign = if s.side == Side::Left { 1 } else { -1 };
                if kind == Kind::Nd {
                    vec![sign]
                } else {
                    let mut v = vec![0; n];
                    v[s.fig] = sign;
                    v
                }
            };
            let ws = ex.graph.weight_summary(tally);
            let mut hit = None;
            for r in &ex.roots {
                let candidates: Vec<Vec<usize>> = match ws.value(r.node) {
                    Summary::None => continue,
                    Summary::One(_) => vec![ex.graph.single_path(r.node, &ws)],
                    Summary::Several => {
                        let (a, b) = ex.graph.two_paths(r.node, &ws);
                        vec![a, b]
                    }
                };
                hit = candidates
                    .iter()
                    .map(|p| sequences(&ex, r, ex.prefixes.sequence(r.prefix), p))
                    .find(|(l, rt)| kind.violated_by(l, rt));
                if hit.is_some() {
                    break;
                }
            }
            hit
        }
        Kind::Sd => {
            let found = ex.graph.set_summary(|s| match s.side {
                Side::Left => (1 << s.fig, 0),
                Side::Right => (0, 1 << s.fig),
            });
            let mut hit = None;
            'roots: for r in &ex.roots {
                let base = ex.prefix_sets[r.prefix];
                let bx = base | 1 << r.x;
                let by = base | r.y.map_or(0, |y| 1 << y);
                let mut keys: Vec<_> = found[r.node].keys().copied().collect();
                keys.sort_unstable();
                for (a, b) in keys {
                    if bx | a != by | b {
                        let path = ex.graph.set_path(r.node, (a, b), &found);
                        hit = Some(sequences(&ex, r, ex.prefixes.sequence(r.prefix), &path));
                        break 'roots;
                    }
                }
            }
            hit
        }
    };
    match found {
        None => Ok((Verdict::IsCode, stats)),
        Some((left, right)) => {
            let w = Witness::from_sequences(figs, left, right, mode, m)
                .map_err(|e| Error::pre(format!("internal: reconstructed witness is invalid: {e}")))?;
            debug_assert!(w.violates(kind));
            Ok((Verdict::NotCode(w), stats))
        }
    }
}
