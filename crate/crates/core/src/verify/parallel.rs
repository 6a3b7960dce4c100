//! Exact decision procedure for plain catenation when every translation vector is a
//! multiple of one primitive vector `tau`, with both signs (or zero) present.
//!
//! Every factor of a factorization then begins on a link point `j tau`. The plane is cut
//! into stripes orthogonal to `tau`, one link point per stripe, and both factorizations
//! are swept together from their lowest stripe upwards. A figure is placed when the sweep
//! reaches the lowest stripe of its hull. Placed figures form walk fragments; when the
//! sweep leaves a link point, every fragment ending there is joined to one beginning
//! there, or the point is declared the start (or the end) of both walks at once. Cells of
//! a finished stripe must agree on both sides and are then forgotten.

use std::collections::{BTreeMap, HashMap};

use crate::alphabet::Label;
use crate::code::Code;
use crate::error::{Error, Result};
use crate::figure::{Figure, Mode};
use crate::geometry::CodeGeometry;
use crate::point::{Point, Vector};
use crate::witness::{Kind, Witness};

use super::graph::{StateGraph, Summary};
use super::{Options, SearchStats, Verdict};

type Cells = Vec<(Point, Label)>;

/// Link indices are relative to the stripe being processed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Head {
    Start,
    At(i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Tail {
    Final,
    At(i64),
}

/// A maximal chain of placed factors; `first` is its first figure while the head is open.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Frag {
    head: Head,
    tail: Tail,
    first: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
struct Side {
    frags: Vec<Frag>,
    /// Cells at or above the current stripe.
    cells: Cells,
}

impl Side {
    fn complete(&self) -> bool {
        matches!(self.frags[..], [Frag { head: Head::Start, tail: Tail::Final, .. }])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct State {
    started: bool,
    ended: bool,
    x: Side,
    y: Side,
}

#[derive(Clone, Debug)]
struct Step {
    /// `(on the x side, figure, link index relative to the stripe)`
    placed: Vec<(bool, usize, i64)>,
    /// First figures of both walks, when they start on this stripe.
    start: Option<(usize, usize)>,
}

/// Outcome of processing one stripe on one side.
struct Settled {
    placed: Vec<usize>,
    start: Option<usize>,
    end: bool,
    here: Cells,
    next: Side,
}

struct Sweep<'a> {
    figs: &'a [Figure],
    tau: Vector,
    tt: i128,
    k: Vec<i64>,
    lo: Vec<i64>,
}

fn merge_disjoint(a: &Cells, b: impl Iterator<Item = (Point, Label)>) -> Option<Cells> {
    let mut r: Cells = b.collect();
    r.sort_unstable();
    let mut merged = Vec::with_capacity(a.len() + r.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < r.len() {
        match a[i].0.cmp(&r[j].0) {
            std::cmp::Ordering::Less => {
                merged.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                merged.push(r[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => return None,
        }
    }
    merged.extend_from_slice(&a[i..]);
    merged.extend_from_slice(&r[j..]);
    Some(merged)
}

/// All bijections of `0..n`.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == p.len() {
            out.push(p.clone());
            return;
        }
        for j in i..p.len() {
            p.swap(i, j);
            rec(i + 1, p, out);
            p.swap(i, j);
        }
    }
    let mut out = Vec::new();
    rec(0, &mut (0..n).collect(), &mut out);
    out
}

impl<'a> Sweep<'a> {
    fn new(figs: &'a [Figure], tau: Vector) -> Sweep<'a> {
        let tt = tau.dot(tau);
        let mut s = Sweep { figs, tau, tt, k: Vec::new(), lo: Vec::new() };
        for f in figs {
            let k = i64::try_from(f.delta().dot(tau) / tt).expect("coordinate overflow");
            let lo = f.domain().map(|p| s.stripe(p)).chain([0, k]).min().expect("non-empty");
            s.k.push(k);
            s.lo.push(lo);
        }
        s
    }

    fn stripe(&self, u: Point) -> i64 {
        i64::try_from(u.dot(self.tau).div_euclid(self.tt)).expect("coordinate overflow")
    }

    /// Places the figures in `mask` at their lowest stripe, then resolves link point 0 in
    /// every possible way. `may_start`/`may_end` allow declaring the walk's start or end.
    fn settle(&self, side: &Side, mask: u64, may_start: bool, may_end: bool) -> Vec<Settled> {
        let mut cells = side.cells.clone();
        let mut frags = side.frags.clone();
        let mut placed = Vec::new();
        for f in 0..self.figs.len() {
            if mask >> f & 1 == 0 {
                continue;
            }
            let j = -self.lo[f];
            let at = j * self.tau;
            match merge_disjoint(&cells, self.figs[f].cells().iter().map(|&(p, l)| (p + at, l))) {
                Some(c) => cells = c,
                None => return Vec::new(),
            }
            frags.push(Frag { head: Head::At(j), tail: Tail::At(j + self.k[f]), first: f });
            placed.push(f);
        }
        let (here, rest): (Cells, Cells) = cells.into_iter().partition(|c| self.stripe(c.0) == 0);
        let rest: Cells = rest.into_iter().map(|(p, l)| (p - self.tau, l)).collect();

        let begins: Vec<usize> = (0..frags.len()).filter(|&i| frags[i].head == Head::At(0)).collect();
        let ends: Vec<usize> = (0..frags.len()).filter(|&i| frags[i].tail == Tail::At(0)).collect();
        let start_opts: Vec<Option<usize>> =
            std::iter::once(None).chain(begins.iter().copied().filter(|_| may_start).map(Some)).collect();
        let end_opts: Vec<Option<usize>> =
            std::iter::once(None).chain(ends.iter().copied().filter(|_| may_end).map(Some)).collect();
        let mut out = Vec::new();
        for &s in &start_opts {
            for &e in &end_opts {
                let bs: Vec<usize> = begins.iter().copied().filter(|&b| Some(b) != s).collect();
                let es: Vec<usize> = ends.iter().copied().filter(|&x| Some(x) != e).collect();
                if bs.len() != es.len() {
                    continue;
                }
                for perm in permutations(bs.len()) {
                    // next[a] = b joins the tail of a to the head of b
                    let mut next = vec![None; frags.len()];
                    let mut has_prev = vec![false; frags.len()];
                    for (i, &p) in perm.iter().enumerate() {
                        next[es[i]] = Some(bs[p]);
                        has_prev[bs[p]] = true;
                    }
                    let mut seen = vec![false; frags.len()];
                    let mut joined = Vec::new();
                    for a in 0..frags.len() {
                        if has_prev[a] {
                            continue;
                        }
                        let mut last = a;
                        seen[a] = true;
                        while let Some(b) = next[last] {
                            seen[b] = true;
                            last = b;
                        }
                        let head = if Some(a) == s { Head::Start } else { frags[a].head };
                        let tail = if Some(last) == e { Tail::Final } else { frags[last].tail };
                        joined.push((head, tail, frags[a].first));
                    }
                    if seen.contains(&false) {
                        continue; // a cycle
                    }
                    let shifted: Option<Vec<Frag>> = joined
                        .into_iter()
                        .map(|(head, tail, first)| {
                            let head = match head {
                                Head::At(0) => return None,
                                Head::At(j) => Head::At(j - 1),
                                Head::Start => Head::Start,
                            };
                            let tail = match tail {
                                Tail::At(0) => return None,
                                Tail::At(j) => Tail::At(j - 1),
                                Tail::Final => Tail::Final,
                            };
                            let first = if head == Head::Start { 0 } else { first };
                            Some(Frag { head, tail, first })
                        })
                        .collect();
                    let Some(mut nf) = shifted else { continue };
                    nf.sort_unstable();
                    let whole = nf.iter().any(|f| f.head == Head::Start && f.tail == Tail::Final);
                    if whole && nf.len() > 1 {
                        continue;
                    }
                    out.push(Settled {
                        placed: placed.clone(),
                        start: s.map(|b| frags[b].first),
                        end: e.is_some(),
                        here: here.clone(),
                        next: Side { frags: nf, cells: rest.clone() },
                    });
                }
            }
        }
        out
    }

    fn successors(&self, s: &State) -> Vec<(Step, State)> {
        let all: Vec<u64> = (0..1u64 << self.figs.len()).collect();
        let options = |side: &Side| -> Vec<Settled> {
            // a finished walk takes no more factors
            let masks: &[u64] = if side.complete() { &all[..1] } else { &all };
            masks.iter().flat_map(|&m| self.settle(side, m, !s.started, !s.ended)).collect()
        };
        let yopts = options(&s.y);
        let mut ys: HashMap<(&Cells, bool, bool), Vec<&Settled>> = HashMap::new();
        for o in &yopts {
            ys.entry((&o.here, o.start.is_some(), o.end)).or_default().push(o);
        }
        let initial = !s.started && s.x.frags.is_empty() && s.y.frags.is_empty();
        let mut out = Vec::new();
        for a in options(&s.x) {
            let Some(matches) = ys.get(&(&a.here, a.start.is_some(), a.end)) else { continue };
            for b in matches {
                let start = match (a.start, b.start) {
                    (Some(p), Some(q)) if p < q => Some((p, q)),
                    (Some(_), Some(_)) => continue,
                    _ => None,
                };
                // nothing placed yet: skip pure translations
                if initial && a.placed.is_empty() && b.placed.is_empty() {
                    continue;
                }
                let mut placed: Vec<(bool, usize, i64)> = a.placed.iter().map(|&f| (true, f, -self.lo[f])).collect();
                placed.extend(b.placed.iter().map(|&f| (false, f, -self.lo[f])));
                let st = State {
                    started: s.started || start.is_some(),
                    ended: s.ended || a.end,
                    x: a.next.clone(),
                    y: b.next.clone(),
                };
                out.push((Step { placed, start }, st));
            }
        }
        out
    }

    fn is_terminal(s: &State) -> bool {
        s.x.complete() && s.y.complete() && s.x.cells == s.y.cells
    }
}

/// Orders placements `(figure, absolute link)` into a walk that begins with `first` at
/// link `start`.
fn walk(sweep: &Sweep, first: usize, start: i64, placements: &[(usize, i64)]) -> Result<Vec<usize>> {
    let mut rest = placements.to_vec();
    let pos = rest
        .iter()
        .position(|&p| p == (first, start))
        .ok_or_else(|| Error::pre("internal: first factor not placed at the start"))?;
    rest.swap_remove(pos);
    let mut adj: BTreeMap<i64, Vec<(usize, i64)>> = BTreeMap::new();
    for &(f, j) in &rest {
        adj.entry(j).or_default().push((f, j + sweep.k[f]));
    }
    for v in adj.values_mut() {
        v.sort_unstable();
        v.reverse();
    }
    // Hierholzer: stack of (vertex, figure used to get there)
    let mut stack = vec![(start + sweep.k[first], first)];
    let mut trail = Vec::new();
    while let Some(&(v, f)) = stack.last() {
        match adj.get_mut(&v).and_then(Vec::pop) {
            Some((g, to)) => stack.push((to, g)),
            None => {
                trail.push(f);
                stack.pop();
            }
        }
    }
    trail.reverse();
    if trail.len() != placements.len() {
        return Err(Error::pre("internal: placements do not form a single walk"));
    }
    Ok(trail)
}

/// Rebuilds both factor sequences from the edges of a path out of the initial state.
fn sequences(sweep: &Sweep, graph: &StateGraph<State, Step>, path: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    let mut start = None;
    for (i, &e) in path.iter().enumerate() {
        let step = &graph.edges[e].2;
        let i = i as i64;
        for &(on_x, f, j) in &step.placed {
            if on_x { &mut xs } else { &mut ys }.push((f, j + i));
        }
        if let Some((p, q)) = step.start {
            start = Some((p, q, i));
        }
    }
    let (p, q, at) = start.ok_or_else(|| Error::pre("internal: path without a start"))?;
    Ok((walk(sweep, p, at, &xs)?, walk(sweep, q, at, &ys)?))
}

/// Decides whether a two-sided parallel code is a code of the given kind.
pub fn decide(code: &Code, kind: Kind, opts: &Options) -> Result<(Verdict, SearchStats)> {
    let tau = match code.geometry() {
        CodeGeometry::TwoSidedParallel { tau } => tau,
        g => return Err(Error::pre(format!("code is not two-sided parallel ({g})"))),
    };
    let figs = code.normalized();
    if figs.len() > 63 {
        return Err(Error::pre("the parallel sweep supports at most 63 figures"));
    }
    let sweep = Sweep::new(&figs, tau);
    let n = figs.len();

    let mut graph: StateGraph<State, Step> = StateGraph::new();
    graph.intern(State { started: false, ended: false, x: Side::default(), y: Side::default() }, false);
    // tree edge that first reached each node
    let mut parent: Vec<Option<usize>> = vec![None];
    let tree_path = |graph: &StateGraph<State, Step>, parent: &[Option<usize>], mut v: usize| {
        let mut path = Vec::new();
        while let Some(e) = parent[v] {
            path.push(e);
            v = graph.edges[e].0;
        }
        path.reverse();
        path
    };
    let mut frontier = vec![0];
    let mut early = None;
    'search: while !frontier.is_empty() {
        if graph.len() > opts.max_states {
            let stats = SearchStats { states: graph.len(), edges: graph.edges.len(), starts: 1 };
            return Ok((Verdict::Inconclusive(format!("state budget of {} exhausted", opts.max_states)), stats));
        }
        let g = &graph;
        let expanded =
            opts.exec.map(frontier.clone(), |v| if g.terminal[v] { Vec::new() } else { sweep.successors(&g.states[v]) });
        let mut next = Vec::new();
        for (v, succ) in frontier.iter().zip(expanded) {
            for (step, st) in succ {
                let t = Sweep::is_terminal(&st);
                let (u, fresh) = graph.intern(st, t);
                graph.add_edge(*v, u, step);
                if fresh {
                    parent.push(Some(graph.edges.len() - 1));
                    next.push(u);
                    if t {
                        let (a, b) = sequences(&sweep, &graph, &tree_path(&graph, &parent, u))?;
                        if kind.violated_by(&a, &b) {
                            early = Some((a, b));
                            break 'search;
                        }
                    }
                }
            }
        }
        frontier = next;
    }
    let stats = SearchStats { states: graph.len(), edges: graph.edges.len(), starts: 1 };

    let found = match (early, kind) {
        (Some(hit), _) => Some(hit),
        // walks start with different factors, so every terminal already violates UD
        (None, Kind::Ud) => None,
        (None, Kind::Msd | Kind::Nd) => {
            let ws = graph.weight_summary(|step| {
                let mut v = vec![0i64; if kind == Kind::Nd { 1 } else { n }];
                for &(on_x, f, _) in &step.placed {
                    v[if kind == Kind::Nd { 0 } else { f }] += if on_x { 1 } else { -1 };
                }
                v
            });
            let paths = match ws.value(0) {
                Summary::None => Vec::new(),
                Summary::One(_) => vec![graph.single_path(0, &ws)],
                Summary::Several => {
                    let (a, b) = graph.two_paths(0, &ws);
                    vec![a, b]
                }
            };
            let mut hit = None;
            for p in paths {
                let (a, b) = sequences(&sweep, &graph, &p)?;
                if kind.violated_by(&a, &b) {
                    hit = Some((a, b));
                    break;
                }
            }
            hit
        }
        (None, Kind::Sd) => {
            let sets = graph.set_summary(|step| {
                let (mut a, mut b) = (0u64, 0u64);
                for &(on_x, f, _) in &step.placed {
                    if on_x {
                        a |= 1 << f;
                    } else {
                        b |= 1 << f;
                    }
                }
                (a, b)
            });
            let mut keys: Vec<(u64, u64)> = sets[0].keys().copied().filter(|(a, b)| a != b).collect();
            keys.sort_unstable();
            match keys.first() {
                Some(&key) => Some(sequences(&sweep, &graph, &graph.set_path(0, key, &sets))?),
                None => None,
            }
        }
    };
    match found {
        None => Ok((Verdict::IsCode, stats)),
        Some((left, right)) => {
            let w = Witness::from_sequences(&figs, left, right, Mode::Plain, None)
                .map_err(|e| Error::pre(format!("internal: reconstructed witness is invalid: {e}")))?;
            debug_assert!(w.violates(kind));
            Ok((Verdict::NotCode(w), stats))
        }
    }
}
