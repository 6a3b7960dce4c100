//! Explicit finite state graphs and the backward analyses run on them.
//!
//! Every analysis answers a question about the paths from a node to some terminal
//! node, and keeps enough pointers to rebuild concrete paths for witnesses.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};
use std::hash::Hash;
use std::sync::Arc;

/// Next hop of a recorded path: stop here (terminal) or follow an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Next {
    Here,
    Edge(usize),
}

pub(crate) struct StateGraph<S, E> {
    // shared with the index so every state is stored once
    pub states: Vec<Arc<S>>,
    index: HashMap<Arc<S>, usize>,
    pub out: Vec<Vec<usize>>,
    /// `(from, to, label)`
    pub edges: Vec<(usize, usize, E)>,
    pub terminal: Vec<bool>,
}

impl<S: Clone + Eq + Hash, E> StateGraph<S, E> {
    pub fn new() -> Self {
        StateGraph { states: Vec::new(), index: HashMap::new(), out: Vec::new(), edges: Vec::new(), terminal: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    /// Returns the node id and whether it was newly created.
    pub fn intern(&mut self, s: S, terminal: bool) -> (usize, bool) {
        match self.index.entry(Arc::new(s)) {
            Entry::Occupied(o) => (*o.get(), false),
            Entry::Vacant(v) => {
                let id = self.states.len();
                self.states.push(Arc::clone(v.key()));
                v.insert(id);
                self.out.push(Vec::new());
                self.terminal.push(terminal);
                (id, true)
            }
        }
    }

    pub fn add_edge(&mut self, from: usize, to: usize, label: E) {
        let id = self.edges.len();
        self.edges.push((from, to, label));
        self.out[from].push(id);
    }

    fn preds(&self) -> Vec<Vec<usize>> {
        let mut p = vec![Vec::new(); self.states.len()];
        for (id, e) in self.edges.iter().enumerate() {
            p[e.1].push(id);
        }
        p
    }

    /// For every node that can reach a terminal, the first hop of a shortest such path.
    pub fn to_terminal(&self) -> Vec<Option<Next>> {
        let preds = self.preds();
        let mut next = vec![None; self.states.len()];
        let mut queue = VecDeque::new();
        for (v, &t) in self.terminal.iter().enumerate() {
            if t {
                next[v] = Some(Next::Here);
                queue.push_back(v);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &e in &preds[u] {
                let v = self.edges[e].0;
                if next[v].is_none() {
                    next[v] = Some(Next::Edge(e));
                    queue.push_back(v);
                }
            }
        }
        next
    }

    /// Follows recorded hops from `v` to a terminal; returns edge ids.
    pub fn follow(&self, mut v: usize, next: &[Option<Next>]) -> Vec<usize> {
        let mut path = Vec::new();
        loop {
            match next[v].expect("node reaches a terminal") {
                Next::Here => return path,
                Next::Edge(e) => {
                    path.push(e);
                    v = self.edges[e].1;
                }
            }
        }
    }

    /// Abstracts, for every node, the set of total weights of paths to terminals
    /// as none / exactly one value / at least two values.
    pub fn weight_summary(&self, tally: impl Fn(&E) -> Vec<i64>) -> WeightSummary {
        let n = self.states.len();
        let preds = self.preds();
        let weights: Vec<Vec<i64>> = self.edges.iter().map(|e| tally(&e.2)).collect();
        let dims = weights.first().map_or(0, Vec::len);
        let mut single: Vec<Option<(Vec<i64>, Next)>> = vec![None; n];
        let mut multiple: Vec<Option<Cause>> = vec![None; n];
        let mut queue = VecDeque::new();
        for (v, &t) in self.terminal.iter().enumerate() {
            if t {
                single[v] = Some((vec![0; dims], Next::Here));
                queue.push_back(v);
            }
        }
        // Each node changes at most twice (none -> single -> multiple), so this terminates.
        while let Some(u) = queue.pop_front() {
            for &e in &preds[u] {
                let v = self.edges[e].0;
                if multiple[v].is_some() {
                    continue;
                }
                let changed = if multiple[u].is_some() {
                    multiple[v] = Some(Cause::Via(e));
                    true
                } else {
                    let w_u = &single[u].as_ref().expect("queued nodes carry a value").0;
                    let cand: Vec<i64> = w_u.iter().zip(&weights[e]).map(|(a, b)| a + b).collect();
                    match &single[v] {
                        None => {
                            single[v] = Some((cand, Next::Edge(e)));
                            true
                        }
                        Some((w, _)) if *w == cand => false,
                        Some(_) => {
                            multiple[v] = Some(Cause::Split(e));
                            true
                        }
                    }
                };
                if changed {
                    queue.push_back(v);
                }
            }
        }
        WeightSummary { single, multiple }
    }

    /// Path from `v` along the first value ever recorded for it.
    pub fn single_path(&self, mut v: usize, ws: &WeightSummary) -> Vec<usize> {
        let mut path = Vec::new();
        loop {
            match ws.single[v].as_ref().expect("node has a value").1 {
                Next::Here => return path,
                Next::Edge(e) => {
                    path.push(e);
                    v = self.edges[e].1;
                }
            }
        }
    }

    /// Two paths from a node marked as having several weights, with different weights.
    pub fn two_paths(&self, v: usize, ws: &WeightSummary) -> (Vec<usize>, Vec<usize>) {
        let mut prefix = Vec::new();
        let mut v = v;
        loop {
            match ws.multiple[v].expect("node has several values") {
                Cause::Via(e) => {
                    prefix.push(e);
                    v = self.edges[e].1;
                }
                Cause::Split(e) => {
                    let mut a = prefix.clone();
                    a.extend(self.single_path(v, ws));
                    let mut b = prefix;
                    b.push(e);
                    b.extend(self.single_path(self.edges[e].1, ws));
                    return (a, b);
                }
            }
        }
    }

    /// For every node, all pairs of factor sets `(x side, y side)` collected along
    /// paths to terminals, each with a pointer for rebuilding one such path.
    pub fn set_summary(&self, sets: impl Fn(&E) -> (u64, u64)) -> Vec<HashMap<(u64, u64), SetHop>> {
        let n = self.states.len();
        let preds = self.preds();
        let masks: Vec<(u64, u64)> = self.edges.iter().map(|e| sets(&e.2)).collect();
        let mut found: Vec<HashMap<(u64, u64), SetHop>> = vec![HashMap::new(); n];
        let mut queue = VecDeque::new();
        for (v, &t) in self.terminal.iter().enumerate() {
            if t {
                found[v].insert((0, 0), SetHop::Here);
                queue.push_back((v, (0u64, 0u64)));
            }
        }
        while let Some((u, (a, b))) = queue.pop_front() {
            for &e in &preds[u] {
                let v = self.edges[e].0;
                let key = (a | masks[e].0, b | masks[e].1);
                if let Entry::Vacant(slot) = found[v].entry(key) {
                    slot.insert(SetHop::Edge(e, (a, b)));
                    queue.push_back((v, key));
                }
            }
        }
        found
    }

    pub fn set_path(&self, mut v: usize, mut key: (u64, u64), found: &[HashMap<(u64, u64), SetHop>]) -> Vec<usize> {
        let mut path = Vec::new();
        loop {
            match found[v][&key] {
                SetHop::Here => return path,
                SetHop::Edge(e, k) => {
                    path.push(e);
                    v = self.edges[e].1;
                    key = k;
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) enum Cause {
    /// The first recorded value disagrees with the value through this edge.
    Split(usize),
    /// The target of this edge already has several values.
    Via(usize),
}

pub(crate) struct WeightSummary {
    pub single: Vec<Option<(Vec<i64>, Next)>>,
    pub multiple: Vec<Option<Cause>>,
}

impl WeightSummary {
    pub fn value(&self, v: usize) -> Summary<'_> {
        if self.multiple[v].is_some() {
            Summary::Several
        } else if let Some((w, _)) = &self.single[v] {
            Summary::One(w)
        } else {
            Summary::None
        }
    }
}

#[derive(Debug, PartialEq, Eq)]
pub(crate) enum Summary<'a> {
    None,
    One(&'a [i64]),
    Several,
}

#[derive(Clone, Copy, Debug)]
pub(crate) enum SetHop {
    Here,
    Edge(usize, (u64, u64)),
}
