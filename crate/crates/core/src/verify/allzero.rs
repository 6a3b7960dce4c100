//! Codes whose figures all have a zero translation vector.
//!
//! Every figure then sits on the same begin point, so a defined catenation is a union
//! of pairwise disjoint figures, each used at most once and in any order. Decipherability
//! reduces to comparing the unions of disjoint subsets.

use std::collections::HashMap;

use crate::alphabet::Label;
use crate::code::Code;
use crate::error::{Error, Result};
use crate::figure::{Figure, Mode};
use crate::geometry::CodeGeometry;
use crate::point::Point;
use crate::witness::{Kind, Witness};

use super::{Options, SearchStats, Verdict};

fn disjoint(a: &[(Point, Label)], b: &[(Point, Label)]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return false,
        }
    }
    true
}

type Cells = Vec<(Point, Label)>;

/// Every non-empty set of pairwise disjoint figures, grouped by union.
fn unions(figs: &[Figure], limit: usize) -> Option<HashMap<Cells, Vec<Vec<usize>>>> {
    let mut groups: HashMap<Cells, Vec<Vec<usize>>> = HashMap::new();
    let mut count = 0usize;
    let mut stack: Vec<(Vec<usize>, Cells)> = vec![(Vec::new(), Vec::new())];
    while let Some((set, cells)) = stack.pop() {
        let from = set.last().map_or(0, |&i| i + 1);
        for (i, f) in figs.iter().enumerate().skip(from) {
            if !disjoint(&cells, f.cells()) {
                continue;
            }
            count += 1;
            if count > limit {
                return None;
            }
            let mut c = cells.clone();
            c.extend_from_slice(f.cells());
            c.sort_unstable();
            let mut s = set.clone();
            s.push(i);
            groups.entry(c.clone()).or_default().push(s.clone());
            stack.push((s, c));
        }
    }
    Some(groups)
}

pub(crate) fn decide(code: &Code, kind: Kind, opts: &Options) -> Result<(Verdict, SearchStats)> {
    if code.geometry() != CodeGeometry::AllZero {
        return Err(Error::pre("some translation vector is non-zero"));
    }
    let figs = code.normalized();
    let Some(groups) = unions(&figs, opts.max_states) else {
        let stats = SearchStats { states: opts.max_states, ..Default::default() };
        return Ok((Verdict::Inconclusive(format!("more than {} disjoint subsets", opts.max_states)), stats));
    };
    let stats = SearchStats { states: groups.values().map(Vec::len).sum(), edges: 0, starts: 0 };
    let mut keys: Vec<_> = groups.keys().collect();
    keys.sort_unstable();
    let mut found = None;
    'outer: for k in &keys {
        let sets = &groups[*k];
        for a in 0..sets.len() {
            if kind == Kind::Ud && sets[a].len() >= 2 {
                let mut rev = sets[a].clone();
                rev.reverse();
                found = Some((sets[a].clone(), rev));
                break 'outer;
            }
            for b in a + 1..sets.len() {
                if kind.violated_by(&sets[a], &sets[b]) {
                    found = Some((sets[a].clone(), sets[b].clone()));
                    break 'outer;
                }
            }
        }
    }
    match found {
        None => Ok((Verdict::IsCode, stats)),
        Some((l, r)) => Ok((Verdict::NotCode(Witness::from_sequences(&figs, l, r, Mode::Plain, None)?), stats)),
    }
}
