//! Bounded brute force over factorizations: every sequence up to a length bound
//! is catenated and sequences with equal results are paired into witnesses.
//!
//! An empty answer only means nothing was found at that bound.

use std::collections::HashMap;

use crate::alphabet::MergeTable;
use crate::error::{Error, Result};
use crate::figure::{require_associative, Figure, Mode};
use crate::par::Exec;
use crate::witness::{Kind, Witness};

fn seq_key(s: &[usize]) -> (usize, &[usize]) {
    (s.len(), s)
}

/// All sequences of length `1..=max_len` starting with `first`, grouped by their
/// (normalized) catenation.
fn grow(
    figs: &[Figure],
    first: usize,
    mode: Mode,
    m: Option<&MergeTable>,
    max_len: usize,
) -> HashMap<Figure, Vec<Vec<usize>>> {
    let mut all: HashMap<Figure, Vec<Vec<usize>>> = HashMap::new();
    let mut level: HashMap<Figure, Vec<Vec<usize>>> = HashMap::new();
    level.insert(figs[first].clone(), vec![vec![first]]);
    for len in 1..=max_len {
        if len < max_len {
            let mut next: HashMap<Figure, Vec<Vec<usize>>> = HashMap::new();
            // Extending each distinct partial figure once is enough: sequences with the
            // same partial catenation have the same extensions.
            for (fig, seqs) in &level {
                for (i, x) in figs.iter().enumerate() {
                    let ext = match mode {
                        Mode::Plain => fig.catenate(x),
                        Mode::Merge => Some(fig.m_catenate(x, m.expect("checked")).expect("checked")),
                    };
                    if let Some(ext) = ext {
                        let bucket = next.entry(ext).or_default();
                        bucket.extend(seqs.iter().map(|s| {
                            let mut s = s.clone();
                            s.push(i);
                            s
                        }));
                    }
                }
            }
            for (fig, seqs) in level {
                all.entry(fig).or_default().extend(seqs);
            }
            level = next;
        } else {
            for (fig, seqs) in std::mem::take(&mut level) {
                all.entry(fig).or_default().extend(seqs);
            }
        }
    }
    all
}

/// Sequences of length `1..=max_len` grouped by their common catenation; only groups
/// with at least two sequences are kept. Each group is sorted by `(length, indices)`
/// and groups are ordered by their first two sequences.
pub fn collision_groups(
    figs: &[Figure],
    mode: Mode,
    m: Option<&MergeTable>,
    max_len: usize,
    exec: Exec,
) -> Result<Vec<(Figure, Vec<Vec<usize>>)>> {
    if max_len < 2 {
        return Err(Error::pre("max_len must be at least 2"));
    }
    if mode == Mode::Merge {
        require_associative(m.ok_or(Error::MissingMergeTable)?)?;
    }
    let figs: Vec<Figure> = figs.iter().map(Figure::normalize).collect();
    let parts = exec.map((0..figs.len()).collect(), |i| grow(&figs, i, mode, m, max_len));
    let mut groups: HashMap<Figure, Vec<Vec<usize>>> = HashMap::new();
    for part in parts {
        for (fig, seqs) in part {
            groups.entry(fig).or_default().extend(seqs);
        }
    }
    let mut out: Vec<(Figure, Vec<Vec<usize>>)> = groups
        .into_iter()
        .filter(|(_, s)| s.len() >= 2)
        .map(|(f, mut s)| {
            s.sort_by(|a, b| seq_key(a).cmp(&seq_key(b)));
            (f, s)
        })
        .collect();
    out.sort_by(|a, b| {
        seq_key(&a.1[0]).cmp(&seq_key(&b.1[0])).then_with(|| seq_key(&a.1[1]).cmp(&seq_key(&b.1[1])))
    });
    Ok(out)
}

/// Every unordered pair of distinct sequences of length at most `max_len` whose
/// catenations are defined and equal, ordered by `(length, indices)` of both sides.
pub fn find_violations(
    figs: &[Figure],
    mode: Mode,
    m: Option<&MergeTable>,
    max_len: usize,
    exec: Exec,
) -> Result<Vec<Witness>> {
    let mut out = Vec::new();
    for (fig, seqs) in collision_groups(figs, mode, m, max_len, exec)? {
        for i in 0..seqs.len() {
            for j in i + 1..seqs.len() {
                out.push(Witness::new(seqs[i].clone(), seqs[j].clone(), fig.clone()));
            }
        }
    }
    out.sort_by(|a, b| {
        seq_key(&a.left).cmp(&seq_key(&b.left)).then_with(|| seq_key(&a.right).cmp(&seq_key(&b.right)))
    });
    Ok(out)
}

/// The first pair (in the order of [`find_violations`]) that violates `kind`, without
/// materializing every pair.
pub fn first_violation(
    figs: &[Figure],
    kind: Kind,
    mode: Mode,
    m: Option<&MergeTable>,
    max_len: usize,
    exec: Exec,
) -> Result<Option<Witness>> {
    let mut best: Option<Witness> = None;
    for (fig, seqs) in collision_groups(figs, mode, m, max_len, exec)? {
        'group: for i in 0..seqs.len() {
            for j in i + 1..seqs.len() {
                if kind.violated_by(&seqs[i], &seqs[j]) {
                    let better = best.as_ref().is_none_or(|b| {
                        (seq_key(&seqs[i]), seq_key(&seqs[j])) < (seq_key(&b.left), seq_key(&b.right))
                    });
                    if better {
                        best = Some(Witness::new(seqs[i].clone(), seqs[j].clone(), fig.clone()));
                    }
                    break 'group;
                }
            }
        }
    }
    Ok(best)
}

/// Smallest `p < q <= max_pow` with `x^p = x^q` under merging catenation.
/// Requires a zero translation vector, so that every power shares one domain.
pub fn power_collision(x: &Figure, m: &MergeTable, max_pow: usize) -> Result<Option<(usize, usize)>> {
    if !x.delta().is_zero() {
        return Err(Error::pre("power collisions need a zero translation vector"));
    }
    require_associative(m)?;
    let mut seen: HashMap<Figure, usize> = HashMap::new();
    let x = x.normalize();
    let mut pow = x.clone();
    for p in 1..=max_pow {
        if let Some(&q0) = seen.get(&pow) {
            return Ok(Some((q0, p)));
        }
        seen.insert(pow.clone(), p);
        pow = pow.m_catenate(&x, m)?;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::Point;

    #[test]
    fn single_cell_loop_collides_immediately() {
        let x = Figure::new([(Point::new(0, 0), 0)], Point::new(0, 0), Point::new(0, 0)).unwrap();
        let m = MergeTable::first(1);
        assert_eq!(power_collision(&x, &m, 5).unwrap(), Some((1, 2)));
        assert_eq!(power_collision(&Figure::empty(), &m, 5).unwrap(), Some((1, 2)));
    }

    #[test]
    fn bound_below_two_rejected() {
        let x = Figure::word(&[0]);
        assert!(find_violations(&[x], Mode::Plain, None, 1, Exec::Sequential).is_err());
    }

    #[test]
    fn word_code_collision() {
        // {a, ab, ba}: a.ba = ab.a
        let figs = vec![Figure::word(&[0]), Figure::word(&[0, 1]), Figure::word(&[1, 0])];
        let w = find_violations(&figs, Mode::Plain, None, 2, Exec::Sequential).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!((w[0].left.clone(), w[0].right.clone()), (vec![0, 2], vec![1, 0]));
    }
}
