#![allow(dead_code)]

pub mod props;

use figcode::{Alphabet, Code, Figure, Label, MergeTable, Mode, Point};
use rand::Rng;

pub fn p(x: i64, y: i64) -> Point {
    Point::new(x, y)
}

pub fn ab() -> Alphabet {
    Alphabet::new(["a", "b"]).unwrap()
}

/// Horizontal word figure over {a, b}.
pub fn word(w: &str) -> Figure {
    let labels: Vec<Label> = w.chars().map(|c| if c == 'a' { 0 } else { 1 }).collect();
    Figure::word(&labels)
}

pub fn word_code(ws: &[&str]) -> Code {
    Code::from_figures(ab(), ws.iter().map(|w| word(w)).collect()).unwrap()
}

pub fn fig(cells: &[(i64, i64, Label)], begin: (i64, i64), end: (i64, i64)) -> Figure {
    Figure::new(cells.iter().map(|&(x, y, l)| (p(x, y), l)), p(begin.0, begin.1), p(end.0, end.1)).unwrap()
}

/// All associative tables over `n` symbols (n <= 2).
pub fn associative_tables(n: usize) -> Vec<MergeTable> {
    let total = n * n;
    let mut out = Vec::new();
    for code in 0..n.pow(total as u32) {
        let mut c = code;
        let rows: Vec<Label> = (0..total)
            .map(|_| {
                let v = (c % n) as Label;
                c /= n;
                v
            })
            .collect();
        let m = MergeTable::from_rows(n, rows).unwrap();
        if m.is_associative() {
            out.push(m);
        }
    }
    out
}

/// Random figure: up to `max_cells` cells in a 3x3 box, begin and end nearby.
pub fn random_figure(rng: &mut impl Rng, sigma: usize, max_cells: usize) -> Figure {
    loop {
        let n = rng.gen_range(1..=max_cells);
        let mut cells: Vec<(Point, Label)> = Vec::new();
        while cells.len() < n {
            let q = p(rng.gen_range(0..3), rng.gen_range(0..3));
            if !cells.iter().any(|c| c.0 == q) {
                cells.push((q, rng.gen_range(0..sigma) as Label));
            }
        }
        let b = p(rng.gen_range(-1..=3), rng.gen_range(-1..=3));
        let e = p(rng.gen_range(-1..=3), rng.gen_range(-1..=3));
        if let Ok(f) = Figure::new(cells, b, e) {
            return f;
        }
    }
}

/// Random code of 1..=max_figs distinct figures (any geometry).
pub fn random_code(rng: &mut impl Rng, max_figs: usize, max_cells: usize) -> (Code, usize) {
    loop {
        let sigma = rng.gen_range(1..=2);
        let alphabet = Alphabet::new(["a", "b"].into_iter().take(sigma)).unwrap();
        let n = rng.gen_range(1..=max_figs);
        let figs: Vec<Figure> = (0..n).map(|_| random_figure(rng, sigma, max_cells)).collect();
        if let Ok(c) = Code::from_figures(alphabet, figs) {
            return (c, sigma);
        }
    }
}

/// Literal reference enumeration: every sequence up to `max_len`, no sharing.
pub fn naive_collisions(figs: &[Figure], mode: Mode, m: Option<&MergeTable>, max_len: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut all: Vec<(Vec<usize>, Figure)> = Vec::new();
    let mut level: Vec<(Vec<usize>, Figure)> = vec![(Vec::new(), Figure::empty())];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (s, f) in &level {
            for (i, x) in figs.iter().enumerate() {
                if let Ok(Some(g)) = f.cat(x, mode, m) {
                    let mut s = s.clone();
                    s.push(i);
                    next.push((s, g));
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    let mut out = Vec::new();
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            if all[i].1.normalize() == all[j].1.normalize() {
                out.push((all[i].0.clone(), all[j].0.clone()));
            }
        }
    }
    out
}

pub fn fixture_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn fixture(name: &str) -> Code {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    figcode::format::parse_code(&text).unwrap()
}

/// The four-cell figure with begin and end outside the domain.
pub fn example1() -> Figure {
    fig(&[(0, 0, 0), (1, 0, 1), (1, 1, 0), (2, 0, 0)], (0, 1), (2, 1))
}

/// Reference catenation over hash maps, written straight from the definition and
/// independent of the library's merge-join. `None` when a plain catenation overlaps.
pub fn naive_cat(x: &Figure, y: &Figure, m: Option<&MergeTable>) -> Option<Figure> {
    use std::collections::HashMap;
    let shift = x.end() - y.begin();
    let mut cells: HashMap<Point, Label> = x.cells().iter().copied().collect();
    for &(q, l) in y.cells() {
        let q = q + shift;
        match (cells.get(&q).copied(), m) {
            (None, _) => {
                cells.insert(q, l);
            }
            (Some(old), Some(m)) => {
                cells.insert(q, m.apply(old, l));
            }
            (Some(_), None) => return None,
        }
    }
    Some(Figure::new(cells, x.begin(), y.end() + shift).unwrap())
}

pub fn naive_seq(figs: &[Figure], seq: &[usize], m: Option<&MergeTable>) -> Option<Figure> {
    let mut acc = figs[seq[0]].clone();
    for &i in &seq[1..] {
        acc = naive_cat(&acc, &figs[i], m)?;
    }
    Some(acc.normalize())
}
