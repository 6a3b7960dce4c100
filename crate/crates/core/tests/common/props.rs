//! Property bodies shared by the property suite and the acceptance run.

use std::collections::HashSet;

use figcode::geometry::half_plane_contains;
use figcode::pcp::{encode, hooked_square, Instance, Side, SquareSpec};
use figcode::verify::onesided::Frame;
use figcode::{check, Code, CodeGeometry, Figure, Kind, Label, MergeTable, Mode, Options, Point, Verdict};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{associative_tables, naive_cat, p, random_code};

pub const CASES: u32 = 1000;

type Check = Result<(), TestCaseError>;

pub fn config() -> Config {
    Config { cases: CASES, max_global_rejects: 50 * CASES, ..Config::default() }
}

/// Runs one property outside the `proptest!` macro, for callers that want a verdict
/// instead of a panic.
pub fn run<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Check) -> Result<(), String> {
    // no source file to persist failures next to
    let c = Config { failure_persistence: None, ..config() };
    TestRunner::new(c).run(&strategy, test).map_err(|e| e.to_string())
}

pub fn point(r: i64) -> impl Strategy<Value = Point> {
    (-r..=r, -r..=r).prop_map(|(x, y)| p(x, y))
}

/// Up to four cells in a 3x3 box over {a, b}; begin and end near the box.
pub fn figure() -> impl Strategy<Value = Figure> {
    (proptest::collection::btree_map((0..3i64, 0..3i64), 0..2 as Label, 0..=4), point(2), point(3)).prop_map(
        |(cells, b, e)| {
            let begin = if cells.is_empty() { p(0, 0) } else { b };
            let end = if cells.is_empty() { p(0, 0) } else { e };
            Figure::new(cells.into_iter().map(|((x, y), l)| (p(x, y), l)), begin, end).unwrap()
        },
    )
}

pub fn table() -> impl Strategy<Value = MergeTable> {
    let all = associative_tables(2);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

/// Random PCP instance over {a, b} with one or two pairs of short words.
pub fn instance() -> impl Strategy<Value = Instance> {
    let word = proptest::collection::vec(0usize..2, 1..=3);
    proptest::collection::vec((word.clone(), word), 1..=2)
        .prop_filter("equal words", |ps| ps.iter().all(|(x, y)| x != y))
        .prop_map(|pairs| Instance::new(vec!["a".into(), "b".into()], pairs).unwrap())
}

fn overlap(x: &Figure, y: &Figure) -> usize {
    let shift = x.end() - y.begin();
    y.domain().filter(|&q| x.contains(q + shift)).count()
}

pub fn plain_associative(x: &Figure, y: &Figure, z: &Figure) -> Check {
    let left = x.catenate(y).and_then(|xy| xy.catenate(z));
    let right = y.catenate(z).and_then(|yz| x.catenate(&yz));
    if let (Some(a), Some(b)) = (left, right) {
        prop_assert_eq!(a, b);
    }
    Ok(())
}

pub fn merge_associative(x: &Figure, y: &Figure, z: &Figure, m: &MergeTable) -> Check {
    let a = x.m_catenate(y, m).unwrap().m_catenate(z, m).unwrap();
    let b = x.m_catenate(&y.m_catenate(z, m).unwrap(), m).unwrap();
    prop_assert_eq!(a, b);
    Ok(())
}

pub fn identity(x: &Figure, m: &MergeTable) -> Check {
    let e = Figure::empty();
    prop_assert_eq!(&x.catenate(&e).unwrap(), x);
    prop_assert_eq!(e.catenate(x).unwrap().normalize(), x.normalize());
    prop_assert_eq!(&x.m_catenate(&e, m).unwrap(), x);
    prop_assert_eq!(e.m_catenate(x, m).unwrap().normalize(), x.normalize());
    Ok(())
}

pub fn deltas_add(x: &Figure, y: &Figure, m: &MergeTable) -> Check {
    if let Some(xy) = x.catenate(y) {
        prop_assert_eq!(xy.delta(), x.delta() + y.delta());
    }
    prop_assert_eq!(x.m_catenate(y, m).unwrap().delta(), x.delta() + y.delta());
    Ok(())
}

pub fn plain_then_merge_agrees(x: &Figure, y: &Figure, m: &MergeTable) -> Check {
    if let Some(xy) = x.catenate(y) {
        prop_assert_eq!(x.m_catenate(y, m).unwrap(), xy);
    }
    Ok(())
}

pub fn domain_sizes(x: &Figure, y: &Figure, m: &MergeTable) -> Check {
    let o = overlap(x, y);
    match x.catenate(y) {
        Some(xy) => prop_assert_eq!((xy.len(), o), (x.len() + y.len(), 0)),
        None => prop_assert!(o > 0),
    }
    let xy = x.m_catenate(y, m).unwrap();
    prop_assert_eq!(xy.len(), x.len() + y.len() - o);
    prop_assert_eq!(xy, naive_cat(x, y, Some(m)).unwrap());
    Ok(())
}

pub fn shapes(x: &Figure, u: Point, v: Point) -> Check {
    let a = x.translate(u);
    let b = x.translate(v);
    prop_assert!(x.same_shape(x));
    prop_assert!(a.same_shape(&b) && b.same_shape(&a));
    prop_assert!(x.same_shape(&a) && a.same_shape(x));
    Ok(())
}

pub fn rotations(v: Point) -> Check {
    prop_assert_eq!(v.rot_cw().rot_ccw(), v);
    prop_assert_eq!(v.rot_ccw().rot_cw(), v);
    prop_assert_eq!(v.rot_ccw().dot(v), 0);
    Ok(())
}

pub fn half_plane_shift(u: Point, v: Point, w: Point, t: Point) -> Check {
    prop_assume!(!u.is_zero());
    prop_assert_eq!(half_plane_contains(u, v, w).unwrap(), half_plane_contains(u, v + t, w + t).unwrap());
    Ok(())
}

pub fn hooks(h: u32, side: usize, d: u32, d2: u32) -> Check {
    prop_assume!(d <= h && d2 <= h);
    let (out, inn, at) = [(Side::E, Side::W, 1), (Side::W, Side::E, 3), (Side::N, Side::S, 0), (Side::S, Side::N, 2)][side];
    let mut a = [1; 4];
    a[at] = d;
    let mut b = [1; 4];
    b[(at + 2) % 4] = d2;
    let x = hooked_square(h, SquareSpec { depths: a, begin: inn, end: out }).unwrap();
    let y = hooked_square(h, SquareSpec { depths: b, begin: inn, end: out }).unwrap();
    prop_assert_eq!(x.catenate(&y).is_some(), d == d2);
    Ok(())
}

pub fn distinct_encoding(inst: &Instance) -> Check {
    let code = encode(inst).unwrap();
    let mut seen = HashSet::new();
    for f in code.normalized() {
        prop_assert!(seen.insert(f));
    }
    // three basic figures and sixteen annex squares per pair, two N squares, per part
    prop_assert_eq!(code.len(), 38 * inst.k() + 4);
    Ok(())
}

/// A random one-sided code and its direction, drawn from a seed.
pub fn one_sided(seed: u64) -> (Vec<Figure>, Point, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let (code, _) = random_code(&mut rng, 4, 4);
        if let CodeGeometry::OneSided { tau } = code.geometry() {
            return (code.normalized(), tau, rng);
        }
    }
}

pub fn chain(rng: &mut ChaCha8Rng, figs: &[Figure], m: &MergeTable, len: usize) -> Figure {
    let mut acc = Figure::empty();
    for _ in 0..len {
        acc = acc.m_catenate(&figs[rng.gen_range(0..figs.len())], m).unwrap();
    }
    acc
}

/// The five frontier facts behind the one-sided search, for `x` built from the origin
/// and any continuation `y`, under merging catenation (plain catenation is the
/// overlap-free special case).
pub fn frontier(seed: u64) -> Check {
    let (figs, tau, mut rng) = one_sided(seed);
    let frame = Frame::new(&figs, tau).unwrap();
    let tables = associative_tables(2);
    let m = &tables[rng.gen_range(0..tables.len())];
    let n = rng.gen_range(1..=4);
    let x = chain(&mut rng, &figs, m, n);
    let k = rng.gen_range(1..=3);
    let y = chain(&mut rng, &figs, m, k);
    let xy = x.m_catenate(&y, m).unwrap();
    let (ex, exy) = (x.end(), xy.end());
    let (lo, hi) = xy.bounds();
    let pad = 3;
    for wx in lo.x.min(ex.x) - pad..=hi.x.max(ex.x) + pad {
        for wy in lo.y.min(ex.y) - pad..=hi.y.max(ex.y) + pad {
            let u = p(wx, wy);
            let ce = frame.ce_plus(ex, u);
            if !ce {
                if x.contains(u) {
                    prop_assert_eq!(x.label_at(u), xy.label_at(u), "label changed at {:?}", u);
                } else {
                    prop_assert!(!xy.contains(u), "{:?} covered later", u);
                }
            }
            if !frame.cw_plus(ex, u) {
                prop_assert!(!x.contains(u), "{:?} outside swept region", u);
            }
            if frame.ce_plus(exy, u) {
                prop_assert!(ce, "open region grew at {:?}", u);
            }
            if frame.cw_plus(ex, u) {
                prop_assert!(frame.cw_plus(exy, u), "swept region shrank at {:?}", u);
            }
        }
    }
    Ok(())
}

fn quick() -> Options {
    Options { max_states: 20_000, oracle_len: 4, ..Options::default() }
}

fn verdicts(code: &Code, mode: Mode) -> [Verdict; 4] {
    [Kind::Ud, Kind::Msd, Kind::Sd, Kind::Nd].map(|k| check(code, k, mode, &quick()).unwrap().verdict)
}

fn is_code(v: &Verdict) -> Option<bool> {
    match v {
        Verdict::IsCode => Some(true),
        Verdict::NotCode(_) => Some(false),
        Verdict::Inconclusive(_) => None,
    }
}

/// `a` being a code forces `b` to be one, whenever both are decided.
fn implies(a: &Verdict, b: &Verdict) -> bool {
    !matches!((is_code(a), is_code(b)), (Some(true), Some(false)))
}

pub fn lattice(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (code, _) = random_code(&mut rng, 3, 3);
    let [ud, msd, sd, nd] = verdicts(&code, Mode::Plain);
    prop_assert!(implies(&ud, &msd));
    prop_assert!(implies(&msd, &sd));
    prop_assert!(implies(&msd, &nd));
    prop_assert!(implies(&ud, &sd) && implies(&ud, &nd));
    Ok(())
}

pub fn merge_code_is_code(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (code, sigma) = random_code(&mut rng, 3, 3);
    let tables = associative_tables(sigma);
    let code = code.with_merge(tables[rng.gen_range(0..tables.len())].clone()).unwrap();
    let plain = verdicts(&code, Mode::Plain);
    let merged = verdicts(&code, Mode::Merge);
    for (m, pl) in merged.iter().zip(&plain) {
        prop_assert!(implies(m, pl), "merge {} plain {}", m.word(), pl.word());
    }
    Ok(())
}
