use std::cmp::Ordering;
use std::fmt;

use crate::alphabet::{Label, MergeTable};
use crate::error::{Error, Result};
use crate::point::{Point, Vector, ORIGIN};

/// A directed figure: a finite labelled set of grid cells with a begin and an end point.
///
/// Cells are kept sorted by point, so two figures with the same coordinates compare
/// equal structurally. Equality up to translation is [`Figure::same_shape`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Figure {
    cells: Vec<(Point, Label)>,
    begin: Point,
    end: Point,
}

/// Plain or merging catenation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Plain,
    Merge,
}

impl Figure {
    pub fn new<I>(cells: I, begin: Point, end: Point) -> Result<Self>
    where
        I: IntoIterator<Item = (Point, Label)>,
    {
        let mut cells: Vec<_> = cells.into_iter().collect();
        cells.sort_unstable_by_key(|c| c.0);
        if let Some(w) = cells.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::pre(format!("cell {} given twice", w[0].0)));
        }
        Ok(Figure { cells, begin, end })
    }

    pub fn empty() -> Self {
        Figure { cells: Vec::new(), begin: ORIGIN, end: ORIGIN }
    }

    /// A horizontal word: one cell per symbol, begin at the origin, end just past the last cell.
    pub fn word(labels: &[Label]) -> Self {
        let cells = labels.iter().enumerate().map(|(i, &l)| (Point::new(i as i64, 0), l)).collect();
        Figure { cells, begin: ORIGIN, end: Point::new(labels.len() as i64, 0) }
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty() && self.begin == self.end
    }

    pub fn cells(&self) -> &[(Point, Label)] {
        &self.cells
    }

    pub fn domain(&self) -> impl Iterator<Item = Point> + '_ {
        self.cells.iter().map(|c| c.0)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn begin(&self) -> Point {
        self.begin
    }

    pub fn end(&self) -> Point {
        self.end
    }

    /// End minus begin.
    pub fn delta(&self) -> Vector {
        self.end - self.begin
    }

    pub fn label_at(&self, p: Point) -> Option<Label> {
        self.cells.binary_search_by_key(&p, |c| c.0).ok().map(|i| self.cells[i].1)
    }

    pub fn contains(&self, p: Point) -> bool {
        self.label_at(p).is_some()
    }

    pub fn translate(&self, v: Vector) -> Figure {
        Figure {
            cells: self.cells.iter().map(|&(p, l)| (p + v, l)).collect(),
            begin: self.begin + v,
            end: self.end + v,
        }
    }

    /// Canonical representative: the translate whose begin is the origin.
    pub fn normalize(&self) -> Figure {
        if self.begin == ORIGIN {
            self.clone()
        } else {
            self.translate(-self.begin)
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.begin == ORIGIN
    }

    /// Equality of figures up to translation.
    pub fn same_shape(&self, other: &Figure) -> bool {
        if self.cells.len() != other.cells.len() || self.delta() != other.delta() {
            return false;
        }
        let shift = other.begin - self.begin;
        self.cells.iter().zip(&other.cells).all(|(a, b)| a.0 + shift == b.0 && a.1 == b.1)
    }

    /// Plain catenation; `None` when the translated domains overlap.
    pub fn catenate(&self, y: &Figure) -> Option<Figure> {
        let shift = self.end - y.begin;
        let mut out = Vec::with_capacity(self.cells.len() + y.cells.len());
        let (mut i, mut j) = (0, 0);
        while i < self.cells.len() && j < y.cells.len() {
            let q = (y.cells[j].0 + shift, y.cells[j].1);
            match self.cells[i].0.cmp(&q.0) {
                Ordering::Less => {
                    out.push(self.cells[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(q);
                    j += 1;
                }
                Ordering::Equal => return None,
            }
        }
        out.extend_from_slice(&self.cells[i..]);
        out.extend(y.cells[j..].iter().map(|&(p, l)| (p + shift, l)));
        Some(Figure { cells: out, begin: self.begin, end: y.end + shift })
    }

    /// Merging catenation: overlapping cells get `m(label of self, label of y)`.
    pub fn m_catenate(&self, y: &Figure, m: &MergeTable) -> Result<Figure> {
        let n = m.size();
        if self.cells.iter().chain(&y.cells).any(|c| c.1 as usize >= n) {
            return Err(Error::AlphabetMismatch);
        }
        let shift = self.end - y.begin;
        let mut out = Vec::with_capacity(self.cells.len() + y.cells.len());
        let (mut i, mut j) = (0, 0);
        while i < self.cells.len() && j < y.cells.len() {
            let q = (y.cells[j].0 + shift, y.cells[j].1);
            match self.cells[i].0.cmp(&q.0) {
                Ordering::Less => {
                    out.push(self.cells[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(q);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((q.0, m.apply(self.cells[i].1, q.1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.cells[i..]);
        out.extend(y.cells[j..].iter().map(|&(p, l)| (p + shift, l)));
        Ok(Figure { cells: out, begin: self.begin, end: y.end + shift })
    }

    /// Catenation in the given mode. `m` must be present in merge mode.
    pub fn cat(&self, y: &Figure, mode: Mode, m: Option<&MergeTable>) -> Result<Option<Figure>> {
        match mode {
            Mode::Plain => Ok(self.catenate(y)),
            Mode::Merge => {
                let m = m.ok_or(Error::MissingMergeTable)?;
                self.m_catenate(y, m).map(Some)
            }
        }
    }

    /// Smallest axis-aligned box holding the domain, begin and end: `(min, max)`.
    pub fn bounds(&self) -> (Point, Point) {
        let mut lo = self.begin;
        let mut hi = self.begin;
        for p in self.domain().chain([self.end]) {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        (lo, hi)
    }
}

/// Checks that `m` is associative, as required for folding merge catenations.
pub fn require_associative(m: &MergeTable) -> Result<()> {
    match m.associativity_counterexample() {
        None => Ok(()),
        Some((a, b, c)) => Err(Error::NonAssociative(a.to_string(), b.to_string(), c.to_string())),
    }
}

/// Left fold of the pairwise catenation. `Ok(None)` means a plain catenation was undefined.
pub fn catenate_sequence<'a, I>(seq: I, mode: Mode, m: Option<&MergeTable>) -> Result<Option<Figure>>
where
    I: IntoIterator<Item = &'a Figure>,
{
    if mode == Mode::Merge {
        require_associative(m.ok_or(Error::MissingMergeTable)?)?;
    }
    let mut it = seq.into_iter();
    let mut acc = it.next().ok_or_else(|| Error::pre("empty sequence"))?.clone();
    for f in it {
        match acc.cat(f, mode, m)? {
            Some(next) => acc = next,
            None => return Ok(None),
        }
    }
    Ok(Some(acc))
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "begin {} end {} cells [", self.begin, self.end)?;
        for (i, (p, l)) in self.cells.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}", p, l)?;
        }
        write!(f, "]")
    }
}
