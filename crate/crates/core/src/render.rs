//! SVG and ASCII pictures of figures and witnesses.
//!
//! A domain point `(x, y)` is the unit square with lower left corner `(x, y)`.
//! The begin point gets a circle and the end point a diamond. North is up.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::alphabet::{Alphabet, MergeTable};
use crate::error::{Error, Result};
use crate::figure::{Figure, Mode};
use crate::point::Point;
use crate::witness::Witness;

const UNIT: i64 = 40;
const PAD: i64 = 20;

/// ASCII picture: one slot per grid square, top row first. A slot shows the label
/// (`.` when the square is outside the domain), `o` in front when its lower left
/// corner is the begin point and `<>` after it when that corner is the end point.
pub fn ascii(f: &Figure, alphabet: &Alphabet) -> String {
    let (lo, hi) = f.bounds();
    let width = (0..f.cells().len()).map(|i| alphabet.symbol(f.cells()[i].1).chars().count()).max().unwrap_or(1);
    let mut out = String::new();
    for y in (lo.y..=hi.y).rev() {
        let mut row = String::new();
        for x in lo.x..=hi.x {
            let p = Point::new(x, y);
            let label = f.label_at(p).map_or(".", |l| alphabet.symbol(l));
            row.push(if p == f.begin() { 'o' } else { ' ' });
            write!(row, "{label:^width$}").unwrap();
            row.push_str(if p == f.end() { "<>" } else { "  " });
        }
        out.push_str(row.trim_end());
        out.push('\n');
    }
    out
}

/// Squares of every factor, placed as in the catenation of `seq` starting at the origin.
pub fn placements(figs: &[Figure], seq: &[usize]) -> Vec<Vec<Point>> {
    let mut at = Point::new(0, 0);
    seq.iter()
        .map(|&i| {
            let f = &figs[i];
            let shift = at - f.begin();
            at = f.end() + shift;
            f.domain().map(|p| p + shift).collect()
        })
        .collect()
}

/// ASCII picture of a witness: the common figure, then for each side the 1-based
/// position of the factor owning each square (the last one when merges overlap).
pub fn ascii_witness(w: &Witness, figs: &[Figure], names: &[String], alphabet: &Alphabet) -> String {
    let mut out = String::new();
    for (title, seq) in [("left", &w.left), ("right", &w.right)] {
        let list: Vec<&str> = seq.iter().map(|&i| names[i].as_str()).collect();
        writeln!(out, "{title}: {}", list.join(" ")).unwrap();
    }
    out.push('\n');
    out.push_str(&ascii(&w.result, alphabet));
    let (lo, hi) = w.result.bounds();
    for (title, seq) in [("left", &w.left), ("right", &w.right)] {
        let owner = owners(figs, seq);
        let width = seq.len().to_string().len();
        writeln!(out, "\n{title} factors:").unwrap();
        for y in (lo.y..=hi.y).rev() {
            let row: Vec<String> = (lo.x..=hi.x)
                .map(|x| owner.get(&Point::new(x, y)).map_or(format!("{:>width$}", "."), |k| format!("{:>width$}", k + 1)))
                .collect();
            out.push_str(row.join(" ").trim_end());
            out.push('\n');
        }
    }
    out
}

fn owners(figs: &[Figure], seq: &[usize]) -> HashMap<Point, usize> {
    let mut owner = HashMap::new();
    for (k, squares) in placements(figs, seq).into_iter().enumerate() {
        for p in squares {
            owner.insert(p, k);
        }
    }
    owner
}

struct Canvas {
    lo: Point,
    hi: Point,
    body: String,
}

impl Canvas {
    fn new(lo: Point, hi: Point) -> Self {
        Canvas { lo, hi, body: String::new() }
    }

    /// Screen coordinates of a lattice point.
    fn xy(&self, p: Point) -> (i64, i64) {
        (PAD + (p.x - self.lo.x) * UNIT, PAD + (self.hi.y + 1 - p.y) * UNIT)
    }

    fn size(&self) -> (i64, i64) {
        (2 * PAD + (self.hi.x - self.lo.x + 1) * UNIT, 2 * PAD + (self.hi.y - self.lo.y + 1) * UNIT)
    }

    fn square(&mut self, p: Point, fill: &str, label: Option<&str>) {
        let (x, y) = self.xy(Point::new(p.x, p.y + 1));
        writeln!(
            self.body,
            r#"<rect x="{x}" y="{y}" width="{UNIT}" height="{UNIT}" fill="{fill}" stroke="gray" stroke-width="1"/>"#
        )
        .unwrap();
        if let Some(l) = label {
            let (cx, cy) = (x + UNIT / 2, y + UNIT / 2 + 5);
            writeln!(self.body, r#"<text x="{cx}" y="{cy}" font-family="monospace" font-size="16" text-anchor="middle">{}</text>"#, escape(l)).unwrap();
        }
    }

    fn markers(&mut self, begin: Point, end: Point) {
        let (bx, by) = self.xy(begin);
        writeln!(self.body, r#"<circle cx="{bx}" cy="{by}" r="6" fill="white" stroke="black" stroke-width="2"/>"#).unwrap();
        let (ex, ey) = self.xy(end);
        let r = 7;
        writeln!(
            self.body,
            r#"<polygon points="{},{ey} {ex},{} {},{ey} {ex},{}" fill="black" fill-opacity="0.6" stroke="black" stroke-width="2"/>"#,
            ex - r,
            ey - r,
            ex + r,
            ey + r
        )
        .unwrap();
    }

    /// Thick outline around a set of squares: every edge shared with a square outside the set.
    fn outline(&mut self, set: &[Point]) {
        let inside: std::collections::HashSet<Point> = set.iter().copied().collect();
        for &p in set {
            let sides = [
                (Point::new(p.x, p.y + 1), Point::new(p.x, p.y + 1), Point::new(p.x + 1, p.y + 1)),
                (Point::new(p.x, p.y - 1), Point::new(p.x, p.y), Point::new(p.x + 1, p.y)),
                (Point::new(p.x - 1, p.y), Point::new(p.x, p.y), Point::new(p.x, p.y + 1)),
                (Point::new(p.x + 1, p.y), Point::new(p.x + 1, p.y), Point::new(p.x + 1, p.y + 1)),
            ];
            for (nb, a, b) in sides {
                if !inside.contains(&nb) {
                    let ((x1, y1), (x2, y2)) = (self.xy(a), self.xy(b));
                    writeln!(self.body, r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black" stroke-width="3"/>"#).unwrap();
                }
            }
        }
    }

    fn finish(self) -> String {
        let (w, h) = self.size();
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n{}</svg>\n",
            self.body
        )
    }
}

/// Glyph for a square; left out over a one-letter alphabet, where it says nothing.
fn label(alphabet: &Alphabet, l: crate::alphabet::Label) -> Option<&str> {
    (alphabet.len() > 1).then(|| alphabet.symbol(l))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Fill colour for the `k`-th factor, spread around the hue circle.
fn hue(k: usize) -> String {
    format!("hsl({}, 70%, 80%)", (k * 137) % 360)
}

pub fn svg(f: &Figure, alphabet: &Alphabet) -> String {
    let (lo, hi) = f.bounds();
    let mut c = Canvas::new(lo, hi);
    for &(p, l) in f.cells() {
        c.square(p, "#e8e8e8", label(alphabet, l));
    }
    c.markers(f.begin(), f.end());
    c.finish()
}

/// Several figures left to right, one column apart, each with its name above it.
pub fn svg_gallery(figs: &[(&str, &Figure)], alphabet: &Alphabet) -> String {
    let mut placed = Vec::new();
    let mut x = 0;
    let (mut lo_y, mut hi_y) = (i64::MAX, i64::MIN);
    for &(name, f) in figs {
        let (lo, hi) = f.bounds();
        let off = Point::new(x - lo.x, 0);
        placed.push((name, f, off));
        x += hi.x - lo.x + 2;
        lo_y = lo_y.min(lo.y);
        hi_y = hi_y.max(hi.y + 1);
    }
    if placed.is_empty() {
        return Canvas::new(Point::new(0, 0), Point::new(0, 0)).finish();
    }
    let mut c = Canvas::new(Point::new(0, lo_y), Point::new(x - 2, hi_y));
    for (name, f, off) in placed {
        for &(p, l) in f.cells() {
            c.square(p + off, "#e8e8e8", label(alphabet, l));
        }
        c.markers(f.begin() + off, f.end() + off);
        let (tx, ty) = c.xy(Point::new(f.bounds().0.x + off.x, hi_y + 1));
        writeln!(c.body, r#"<text x="{tx}" y="{}" font-family="sans-serif" font-size="14">{}</text>"#, ty + 15, escape(name)).unwrap();
    }
    c.finish()
}

/// Both factorizations of a witness side by side, each factor filled in its own
/// colour and outlined.
pub fn svg_witness(
    w: &Witness,
    figs: &[Figure],
    alphabet: &Alphabet,
    mode: Mode,
    m: Option<&MergeTable>,
) -> Result<String> {
    if !w.validate(figs, mode, m) {
        return Err(Error::Precondition("witness does not re-validate".into()));
    }
    let (lo, hi) = w.result.bounds();
    let gap = 2;
    let shift = hi.x - lo.x + 1 + gap;
    let mut c = Canvas::new(lo, Point::new(hi.x + shift, hi.y));
    for (panel, seq) in [&w.left, &w.right].into_iter().enumerate() {
        let off = Point::new(panel as i64 * shift, 0);
        let placed = placements(figs, seq);
        let owner = owners(figs, seq);
        for &(p, l) in w.result.cells() {
            c.square(p + off, &hue(owner[&p]), label(alphabet, l));
        }
        for squares in &placed {
            let moved: Vec<Point> = squares.iter().map(|&p| p + off).collect();
            c.outline(&moved);
        }
        c.markers(w.result.begin() + off, w.result.end() + off);
    }
    Ok(c.finish())
}
