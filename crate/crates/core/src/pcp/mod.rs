//! Encoding of Post correspondence instances as two-sided figure codes over a
//! one-letter alphabet, and the double tiling built from a solution.
//!
//! Every figure is made of hooked squares: a square with a notch and a protrusion of
//! a given depth on each side. Two squares fit side by side exactly when the touching
//! hooks have the same depth, so hook depths carry symbols across the tiling.

mod annex;

use std::collections::HashMap;
use std::fmt;

use crate::alphabet::Alphabet;
use crate::code::Code;
use crate::error::{Error, Result};
use crate::figure::{catenate_sequence, Figure, Mode};
use crate::point::Point;
use crate::witness::Witness;

use annex::{Slot, ANNEX};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    letters: Vec<String>,
    /// `(x_i, y_i)` as letter indices.
    pairs: Vec<(Vec<usize>, Vec<usize>)>,
}

impl Instance {
    pub fn new(letters: Vec<String>, pairs: Vec<(Vec<usize>, Vec<usize>)>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidPcp("empty alphabet".into()));
        }
        for (i, l) in letters.iter().enumerate() {
            if l.is_empty() || letters[..i].contains(l) {
                return Err(Error::InvalidPcp(format!("bad or repeated letter {l:?}")));
            }
        }
        if pairs.is_empty() {
            return Err(Error::InvalidPcp("no pairs".into()));
        }
        for (i, (x, y)) in pairs.iter().enumerate() {
            if x.is_empty() || y.is_empty() {
                return Err(Error::InvalidPcp(format!("pair {} has an empty word", i + 1)));
            }
            if x.iter().chain(y).any(|&a| a >= letters.len()) {
                return Err(Error::InvalidPcp(format!("pair {} uses an unknown letter", i + 1)));
            }
            if x == y {
                return Err(Error::InvalidPcp(format!("pair {} has equal words", i + 1)));
            }
        }
        Ok(Instance { letters, pairs })
    }

    /// Builds an instance from words written as strings of single-character letters.
    pub fn from_words(letters: &str, pairs: &[(&str, &str)]) -> Result<Self> {
        let ls: Vec<String> = letters.chars().map(String::from).collect();
        let word = |w: &str| -> Result<Vec<usize>> {
            w.chars()
                .map(|c| {
                    letters.chars().position(|l| l == c).ok_or_else(|| Error::InvalidPcp(format!("unknown letter {c:?}")))
                })
                .collect()
        };
        let pairs = pairs.iter().map(|(x, y)| Ok((word(x)?, word(y)?))).collect::<Result<_>>()?;
        Instance::new(ls, pairs)
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn pairs(&self) -> &[(Vec<usize>, Vec<usize>)] {
        &self.pairs
    }

    /// Number of pairs.
    pub fn k(&self) -> usize {
        self.pairs.len()
    }

    /// Number of hook depths used by the encoding.
    pub fn h(&self) -> u32 {
        (5 * self.k() + self.letters.len() + 7) as u32
    }

    pub fn word_string(&self, w: &[usize]) -> String {
        w.iter().map(|&a| self.letters[a].as_str()).collect()
    }

    /// Checks a 1-based index sequence of length at least two.
    pub fn check_solution(&self, sol: &[usize]) -> Result<()> {
        if sol.len() < 2 {
            return Err(Error::NotASolution("a solution needs at least two indices".into()));
        }
        if let Some(&i) = sol.iter().find(|&&i| i == 0 || i > self.k()) {
            return Err(Error::NotASolution(format!("index {i} out of range 1..={}", self.k())));
        }
        let top: Vec<usize> = sol.iter().flat_map(|&i| self.pairs[i - 1].0.clone()).collect();
        let bottom: Vec<usize> = sol.iter().flat_map(|&i| self.pairs[i - 1].1.clone()).collect();
        if top != bottom {
            return Err(Error::NotASolution(format!(
                "{} != {}",
                self.word_string(&top),
                self.word_string(&bottom)
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    N,
    E,
    S,
    W,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Hook depths (north, east, south, west) and the sides carrying begin and end.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SquareSpec {
    pub depths: [u32; 4],
    pub begin: Side,
    pub end: Side,
}

/// The hooked square of half-width `h + 2`, every cell labelled with symbol 0.
pub fn hooked_square(h: u32, spec: SquareSpec) -> Result<Figure> {
    if let Some(d) = spec.depths.iter().find(|&&d| d == 0 || d > h) {
        return Err(Error::pre(format!("hook depth {d} outside 1..={h}")));
    }
    let r = h as i64 + 2;
    let [dn, de, ds, dw] = spec.depths.map(i64::from);
    let mut notch = Vec::new();
    let mut bump = Vec::new();
    for t in 0..=dn {
        notch.push(Point::new(-1, r - t));
        bump.push(Point::new(1, r + 1 + t));
    }
    notch.push(Point::new(0, r - dn));
    bump.push(Point::new(0, r + 1 + dn));
    for t in 0..=de {
        notch.push(Point::new(r - t, 1));
        bump.push(Point::new(r + 1 + t, -1));
    }
    notch.push(Point::new(r - de, 0));
    bump.push(Point::new(r + 1 + de, 0));
    for t in 0..=ds {
        notch.push(Point::new(1, -r + t));
        bump.push(Point::new(-1, -r - 1 - t));
    }
    notch.push(Point::new(0, -r + ds));
    bump.push(Point::new(0, -r - 1 - ds));
    for t in 0..=dw {
        notch.push(Point::new(-r + t, -1));
        bump.push(Point::new(-r - 1 - t, 1));
    }
    notch.push(Point::new(-r + dw, 0));
    bump.push(Point::new(-r - 1 - dw, 0));
    notch.sort_unstable();
    let mut cells = Vec::new();
    for x in -r..=r {
        for y in -r..=r {
            let p = Point::new(x, y);
            if notch.binary_search(&p).is_err() {
                cells.push((p, 0));
            }
        }
    }
    cells.extend(bump.into_iter().map(|p| (p, 0)));
    let at = |s: Side, d: i64| match s {
        Side::N => Point::new(0, d),
        Side::E => Point::new(d, 0),
        Side::S => Point::new(0, -d),
        Side::W => Point::new(-d, 0),
    };
    Figure::new(cells, at(spec.begin, r), at(spec.end, r + 1))
}

/// The two halves of the encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Part {
    X,
    Y,
}

impl Part {
    fn letter(self) -> char {
        match self {
            Part::X => 'x',
            Part::Y => 'y',
        }
    }
}

/// Elements of the hook set, numbered in the order
/// `x_1..x_k, y_1..y_k, e_x1..e_xk, e_y1..e_yk, I_1..I_k, a_1..a_p, x, y, x', y', b_x, b_y, e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Hook {
    Word(Part, usize),
    EndWord(Part, usize),
    Row(usize),
    Letter(usize),
    Part(Part),
    Prime(Part),
    Border(Part),
    End,
}

impl Hook {
    fn depth(self, inst: &Instance) -> u32 {
        let k = inst.k();
        let p = inst.letters.len();
        let side = |z: Part| if z == Part::X { 0 } else { 1 };
        let d = match self {
            Hook::Word(z, i) => side(z) * k + i,
            Hook::EndWord(z, i) => 2 * k + side(z) * k + i,
            Hook::Row(i) => 4 * k + i,
            Hook::Letter(a) => 5 * k + a,
            Hook::Part(z) => 5 * k + p + side(z),
            Hook::Prime(z) => 5 * k + p + 2 + side(z),
            Hook::Border(z) => 5 * k + p + 4 + side(z),
            Hook::End => 5 * k + p + 6,
        };
        d as u32 + 1
    }

    fn slot(s: Slot, z: Part, i: usize) -> Hook {
        match s {
            Slot::Word => Hook::Word(z, i),
            Slot::Part => Hook::Part(z),
            Slot::EndWord => Hook::EndWord(z, i),
            Slot::End => Hook::End,
            Slot::Border => Hook::Border(z),
            Slot::Row => Hook::Row(i),
        }
    }
}

fn square(inst: &Instance, hooks: [Hook; 4], begin: Side, end: Side) -> Result<Figure> {
    hooked_square(inst.h(), SquareSpec { depths: hooks.map(|k| k.depth(inst)), begin, end })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Basic {
    Begin,
    Middle,
    Last,
}

fn basic_name(kind: Basic, z: Part, i: usize) -> String {
    let z = z.letter();
    let i = i + 1;
    match kind {
        Basic::Begin => format!("[{z}{i}["),
        Basic::Middle => format!("]{z}{i}["),
        Basic::Last => format!("]{z}{i}]"),
    }
}

/// A row of squares spelling the word of pair `i`. The carried hook sits on the south
/// side of the last square of a middle figure, and of the first square of a begin figure.
fn basic(inst: &Instance, kind: Basic, z: Part, i: usize) -> Result<Figure> {
    let w = if z == Part::X { &inst.pairs[i].0 } else { &inst.pairs[i].1 };
    let r = w.len();
    let squares = w
        .iter()
        .enumerate()
        .map(|(t, &a)| {
            let last = t + 1 == r;
            let east = if kind == Basic::Last && last { Hook::End } else { Hook::Prime(z) };
            let west = if kind == Basic::Begin && t == 0 { Hook::Row(i) } else { Hook::Prime(z) };
            let south = match kind {
                Basic::Begin if t == 0 => Hook::Border(z),
                Basic::Middle if last => Hook::Word(z, i),
                Basic::Last if last => Hook::EndWord(z, i),
                _ => Hook::Part(z),
            };
            let end = if kind == Basic::Last && last { Side::S } else { Side::E };
            square(inst, [Hook::Letter(a), east, south, west], Side::W, end)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(catenate_sequence(&squares, Mode::Plain, None)?.expect("hooks of consecutive squares match"))
}

/// The figures of the encoding in a fixed order: for each part, the basic figures of
/// every pair, then the indexed annex squares of every pair, then the two plain squares.
pub fn encoded_figures(inst: &Instance) -> Result<Vec<(String, Figure)>> {
    let mut out = Vec::new();
    for z in [Part::X, Part::Y] {
        for i in 0..inst.k() {
            for kind in [Basic::Begin, Basic::Middle, Basic::Last] {
                out.push((basic_name(kind, z, i), basic(inst, kind, z, i)?));
            }
        }
        for i in 0..inst.k() {
            for a in ANNEX.iter().filter(|a| a.indexed) {
                let hooks = a.hooks.map(|s| Hook::slot(s, z, i));
                out.push((annex::name(a.name, z.letter(), i + 1), square(inst, hooks, a.begin, a.end)?));
            }
        }
        for a in ANNEX.iter().filter(|a| !a.indexed) {
            let hooks = a.hooks.map(|s| Hook::slot(s, z, 0));
            out.push((annex::name(a.name, z.letter(), 0), square(inst, hooks, a.begin, a.end)?));
        }
    }
    Ok(out)
}

/// The code over the one-letter alphabet `{a}` built from the instance.
pub fn encode(inst: &Instance) -> Result<Code> {
    Code::new(Alphabet::new(["a"])?, encoded_figures(inst)?, None)
}

/// Factor names of one tiling of the figure built from a solution; `sol` is 1-based.
///
/// Row 1 spells the common word with basic figures. Every later row is a snake of
/// single squares through the same columns; row `j < n` carries the hook of pair
/// `i_j` from the column where row 1 exposed it to the western border, and the last
/// row carries the end hook of pair `i_n`.
fn tiling(inst: &Instance, z: Part, sol: &[usize]) -> Vec<String> {
    let zl = z.letter();
    let idx: Vec<usize> = sol.iter().map(|&i| i - 1).collect();
    let n = idx.len();
    let len = |i: usize| if z == Part::X { inst.pairs[i].0.len() } else { inst.pairs[i].1.len() };
    let total: usize = idx.iter().map(|&i| len(i)).sum();
    // hook column of row j (0-based j in 1..n-1): last square of the j-th word
    let mut col = vec![0usize; n];
    let mut acc = 0;
    for (j, &i) in idx.iter().enumerate() {
        acc += len(i);
        col[j] = acc - 1;
    }
    let ann = |t: &str, i: usize, b: Side, e: Side| -> String {
        annex::name(&format!("{t}^{b}_{e}"), zl, i + 1)
    };
    let mut names = Vec::new();
    for (j, &i) in idx.iter().enumerate() {
        let kind = match j {
            0 => Basic::Begin,
            _ if j + 1 == n => Basic::Last,
            _ => Basic::Middle,
        };
        names.push(basic_name(kind, z, i));
    }
    let last = idx[n - 1];
    for j in 1..n {
        // rows with odd 0-based index run east to west
        let westward = j % 2 == 1;
        let (along_b, along_e) = if westward { (Side::E, Side::W) } else { (Side::W, Side::E) };
        let mut row = Vec::with_capacity(total);
        for c in 0..total {
            let nm = if j + 1 == n {
                match c {
                    0 => ann("BEz[i,E.W]", last, if westward { Side::E } else { Side::N }, if westward { Side::S } else { Side::E }),
                    _ if c + 1 == total => ann("Ez[i,N.W]", last, if westward { Side::N } else { Side::W }, if westward { Side::W } else { Side::S }),
                    _ => ann("Ez[i,E.W]", last, along_b, along_e),
                }
            } else if c == 0 {
                ann("BMz[i,E.W]", idx[j], if westward { Side::E } else { Side::N }, if westward { Side::S } else { Side::E })
            } else if c + 1 == total {
                ann("Ez[i,N.S]", last, if westward { Side::N } else { Side::W }, if westward { Side::W } else { Side::S })
            } else if c == col[j] {
                ann("Mz[i,N.W]", idx[j], along_b, along_e)
            } else if c < col[j] {
                ann("Mz[i,E.W]", idx[j], along_b, along_e)
            } else if let Some(l) = (j + 1..n - 1).find(|&l| col[l] == c) {
                ann("Mz[i,N.S]", idx[l], along_b, along_e)
            } else {
                format!("N{zl}[]^{along_b}_{along_e}")
            };
            row.push(nm);
        }
        if westward {
            row.reverse();
        }
        names.extend(row);
    }
    names
}

/// Indices into `code` of the x-part and y-part tilings of the figure built from the
/// 1-based solution `sol`.
pub fn solution_sequences(code: &Code, inst: &Instance, sol: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    inst.check_solution(sol)?;
    let lookup = |names: Vec<String>| -> Result<Vec<usize>> {
        let index: HashMap<&str, usize> = code.names().iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        names
            .iter()
            .map(|n| index.get(n.as_str()).copied().ok_or_else(|| Error::pre(format!("code has no figure {n:?}"))))
            .collect()
    };
    Ok((lookup(tiling(inst, Part::X, sol))?, lookup(tiling(inst, Part::Y, sol))?))
}

/// Encodes the instance and returns the code together with the double factorization
/// built from the solution. Both tilings are recomputed and compared.
pub fn witness_from_solution(inst: &Instance, sol: &[usize]) -> Result<(Code, Witness)> {
    inst.check_solution(sol)?;
    let code = encode(inst)?;
    let (left, right) = solution_sequences(&code, inst, sol)?;
    let w = Witness::from_sequences(&code.normalized(), left, right, Mode::Plain, None)
        .map_err(|e| Error::pre(format!("internal: tilings disagree: {e}")))?;
    Ok((code, w))
}
