//! Line-based text formats for codes, PCP instances and witnesses.
//!
//! Tokens are whitespace separated and `#` starts a comment. See `docs/formats.md`.

use std::fmt::Write as _;

use crate::alphabet::{Alphabet, Label, MergeTable};
use crate::code::Code;
use crate::error::{Error, Result};
use crate::figure::{Figure, Mode};
use crate::pcp::Instance;
use crate::point::Point;
use crate::witness::Witness;

/// Non-empty lines with comments stripped, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        let toks: Vec<&str> = l.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

fn int(line: usize, s: &str) -> Result<i64> {
    s.parse().map_err(|_| Error::parse(line, format!("expected an integer, got {s:?}")))
}

fn arity(line: usize, toks: &[&str], n: usize) -> Result<()> {
    if toks.len() != n {
        return Err(Error::parse(line, format!("`{}` takes {} argument(s)", toks[0], n - 1)));
    }
    Ok(())
}

struct Block {
    line: usize,
    name: String,
    begin: Option<Point>,
    end: Option<Point>,
    cells: Vec<(Point, Label)>,
}

impl Block {
    fn finish(self) -> Result<(String, Figure)> {
        let begin = self.begin.ok_or_else(|| Error::parse(self.line, format!("figure {} has no begin", self.name)))?;
        let end = self.end.ok_or_else(|| Error::parse(self.line, format!("figure {} has no end", self.name)))?;
        let f = Figure::new(self.cells, begin, end).map_err(|e| Error::parse(self.line, e.to_string()))?;
        Ok((self.name, f))
    }
}

/// Parses a code file.
pub fn parse_code(text: &str) -> Result<Code> {
    let mut alphabet: Option<Alphabet> = None;
    let mut blocks: Vec<Block> = Vec::new();
    let mut merges: Vec<(usize, Label, Label, Label)> = Vec::new();
    let mut last_line = 0;
    for (line, toks) in lines(text) {
        last_line = line;
        let need_alpha = || alphabet.as_ref().ok_or_else(|| Error::parse(line, "`alphabet` must come first"));
        match toks[0] {
            "alphabet" => {
                if alphabet.is_some() {
                    return Err(Error::parse(line, "alphabet declared twice"));
                }
                alphabet = Some(Alphabet::new(toks[1..].iter().copied()).map_err(|e| Error::parse(line, e.to_string()))?);
            }
            "figure" => {
                need_alpha()?;
                arity(line, &toks, 2)?;
                if blocks.iter().any(|b| b.name == toks[1]) {
                    return Err(Error::parse(line, format!("figure {} defined twice", toks[1])));
                }
                blocks.push(Block { line, name: toks[1].to_string(), begin: None, end: None, cells: Vec::new() });
            }
            "begin" | "end" | "cell" => {
                let a = need_alpha()?;
                let b = blocks.last_mut().ok_or_else(|| Error::parse(line, format!("`{}` outside a figure", toks[0])))?;
                if toks[0] == "cell" {
                    arity(line, &toks, 4)?;
                    let p = Point::new(int(line, toks[1])?, int(line, toks[2])?);
                    let l = a.lookup(toks[3]).map_err(|e| Error::parse(line, e.to_string()))?;
                    if b.cells.iter().any(|c| c.0 == p) {
                        return Err(Error::parse(line, format!("duplicate cell {p}")));
                    }
                    b.cells.push((p, l));
                } else {
                    arity(line, &toks, 3)?;
                    let p = Point::new(int(line, toks[1])?, int(line, toks[2])?);
                    let slot = if toks[0] == "begin" { &mut b.begin } else { &mut b.end };
                    if slot.is_some() {
                        return Err(Error::parse(line, format!("`{}` given twice for {}", toks[0], b.name)));
                    }
                    *slot = Some(p);
                }
            }
            "merge" => {
                let a = need_alpha()?;
                if toks.len() != 5 || toks[3] != "->" {
                    return Err(Error::parse(line, "expected `merge A B -> C`"));
                }
                let get = |s: &str| a.lookup(s).map_err(|e| Error::parse(line, e.to_string()));
                let (x, y, z) = (get(toks[1])?, get(toks[2])?, get(toks[4])?);
                if merges.iter().any(|m| (m.1, m.2) == (x, y)) {
                    return Err(Error::parse(line, format!("merge of {} {} given twice", toks[1], toks[2])));
                }
                merges.push((line, x, y, z));
            }
            other => return Err(Error::parse(line, format!("unknown directive {other:?}"))),
        }
    }
    let alphabet = alphabet.ok_or_else(|| Error::parse(last_line.max(1), "missing `alphabet` line"))?;
    let merge = if merges.is_empty() {
        None
    } else {
        let n = alphabet.len();
        if merges.len() != n * n {
            let line = merges.last().expect("non-empty").0;
            return Err(Error::parse(line, format!("merge table has {} of {} entries", merges.len(), n * n)));
        }
        let mut table = vec![0; n * n];
        for &(_, x, y, z) in &merges {
            table[x as usize * n + y as usize] = z;
        }
        Some(MergeTable::from_rows(n, table)?)
    };
    let first_line = blocks.first().map_or(last_line.max(1), |b| b.line);
    let lines_of: Vec<usize> = blocks.iter().map(|b| b.line).collect();
    let named = blocks.into_iter().map(Block::finish).collect::<Result<Vec<_>>>()?;
    Code::new(alphabet, named, merge).map_err(|e| {
        let line = match &e {
            Error::EmptyFigureInCode(i) | Error::EmptyDomain(i) => lines_of[*i],
            _ => first_line,
        };
        Error::parse(line, e.to_string())
    })
}

/// Writes a code in the format read by [`parse_code`].
pub fn serialize_code(code: &Code) -> String {
    let a = code.alphabet();
    let mut s = String::new();
    writeln!(s, "alphabet {}", a.symbols().join(" ")).unwrap();
    for (name, f) in code.names().iter().zip(code.figures()) {
        writeln!(s, "\nfigure {name}").unwrap();
        writeln!(s, "begin {} {}", f.begin().x, f.begin().y).unwrap();
        writeln!(s, "end {} {}", f.end().x, f.end().y).unwrap();
        for &(p, l) in f.cells() {
            writeln!(s, "cell {} {} {}", p.x, p.y, a.symbol(l)).unwrap();
        }
    }
    if let Some(m) = code.merge() {
        s.push('\n');
        for x in 0..a.len() as Label {
            for y in 0..a.len() as Label {
                writeln!(s, "merge {} {} -> {}", a.symbol(x), a.symbol(y), a.symbol(m.apply(x, y))).unwrap();
            }
        }
    }
    s
}

/// Parses a PCP instance: `alphabet` with single-character letters, `pairs k`, then
/// `k` lines `X_WORD Y_WORD`.
pub fn parse_pcp(text: &str) -> Result<Instance> {
    let mut letters: Option<Vec<String>> = None;
    let mut expected: Option<(usize, usize)> = None;
    let mut pairs = Vec::new();
    let mut last_line = 0;
    for (line, toks) in lines(text) {
        last_line = line;
        match (toks[0], &letters, expected) {
            ("alphabet", None, _) => {
                if toks.len() < 2 {
                    return Err(Error::parse(line, "empty alphabet"));
                }
                if let Some(t) = toks[1..].iter().find(|t| t.chars().count() != 1) {
                    return Err(Error::parse(line, format!("PCP letters are single characters, got {t:?}")));
                }
                letters = Some(toks[1..].iter().map(|t| t.to_string()).collect());
            }
            ("alphabet", Some(_), _) => return Err(Error::parse(line, "alphabet declared twice")),
            ("pairs", Some(_), None) => {
                arity(line, &toks, 2)?;
                let k: usize = toks[1].parse().map_err(|_| Error::parse(line, "expected a pair count"))?;
                expected = Some((line, k));
            }
            ("pairs", _, _) => return Err(Error::parse(line, "`pairs` must follow `alphabet`, once")),
            (_, Some(ls), Some((_, k))) => {
                if toks.len() != 2 {
                    return Err(Error::parse(line, "expected `X_WORD Y_WORD`"));
                }
                if pairs.len() == k {
                    return Err(Error::parse(line, format!("more than {k} pairs")));
                }
                let word = |w: &str| -> Result<Vec<usize>> {
                    w.chars()
                        .map(|c| {
                            ls.iter()
                                .position(|l| l.starts_with(c))
                                .ok_or_else(|| Error::parse(line, format!("letter {c:?} not in the alphabet")))
                        })
                        .collect()
                };
                pairs.push((line, word(toks[0])?, word(toks[1])?));
            }
            _ => return Err(Error::parse(line, format!("unexpected {:?}", toks[0]))),
        }
    }
    let letters = letters.ok_or_else(|| Error::parse(last_line.max(1), "missing `alphabet` line"))?;
    let (pline, k) = expected.ok_or_else(|| Error::parse(last_line.max(1), "missing `pairs` line"))?;
    if pairs.len() != k {
        return Err(Error::parse(pline, format!("declared {k} pairs, found {}", pairs.len())));
    }
    let lines_of: Vec<usize> = pairs.iter().map(|p| p.0).collect();
    Instance::new(letters, pairs.into_iter().map(|(_, x, y)| (x, y)).collect()).map_err(|e| {
        // point at the offending pair when the message names one
        let line = (1..=k)
            .find(|i| e.to_string().contains(&format!("pair {i} ")))
            .map_or(pline, |i| lines_of[i - 1]);
        Error::parse(line, e.to_string())
    })
}

pub fn serialize_pcp(inst: &Instance) -> String {
    let mut s = format!("alphabet {}\npairs {}\n", inst.letters().join(" "), inst.k());
    for (x, y) in inst.pairs() {
        writeln!(s, "{} {}", inst.word_string(x), inst.word_string(y)).unwrap();
    }
    s
}

/// Parses a witness file against the code whose figure names it uses.
pub fn parse_witness(text: &str, code: &Code) -> Result<(Mode, Vec<usize>, Vec<usize>)> {
    let mut header = false;
    let mut mode = None;
    let (mut left, mut right) = (None, None);
    let mut last_line = 0;
    for (line, toks) in lines(text) {
        last_line = line;
        let names = |toks: &[&str]| -> Result<Vec<usize>> {
            if toks.is_empty() {
                return Err(Error::parse(line, "empty factor sequence"));
            }
            toks.iter()
                .map(|n| code.index_of(n).ok_or_else(|| Error::parse(line, format!("unknown figure {n:?}"))))
                .collect()
        };
        match toks[0] {
            "witness" if !header => header = true,
            "mode" if header && mode.is_none() => {
                arity(line, &toks, 2)?;
                mode = Some(match toks[1] {
                    "plain" => Mode::Plain,
                    "merge" => Mode::Merge,
                    m => return Err(Error::parse(line, format!("unknown mode {m:?}"))),
                });
            }
            "left" if header && left.is_none() => left = Some(names(&toks[1..])?),
            "right" if header && right.is_none() => right = Some(names(&toks[1..])?),
            t => return Err(Error::parse(line, format!("unexpected {t:?}"))),
        }
    }
    let missing = |what: &str| Error::parse(last_line.max(1), format!("witness lacks `{what}`"));
    Ok((mode.ok_or_else(|| missing("mode"))?, left.ok_or_else(|| missing("left"))?, right.ok_or_else(|| missing("right"))?))
}

pub fn serialize_witness(w: &Witness, code: &Code, mode: Mode) -> String {
    let names = |s: &[usize]| s.iter().map(|&i| code.name(i)).collect::<Vec<_>>().join(" ");
    let mode = if mode == Mode::Plain { "plain" } else { "merge" };
    format!("witness\nmode {mode}\nleft {}\nright {}\n", names(&w.left), names(&w.right))
}
