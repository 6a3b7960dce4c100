use crate::alphabet::{Alphabet, MergeTable};
use crate::error::{Error, Result};
use crate::figure::{require_associative, Figure, Mode};
use crate::geometry::{classify, CodeGeometry};

/// A finite set of named, non-empty figures over one alphabet, with an optional merge table.
///
/// Figures keep the coordinates they were given; the decision procedures work on
/// [`Code::normalized`] copies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Code {
    alphabet: Alphabet,
    names: Vec<String>,
    figures: Vec<Figure>,
    merge: Option<MergeTable>,
}

impl Code {
    pub fn new(alphabet: Alphabet, named: Vec<(String, Figure)>, merge: Option<MergeTable>) -> Result<Self> {
        if named.is_empty() {
            return Err(Error::EmptyCode);
        }
        let (names, figures): (Vec<_>, Vec<_>) = named.into_iter().unzip();
        for (i, f) in figures.iter().enumerate() {
            if f.is_empty() {
                return Err(Error::EmptyFigureInCode(i));
            }
            if f.cells().is_empty() {
                return Err(Error::EmptyDomain(i));
            }
            if f.cells().iter().any(|c| !alphabet.contains(c.1)) {
                return Err(Error::AlphabetMismatch);
            }
        }
        for i in 0..names.len() {
            for j in i + 1..names.len() {
                if names[i] == names[j] {
                    return Err(Error::pre(format!("figure name {:?} used twice", names[i])));
                }
                if figures[i].same_shape(&figures[j]) {
                    return Err(Error::pre(format!(
                        "figures {:?} and {:?} are equal up to translation",
                        names[i], names[j]
                    )));
                }
            }
        }
        if let Some(m) = &merge {
            if m.size() != alphabet.len() {
                return Err(Error::PartialMergeTable);
            }
        }
        Ok(Code { alphabet, names, figures, merge })
    }

    /// Convenience constructor naming figures `x1, x2, ...`.
    pub fn from_figures(alphabet: Alphabet, figures: Vec<Figure>) -> Result<Self> {
        let named = figures.into_iter().enumerate().map(|(i, f)| (format!("x{}", i + 1), f)).collect();
        Code::new(alphabet, named, None)
    }

    pub fn with_merge(mut self, m: MergeTable) -> Result<Self> {
        if m.size() != self.alphabet.len() {
            return Err(Error::PartialMergeTable);
        }
        self.merge = Some(m);
        Ok(self)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn figures(&self) -> &[Figure] {
        &self.figures
    }

    pub fn len(&self) -> usize {
        self.figures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.figures.is_empty()
    }

    pub fn merge(&self) -> Option<&MergeTable> {
        self.merge.as_ref()
    }

    pub fn normalized(&self) -> Vec<Figure> {
        self.figures.iter().map(Figure::normalize).collect()
    }

    pub fn geometry(&self) -> CodeGeometry {
        classify(&self.figures).expect("validated on construction")
    }

    /// The merge table to use in `mode`, checked for associativity.
    pub fn table_for(&self, mode: Mode) -> Result<Option<&MergeTable>> {
        match mode {
            Mode::Plain => Ok(None),
            Mode::Merge => {
                let m = self.merge.as_ref().ok_or(Error::MissingMergeTable)?;
                require_associative(m)?;
                Ok(Some(m))
            }
        }
    }
}
