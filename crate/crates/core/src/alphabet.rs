use std::collections::HashMap;

use crate::error::{Error, Result};

/// Interned label id; an index into an [`Alphabet`].
pub type Label = u16;

/// Finite symbol table shared by all figures of a code.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, Label>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut a = Alphabet::default();
        for s in symbols {
            a.insert(s.into())?;
        }
        if a.symbols.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        Ok(a)
    }

    fn insert(&mut self, s: String) -> Result<Label> {
        if s.is_empty() || s.chars().any(char::is_whitespace) {
            return Err(Error::BadSymbol(s));
        }
        if self.index.contains_key(&s) {
            return Err(Error::DuplicateSymbol(s));
        }
        let id = Label::try_from(self.symbols.len()).map_err(|_| Error::AlphabetTooLarge)?;
        self.index.insert(s.clone(), id);
        self.symbols.push(s);
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn id(&self, s: &str) -> Option<Label> {
        self.index.get(s).copied()
    }

    pub fn lookup(&self, s: &str) -> Result<Label> {
        self.id(s).ok_or_else(|| Error::UnknownSymbol(s.to_string()))
    }

    pub fn symbol(&self, l: Label) -> &str {
        &self.symbols[l as usize]
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn contains(&self, l: Label) -> bool {
        (l as usize) < self.symbols.len()
    }
}

/// A total binary operation on an alphabet, used to resolve overlapping cells.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MergeTable {
    n: usize,
    table: Vec<Label>,
}

impl MergeTable {
    /// Builds a table from a row-major `n x n` array.
    pub fn from_rows(n: usize, table: Vec<Label>) -> Result<Self> {
        if n == 0 || table.len() != n * n {
            return Err(Error::PartialMergeTable);
        }
        if table.iter().any(|&l| l as usize >= n) {
            return Err(Error::AlphabetMismatch);
        }
        Ok(MergeTable { n, table })
    }

    pub fn from_fn(n: usize, f: impl Fn(Label, Label) -> Label) -> Result<Self> {
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(f(a as Label, b as Label));
            }
        }
        Self::from_rows(n, table)
    }

    /// Keeps the label already present.
    pub fn first(n: usize) -> Self {
        Self::from_fn(n, |a, _| a).expect("n > 0")
    }

    /// Overwrites with the incoming label.
    pub fn second(n: usize) -> Self {
        Self::from_fn(n, |_, b| b).expect("n > 0")
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn apply(&self, a: Label, b: Label) -> Label {
        self.table[a as usize * self.n + b as usize]
    }

    pub fn rows(&self) -> &[Label] {
        &self.table
    }

    /// Returns the first triple violating associativity, if any.
    pub fn associativity_counterexample(&self) -> Option<(Label, Label, Label)> {
        let n = self.n as Label;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.apply(self.apply(a, b), c) != self.apply(a, self.apply(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_counterexample().is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning() {
        let a = Alphabet::new(["a", "b"]).unwrap();
        assert_eq!(a.id("b"), Some(1));
        assert_eq!(a.symbol(0), "a");
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
    }

    #[test]
    fn projections_are_associative() {
        assert!(MergeTable::first(3).is_associative());
        assert!(MergeTable::second(3).is_associative());
    }

    #[test]
    fn nand_like_table_is_not_associative() {
        // a = 0, b = 1; m(x, y) = b unless x = y = b.
        let m = MergeTable::from_rows(2, vec![1, 1, 1, 0]).unwrap();
        assert_eq!(m.associativity_counterexample(), Some((0, 0, 1)));
    }
}
