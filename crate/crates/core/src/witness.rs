use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::alphabet::MergeTable;
use crate::error::{Error, Result};
use crate::figure::{catenate_sequence, Figure, Mode};

/// The four decipherability notions, from strongest to weakest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    /// Equal catenations force equal factor sequences.
    Ud,
    /// Equal catenations force equal factor multisets.
    Msd,
    /// Equal catenations force equal factor sets.
    Sd,
    /// Equal catenations force equal factor counts.
    Nd,
}

impl Kind {
    pub const ALL: [Kind; 4] = [Kind::Ud, Kind::Msd, Kind::Sd, Kind::Nd];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Ud => "UD",
            Kind::Msd => "MSD",
            Kind::Sd => "SD",
            Kind::Nd => "ND",
        }
    }

    /// Does a pair of factorizations with these factor sequences violate this notion?
    pub fn violated_by(self, left: &[usize], right: &[usize]) -> bool {
        match self {
            Kind::Ud => left != right,
            Kind::Msd => {
                let (mut a, mut b) = (left.to_vec(), right.to_vec());
                a.sort_unstable();
                b.sort_unstable();
                a != b
            }
            Kind::Sd => {
                left.iter().collect::<BTreeSet<_>>() != right.iter().collect::<BTreeSet<_>>()
            }
            Kind::Nd => left.len() != right.len(),
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Kind> {
        match s.to_ascii_lowercase().as_str() {
            "ud" => Ok(Kind::Ud),
            "msd" => Ok(Kind::Msd),
            "sd" => Ok(Kind::Sd),
            "nd" => Ok(Kind::Nd),
            _ => Err(Error::pre(format!("unknown decipherability kind {s:?}"))),
        }
    }
}

/// Two distinct factor sequences with equal catenation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    /// The common catenation, begin at the origin.
    pub result: Figure,
}

impl Witness {
    pub fn new(left: Vec<usize>, right: Vec<usize>, result: Figure) -> Self {
        Witness { left, right, result: result.normalize() }
    }

    /// Builds a witness by catenating both sides; fails unless they agree.
    pub fn from_sequences(
        figs: &[Figure],
        left: Vec<usize>,
        right: Vec<usize>,
        mode: Mode,
        m: Option<&MergeTable>,
    ) -> Result<Self> {
        let w = Witness { left, right, result: Figure::empty() };
        let r = w.recompute(figs, mode, m)?;
        Ok(Witness { result: r, ..w })
    }

    pub fn violates(&self, k: Kind) -> bool {
        k.violated_by(&self.left, &self.right)
    }

    pub fn violated(&self) -> Vec<Kind> {
        Kind::ALL.into_iter().filter(|k| self.violates(*k)).collect()
    }

    fn side(figs: &[Figure], seq: &[usize], mode: Mode, m: Option<&MergeTable>) -> Result<Figure> {
        if seq.iter().any(|&i| i >= figs.len()) {
            return Err(Error::pre("factor index out of range"));
        }
        catenate_sequence(seq.iter().map(|&i| &figs[i]), mode, m)?
            .map(|f| f.normalize())
            .ok_or_else(|| Error::pre("catenation undefined"))
    }

    /// Recomputes both catenations and returns the common figure.
    pub fn recompute(&self, figs: &[Figure], mode: Mode, m: Option<&MergeTable>) -> Result<Figure> {
        if self.left == self.right {
            return Err(Error::pre("witness sides are identical"));
        }
        let a = Self::side(figs, &self.left, mode, m)?;
        let b = Self::side(figs, &self.right, mode, m)?;
        if a != b {
            return Err(Error::pre("witness sides catenate to different figures"));
        }
        Ok(a)
    }

    /// Does the witness re-validate against `figs` and match its stored result?
    pub fn validate(&self, figs: &[Figure], mode: Mode, m: Option<&MergeTable>) -> bool {
        matches!(self.recompute(figs, mode, m), Ok(r) if r == self.result)
    }
}
