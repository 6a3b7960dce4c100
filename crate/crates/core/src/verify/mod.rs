//! Verifiers for the four decipherability notions.
//!
//! [`check`] picks a procedure from the code's geometry:
//!
//! | geometry | plain catenation | merging catenation |
//! |---|---|---|
//! | one-sided | exact state search | exact state search |
//! | two-sided, parallel | exact stripe sweep | power witness (SD: refused) |
//! | two-sided, all zero | exact subset check | power witness (SD: refused) |
//! | two-sided, general | bounded oracle only | power witness (SD: refused) |

mod allzero;
mod graph;
mod merge_witness;
pub mod onesided;
pub mod parallel;

use std::fmt;

use crate::code::Code;
use crate::error::Result;
use crate::figure::Mode;
use crate::geometry::CodeGeometry;
use crate::oracle::first_violation;
use crate::par::Exec;
use crate::witness::{Kind, Witness};

pub use merge_witness::{power_witness, PowerWitness};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    IsCode,
    NotCode(Witness),
    /// No decision; the string says why.
    Inconclusive(String),
}

impl Verdict {
    pub fn word(&self) -> &'static str {
        match self {
            Verdict::IsCode => "IsCode",
            Verdict::NotCode(_) => "NotCode",
            Verdict::Inconclusive(_) => "Inconclusive",
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::NotCode(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    /// Upper bound on explored states before giving up with `Inconclusive`.
    pub max_states: usize,
    /// Sequence length bound for the brute-force fallback on undecidable inputs.
    pub oracle_len: usize,
    pub exec: Exec,
}

impl Default for Options {
    fn default() -> Self {
        Options { max_states: 500_000, oracle_len: 6, exec: Exec::default() }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub states: usize,
    pub edges: usize,
    pub starts: usize,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub kind: Kind,
    pub mode: Mode,
    pub geometry: CodeGeometry,
    pub verdict: Verdict,
    /// Name of the procedure that produced the verdict.
    pub method: &'static str,
    pub stats: SearchStats,
    pub note: Option<String>,
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "geometry: {}", self.geometry)?;
        writeln!(f, "method: {}", self.method)?;
        write!(f, "{} ({}): {}", self.kind, if self.mode == Mode::Plain { "plain" } else { "merge" }, self.verdict.word())?;
        if let Verdict::Inconclusive(why) = &self.verdict {
            write!(f, " ({why})")?;
        }
        if let Some(n) = &self.note {
            write!(f, "\nnote: {n}")?;
        }
        Ok(())
    }
}

/// Decides whether `code` is a code of the given kind under the given catenation.
pub fn check(code: &Code, kind: Kind, mode: Mode, opts: &Options) -> Result<Report> {
    let geometry = code.geometry();
    let m = code.table_for(mode)?;
    let report = |verdict, method, stats, note: Option<String>| Report {
        kind,
        mode,
        geometry: geometry.clone(),
        verdict,
        method,
        stats,
        note,
    };
    match (&geometry, mode) {
        (CodeGeometry::OneSided { .. }, _) => {
            let (v, s) = onesided::decide(code, kind, mode, opts)?;
            Ok(report(v, "one-sided state search", s, None))
        }
        (_, Mode::Merge) => {
            if kind == Kind::Sd {
                return Ok(report(
                    Verdict::Inconclusive("open problem".into()),
                    "none",
                    SearchStats::default(),
                    Some("SD for two-sided codes under merging catenation is an open problem".into()),
                ));
            }
            let pw = power_witness(code, m.expect("merge mode has a table"))?;
            Ok(report(Verdict::NotCode(pw.witness), "power witness", SearchStats::default(), None))
        }
        (CodeGeometry::TwoSidedParallel { .. }, Mode::Plain) => {
            let (v, s) = parallel::decide(code, kind, opts)?;
            Ok(report(v, "parallel stripe sweep", s, None))
        }
        (CodeGeometry::AllZero, Mode::Plain) => {
            let (v, s) = allzero::decide(code, kind, opts)?;
            Ok(report(v, "zero-translation subset check", s, None))
        }
        (CodeGeometry::TwoSidedGeneral { .. }, Mode::Plain) => {
            let figs = code.normalized();
            let found = first_violation(&figs, kind, mode, None, opts.oracle_len, opts.exec)?;
            let note = Some("decipherability of two-sided codes is undecidable in general".to_string());
            let v = match found {
                Some(w) => Verdict::NotCode(w),
                None => Verdict::Inconclusive(format!("no violation up to {} factors", opts.oracle_len)),
            };
            Ok(report(v, "bounded oracle", SearchStats::default(), note))
        }
    }
}
