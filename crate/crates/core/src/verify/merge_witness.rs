//! For a two-sided code under merging catenation, a vanishing combination of
//! translation vectors gives a figure `x` with a fixed domain; its powers take finitely
//! many values, so two of them coincide.

use crate::alphabet::MergeTable;
use crate::code::Code;
use crate::error::{Error, Result};
use crate::figure::{catenate_sequence, Figure, Mode};
use crate::geometry::{zero_combination, CodeGeometry};
use crate::oracle::power_collision;
use crate::witness::Witness;

/// Powers tried before giving up; the pigeonhole bound is usually far smaller.
const MAX_POWER: usize = 1 << 20;

#[derive(Clone, Debug)]
pub struct PowerWitness {
    pub alpha: Vec<u64>,
    /// The block `x_1^{a_1} ... x_n^{a_n}` as factor indices.
    pub block: Vec<usize>,
    pub x: Figure,
    pub p: usize,
    pub q: usize,
    /// `block^p` against `block^q`.
    pub witness: Witness,
}

/// Builds the witness for a two-sided code; `m` must be associative.
pub fn power_witness(code: &Code, m: &MergeTable) -> Result<PowerWitness> {
    let figs = code.normalized();
    let deltas: Vec<_> = figs.iter().map(Figure::delta).collect();
    let alpha = match code.geometry() {
        CodeGeometry::OneSided { .. } => return Err(Error::pre("code is one-sided")),
        CodeGeometry::TwoSidedGeneral { alpha } => alpha,
        _ => zero_combination(&deltas).expect("two-sided"),
    };
    let block: Vec<usize> =
        alpha.iter().enumerate().flat_map(|(i, &a)| std::iter::repeat_n(i, a as usize)).collect();
    let x = catenate_sequence(block.iter().map(|&i| &figs[i]), Mode::Merge, Some(m))?.expect("merging is total");
    let (p, q) = power_collision(&x, m, MAX_POWER)?
        .ok_or_else(|| Error::pre(format!("no repeated power of the block within {MAX_POWER} powers")))?;
    let left = block.repeat(p);
    let right = block.repeat(q);
    let witness = Witness::from_sequences(&figs, left, right, Mode::Merge, Some(m))?;
    Ok(PowerWitness { alpha, block, x, p, q, witness })
}
