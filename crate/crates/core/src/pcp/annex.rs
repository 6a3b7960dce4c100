//! Catalogue of the single-square annex figures, one row per drawn square.
//!
//! Hooks are listed north, east, south, west. `z` stands for the part letter (`x` or
//! `y`) and `i` for the pair index; the name template is expanded with both.

use super::{Side, Side::*};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(super) enum Slot {
    /// `z_i`: carries the index of the pair.
    Word,
    /// `z`: no information.
    Part,
    /// `e_{z_i}`: index of the last pair.
    EndWord,
    /// `e`: outer boundary.
    End,
    /// `b_z`: western border column.
    Border,
    /// `I_i`: western boundary of the row of pair `i`.
    Row,
}

use Slot::*;

pub(super) struct Annex {
    pub name: &'static str,
    pub hooks: [Slot; 4],
    pub begin: Side,
    pub end: Side,
    /// Rows without an index exist once per part.
    pub indexed: bool,
}

const fn row(name: &'static str, hooks: [Slot; 4], begin: Side, end: Side) -> Annex {
    Annex { name, hooks, begin, end, indexed: true }
}

pub(super) const ANNEX: [Annex; 18] = [
    row("Mz[i,N.S]^W_E", [Word, Part, Word, Part], W, E),
    row("Mz[i,N.S]^E_W", [Word, Part, Word, Part], E, W),
    row("Ez[i,N.S]^N_W", [EndWord, End, EndWord, Part], N, W),
    row("Ez[i,N.S]^W_S", [EndWord, End, EndWord, Part], W, S),
    row("Mz[i,N.W]^W_E", [Word, Part, Part, Word], W, E),
    row("Mz[i,N.W]^E_W", [Word, Part, Part, Word], E, W),
    row("Ez[i,N.W]^N_W", [EndWord, End, End, EndWord], N, W),
    row("Ez[i,N.W]^W_S", [EndWord, End, End, EndWord], W, S),
    row("Mz[i,E.W]^W_E", [Part, Word, Part, Word], W, E),
    row("Mz[i,E.W]^E_W", [Part, Word, Part, Word], E, W),
    row("Ez[i,E.W]^W_E", [Part, EndWord, End, EndWord], W, E),
    row("Ez[i,E.W]^E_W", [Part, EndWord, End, EndWord], E, W),
    row("BMz[i,E.W]^E_S", [Border, Word, Border, Row], E, S),
    row("BMz[i,E.W]^N_E", [Border, Word, Border, Row], N, E),
    row("BEz[i,E.W]^E_S", [Border, EndWord, End, Row], E, S),
    row("BEz[i,E.W]^N_E", [Border, EndWord, End, Row], N, E),
    Annex { name: "Nz[]^W_E", hooks: [Part, Part, Part, Part], begin: W, end: E, indexed: false },
    Annex { name: "Nz[]^E_W", hooks: [Part, Part, Part, Part], begin: E, end: W, indexed: false },
];

/// Expands a name template for part `z` and 1-based pair index `i`.
pub(super) fn name(template: &str, z: char, i: usize) -> String {
    template.replacen('z', &z.to_string(), 1).replacen("[i,", &format!("[{i},"), 1)
}
