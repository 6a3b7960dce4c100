//! Directed figures: labelled grid shapes with a begin and an end point, glued
//! end-to-begin by plain or merging catenation, and decision procedures for the
//! unique, multiset, set and numeric decipherability of finite figure codes.

pub mod alphabet;
pub mod code;
pub mod error;
pub mod figure;
pub mod format;
pub mod geometry;
pub mod oracle;
pub mod par;
pub mod pcp;
pub mod point;
pub mod render;
pub mod verify;
pub mod witness;

pub use alphabet::{Alphabet, Label, MergeTable};
pub use code::Code;
pub use error::{Error, Result};
pub use figure::{catenate_sequence, Figure, Mode};
pub use geometry::CodeGeometry;
pub use par::Exec;
pub use point::{Point, Vector, ORIGIN};
pub use verify::{check, Options, Report, Verdict};
pub use witness::{Kind, Witness};
