//! Exact computation in the inverse semigroup of partial bijections generated by
//! the prefix maps `x ↦ ax` on a one-sided subshift.
//!
//! The subshift is given by a finite presentation (full shift, forbidden words,
//! or a labeled graph) and compiled into a minimal deterministic safety
//! automaton, which makes every set-level question decidable:
//!
//! * [`lang`]: compiled language model, eventually periodic points, acceptance
//!   profiles and predecessor sets.
//! * [`sets`]: the sets `C(F; v)` carrying the idempotents `E(F; v)`.
//! * [`semigroup`]: elements `s_α E(F; v) s_β*` in lowest terms, products,
//!   order, the free-group grading and bounded audits.
//! * [`spectrum`]: the finite quotients `ᵏX_l`, bonding maps and filters of
//!   idempotents relative to a finite universe.
//! * [`oracle`]: brute-force partial maps on a point sample, independent of
//!   the compiled automaton.

pub mod automaton;
pub mod error;
pub mod free_group;
pub mod lang;
pub mod literal;
pub mod oracle;
pub mod semigroup;
pub mod sets;
pub mod spectrum;
pub mod word;

pub use error::{Error, Result};
pub use free_group::FreeWord;
pub use lang::{LanguageModel, Point, Profile, ShiftKind, StateSet, SubshiftSpec};
pub use semigroup::Element;
pub use sets::{CanonSet, ConstraintSet};
pub use spectrum::{IndexPair, LevelClass, LevelSpace};
pub use word::{Alphabet, Letter, Word};
