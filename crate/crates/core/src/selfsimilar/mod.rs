//! Self-similar groups presented by Mealy automata: wreath actions and
//! restrictions, the bounded contracting test with nucleus extraction, the
//! regularity decision, and finite-level tile approximations of the limit
//! space with the induced shift.

pub mod automaton;
pub mod nucleus;
pub mod presets;
pub mod tiles;

pub use automaton::{AutomatonSpec, GroupElement, MealyAutomaton, RawState};
pub use nucleus::{is_regular, nucleus, Nucleus, NucleusResult, Regularity};
pub use tiles::{limit_space, TileComplex};
