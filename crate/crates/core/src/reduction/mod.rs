//! From star height to limitedness: for a language `L` and height `h`, a
//! cost automaton that is limited over `L` exactly when `L` has star height
//! at most `h`.

pub mod expr;
pub mod height;
pub mod oracle;
pub mod reconstruct;
pub mod decide;

pub use expr::{Block, StringExpression};
pub use height::{build_height_automaton, counters_for_height, HeightAutomata};
pub use oracle::{subset_language_member_oracle, Oracle, SubsetLanguage};
pub use reconstruct::string_expression_reconstruct;
pub use decide::{
    is_star_height_at_most, star_height, HeightVerdict, StarHeightBudget, StarHeightReport,
};
