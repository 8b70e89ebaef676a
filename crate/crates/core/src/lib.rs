//! Star height of regular languages, decided through limitedness of cost
//! automata and a game with an ω-regular winning condition.

pub mod alphabet;
pub mod bitset;
pub mod cost;
pub mod dot;
pub mod error;
mod format;
pub mod game;
pub mod graph;
pub mod reduction;
pub mod regex;
pub mod scoring;

pub use alphabet::{Alphabet, Symbol, Word};
pub use error::{Error, Result};
pub use format::header_of;
