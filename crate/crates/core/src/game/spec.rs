use std::fmt;

use crate::alphabet::Symbol;
use crate::bitset::BitSet;
use crate::cost::{CostAutomaton, TransId};
use crate::error::{Error, Result};
use crate::regex::Dfa;

/// A set of transition ids.
pub type TransitionSet = BitSet;

/// One round of a play: A's input letter followed by B's set of transitions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlayLetter {
    pub input: Symbol,
    pub delta: TransitionSet,
}

/// A move of player B: a set of transitions, all reading `input`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlayerBLetter {
    pub input: Symbol,
    pub delta: TransitionSet,
}

impl From<PlayerBLetter> for PlayLetter {
    fn from(b: PlayerBLetter) -> Self {
        PlayLetter {
            input: b.input,
            delta: b.delta,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    Finite(u64),
    Infinite,
}

/// The limitedness game for a cost automaton over a language.
#[derive(Clone, Debug)]
pub struct GameSpec {
    pub automaton: CostAutomaton,
    pub language: Dfa,
    pub bound: Bound,
}

pub fn build_limitedness_game(a: &CostAutomaton, lang: &Dfa) -> Result<GameSpec> {
    a.check()?;
    if a.alphabet != lang.alphabet {
        return Err(Error::AlphabetMismatch {
            left: a.alphabet.to_string(),
            right: lang.alphabet.to_string(),
        });
    }
    Ok(GameSpec {
        automaton: a.clone(),
        language: lang.clone(),
        bound: Bound::Infinite,
    })
}

impl GameSpec {
    pub fn transitions_on(&self, a: Symbol) -> Vec<TransId> {
        self.automaton.transitions_on(a).collect()
    }

    /// Number of moves available to B after A plays `a`.
    pub fn player_b_letter_count(&self, a: Symbol) -> u128 {
        1u128 << self.transitions_on(a).len()
    }

    /// Every move of B after A plays `a`.
    pub fn player_b_letters(&self, a: Symbol) -> impl Iterator<Item = PlayerBLetter> {
        subsets(self.transitions_on(a)).map(move |delta| PlayerBLetter { input: a, delta })
    }
}

/// All subsets of `items`, the empty set first.
pub fn subsets(items: Vec<usize>) -> impl Iterator<Item = BitSet> {
    assert!(items.len() < 64, "too many items to enumerate subsets");
    (0..1u64 << items.len()).map(move |mask| {
        items
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &t)| t)
            .collect()
    })
}

/// Formats a transition set as `{t0,t3}`.
pub struct DeltaDisplay<'a>(pub &'a TransitionSet);

impl fmt::Display for DeltaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(|t| format!("t{t}")).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}
