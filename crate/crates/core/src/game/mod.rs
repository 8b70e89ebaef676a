//! Limitedness as a game: A plays input letters, B answers with sets of
//! transitions. B wins when every infinite run through its sets resets each
//! counter it increments infinitely often, and every prefix in the language
//! keeps an accepting run.

pub mod arena;
pub mod nba;
pub mod parity;
pub mod pump;
pub mod solve;
pub mod simulate;
pub mod solver;
pub mod spec;
pub mod strategy;

pub use arena::GameBudget;
pub use nba::{complement_condition_nba, lasso_accepts, BuchiAutomaton, ComplementConditionNba, Nba};
pub use parity::{determinize_to_parity, DetParityAutomaton, Determinizer};
pub use solve::{
    extracted_bound, solve_game, solve_limitedness, GameStats, LimitednessAnswer, Solved,
    UnlimitedCertificate,
};
pub use solver::{solve_parity, ParityGame, ParitySolution, Player};
pub use spec::{build_limitedness_game, Bound, GameSpec, PlayLetter, PlayerBLetter, TransitionSet};
pub use strategy::{FiniteMemoryStrategy, OpponentStrategy};
pub use pump::{pump_witness, pump_witness_for, pumped_values, search_witness, PumpWitness, PUMP_ROUNDS};
pub use simulate::{simulate_strategy_b, SimulationReport};
