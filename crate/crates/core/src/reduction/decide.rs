use crate::error::{Error, Result};
use crate::game::{solve_limitedness, GameBudget, GameStats};
use crate::regex::Language;

use super::height::HeightAutomata;

/// Limits for one star-height computation.
#[derive(Clone, Debug)]
pub struct StarHeightBudget {
    pub monoid: usize,
    pub height_states: usize,
    pub game: GameBudget,
}

impl Default for StarHeightBudget {
    fn default() -> Self {
        StarHeightBudget {
            monoid: 64,
            height_states: 100_000,
            game: GameBudget::default(),
        }
    }
}

/// Outcome of the limitedness check for one height.
#[derive(Clone, Debug)]
pub struct HeightVerdict {
    pub height: usize,
    pub limited: bool,
    pub automaton_states: usize,
    pub automaton_transitions: usize,
    pub counters: usize,
    pub game: GameStats,
}

#[derive(Clone, Debug)]
pub struct StarHeightReport {
    pub star_height: usize,
    pub cycle_rank_cap: usize,
    pub monoid_size: usize,
    pub verdicts: Vec<HeightVerdict>,
}

/// Whether `lang` has star height at most `h`: the height automaton for the
/// accepting set is limited over `lang`.
pub fn is_star_height_at_most(
    lang: &Language,
    h: usize,
    budget: &StarHeightBudget,
) -> Result<HeightVerdict> {
    let monoid = lang.monoid(budget.monoid)?;
    let mut builder = HeightAutomata::new(&monoid, lang.alphabet(), budget.height_states);
    verdict_at(&mut builder, lang, h, budget)
}

fn verdict_at(
    builder: &mut HeightAutomata<'_>,
    lang: &Language,
    h: usize,
    budget: &StarHeightBudget,
) -> Result<HeightVerdict> {
    let set = builder.monoid().accepting_set();
    let a = builder.build(set, h)?;
    let solved = solve_limitedness(&a, &lang.dfa, &budget.game)?;
    Ok(HeightVerdict {
        height: h,
        limited: solved.answer.is_limited(),
        automaton_states: a.state_count(),
        automaton_transitions: a.transitions.len(),
        counters: a.counters,
        game: solved.stats,
    })
}

/// The least `h` for which the height automaton is limited. The search stops
/// at the cycle rank of the minimal automaton, which bounds the answer.
pub fn star_height(lang: &Language, budget: &StarHeightBudget) -> Result<StarHeightReport> {
    let monoid = lang.monoid(budget.monoid)?;
    let cap = lang.cycle_rank_cap();
    let mut builder = HeightAutomata::new(&monoid, lang.alphabet(), budget.height_states);
    let mut verdicts = Vec::new();
    for h in 0..=cap {
        let v = verdict_at(&mut builder, lang, h, budget)?;
        let limited = v.limited;
        verdicts.push(v);
        if limited {
            return Ok(StarHeightReport {
                star_height: h,
                cycle_rank_cap: cap,
                monoid_size: monoid.size(),
                verdicts,
            });
        }
    }
    Err(Error::Internal(format!(
        "no height up to the cycle rank {cap} was found limited"
    )))
}
