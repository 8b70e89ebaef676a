use std::collections::HashSet;
use std::fmt;

use crate::alphabet::Symbol;
use crate::cost::{CostAutomaton, StateId, Valuation};
use crate::regex::Dfa;

use super::strategy::FiniteMemoryStrategy;

/// Outcome of replaying a word against a strategy of B.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimulationReport {
    Ok,
    /// `item` is 1 (wrong letter), 2 (bound exceeded) or 3 (no accepting
    /// run on a prefix in the language); `position` counts letters read.
    Violation {
        position: usize,
        item: u8,
        detail: String,
    },
}

impl SimulationReport {
    pub fn is_ok(&self) -> bool {
        *self == SimulationReport::Ok
    }
}

impl fmt::Display for SimulationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimulationReport::Ok => write!(f, "ok"),
            SimulationReport::Violation {
                position,
                item,
                detail,
            } => write!(f, "violation of item {item} at position {position}: {detail}"),
        }
    }
}

/// Plays `word` against `s` and checks the finite-bound winning condition at
/// every prefix. Runs are tracked as (state, valuation) pairs, so every run
/// through the chosen sets is covered.
pub fn simulate_strategy_b(
    s: &FiniteMemoryStrategy,
    a: &CostAutomaton,
    lang: &Dfa,
    word: &[Symbol],
    bound: u64,
) -> SimulationReport {
    let violation = |position, item, detail: String| SimulationReport::Violation {
        position,
        item,
        detail,
    };
    if s.alphabet != a.alphabet || lang.alphabet != a.alphabet {
        return violation(0, 1, "alphabets differ".into());
    }
    let deltas = s.play(word);
    let mut configs: HashSet<(StateId, Valuation)> = a
        .initial
        .iter()
        .map(|&q| (q, Valuation::zero(a.counters)))
        .collect();
    let mut lstate = lang.initial;
    for (i, (&x, delta)) in word.iter().zip(&deltas).enumerate() {
        let pos = i + 1;
        for t in delta.iter() {
            match a.transitions.get(t) {
                None => return violation(pos, 1, format!("t{t} does not exist")),
                Some(tr) if tr.letter != x => {
                    return violation(
                        pos,
                        1,
                        format!("t{t} reads {} instead of {}", a.alphabet.letter(tr.letter), a.alphabet.letter(x)),
                    )
                }
                _ => {}
            }
        }
        let mut next = HashSet::new();
        for (q, val) in &configs {
            for t in delta.iter() {
                let tr = &a.transitions[t];
                if tr.source != *q {
                    continue;
                }
                let mut v = val.clone();
                let peak = v.apply_all(&tr.actions) as u64;
                if peak > bound {
                    return violation(pos, 2, format!("a run reaches value {peak} > {bound}"));
                }
                next.insert((tr.target, v));
            }
        }
        configs = next;
        lstate = lang.step(lstate, x);
        if lang.is_final(lstate) && !configs.iter().any(|(q, _)| a.finals.contains(q)) {
            return violation(pos, 3, "prefix in the language has no accepting run".into());
        }
    }
    SimulationReport::Ok
}
