use indexmap::IndexSet;

use crate::cost::{CostAutomaton, TransId};
use crate::error::{Error, Result};
use crate::regex::Dfa;

use super::arena::{build_arena, Arena, GameBudget, Vertex};
use super::nba::{Nba, RunGuessNba, SafetyTracker};
use super::solver::{solve_parity, ParitySolution, Player};
use super::spec::{build_limitedness_game, GameSpec, TransitionSet};
use super::strategy::{FiniteMemoryStrategy, OpponentStrategy};

/// Sizes of the intermediate objects, for reporting.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GameStats {
    pub automaton_states: usize,
    pub automaton_transitions: usize,
    pub nba_states: usize,
    pub parity_states: usize,
    pub arena_vertices: usize,
    pub priorities: usize,
}

#[derive(Clone, Debug)]
pub enum UnlimitedCertificate {
    /// A winning strategy for A in the game.
    Strategy(OpponentStrategy),
    /// The empty word is in the language but has no accepting run.
    EmptyWord,
}

#[derive(Clone, Debug)]
pub enum LimitednessAnswer {
    Limited {
        strategy: FiniteMemoryStrategy,
        bound: u64,
    },
    Unlimited {
        certificate: UnlimitedCertificate,
    },
}

impl LimitednessAnswer {
    pub fn is_limited(&self) -> bool {
        matches!(self, LimitednessAnswer::Limited { .. })
    }
}

#[derive(Clone, Debug)]
pub struct Solved {
    pub answer: LimitednessAnswer,
    pub stats: GameStats,
}

/// `|Q| × |ℬ|` for a limited answer.
pub fn extracted_bound(answer: &LimitednessAnswer, a: &CostAutomaton) -> Result<u64> {
    match answer {
        LimitednessAnswer::Limited { strategy, .. } => {
            Ok(a.state_count() as u64 * strategy.state_count() as u64)
        }
        LimitednessAnswer::Unlimited { .. } => Err(Error::Precondition(
            "no bound can be extracted from an unlimited answer".into(),
        )),
    }
}

/// Decides limitedness, handling the empty word outside the game.
pub fn solve_limitedness(a: &CostAutomaton, lang: &Dfa, budget: &GameBudget) -> Result<Solved> {
    let g = build_limitedness_game(a, lang)?;
    if lang.is_final(lang.initial) && !a.initial.iter().any(|q| a.finals.contains(q)) {
        return Ok(Solved {
            answer: LimitednessAnswer::Unlimited {
                certificate: UnlimitedCertificate::EmptyWord,
            },
            stats: GameStats {
                automaton_states: a.state_count(),
                automaton_transitions: a.transitions.len(),
                ..Default::default()
            },
        });
    }
    solve_game(&g, budget)
}

/// Solves the game with bound infinity. Transition ids in the returned
/// strategies refer to `g.automaton`.
pub fn solve_game(g: &GameSpec, budget: &GameBudget) -> Result<Solved> {
    if g.automaton.alphabet.is_empty() {
        return Err(Error::Precondition("the alphabet is empty".into()));
    }
    let (trimmed, origin) = g.automaton.trimmed_with_map();
    let safety = SafetyTracker::new(&trimmed, &g.language);
    let guesser = RunGuessNba::new(&trimmed);
    let mut arena = build_arena(&trimmed, &safety, &guesser, budget)?;
    arena.game.compress_priorities();
    let sol = solve_parity(&arena.game);
    let stats = GameStats {
        automaton_states: trimmed.state_count(),
        automaton_transitions: trimmed.transitions.len(),
        nba_states: guesser.state_count(),
        parity_states: arena.parity_states,
        arena_vertices: arena.vertices.len(),
        priorities: arena.game.distinct_priorities(),
    };
    let answer = match sol.winner[arena.initial] {
        Player::Even => {
            let strategy = b_strategy(&arena, &sol, &origin, g)?.minimize();
            let bound = g.automaton.state_count() as u64 * strategy.state_count() as u64;
            LimitednessAnswer::Limited { strategy, bound }
        }
        Player::Odd => LimitednessAnswer::Unlimited {
            certificate: UnlimitedCertificate::Strategy(a_strategy(&arena, &sol, &origin)?),
        },
    };
    Ok(Solved { answer, stats })
}

fn b_strategy(
    arena: &Arena,
    sol: &ParitySolution,
    origin: &[TransId],
    g: &GameSpec,
) -> Result<FiniteMemoryStrategy> {
    let alphabet = g.automaton.alphabet.clone();
    // memory 0 is the start; the others are B vertices
    let mut mem: IndexSet<usize> = IndexSet::new();
    mem.insert(usize::MAX);
    let mut trans: Vec<Vec<usize>> = Vec::new();
    let mut out: Vec<TransitionSet> = Vec::new();
    let mut i = 0;
    while i < mem.len() {
        let u = mem[i];
        let (from, delta) = if u == usize::MAX {
            (arena.initial, TransitionSet::new())
        } else {
            let v = sol.strategy[u]
                .ok_or_else(|| Error::Internal("B vertex without a winning move".into()))?;
            if !matches!(arena.vertices[v], Vertex::A { .. }) {
                return Err(Error::Internal("winning move leads to the sink".into()));
            }
            let delta = arena
                .delta_for(u, v)
                .expect("strategy follows an arena edge")
                .iter()
                .map(|t| origin[t])
                .collect();
            (v, delta)
        };
        let row = alphabet
            .symbols()
            .map(|x| mem.insert_full(arena.after_letter(from, x)).0)
            .collect();
        trans.push(row);
        out.push(delta);
        i += 1;
    }
    Ok(FiniteMemoryStrategy {
        alphabet,
        states: (0..mem.len()).map(|i| format!("m{i}")).collect(),
        initial: 0,
        trans,
        out,
    })
}

fn a_strategy(arena: &Arena, sol: &ParitySolution, origin: &[TransId]) -> Result<OpponentStrategy> {
    let mut mem: IndexSet<usize> = IndexSet::new();
    mem.insert(arena.initial);
    let mut letter = Vec::new();
    let mut options = Vec::new();
    let mut next = Vec::new();
    let mut i = 0;
    while i < mem.len() {
        let v = mem[i];
        let u = sol.strategy[v]
            .ok_or_else(|| Error::Internal("A vertex without a winning move".into()))?;
        let Vertex::B { a, .. } = arena.vertices[u] else {
            return Err(Error::Internal("A move does not lead to a B vertex".into()));
        };
        letter.push(a);
        options.push(arena.options[u].iter().map(|&(t, q)| (origin[t], q)).collect());
        let row = arena.moves[u]
            .iter()
            .map(|(d, t)| {
                let d: TransitionSet = d.iter().map(|t| origin[t]).collect();
                let m = match arena.vertices[*t] {
                    Vertex::Sink => None,
                    _ => Some(mem.insert_full(*t).0),
                };
                (d, m)
            })
            .collect();
        next.push(row);
        i += 1;
    }
    Ok(OpponentStrategy {
        letter,
        options,
        next,
        initial: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::cost::fixtures::*;
    use crate::regex::Language;

    fn verdict(a: &CostAutomaton, re: &str) -> bool {
        let l = Language::parse_regex(re, &Alphabet::new(['a', 'b']).unwrap()).unwrap();
        solve_limitedness(a, &l.dfa, &GameBudget::default())
            .unwrap()
            .answer
            .is_limited()
    }

    #[test]
    fn fixture_matrix() {
        let expect = [
            ("ex1", [false, true, false, true]),
            ("ex2", [false, false, false, false]),
            ("ex3", [false, true, false, true]),
        ];
        let langs = ["a*", "(ab)*", "(a+b)*", "b*"];
        for ((name, a), (ename, row)) in all().iter().zip(expect) {
            assert_eq!(*name, ename);
            for (re, want) in langs.iter().zip(row) {
                assert_eq!(verdict(a, re), want, "{name} over {re}");
            }
        }
    }

    #[test]
    fn bound_is_states_times_memory() {
        let l = Language::parse_regex("(ab)*", &Alphabet::new(['a', 'b']).unwrap()).unwrap();
        let a = example1();
        let s = solve_limitedness(&a, &l.dfa, &GameBudget::default()).unwrap();
        let LimitednessAnswer::Limited { strategy, bound } = &s.answer else {
            panic!("expected limited");
        };
        assert_eq!(*bound, strategy.state_count() as u64);
        assert_eq!(extracted_bound(&s.answer, &a).unwrap(), *bound);
    }

    #[test]
    fn no_bound_for_unlimited_answers() {
        let l = Language::parse_regex("a*", &Alphabet::new(['a', 'b']).unwrap()).unwrap();
        let a = example1();
        let s = solve_limitedness(&a, &l.dfa, &GameBudget::default()).unwrap();
        assert!(matches!(extracted_bound(&s.answer, &a), Err(Error::Precondition(_))));
    }

    #[test]
    fn empty_word_without_accepting_run() {
        let mut a = example1();
        a.finals.clear();
        let l = Language::parse_regex("eps", &Alphabet::new(['a', 'b']).unwrap()).unwrap();
        let s = solve_limitedness(&a, &l.dfa, &GameBudget::default()).unwrap();
        assert!(matches!(
            s.answer,
            LimitednessAnswer::Unlimited {
                certificate: UnlimitedCertificate::EmptyWord
            }
        ));
    }
}
