//! The parity game on which the limitedness game is solved: product of the
//! round structure, the safety tracker and the determinised guesser.

use indexmap::IndexSet;

use crate::alphabet::Symbol;
use crate::cost::{CostAutomaton, Index, TransId};
use crate::error::{Error, Result};

use super::nba::{RunGuessNba, SafetyState, SafetyTracker};
use super::parity::Determinizer;
use super::solver::{ParityGame, Player};
use super::spec::{PlayLetter, TransitionSet};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Vertex {
    /// A picks a letter. `p` is the priority of the parity step that led here.
    A { d: usize, s: usize, p: u32 },
    /// B answers letter `a` with a set of transitions.
    B { d: usize, s: usize, a: Symbol },
    /// B has broken a safety condition.
    Sink,
}

#[derive(Copy, Clone, Debug)]
pub struct GameBudget {
    pub arena_vertices: usize,
    pub parity_states: usize,
    /// Largest number of moves B may have at one vertex.
    pub max_moves: usize,
}

impl Default for GameBudget {
    fn default() -> Self {
        GameBudget {
            arena_vertices: 2_000_000,
            parity_states: 200_000,
            max_moves: 1 << 16,
        }
    }
}

pub struct Arena {
    pub game: ParityGame,
    pub vertices: IndexSet<Vertex>,
    pub safety: IndexSet<SafetyState>,
    /// For each B vertex: `(transition, target)` pairs B chooses among, by
    /// increasing id.
    pub options: Vec<Vec<(TransId, usize)>>,
    /// For each B vertex: its moves, each with at most one transition per
    /// target state, and their successors.
    pub moves: Vec<Vec<(TransitionSet, usize)>>,
    pub parity_states: usize,
    pub initial: usize,
}

impl Arena {
    /// B's move realising the edge `from -> to`, as a subset of the options.
    pub fn delta_for(&self, from: usize, to: usize) -> Option<&TransitionSet> {
        self.moves[from]
            .iter()
            .find(|(_, t)| *t == to)
            .map(|(d, _)| d)
    }

    /// The B vertex reached when A plays `a` from A vertex `v`.
    pub fn after_letter(&self, v: usize, a: Symbol) -> usize {
        match self.vertices[v] {
            Vertex::A { d, s, .. } => self
                .vertices
                .get_index_of(&Vertex::B { d, s, a })
                .expect("arena is closed under A moves"),
            _ => panic!("not an A vertex"),
        }
    }
}

/// Builds the reachable arena for automaton `a` (ids refer to `a`).
pub fn build_arena(
    a: &CostAutomaton,
    safety: &SafetyTracker,
    guesser: &RunGuessNba,
    budget: &GameBudget,
) -> Result<Arena> {
    let idx: Index = a.index();
    let mut det = Determinizer::new(guesser, budget.parity_states);
    let mut safety_ids: IndexSet<SafetyState> = IndexSet::new();
    safety_ids.insert(safety.initial());
    let mut vertices: IndexSet<Vertex> = IndexSet::new();
    let mut game = ParityGame::default();
    let mut options: Vec<Vec<(TransId, usize)>> = Vec::new();
    let mut moves: Vec<Vec<(TransitionSet, usize)>> = Vec::new();

    let intern = |v: Vertex,
                      vertices: &mut IndexSet<Vertex>,
                      game: &mut ParityGame,
                      options: &mut Vec<Vec<(TransId, usize)>>,
                      moves: &mut Vec<Vec<(TransitionSet, usize)>>|
     -> Result<(usize, bool)> {
        if let Some(i) = vertices.get_index_of(&v) {
            return Ok((i, false));
        }
        let (owner, prio) = match v {
            Vertex::A { p, .. } => (Player::Odd, p + 1),
            Vertex::B { .. } => (Player::Even, 0),
            Vertex::Sink => (Player::Odd, 1),
        };
        vertices.insert(v);
        game.add_vertex(owner, prio);
        options.push(Vec::new());
        moves.push(Vec::new());
        if vertices.len() > budget.arena_vertices {
            return Err(Error::budget("arena vertices", budget.arena_vertices));
        }
        Ok((vertices.len() - 1, true))
    };

    let start = Vertex::A {
        d: det.initial(),
        s: 0,
        p: 1,
    };
    let (initial, _) = intern(start, &mut vertices, &mut game, &mut options, &mut moves)?;
    let mut queue = std::collections::VecDeque::from([initial]);
    while let Some(v) = queue.pop_front() {
        match vertices[v].clone() {
            Vertex::Sink => game.succ[v].push(v),
            Vertex::A { d, s, .. } => {
                for x in a.alphabet.symbols() {
                    let (u, fresh) = intern(
                        Vertex::B { d, s, a: x },
                        &mut vertices,
                        &mut game,
                        &mut options,
                        &mut moves,
                    )?;
                    game.succ[v].push(u);
                    if fresh {
                        queue.push_back(u);
                    }
                }
            }
            Vertex::B { d, s, a: x } => {
                let SafetyState::Live { reach, .. } = &safety_ids[s] else {
                    unreachable!("B vertices carry live safety states");
                };
                let mut opts: Vec<(TransId, usize)> = reach
                    .iter()
                    .flat_map(|q| idx.out[q][x.index()].iter().copied())
                    .map(|t| (t, a.transitions[t].target))
                    .collect();
                opts.sort_unstable();
                let mut row = Vec::new();
                for delta in one_per_target(&opts, budget.max_moves)? {
                    let letter = PlayLetter { input: x, delta };
                    let next_s = safety.step(&safety_ids[s], &letter);
                    let target = if next_s == SafetyState::Sink {
                        Vertex::Sink
                    } else {
                        let (s2, _) = safety_ids.insert_full(next_s);
                        let (d2, p) = det.step(d, &letter)?;
                        Vertex::A { d: d2, s: s2, p }
                    };
                    let (t, fresh) =
                        intern(target, &mut vertices, &mut game, &mut options, &mut moves)?;
                    if fresh {
                        queue.push_back(t);
                    }
                    if !game.succ[v].contains(&t) {
                        game.succ[v].push(t);
                    }
                    row.push((letter.delta, t));
                }
                options[v] = opts;
                moves[v] = row;
            }
        }
    }
    Ok(Arena {
        game,
        vertices,
        safety: safety_ids,
        options,
        moves,
        parity_states: det.state_count(),
        initial,
    })
}

/// Every set holding at most one option per target state.
fn one_per_target(opts: &[(TransId, usize)], limit: usize) -> Result<Vec<TransitionSet>> {
    let mut groups: Vec<(usize, Vec<TransId>)> = Vec::new();
    for &(t, q) in opts {
        match groups.iter_mut().find(|(g, _)| *g == q) {
            Some((_, ts)) => ts.push(t),
            None => groups.push((q, vec![t])),
        }
    }
    let count = groups
        .iter()
        .try_fold(1usize, |acc, (_, ts)| acc.checked_mul(ts.len() + 1))
        .filter(|&c| c <= limit);
    if count.is_none() {
        return Err(Error::budget("moves per round", limit));
    }
    let mut out = vec![TransitionSet::new()];
    for (_, ts) in &groups {
        let mut next = Vec::with_capacity(out.len() * (ts.len() + 1));
        for d in &out {
            next.push(d.clone());
            for &t in ts {
                let mut d2 = d.clone();
                d2.insert(t);
                next.push(d2);
            }
        }
        out = next;
    }
    Ok(out)
}
