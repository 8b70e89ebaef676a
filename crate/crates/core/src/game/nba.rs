//! Büchi automata over play letters, and the automaton for plays lost by B.

use std::collections::HashMap;
use std::hash::Hash;

use indexmap::IndexSet;

use crate::bitset::BitSet;
use crate::cost::{CostAutomaton, Index, StateId};
use crate::graph::{is_cyclic_component, reachable, reverse, strongly_connected_components};
use crate::regex::Dfa;

use super::spec::{GameSpec, PlayLetter};

/// A nondeterministic Büchi automaton with states `0..state_count()`.
pub trait Nba {
    type Letter: Clone + Eq + Hash;

    fn state_count(&self) -> usize;
    fn initial_states(&self) -> Vec<usize>;
    fn is_accepting(&self, q: usize) -> bool;
    fn successors(&self, q: usize, letter: &Self::Letter) -> Vec<usize>;
}

/// Whether `a` accepts `u v^ω`; `v` must be non-empty.
pub fn lasso_accepts<N: Nba>(a: &N, u: &[N::Letter], v: &[N::Letter]) -> bool {
    assert!(!v.is_empty(), "loop of a lasso must be non-empty");
    let len = u.len() + v.len();
    let letter = |pos: usize| if pos < u.len() { &u[pos] } else { &v[pos - u.len()] };
    let next_pos = |pos: usize| if pos + 1 == len { u.len() } else { pos + 1 };
    let n = a.state_count();
    let node = |q: usize, pos: usize| q * len + pos;
    let mut adj = vec![Vec::new(); n * len];
    for q in 0..n {
        for pos in 0..len {
            for r in a.successors(q, letter(pos)) {
                adj[node(q, pos)].push(node(r, next_pos(pos)));
            }
        }
    }
    let alive = reachable(&adj, a.initial_states().into_iter().map(|q| node(q, 0)));
    strongly_connected_components(&adj, &alive)
        .into_iter()
        .any(|comp| {
            is_cyclic_component(&adj, &comp) && comp.iter().any(|&x| a.is_accepting(x / len))
        })
}

/// An explicitly listed Büchi automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuchiAutomaton<L> {
    pub states: usize,
    pub initial: Vec<usize>,
    pub accepting: Vec<bool>,
    pub transitions: Vec<(usize, L, usize)>,
}

impl<L: Clone + Eq + Hash> Nba for BuchiAutomaton<L> {
    type Letter = L;

    fn state_count(&self) -> usize {
        self.states
    }

    fn initial_states(&self) -> Vec<usize> {
        self.initial.clone()
    }

    fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    fn successors(&self, q: usize, letter: &L) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .transitions
            .iter()
            .filter(|(p, l, _)| *p == q && l == letter)
            .map(|(_, _, r)| *r)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Guesses a run through the played transition sets, then a counter that the
/// run increments infinitely often and never resets again.
///
/// States: `wait(q)` is `q`; `commit(q, c, f)` is `n + 2(qK + c) + f` where `f`
/// records whether the last transition incremented `c`. Accepting states are
/// the commits with `f` set. Commits from which no cycle incrementing `c`
/// without resetting it is reachable are never entered.
#[derive(Clone, Debug)]
pub struct RunGuessNba {
    automaton: CostAutomaton,
    idx: Index,
    /// `useful[q * K + c]`
    useful: Vec<bool>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum GuessState {
    Wait(StateId),
    Commit {
        state: StateId,
        counter: usize,
        incremented: bool,
    },
}

impl RunGuessNba {
    pub fn new(automaton: &CostAutomaton) -> Self {
        let n = automaton.state_count();
        let k = automaton.counters;
        let mut useful = vec![false; n * k];
        for c in 0..k {
            let mut adj = vec![Vec::new(); n];
            for t in &automaton.transitions {
                if !t.resets(c) {
                    adj[t.source].push(t.target);
                }
            }
            let mut comp = vec![usize::MAX; n];
            for (i, cs) in strongly_connected_components(&adj, &vec![true; n])
                .iter()
                .enumerate()
            {
                for &q in cs {
                    comp[q] = i;
                }
            }
            let good: Vec<StateId> = automaton
                .transitions
                .iter()
                .filter(|t| !t.resets(c) && t.increments(c) && comp[t.source] == comp[t.target])
                .map(|t| t.source)
                .collect();
            for (q, r) in reachable(&reverse(&adj), good).into_iter().enumerate() {
                useful[q * k + c] = r;
            }
        }
        RunGuessNba {
            idx: automaton.index(),
            automaton: automaton.clone(),
            useful,
        }
    }

    fn commit_useful(&self, q: StateId, c: usize) -> bool {
        self.useful[q * self.automaton.counters + c]
    }

    pub fn decode(&self, x: usize) -> GuessState {
        let n = self.automaton.state_count();
        if x < n {
            return GuessState::Wait(x);
        }
        let y = x - n;
        let k = self.automaton.counters;
        GuessState::Commit {
            state: y / 2 / k,
            counter: y / 2 % k,
            incremented: y % 2 == 1,
        }
    }

    pub fn encode(&self, s: GuessState) -> usize {
        let n = self.automaton.state_count();
        match s {
            GuessState::Wait(q) => q,
            GuessState::Commit {
                state,
                counter,
                incremented,
            } => n + 2 * (state * self.automaton.counters + counter) + incremented as usize,
        }
    }
}

impl Nba for RunGuessNba {
    type Letter = PlayLetter;

    fn state_count(&self) -> usize {
        self.automaton.state_count() * (1 + 2 * self.automaton.counters)
    }

    fn initial_states(&self) -> Vec<usize> {
        self.automaton.initial.clone()
    }

    fn is_accepting(&self, q: usize) -> bool {
        matches!(self.decode(q), GuessState::Commit { incremented: true, .. })
    }

    fn successors(&self, x: usize, letter: &PlayLetter) -> Vec<usize> {
        let (q, committed) = match self.decode(x) {
            GuessState::Wait(q) => (q, None),
            GuessState::Commit { state, counter, .. } => (state, Some(counter)),
        };
        let mut out = Vec::new();
        let moves = self
            .idx
            .out
            .get(q)
            .and_then(|row| row.get(letter.input.index()))
            .map(Vec::as_slice)
            .unwrap_or(&[]);
        for &t in moves {
            if !letter.delta.contains(t) {
                continue;
            }
            let tr = &self.automaton.transitions[t];
            match committed {
                None => {
                    out.push(self.encode(GuessState::Wait(tr.target)));
                    for c in 0..self.automaton.counters {
                        if !self.commit_useful(tr.target, c) {
                            continue;
                        }
                        out.push(self.encode(GuessState::Commit {
                            state: tr.target,
                            counter: c,
                            incremented: false,
                        }));
                    }
                }
                Some(c) if !tr.resets(c) && self.commit_useful(tr.target, c) => out.push(self.encode(GuessState::Commit {
                    state: tr.target,
                    counter: c,
                    incremented: tr.increments(c),
                })),
                Some(_) => {}
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Deterministic tracking of the states reachable through the played sets and
/// of the input word's membership in the language. Reaches the sink once B
/// plays a transition on the wrong letter, or leaves no accepting run for a
/// prefix in the language.
#[derive(Clone, Debug)]
pub struct SafetyTracker {
    automaton: CostAutomaton,
    finals: BitSet,
    language: Dfa,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SafetyState {
    Live { reach: BitSet, lang: usize },
    Sink,
}

impl SafetyTracker {
    pub fn new(automaton: &CostAutomaton, language: &Dfa) -> Self {
        SafetyTracker {
            automaton: automaton.clone(),
            finals: automaton.finals.iter().copied().collect(),
            language: language.clone(),
        }
    }

    pub fn initial(&self) -> SafetyState {
        SafetyState::Live {
            reach: self.automaton.initial.iter().copied().collect(),
            lang: self.language.initial,
        }
    }

    pub fn step(&self, s: &SafetyState, letter: &PlayLetter) -> SafetyState {
        let SafetyState::Live { reach, lang } = s else {
            return SafetyState::Sink;
        };
        let ts = &self.automaton.transitions;
        if letter.delta.iter().any(|t| t >= ts.len() || ts[t].letter != letter.input) {
            return SafetyState::Sink;
        }
        let next: BitSet = letter
            .delta
            .iter()
            .filter(|&t| reach.contains(ts[t].source))
            .map(|t| ts[t].target)
            .collect();
        let lang = self.language.step(*lang, letter.input);
        if self.language.is_final(lang) && !next.intersects(&self.finals) {
            return SafetyState::Sink;
        }
        SafetyState::Live { reach: next, lang }
    }
}

/// Plays lost by B: the safety part reaches its sink, or the guesser accepts.
#[derive(Clone, Debug)]
pub struct ComplementConditionNba {
    pub safety: SafetyTracker,
    pub guesser: RunGuessNba,
}

pub fn complement_condition_nba(g: &GameSpec) -> ComplementConditionNba {
    ComplementConditionNba {
        safety: SafetyTracker::new(&g.automaton, &g.language),
        guesser: RunGuessNba::new(&g.automaton),
    }
}

impl ComplementConditionNba {
    pub fn accepts_lasso(&self, u: &[PlayLetter], v: &[PlayLetter]) -> bool {
        let mut s = self.safety.initial();
        for l in u {
            s = self.safety.step(&s, l);
        }
        let mut seen = std::collections::HashSet::new();
        while seen.insert(s.clone()) {
            for l in v {
                s = self.safety.step(&s, l);
            }
        }
        s == SafetyState::Sink || lasso_accepts(&self.guesser, u, v)
    }

    /// The same language as an explicit automaton restricted to `letters`:
    /// the reachable safety states, then the guesser states.
    pub fn to_explicit(&self, letters: &[PlayLetter]) -> BuchiAutomaton<PlayLetter> {
        let mut safety: IndexSet<SafetyState> = IndexSet::new();
        safety.insert(self.safety.initial());
        let mut transitions = Vec::new();
        let mut i = 0;
        while i < safety.len() {
            for l in letters {
                let next = self.safety.step(&safety[i], l);
                let (j, _) = safety.insert_full(next);
                transitions.push((i, l.clone(), j));
            }
            i += 1;
        }
        let off = safety.len();
        let g = &self.guesser;
        for q in 0..g.state_count() {
            for l in letters {
                for r in g.successors(q, l) {
                    transitions.push((off + q, l.clone(), off + r));
                }
            }
        }
        let mut accepting: Vec<bool> = safety.iter().map(|s| *s == SafetyState::Sink).collect();
        accepting.extend((0..g.state_count()).map(|q| g.is_accepting(q)));
        let mut initial = vec![0];
        initial.extend(g.initial_states().into_iter().map(|q| off + q));
        BuchiAutomaton {
            states: off + g.state_count(),
            initial,
            accepting,
            transitions,
        }
    }
}

/// Memoising wrapper for automata whose successor computation is costly.
pub struct Cached<'a, N: Nba> {
    inner: &'a N,
    memo: std::cell::RefCell<HashMap<(usize, N::Letter), Vec<usize>>>,
}

impl<'a, N: Nba> Cached<'a, N> {
    pub fn new(inner: &'a N) -> Self {
        Cached {
            inner,
            memo: Default::default(),
        }
    }
}

impl<N: Nba> Nba for Cached<'_, N> {
    type Letter = N::Letter;

    fn state_count(&self) -> usize {
        self.inner.state_count()
    }

    fn initial_states(&self) -> Vec<usize> {
        self.inner.initial_states()
    }

    fn is_accepting(&self, q: usize) -> bool {
        self.inner.is_accepting(q)
    }

    fn successors(&self, q: usize, letter: &N::Letter) -> Vec<usize> {
        self.memo
            .borrow_mut()
            .entry((q, letter.clone()))
            .or_insert_with(|| self.inner.successors(q, letter))
            .clone()
    }
}
