//! Cost automata: nondeterministic automata with hierarchically ordered counters.
//!
//! An action on counter `c` (increment or reset) also resets every counter
//! below `c`. The cascade is applied by the semantics; declared actions name a
//! single counter. A transition carries a short sequence of such actions that
//! take effect left to right; the common case is zero or one action.

mod eval;
pub mod fixtures;
mod format;
mod run;

pub use eval::{enumerate_accepting_runs, enumerate_runs, evaluate, value_profile};
pub use format::parse_actions;
pub use run::{actions_value, run_value, Run, Valuation};

use std::fmt;

use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result, ValidationIssue};

pub type StateId = usize;
pub type TransId = usize;

/// Value of a run or of a word: a natural number or infinity.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Finite(u64),
    Infinite,
}

impl Value {
    pub fn finite(self) -> Option<u64> {
        match self {
            Value::Finite(v) => Some(v),
            Value::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Value::Finite(_))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Finite(v) => write!(f, "{v}"),
            Value::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CounterAction {
    None,
    Increment(usize),
    Reset(usize),
}

impl CounterAction {
    /// Whether this action sets counter `c` back to zero, directly or through
    /// the hierarchy.
    pub fn resets(self, c: usize) -> bool {
        match self {
            CounterAction::None => false,
            CounterAction::Increment(k) => k > c,
            CounterAction::Reset(k) => k >= c,
        }
    }

    pub fn increments(self, c: usize) -> bool {
        self == CounterAction::Increment(c)
    }

    pub fn counter(self) -> Option<usize> {
        match self {
            CounterAction::None => None,
            CounterAction::Increment(c) | CounterAction::Reset(c) => Some(c),
        }
    }
}

impl fmt::Display for CounterAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CounterAction::None => f.write_str("none"),
            CounterAction::Increment(c) => write!(f, "inc({c})"),
            CounterAction::Reset(c) => write!(f, "reset({c})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    pub source: StateId,
    pub letter: Symbol,
    pub target: StateId,
    /// Applied left to right; empty means no counter operation.
    pub actions: Vec<CounterAction>,
}

impl Transition {
    pub fn new(
        source: StateId,
        letter: Symbol,
        target: StateId,
        actions: impl IntoIterator<Item = CounterAction>,
    ) -> Self {
        Transition {
            source,
            letter,
            target,
            actions: actions
                .into_iter()
                .filter(|a| *a != CounterAction::None)
                .collect(),
        }
    }

    pub fn resets(&self, c: usize) -> bool {
        self.actions.iter().any(|a| a.resets(c))
    }

    pub fn increments(&self, c: usize) -> bool {
        self.actions.iter().any(|a| a.increments(c))
    }

    pub fn action_label(&self) -> String {
        if self.actions.is_empty() {
            return "none".to_string();
        }
        self.actions
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CostAutomaton {
    pub alphabet: Alphabet,
    pub counters: usize,
    pub states: Vec<String>,
    pub initial: Vec<StateId>,
    pub finals: Vec<StateId>,
    pub transitions: Vec<Transition>,
}

/// Lookup tables derived from a validated automaton.
#[derive(Clone, Debug)]
pub struct Index {
    /// `out[state][letter]`
    pub out: Vec<Vec<Vec<TransId>>>,
    pub is_final: Vec<bool>,
    pub is_initial: Vec<bool>,
}

impl CostAutomaton {
    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn validate(&self) -> Result<(), Vec<ValidationIssue>> {
        let mut issues = Vec::new();
        let n = self.states.len();
        let mut issue = |location: String, message: String| {
            issues.push(ValidationIssue { location, message })
        };
        for &q in &self.initial {
            if q >= n {
                issue("initial states".into(), format!("state {q} is not declared"));
            }
        }
        for &q in &self.finals {
            if q >= n {
                issue("final states".into(), format!("state {q} is not declared"));
            }
        }
        for (i, t) in self.transitions.iter().enumerate() {
            let loc = format!("transition t{i}");
            if t.source >= n {
                issue(loc.clone(), format!("source state {} is not declared", t.source));
            }
            if t.target >= n {
                issue(loc.clone(), format!("target state {} is not declared", t.target));
            }
            if t.letter.index() >= self.alphabet.len() {
                issue(loc.clone(), format!("letter #{} is not in the alphabet", t.letter.0));
            }
            for a in &t.actions {
                if let Some(c) = a.counter() {
                    if c >= self.counters {
                        issue(
                            loc.clone(),
                            format!("counter {c} is out of range (automaton has {})", self.counters),
                        );
                    }
                }
            }
            for c in 0..self.counters {
                if t.actions.iter().filter(|a| a.increments(c)).count() > 1 {
                    issue(loc.clone(), format!("counter {c} is incremented more than once"));
                }
            }
        }
        if issues.is_empty() {
            Ok(())
        } else {
            Err(issues)
        }
    }

    pub fn check(&self) -> Result<()> {
        self.validate().map_err(Error::Validation)
    }

    pub fn index(&self) -> Index {
        let n = self.states.len();
        let mut out = vec![vec![Vec::new(); self.alphabet.len()]; n];
        for (i, t) in self.transitions.iter().enumerate() {
            out[t.source][t.letter.index()].push(i);
        }
        let mut is_final = vec![false; n];
        for &q in &self.finals {
            is_final[q] = true;
        }
        let mut is_initial = vec![false; n];
        for &q in &self.initial {
            is_initial[q] = true;
        }
        Index {
            out,
            is_final,
            is_initial,
        }
    }

    pub fn transitions_on(&self, letter: Symbol) -> impl Iterator<Item = TransId> + '_ {
        self.transitions
            .iter()
            .enumerate()
            .filter(move |(_, t)| t.letter == letter)
            .map(|(i, _)| i)
    }

    /// Removes states that are unreachable or cannot reach a final state, then
    /// drops transitions whose effect is dominated by a parallel transition.
    /// Neither step changes the value of any word.
    pub fn trimmed(&self) -> CostAutomaton {
        self.trimmed_with_map().0
    }

    /// Like [`CostAutomaton::trimmed`], also returning for each kept transition
    /// its id in `self`.
    pub fn trimmed_with_map(&self) -> (CostAutomaton, Vec<TransId>) {
        let n = self.states.len();
        let mut adj = vec![Vec::new(); n];
        for t in &self.transitions {
            adj[t.source].push(t.target);
        }
        let fwd = crate::graph::reachable(&adj, self.initial.iter().copied());
        let bwd = crate::graph::reachable(&crate::graph::reverse(&adj), self.finals.iter().copied());
        let keep: Vec<bool> = (0..n).map(|q| fwd[q] && bwd[q]).collect();
        if !keep.iter().any(|k| *k) {
            let name = self
                .initial
                .first()
                .map(|&q| self.states[q].clone())
                .unwrap_or_else(|| "dead".to_string());
            let dead = CostAutomaton {
                alphabet: self.alphabet.clone(),
                counters: self.counters,
                states: vec![name],
                initial: vec![0],
                finals: vec![],
                transitions: vec![],
            };
            return (dead, vec![]);
        }
        let mut rename = vec![usize::MAX; n];
        let mut states = Vec::new();
        for q in 0..n {
            if keep[q] {
                rename[q] = states.len();
                states.push(self.states[q].clone());
            }
        }
        let mut origin = Vec::new();
        let mut transitions = Vec::new();
        for (i, t) in self.transitions.iter().enumerate() {
            if keep[t.source] && keep[t.target] {
                origin.push(i);
                transitions.push(Transition {
                    source: rename[t.source],
                    target: rename[t.target],
                    ..t.clone()
                });
            }
        }
        let mut out = CostAutomaton {
            alphabet: self.alphabet.clone(),
            counters: self.counters,
            states,
            initial: self.initial.iter().filter(|&&q| keep[q]).map(|&q| rename[q]).collect(),
            finals: self.finals.iter().filter(|&&q| keep[q]).map(|&q| rename[q]).collect(),
            transitions,
        };
        let kept = out.drop_dominated();
        let origin = kept.into_iter().map(|i| origin[i]).collect();
        (out, origin)
    }

    /// Returns the old ids of the transitions that remain.
    fn drop_dominated(&mut self) -> Vec<TransId> {
        let summaries: Vec<Vec<CounterEffect>> = self
            .transitions
            .iter()
            .map(|t| (0..self.counters).map(|c| CounterEffect::of(&t.actions, c)).collect())
            .collect();
        let ts = &self.transitions;
        let mut keep = vec![true; ts.len()];
        for i in 0..ts.len() {
            for j in 0..ts.len() {
                if i == j || !keep[j] {
                    continue;
                }
                let parallel = ts[i].source == ts[j].source
                    && ts[i].letter == ts[j].letter
                    && ts[i].target == ts[j].target;
                if !parallel {
                    continue;
                }
                let j_better = summaries[j]
                    .iter()
                    .zip(&summaries[i])
                    .all(|(a, b)| a.dominates(b));
                let i_better = summaries[i]
                    .iter()
                    .zip(&summaries[j])
                    .all(|(a, b)| a.dominates(b));
                // on ties keep the earlier transition
                if j_better && (!i_better || j < i) {
                    keep[i] = false;
                    break;
                }
            }
        }
        let mut k = keep.iter();
        self.transitions.retain(|_| *k.next().unwrap());
        (0..keep.len()).filter(|&i| keep[i]).collect()
    }
}

/// Effect of an action sequence on one counter with incoming value `v`:
/// peak `max(v + head, mid, tail)` and result `tail` when the counter is reset,
/// otherwise peak and result `v + tail`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
struct CounterEffect {
    reset: bool,
    head: u32,
    mid: u32,
    tail: u32,
}

impl CounterEffect {
    fn of(actions: &[CounterAction], c: usize) -> Self {
        let mut e = CounterEffect {
            reset: false,
            head: 0,
            mid: 0,
            tail: 0,
        };
        for a in actions {
            if a.increments(c) {
                e.tail += 1;
                if !e.reset {
                    e.head = e.tail;
                }
            } else if a.resets(c) {
                if e.reset {
                    e.mid = e.mid.max(e.tail);
                }
                e.reset = true;
                e.tail = 0;
            }
        }
        e
    }

    /// Whether `self` yields pointwise no larger peak and result than `other`.
    fn dominates(&self, other: &CounterEffect) -> bool {
        match (self.reset, other.reset) {
            (true, true) => {
                self.head <= other.head
                    && self.tail <= other.tail
                    && self.mid.max(self.tail) <= other.head.max(other.mid).max(other.tail)
            }
            (true, false) => self.head.max(self.mid).max(self.tail) <= other.tail,
            (false, true) => false,
            (false, false) => self.tail <= other.tail,
        }
    }
}
