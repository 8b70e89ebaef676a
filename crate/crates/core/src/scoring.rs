//! Scores of runs: counter valuations read as numbers in base `m+1`, with
//! overflow carried into the next counter instead of jumping to infinity.
//! Unlike the plain reading, this order is preserved by extending runs.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use indexmap::IndexSet;

use crate::bitset::BitSet;
use crate::cost::{CostAutomaton, CounterAction, Run, StateId};
use crate::game::FiniteMemoryStrategy;

/// Either infinity or digits `a₀..aₙ`, least significant first, each in `0..=m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Score {
    Finite(Vec<u32>),
    Infinite,
}

impl Score {
    pub fn zero(counters: usize) -> Score {
        Score::Finite(vec![0; counters])
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Score::Finite(_))
    }

    /// `Σ aᵢ (m+1)^i`, or `None` for infinity.
    pub fn value(&self, m: u32) -> Option<u64> {
        match self {
            Score::Infinite => None,
            Score::Finite(d) => Some(
                d.iter()
                    .rev()
                    .fold(0u64, |acc, &x| acc * (m as u64 + 1) + x as u64),
            ),
        }
    }
}

impl Ord for Score {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Score::Infinite, Score::Infinite) => Ordering::Equal,
            (Score::Infinite, _) => Ordering::Greater,
            (_, Score::Infinite) => Ordering::Less,
            (Score::Finite(a), Score::Finite(b)) => {
                a.len().cmp(&b.len()).then_with(|| a.iter().rev().cmp(b.iter().rev()))
            }
        }
    }
}

impl PartialOrd for Score {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Score::Infinite => write!(f, "inf"),
            Score::Finite(d) => {
                let parts: Vec<String> = d.iter().map(u32::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

/// `(m+1)^(n+1) − 1`, the largest number with `n+1` digits in base `m+1`.
/// Saturates at `u64::MAX`.
pub fn m_prime(m: u64, n: u32) -> u64 {
    (m + 1)
        .checked_pow(n + 1)
        .map_or(u64::MAX, |p| p - 1)
}

/// One step of the score. A digit that would reach `m+1` carries into the
/// next one; a carry out of the top digit gives infinity.
pub fn score_extend(s: &Score, action: CounterAction, m: u32) -> Score {
    let Score::Finite(d) = s else {
        return Score::Infinite;
    };
    let mut d = d.clone();
    match action {
        CounterAction::None => {}
        CounterAction::Reset(k) => {
            for x in d.iter_mut().take(k + 1) {
                *x = 0;
            }
        }
        CounterAction::Increment(k) => {
            for x in d.iter_mut().take(k) {
                *x = 0;
            }
            let mut i = k;
            loop {
                if i >= d.len() {
                    return Score::Infinite;
                }
                if d[i] < m {
                    d[i] += 1;
                    break;
                }
                d[i] = 0;
                i += 1;
            }
        }
    }
    Score::Finite(d)
}

/// Score after a sequence of actions, starting from zero.
pub fn score_actions(
    counters: usize,
    actions: impl IntoIterator<Item = CounterAction>,
    m: u32,
) -> Score {
    actions
        .into_iter()
        .fold(Score::zero(counters), |s, act| score_extend(&s, act, m))
}

pub fn score_run(a: &CostAutomaton, r: &Run, m: u32) -> Score {
    if a.counters == 1 {
        return single_counter_score(a, r, m);
    }
    score_actions(a.counters, r.actions(a), m)
}

/// With one counter the score is just the counter, cut off above `m`.
fn single_counter_score(a: &CostAutomaton, r: &Run, m: u32) -> Score {
    let mut c = 0u32;
    for act in r.actions(a) {
        match act {
            CounterAction::Increment(_) => c += 1,
            CounterAction::Reset(_) => c = 0,
            CounterAction::None => {}
        }
        if c > m {
            return Score::Infinite;
        }
    }
    Score::Finite(vec![c])
}

/// The general construction, exposed so the single-counter shortcut can be
/// compared against it.
pub fn score_run_general(a: &CostAutomaton, r: &Run, m: u32) -> Score {
    score_actions(a.counters, r.actions(a), m)
}

/// B's strategy that answers, after `w`, with the last transitions of the
/// optimal runs over `w`: runs whose score is finite and least among runs
/// over `w` ending in the same state. Memory holds the least score per state
/// together with the last answer.
pub fn optimal_run_strategy(a: &CostAutomaton, m: u32) -> FiniteMemoryStrategy {
    type Mem = (Vec<Option<Score>>, BitSet);
    let idx = a.index();
    let mut start = vec![None; a.state_count()];
    for &q in &a.initial {
        start[q] = Some(Score::zero(a.counters));
    }
    let mut mem: IndexSet<Mem> = IndexSet::new();
    mem.insert((start, BitSet::new()));
    let mut trans = Vec::new();
    let mut i = 0;
    while i < mem.len() {
        let (best, _) = mem[i].clone();
        let mut row = Vec::new();
        for x in a.alphabet.symbols() {
            let mut cand: Vec<(usize, StateId, Score)> = Vec::new();
            for (q, s) in best.iter().enumerate() {
                let Some(s) = s else { continue };
                for &t in &idx.out[q][x.index()] {
                    let tr = &a.transitions[t];
                    let s2 = tr.actions.iter().fold(s.clone(), |acc, &act| score_extend(&acc, act, m));
                    if s2.is_finite() {
                        cand.push((t, tr.target, s2));
                    }
                }
            }
            let mut least: HashMap<StateId, Score> = HashMap::new();
            for (_, q, s) in &cand {
                least
                    .entry(*q)
                    .and_modify(|old| {
                        if s < old {
                            *old = s.clone()
                        }
                    })
                    .or_insert_with(|| s.clone());
            }
            let mut delta = BitSet::new();
            for (t, q, s) in &cand {
                if least[q] == *s {
                    delta.insert(*t);
                }
            }
            let mut next = vec![None; a.state_count()];
            for (q, s) in least {
                next[q] = Some(s);
            }
            row.push(mem.insert_full((next, delta)).0);
        }
        trans.push(row);
        i += 1;
    }
    FiniteMemoryStrategy {
        alphabet: a.alphabet.clone(),
        states: (0..mem.len()).map(|i| format!("m{i}")).collect(),
        initial: 0,
        trans,
        out: mem.into_iter().map(|(_, d)| d).collect(),
    }
    .minimize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::fixtures::*;
    use CounterAction::*;

    #[test]
    fn carry_example() {
        let m = 3;
        let one_high = score_actions(2, [Increment(1)], m);
        assert_eq!(one_high, Score::Finite(vec![0, 1]));
        assert_eq!(one_high.value(m), Some(4));
        let low = score_actions(2, [Increment(0); 3], m);
        assert_eq!(low, Score::Finite(vec![3, 0]));
        assert_eq!(low.value(m), Some(3));
        let carried = score_extend(&low, Increment(0), m);
        assert_eq!(carried, Score::Finite(vec![0, 1]));
        assert_eq!(carried.value(m), Some(4));
        // the order between the two runs survives the extra increment
        assert!(low < one_high);
        assert!(carried < score_extend(&one_high, Increment(0), m));
    }

    #[test]
    fn overflow_of_the_top_digit() {
        assert_eq!(score_actions(1, [Increment(0); 3], 1), Score::Infinite);
        assert_eq!(score_actions(1, [Increment(0)], 1), Score::Finite(vec![1]));
        assert_eq!(score_actions(2, [Increment(0); 15], 3).value(3), Some(15));
        assert_eq!(score_actions(2, [Increment(0); 16], 3), Score::Infinite);
    }

    #[test]
    fn resets_clear_low_digits() {
        let s = score_actions(3, [Increment(2), Increment(1), Increment(0), Reset(1)], 2);
        assert_eq!(s, Score::Finite(vec![0, 0, 1]));
        assert_eq!(score_extend(&Score::Infinite, Reset(2), 2), Score::Infinite);
    }

    #[test]
    fn m_prime_values() {
        assert_eq!(m_prime(3, 1), 15);
        assert_eq!(m_prime(0, 0), 0);
        assert_eq!(m_prime(1, 2), 7);
        assert_eq!(m_prime(u64::MAX / 2, 3), u64::MAX);
    }

    #[test]
    fn empty_run_scores_zero() {
        let a = example2();
        assert_eq!(score_run(&a, &Run(vec![]), 2), Score::zero(2));
    }

    #[test]
    fn order_is_numeric() {
        assert!(Score::Finite(vec![3, 0]) < Score::Finite(vec![0, 1]));
        assert!(Score::Finite(vec![0, 1]) < Score::Infinite);
        assert!(Score::Infinite <= Score::Infinite);
    }

    #[test]
    fn example1_strategy_keeps_the_loop() {
        let a = example1();
        let s = optimal_run_strategy(&a, 2);
        let w = a.alphabet.parse_word("aa").unwrap();
        let d = s.play(&w);
        assert_eq!(d[1], BitSet::singleton(0));
        let w = a.alphabet.parse_word("aaa").unwrap();
        assert_eq!(s.play(&w)[2], BitSet::new());
    }
}
