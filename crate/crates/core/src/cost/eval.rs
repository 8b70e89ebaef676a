use std::collections::HashMap;

use crate::alphabet::Symbol;
use crate::error::{Error, Result};
use crate::regex::Dfa;

use super::run::{actions_value, Run, Valuation};
use super::{CostAutomaton, StateId, Value};

/// Exact `[[A]](w)`: the least value of an accepting run over `w`.
///
/// Dynamic programming over (state, valuation), keeping for each pair the
/// least peak seen so far. The future of a run depends only on that pair, so
/// nothing is lost.
pub fn evaluate(a: &CostAutomaton, w: &[Symbol]) -> Value {
    let idx = a.index();
    let mut layer: HashMap<(StateId, Valuation), u32> = HashMap::new();
    for &q in &a.initial {
        layer.insert((q, Valuation::zero(a.counters)), 0);
    }
    for &x in w {
        let mut next: HashMap<(StateId, Valuation), u32> = HashMap::new();
        for ((q, val), peak) in &layer {
            for &t in &idx.out[*q][x.index()] {
                let tr = &a.transitions[t];
                let mut v = val.clone();
                let p = (*peak).max(v.apply_all(&tr.actions));
                next.entry((tr.target, v))
                    .and_modify(|old| *old = (*old).min(p))
                    .or_insert(p);
            }
        }
        layer = next;
        if layer.is_empty() {
            return Value::Infinite;
        }
    }
    layer
        .iter()
        .filter(|((q, _), _)| idx.is_final[*q])
        .map(|(_, &p)| p as u64)
        .min()
        .map_or(Value::Infinite, Value::Finite)
}

/// Every run over `w` that starts in an initial state, with its value.
/// Fails once more than `limit` runs exist.
pub fn enumerate_runs(a: &CostAutomaton, w: &[Symbol], limit: usize) -> Result<Vec<(Run, u64)>> {
    let idx = a.index();
    let mut partial: Vec<(StateId, Vec<usize>)> =
        a.initial.iter().map(|&q| (q, Vec::new())).collect();
    for &x in w {
        let mut next = Vec::new();
        for (q, run) in &partial {
            for &t in &idx.out[*q][x.index()] {
                let mut r = run.clone();
                r.push(t);
                next.push((a.transitions[t].target, r));
                if next.len() > limit {
                    return Err(Error::budget("run enumeration", limit));
                }
            }
        }
        partial = next;
    }
    Ok(partial
        .into_iter()
        .map(|(_, r)| {
            let run = Run(r);
            let v = actions_value(a.counters, run.actions(a));
            (run, v)
        })
        .collect())
}

/// Accepting runs over `w`, each exactly once. An empty word has one run per
/// initial state that is also final; they are told apart only by their start,
/// so the empty run is reported once.
pub fn enumerate_accepting_runs(
    a: &CostAutomaton,
    w: &[Symbol],
    limit: usize,
) -> Result<Vec<(Run, u64)>> {
    if w.is_empty() {
        let acc = a.initial.iter().any(|q| a.finals.contains(q));
        return Ok(if acc { vec![(Run::default(), 0)] } else { vec![] });
    }
    let idx = a.index();
    Ok(enumerate_runs(a, w, limit)?
        .into_iter()
        .filter(|(r, _)| idx.is_final[r.target(a).expect("non-empty run")])
        .collect())
}

/// For each length up to `max_len`, the largest value of a word of `lang`
/// with that length, or `None` if `lang` has no such word.
pub fn value_profile(a: &CostAutomaton, lang: &Dfa, max_len: usize) -> Vec<Option<Value>> {
    (0..=max_len)
        .map(|n| {
            lang.alphabet
                .words_of_length(n)
                .filter(|w| lang.accepts(w))
                .map(|w| evaluate(a, &w))
                .max()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::fixtures::*;
    use crate::regex::Language;

    fn word(a: &CostAutomaton, s: &str) -> Vec<Symbol> {
        a.alphabet.parse_word(s).unwrap()
    }

    #[test]
    fn example1_counts_consecutive_as() {
        let a = example1();
        assert_eq!(evaluate(&a, &word(&a, "aabaaa")), Value::Finite(3));
        assert_eq!(evaluate(&a, &word(&a, "")), Value::Finite(0));
    }

    #[test]
    fn example3_takes_the_best_block() {
        let a = example3();
        assert_eq!(evaluate(&a, &word(&a, "aabaaaaa")), Value::Finite(2));
        let runs = enumerate_accepting_runs(&a, &word(&a, "aba"), 1000).unwrap();
        let mut vals: Vec<u64> = runs.iter().map(|(_, v)| *v).collect();
        vals.sort();
        assert_eq!(vals, vec![1, 1]);
    }

    #[test]
    fn no_accepting_run_is_infinite() {
        let mut a = example1();
        a.finals.clear();
        assert_eq!(evaluate(&a, &word(&a, "ab")), Value::Infinite);
        assert!(enumerate_accepting_runs(&a, &word(&a, "ab"), 10).unwrap().is_empty());
    }

    #[test]
    fn evaluate_matches_enumeration() {
        for a in [example1(), example2(), example3()] {
            for w in a.alphabet.words_up_to(7) {
                let best = enumerate_accepting_runs(&a, &w, 100_000)
                    .unwrap()
                    .iter()
                    .map(|(_, v)| *v)
                    .min()
                    .map_or(Value::Infinite, Value::Finite);
                assert_eq!(evaluate(&a, &w), best);
            }
        }
    }

    #[test]
    fn profiles() {
        let a = example1();
        let astar = Language::parse_regex("a*", &a.alphabet).unwrap();
        let p = value_profile(&a, &astar.dfa, 8);
        for (n, v) in p.iter().enumerate() {
            assert_eq!(*v, Some(Value::Finite(n as u64)));
        }
        let ab = Language::parse_regex("(ab)*", &a.alphabet).unwrap();
        let p = value_profile(&a, &ab.dfa, 8);
        assert_eq!(p[1], None);
        assert!(p.iter().flatten().all(|v| *v <= Value::Finite(1)));
    }

    #[test]
    fn example2_is_max_of_block_and_b_count() {
        let a = example2();
        for w in a.alphabet.words_up_to(12) {
            let v = evaluate(&a, &w).finite().unwrap();
            let bs = w.iter().filter(|s| s.0 == 1).count() as u64;
            let block = w
                .split(|s| s.0 == 1)
                .map(|blk| blk.len() as u64)
                .max()
                .unwrap_or(0);
            assert_eq!(v, bs.max(block));
            let n = w.len() as u64;
            // n letters split into at most v+1 blocks of at most v letters plus v separators
            assert!(v <= n && n <= v * v + 2 * v);
        }
    }

    #[test]
    fn example2_square_root_bound_is_loose_on_short_words() {
        let a = example2();
        assert_eq!(evaluate(&a, &word(&a, "aba")), Value::Finite(1));
    }
}
