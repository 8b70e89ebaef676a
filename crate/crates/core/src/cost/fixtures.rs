//! The three small automata used throughout the tests, over the alphabet `{a, b}`.

use crate::alphabet::{Alphabet, Symbol};

use super::{CostAutomaton, CounterAction, Transition};

const A: Symbol = Symbol(0);
const B: Symbol = Symbol(1);

fn ab() -> Alphabet {
    Alphabet::new(['a', 'b']).expect("valid alphabet")
}

/// One state; `a` increments, `b` resets. The value is the longest run of
/// consecutive `a`s.
pub fn example1() -> CostAutomaton {
    CostAutomaton {
        alphabet: ab(),
        counters: 1,
        states: vec!["q".into()],
        initial: vec![0],
        finals: vec![0],
        transitions: vec![
            Transition::new(0, A, 0, [CounterAction::Increment(0)]),
            Transition::new(0, B, 0, [CounterAction::Reset(0)]),
        ],
    }
}

/// One state, two counters; `a` increments counter 0 and `b` increments
/// counter 1. The value is the larger of the longest `a`-block and the number
/// of `b`s.
pub fn example2() -> CostAutomaton {
    CostAutomaton {
        alphabet: ab(),
        counters: 2,
        states: vec!["q".into()],
        initial: vec![0],
        finals: vec![0],
        transitions: vec![
            Transition::new(0, A, 0, [CounterAction::Increment(0)]),
            Transition::new(0, B, 0, [CounterAction::Increment(1)]),
        ],
    }
}

/// Three states `left`, `middle`, `right`. A run waits in `left`, counts one
/// `a`-block in `middle` and idles in `right`. The value of the best accepting
/// run is the shortest `a`-block.
pub fn example3() -> CostAutomaton {
    let (l, m, r) = (0, 1, 2);
    CostAutomaton {
        alphabet: ab(),
        counters: 1,
        states: vec!["left".into(), "middle".into(), "right".into()],
        initial: vec![l, m],
        finals: vec![m, r],
        transitions: vec![
            Transition::new(l, A, l, []),
            Transition::new(l, B, l, []),
            Transition::new(l, B, m, []),
            Transition::new(m, A, m, [CounterAction::Increment(0)]),
            Transition::new(m, B, r, []),
            Transition::new(r, A, r, []),
            Transition::new(r, B, r, []),
        ],
    }
}

pub fn all() -> [(&'static str, CostAutomaton); 3] {
    [("ex1", example1()), ("ex2", example2()), ("ex3", example3())]
}
