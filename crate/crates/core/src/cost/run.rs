use crate::alphabet::Word;
use crate::error::{Error, Result};

use super::{CostAutomaton, CounterAction, StateId, TransId};

/// Current counter values; all zero at the start of a run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Valuation(pub Vec<u32>);

impl Valuation {
    pub fn zero(counters: usize) -> Self {
        Valuation(vec![0; counters])
    }

    /// Applies one action, including the cascade onto lower counters, and
    /// returns the value of the touched counter afterwards.
    pub fn apply(&mut self, action: CounterAction) -> u32 {
        match action {
            CounterAction::None => 0,
            CounterAction::Increment(c) => {
                self.0[..c].iter_mut().for_each(|v| *v = 0);
                self.0[c] += 1;
                self.0[c]
            }
            CounterAction::Reset(c) => {
                self.0[..=c].iter_mut().for_each(|v| *v = 0);
                0
            }
        }
    }

    /// Applies a sequence and returns the largest value reached on the way.
    pub fn apply_all(&mut self, actions: &[CounterAction]) -> u32 {
        actions.iter().map(|&a| self.apply(a)).max().unwrap_or(0)
    }
}

/// A sequence of transitions, each starting where the previous one ended.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Run(pub Vec<TransId>);

impl Run {
    /// Checks chaining and that the run starts in an initial state.
    pub fn check(&self, a: &CostAutomaton) -> Result<()> {
        let mut prev: Option<StateId> = None;
        for (i, &t) in self.0.iter().enumerate() {
            let tr = a
                .transitions
                .get(t)
                .ok_or_else(|| Error::InvalidRun(format!("transition t{t} does not exist")))?;
            match prev {
                None if !a.initial.contains(&tr.source) => {
                    return Err(Error::InvalidRun(format!(
                        "first transition t{t} does not leave an initial state"
                    )))
                }
                Some(p) if p != tr.source => {
                    return Err(Error::InvalidRun(format!(
                        "transition #{i} (t{t}) does not continue from state {}",
                        a.states[p]
                    )))
                }
                _ => {}
            }
            prev = Some(tr.target);
        }
        Ok(())
    }

    pub fn word(&self, a: &CostAutomaton) -> Word {
        self.0.iter().map(|&t| a.transitions[t].letter).collect()
    }

    pub fn target(&self, a: &CostAutomaton) -> Option<StateId> {
        self.0.last().map(|&t| a.transitions[t].target)
    }

    pub fn is_accepting(&self, a: &CostAutomaton) -> bool {
        match self.target(a) {
            Some(q) => a.finals.contains(&q),
            None => a.initial.iter().any(|q| a.finals.contains(q)),
        }
    }

    pub fn actions<'a>(&'a self, a: &'a CostAutomaton) -> impl Iterator<Item = CounterAction> + 'a {
        self.0
            .iter()
            .flat_map(move |&t| a.transitions[t].actions.iter().copied())
    }
}

/// Largest counter value seen along a sequence of actions.
pub fn actions_value(counters: usize, actions: impl IntoIterator<Item = CounterAction>) -> u64 {
    let mut v = Valuation::zero(counters);
    actions.into_iter().map(|x| v.apply(x)).max().unwrap_or(0) as u64
}

pub fn run_value(a: &CostAutomaton, r: &Run) -> Result<u64> {
    r.check(a)?;
    Ok(actions_value(a.counters, r.actions(a)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::fixtures::example1;
    use CounterAction::*;

    #[test]
    fn empty_run_has_value_zero() {
        assert_eq!(run_value(&example1(), &Run::default()).unwrap(), 0);
    }

    #[test]
    fn one_counter_blocks() {
        assert_eq!(actions_value(1, [Increment(0), Increment(0), Reset(0), Increment(0)]), 2);
    }

    #[test]
    fn higher_increment_resets_lower_counter() {
        let acts = [Increment(0), Increment(0), Increment(1), Increment(0)];
        assert_eq!(actions_value(2, acts), 2);
        let mut v = Valuation::zero(2);
        v.apply_all(&acts);
        assert_eq!(v.0, vec![1, 1]);
    }

    #[test]
    fn broken_chain_is_rejected() {
        let mut a = example1();
        a.states.push("x".into());
        a.transitions.push(crate::cost::Transition::new(1, crate::alphabet::Symbol(0), 1, []));
        assert!(matches!(run_value(&a, &Run(vec![0, 2])), Err(Error::InvalidRun(_))));
    }
}
