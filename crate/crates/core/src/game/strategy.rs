use std::collections::HashMap;
use std::fmt::Write as _;

use crate::alphabet::{Alphabet, Symbol};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::format::{content_lines, split_key};
use crate::regex::dfa::single_letter;

use super::spec::{DeltaDisplay, TransitionSet};

/// Strategy of player B: a deterministic automaton reading A's letters whose
/// state after `a₁⋯aₙ` determines B's `n`-th move through `out`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMemoryStrategy {
    pub alphabet: Alphabet,
    pub states: Vec<String>,
    pub initial: usize,
    /// `trans[state][letter]`
    pub trans: Vec<Vec<usize>>,
    /// Transition ids played in each state.
    pub out: Vec<TransitionSet>,
}

impl FiniteMemoryStrategy {
    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    /// B's moves `δ₁⋯δₙ` in answer to `word`.
    pub fn play(&self, word: &[Symbol]) -> Vec<TransitionSet> {
        let mut m = self.initial;
        word.iter()
            .map(|&a| {
                m = self.trans[m][a.index()];
                self.out[m].clone()
            })
            .collect()
    }

    /// Merges states with the same output and equivalent futures, keeping
    /// only states reachable from the initial one.
    pub fn minimize(&self) -> FiniteMemoryStrategy {
        let k = self.alphabet.len();
        let reach = crate::graph::reachable(&self.trans, [self.initial]);
        let live: Vec<usize> = (0..self.state_count()).filter(|&q| reach[q]).collect();
        let mut out_ids: HashMap<&TransitionSet, usize> = HashMap::new();
        let mut class: Vec<usize> = vec![usize::MAX; self.state_count()];
        for &q in &live {
            let n = out_ids.len();
            class[q] = *out_ids.entry(&self.out[q]).or_insert(n);
        }
        let mut count = out_ids.len();
        loop {
            let mut sig_ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let mut next = vec![usize::MAX; self.state_count()];
            for &q in &live {
                let sig = (class[q], (0..k).map(|a| class[self.trans[q][a]]).collect());
                let n = sig_ids.len();
                next[q] = *sig_ids.entry(sig).or_insert(n);
            }
            let new_count = sig_ids.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        // number classes in breadth-first order from the initial state
        let mut order: Vec<usize> = Vec::new();
        let mut id_of: HashMap<usize, usize> = HashMap::new();
        id_of.insert(class[self.initial], 0);
        order.push(self.initial);
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            for a in 0..k {
                let r = self.trans[q][a];
                if !id_of.contains_key(&class[r]) {
                    id_of.insert(class[r], order.len());
                    order.push(r);
                }
            }
            i += 1;
        }
        FiniteMemoryStrategy {
            alphabet: self.alphabet.clone(),
            states: (0..order.len()).map(|i| format!("m{i}")).collect(),
            initial: 0,
            trans: order
                .iter()
                .map(|&q| (0..k).map(|a| id_of[&class[self.trans[q][a]]]).collect())
                .collect(),
            out: order.iter().map(|&q| self.out[q].clone()).collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("strategy\n");
        let _ = writeln!(s, "alphabet: {}", self.alphabet.header());
        let _ = writeln!(s, "states: {}", self.states.join(" "));
        let _ = writeln!(s, "initial: {}", self.states[self.initial]);
        for (q, row) in self.trans.iter().enumerate() {
            for a in self.alphabet.symbols() {
                let _ = writeln!(
                    s,
                    "trans: {} {} {}",
                    self.states[q],
                    self.alphabet.letter(a),
                    self.states[row[a.index()]]
                );
            }
        }
        for (q, d) in self.out.iter().enumerate() {
            let _ = writeln!(s, "out: {} -> {}", self.states[q], DeltaDisplay(d));
        }
        s
    }

    pub fn parse(text: &str) -> Result<FiniteMemoryStrategy> {
        let mut lines = content_lines(text);
        let (ln, first) = lines
            .next()
            .ok_or_else(|| Error::parse(1, 1, "empty input"))?;
        if first != "strategy" {
            return Err(Error::parse(ln, 1, "expected 'strategy' header"));
        }
        let mut alphabet = None;
        let mut states: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut initial = None;
        let mut trans_raw = Vec::new();
        let mut out_raw = Vec::new();
        for (ln, line) in lines {
            let (key, rest) = split_key(line, ln)?;
            match key {
                "alphabet" => alphabet = Some(Alphabet::parse_list(rest, ln)?),
                "states" => {
                    for name in rest.split_whitespace() {
                        if index.insert(name.to_string(), states.len()).is_some() {
                            return Err(Error::parse(ln, 1, format!("duplicate state '{name}'")));
                        }
                        states.push(name.to_string());
                    }
                }
                "initial" => initial = Some((ln, rest)),
                "trans" => trans_raw.push((ln, rest)),
                "out" => out_raw.push((ln, rest)),
                other => return Err(Error::parse(ln, 1, format!("unknown key '{other}'"))),
            }
        }
        let alphabet = alphabet.ok_or_else(|| Error::parse(1, 1, "missing 'alphabet:' line"))?;
        let lookup = |ln: usize, name: &str| {
            index
                .get(name.trim())
                .copied()
                .ok_or_else(|| Error::parse(ln, 1, format!("unknown state '{}'", name.trim())))
        };
        let (iln, iname) = initial.ok_or_else(|| Error::parse(1, 1, "missing 'initial:' line"))?;
        let initial = lookup(iln, iname)?;
        let mut trans = vec![vec![usize::MAX; alphabet.len()]; states.len()];
        for &(ln, body) in &trans_raw {
            let parts: Vec<&str> = body.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(Error::parse(ln, 1, "expected 'trans: <from> <letter> <to>'"));
            }
            let from = lookup(ln, parts[0])?;
            let a = single_letter(&alphabet, parts[1], ln)?;
            let to = lookup(ln, parts[2])?;
            if trans[from][a.index()] != usize::MAX {
                return Err(Error::parse(ln, 1, "duplicate transition"));
            }
            trans[from][a.index()] = to;
        }
        if let Some(q) = trans.iter().position(|row| row.contains(&usize::MAX)) {
            return Err(Error::parse(
                1,
                1,
                format!("state '{}' lacks a transition", states[q]),
            ));
        }
        let mut out: Vec<Option<TransitionSet>> = vec![None; states.len()];
        for &(ln, body) in &out_raw {
            let (name, set) = body
                .split_once("->")
                .ok_or_else(|| Error::parse(ln, 1, "expected 'out: <state> -> {t0,...}'"))?;
            let q = lookup(ln, name)?;
            out[q] = Some(parse_delta(set.trim(), ln)?);
        }
        let out = out
            .into_iter()
            .enumerate()
            .map(|(q, o)| {
                o.ok_or_else(|| Error::parse(1, 1, format!("state '{}' lacks an output", states[q])))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteMemoryStrategy {
            alphabet,
            states,
            initial,
            trans,
            out,
        })
    }
}

/// Parses `{t0,t3}` or `{}`.
pub fn parse_delta(text: &str, ln: usize) -> Result<TransitionSet> {
    let inner = text
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| Error::parse(ln, 1, format!("'{text}' is not a transition set")))?;
    let mut set = BitSet::new();
    for tok in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let id: usize = tok
            .strip_prefix('t')
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| Error::parse(ln, 1, format!("'{tok}' is not a transition id")))?;
        set.insert(id);
    }
    Ok(set)
}

/// Strategy of player A: a memory state picks the next letter, and B's answer
/// moves the memory. `None` marks answers after which A has already won.
///
/// Answers are first reduced to one transition per target state (the least
/// id among the options), which keeps the set of reachable states and only
/// removes runs.
#[derive(Clone, Debug)]
pub struct OpponentStrategy {
    pub letter: Vec<Symbol>,
    /// `(transition, target)` pairs B may usefully play from each memory
    /// state, by increasing id (ids of the caller's automaton).
    pub options: Vec<Vec<(usize, usize)>>,
    /// Successor memory for each reduced answer.
    pub next: Vec<HashMap<TransitionSet, Option<usize>>>,
    pub initial: usize,
}

impl OpponentStrategy {
    pub fn state_count(&self) -> usize {
        self.letter.len()
    }

    /// The reduced form of `delta` in memory state `m`.
    pub fn reduce(&self, m: usize, delta: &TransitionSet) -> TransitionSet {
        let mut covered = BitSet::new();
        let mut out = BitSet::new();
        for &(t, q) in &self.options[m] {
            if delta.contains(t) && covered.insert(q) {
                out.insert(t);
            }
        }
        out
    }

    /// The memory after B answers `delta` in state `m`.
    pub fn respond(&self, m: usize, delta: &TransitionSet) -> Option<usize> {
        *self.next[m]
            .get(&self.reduce(m, delta))
            .expect("every reduced answer is covered")
    }

    /// The memory after B answers with every useful transition.
    pub fn respond_full(&self, m: usize) -> Option<usize> {
        let all = self.options[m].iter().map(|&(t, _)| t).collect();
        self.respond(m, &all)
    }
}
