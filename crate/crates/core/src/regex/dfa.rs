use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};
use crate::regex::nfa::Nfa;

/// Complete deterministic automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    pub alphabet: Alphabet,
    pub names: Vec<String>,
    /// `trans[state][symbol]`
    pub trans: Vec<Vec<usize>>,
    pub initial: usize,
    pub finals: Vec<bool>,
}

impl Dfa {
    pub fn state_count(&self) -> usize {
        self.trans.len()
    }

    pub fn step(&self, q: usize, a: Symbol) -> usize {
        self.trans[q][a.index()]
    }

    pub fn run(&self, word: &[Symbol]) -> usize {
        word.iter().fold(self.initial, |q, &a| self.step(q, a))
    }

    pub fn accepts(&self, word: &[Symbol]) -> bool {
        self.finals[self.run(word)]
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn to_nfa(&self) -> Nfa {
        Nfa {
            alphabet: self.alphabet.clone(),
            trans: self
                .trans
                .iter()
                .map(|row| row.iter().map(|&r| vec![r]).collect())
                .collect(),
            initial: vec![self.initial],
            finals: self.finals.clone(),
        }
    }

    /// States from which some final state is reachable.
    pub fn live_states(&self) -> Vec<bool> {
        let adj: Vec<Vec<usize>> = self.trans.clone();
        let rev = crate::graph::reverse(&adj);
        let finals = (0..self.state_count()).filter(|&q| self.finals[q]);
        crate::graph::reachable(&rev, finals)
    }

    /// Underlying digraph of the trimmed automaton (dead states removed),
    /// used as the input automaton for the cycle-rank cap.
    pub fn trimmed_graph(&self) -> Vec<Vec<usize>> {
        let live = self.live_states();
        self.trans
            .iter()
            .enumerate()
            .map(|(q, row)| {
                if !live[q] {
                    return Vec::new();
                }
                let mut succ: Vec<usize> = row.iter().copied().filter(|&r| live[r]).collect();
                succ.sort_unstable();
                succ.dedup();
                succ
            })
            .collect()
    }

    pub fn is_finite_language(&self) -> bool {
        let live = self.live_states();
        let adj = self.trimmed_graph();
        let reach = crate::graph::reachable(&adj, [self.initial]);
        let alive: Vec<bool> = (0..self.state_count()).map(|q| live[q] && reach[q]).collect();
        crate::graph::strongly_connected_components(&adj, &alive)
            .iter()
            .all(|c| !crate::graph::is_cyclic_component(&adj, c))
    }

    /// Structural minimisation with breadth-first canonical numbering, so two
    /// automata for the same language minimise to equal values (up to names).
    pub fn minimize(&self) -> Dfa {
        let k = self.alphabet.len();
        // reachable part, canonical BFS order
        let mut order = vec![usize::MAX; self.state_count()];
        let mut queue = VecDeque::from([self.initial]);
        let mut reach = Vec::new();
        order[self.initial] = 0;
        reach.push(self.initial);
        while let Some(q) = queue.pop_front() {
            for a in 0..k {
                let r = self.trans[q][a];
                if order[r] == usize::MAX {
                    order[r] = reach.len();
                    reach.push(r);
                    queue.push_back(r);
                }
            }
        }
        let n = reach.len();
        // Moore refinement
        let mut class: Vec<usize> = reach.iter().map(|&q| usize::from(self.finals[q])).collect();
        loop {
            let mut sig: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let mut next = vec![0; n];
            for i in 0..n {
                let q = reach[i];
                let key = (
                    class[i],
                    (0..k).map(|a| class[order[self.trans[q][a]]]).collect(),
                );
                let len = sig.len();
                next[i] = *sig.entry(key).or_insert(len);
            }
            let stable = sig.len() == class.iter().collect::<BTreeSet<_>>().len();
            class = next;
            if stable {
                break;
            }
        }
        // renumber classes in BFS order of representatives
        let mut rename = vec![usize::MAX; n];
        let mut reps = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        rename[class[0]] = 0;
        reps.push(0usize);
        while let Some(i) = queue.pop_front() {
            for a in 0..k {
                let j = order[self.trans[reach[i]][a]];
                if rename[class[j]] == usize::MAX {
                    rename[class[j]] = reps.len();
                    reps.push(j);
                    queue.push_back(j);
                }
            }
        }
        let m = reps.len();
        let trans = reps
            .iter()
            .map(|&i| {
                (0..k)
                    .map(|a| rename[class[order[self.trans[reach[i]][a]]]])
                    .collect()
            })
            .collect();
        Dfa {
            alphabet: self.alphabet.clone(),
            names: (0..m).map(|i| format!("q{i}")).collect(),
            trans,
            initial: 0,
            finals: reps.iter().map(|&i| self.finals[reach[i]]).collect(),
        }
    }

    /// Language equality, decided on minimal forms.
    pub fn same_language(&self, other: &Dfa) -> bool {
        if self.alphabet != other.alphabet {
            return false;
        }
        let (a, b) = (self.minimize(), other.minimize());
        a.trans == b.trans && a.finals == b.finals
    }

    /// Language inclusion `L(self) ⊆ L(other)` by product search.
    pub fn is_subset_of(&self, other: &Dfa) -> bool {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![(self.initial, other.initial)];
        seen.insert((self.initial, other.initial));
        while let Some((p, q)) = stack.pop() {
            if self.finals[p] && !other.finals[q] {
                return false;
            }
            for a in self.alphabet.symbols() {
                let next = (self.step(p, a), other.step(q, a));
                if seen.insert(next) {
                    stack.push(next);
                }
            }
        }
        true
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("dfa\n");
        let _ = writeln!(out, "alphabet: {}", self.alphabet.header());
        let _ = writeln!(out, "states: {}", self.names.join(" "));
        let _ = writeln!(out, "initial: {}", self.names[self.initial]);
        let finals: Vec<&str> = (0..self.state_count())
            .filter(|&q| self.finals[q])
            .map(|q| self.names[q].as_str())
            .collect();
        let _ = writeln!(out, "final: {}", finals.join(" "));
        for (q, row) in self.trans.iter().enumerate() {
            for a in self.alphabet.symbols() {
                let _ = writeln!(
                    out,
                    "trans: {} {} {}",
                    self.names[q],
                    self.alphabet.letter(a),
                    self.names[row[a.index()]]
                );
            }
        }
        out
    }

    /// Reads the line-based format produced by [`Dfa::to_text`].
    pub fn parse(text: &str) -> Result<Dfa> {
        let mut lines = crate::format::content_lines(text);
        let (ln, first) = lines
            .next()
            .ok_or_else(|| Error::parse(1, 1, "empty input"))?;
        if first != "dfa" {
            return Err(Error::parse(ln, 1, "expected 'dfa' header"));
        }
        let mut alphabet = None;
        let mut names: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut initial = None;
        let mut finals_raw = Vec::new();
        let mut trans_raw = Vec::new();
        for (ln, line) in lines {
            let (key, rest) = crate::format::split_key(line, ln)?;
            match key {
                "alphabet" => alphabet = Some(Alphabet::parse_list(rest, ln)?),
                "states" => {
                    for name in rest.split_whitespace() {
                        if index.insert(name.to_string(), names.len()).is_some() {
                            return Err(Error::parse(ln, 1, format!("duplicate state '{name}'")));
                        }
                        names.push(name.to_string());
                    }
                }
                "initial" => initial = Some((ln, rest.trim().to_string())),
                "final" => finals_raw.extend(rest.split_whitespace().map(|s| (ln, s.to_string()))),
                "trans" => trans_raw.push((ln, rest.to_string())),
                other => return Err(Error::parse(ln, 1, format!("unknown key '{other}'"))),
            }
        }
        let alphabet = alphabet.ok_or_else(|| Error::parse(1, 1, "missing 'alphabet:' line"))?;
        let lookup = |ln: usize, name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::parse(ln, 1, format!("unknown state '{name}'")))
        };
        let (iln, iname) = initial.ok_or_else(|| Error::parse(1, 1, "missing 'initial:' line"))?;
        let initial = lookup(iln, &iname)?;
        let mut finals = vec![false; names.len()];
        for (ln, name) in &finals_raw {
            finals[lookup(*ln, name)?] = true;
        }
        let mut trans = vec![vec![usize::MAX; alphabet.len()]; names.len()];
        for (ln, body) in &trans_raw {
            let parts: Vec<&str> = body.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(Error::parse(*ln, 1, "expected 'trans: <from> <letter> <to>'"));
            }
            let from = lookup(*ln, parts[0])?;
            let letter = single_letter(&alphabet, parts[1], *ln)?;
            let to = lookup(*ln, parts[2])?;
            let slot = &mut trans[from][letter.index()];
            if *slot != usize::MAX && *slot != to {
                return Err(Error::parse(*ln, 1, "nondeterministic transition"));
            }
            *slot = to;
        }
        for (q, row) in trans.iter().enumerate() {
            for a in alphabet.symbols() {
                if row[a.index()] == usize::MAX {
                    return Err(Error::parse(
                        1,
                        1,
                        format!(
                            "missing transition from '{}' on '{}'",
                            names[q],
                            alphabet.letter(a)
                        ),
                    ));
                }
            }
        }
        Ok(Dfa {
            alphabet,
            names,
            trans,
            initial,
            finals,
        })
    }
}

pub(crate) fn single_letter(alphabet: &Alphabet, tok: &str, ln: usize) -> Result<Symbol> {
    let mut chars = tok.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => alphabet
            .symbol(c)
            .ok_or_else(|| Error::parse(ln, 1, format!("letter '{c}' is not in the alphabet"))),
        _ => Err(Error::parse(ln, 1, format!("'{tok}' is not a letter"))),
    }
}

/// Subset construction followed by minimisation.
pub fn determinize_minimize(n: &Nfa) -> Dfa {
    let k = n.alphabet.len();
    let start: BTreeSet<usize> = n.initial.iter().copied().collect();
    let mut ids: HashMap<BTreeSet<usize>, usize> = HashMap::new();
    let mut sets = vec![start.clone()];
    ids.insert(start, 0);
    let mut trans: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < sets.len() {
        let mut row = Vec::with_capacity(k);
        for a in 0..k {
            let next: BTreeSet<usize> = sets[i]
                .iter()
                .flat_map(|&q| n.trans[q][a].iter().copied())
                .collect();
            let id = match ids.get(&next) {
                Some(&id) => id,
                None => {
                    let id = sets.len();
                    ids.insert(next.clone(), id);
                    sets.push(next);
                    id
                }
            };
            row.push(id);
        }
        trans.push(row);
        i += 1;
    }
    let finals = sets.iter().map(|s| s.iter().any(|&q| n.finals[q])).collect();
    Dfa {
        alphabet: n.alphabet.clone(),
        names: (0..sets.len()).map(|i| format!("q{i}")).collect(),
        trans,
        initial: 0,
        finals,
    }
    .minimize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regex::ast::parse_regex;
    use crate::regex::nfa::regex_to_nfa;

    fn ab() -> Alphabet {
        Alphabet::new(['a', 'b']).unwrap()
    }

    fn min_dfa(s: &str) -> Dfa {
        determinize_minimize(&regex_to_nfa(&parse_regex(s, &ab()).unwrap()))
    }

    #[test]
    fn universal_language_has_one_final_state() {
        let d = min_dfa("(a+b)*");
        assert_eq!(d.state_count(), 1);
        assert!(d.finals[0]);
    }

    #[test]
    fn single_letter_has_three_states() {
        // start, accept, sink
        let d = min_dfa("a");
        assert_eq!(d.state_count(), 3);
        assert_eq!(d.finals.iter().filter(|f| **f).count(), 1);
    }

    #[test]
    fn empty_language_has_one_rejecting_state() {
        let d = min_dfa("empty");
        assert_eq!(d.state_count(), 1);
        assert!(!d.finals[0]);
    }

    #[test]
    fn equivalent_expressions_minimise_identically() {
        assert!(min_dfa("(a*b*)*").same_language(&min_dfa("(a+b)*")));
        assert!(!min_dfa("a*").same_language(&min_dfa("(a+b)*")));
        assert!(min_dfa("a*").is_subset_of(&min_dfa("(a+b)*")));
        assert!(!min_dfa("(a+b)*").is_subset_of(&min_dfa("a*")));
    }

    #[test]
    fn finiteness() {
        assert!(min_dfa("ab+ba").is_finite_language());
        assert!(min_dfa("empty").is_finite_language());
        assert!(!min_dfa("a*").is_finite_language());
    }

    #[test]
    fn text_round_trip() {
        let d = min_dfa("(ab)*");
        let again = Dfa::parse(&d.to_text()).unwrap();
        assert_eq!(d, again);
    }

    #[test]
    fn parse_rejects_partial_functions() {
        let text = "dfa\nalphabet: a b\nstates: p\ninitial: p\nfinal: p\ntrans: p a p\n";
        assert!(matches!(Dfa::parse(text), Err(Error::Parse { .. })));
    }
}
