//! The cost automaton whose value on `w` is the least degree of a string
//! expression of bounded height containing `w` and contained in a subset
//! language.
//!
//! Counter layout for height `h`: the automaton for height `h - 1` uses
//! counters `0..K'` with `K' = 2h - 1`; counter `K'` counts the letters of the
//! current short factor `wⱼ` and counter `K' + 1` counts blocks. Starting a
//! block increments the block counter, which resets everything below it, and
//! starting a new loop iteration resets all inner counters.

use std::collections::{HashMap, VecDeque};
use std::rc::Rc;

use indexmap::IndexSet;

use crate::alphabet::{Alphabet, Symbol};
use crate::cost::{CostAutomaton, CounterAction, Index, StateId, Transition};
use crate::error::{Error, Result};
use crate::regex::{ElemSet, MonoidPresentation};

pub fn counters_for_height(h: usize) -> usize {
    2 * h + 1
}

/// Lazily built family of automata, one per (subset, height), sharing inner
/// levels.
pub struct HeightAutomata<'m> {
    monoid: &'m MonoidPresentation,
    alphabet: Alphabet,
    submonoids: Option<Vec<ElemSet>>,
    memo: HashMap<(ElemSet, usize), Rc<Built>>,
    state_budget: usize,
}

struct Built {
    aut: CostAutomaton,
    idx: Index,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Key {
    Start,
    Word(ElemSet),
    Loop {
        after: ElemSet,
        sub: usize,
        inner: StateId,
    },
}

/// Cap on the number of submonoids considered for loops.
const SUBMONOID_LIMIT: usize = 4096;

impl<'m> HeightAutomata<'m> {
    pub fn new(monoid: &'m MonoidPresentation, alphabet: &Alphabet, state_budget: usize) -> Self {
        HeightAutomata {
            monoid,
            alphabet: alphabet.clone(),
            submonoids: None,
            memo: HashMap::new(),
            state_budget,
        }
    }

    pub fn monoid(&self) -> &'m MonoidPresentation {
        self.monoid
    }

    pub fn build(&mut self, set: ElemSet, h: usize) -> Result<CostAutomaton> {
        Ok(self.get(set, h)?.aut.clone())
    }

    fn get(&mut self, set: ElemSet, h: usize) -> Result<Rc<Built>> {
        if let Some(b) = self.memo.get(&(set, h)) {
            return Ok(b.clone());
        }
        let aut = if h == 0 {
            self.base(set)
        } else {
            self.level(set, h)?
        }
        .trimmed();
        let built = Rc::new(Built {
            idx: aut.index(),
            aut,
        });
        self.memo.insert((set, h), built.clone());
        Ok(built)
    }

    /// A loop `vⱼ ∈ ([Nⱼ])*` only matters through the submonoid generated by
    /// `Nⱼ`, and enlarging `Nⱼ` to that submonoid only enlarges the inner
    /// language, so loops range over submonoids.
    fn submonoids(&mut self) -> Result<Vec<ElemSet>> {
        if let Some(s) = &self.submonoids {
            return Ok(s.clone());
        }
        let m = self.monoid;
        let mut seen: IndexSet<ElemSet> = IndexSet::new();
        seen.insert(ElemSet::singleton(m.identity));
        let mut i = 0;
        while i < seen.len() {
            let s = seen[i];
            for x in 0..m.size() {
                if !s.contains(x) {
                    let mut g = s;
                    g.insert(x);
                    seen.insert(m.closure(g));
                    if seen.len() > SUBMONOID_LIMIT {
                        return Err(Error::budget("submonoids", SUBMONOID_LIMIT));
                    }
                }
            }
            i += 1;
        }
        let out: Vec<ElemSet> = seen.into_iter().collect();
        self.submonoids = Some(out.clone());
        Ok(out)
    }

    /// Height 0: track the image of the word read so far, one increment per
    /// letter, so the value of `w` is `|w|` when `α(w) ∈ N`.
    fn base(&self, set: ElemSet) -> CostAutomaton {
        let m = self.monoid;
        let mut elems: IndexSet<usize> = IndexSet::new();
        elems.insert(m.identity);
        let mut transitions = Vec::new();
        let mut i = 0;
        while i < elems.len() {
            let e = elems[i];
            for (a, &img) in m.letter_image.iter().enumerate() {
                let (j, _) = elems.insert_full(m.mul(e, img));
                transitions.push(Transition::new(
                    i,
                    Symbol(a as u8),
                    j,
                    [CounterAction::Increment(0)],
                ));
            }
            i += 1;
        }
        CostAutomaton {
            alphabet: self.alphabet.clone(),
            counters: 1,
            states: elems.iter().map(|e| format!("m{e}")).collect(),
            initial: vec![0],
            finals: (0..elems.len()).filter(|&i| set.contains(elems[i])).collect(),
            transitions,
        }
    }

    fn level(&mut self, set: ElemSet, h: usize) -> Result<CostAutomaton> {
        let m = self.monoid;
        let k_inner = counters_for_height(h - 1);
        let short = k_inner;
        let block = k_inner + 1;
        let subs = self.submonoids()?;
        let inners: Vec<Rc<Built>> = subs
            .iter()
            .map(|&s| self.get(s, h - 1))
            .collect::<Result<_>>()?;
        let letters = m.letter_image.len();
        // a product set is worth keeping only if some continuation lands in `set`
        let viable = |p: ElemSet| (0..m.size()).any(|q| m.times(p, q).is_subset(set));

        let mut keys: IndexSet<Key> = IndexSet::new();
        keys.insert(Key::Start);
        let mut queue = VecDeque::from([0usize]);
        let mut transitions = Vec::new();
        while let Some(id) = queue.pop_front() {
            let key = keys[id].clone();
            for x in 0..letters {
                let sym = Symbol(x as u8);
                let mut edges: Vec<(Key, Vec<CounterAction>)> = Vec::new();
                let start_block = |p: ElemSet, edges: &mut Vec<(Key, Vec<CounterAction>)>| {
                    edges.push((
                        Key::Word(m.times(p, m.letter_image[x])),
                        vec![CounterAction::Increment(block), CounterAction::Increment(short)],
                    ));
                    for (sub, inner) in inners.iter().enumerate() {
                        let after = m.product(p, subs[sub]);
                        for (tgt, acts) in inner.first_moves(sym) {
                            let mut all = vec![CounterAction::Increment(block)];
                            all.extend(acts);
                            edges.push((Key::Loop { after, sub, inner: tgt }, all));
                        }
                    }
                };
                match key {
                    Key::Start => start_block(ElemSet::singleton(m.identity), &mut edges),
                    Key::Word(p) => {
                        edges.push((
                            Key::Word(m.times(p, m.letter_image[x])),
                            vec![CounterAction::Increment(short)],
                        ));
                        for (sub, inner) in inners.iter().enumerate() {
                            let after = m.product(p, subs[sub]);
                            for (tgt, acts) in inner.first_moves(sym) {
                                edges.push((Key::Loop { after, sub, inner: tgt }, acts));
                            }
                        }
                        start_block(p, &mut edges);
                    }
                    Key::Loop { after, sub, inner } => {
                        let b = &inners[sub];
                        for &t in &b.idx.out[inner][x] {
                            let tr = &b.aut.transitions[t];
                            edges.push((
                                Key::Loop {
                                    after,
                                    sub,
                                    inner: tr.target,
                                },
                                tr.actions.clone(),
                            ));
                        }
                        if b.idx.is_final[inner] {
                            for (tgt, acts) in b.first_moves(sym) {
                                let mut all = vec![CounterAction::Reset(k_inner - 1)];
                                all.extend(acts);
                                edges.push((Key::Loop { after, sub, inner: tgt }, all));
                            }
                            start_block(after, &mut edges);
                        }
                    }
                }
                for (k, acts) in edges {
                    let alive = match &k {
                        Key::Start => true,
                        Key::Word(p) => viable(*p),
                        Key::Loop { after, .. } => viable(*after),
                    };
                    if !alive {
                        continue;
                    }
                    let (j, fresh) = keys.insert_full(k);
                    if fresh {
                        if keys.len() > self.state_budget {
                            return Err(Error::budget("height automaton states", self.state_budget));
                        }
                        queue.push_back(j);
                    }
                    transitions.push(Transition::new(id, sym, j, acts));
                }
            }
        }
        let finals = keys
            .iter()
            .enumerate()
            .filter(|(_, k)| match k {
                Key::Start => set.contains(m.identity),
                Key::Word(p) => p.is_subset(set),
                Key::Loop { after, sub, inner } => {
                    inners[*sub].idx.is_final[*inner] && after.is_subset(set)
                }
            })
            .map(|(i, _)| i)
            .collect();
        let states = keys
            .iter()
            .map(|k| match k {
                Key::Start => "start".to_string(),
                Key::Word(p) => format!("w{:x}", p.0),
                Key::Loop { after, sub, inner } => {
                    format!("l{:x}.{}.{}", after.0, sub, inners[*sub].aut.states[*inner])
                }
            })
            .collect();
        Ok(CostAutomaton {
            alphabet: self.alphabet.clone(),
            counters: counters_for_height(h),
            states,
            initial: vec![0],
            finals,
            transitions,
        })
    }
}

impl Built {
    /// Moves from an initial state on `x`: target and actions.
    fn first_moves(&self, x: Symbol) -> Vec<(StateId, Vec<CounterAction>)> {
        self.aut
            .initial
            .iter()
            .flat_map(|&q| self.idx.out[q][x.index()].iter())
            .map(|&t| {
                let tr = &self.aut.transitions[t];
                (tr.target, tr.actions.clone())
            })
            .collect()
    }
}

/// The automaton for the subset `set` and height `h`, over `alphabet`.
pub fn build_height_automaton(
    monoid: &MonoidPresentation,
    alphabet: &Alphabet,
    set: ElemSet,
    h: usize,
    state_budget: usize,
) -> Result<CostAutomaton> {
    HeightAutomata::new(monoid, alphabet, state_budget).build(set, h)
}
