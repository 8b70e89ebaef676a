//! Determinisation of Büchi automata into parity automata with compact Safra
//! trees: node names are kept contiguous and each step emits a priority.
//!
//! Priorities are max-parity: a run accepts iff the largest priority seen
//! infinitely often is even.

use std::collections::HashMap;
use std::hash::Hash;

use indexmap::IndexSet;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

use super::nba::Nba;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Node {
    name: usize,
    label: BitSet,
    children: Vec<Node>,
}

/// Preorder list of (name, depth, label); empty for the empty tree.
type Canon = Vec<(usize, usize, BitSet)>;

fn canon(root: &Option<Node>) -> Canon {
    fn walk(n: &Node, depth: usize, out: &mut Canon) {
        out.push((n.name, depth, n.label.clone()));
        for c in &n.children {
            walk(c, depth + 1, out);
        }
    }
    let mut out = Vec::new();
    if let Some(r) = root {
        walk(r, 0, &mut out);
    }
    out
}

fn uncanon(c: &Canon) -> Option<Node> {
    fn build(c: &Canon, i: &mut usize, depth: usize) -> Node {
        let (name, _, label) = c[*i].clone();
        *i += 1;
        let mut children = Vec::new();
        while *i < c.len() && c[*i].1 == depth + 1 {
            children.push(build(c, i, depth + 1));
        }
        Node {
            name,
            label,
            children,
        }
    }
    if c.is_empty() {
        return None;
    }
    let mut i = 0;
    Some(build(c, &mut i, 0))
}

/// Lazily explored deterministic parity automaton for an [`Nba`].
pub struct Determinizer<'a, N: Nba> {
    nba: &'a N,
    accepting: BitSet,
    states: IndexSet<Canon>,
    cache: HashMap<(usize, N::Letter), (usize, u32)>,
    budget: usize,
}

impl<'a, N: Nba> Determinizer<'a, N> {
    pub fn new(nba: &'a N, budget: usize) -> Self {
        let n = nba.state_count();
        let accepting = (0..n).filter(|&q| nba.is_accepting(q)).collect();
        let init: BitSet = nba.initial_states().into_iter().collect();
        let root = (!init.is_empty()).then(|| Node {
            name: 1,
            label: init,
            children: Vec::new(),
        });
        let mut states = IndexSet::new();
        states.insert(canon(&root));
        Determinizer {
            nba,
            accepting,
            states,
            cache: HashMap::new(),
            budget,
        }
    }

    pub fn initial(&self) -> usize {
        0
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    /// Largest priority that can be emitted.
    pub fn max_priority(&self) -> u32 {
        2 * self.nba.state_count() as u32 + 1
    }

    /// Successor state and emitted priority.
    pub fn step(&mut self, d: usize, letter: &N::Letter) -> Result<(usize, u32)> {
        if let Some(&hit) = self.cache.get(&(d, letter.clone())) {
            return Ok(hit);
        }
        let tree = uncanon(&self.states[d]);
        let (next, min_prio) = self.step_tree(tree, letter);
        let (id, fresh) = self.states.insert_full(canon(&next));
        if fresh && self.states.len() > self.budget {
            return Err(Error::budget("parity automaton states", self.budget));
        }
        let out = (id, self.max_priority() + 1 - min_prio);
        self.cache.insert((d, letter.clone()), out);
        Ok(out)
    }

    /// One Safra step; returns the new tree and a min-parity priority in
    /// `1..=2n+1`, where `2n+1` means nothing happened.
    fn step_tree(&self, tree: Option<Node>, letter: &N::Letter) -> (Option<Node>, u32) {
        let neutral = self.max_priority();
        let Some(mut root) = tree else {
            return (None, neutral);
        };
        let old_max = count(&root);
        let mut fresh = old_max + 1;
        spawn(&mut root, &self.accepting, &mut fresh);
        self.advance(&mut root, letter);
        let all = root.label.clone();
        horizontal(&mut root, &all);
        let mut removed = Vec::new();
        let mut marked = Vec::new();
        let root = if root.label.is_empty() {
            collect_names(&root, &mut removed);
            None
        } else {
            prune_empty(&mut root, &mut removed);
            vertical(&mut root, &mut removed, &mut marked);
            Some(root)
        };
        let f = removed.iter().copied().filter(|&x| x <= old_max).min();
        let e = marked.iter().copied().min();
        let mut prio = neutral;
        if let Some(f) = f {
            prio = prio.min(2 * f as u32 - 1);
        }
        if let Some(e) = e {
            prio = prio.min(2 * e as u32);
        }
        let root = root.map(|mut r| {
            let mut names = Vec::new();
            collect_names(&r, &mut names);
            names.sort_unstable();
            let rank: HashMap<usize, usize> =
                names.iter().enumerate().map(|(i, &x)| (x, i + 1)).collect();
            rename(&mut r, &rank);
            r
        });
        (root, prio)
    }

    fn advance(&self, node: &mut Node, letter: &N::Letter) {
        node.label = node
            .label
            .iter()
            .flat_map(|q| self.nba.successors(q, letter))
            .collect();
        for c in &mut node.children {
            self.advance(c, letter);
        }
    }
}

fn count(n: &Node) -> usize {
    1 + n.children.iter().map(count).sum::<usize>()
}

fn spawn(n: &mut Node, acc: &BitSet, fresh: &mut usize) {
    for c in &mut n.children {
        spawn(c, acc, fresh);
    }
    let mut hit = n.label.clone();
    hit.intersect_with(acc);
    if !hit.is_empty() {
        n.children.push(Node {
            name: *fresh,
            label: hit,
            children: Vec::new(),
        });
        *fresh += 1;
    }
}

/// Keeps in each node only the states not claimed by an older sibling of it
/// or of one of its ancestors.
fn horizontal(n: &mut Node, allowed: &BitSet) {
    n.label.intersect_with(allowed);
    let mut claimed = BitSet::new();
    for c in &mut n.children {
        let mut room = n.label.clone();
        room.difference_with(&claimed);
        horizontal(c, &room);
        claimed.union_with(&c.label);
    }
}

fn prune_empty(n: &mut Node, removed: &mut Vec<usize>) {
    n.children.retain(|c| {
        if c.label.is_empty() {
            collect_names(c, removed);
            false
        } else {
            true
        }
    });
    for c in &mut n.children {
        prune_empty(c, removed);
    }
}

fn vertical(n: &mut Node, removed: &mut Vec<usize>, marked: &mut Vec<usize>) {
    if !n.children.is_empty() {
        let mut union = BitSet::new();
        for c in &n.children {
            union.union_with(&c.label);
        }
        if union == n.label {
            for c in &n.children {
                collect_names(c, removed);
            }
            n.children.clear();
            marked.push(n.name);
            return;
        }
    }
    for c in &mut n.children {
        vertical(c, removed, marked);
    }
}

fn collect_names(n: &Node, out: &mut Vec<usize>) {
    out.push(n.name);
    for c in &n.children {
        collect_names(c, out);
    }
}

fn rename(n: &mut Node, rank: &HashMap<usize, usize>) {
    n.name = rank[&n.name];
    for c in &mut n.children {
        rename(c, rank);
    }
}

/// An explicit deterministic parity automaton over a finite letter set, with
/// priorities on transitions.
#[derive(Clone, Debug)]
pub struct DetParityAutomaton<L: Eq + Hash> {
    pub states: usize,
    pub initial: usize,
    pub letters: Vec<L>,
    /// `delta[state][letter index] = (target, priority)`
    pub delta: Vec<Vec<(usize, u32)>>,
}

impl<L: Clone + Eq + Hash> DetParityAutomaton<L> {
    /// Whether `u v^ω` is accepted; letters outside the automaton's set panic.
    pub fn accepts_lasso(&self, u: &[L], v: &[L]) -> bool {
        assert!(!v.is_empty(), "loop of a lasso must be non-empty");
        let pos: HashMap<&L, usize> = self.letters.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let mut d = self.initial;
        for l in u {
            d = self.delta[d][pos[l]].0;
        }
        let mut seen: HashMap<usize, usize> = HashMap::new();
        let mut maxes = Vec::new();
        while !seen.contains_key(&d) {
            seen.insert(d, maxes.len());
            let mut m = 0;
            for l in v {
                let (next, p) = self.delta[d][pos[l]];
                m = m.max(p);
                d = next;
            }
            maxes.push(m);
        }
        maxes[seen[&d]..].iter().max().copied().unwrap_or(0) % 2 == 0
    }
}

/// Fully explores the determinisation of `b` over `letters`.
pub fn determinize_to_parity<N: Nba>(
    b: &N,
    letters: &[N::Letter],
    budget: usize,
) -> Result<DetParityAutomaton<N::Letter>> {
    let mut det = Determinizer::new(b, budget);
    let mut delta: Vec<Vec<(usize, u32)>> = Vec::new();
    let mut i = 0;
    while i < det.state_count() {
        let row = letters
            .iter()
            .map(|l| det.step(i, l))
            .collect::<Result<Vec<_>>>()?;
        delta.push(row);
        i += 1;
    }
    Ok(DetParityAutomaton {
        states: det.state_count(),
        initial: det.initial(),
        letters: letters.to_vec(),
        delta,
    })
}
