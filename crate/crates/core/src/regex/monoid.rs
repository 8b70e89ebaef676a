use std::collections::HashMap;

use crate::alphabet::Symbol;
use crate::error::{Error, Result};
use crate::regex::dfa::Dfa;

/// Set of monoid elements. Monoids are capped at 64 elements.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemSet(pub u64);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub fn singleton(e: usize) -> Self {
        ElemSet(1 << e)
    }

    pub fn contains(self, e: usize) -> bool {
        self.0 & (1 << e) != 0
    }

    pub fn insert(&mut self, e: usize) {
        self.0 |= 1 << e;
    }

    pub fn is_subset(self, other: ElemSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let b = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(b)
        })
    }
}

/// Finite monoid with a recognising morphism from words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidPresentation {
    /// Each element as the state transformation it induces on the DFA.
    pub transformations: Vec<Vec<u32>>,
    /// `table[x][y] = x · y`
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    /// Image of each letter.
    pub letter_image: Vec<usize>,
    /// Whether words mapping to the element belong to the language.
    pub accepting: Vec<bool>,
}

impl MonoidPresentation {
    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    pub fn image(&self, word: &[Symbol]) -> usize {
        word.iter()
            .fold(self.identity, |x, &a| self.mul(x, self.letter_image[a.index()]))
    }

    pub fn accepting_set(&self) -> ElemSet {
        let mut s = ElemSet::EMPTY;
        for (e, &acc) in self.accepting.iter().enumerate() {
            if acc {
                s.insert(e);
            }
        }
        s
    }

    pub fn all(&self) -> ElemSet {
        if self.size() == 64 {
            ElemSet(u64::MAX)
        } else {
            ElemSet((1u64 << self.size()) - 1)
        }
    }

    /// `{ x · y : x ∈ xs, y ∈ ys }`
    pub fn product(&self, xs: ElemSet, ys: ElemSet) -> ElemSet {
        let mut out = ElemSet::EMPTY;
        for x in xs.iter() {
            for y in ys.iter() {
                out.insert(self.mul(x, y));
            }
        }
        out
    }

    pub fn times(&self, xs: ElemSet, y: usize) -> ElemSet {
        let mut out = ElemSet::EMPTY;
        for x in xs.iter() {
            out.insert(self.mul(x, y));
        }
        out
    }

    /// Submonoid generated by `gens` (always contains the identity).
    pub fn closure(&self, gens: ElemSet) -> ElemSet {
        let mut out = ElemSet::singleton(self.identity);
        loop {
            let next = ElemSet(out.0 | self.product(out, gens).0);
            if next == out {
                return out;
            }
            out = next;
        }
    }

    /// Checks associativity and the identity laws on the whole table.
    pub fn check_laws(&self) -> bool {
        let n = self.size();
        for x in 0..n {
            if self.mul(x, self.identity) != x || self.mul(self.identity, x) != x {
                return false;
            }
            for y in 0..n {
                for z in 0..n {
                    if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Transition monoid of a complete DFA: the distinct state transformations
/// induced by words, with composition read left to right.
pub fn transition_monoid(d: &Dfa, max_size: usize) -> Result<MonoidPresentation> {
    let limit = max_size.min(64);
    let n = d.state_count();
    let identity: Vec<u32> = (0..n as u32).collect();
    let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut elems = vec![identity.clone()];
    index.insert(identity, 0);
    let letter_maps: Vec<Vec<u32>> = d
        .alphabet
        .symbols()
        .map(|a| (0..n).map(|q| d.step(q, a) as u32).collect())
        .collect();
    let compose = |x: &[u32], y: &[u32]| -> Vec<u32> { x.iter().map(|&q| y[q as usize]).collect() };
    let mut i = 0;
    while i < elems.len() {
        for m in &letter_maps {
            let next = compose(&elems[i], m);
            if !index.contains_key(&next) {
                if elems.len() >= limit {
                    return Err(Error::budget("monoid size", limit));
                }
                index.insert(next.clone(), elems.len());
                elems.push(next);
            }
        }
        i += 1;
    }
    let table = elems
        .iter()
        .map(|x| elems.iter().map(|y| index[&compose(x, y)]).collect())
        .collect();
    let letter_image = letter_maps.iter().map(|m| index[m]).collect();
    let accepting = elems
        .iter()
        .map(|t| d.finals[t[d.initial] as usize])
        .collect();
    Ok(MonoidPresentation {
        transformations: elems,
        table,
        identity: 0,
        letter_image,
        accepting,
    })
}
