//! Brute-force membership in the subset languages, by exhaustive
//! factorisation and guessing of the loop subsets. Used only as a test oracle.

use std::collections::{HashMap, HashSet};

use crate::alphabet::Symbol;
use crate::cost::Value;
use crate::error::{Error, Result};
use crate::regex::{ElemSet, MonoidPresentation};

/// The union of all expressions of height at most `height` and degree at most
/// `degree` whose words all map into `set`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubsetLanguage {
    pub set: ElemSet,
    pub height: usize,
    pub degree: usize,
}

/// Largest monoid the oracle accepts; it enumerates every subset.
pub const ORACLE_MONOID_LIMIT: usize = 12;

pub struct Oracle<'m> {
    monoid: &'m MonoidPresentation,
    subsets: Vec<(ElemSet, ElemSet)>,
    memo: HashMap<(SubsetLanguage, Vec<Symbol>), bool>,
}

impl<'m> Oracle<'m> {
    pub fn new(monoid: &'m MonoidPresentation) -> Result<Self> {
        if monoid.size() > ORACLE_MONOID_LIMIT {
            return Err(Error::budget("oracle monoid size", ORACLE_MONOID_LIMIT));
        }
        // every subset with the submonoid it generates
        let subsets = (0..1u64 << monoid.size())
            .map(|bits| (ElemSet(bits), monoid.closure(ElemSet(bits))))
            .collect();
        Ok(Oracle {
            monoid,
            subsets,
            memo: HashMap::new(),
        })
    }

    pub fn member(&mut self, lang: SubsetLanguage, w: &[Symbol]) -> bool {
        let key = (lang, w.to_vec());
        if let Some(&hit) = self.memo.get(&key) {
            return hit;
        }
        let m = lang.degree;
        let result = if lang.height == 0 {
            w.len() <= m && lang.set.contains(self.monoid.image(w))
        } else {
            self.member_blocks(lang, w)
        };
        self.memo.insert(key, result);
        result
    }

    /// `w = w₁v₁ ⋯ wᵢvᵢ` with `i ≤ m`, `|wⱼ| ≤ m`, `vⱼ` a concatenation of words
    /// of the inner language for `Nⱼ`, and `α(w₁)⟨N₁⟩ ⋯ α(wᵢ)⟨Nᵢ⟩ ⊆ N`.
    fn member_blocks(&mut self, lang: SubsetLanguage, w: &[Symbol]) -> bool {
        let m = lang.degree;
        let n = w.len();
        let mut ends: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        let mut layer: HashSet<(usize, ElemSet)> =
            HashSet::from([(0, ElemSet::singleton(self.monoid.identity))]);
        for j in 0..=m {
            if layer
                .iter()
                .any(|&(pos, p)| pos == n && p.is_subset(lang.set))
            {
                return true;
            }
            if j == m {
                break;
            }
            let mut next = HashSet::new();
            for &(pos, p) in &layer {
                for k in 0..=m.min(n - pos) {
                    let p1 = pos + k;
                    let prod = self.monoid.times(p, self.monoid.image(&w[pos..p1]));
                    for idx in 0..self.subsets.len() {
                        let (nj, closure) = self.subsets[idx];
                        let after = self.monoid.product(prod, closure);
                        let inner = SubsetLanguage {
                            set: nj,
                            height: lang.height - 1,
                            degree: m,
                        };
                        if !ends.contains_key(&(idx, p1)) {
                            let e = self.star_ends(inner, w, p1);
                            ends.insert((idx, p1), e);
                        }
                        for &end in &ends[&(idx, p1)] {
                            next.insert((end, after));
                        }
                    }
                }
            }
            layer = next;
        }
        false
    }

    /// End positions `e` with `w[start..e]` in the star of `inner`.
    fn star_ends(&mut self, inner: SubsetLanguage, w: &[Symbol], start: usize) -> Vec<usize> {
        let mut reach = vec![false; w.len() + 1];
        reach[start] = true;
        for p in start..w.len() {
            if !reach[p] {
                continue;
            }
            for q in p + 1..=w.len() {
                if !reach[q] && self.member(inner, &w[p..q]) {
                    reach[q] = true;
                }
            }
        }
        (start..=w.len()).filter(|&e| reach[e]).collect()
    }

    /// Least degree `m ≤ |w|` with `w` in the subset language of `set`.
    pub fn minimal_degree(&mut self, set: ElemSet, height: usize, w: &[Symbol]) -> Value {
        (0..=w.len())
            .find(|&m| {
                self.member(
                    SubsetLanguage {
                        set,
                        height,
                        degree: m,
                    },
                    w,
                )
            })
            .map_or(Value::Infinite, |m| Value::Finite(m as u64))
    }
}

pub fn subset_language_member_oracle(
    monoid: &MonoidPresentation,
    lang: SubsetLanguage,
    w: &[Symbol],
) -> Result<bool> {
    Ok(Oracle::new(monoid)?.member(lang, w))
}
