use crate::alphabet::Word;
use crate::error::{Error, Result};
use crate::regex::{ElemSet, Language, MonoidPresentation};

use super::expr::{Block, StringExpression};

/// Searches for a string expression of height at most `h ≤ 1` and degree
/// `m` that defines exactly `lang`. Meant for tiny inputs: every block shape
/// is enumerated, and `budget` caps how many are examined.
pub fn string_expression_reconstruct(
    lang: &Language,
    h: usize,
    m: usize,
    budget: usize,
) -> Result<Option<StringExpression>> {
    let alphabet = lang.alphabet();
    let short: Vec<Word> = alphabet.words_up_to(m).collect();
    if h == 0 {
        if !lang.dfa.is_finite_language() {
            return Ok(None);
        }
        let words: Vec<Word> = short.iter().filter(|w| lang.accepts(w)).cloned().collect();
        let e = StringExpression::Finite { degree: m, words };
        return Ok(defines(&e, lang).then_some(e));
    }
    if h > 1 {
        return Err(Error::Precondition(
            "reconstruction is only available up to height 1".into(),
        ));
    }
    let monoid = lang.monoid(64)?;
    let acc = monoid.accepting_set();
    // star bodies: non-empty short words only, since eps inside a star adds nothing
    let bodies: Vec<Word> = short.iter().filter(|w| !w.is_empty()).cloned().collect();
    if bodies.len() > 16 {
        return Err(Error::budget("reconstruction star bodies", 16));
    }
    let body_sets: Vec<u32> = (0..1u32 << bodies.len()).collect();
    let star_image: Vec<ElemSet> = body_sets
        .iter()
        .map(|&mask| {
            let mut gens = ElemSet::EMPTY;
            for (i, w) in bodies.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    gens.insert(monoid.image(w));
                }
            }
            monoid.closure(gens)
        })
        .collect();

    let mut examined = 0usize;
    let mut kept: Vec<(Vec<usize>, Vec<u32>)> = Vec::new();
    for parts in 0..=m {
        let mut found: Vec<(Vec<usize>, Vec<u32>)> = Vec::new();
        for lits in tuples(short.len(), parts) {
            let mut maximal: Vec<Vec<u32>> = Vec::new();
            for sets in tuples(body_sets.len(), parts) {
                examined += 1;
                if examined > budget {
                    return Err(Error::budget("reconstruction blocks", budget));
                }
                let sets: Vec<u32> = sets.into_iter().map(|i| body_sets[i]).collect();
                if !block_image(&monoid, &short, &star_image, &lits, &sets).is_subset(acc) {
                    continue;
                }
                maximal.retain(|o| !dominates(&sets, o));
                if !maximal.iter().any(|o| dominates(o, &sets)) {
                    maximal.push(sets);
                }
            }
            found.extend(maximal.into_iter().map(|s| (lits.clone(), s)));
        }
        kept.extend(found);
    }

    let to_block = |(lits, sets): &(Vec<usize>, Vec<u32>)| Block {
        parts: lits
            .iter()
            .zip(sets)
            .map(|(&l, &mask)| {
                let words = bodies
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, w)| w.clone())
                    .collect();
                (short[l].clone(), StringExpression::Finite { degree: m, words })
            })
            .collect(),
    };
    let expr = |blocks: &[(Vec<usize>, Vec<u32>)]| StringExpression::Blocks {
        height: 1,
        degree: m,
        blocks: blocks.iter().map(to_block).collect(),
    };
    if !defines(&expr(&kept), lang) {
        return Ok(None);
    }
    // drop blocks the others already cover, smallest first
    kept.sort_by_key(|(_, sets)| {
        std::cmp::Reverse(sets.iter().map(|s| s.count_ones()).sum::<u32>())
    });
    let mut i = kept.len();
    while i > 0 {
        i -= 1;
        let mut without = kept.clone();
        without.remove(i);
        if defines(&expr(&without), lang) {
            kept = without;
        }
    }
    Ok(Some(expr(&kept)))
}

fn defines(e: &StringExpression, lang: &Language) -> bool {
    Language::from_regex(e.to_regex(lang.alphabet()))
        .dfa
        .same_language(&lang.dfa)
}

fn block_image(
    monoid: &MonoidPresentation,
    short: &[Word],
    star_image: &[ElemSet],
    lits: &[usize],
    sets: &[u32],
) -> ElemSet {
    let mut x = ElemSet::singleton(monoid.identity);
    for (&l, &s) in lits.iter().zip(sets) {
        x = monoid.times(x, monoid.image(&short[l]));
        x = monoid.product(x, star_image[s as usize]);
    }
    x
}

/// Every set of `b` is contained in the matching set of `a`.
fn dominates(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| y & !x == 0)
}

/// All `len`-tuples over `0..n`.
fn tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}
