use std::fmt;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::regex::{RegexAst, RegexNode};

/// Normal-form expression with a height and a degree.
///
/// Height 0 is a finite set of words of length at most the degree. Height
/// `h ≥ 1` is a union of blocks `w₁ e₁* ⋯ wᵢ eᵢ*` with `i` and every `|wⱼ|` at
/// most the degree and each `eⱼ` of height below `h`. The empty union denotes
/// the empty language; a block with no parts denotes the empty word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StringExpression {
    Finite { degree: usize, words: Vec<Word> },
    Blocks { height: usize, degree: usize, blocks: Vec<Block> },
}

/// `w₁ e₁* w₂ e₂* ⋯`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub parts: Vec<(Word, StringExpression)>,
}

impl StringExpression {
    pub fn height(&self) -> usize {
        match self {
            StringExpression::Finite { .. } => 0,
            StringExpression::Blocks { height, .. } => *height,
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            StringExpression::Finite { degree, .. } | StringExpression::Blocks { degree, .. } => {
                *degree
            }
        }
    }

    /// Checks the height and degree bounds recursively.
    pub fn is_well_formed(&self) -> bool {
        match self {
            StringExpression::Finite { degree, words } => words.iter().all(|w| w.len() <= *degree),
            StringExpression::Blocks {
                height,
                degree,
                blocks,
            } => {
                *height >= 1
                    && blocks.iter().all(|b| {
                        b.parts.len() <= *degree
                            && b.parts.iter().all(|(w, e)| {
                                w.len() <= *degree
                                    && e.height() < *height
                                    && e.degree() <= *degree
                                    && e.is_well_formed()
                            })
                    })
            }
        }
    }

    /// Membership by direct reading of the shape.
    pub fn contains(&self, w: &[Symbol]) -> bool {
        match self {
            StringExpression::Finite { words, .. } => words.iter().any(|x| x.as_slice() == w),
            StringExpression::Blocks { blocks, .. } => blocks.iter().any(|b| b.contains(w)),
        }
    }

    pub fn to_regex(&self, alphabet: &Alphabet) -> RegexAst {
        RegexAst {
            alphabet: alphabet.clone(),
            root: self.node(),
        }
    }

    fn node(&self) -> RegexNode {
        let alts: Vec<RegexNode> = match self {
            StringExpression::Finite { words, .. } => words.iter().map(|w| word_node(w)).collect(),
            StringExpression::Blocks { blocks, .. } => blocks.iter().map(Block::node).collect(),
        };
        alts.into_iter()
            .reduce(RegexNode::union)
            .unwrap_or(RegexNode::Empty)
    }
}

impl Block {
    pub fn contains(&self, w: &[Symbol]) -> bool {
        // positions reachable after consuming a prefix of the parts
        let mut here = vec![false; w.len() + 1];
        here[0] = true;
        for (lit, e) in &self.parts {
            let mut after_lit = vec![false; w.len() + 1];
            for p in 0..=w.len() {
                if here[p] && w[p..].starts_with(lit) {
                    after_lit[p + lit.len()] = true;
                }
            }
            // star closure: extend by non-empty factors in e
            let mut next = after_lit.clone();
            for p in 0..=w.len() {
                if !next[p] {
                    continue;
                }
                for q in p + 1..=w.len() {
                    if !next[q] && e.contains(&w[p..q]) {
                        next[q] = true;
                    }
                }
            }
            here = next;
        }
        here[w.len()]
    }

    fn node(&self) -> RegexNode {
        self.parts
            .iter()
            .flat_map(|(w, e)| [word_node(w), RegexNode::star(e.node())])
            .reduce(RegexNode::concat)
            .unwrap_or(RegexNode::Epsilon)
    }
}

fn word_node(w: &[Symbol]) -> RegexNode {
    w.iter()
        .map(|&s| RegexNode::Letter(s))
        .reduce(RegexNode::concat)
        .unwrap_or(RegexNode::Epsilon)
}

/// Renders with the regex syntax, e.g. `eps (a+b)*`.
pub struct Displayed<'a>(pub &'a StringExpression, pub &'a Alphabet);

impl fmt::Display for Displayed<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.to_regex(self.1))
    }
}
