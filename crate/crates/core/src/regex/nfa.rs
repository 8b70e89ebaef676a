use crate::alphabet::{Alphabet, Symbol};
use crate::regex::ast::{RegexAst, RegexNode};

/// Nondeterministic automaton without epsilon moves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    pub alphabet: Alphabet,
    /// `trans[state][symbol]` is a sorted list of successors.
    pub trans: Vec<Vec<Vec<usize>>>,
    pub initial: Vec<usize>,
    pub finals: Vec<bool>,
}

impl Nfa {
    pub fn state_count(&self) -> usize {
        self.trans.len()
    }

    pub fn accepts(&self, word: &[Symbol]) -> bool {
        let mut current = vec![false; self.state_count()];
        for &q in &self.initial {
            current[q] = true;
        }
        for &a in word {
            let mut next = vec![false; self.state_count()];
            for (q, on) in current.iter().enumerate() {
                if *on {
                    for &r in &self.trans[q][a.index()] {
                        next[r] = true;
                    }
                }
            }
            current = next;
        }
        current
            .iter()
            .zip(&self.finals)
            .any(|(on, fin)| *on && *fin)
    }

    /// Underlying digraph with letters forgotten.
    pub fn graph(&self) -> Vec<Vec<usize>> {
        self.trans
            .iter()
            .map(|per_letter| {
                let mut succ: Vec<usize> = per_letter.iter().flatten().copied().collect();
                succ.sort_unstable();
                succ.dedup();
                succ
            })
            .collect()
    }
}

#[derive(Default)]
struct Glushkov {
    /// letter of each position (positions are 1-based states; 0 is the start state)
    letters: Vec<Symbol>,
    follow: Vec<Vec<usize>>,
}

struct Shape {
    nullable: bool,
    first: Vec<usize>,
    last: Vec<usize>,
}

impl Glushkov {
    fn visit(&mut self, node: &RegexNode) -> Shape {
        match node {
            RegexNode::Empty => Shape {
                nullable: false,
                first: vec![],
                last: vec![],
            },
            RegexNode::Epsilon => Shape {
                nullable: true,
                first: vec![],
                last: vec![],
            },
            RegexNode::Letter(s) => {
                self.letters.push(*s);
                self.follow.push(Vec::new());
                let p = self.letters.len();
                Shape {
                    nullable: false,
                    first: vec![p],
                    last: vec![p],
                }
            }
            RegexNode::Union(l, r) => {
                let l = self.visit(l);
                let r = self.visit(r);
                Shape {
                    nullable: l.nullable || r.nullable,
                    first: [l.first, r.first].concat(),
                    last: [l.last, r.last].concat(),
                }
            }
            RegexNode::Concat(l, r) => {
                let l = self.visit(l);
                let r = self.visit(r);
                for &p in &l.last {
                    self.follow[p - 1].extend(&r.first);
                }
                Shape {
                    nullable: l.nullable && r.nullable,
                    first: if l.nullable {
                        [l.first, r.first.clone()].concat()
                    } else {
                        l.first
                    },
                    last: if r.nullable {
                        [l.last, r.last].concat()
                    } else {
                        r.last
                    },
                }
            }
            RegexNode::Star(e) => {
                let e = self.visit(e);
                for &p in &e.last {
                    self.follow[p - 1].extend(&e.first);
                }
                Shape {
                    nullable: true,
                    first: e.first,
                    last: e.last,
                }
            }
        }
    }
}

/// Position (Glushkov) automaton: one state per letter occurrence plus a start state.
pub fn regex_to_nfa(e: &RegexAst) -> Nfa {
    let mut g = Glushkov::default();
    let shape = g.visit(&e.root);
    let n = g.letters.len() + 1;
    let k = e.alphabet.len();
    let mut trans = vec![vec![Vec::new(); k]; n];
    for &p in &shape.first {
        trans[0][g.letters[p - 1].index()].push(p);
    }
    for (i, follow) in g.follow.iter().enumerate() {
        for &p in follow {
            trans[i + 1][g.letters[p - 1].index()].push(p);
        }
    }
    for per_letter in &mut trans {
        for succ in per_letter.iter_mut() {
            succ.sort_unstable();
            succ.dedup();
        }
    }
    let mut finals = vec![false; n];
    finals[0] = shape.nullable;
    for &p in &shape.last {
        finals[p] = true;
    }
    Nfa {
        alphabet: e.alphabet.clone(),
        trans,
        initial: vec![0],
        finals,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regex::ast::parse_regex;

    fn ab() -> Alphabet {
        Alphabet::new(['a', 'b']).unwrap()
    }

    #[test]
    fn epsilon_accepts_only_empty_word() {
        let n = regex_to_nfa(&parse_regex("eps", &ab()).unwrap());
        for w in ab().words_up_to(3) {
            assert_eq!(n.accepts(&w), w.is_empty());
        }
    }

    #[test]
    fn universal_language() {
        let n = regex_to_nfa(&parse_regex("(a+b)*", &ab()).unwrap());
        assert!(ab().words_up_to(5).all(|w| n.accepts(&w)));
    }

    #[test]
    fn single_word() {
        let al = ab();
        let n = regex_to_nfa(&parse_regex("ab", &al).unwrap());
        assert!(n.accepts(&al.parse_word("ab").unwrap()));
        for w in ["a", "b", "ba", "eps", "abb"] {
            assert!(!n.accepts(&al.parse_word(w).unwrap()), "{w}");
        }
    }

    #[test]
    fn agrees_with_direct_semantics() {
        let al = ab();
        for s in ["(a*b*)*", "a(ba)*+b*", "(ab+ba)*a", "empty", "(a+eps)(b+eps)", "a**b"] {
            let e = parse_regex(s, &al).unwrap();
            let n = regex_to_nfa(&e);
            for w in al.words_up_to(7) {
                assert_eq!(n.accepts(&w), e.matches(&w), "{s} on {}", al.format_word(&w));
            }
        }
    }
}
