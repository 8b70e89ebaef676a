//! Regular expressions, finite automata and recognising monoids.

pub mod ast;
pub mod cycle_rank;
pub mod dfa;
pub mod monoid;
pub mod nfa;

pub use ast::{parse_regex, RegexAst, RegexNode};
pub use cycle_rank::{cycle_rank, graph_cycle_rank};
pub use dfa::{determinize_minimize, Dfa};
pub use monoid::{transition_monoid, ElemSet, MonoidPresentation};
pub use nfa::{regex_to_nfa, Nfa};

use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};

/// A regular language as consumed by the rest of the pipeline: always backed by
/// its minimal complete DFA, optionally remembering the expression it came from.
#[derive(Clone, Debug)]
pub struct Language {
    pub dfa: Dfa,
    pub regex: Option<RegexAst>,
}

impl Language {
    pub fn from_regex(e: RegexAst) -> Self {
        let dfa = determinize_minimize(&regex_to_nfa(&e));
        Language {
            dfa,
            regex: Some(e),
        }
    }

    pub fn from_dfa(d: &Dfa) -> Self {
        Language {
            dfa: d.minimize(),
            regex: None,
        }
    }

    pub fn parse_regex(text: &str, alphabet: &Alphabet) -> Result<Self> {
        Ok(Language::from_regex(parse_regex(text, alphabet)?))
    }

    /// Reads either a DFA file (`dfa` header) or a regex file: an
    /// `alphabet: ...` line followed by the expression.
    pub fn parse_file(text: &str) -> Result<Self> {
        match crate::format::header_of(text) {
            None => Err(Error::parse(1, 1, "empty input")),
            Some("dfa") => Ok(Language::from_dfa(&Dfa::parse(text)?)),
            Some(_) => {
                let mut lines = crate::format::content_lines(text);
                let (ln, first) = lines.next().expect("header exists");
                let (key, rest) = crate::format::split_key(first, ln)?;
                if key != "alphabet" {
                    return Err(Error::parse(ln, 1, "expected 'dfa' or 'alphabet:' header"));
                }
                let alphabet = Alphabet::parse_list(rest, ln)?;
                let body: Vec<(usize, &str)> = lines.collect();
                let Some(&(eln, _)) = body.first() else {
                    return Err(Error::parse(ln + 1, 1, "missing expression"));
                };
                let joined = body.iter().map(|(_, l)| *l).collect::<Vec<_>>().join(" ");
                Ok(Language::from_regex(ast::parse_regex_at(&joined, &alphabet, eln)?))
            }
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.dfa.alphabet
    }

    pub fn accepts(&self, w: &[Symbol]) -> bool {
        self.dfa.accepts(w)
    }

    pub fn monoid(&self, max_size: usize) -> Result<MonoidPresentation> {
        transition_monoid(&self.dfa, max_size)
    }

    /// Cycle rank of the trimmed minimal automaton, an upper bound on star height.
    pub fn cycle_rank_cap(&self) -> usize {
        graph_cycle_rank(&self.dfa.trimmed_graph())
    }

    /// Words of the language with at most `max_len` letters.
    pub fn words_up_to(&self, max_len: usize) -> impl Iterator<Item = Vec<Symbol>> + '_ {
        self.alphabet()
            .words_up_to(max_len)
            .filter(move |w| self.accepts(w))
    }
}
