use std::collections::HashMap;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::cost::{evaluate, CostAutomaton, Value};
use crate::error::{Error, Result};
use crate::format::{content_lines, split_key};
use crate::regex::Dfa;

use super::solve::{LimitednessAnswer, UnlimitedCertificate};
use super::strategy::OpponentStrategy;

/// Number of pumping rounds a lasso must survive.
pub const PUMP_ROUNDS: usize = 6;

/// Evidence that a cost automaton is unlimited over a language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PumpWitness {
    /// `u vⁿ` lies in the language and its value grows with `n`.
    Lasso { alphabet: Alphabet, prefix: Word, cycle: Word },
    /// A word of the language with no accepting run.
    Rejected { alphabet: Alphabet, word: Word },
}

impl PumpWitness {
    pub fn to_text(&self) -> String {
        match self {
            PumpWitness::Lasso {
                alphabet,
                prefix,
                cycle,
            } => format!(
                "lasso\nalphabet: {}\nprefix: {}\nloop: {}\n",
                alphabet.header(),
                alphabet.format_word(prefix),
                alphabet.format_word(cycle)
            ),
            PumpWitness::Rejected { alphabet, word } => format!(
                "rejected\nalphabet: {}\nword: {}\n",
                alphabet.header(),
                alphabet.format_word(word)
            ),
        }
    }

    pub fn parse(text: &str) -> Result<PumpWitness> {
        let mut lines = content_lines(text);
        let (_, kind) = lines.next().ok_or_else(|| Error::parse(1, 1, "empty witness file"))?;
        if kind != "lasso" && kind != "rejected" {
            return Err(Error::parse(1, 1, "expected 'lasso' or 'rejected'"));
        }
        let mut alphabet = None;
        let mut fields: HashMap<&str, (usize, &str)> = HashMap::new();
        for (ln, line) in lines {
            let (key, rest) = split_key(line, ln)?;
            match key {
                "alphabet" => alphabet = Some(Alphabet::parse_list(rest, ln)?),
                "prefix" | "loop" | "word" => {
                    if fields.insert(key, (ln, rest)).is_some() {
                        return Err(Error::parse(ln, 1, format!("duplicate '{key}'")));
                    }
                }
                _ => return Err(Error::parse(ln, 1, format!("unknown key '{key}'"))),
            }
        }
        let alphabet = alphabet.ok_or_else(|| Error::parse(1, 1, "missing 'alphabet:'"))?;
        let word = |key: &str| -> Result<Word> {
            let (ln, text) = fields
                .get(key)
                .ok_or_else(|| Error::parse(1, 1, format!("missing '{key}:'")))?;
            alphabet
                .parse_word(text)
                .map_err(|e| Error::parse(*ln, 1, e.to_string()))
        };
        if kind == "lasso" {
            let cycle = word("loop")?;
            if cycle.is_empty() {
                return Err(Error::parse(1, 1, "the loop of a lasso must not be empty"));
            }
            Ok(PumpWitness::Lasso {
                prefix: word("prefix")?,
                cycle,
                alphabet,
            })
        } else {
            Ok(PumpWitness::Rejected {
                word: word("word")?,
                alphabet,
            })
        }
    }

    /// Re-checks the witness: values strictly increase along `u vⁿ` for
    /// `n = 1..=rounds`, or the word is in the language with value infinity.
    pub fn holds(&self, a: &CostAutomaton, lang: &Dfa, rounds: usize) -> bool {
        match self {
            PumpWitness::Lasso { prefix, cycle, .. } => grows(a, lang, prefix, cycle, rounds),
            PumpWitness::Rejected { word, .. } => {
                lang.accepts(word) && evaluate(a, word) == Value::Infinite
            }
        }
    }
}

/// The values of `u vⁿ` for `n = 1..=rounds`, or `None` once a pumped word
/// leaves the language.
pub fn pumped_values(
    a: &CostAutomaton,
    lang: &Dfa,
    u: &[Symbol],
    v: &[Symbol],
    rounds: usize,
) -> Option<Vec<Value>> {
    let mut w = u.to_vec();
    let mut out = Vec::new();
    for _ in 0..rounds {
        w.extend_from_slice(v);
        if !lang.accepts(&w) {
            return None;
        }
        out.push(evaluate(a, &w));
    }
    Some(out)
}

fn grows(a: &CostAutomaton, lang: &Dfa, u: &[Symbol], v: &[Symbol], rounds: usize) -> bool {
    !v.is_empty()
        && pumped_values(a, lang, u, v, rounds)
            .is_some_and(|vals| vals.windows(2).all(|p| p[0] < p[1]))
}

/// Looks for a lasso along which the value grows. A's strategy is played
/// against B answering with every transition; if that lasso does not pump,
/// short lassos and short rejected words are tried in turn.
pub fn pump_witness(sa: &OpponentStrategy, a: &CostAutomaton, lang: &Dfa) -> Result<PumpWitness> {
    let alphabet = a.alphabet.clone();
    let mut seen: HashMap<usize, usize> = HashMap::new();
    let mut word = Vec::new();
    let mut m = Some(sa.initial);
    while let Some(cur) = m {
        if let Some(&start) = seen.get(&cur) {
            let (u, v) = word.split_at(start);
            if grows(a, lang, u, v, PUMP_ROUNDS) {
                let (prefix, cycle) = shorten(a, lang, u, v);
                return Ok(PumpWitness::Lasso {
                    alphabet,
                    prefix,
                    cycle,
                });
            }
            break;
        }
        seen.insert(cur, word.len());
        word.push(sa.letter[cur]);
        m = sa.respond_full(cur);
    }
    if m.is_none() && lang.accepts(&word) && evaluate(a, &word) == Value::Infinite {
        return Ok(PumpWitness::Rejected { alphabet, word });
    }
    search_witness(a, lang, 3, 4, 10)
}

/// Shortest primitive root of the loop and shortest prefix that still pump.
fn shorten(a: &CostAutomaton, lang: &Dfa, u: &[Symbol], v: &[Symbol]) -> (Word, Word) {
    let v = (1..=v.len())
        .filter(|p| v.len() % p == 0)
        .map(|p| &v[..p])
        .find(|root| root.repeat(v.len() / root.len()) == v && grows(a, lang, u, root, PUMP_ROUNDS))
        .unwrap_or(v);
    let u = (0..=u.len())
        .map(|k| &u[..k])
        .find(|p| grows(a, lang, p, v, PUMP_ROUNDS))
        .unwrap_or(u);
    (u.to_vec(), v.to_vec())
}

/// Exhaustive search over lassos with `|u| ≤ max_prefix`, `1 ≤ |v| ≤
/// max_loop`, then over rejected words up to `max_word` letters.
pub fn search_witness(
    a: &CostAutomaton,
    lang: &Dfa,
    max_prefix: usize,
    max_loop: usize,
    max_word: usize,
) -> Result<PumpWitness> {
    let alphabet = a.alphabet.clone();
    for lv in 1..=max_loop {
        for v in alphabet.words_of_length(lv) {
            for u in alphabet.words_up_to(max_prefix) {
                if grows(a, lang, &u, &v, PUMP_ROUNDS) {
                    return Ok(PumpWitness::Lasso {
                        alphabet: alphabet.clone(),
                        prefix: u,
                        cycle: v,
                    });
                }
            }
        }
    }
    for w in alphabet.words_up_to(max_word) {
        if lang.accepts(&w) && evaluate(a, &w) == Value::Infinite {
            return Ok(PumpWitness::Rejected { alphabet: alphabet.clone(), word: w });
        }
    }
    Err(Error::budget("pump witness search", max_word))
}

/// Witness for an answer of the solver; limited answers have none.
pub fn pump_witness_for(
    answer: &LimitednessAnswer,
    a: &CostAutomaton,
    lang: &Dfa,
) -> Result<PumpWitness> {
    match answer {
        LimitednessAnswer::Limited { .. } => Err(Error::Precondition(
            "the automaton is limited; there is nothing to pump".into(),
        )),
        LimitednessAnswer::Unlimited {
            certificate: UnlimitedCertificate::EmptyWord,
        } => Ok(PumpWitness::Rejected {
            alphabet: a.alphabet.clone(),
            word: Vec::new(),
        }),
        LimitednessAnswer::Unlimited {
            certificate: UnlimitedCertificate::Strategy(s),
        } => pump_witness(s, a, lang),
    }
}
