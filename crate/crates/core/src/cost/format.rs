use std::collections::HashMap;
use std::fmt::Write as _;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::format::{content_lines, split_key};
use crate::regex::dfa::single_letter;

use super::{CostAutomaton, CounterAction, Transition};

impl CostAutomaton {
    pub fn to_text(&self) -> String {
        let mut out = String::from("costautomaton\n");
        let names = |qs: &[usize]| {
            qs.iter()
                .map(|&q| self.states[q].as_str())
                .collect::<Vec<_>>()
                .join(" ")
        };
        let _ = writeln!(out, "alphabet: {}", self.alphabet.header());
        let _ = writeln!(out, "counters: {}", self.counters);
        let _ = writeln!(out, "states: {}", self.states.join(" "));
        let _ = writeln!(out, "initial: {}", names(&self.initial));
        let _ = writeln!(out, "final: {}", names(&self.finals));
        for t in &self.transitions {
            let _ = writeln!(
                out,
                "trans: {} {} {} {}",
                self.states[t.source],
                self.alphabet.letter(t.letter),
                self.states[t.target],
                t.action_label()
            );
        }
        out
    }

    /// Reads the format written by [`CostAutomaton::to_text`] and validates it.
    pub fn parse(text: &str) -> Result<CostAutomaton> {
        let mut lines = content_lines(text);
        let (ln, first) = lines
            .next()
            .ok_or_else(|| Error::parse(1, 1, "empty input"))?;
        if first != "costautomaton" {
            return Err(Error::parse(ln, 1, "expected 'costautomaton' header"));
        }
        let mut alphabet = None;
        let mut counters = None;
        let mut states: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut initial_raw = Vec::new();
        let mut final_raw = Vec::new();
        let mut trans_raw = Vec::new();
        for (ln, line) in lines {
            let (key, rest) = split_key(line, ln)?;
            match key {
                "alphabet" => alphabet = Some(Alphabet::parse_list(rest, ln)?),
                "counters" => {
                    counters = Some(rest.parse::<usize>().map_err(|_| {
                        Error::parse(ln, 1, format!("'{rest}' is not a counter count"))
                    })?)
                }
                "states" => {
                    for name in rest.split_whitespace() {
                        if index.insert(name.to_string(), states.len()).is_some() {
                            return Err(Error::parse(ln, 1, format!("duplicate state '{name}'")));
                        }
                        states.push(name.to_string());
                    }
                }
                "initial" => initial_raw.extend(rest.split_whitespace().map(|s| (ln, s))),
                "final" => final_raw.extend(rest.split_whitespace().map(|s| (ln, s))),
                "trans" => trans_raw.push((ln, rest)),
                other => return Err(Error::parse(ln, 1, format!("unknown key '{other}'"))),
            }
        }
        let alphabet = alphabet.ok_or_else(|| Error::parse(1, 1, "missing 'alphabet:' line"))?;
        let counters = counters.ok_or_else(|| Error::parse(1, 1, "missing 'counters:' line"))?;
        let lookup = |ln: usize, name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::parse(ln, 1, format!("unknown state '{name}'")))
        };
        let initial = initial_raw
            .iter()
            .map(|&(ln, s)| lookup(ln, s))
            .collect::<Result<Vec<_>>>()?;
        let finals = final_raw
            .iter()
            .map(|&(ln, s)| lookup(ln, s))
            .collect::<Result<Vec<_>>>()?;
        let mut transitions = Vec::new();
        for &(ln, body) in &trans_raw {
            let parts: Vec<&str> = body.split_whitespace().collect();
            if parts.len() != 4 {
                return Err(Error::parse(
                    ln,
                    1,
                    "expected 'trans: <from> <letter> <to> <actions>'",
                ));
            }
            let source = lookup(ln, parts[0])?;
            let letter = single_letter(&alphabet, parts[1], ln)?;
            let target = lookup(ln, parts[2])?;
            let actions = parse_actions(parts[3], ln)?;
            transitions.push(Transition::new(source, letter, target, actions));
        }
        let a = CostAutomaton {
            alphabet,
            counters,
            states,
            initial,
            finals,
            transitions,
        };
        a.check()?;
        Ok(a)
    }
}

/// `none`, or a comma-separated list such as `reset(0),inc(0)`.
pub fn parse_actions(text: &str, ln: usize) -> Result<Vec<CounterAction>> {
    if text == "none" {
        return Ok(Vec::new());
    }
    text.split(',').map(|tok| parse_action(tok, ln)).collect()
}

fn parse_action(tok: &str, ln: usize) -> Result<CounterAction> {
    let bad = || Error::parse(ln, 1, format!("'{tok}' is not a counter action"));
    if tok == "none" {
        return Ok(CounterAction::None);
    }
    let (kind, rest) = tok.split_once('(').ok_or_else(bad)?;
    let c: usize = rest
        .strip_suffix(')')
        .ok_or_else(bad)?
        .parse()
        .map_err(|_| bad())?;
    match kind {
        "inc" => Ok(CounterAction::Increment(c)),
        "reset" => Ok(CounterAction::Reset(c)),
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::fixtures::*;

    #[test]
    fn fixtures_round_trip() {
        for a in [example1(), example2(), example3()] {
            let text = a.to_text();
            let b = CostAutomaton::parse(&text).unwrap();
            assert_eq!(a, b);
            assert_eq!(text, b.to_text());
        }
    }

    #[test]
    fn action_lists() {
        assert_eq!(parse_actions("none", 1).unwrap(), vec![]);
        assert_eq!(
            parse_actions("reset(1),inc(0)", 1).unwrap(),
            vec![CounterAction::Reset(1), CounterAction::Increment(0)]
        );
        assert!(parse_actions("inc(x)", 1).is_err());
        assert!(parse_actions("dec(0)", 1).is_err());
    }

    #[test]
    fn out_of_range_counter_fails_validation() {
        let text = "costautomaton\nalphabet: a\ncounters: 1\nstates: p\ninitial: p\nfinal: p\ntrans: p a p inc(3)\n";
        assert!(matches!(CostAutomaton::parse(text), Err(Error::Validation(_))));
    }

    #[test]
    fn unknown_state_is_a_parse_error() {
        let text = "costautomaton\nalphabet: a\ncounters: 1\nstates: p\ninitial: p\nfinal: r\n";
        assert!(matches!(CostAutomaton::parse(text), Err(Error::Parse { line: 6, .. })));
    }
}
