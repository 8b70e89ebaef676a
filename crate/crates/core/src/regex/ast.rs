use std::collections::BTreeSet;
use std::fmt;

use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};

/// Node of a regular expression without complementation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RegexNode {
    Empty,
    Epsilon,
    Letter(Symbol),
    Union(Box<RegexNode>, Box<RegexNode>),
    Concat(Box<RegexNode>, Box<RegexNode>),
    Star(Box<RegexNode>),
}

/// A parsed regular expression together with the alphabet its letters come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegexAst {
    pub alphabet: Alphabet,
    pub root: RegexNode,
}

impl RegexNode {
    pub fn union(l: RegexNode, r: RegexNode) -> Self {
        RegexNode::Union(Box::new(l), Box::new(r))
    }

    pub fn concat(l: RegexNode, r: RegexNode) -> Self {
        RegexNode::Concat(Box::new(l), Box::new(r))
    }

    pub fn star(e: RegexNode) -> Self {
        RegexNode::Star(Box::new(e))
    }

    /// Nesting depth of the Kleene star.
    pub fn star_height(&self) -> usize {
        match self {
            RegexNode::Empty | RegexNode::Epsilon | RegexNode::Letter(_) => 0,
            RegexNode::Union(l, r) | RegexNode::Concat(l, r) => l.star_height().max(r.star_height()),
            RegexNode::Star(e) => 1 + e.star_height(),
        }
    }

    /// End positions `j` such that `word[start..j]` matches this node.
    fn ends(&self, word: &[Symbol], start: usize) -> BTreeSet<usize> {
        match self {
            RegexNode::Empty => BTreeSet::new(),
            RegexNode::Epsilon => BTreeSet::from([start]),
            RegexNode::Letter(s) => {
                if word.get(start) == Some(s) {
                    BTreeSet::from([start + 1])
                } else {
                    BTreeSet::new()
                }
            }
            RegexNode::Union(l, r) => {
                let mut out = l.ends(word, start);
                out.extend(r.ends(word, start));
                out
            }
            RegexNode::Concat(l, r) => l
                .ends(word, start)
                .into_iter()
                .flat_map(|mid| r.ends(word, mid))
                .collect(),
            RegexNode::Star(e) => {
                let mut seen = BTreeSet::from([start]);
                let mut frontier = vec![start];
                while let Some(p) = frontier.pop() {
                    for q in e.ends(word, p) {
                        if seen.insert(q) {
                            frontier.push(q);
                        }
                    }
                }
                seen
            }
        }
    }

    /// Membership by the inductive semantics, independent of any automaton.
    pub fn matches(&self, word: &[Symbol]) -> bool {
        self.ends(word, 0).contains(&word.len())
    }

    fn letters_ok(&self, alphabet: &Alphabet) -> bool {
        match self {
            RegexNode::Letter(s) => s.index() < alphabet.len(),
            RegexNode::Union(l, r) | RegexNode::Concat(l, r) => {
                l.letters_ok(alphabet) && r.letters_ok(alphabet)
            }
            RegexNode::Star(e) => e.letters_ok(alphabet),
            _ => true,
        }
    }

    fn write(&self, alphabet: &Alphabet, prec: u8, out: &mut String) {
        // prec: 0 = union context, 1 = concat context, 2 = star operand
        match self {
            RegexNode::Empty => out.push_str("empty"),
            RegexNode::Epsilon => out.push_str("eps"),
            RegexNode::Letter(s) => out.push(alphabet.letter(*s)),
            RegexNode::Union(l, r) => {
                let paren = prec > 0;
                if paren {
                    out.push('(');
                }
                l.write(alphabet, 0, out);
                out.push('+');
                r.write(alphabet, 1, out);
                if paren {
                    out.push(')');
                }
            }
            RegexNode::Concat(l, r) => {
                let paren = prec > 1;
                if paren {
                    out.push('(');
                }
                l.write(alphabet, 1, out);
                // keep keywords, and a letter 'e' that could start one, from fusing
                let needs_space = matches!(**r, RegexNode::Empty | RegexNode::Epsilon)
                    || matches!(**l, RegexNode::Empty | RegexNode::Epsilon)
                    || alphabet.symbol('e').is_some();
                if needs_space {
                    out.push(' ');
                }
                r.write(alphabet, 2, out);
                if paren {
                    out.push(')');
                }
            }
            RegexNode::Star(e) => {
                e.write(alphabet, 2, out);
                out.push('*');
            }
        }
    }
}

impl RegexAst {
    pub fn star_height(&self) -> usize {
        self.root.star_height()
    }

    pub fn matches(&self, word: &[Symbol]) -> bool {
        self.root.matches(word)
    }

    pub fn is_well_formed(&self) -> bool {
        self.root.letters_ok(&self.alphabet)
    }
}

impl fmt::Display for RegexAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.root.write(&self.alphabet, 0, &mut s);
        f.write_str(&s)
    }
}

/// Parses `text` with precedence star > concatenation > union.
///
/// Grammar: `expr := term ('+' term)*`, `term := factor+`,
/// `factor := base '*'*`, `base := letter | 'eps' | 'empty' | '(' expr ')'`.
/// Whitespace between tokens is ignored. Positions in errors are 1-based
/// character columns on `line`.
pub fn parse_regex(text: &str, alphabet: &Alphabet) -> Result<RegexAst> {
    parse_regex_at(text, alphabet, 1)
}

pub(crate) fn parse_regex_at(text: &str, alphabet: &Alphabet, line: usize) -> Result<RegexAst> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        alphabet,
        line,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty expression (write 'eps' for the empty word)"));
    }
    let root = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error(format!("unexpected '{}'", p.chars[p.pos])));
    }
    Ok(RegexAst {
        alphabet: alphabet.clone(),
        root,
    })
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    alphabet: &'a Alphabet,
    line: usize,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::parse(self.line, self.pos + 1, message)
    }

    fn keyword(&self, kw: &str) -> bool {
        let kw: Vec<char> = kw.chars().collect();
        self.chars[self.pos..].starts_with(&kw)
    }

    fn expr(&mut self) -> Result<RegexNode> {
        let mut left = self.term()?;
        while self.peek() == Some('+') {
            self.pos += 1;
            let right = self.term()?;
            left = RegexNode::union(left, right);
        }
        Ok(left)
    }

    fn term(&mut self) -> Result<RegexNode> {
        let mut left = self.factor()?;
        while let Some(c) = self.peek() {
            if c == '+' || c == ')' {
                break;
            }
            let right = self.factor()?;
            left = RegexNode::concat(left, right);
        }
        Ok(left)
    }

    fn factor(&mut self) -> Result<RegexNode> {
        let mut base = self.base()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            base = RegexNode::star(base);
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<RegexNode> {
        match self.peek() {
            None => Err(self.error("unexpected end of expression")),
            Some('(') => {
                let open = self.pos;
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::parse(
                        self.line,
                        open + 1,
                        "unmatched '('",
                    ));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) if self.keyword("empty") => {
                self.pos += 5;
                Ok(RegexNode::Empty)
            }
            Some(_) if self.keyword("eps") => {
                self.pos += 3;
                Ok(RegexNode::Epsilon)
            }
            Some(c) if c.is_ascii_alphanumeric() => match self.alphabet.symbol(c) {
                Some(s) => {
                    self.pos += 1;
                    Ok(RegexNode::Letter(s))
                }
                None => Err(self.error(format!("letter '{c}' is not in the declared alphabet"))),
            },
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
        }
    }
}
