//! Graphviz renderings of automata, strategies and arenas.

use std::fmt::Write as _;

use crate::cost::CostAutomaton;
use crate::game::arena::{Arena, Vertex};
use crate::game::spec::DeltaDisplay;
use crate::game::FiniteMemoryStrategy;
use crate::regex::Dfa;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn start_arrows(out: &mut String, initial: impl IntoIterator<Item = String>) {
    for (i, q) in initial.into_iter().enumerate() {
        let _ = writeln!(out, "  __start{i} [shape=point];");
        let _ = writeln!(out, "  __start{i} -> {q};");
    }
}

/// One node per state and one edge per transition, labelled `a/inc(0)`.
pub fn cost_automaton_dot(a: &CostAutomaton) -> String {
    let mut out = String::from("digraph costautomaton {\n  rankdir=LR;\n");
    for (q, name) in a.states.iter().enumerate() {
        let shape = if a.finals.contains(&q) { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  {} [shape={shape}];", quote(name));
    }
    start_arrows(&mut out, a.initial.iter().map(|&q| quote(&a.states[q])));
    for (i, t) in a.transitions.iter().enumerate() {
        let letter = a.alphabet.letter(t.letter);
        let label = if t.actions.is_empty() {
            letter.to_string()
        } else {
            format!("{letter}/{}", t.action_label())
        };
        let _ = writeln!(
            out,
            "  {} -> {} [label={}, id=\"t{i}\"];",
            quote(&a.states[t.source]),
            quote(&a.states[t.target]),
            quote(&label)
        );
    }
    out.push_str("}\n");
    out
}

pub fn dfa_dot(d: &Dfa) -> String {
    let mut out = String::from("digraph dfa {\n  rankdir=LR;\n");
    for (q, name) in d.names.iter().enumerate() {
        let shape = if d.finals[q] { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  {} [shape={shape}];", quote(name));
    }
    start_arrows(&mut out, [quote(&d.names[d.initial])]);
    for (q, row) in d.trans.iter().enumerate() {
        for (x, &r) in row.iter().enumerate() {
            let letter = d.alphabet.letter(crate::Symbol(x as u8));
            let _ = writeln!(
                out,
                "  {} -> {} [label=\"{letter}\"];",
                quote(&d.names[q]),
                quote(&d.names[r])
            );
        }
    }
    out.push_str("}\n");
    out
}

/// Memory states as circles, each tied by a dashed edge to a box holding
/// its output.
pub fn strategy_dot(s: &FiniteMemoryStrategy) -> String {
    let mut out = String::from("digraph strategy {\n  rankdir=LR;\n");
    for (m, name) in s.states.iter().enumerate() {
        let _ = writeln!(out, "  {} [shape=circle];", quote(name));
        let _ = writeln!(
            out,
            "  \"out_{m}\" [shape=box, label={}];",
            quote(&DeltaDisplay(&s.out[m]).to_string())
        );
        let _ = writeln!(out, "  {} -> \"out_{m}\" [style=dashed, arrowhead=none];", quote(name));
    }
    start_arrows(&mut out, [quote(&s.states[s.initial])]);
    for (m, row) in s.trans.iter().enumerate() {
        for (x, &r) in row.iter().enumerate() {
            let letter = s.alphabet.letter(crate::Symbol(x as u8));
            let _ = writeln!(
                out,
                "  {} -> {} [label=\"{letter}\"];",
                quote(&s.states[m]),
                quote(&s.states[r])
            );
        }
    }
    out.push_str("}\n");
    out
}

/// A vertices as circles, B vertices as boxes; B edges carry their moves.
pub fn arena_dot(arena: &Arena, a: &CostAutomaton) -> String {
    let mut out = String::from("digraph arena {\n");
    for (v, vertex) in arena.vertices.iter().enumerate() {
        let (shape, label) = match vertex {
            Vertex::A { d, s, p } => ("circle", format!("A d{d} s{s} p{p}")),
            Vertex::B { d, s, a: x } => ("box", format!("B d{d} s{s} {}", a.alphabet.letter(*x))),
            Vertex::Sink => ("doubleoctagon", "sink".to_string()),
        };
        let _ = writeln!(
            out,
            "  v{v} [shape={shape}, label={}, xlabel=\"{}\"];",
            quote(&label),
            arena.game.priority[v]
        );
    }
    start_arrows(&mut out, [format!("v{}", arena.initial)]);
    for (v, succ) in arena.game.succ.iter().enumerate() {
        match arena.vertices[v] {
            Vertex::B { .. } => {
                for (d, t) in &arena.moves[v] {
                    let _ = writeln!(out, "  v{v} -> v{t} [label={}];", quote(&DeltaDisplay(d).to_string()));
                }
            }
            _ => {
                for t in succ {
                    let _ = writeln!(out, "  v{v} -> v{t};");
                }
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::fixtures::example1;

    #[test]
    fn example1_has_two_labelled_loops() {
        let d = cost_automaton_dot(&example1());
        assert!(d.starts_with("digraph"));
        assert!(d.contains("\"q\" -> \"q\" [label=\"a/inc(0)\""));
        assert!(d.contains("\"q\" -> \"q\" [label=\"b/reset(0)\""));
        assert_eq!(d.matches(" -> \"q\" [label=").count(), 2);
    }

    #[test]
    fn strategy_outputs_are_boxes() {
        let a = example1();
        let s = crate::scoring::optimal_run_strategy(&a, 1);
        let d = strategy_dot(&s);
        assert!(d.contains("shape=box"));
        assert!(d.contains("{t0}"));
    }
}
