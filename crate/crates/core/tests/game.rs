use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use starheight::bitset::BitSet;
use starheight::cost::fixtures;
use starheight::cost::{evaluate, value_profile, CostAutomaton, Value};
use starheight::game::*;
use starheight::regex::Language;
use starheight::Symbol;

const LANGS: [&str; 4] = ["a*", "(ab)*", "(a+b)*", "b*"];

fn instances() -> Vec<(String, CostAutomaton, Language)> {
    let mut out = Vec::new();
    for (name, a) in fixtures::all() {
        for re in LANGS {
            let l = Language::parse_regex(re, &a.alphabet).unwrap();
            out.push((format!("{name} over {re}"), a.clone(), l));
        }
    }
    out
}

#[test]
fn verdicts_match_brute_force() {
    for (name, a, l) in instances() {
        let solved = solve_limitedness(&a, &l.dfa, &GameBudget::default()).unwrap();
        match &solved.answer {
            LimitednessAnswer::Limited { bound, .. } => {
                assert_eq!(*bound, extracted_bound(&solved.answer, &a).unwrap());
                for v in value_profile(&a, &l.dfa, 12).into_iter().flatten() {
                    assert!(v <= Value::Finite(*bound), "{name}: {v} > {bound}");
                }
            }
            LimitednessAnswer::Unlimited { .. } => {
                let w = pump_witness_for(&solved.answer, &a, &l.dfa).unwrap();
                assert!(w.holds(&a, &l.dfa, PUMP_ROUNDS), "{name}: {w:?}");
            }
        }
    }
}

#[test]
fn winning_strategies_survive_simulation() {
    for (name, a, l) in instances() {
        let solved = solve_limitedness(&a, &l.dfa, &GameBudget::default()).unwrap();
        let LimitednessAnswer::Limited { strategy, bound } = &solved.answer else {
            continue;
        };
        for w in a.alphabet.words_up_to(12) {
            let r = simulate_strategy_b(strategy, &a, &l.dfa, &w, *bound);
            assert!(r.is_ok(), "{name} on {}: {r}", a.alphabet.format_word(&w));
        }
        let text = strategy.to_text();
        assert_eq!(&FiniteMemoryStrategy::parse(&text).unwrap(), strategy);
    }
}

#[test]
fn limited_values_stay_below_the_bound() {
    for (name, a, l) in instances() {
        let solved = solve_limitedness(&a, &l.dfa, &GameBudget::default()).unwrap();
        if let LimitednessAnswer::Limited { bound, .. } = solved.answer {
            for w in a.alphabet.words_up_to(12).filter(|w| l.accepts(w)) {
                assert!(evaluate(&a, &w) <= Value::Finite(bound), "{name}");
            }
        }
    }
}

fn random_letter(rng: &mut StdRng, g: &GameSpec) -> PlayLetter {
    let k = g.automaton.alphabet.len();
    let input = Symbol(rng.gen_range(0..k) as u8);
    let mut delta = BitSet::new();
    for t in g.transitions_on(input) {
        if rng.gen_bool(0.6) {
            delta.insert(t);
        }
    }
    if rng.gen_bool(0.03) {
        delta.insert(rng.gen_range(0..g.automaton.transitions.len()));
    }
    PlayLetter { input, delta }
}

#[test]
fn buchi_and_parity_agree_on_random_lassos() {
    let mut rng = StdRng::seed_from_u64(2024);
    for (name, a, l) in instances() {
        let g = build_limitedness_game(&a, &l.dfa).unwrap();
        let nba = complement_condition_nba(&g);
        let mut lassos = Vec::new();
        let mut letters: Vec<PlayLetter> = Vec::new();
        for _ in 0..200 {
            let nu = rng.gen_range(0..=4);
            let nv = rng.gen_range(1..=4);
            let u: Vec<PlayLetter> = (0..nu).map(|_| random_letter(&mut rng, &g)).collect();
            let v: Vec<PlayLetter> = (0..nv).map(|_| random_letter(&mut rng, &g)).collect();
            for x in u.iter().chain(&v) {
                if !letters.contains(x) {
                    letters.push(x.clone());
                }
            }
            lassos.push((u, v));
        }
        let explicit = nba.to_explicit(&letters);
        let dpa = determinize_to_parity(&explicit, &letters, 200_000).unwrap();
        for (u, v) in &lassos {
            let by_nba = nba.accepts_lasso(u, v);
            assert_eq!(by_nba, lasso_accepts(&explicit, u, v), "{name}");
            assert_eq!(by_nba, dpa.accepts_lasso(u, v), "{name}");
        }
    }
}

#[test]
fn losing_plays_are_recognised() {
    let a = fixtures::example1();
    let l = Language::parse_regex("a*", &a.alphabet).unwrap();
    let g = build_limitedness_game(&a, &l.dfa).unwrap();
    let nba = complement_condition_nba(&g);
    let sa = Symbol(0);
    // B keeps incrementing without reset: lost
    let inc = PlayLetter { input: sa, delta: BitSet::singleton(0) };
    assert!(nba.accepts_lasso(&[], &[inc.clone()]));
    // B answers an a with the b transition: lost
    let wrong = PlayLetter { input: sa, delta: BitSet::singleton(1) };
    assert!(nba.accepts_lasso(&[wrong], &[inc]));
    // B plays nothing on a word outside the language: fine
    let b = PlayLetter { input: Symbol(1), delta: BitSet::new() };
    assert!(!nba.accepts_lasso(&[b.clone()], &[b]));
}
