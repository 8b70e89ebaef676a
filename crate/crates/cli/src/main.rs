use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use starheight::cost::{evaluate, value_profile, CostAutomaton};
use starheight::dot::{cost_automaton_dot, dfa_dot, strategy_dot};
use starheight::game::{
    extracted_bound, pump_witness_for, pumped_values, simulate_strategy_b, solve_limitedness,
    FiniteMemoryStrategy, GameBudget, LimitednessAnswer, PumpWitness, SimulationReport,
    PUMP_ROUNDS,
};
use starheight::reduction::{star_height, StarHeightBudget};
use starheight::regex::Language;
use starheight::{header_of, Error};

#[derive(Parser)]
#[command(name = "starheight", version, about = "Star height and limitedness of cost automata")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Longest word to enumerate
    #[arg(long, global = true, default_value_t = 10)]
    max_len: usize,

    /// Cap on states of any constructed automaton or arena
    #[arg(long, global = true)]
    budget_states: Option<usize>,

    /// Cap on the size of the transition monoid
    #[arg(long, global = true, default_value_t = 64)]
    budget_monoid: usize,

    /// Where to write the certificate (strategy or witness)
    #[arg(long, global = true)]
    cert_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Star height of the language in a regex or DFA file
    StarHeight { language: PathBuf },
    /// Whether a cost automaton is limited over a language
    Limitedness { automaton: PathBuf, language: PathBuf },
    /// Value of a word
    Evaluate { automaton: PathBuf, word: String },
    /// Largest value per word length, or values along a lasso
    ValueProfile {
        automaton: PathBuf,
        language: PathBuf,
        /// Lasso file: print the values of u v^n instead
        #[arg(long)]
        lasso: Option<PathBuf>,
    },
    /// Replay words of the language against a strategy of B
    SimulateStrategy {
        strategy: PathBuf,
        automaton: PathBuf,
        language: PathBuf,
        /// Check only this word
        #[arg(long)]
        word: Option<String>,
        /// Bound on run values; defaults to states times memory size
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Graphviz rendering of an automaton, DFA, regex or strategy file
    ExportDot { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::UnknownLetter(_) | Error::Validation(_) => 2,
        Error::Budget { .. } => 3,
        Error::AlphabetMismatch { .. } => 4,
        _ => 1,
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
    })
}

fn game_budget(cli: &Cli) -> GameBudget {
    let mut b = GameBudget::default();
    if let Some(n) = cli.budget_states {
        b.arena_vertices = n;
        b.parity_states = n;
    }
    b
}

fn run(cli: &Cli) -> Result<(), Error> {
    let start = Instant::now();
    match &cli.command {
        Command::StarHeight { language } => {
            let lang = Language::parse_file(&read(language)?)?;
            let mut budget = StarHeightBudget {
                monoid: cli.budget_monoid,
                game: game_budget(cli),
                ..StarHeightBudget::default()
            };
            if let Some(n) = cli.budget_states {
                budget.height_states = n;
            }
            let r = star_height(&lang, &budget)?;
            println!("command: star-height");
            println!("input: {}", language.display());
            println!("alphabet: {}", lang.alphabet().header());
            println!("dfa_states: {}", lang.dfa.state_count());
            println!("monoid_size: {}", r.monoid_size);
            println!("cycle_rank_cap: {}", r.cycle_rank_cap);
            for v in &r.verdicts {
                println!(
                    "height_{}: {} (states {}, counters {}, arena {})",
                    v.height,
                    if v.limited { "limited" } else { "unlimited" },
                    v.automaton_states,
                    v.counters,
                    v.game.arena_vertices
                );
            }
            println!("star_height: {}", r.star_height);
        }
        Command::Limitedness {
            automaton,
            language,
        } => {
            let a = CostAutomaton::parse(&read(automaton)?)?;
            let lang = Language::parse_file(&read(language)?)?;
            let solved = solve_limitedness(&a, &lang.dfa, &game_budget(cli))?;
            println!("command: limitedness");
            println!("states: {}", a.state_count());
            println!("counters: {}", a.counters);
            println!("transitions: {}", a.transitions.len());
            println!("dfa_states: {}", lang.dfa.state_count());
            println!("arena_vertices: {}", solved.stats.arena_vertices);
            println!("parity_states: {}", solved.stats.parity_states);
            let cert = cli
                .cert_out
                .clone()
                .unwrap_or_else(|| default_cert(automaton, solved.answer.is_limited()));
            match &solved.answer {
                LimitednessAnswer::Limited { strategy, .. } => {
                    println!("verdict: limited");
                    println!("bound: {}", extracted_bound(&solved.answer, &a)?);
                    println!("strategy_states: {}", strategy.state_count());
                    fs::write(&cert, strategy.to_text())?;
                }
                LimitednessAnswer::Unlimited { .. } => {
                    println!("verdict: unlimited");
                    match pump_witness_for(&solved.answer, &a, &lang.dfa) {
                        Ok(w) => {
                            print_witness(&w);
                            fs::write(&cert, w.to_text())?;
                        }
                        Err(Error::Budget { .. }) => {
                            println!("witness: none found within the search budget");
                        }
                        Err(e) => return Err(e),
                    }
                }
            }
            if cert.exists() {
                println!("certificate: {}", cert.display());
            }
        }
        Command::Evaluate { automaton, word } => {
            let a = CostAutomaton::parse(&read(automaton)?)?;
            let w = a.alphabet.parse_word(word)?;
            println!("value: {}", evaluate(&a, &w));
        }
        Command::ValueProfile {
            automaton,
            language,
            lasso,
        } => {
            let a = CostAutomaton::parse(&read(automaton)?)?;
            let lang = Language::parse_file(&read(language)?)?;
            check_alphabets(&a, &lang)?;
            match lasso {
                Some(path) => match PumpWitness::parse(&read(path)?)? {
                    PumpWitness::Lasso { prefix, cycle, .. } => {
                        let vals = pumped_values(&a, &lang.dfa, &prefix, &cycle, PUMP_ROUNDS);
                        match vals {
                            None => println!("in_language: false"),
                            Some(vals) => {
                                for (n, v) in vals.iter().enumerate() {
                                    println!("pump_{}: {v}", n + 1);
                                }
                                let grows = vals.windows(2).all(|p| p[0] < p[1]);
                                println!("strictly_increasing: {grows}");
                            }
                        }
                    }
                    PumpWitness::Rejected { word, .. } => {
                        println!("in_language: {}", lang.accepts(&word));
                        println!("value: {}", evaluate(&a, &word));
                    }
                },
                None => {
                    for (n, v) in value_profile(&a, &lang.dfa, cli.max_len).iter().enumerate() {
                        match v {
                            Some(v) => println!("length_{n}: {v}"),
                            None => println!("length_{n}: -"),
                        }
                    }
                }
            }
        }
        Command::SimulateStrategy {
            strategy,
            automaton,
            language,
            word,
            bound,
        } => {
            let s = FiniteMemoryStrategy::parse(&read(strategy)?)?;
            let a = CostAutomaton::parse(&read(automaton)?)?;
            let lang = Language::parse_file(&read(language)?)?;
            check_alphabets(&a, &lang)?;
            if s.alphabet != a.alphabet {
                return Err(Error::AlphabetMismatch {
                    left: s.alphabet.to_string(),
                    right: a.alphabet.to_string(),
                });
            }
            let bound = bound.unwrap_or((a.state_count() * s.state_count()) as u64);
            let words: Vec<_> = match word {
                Some(w) => vec![a.alphabet.parse_word(w)?],
                None => lang.words_up_to(cli.max_len).collect(),
            };
            println!("command: simulate-strategy");
            println!("bound: {bound}");
            let mut checked = 0;
            let mut report = SimulationReport::Ok;
            for w in &words {
                checked += 1;
                report = simulate_strategy_b(&s, &a, &lang.dfa, w, bound);
                if !report.is_ok() {
                    println!("word: {}", a.alphabet.format_word(w));
                    break;
                }
            }
            println!("words_checked: {checked}");
            println!("result: {report}");
        }
        Command::ExportDot { file } => {
            let text = read(file)?;
            let dot = match header_of(&text) {
                None => return Err(Error::Parse {
                    line: 1,
                    column: 1,
                    message: "empty input".into(),
                }),
                Some("costautomaton") => cost_automaton_dot(&CostAutomaton::parse(&text)?),
                Some("strategy") => strategy_dot(&FiniteMemoryStrategy::parse(&text)?),
                Some(_) => dfa_dot(&Language::parse_file(&text)?.dfa),
            };
            print!("{dot}");
            return Ok(());
        }
    }
    println!("time_ms: {}", start.elapsed().as_millis());
    Ok(())
}

fn default_cert(automaton: &Path, limited: bool) -> PathBuf {
    let ext = if limited { "strategy" } else { "witness" };
    automaton.with_extension(ext)
}

fn check_alphabets(a: &CostAutomaton, lang: &Language) -> Result<(), Error> {
    if &a.alphabet != lang.alphabet() {
        return Err(Error::AlphabetMismatch {
            left: a.alphabet.to_string(),
            right: lang.alphabet().to_string(),
        });
    }
    Ok(())
}

fn print_witness(w: &PumpWitness) {
    match w {
        PumpWitness::Lasso {
            alphabet,
            prefix,
            cycle,
        } => {
            println!("witness: lasso");
            println!("witness_prefix: {}", alphabet.format_word(prefix));
            println!("witness_loop: {}", alphabet.format_word(cycle));
        }
        PumpWitness::Rejected { alphabet, word } => {
            println!("witness: rejected word");
            println!("witness_word: {}", alphabet.format_word(word));
        }
    }
}
