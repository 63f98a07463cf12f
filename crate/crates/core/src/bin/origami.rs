use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use origami::automata::{parse_automaton, write_automaton};
use origami::containment::{
    contains_upto_with_evidence, resync_search, traversal_profile, SearchOutcome, TraversalProfile,
    Verdict,
};
use origami::dot::{automaton_to_dot, graph_to_dot, pair_to_dot, transducer_to_dot};
use origami::mso::{mso_compile_dfa, parse_formula};
use origami::rational::{interleave, rational_pair_accepts, RationalResync};
use origami::reduction::{
    build_tdown, build_tdown_prime, build_tiles, build_tup, build_tup_prime, check_domino_lemma,
    domino_sweep, DominoCheck, TuringMachine,
};
use origami::resync::{
    is_bounded, pair_in_resync, parse_resynchronizer, source_guessing_nfa, Boundedness,
    Resynchronizer,
};
use origami::transducer::{
    origin_equivalent_upto, parse_graph, parse_transducer, run_origin_graphs, write_transducer,
    Equivalence, OriginGraph, RunCaps, Transducer,
};
use origami::traversal::traversal_report;
use origami::{Alphabet, Error, Result};

#[derive(Parser)]
#[command(
    name = "origami",
    version,
    about = "Origin semantics of string transducers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Longest input word of a sweep.
    #[arg(long, default_value_t = 5, global = true)]
    max_len: usize,

    /// Longest output of an enumerated run [default: 2 * max-len].
    #[arg(long, global = true)]
    max_output: Option<usize>,

    /// Most transitions of an enumerated run [default: 4 * max-len + 8].
    #[arg(long, global = true)]
    max_steps: Option<usize>,

    /// Input alphabet, space separated; inferred where possible.
    #[arg(long, global = true)]
    sigma: Option<String>,

    /// Output alphabet, space separated; inferred where possible.
    #[arg(long, global = true)]
    gamma: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Origin graphs of the accepting runs on one input word.
    OriginGraphs { transducer: PathBuf, word: String },
    /// Compare origin semantics on all inputs up to --max-len.
    OriginEquiv { t1: PathBuf, t2: PathBuf },
    /// Compile an MSO formula over --sigma (default `a b`).
    MsoCompile { formula: String },
    /// Is graph2 obtained from graph1 by the resynchronizer?
    ResyncCheck {
        resync: PathBuf,
        graph1: PathBuf,
        graph2: PathBuf,
    },
    /// Boundedness of a resynchronizer over --sigma (default `a b`).
    ResyncBounded { resync: PathBuf },
    /// T1 ⊆ R(T2) on inputs up to --max-len.
    Contains {
        t1: PathBuf,
        t2: PathBuf,
        resync: PathBuf,
    },
    /// Least k with T1 ⊆ R_k(T2) on the sweep.
    ResyncSearch {
        t1: PathBuf,
        t2: PathBuf,
        #[arg(long, default_value_t = 4)]
        k_max: usize,
    },
    /// Minimal max traversal needed per input length.
    TraversalProfile { t1: PathBuf, t2: PathBuf },
    /// Write the tiles and T_up/T_down of a Turing machine.
    GenReduction {
        machine: PathBuf,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Domino property of one tile sequence, or of all up to --up-to tiles.
    CheckDomino {
        machine: PathBuf,
        /// Tile names, space separated.
        lambda: Option<String>,
        #[arg(long)]
        up_to: Option<usize>,
    },
    /// Does the rational resynchronizer relate graph1 to graph2?
    RationalCheck {
        resync: PathBuf,
        graph1: PathBuf,
        graph2: PathBuf,
    },
    /// Graphviz rendering of a transducer, automaton, graph or graph pair.
    Dot {
        object: PathBuf,
        second: Option<PathBuf>,
    },
}

struct Report {
    text: String,
    json: Value,
    dot: Option<String>,
    /// Exit code 0 or 1.
    ok: bool,
}

impl Report {
    fn new(ok: bool, text: String, json: Value) -> Self {
        Report {
            text,
            json,
            dot: None,
            ok,
        }
    }

    fn with_dot(mut self, dot: String) -> Self {
        self.dot = Some(dot);
        self
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Unsupported(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse {
            line,
            column,
            message,
        } => Error::Parse {
            line,
            column,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    })
}

fn load_transducer(path: &Path) -> Result<Transducer> {
    in_file(path, parse_transducer(&read(path)?))
}

fn load_machine(path: &Path) -> Result<TuringMachine> {
    in_file(path, TuringMachine::parse(&read(path)?))
}

fn alphabet_flag(flag: &Option<String>) -> Option<Alphabet> {
    flag.as_ref().map(|s| Alphabet::new(s.split_whitespace()))
}

/// Letters under `key:` in graph files: one per token, or one per
/// character for compact words.
fn scan_letters(texts: &[String], key: &str) -> Alphabet {
    let mut names: Vec<String> = Vec::new();
    for text in texts {
        for line in text.lines() {
            let line = line.split("//").next().unwrap_or("").trim();
            let Some((k, v)) = line.split_once(':') else {
                continue;
            };
            if k.trim() != key {
                continue;
            }
            let v = v.trim();
            if v.contains(char::is_whitespace) {
                names.extend(
                    v.split_whitespace()
                        .filter(|t| *t != "eps")
                        .map(String::from),
                );
            } else if v != "eps" {
                names.extend(v.chars().map(String::from));
            }
        }
    }
    names.sort();
    names.dedup();
    Alphabet::new(names)
}

fn load_graphs(cli: &Cli, paths: &[&Path]) -> Result<(Alphabet, Alphabet, Vec<OriginGraph>)> {
    let texts = paths.iter().map(|p| read(p)).collect::<Result<Vec<_>>>()?;
    let sigma = alphabet_flag(&cli.sigma).unwrap_or_else(|| scan_letters(&texts, "input"));
    let gamma = alphabet_flag(&cli.gamma).unwrap_or_else(|| scan_letters(&texts, "output"));
    let graphs = paths
        .iter()
        .zip(&texts)
        .map(|(p, t)| in_file(p, parse_graph(t, &sigma, &gamma)))
        .collect::<Result<Vec<_>>>()?;
    Ok((sigma, gamma, graphs))
}

fn load_resync(path: &Path, base: &Alphabet) -> Result<Resynchronizer> {
    let dir = path.parent().unwrap_or(Path::new("."));
    in_file(path, parse_resynchronizer(&read(path)?, base, dir))
}

fn graph_json(g: &OriginGraph, sigma: &Alphabet, gamma: &Alphabet) -> Value {
    json!({
        "input": sigma.render(&g.input),
        "output": gamma.render(&g.output),
        "orig": g.orig,
    })
}

fn caps_warning(pruned: bool) {
    if pruned {
        eprintln!(
            "warning: run caps were hit; raise --max-output or --max-steps for a complete sweep"
        );
    }
}

fn verdict_text(v: &Verdict, t: &Transducer) -> String {
    let (s, g) = (t.input_alphabet(), t.output_alphabet());
    let mut out = if v.holds() {
        format!("holds on all inputs up to length {}\n", v.max_input_len)
    } else {
        "fails\n".to_string()
    };
    if let Some(c) = &v.counterexample {
        out += &format!("target: {}\n", c.target.render(s, g));
        out += &format!("same-words graphs of T2: {}\n", c.num_partners);
        for p in &c.partners {
            out += &format!("  {}\n", p.render(s, g));
        }
    }
    out
}

fn verdict_json(v: &Verdict, t: &Transducer) -> Value {
    let (s, g) = (t.input_alphabet(), t.output_alphabet());
    json!({
        "status": v.status,
        "max_input_len": v.max_input_len,
        "caps": v.caps,
        "pruned": v.pruned,
        "counterexample": v.counterexample.as_ref().map(|c| json!({
            "target": graph_json(&c.target, s, g),
            "num_partners": c.num_partners,
            "partners": c.partners.iter().map(|p| graph_json(p, s, g)).collect::<Vec<_>>(),
        })),
    })
}

fn profile_json(p: &TraversalProfile, t: &Transducer) -> Value {
    let (s, g) = (t.input_alphabet(), t.output_alphabet());
    json!({
        "entries": p.entries.iter().map(|e| json!({
            "len": e.len,
            "value": e.value,
            "target": e.target.as_ref().map(|x| graph_json(x, s, g)),
            "source": e.source.as_ref().map(|x| graph_json(x, s, g)),
        })).collect::<Vec<_>>(),
        "pruned": p.pruned,
        "growth_evidence": p.growth_evidence,
    })
}

/// Caps from the flags, or scaled to inputs of length `n`.
fn caps_for(cli: &Cli, n: usize) -> Result<RunCaps> {
    RunCaps::new(
        cli.max_output.unwrap_or(2 * n),
        cli.max_steps.unwrap_or(4 * n + 8),
    )
}

fn run(cli: &Cli) -> Result<Report> {
    let caps = caps_for(cli, cli.max_len)?;
    match &cli.command {
        Command::OriginGraphs { transducer, word } => {
            let t = load_transducer(transducer)?;
            let (s, g) = (t.input_alphabet(), t.output_alphabet());
            let u = if word.contains(char::is_whitespace) || s.contains(word) {
                s.parse_word(word)?
            } else {
                s.parse_compact(word)?
            };
            let gs = run_origin_graphs(&t, &u, caps_for(cli, u.len())?)?;
            caps_warning(gs.pruned);
            let text: String = gs.graphs.iter().map(|x| x.render(s, g) + "\n").collect();
            let json = json!({
                "graphs": gs.graphs.iter().map(|x| graph_json(x, s, g)).collect::<Vec<_>>(),
                "pruned": gs.pruned,
            });
            let dot = gs.graphs.iter().map(|x| graph_to_dot(x, s, g)).collect();
            Ok(Report::new(true, text, json).with_dot(dot))
        }
        Command::OriginEquiv { t1, t2 } => {
            let (a, b) = (load_transducer(t1)?, load_transducer(t2)?);
            let (s, g) = (a.input_alphabet(), a.output_alphabet());
            match origin_equivalent_upto(&a, &b, cli.max_len, caps)? {
                Equivalence::Equal { pruned } => {
                    caps_warning(pruned);
                    let text = format!("equal on all inputs up to length {}\n", cli.max_len);
                    Ok(Report::new(
                        true,
                        text,
                        json!({"result": "equal", "pruned": pruned}),
                    ))
                }
                Equivalence::Counterexample { graph, side } => {
                    let text = format!(
                        "differ: {} only from {side:?} transducer\n",
                        graph.render(s, g)
                    );
                    let json = json!({"result": "counterexample", "side": side, "graph": graph_json(&graph, s, g)});
                    Ok(Report::new(false, text, json).with_dot(graph_to_dot(&graph, s, g)))
                }
            }
        }
        Command::MsoCompile { formula } => {
            let base = alphabet_flag(&cli.sigma).unwrap_or_else(|| Alphabet::new(["a", "b"]));
            let f = parse_formula(formula)?;
            let sig = f.inferred_signature()?;
            let dfa = mso_compile_dfa(&f, &base, &sig)?.minimize();
            let nfa = dfa.to_nfa();
            let text = write_automaton(&nfa);
            let json = json!({
                "tracks": dfa.alphabet().tracks(),
                "states": dfa.num_states(),
                "empty": dfa.is_empty(),
                "automaton": text,
            });
            Ok(Report::new(true, text, json).with_dot(automaton_to_dot(&nfa)))
        }
        Command::ResyncCheck {
            resync,
            graph1,
            graph2,
        } => {
            let (s, g, graphs) = load_graphs(cli, &[graph1, graph2])?;
            let r = load_resync(resync, &s)?;
            let (old, new) = (&graphs[0], &graphs[1]);
            let w = pair_in_resync(&r, old, new)?;
            let trav = traversal_report(old, new)?;
            let text = match &w {
                Some(w) => format!(
                    "accepted\nparameters: {:?}\nmax traversal: {}\n",
                    w.params, trav.max_count
                ),
                None => format!("rejected\nmax traversal: {}\n", trav.max_count),
            };
            let json = json!({
                "accepted": w.is_some(),
                "witness": w,
                "source": graph_json(old, &s, &g),
                "target": graph_json(new, &s, &g),
                "traversal": trav,
            });
            Ok(Report::new(w.is_some(), text, json).with_dot(pair_to_dot(old, new, &s, &g)?))
        }
        Command::ResyncBounded { resync } => {
            let base = alphabet_flag(&cli.sigma).unwrap_or_else(|| Alphabet::new(["a", "b"]));
            let r = load_resync(resync, &base)?;
            let b = is_bounded(&r);
            let text = match &b {
                Boundedness::Bounded { states } => {
                    format!("bounded ({states} source-guessing states)\n")
                }
                Boundedness::Unbounded { class, witness } => {
                    let mut s = format!("unbounded ({class:?})\n");
                    if let Some(w) = witness {
                        let al = source_guessing_nfa(&r).alphabet().clone();
                        let show = |w: &[u32]| {
                            if w.is_empty() {
                                "ε".to_string()
                            } else {
                                al.render_word(w)
                            }
                        };
                        s += &format!(
                            "pumped family: {} ({})^j {}\n",
                            show(&w.prefix),
                            show(&w.pump),
                            show(&w.suffix)
                        );
                    }
                    s
                }
            };
            Ok(Report::new(
                b.is_bounded(),
                text,
                serde_json::to_value(&b).expect("serializable"),
            ))
        }
        Command::Contains { t1, t2, resync } => {
            let (a, b) = (load_transducer(t1)?, load_transducer(t2)?);
            let r = load_resync(resync, a.input_alphabet())?;
            let (v, evidence) = contains_upto_with_evidence(&a, &b, &r, cli.max_len, caps)?;
            caps_warning(v.pruned);
            let (s, g) = (a.input_alphabet(), a.output_alphabet());
            let mut json = verdict_json(&v, &a);
            json["evidence"] = evidence
                .iter()
                .map(|e| {
                    json!({
                        "source": graph_json(&e.source, s, g),
                        "target": graph_json(&e.target, s, g),
                        "params": e.witness.params,
                    })
                })
                .collect();
            let mut report = Report::new(v.holds(), verdict_text(&v, &a), json);
            if let Some(c) = &v.counterexample {
                report = report.with_dot(graph_to_dot(&c.target, s, g));
            }
            Ok(report)
        }
        Command::ResyncSearch { t1, t2, k_max } => {
            let (a, b) = (load_transducer(t1)?, load_transducer(t2)?);
            let outcome = resync_search(&a, &b, *k_max, cli.max_len, caps)?;
            Ok(match &outcome {
                SearchOutcome::Found {
                    k,
                    verdict,
                    evidence,
                } => {
                    caps_warning(verdict.pruned);
                    let text = format!(
                        "found: T1 ⊆ R_{k}(T2) on all inputs up to length {}\n",
                        cli.max_len
                    );
                    let (s, g) = (a.input_alphabet(), a.output_alphabet());
                    let json = json!({
                        "result": "found",
                        "k": k,
                        "verdict": verdict_json(verdict, &a),
                        "evidence": evidence.iter().map(|e| json!({
                            "source": graph_json(&e.source, s, g),
                            "target": graph_json(&e.target, s, g),
                            "params": e.witness.params,
                        })).collect::<Vec<_>>(),
                    });
                    Report::new(true, text, json)
                }
                SearchOutcome::NotFound { profile } => {
                    caps_warning(profile.pruned);
                    let text = format!("not found for k ≤ {k_max}\n{}", profile.to_text());
                    let json = json!({"result": "not-found", "k_max": k_max, "profile": profile_json(profile, &a)});
                    Report::new(false, text, json)
                }
            })
        }
        Command::TraversalProfile { t1, t2 } => {
            let (a, b) = (load_transducer(t1)?, load_transducer(t2)?);
            let p = traversal_profile(&a, &b, cli.max_len, caps)?;
            caps_warning(p.pruned);
            Ok(Report::new(true, p.to_text(), profile_json(&p, &a)))
        }
        Command::GenReduction { machine, out_dir } => {
            let m = load_machine(machine)?;
            let tiles = build_tiles(&m);
            std::fs::create_dir_all(out_dir)?;
            let files = [
                ("tup.1nt", build_tup(&tiles)?),
                ("tdown.1nt", build_tdown(&tiles)?),
                ("tup-prime.1nt", build_tup_prime(&tiles)?),
                ("tdown-prime.1nt", build_tdown_prime(&tiles)?),
            ];
            let mut written = Vec::new();
            for (name, t) in &files {
                let path = out_dir.join(name);
                std::fs::write(&path, write_transducer(t))?;
                written.push(path.display().to_string());
            }
            let table = tiles.table();
            let path = out_dir.join("tiles.txt");
            std::fs::write(&path, &table)?;
            written.push(path.display().to_string());
            let gamma = tiles.gamma();
            let text = format!("{table}wrote {}\n", written.join(", "));
            let json = json!({
                "tiles": tiles.tiles().iter().map(|t| json!({
                    "name": t.name,
                    "top": gamma.render(&t.top),
                    "bottom": gamma.render(&t.bottom),
                    "kind": t.kind,
                })).collect::<Vec<_>>(),
                "files": written,
            });
            Ok(Report::new(true, text, json))
        }
        Command::CheckDomino {
            machine,
            lambda,
            up_to,
        } => {
            let m = load_machine(machine)?;
            let tiles = build_tiles(&m);
            let names = |l: &[usize]| {
                l.iter()
                    .map(|&i| tiles.sigma().name(i).to_string())
                    .collect::<Vec<_>>()
            };
            match (lambda, up_to) {
                (Some(l), None) => {
                    let l = tiles.sigma().parse_word(l)?;
                    let c = check_domino_lemma(&tiles, &l)?;
                    let gamma = tiles.gamma();
                    let (text, json) = match &c {
                        DominoCheck::Vacuous => (
                            "vacuous: u is not a prefix of v\n".into(),
                            json!({"result": "vacuous"}),
                        ),
                        DominoCheck::Holds => (
                            "holds: v is a prefix of the history\n".into(),
                            json!({"result": "holds"}),
                        ),
                        DominoCheck::Violated { u, v, history } => (
                            format!(
                                "violated\nu: {}\nv: {}\nhistory: {}\n",
                                gamma.render(u),
                                gamma.render(v),
                                gamma.render(history)
                            ),
                            json!({
                                "result": "violated",
                                "u": gamma.render(u),
                                "v": gamma.render(v),
                                "history": gamma.render(history),
                            }),
                        ),
                    };
                    Ok(Report::new(c.is_ok(), text, json))
                }
                (None, Some(n)) => {
                    let sweep = domino_sweep(&tiles, *n)?;
                    let text = match &sweep.violation {
                        None => format!(
                            "holds for all {} non-vacuous sequences of at most {n} tiles\n",
                            sweep.non_vacuous
                        ),
                        Some(l) => format!("violated by {}\n", names(l).join(" ")),
                    };
                    let json = json!({
                        "max_len": n,
                        "non_vacuous": sweep.non_vacuous,
                        "violation": sweep.violation.as_ref().map(|l| names(l)),
                    });
                    Ok(Report::new(sweep.violation.is_none(), text, json))
                }
                _ => Err(Error::Unsupported(
                    "give either a tile sequence or --up-to".into(),
                )),
            }
        }
        Command::RationalCheck {
            resync,
            graph1,
            graph2,
        } => {
            let r = in_file(resync, RationalResync::parse(&read(resync)?))?;
            let texts = [read(graph1)?, read(graph2)?];
            let (s, g) = (r.sigma(), r.gamma());
            let old = in_file(graph1, parse_graph(&texts[0], s, g))?;
            let new = in_file(graph2, parse_graph(&texts[1], s, g))?;
            let ok = rational_pair_accepts(&r, &old, &new)?;
            let (top, bottom) = (interleave(&old)?, interleave(&new)?);
            let text = format!(
                "{}\ntop:    {}\nbottom: {}\n",
                if ok { "accepted" } else { "rejected" },
                top.render(s, g),
                bottom.render(s, g)
            );
            let json = json!({
                "accepted": ok,
                "top": top.render(s, g),
                "bottom": bottom.render(s, g),
            });
            Ok(Report::new(ok, text, json).with_dot(pair_to_dot(&old, &new, s, g)?))
        }
        Command::Dot { object, second } => {
            let text = read(object)?;
            let key = text
                .lines()
                .map(|l| l.split("//").next().unwrap_or("").trim())
                .find(|l| !l.is_empty())
                .and_then(|l| l.split_once(':'))
                .map(|(k, _)| k.trim().to_string())
                .unwrap_or_default();
            let dot = match (key.as_str(), second) {
                ("input", _) => {
                    let mut paths: Vec<&Path> = vec![object];
                    paths.extend(second.as_deref());
                    let (s, g, graphs) = load_graphs(cli, &paths)?;
                    match graphs.as_slice() {
                        [one] => graph_to_dot(one, &s, &g),
                        [old, new] => pair_to_dot(old, new, &s, &g)?,
                        _ => unreachable!(),
                    }
                }
                ("kind", None) => transducer_to_dot(&load_transducer(object)?),
                ("alphabet", None) => automaton_to_dot(&in_file(object, parse_automaton(&text))?),
                _ => {
                    return Err(Error::Unsupported(format!(
                        "{}: cannot draw this file",
                        object.display()
                    )))
                }
            };
            Ok(Report::new(true, dot.clone(), json!({"dot": dot})).with_dot(dot))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("ORIGAMI_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        // Only fails when a pool already exists.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Text => print!("{}", report.text),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("valid json")
                ),
                Format::Dot => match &report.dot {
                    Some(d) => print!("{d}"),
                    None => {
                        eprintln!("error: this command has no DOT output");
                        return ExitCode::from(2);
                    }
                },
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
