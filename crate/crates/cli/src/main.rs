use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use trapezoid::autonomy::{autonomous_sets, graph_property_report};
use trapezoid::corpus::{self, load_corpus, load_corpus_from};
use trapezoid::embed::is_isomorphic;
use trapezoid::format::{parse_pos, parse_trep, write_pos, write_trep};
use trapezoid::solver::{forced_disjunction, parse_fact, solve_poset, Mode, SolveOptions};
use trapezoid::svg::{render_svg, to_svg};
use trapezoid::verify::{verify_corpus, Corpus, CLOSURE_LIMIT};
use trapezoid::{Error, Poset, TrapezoidRepresentation};

const INPUT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(
    name = "trapezoid",
    version,
    about = "Trapezoid orders: representations, forcing and modules"
)]
struct Cli {
    /// Worker threads for the search (0 = all cores, 1 = sequential).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Seed for randomized data; the commands here are deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Search node budget per query.
    #[arg(long, global = true)]
    budget_nodes: Option<u64>,
    /// Wall-clock budget per query, in seconds.
    #[arg(long, global = true)]
    budget_secs: Option<f64>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a representation induces a poset.
    CheckRep {
        #[arg(long)]
        poset: String,
        #[arg(long)]
        rep: PathBuf,
        /// Also require the mode's shape predicates.
        #[arg(long)]
        mode: Option<Mode>,
    },
    /// Search for a representation.
    Solve {
        #[arg(long)]
        poset: String,
        #[arg(long, default_value = "any")]
        mode: Mode,
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Decide whether a fact (or one of several) holds in every representation.
    Forced {
        #[arg(long)]
        poset: String,
        #[arg(long, default_value = "any")]
        mode: Mode,
        #[arg(long)]
        fact: String,
        #[arg(long = "or-fact")]
        or_fact: Vec<String>,
        /// Write a representation violating all facts here.
        #[arg(long)]
        counterexample: Option<PathBuf>,
    },
    /// List autonomous sets.
    Modules {
        #[arg(long)]
        poset: String,
        #[arg(long)]
        nontrivial: bool,
    },
    /// Check a property on every order reachable by module reversals.
    Invariance {
        #[arg(long)]
        poset: String,
        #[arg(long)]
        check: Check,
        #[arg(long, default_value_t = CLOSURE_LIMIT)]
        limit: usize,
    },
    /// Print a built-in order, its sample representation, or its drawing.
    Corpus {
        #[arg(long)]
        name: String,
        #[arg(long, default_value = "poset")]
        emit: Emit,
    },
    /// Reproduce every claim about the built-in orders.
    VerifyPaper {
        /// Read `<name>.pos` and `<name>.trep` from here instead.
        #[arg(long)]
        corpus_dir: Option<PathBuf>,
        /// Only print the `claim=...` lines.
        #[arg(long)]
        machine: bool,
    },
    /// Draw a representation as SVG.
    Render {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    ProperUnsat,
    UnitUnsat,
    ProperSat,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Poset,
    Rep,
    Svg,
}

fn main() -> ExitCode {
    // Usage errors are input errors; clap's own code 2 means inconclusive here.
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { INPUT_ERROR } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}

fn options(cli: &Cli) -> SolveOptions {
    SolveOptions {
        max_nodes: cli.budget_nodes,
        max_time: cli.budget_secs.map(Duration::from_secs_f64),
        threads: cli.threads,
        ..SolveOptions::default()
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// A path to a `.pos` file, or the name of a built-in order.
fn load_poset(arg: &str) -> Result<Poset, Error> {
    let path = Path::new(arg);
    if path.exists() {
        parse_pos(&read(path)?)
    } else if corpus::NAMES.contains(&arg) {
        Ok(load_corpus(arg)?.poset)
    } else {
        Err(Error::Io(format!("{arg}: no such file or corpus entry")))
    }
}

fn load_rep(path: &Path) -> Result<TrapezoidRepresentation, Error> {
    parse_trep(&read(path)?)
}

fn write(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn report(claim: &str, status: &str, nodes: u64, elapsed: Duration) {
    println!("claim={claim} status={status} nodes={nodes} ms={}", elapsed.as_millis());
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let opts = options(cli);
    match &cli.cmd {
        Command::CheckRep { poset, rep, mode } => {
            let p = load_poset(poset)?;
            let r = load_rep(rep)?;
            let represents = r.represents(&p)?;
            println!("represents: {represents}");
            println!("proper: {}", r.is_proper());
            println!("unit: {}", r.is_unit());
            if let Some((a, b)) = r.proper_containment() {
                println!("containment: {b} inside {a}");
            }
            let fits = mode.is_none_or(|m| (!m.proper() || r.is_proper()) && (!m.unit() || r.is_unit()));
            Ok(if represents && fits { 0 } else { 1 })
        }
        Command::Solve {
            poset,
            mode,
            witness,
            svg,
        } => {
            let p = load_poset(poset)?;
            let r = solve_poset(&p, *mode, &opts);
            println!("{r}");
            if let Some(w) = r.witness() {
                print!("{}", write_trep(w));
                if let Some(out) = witness {
                    write(out, &write_trep(w))?;
                }
                if let Some(out) = svg {
                    render_svg(w, out)?;
                }
            }
            report(&format!("solve-{mode}"), r.status(), r.stats.nodes, r.stats.elapsed);
            Ok(if r.is_sat() {
                0
            } else if r.is_unsat() {
                1
            } else {
                2
            })
        }
        Command::Forced {
            poset,
            mode,
            fact,
            or_fact,
            counterexample,
        } => {
            let p = load_poset(poset)?;
            let facts = std::iter::once(fact)
                .chain(or_fact)
                .map(|f| parse_fact(&p, f))
                .collect::<Result<Vec<_>, _>>()?;
            let r = forced_disjunction(&p, *mode, &facts, &opts);
            println!("{}", r.status());
            if let (Some(w), Some(out)) = (&r.counterexample, counterexample) {
                write(out, &write_trep(w))?;
            }
            report("forced", r.status(), r.stats.nodes, r.stats.elapsed);
            Ok(match r.holds {
                Some(true) => 0,
                Some(false) => 1,
                None => 2,
            })
        }
        Command::Modules { poset, nontrivial } => {
            let p = load_poset(poset)?;
            for s in autonomous_sets(&p, *nontrivial)? {
                println!("{{{}}}", s.names.join(","));
            }
            Ok(0)
        }
        Command::Invariance { poset, check, limit } => {
            let p = load_poset(poset)?;
            let decide = |q: &Poset, m: Mode| {
                let r = solve_poset(q, m, &opts);
                if r.is_sat() {
                    Ok(true)
                } else if r.is_unsat() {
                    Ok(false)
                } else {
                    Err(Error::Inconclusive)
                }
            };
            let checker = |q: &Poset| match check {
                Check::ProperUnsat => Ok(!decide(q, Mode::Proper)?),
                Check::UnitUnsat => Ok(!decide(q, Mode::Unit)?),
                Check::ProperSat => decide(q, Mode::Proper),
            };
            let members = match graph_property_report(&p, *limit, checker) {
                Ok(m) => m,
                Err(Error::Inconclusive) => {
                    println!("inconclusive");
                    return Ok(2);
                }
                Err(e) => return Err(e),
            };
            for (i, (q, ok)) in members.iter().enumerate() {
                let reversed = (0..q.len()).filter(|&x| q.masks()[x] != p.masks()[x]).count();
                println!(
                    "member {i}: rows changed {reversed}, isomorphic {}, holds {ok}",
                    is_isomorphic(&p, q)
                );
            }
            let all = members.iter().all(|(_, ok)| *ok);
            println!("{} orders, property holds on all: {all}", members.len());
            Ok(if all { 0 } else { 1 })
        }
        Command::Corpus { name, emit } => {
            let e = load_corpus(name)?;
            match emit {
                Emit::Poset => print!("{}", write_pos(&e.poset)),
                Emit::Rep => print!("{}", write_trep(&e.sample)),
                Emit::Svg => print!("{}", to_svg(&e.sample)),
            }
            Ok(0)
        }
        Command::VerifyPaper { corpus_dir, machine } => {
            let c = match corpus_dir {
                None => Corpus::builtin()?,
                Some(dir) => {
                    let load = |n: &str| {
                        load_corpus_from(
                            n,
                            &read(&dir.join(format!("{n}.pos")))?,
                            &read(&dir.join(format!("{n}.trep")))?,
                        )
                    };
                    Corpus {
                        jaw: load("jaw")?,
                        improper: load("improper")?,
                        pnu: load("pnu")?,
                    }
                }
            };
            let r = verify_corpus(&c, &opts);
            if !machine {
                println!("{r}");
            }
            print!("{}", r.machine());
            Ok(r.exit_code() as u8)
        }
        Command::Render { rep, out } => {
            render_svg(&load_rep(rep)?, out)?;
            Ok(0)
        }
    }
}
