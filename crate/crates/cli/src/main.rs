mod expr;
mod pred;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use intuit::coding::{decode, encode, CodingError};
use intuit::combinatorics::{
    arrow_counterexample, arrow_star_counterexample, binomial, dickson_witness, euclid_extend,
    increasing_tuples, CombError, Dickson,
};
use intuit::fan::{
    answer_strategy_2omega, finite_subbar, solve_omega2, Answer, DecidableBar, GameSpec2Omega,
    GameSpecOmega2, Omega2Outcome, Subbar,
};
use intuit::ivt::{
    approx_ivt, f0, f1, f2, identity, ivt_countable_exceptions, ivt_locally_nonconstant,
    rational_enum, rational_search_oracle, ContinuousMap, IvtError, IvtResult,
};
use intuit::rational::{canonical, pow2_neg, ratio};
use intuit::real::{Apart, Direction, RealError};
use intuit::stream::{hunt_pi, pi_digits, Hunt};
use intuit::{NatStream, RationalInterval, SeqCode};
use serde_json::{json, Value};

use report::{Failure, Report, Status};

#[derive(Parser)]
#[command(
    name = "intuit",
    version,
    about = "Exact constructive-real computations with certificates"
)]
struct Cli {
    /// Interval indices a semi-decidable search may inspect
    #[arg(long, global = true, default_value_t = 256)]
    fuel: u64,
    /// Seed for randomized demos (accepted for reproducibility; current commands are deterministic)
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Plain,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum IvtMode {
    Approx,
    Lnc,
    Countable,
}

#[derive(Clone, Copy, ValueEnum)]
enum GameMode {
    Omega2,
    #[value(name = "2omega")]
    TwoOmega,
}

#[derive(Subcommand)]
enum Command {
    /// Approximate a real expression to within 2^-p
    Eval {
        expr: String,
        #[arg(short, long, default_value_t = 10)]
        p: u32,
    },
    /// Print decimal digits of π
    Pi {
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(0..=100_000))]
        digits: u64,
    },
    /// Search the digits of π for a run of one digit
    Hunt {
        #[arg(long, value_parser = clap::value_parser!(u64).range(0..=9))]
        digit: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        run: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(0..=1_000_000))]
        budget: u64,
    },
    /// Code a finite sequence of naturals as one natural
    Encode { values: Vec<u64> },
    /// Decode a sequence code
    Decode { code: String },
    /// Solve f(x) = y on [0, 1] to precision 2^-p
    Ivt {
        /// f0:D,L | f1:D,L | f2:D,L,D2,L2 | id
        #[arg(long)]
        map: String,
        #[arg(long)]
        y: String,
        #[arg(short, long, default_value_t = 10)]
        p: u32,
        #[arg(long, value_enum, default_value_t = IvtMode::Approx)]
        mode: IvtMode,
    },
    /// Extract a finite subbar of a decidable set of binary sequences
    Subbar {
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(0..=20))]
        depth: u64,
    },
    /// Solve a two-move game
    Game {
        #[arg(long, value_enum, default_value_t = GameMode::Omega2)]
        mode: GameMode,
        /// Winning set for Player I, as a predicate on (n, i)
        #[arg(long)]
        c: String,
        #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u64).range(0..=1_000_000))]
        bound: u64,
        /// Player II's answers to moves 0 and 1 (2omega mode)
        #[arg(long, num_args = 2, value_names = ["P0", "P1"])]
        strategy: Option<Vec<u64>>,
    },
    /// A prime not among the given primes
    Euclid {
        #[arg(required = true)]
        primes: Vec<u64>,
    },
    /// Indices i < j where every sequence is non-decreasing
    Dickson {
        /// Sequences separated by ';', entries by ','; the last entry repeats
        #[arg(long)]
        seqs: String,
    },
    /// Check M -> (n)^k_r, or M ->* (n)^k_r with --star
    Ramsey {
        #[arg(long = "M")]
        m: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        star: bool,
    },
}

fn seq_text(s: &[u64]) -> String {
    let items: Vec<String> = s.iter().map(u64::to_string).collect();
    format!("[{}]", items.join(", "))
}

fn interval_json(i: &RationalInterval) -> Value {
    json!({ "lo": canonical(&i.lo), "hi": canonical(&i.hi) })
}

fn real_failure(e: RealError) -> Failure {
    match e {
        RealError::FuelExhausted { .. } | RealError::BudgetExceeded { .. } => {
            Failure::Exhausted(e.to_string())
        }
        _ => Failure::Invalid(e.to_string()),
    }
}

fn ivt_failure(e: IvtError) -> Failure {
    match e {
        IvtError::Real(e) => real_failure(e),
        IvtError::InvalidSpec(_) | IvtError::PreconditionFailed(_) => {
            Failure::Invalid(e.to_string())
        }
        _ => Failure::Exhausted(e.to_string()),
    }
}

fn comb_failure(e: CombError) -> Failure {
    match e {
        CombError::DivisorSearchExhausted(_) => Failure::Exhausted(e.to_string()),
        _ => Failure::Invalid(e.to_string()),
    }
}

fn coding_failure(e: CodingError) -> Failure {
    Failure::Invalid(e.to_string())
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let fuel = cli.fuel;
    match &cli.command {
        Command::Eval { expr, p } => {
            let x = expr::parse(expr).map_err(Failure::Invalid)?;
            let a = x.approx(*p, fuel).map_err(real_failure)?;
            let mut r = Report::new("eval")
                .input("expr", expr.as_str())
                .input("p", *p)
                .input("fuel", fuel);
            r.line(a.to_string());
            r.result = interval_json(&a);
            r.certificate = json!({ "width": canonical(&a.width()), "bound": canonical(&pow2_neg((*p).into())) });
            Ok(r)
        }
        Command::Pi { digits } => {
            let ds = pi_digits().prefix(*digits);
            let text: String = ds.iter().map(u64::to_string).collect();
            let mut r = Report::new("pi").input("digits", *digits);
            r.line(format!("3.{text}"));
            r.result = json!(format!("3.{text}"));
            Ok(r)
        }
        Command::Hunt { digit, run, budget } => {
            let mut r = Report::new("hunt")
                .input("digit", *digit)
                .input("run", *run)
                .input("budget", *budget);
            match hunt_pi(*digit, *run, *budget) {
                Hunt::Found(k) => {
                    r.line(format!("found at position {k}"));
                    r.result = json!({ "found": k });
                    r.certificate =
                        json!({ "digits": seq_text(&pi_digits().prefix(k + run)[k as usize..]) });
                }
                Hunt::Unresolved { digits_read } => {
                    r.line(format!("unresolved after {digits_read} digits"));
                    r.result = json!({ "unresolved_after": digits_read });
                    r.status = Status::Unresolved;
                }
            }
            Ok(r)
        }
        Command::Encode { values } => {
            let code = encode(values);
            let mut r = Report::new("encode").input("values", values.clone());
            r.line(code.0.to_string());
            r.result = json!(code.0.to_string());
            Ok(r)
        }
        Command::Decode { code } => {
            let c = SeqCode(
                code.trim()
                    .parse()
                    .map_err(|_| Failure::Invalid(format!("{code:?} is not a natural number")))?,
            );
            let s = decode(&c).map_err(coding_failure)?;
            let mut r = Report::new("decode").input("code", code.as_str());
            r.line(seq_text(&s));
            r.result = json!(s);
            Ok(r)
        }
        Command::Ivt { map, y, p, mode } => ivt(map, y, *p, *mode, fuel),
        Command::Subbar { spec, depth } => {
            let member = pred::parse_seq(spec).map_err(Failure::Invalid)?;
            let bar = DecidableBar::new(move |s| member(s), *depth as usize);
            let mut r = Report::new("subbar")
                .input("spec", spec.as_str())
                .input("depth", *depth);
            match finite_subbar(&bar) {
                Subbar::Bar(elements) => {
                    r.line(format!("bar: {} elements", elements.len()));
                    for e in &elements {
                        r.line(seq_text(e));
                    }
                    r.result = json!({ "bar": elements });
                }
                Subbar::NotBarWithinDepth(path) => {
                    r.line(format!(
                        "not a bar within depth {depth}: {}",
                        seq_text(&path)
                    ));
                    r.result = json!({ "not_bar": path.clone() });
                    r.certificate = json!({ "path": path });
                }
            }
            Ok(r)
        }
        Command::Game {
            mode,
            c,
            bound,
            strategy,
        } => {
            let in_c = pred::parse_move(c).map_err(Failure::Invalid)?;
            let r = Report::new("game").input("c", c.as_str());
            match mode {
                GameMode::Omega2 => {
                    let mut r = r.input("mode", "omega2").input("bound", *bound);
                    let g = GameSpecOmega2::new(move |n, i| in_c(n, i), *bound);
                    let out = solve_omega2(&g);
                    debug_assert!(out.verify(&g));
                    match out {
                        Omega2Outcome::WinningMove(n) => {
                            r.line(format!("winning move: {n}"));
                            r.result = json!({ "winning_move": n });
                            r.certificate = json!({ "in_c": [[n, 0], [n, 1]] });
                        }
                        Omega2Outcome::CounterStrategyPrefix(tau) => {
                            let tau: Vec<u64> = tau.into_iter().map(u64::from).collect();
                            r.line(format!("counter-strategy: {}", seq_text(&tau)));
                            r.result = json!({ "counter_strategy": tau });
                        }
                    }
                    Ok(r)
                }
                GameMode::TwoOmega => {
                    let s = strategy.as_ref().ok_or_else(|| {
                        Failure::Invalid("2omega mode needs --strategy P0 P1".into())
                    })?;
                    let (p0, p1) = (s[0], s[1]);
                    let mut r = r.input("mode", "2omega").input("strategy", vec![p0, p1]);
                    // Predicates are written over (n, i); here Player I moves i first.
                    let g = GameSpec2Omega::new(move |i, n| in_c(n, i));
                    match answer_strategy_2omega(&g, p0, p1) {
                        Answer::Found(i) => {
                            let n = if i == 0 { p0 } else { p1 };
                            r.line(format!("answer: {i} (beats reply {n})"));
                            r.result = json!({ "answer": i });
                            r.certificate = json!({ "in_c": [n, i] });
                        }
                        Answer::NoAnswer => {
                            r.line("no answer: the strategy wins for Player II");
                            r.result = json!({ "answer": null });
                        }
                    }
                    Ok(r)
                }
            }
        }
        Command::Euclid { primes } => {
            let q = euclid_extend(primes).map_err(comb_failure)?;
            let mut r = Report::new("euclid").input("primes", primes.clone());
            r.line(q.to_string());
            r.result = json!(q.to_string());
            Ok(r)
        }
        Command::Dickson { seqs } => {
            let rows = parse_seqs(seqs)?;
            let streams: Vec<NatStream> = rows
                .iter()
                .map(|r| NatStream::eventually_constant(r.clone()))
                .collect();
            let limit = usize::try_from(fuel).unwrap_or(usize::MAX);
            let mut r = Report::new("dickson")
                .input("seqs", seqs.as_str())
                .input("fuel", fuel);
            match dickson_witness(&streams, limit).map_err(comb_failure)? {
                Dickson::Found(i, j) => {
                    r.line(format!("i = {i}, j = {j}"));
                    let pairs: Vec<[u64; 2]> = streams
                        .iter()
                        .map(|s| [s.get(i as u64), s.get(j as u64)])
                        .collect();
                    for (k, [a, b]) in pairs.iter().enumerate() {
                        r.line(format!("  seq {k}: {a} <= {b}"));
                    }
                    r.result = json!({ "i": i, "j": j });
                    r.certificate = json!({ "values": pairs });
                }
                Dickson::FuelExhausted => {
                    r.line(format!("fuel exhausted after {fuel} indices"));
                    r.result = json!({ "fuel_exhausted": fuel });
                    r.status = Status::Unresolved;
                }
            }
            Ok(r)
        }
        Command::Ramsey {
            m,
            n,
            k,
            r: colours,
            star,
        } => {
            let found = if *star {
                arrow_star_counterexample(*m, *n, *k, *colours)
            } else {
                arrow_counterexample(*m, *n, *k, *colours)
            }
            .map_err(comb_failure)?;
            let mut r = Report::new("ramsey")
                .input("M", *m)
                .input("n", *n)
                .input("k", *k)
                .input("r", *colours)
                .input("star", *star);
            r.line(format!("holds: {}", found.is_none()));
            r.result = json!({ "holds": found.is_none(), "colourings": colours.pow(binomial(*m, *k as u64) as u32) });
            if let Some(colouring) = found {
                let tuples = increasing_tuples(*m, *k);
                r.line("counterexample colouring:");
                for (t, c) in tuples.iter().zip(&colouring) {
                    r.line(format!("  {} -> {c}", seq_text(t)));
                }
                r.certificate = json!({ "tuples": tuples, "colours": colouring });
            }
            Ok(r)
        }
    }
}

fn parse_seqs(src: &str) -> Result<Vec<Vec<u64>>, Failure> {
    src.split(';')
        .map(|row| {
            row.split(',')
                .map(|v| v.trim().parse::<u64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| Failure::Invalid(format!("bad sequence {row:?}")))
        })
        .collect()
}

fn parse_map(spec: &str) -> Result<ContinuousMap, Failure> {
    let bad = || {
        Failure::Invalid(format!(
            "unknown map {spec:?}; expected f0:D,L, f1:D,L, f2:D,L,D2,L2 or id"
        ))
    };
    if spec == "id" {
        return Ok(identity());
    }
    let (name, args) = spec.split_once(':').ok_or_else(bad)?;
    let args: Vec<u64> = args
        .split(',')
        .map(|a| a.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    let pattern = |d, l| expr::pi_pattern(d, l).map_err(Failure::Invalid);
    match (name, args.as_slice()) {
        ("f0", [d, l]) => Ok(f0(&pattern(*d, *l)?)),
        ("f1", [d, l]) => Ok(f1(&pattern(*d, *l)?)),
        ("f2", [d, l, d2, l2]) => Ok(f2(&pattern(*d, *l)?, &pattern(*d2, *l2)?)),
        _ => Err(bad()),
    }
}

/// Least `n` with `(2/3)^n <= 2^-p`.
fn thirds_depth(p: u32) -> u64 {
    let (target, step) = (pow2_neg(p.into()), ratio(2, 3));
    let mut w = ratio(1, 1);
    let mut n = 0;
    while w > target {
        w *= &step;
        n += 1;
    }
    n
}

fn ivt(map: &str, y_src: &str, p: u32, mode: IvtMode, fuel: u64) -> Result<Report, Failure> {
    let f = parse_map(map)?;
    let y = expr::parse(y_src).map_err(Failure::Invalid)?;
    let (name, res): (&str, IvtResult) = match mode {
        IvtMode::Approx => ("approx", approx_ivt(&f, &y, p, fuel).map_err(ivt_failure)?),
        IvtMode::Lnc => {
            let oracle = rational_search_oracle(&f, &y, fuel);
            (
                "lnc",
                ivt_locally_nonconstant(&f, &y, oracle, thirds_depth(p), fuel)
                    .map_err(ivt_failure)?,
            )
        }
        IvtMode::Countable => {
            let (fc, yc) = (f.clone(), y.clone());
            let apart_at = move |i: u128| -> Option<(Direction, intuit::LtWitness)> {
                match fc.image_of(&rational_enum(i)).try_apart(&yc, fuel).ok()? {
                    Apart::Found(d, w) => Some((d, w)),
                    Apart::Unknown => None,
                }
            };
            (
                "countable",
                ivt_countable_exceptions(&f, &y, apart_at, p.into(), fuel).map_err(ivt_failure)?,
            )
        }
    };
    let cert = &res.certificate;
    let mut r = Report::new("ivt")
        .input("map", map)
        .input("y", y_src)
        .input("p", p)
        .input("mode", name)
        .input("fuel", fuel);
    r.line(format!("x: {}", cert.x));
    r.line(format!("f(x) - y: {}", cert.residual));
    r.line(format!("depth: {}", res.depth));
    let holds = cert.holds(p);
    r.line(format!("certified |f(x) - y| < 2^-{p}: {holds}"));
    r.result = json!({ "x": interval_json(&cert.x) });
    r.certificate = json!({
        "depth": res.depth,
        "residual": interval_json(&cert.residual),
        "bound": canonical(&cert.bound),
        "holds": holds,
    });
    if !holds {
        r.status = Status::Unresolved;
    }
    Ok(r)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = matches!(cli.format, Format::Json);
    match run(&cli) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            // A closed pipe is not worth a panic.
            let _ = out.write_all(report.render(json).as_bytes());
            match report.status {
                Status::Ok => ExitCode::SUCCESS,
                Status::Unresolved => ExitCode::from(3),
            }
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.exit_code())
        }
    }
}
