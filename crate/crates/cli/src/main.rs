use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use halftwist::bn_tilde::{bt_invariants, bt_presentation, verify_theorem_3_13, Budgets, LayerStatus};
use halftwist::braid::{are_equal_with_budget, BraidWord, DEFAULT_WORD_BUDGET};
use halftwist::branch_group::{
    ab_hat, braid_word_action, g0_mul, n9_relators, psi_hat, validate_configuration, G0Element, IntersectionTable,
};
use halftwist::fp::{
    abelianization, reidemeister_schreier, tietze_simplify, todd_coxeter_with, Presentation, Strategy,
};
use halftwist::half_twist::{classify_pair, frame, half_twist_word, ArcPath};
use halftwist::invariants::{
    complete_intersection_series, distinguishes, rational_ruled_series, tuple_of, veronese_series, InvariantTuple,
    SeriesDescriptor, Verdict,
};
use halftwist::monodromy::{
    are_hurwitz_equivalent, hurwitz_move, hurwitz_orbit, is_delta2_factorization, Direction, Equivalence,
    Factorization, OrbitBudgets,
};
use halftwist::word;

#[derive(Parser)]
#[command(name = "halftwist", version, about = "Braids, half-twists and branch-curve group tools")]
struct Cli {
    /// Worker threads for parallel stages; never changes the output.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Braid words in the Artin generators.
    #[command(subcommand)]
    Braid(BraidCmd),
    /// Half-twists along arcs.
    #[command(subcommand)]
    Twist(TwistCmd),
    /// Finitely presented groups.
    #[command(subcommand)]
    Fp(FpCmd),
    /// The quotient by transversal commutators.
    #[command(subcommand)]
    Bt(BtCmd),
    /// The group G_0 and its braid action.
    #[command(subcommand)]
    G0(G0Cmd),
    /// Series descriptors and invariant tuples.
    #[command(subcommand)]
    Inv(InvCmd),
    /// Factorizations of the full twist.
    #[command(subcommand)]
    Mono(MonoCmd),
}

#[derive(Args)]
struct WordBudget {
    /// Longest free word allowed while computing Artin images.
    #[arg(long = "max-word-length", default_value_t = DEFAULT_WORD_BUDGET)]
    max_word_length: usize,
}

#[derive(Subcommand)]
enum BraidCmd {
    /// Decide whether two words are the same braid.
    Eq {
        #[arg(long)]
        n: usize,
        u: String,
        v: String,
        #[command(flatten)]
        budget: WordBudget,
    },
    /// Permutation of the strands.
    Perm {
        #[arg(long)]
        n: usize,
        w: String,
    },
    /// Exponent sum.
    Expsum {
        #[arg(long)]
        n: usize,
        w: String,
    },
    /// Decide whether a braid is central.
    Central {
        #[arg(long)]
        n: usize,
        w: String,
        #[command(flatten)]
        budget: WordBudget,
    },
}

#[derive(Subcommand)]
enum TwistCmd {
    /// Braid word of the half-twist along an arc such as `arc 4 1 3 B`.
    Word { arc: String },
    /// The frame twists on n points.
    Frame {
        #[arg(long)]
        n: usize,
    },
    /// Classify a pair of arcs.
    Classify { a: String, b: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Hlt,
    Felsch,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::Hlt => Strategy::Hlt,
            StrategyArg::Felsch => Strategy::Felsch,
        }
    }
}

#[derive(Args)]
struct CosetArgs {
    /// Presentation file.
    file: PathBuf,
    /// Subgroup generator as a `g<k>` word; repeat for more.
    #[arg(long = "sub")]
    sub: Vec<String>,
    #[arg(long = "max-cosets", default_value_t = 1_000_000)]
    max_cosets: usize,
    #[arg(long, value_enum, default_value_t = StrategyArg::Hlt)]
    strategy: StrategyArg,
}

#[derive(Subcommand)]
enum FpCmd {
    /// Index of a subgroup by coset enumeration.
    Enum(CosetArgs),
    /// Presentation of a subgroup on Schreier generators.
    Rs {
        #[command(flatten)]
        coset: CosetArgs,
        /// Eliminate generators by Tietze moves.
        #[arg(long)]
        simplify: bool,
        #[arg(long = "max-length", default_value_t = 100_000)]
        max_length: usize,
    },
    /// Abelian invariants.
    Ab { file: PathBuf },
}

#[derive(Subcommand)]
enum BtCmd {
    /// Presentation with the transversal commutators.
    Present {
        #[arg(long)]
        n: usize,
    },
    /// Permutation and exponent sum, both defined on the quotient.
    Invariants {
        #[arg(long)]
        n: usize,
        w: String,
    },
    /// Check the abelian layers of the series.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long = "max-cosets", default_value_t = 1_000_000)]
        max_cosets: usize,
        #[arg(long, value_enum, default_value_t = StrategyArg::Hlt)]
        strategy: StrategyArg,
    },
}

#[derive(Subcommand)]
enum G0Cmd {
    /// Product of two elements such as `g1 g2^-1 tau`.
    Mul {
        #[arg(long)]
        table: PathBuf,
        a: String,
        b: String,
    },
    /// Act on an element by a braid word.
    Act {
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        braid: String,
        x: String,
    },
    /// Check that the action respects every relation.
    Validate {
        #[arg(long)]
        table: PathBuf,
    },
    /// The two normal generators and their quotient-map values.
    Relators {
        #[arg(long)]
        table: PathBuf,
    },
}

#[derive(Subcommand)]
enum InvCmd {
    /// Tuple of a known family.
    Family {
        #[command(subcommand)]
        family: Family,
    },
    /// Tuple of a descriptor file.
    Tuple { file: PathBuf },
    /// Compare two tuples.
    Compare { x: String, y: String },
}

#[derive(Args)]
struct Kind {
    #[arg(long, conflicts_with = "projective")]
    affine: bool,
    #[arg(long)]
    projective: bool,
    /// Print the descriptor instead of the tuple.
    #[arg(long)]
    descriptor: bool,
}

#[derive(Subcommand)]
enum Family {
    Veronese {
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        kind: Kind,
    },
    Ruled {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[command(flatten)]
        kind: Kind,
    },
    Ci {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        kind: Kind,
    },
}

#[derive(Args, Clone, Copy)]
struct OrbitArgs {
    #[arg(long = "max-states", default_value_t = 10_000)]
    max_states: usize,
    #[arg(long = "max-factor-length", default_value_t = 256)]
    max_factor_length: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirArg {
    #[value(name = "+")]
    Plus,
    #[value(name = "-")]
    Minus,
}

#[derive(Subcommand)]
enum MonoCmd {
    /// Check that the factors multiply to the full twist.
    Verify { file: PathBuf },
    /// Apply one Hurwitz move.
    Move {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = DirArg::Plus)]
        dir: DirArg,
    },
    /// Explore the Hurwitz orbit.
    Orbit {
        file: PathBuf,
        #[command(flatten)]
        budget: OrbitArgs,
        /// Print every canonical state.
        #[arg(long)]
        list: bool,
    },
    /// Search for a chain of moves between two factorizations.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        budget: OrbitArgs,
    },
}

enum Failure {
    Usage(String),
    Budget(String),
}

impl From<halftwist::Error> for Failure {
    fn from(e: halftwist::Error) -> Failure {
        if e.is_budget() {
            Failure::Budget(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

/// Output text and whether the answer was positive.
type Outcome = Result<(String, bool), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn braid(n: usize, w: &str) -> Result<BraidWord, Failure> {
    Ok(BraidWord::parse(n, w)?)
}

fn table(path: &Path) -> Result<IntersectionTable, Failure> {
    Ok(IntersectionTable::parse(&read(path)?)?)
}

fn yes_no(ok: bool, yes: &str, no: &str) -> Outcome {
    Ok((format!("{}\n", if ok { yes } else { no }), ok))
}

fn run_braid(cmd: BraidCmd) -> Outcome {
    match cmd {
        BraidCmd::Eq { n, u, v, budget } => {
            let eq = are_equal_with_budget(&braid(n, &u)?, &braid(n, &v)?, budget.max_word_length)?;
            yes_no(eq, "equal", "not equal")
        }
        BraidCmd::Perm { n, w } => Ok((format!("{}\n", braid(n, &w)?.permutation()), true)),
        BraidCmd::Expsum { n, w } => Ok((format!("{}\n", braid(n, &w)?.exponent_sum()), true)),
        BraidCmd::Central { n, w, budget } => {
            let b = braid(n, &w)?;
            let mut central = true;
            for k in 1..n {
                let s = BraidWord::generator(n, k, false)?;
                if !are_equal_with_budget(&b.compose(&s)?, &s.compose(&b)?, budget.max_word_length)? {
                    central = false;
                    break;
                }
            }
            yes_no(central, "central", "not central")
        }
    }
}

fn run_twist(cmd: TwistCmd) -> Outcome {
    match cmd {
        TwistCmd::Word { arc } => Ok((format!("{}\n", half_twist_word(&ArcPath::parse(&arc)?)), true)),
        TwistCmd::Frame { n } => {
            let mut out = String::new();
            for h in frame(n)? {
                writeln!(out, "{}  {}", h.path, h.word).unwrap();
            }
            Ok((out, true))
        }
        TwistCmd::Classify { a, b } => {
            let c = classify_pair(&ArcPath::parse(&a)?, &ArcPath::parse(&b)?)?;
            Ok((format!("{c}\n"), true))
        }
    }
}

fn coset_inputs(args: &CosetArgs) -> Result<(Presentation, Vec<Vec<halftwist::Letter>>), Failure> {
    let p = Presentation::parse(&read(&args.file)?)?;
    let sub = args
        .sub
        .iter()
        .map(|w| word::parse_tokens(w, 'g').map_err(|e| Failure::Usage(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(l) = sub.iter().flatten().find(|l| l.index() > p.generators()) {
        return Err(Failure::Usage(format!("subgroup word uses g{} beyond the presentation", l.index())));
    }
    Ok((p, sub))
}

fn run_fp(cmd: FpCmd) -> Outcome {
    match cmd {
        FpCmd::Enum(args) => {
            let (p, sub) = coset_inputs(&args)?;
            let t = todd_coxeter_with(&p, &sub, args.max_cosets, args.strategy.into())?;
            Ok((format!("index {}\n", t.index()), true))
        }
        FpCmd::Rs { coset, simplify, max_length } => {
            let (p, sub) = coset_inputs(&coset)?;
            let t = todd_coxeter_with(&p, &sub, coset.max_cosets, coset.strategy.into())?;
            let sp = reidemeister_schreier(&p, &t)?;
            let q = if simplify { tietze_simplify(&sp.presentation, &[], max_length) } else { sp.presentation };
            Ok((q.to_string(), true))
        }
        FpCmd::Ab { file } => {
            let p = Presentation::parse(&read(&file)?)?;
            Ok((format!("{}\n", abelianization(&p)), true))
        }
    }
}

fn run_bt(cmd: BtCmd) -> Outcome {
    match cmd {
        BtCmd::Present { n } => {
            if n < 2 {
                return Err(Failure::Usage("need n >= 2".into()));
            }
            Ok((bt_presentation(n).presentation().to_string(), true))
        }
        BtCmd::Invariants { n, w } => {
            let (p, e) = bt_invariants(&braid(n, &w)?);
            Ok((format!("perm {p}\nexpsum {e}\n"), true))
        }
        BtCmd::Verify { n, max_cosets, strategy } => {
            if n < 2 {
                return Err(Failure::Usage("need n >= 2".into()));
            }
            let r = verify_theorem_3_13(n, Budgets { max_cosets, strategy: strategy.into() })?;
            if r.layers.iter().any(|l| l.status == LayerStatus::BudgetExceeded) {
                print!("{r}");
                return Err(Failure::Budget(format!("coset budget of {max_cosets} exceeded")));
            }
            let ok = !r.layers.iter().any(|l| l.invariants.starts_with("unexpected"));
            Ok((r.to_string(), ok))
        }
    }
}

fn run_g0(cmd: G0Cmd) -> Outcome {
    match cmd {
        G0Cmd::Mul { table: path, a, b } => {
            let t = table(&path)?;
            let x = g0_mul(&G0Element::parse(&t, &a)?, &G0Element::parse(&t, &b)?, &t)?;
            Ok((format!("{}\n", x.display(&t)), true))
        }
        G0Cmd::Act { table: path, braid: w, x } => {
            let t = table(&path)?;
            let b = braid(t.strands(), &w)?;
            let y = braid_word_action(&G0Element::parse(&t, &x)?, &b, &t)?;
            Ok((format!("{}\n", y.display(&t)), true))
        }
        G0Cmd::Validate { table: path } => {
            let r = validate_configuration(&table(&path)?);
            let ok = r.is_valid();
            Ok((r.to_string(), ok))
        }
        G0Cmd::Relators { table: path } => {
            let t = table(&path)?;
            let (c, x) = n9_relators(&t)?;
            let mut out = String::new();
            for (name, r) in [("c*tau^-1", &c), ("(g1*xi1^-1)^3", &x)] {
                writeln!(
                    out,
                    "relator {name} braid=[{}] g=[{}] psi={} ab={}",
                    r.braid,
                    r.g.display(&t),
                    psi_hat(r),
                    ab_hat(r)
                )
                .unwrap();
            }
            Ok((out, true))
        }
    }
}

fn run_inv(cmd: InvCmd) -> Outcome {
    match cmd {
        InvCmd::Family { family } => {
            let (d, kind) = match family {
                Family::Veronese { p, kind } => (veronese_series(p, kind.projective)?, kind),
                Family::Ruled { a, b, kind } => (rational_ruled_series(a, b, kind.projective)?, kind),
                Family::Ci { n, kind } => (complete_intersection_series(n, kind.projective)?, kind),
            };
            if kind.descriptor {
                Ok((d.to_string(), true))
            } else {
                Ok((format!("{}\n", tuple_of(&d)), true))
            }
        }
        InvCmd::Tuple { file } => {
            let d = SeriesDescriptor::parse(&read(&file)?)?;
            Ok((format!("{}\n", tuple_of(&d)), true))
        }
        InvCmd::Compare { x, y } => {
            let x: InvariantTuple = x.parse()?;
            let y: InvariantTuple = y.parse()?;
            let v = distinguishes(&x, &y);
            Ok((format!("{v}\n"), v == Verdict::Distinguished))
        }
    }
}

fn orbit_budgets(b: OrbitArgs, threads: usize) -> OrbitBudgets {
    OrbitBudgets { max_states: b.max_states, max_factor_length: b.max_factor_length, threads }
}

fn run_mono(cmd: MonoCmd, threads: usize) -> Outcome {
    let fact = |p: &Path| -> Result<Factorization, Failure> { Ok(Factorization::parse(&read(p)?)?) };
    match cmd {
        MonoCmd::Verify { file } => yes_no(is_delta2_factorization(&fact(&file)?)?, "valid", "invalid"),
        MonoCmd::Move { file, k, dir } => {
            let d = match dir {
                DirArg::Plus => Direction::Positive,
                DirArg::Minus => Direction::Negative,
            };
            Ok((hurwitz_move(&fact(&file)?, k, d)?.to_string(), true))
        }
        MonoCmd::Orbit { file, budget, list } => {
            let o = hurwitz_orbit(&fact(&file)?, orbit_budgets(budget, threads))?;
            let mut out = format!("states {}\ntruncated {}\n", o.states.len(), o.truncated);
            if list {
                for s in &o.states {
                    writeln!(out, "{s}").unwrap();
                }
            }
            if o.truncated {
                print!("{out}");
                return Err(Failure::Budget("orbit truncated by its budgets".into()));
            }
            Ok((out, true))
        }
        MonoCmd::Equiv { a, b, budget } => {
            match are_hurwitz_equivalent(&fact(&a)?, &fact(&b)?, orbit_budgets(budget, threads))? {
                e @ Equivalence::Yes { .. } => Ok((format!("{e}\n"), true)),
                Equivalence::Unknown { reason } if reason.starts_with("budget") => {
                    println!("unknown: {reason}");
                    Err(Failure::Budget(reason))
                }
                e => Ok((format!("{e}\n"), false)),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Braid(c) => run_braid(c),
        Command::Twist(c) => run_twist(c),
        Command::Fp(c) => run_fp(c),
        Command::Bt(c) => run_bt(c),
        Command::G0(c) => run_g0(c),
        Command::Inv(c) => run_inv(c),
        Command::Mono(c) => run_mono(c, cli.threads),
    };
    match outcome {
        Ok((out, ok)) => {
            print!("{out}");
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("budget exceeded: {msg}");
            ExitCode::from(3)
        }
    }
}
