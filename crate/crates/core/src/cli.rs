//! Command-line front end.

use std::cmp::Ordering;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};

use crate::dyadic::{Dyadic, Sign};
use crate::genesis::{Universe, DEFAULT_GENESIS_CAP};
use crate::names::{self, GeneticEngine, Name, DEFAULT_RECURSION_CAP};
use crate::normalform::Surreal;
use crate::parser::{self, Evaluator, Expr, ExprKind};

const SUBCOMMANDS: &str =
    "eval, birthday, sign, lineage, parent, children, simplest, cmp, normal, isname, gens, tree";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Dot,
    Tsv,
}

#[derive(Debug, Parser)]
#[command(
    name = "surreal",
    version,
    about = "Exact arithmetic on surreal numbers"
)]
#[command(subcommand_required = true, arg_required_else_help = true)]
pub struct Cli {
    /// Largest operand birthday accepted by genetic operations
    #[arg(long, global = true, default_value_t = DEFAULT_RECURSION_CAP,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub cap: u64,
    /// Largest generation `gens` and `tree` will build
    #[arg(long = "genesis-cap", global = true, default_value_t = DEFAULT_GENESIS_CAP,
          value_parser = clap::value_parser!(u32).range(1..))]
    pub genesis_cap: u32,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an expression and print its canonical form
    Eval {
        /// Compute dyadic sums and products by the genetic recursion
        #[arg(long)]
        genetic: bool,
        #[arg(allow_hyphen_values = true)]
        expr: Vec<String>,
    },
    /// Birthday of a value
    Birthday {
        #[arg(allow_hyphen_values = true)]
        expr: Vec<String>,
    },
    /// Sign expansion of a dyadic
    Sign {
        #[arg(allow_hyphen_values = true)]
        expr: Vec<String>,
    },
    /// Strict ancestors of a dyadic, oldest first
    Lineage {
        #[arg(allow_hyphen_values = true)]
        expr: Vec<String>,
    },
    /// Parent of a nonzero dyadic
    Parent {
        #[arg(allow_hyphen_values = true)]
        expr: Vec<String>,
    },
    /// Left and right child of a dyadic
    Children {
        #[arg(allow_hyphen_values = true)]
        expr: Vec<String>,
    },
    /// Resolve a name {X | Y} to the number it names
    Simplest {
        #[arg(allow_hyphen_values = true)]
        expr: Vec<String>,
    },
    /// Compare two values: LT, EQ or GT
    Cmp {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Terms of the normal form, one `exponent  coefficient` per line
    Normal {
        #[arg(allow_hyphen_values = true)]
        expr: Vec<String>,
    },
    /// Whether a name names a value
    Isname {
        #[arg(allow_hyphen_values = true)]
        name: String,
        #[arg(allow_hyphen_values = true)]
        value: String,
    },
    /// Build the first generations as cuts and list them
    Gens { n: u32 },
    /// Genealogical tree down to a depth, as DOT
    Tree { depth: u32 },
}

impl Command {
    fn label(&self) -> &'static str {
        match self {
            Command::Eval { .. } => "eval",
            Command::Birthday { .. } => "birthday",
            Command::Sign { .. } => "sign",
            Command::Lineage { .. } => "lineage",
            Command::Parent { .. } => "parent",
            Command::Children { .. } => "children",
            Command::Simplest { .. } => "simplest",
            Command::Cmp { .. } => "cmp",
            Command::Normal { .. } => "normal",
            Command::Isname { .. } => "isname",
            Command::Gens { .. } => "gens",
            Command::Tree { .. } => "tree",
        }
    }
}

/// Runs the tool. Returns the process exit status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    let _ = writeln!(err, "valid subcommands: {SUBCOMMANDS}");
                    2
                }
            };
        }
    };
    let label = cli.command.label();
    match dispatch(&cli, stdin) {
        Ok(text) => {
            if out.write_all(text.as_bytes()).is_err() {
                return 1;
            }
            0
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "{label}: {msg}");
            let _ = writeln!(err, "valid subcommands: {SUBCOMMANDS}");
            2
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "{label}: {msg}");
            1
        }
    }
}

enum Failure {
    Usage(String),
    Domain(String),
}

type Outcome = Result<String, Failure>;

fn domain(msg: impl ToString) -> Failure {
    Failure::Domain(msg.to_string())
}

fn source(args: &[String], stdin: &mut dyn Read) -> Result<String, Failure> {
    if !args.is_empty() {
        return Ok(args.join(" "));
    }
    let mut s = String::new();
    stdin
        .read_to_string(&mut s)
        .map_err(|e| Failure::Usage(format!("cannot read standard input: {e}")))?;
    Ok(s.trim().to_string())
}

fn parse(text: &str) -> Result<Expr, Failure> {
    parser::parse(text).map_err(domain)
}

fn value(text: &str) -> Result<Surreal, Failure> {
    parser::eval(&parse(text)?).map_err(domain)
}

fn dyadic(text: &str) -> Result<Dyadic, Failure> {
    match value(text)? {
        Surreal::Dyadic(d) => Ok(d),
        v => Err(domain(format!("{v} is not a dyadic rational"))),
    }
}

fn name(text: &str) -> Result<Name, Failure> {
    let e = parse(text)?;
    let ExprKind::Name(l, r) = &e.kind else {
        return Err(domain(format!("expected a name {{X | Y}} at {}", e.span)));
    };
    let eval_all = |xs: &[Expr]| {
        xs.iter()
            .map(|x| parser::eval(x).map_err(domain))
            .collect::<Result<Vec<_>, _>>()
    };
    Name::new(eval_all(l)?, eval_all(r)?).map_err(|k| domain(format!("{k} at {}", e.span)))
}

fn line(s: impl std::fmt::Display) -> Outcome {
    Ok(format!("{s}\n"))
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read) -> Outcome {
    let fmt = cli.format;
    if fmt == OutputFormat::Dot
        && !matches!(cli.command, Command::Gens { .. } | Command::Tree { .. })
    {
        return Err(Failure::Usage(
            "--format dot applies only to gens and tree".into(),
        ));
    }
    match &cli.command {
        Command::Eval { genetic, expr } => {
            let text = source(expr, stdin)?;
            let e = parse(&text)?;
            let v = if *genetic {
                Evaluator::genetic(GeneticEngine::new(cli.cap)).eval(&e)
            } else {
                parser::eval(&e)
            };
            line(parser::print(&v.map_err(domain)?))
        }
        Command::Birthday { expr } => line(value(&source(expr, stdin)?)?.birthday()),
        Command::Sign { expr } => {
            let d = dyadic(&source(expr, stdin)?)?;
            let signs: String = d
                .sign_expansion()
                .signs()
                .iter()
                .map(|s| if *s == Sign::Plus { '+' } else { '-' })
                .collect();
            line(signs)
        }
        Command::Lineage { expr } => {
            let d = dyadic(&source(expr, stdin)?)?;
            let items: Vec<String> = d.lineage().iter().map(|x| x.to_string()).collect();
            line(items.join(sep(fmt)))
        }
        Command::Parent { expr } => {
            let d = dyadic(&source(expr, stdin)?)?;
            line(d.parent().map_err(domain)?)
        }
        Command::Children { expr } => {
            let (l, r) = dyadic(&source(expr, stdin)?)?.children();
            line(format!("{l}{}{r}", sep2(fmt)))
        }
        Command::Simplest { expr } => {
            let n = name(&source(expr, stdin)?)?;
            line(names::resolve(&n).map_err(domain)?)
        }
        Command::Cmp { a, b } => {
            let word = match value(a)?.cmp(&value(b)?) {
                Ordering::Less => "LT",
                Ordering::Equal => "EQ",
                Ordering::Greater => "GT",
            };
            line(word)
        }
        Command::Normal { expr } => {
            let v = value(&source(expr, stdin)?)?;
            let mut s = String::new();
            for t in v.terms() {
                let _ = writeln!(s, "{}{}{}", t.exponent, sep2(fmt), t.coeff);
            }
            Ok(s)
        }
        Command::Isname { name: n, value: v } => {
            let n = name(n)?;
            let v = value(v)?;
            line(names::is_name_of(&n, &v).map_err(domain)?)
        }
        Command::Gens { n } => {
            let u = Universe::build_with_cap(*n, cli.genesis_cap).map_err(domain)?;
            match fmt {
                OutputFormat::Tsv => Ok(u.dump("\t")),
                OutputFormat::Dot => Ok(emit_tree(*n)),
                OutputFormat::Text => Ok(gens_table(&u)),
            }
        }
        Command::Tree { depth } => {
            if *depth > cli.genesis_cap {
                return Err(domain(format!(
                    "generation {depth} exceeds the cap {}",
                    cli.genesis_cap
                )));
            }
            if fmt != OutputFormat::Text && fmt != OutputFormat::Dot {
                return Err(Failure::Usage("tree only writes DOT".into()));
            }
            Ok(emit_tree(*depth))
        }
    }
}

fn sep(fmt: OutputFormat) -> &'static str {
    if fmt == OutputFormat::Tsv {
        "\t"
    } else {
        " "
    }
}

fn sep2(fmt: OutputFormat) -> &'static str {
    if fmt == OutputFormat::Tsv {
        "\t"
    } else {
        "  "
    }
}

/// `S<k> <count>: values` per generation, then `T<n+1>` with everything in order.
fn gens_table(u: &Universe) -> String {
    let values = u.map_to_dyadic();
    let mut s = String::new();
    for alpha in 0..=u.max_generation() {
        let mut gen: Vec<&Dyadic> = u
            .generation(alpha)
            .iter()
            .map(|n| &values[n.id()])
            .collect();
        gen.sort();
        let items: Vec<String> = gen.iter().map(|d| d.to_string()).collect();
        let _ = writeln!(s, "S{alpha} {}: {}", items.len(), items.join(" "));
    }
    let all: Vec<String> = u
        .sorted_ids()
        .iter()
        .map(|&i| values[i].to_string())
        .collect();
    let _ = writeln!(
        s,
        "T{} {}: {}",
        u.max_generation() + 1,
        all.len(),
        all.join(" ")
    );
    s
}

fn node_id(d: &Dyadic) -> String {
    let mut id = String::from("n");
    for s in d.sign_expansion().signs() {
        id.push(if *s == Sign::Plus { 'p' } else { 'm' });
    }
    id
}

/// DOT digraph of every dyadic born on or before `depth`, parent to child.
pub fn emit_tree(depth: u32) -> String {
    let mut s = String::from("digraph genealogy {\n");
    let mut level = vec![Dyadic::zero()];
    let mut edges = Vec::new();
    for d in 0..=depth {
        let mut next = Vec::with_capacity(level.len() * 2);
        for x in &level {
            let _ = writeln!(s, "  {} [label=\"{x}\"];", node_id(x));
            if d < depth {
                let (l, r) = x.children();
                edges.push(format!("  {} -> {};", node_id(x), node_id(&l)));
                edges.push(format!("  {} -> {};", node_id(x), node_id(&r)));
                next.push(l);
                next.push(r);
            }
        }
        level = next;
    }
    for e in edges {
        s.push_str(&e);
        s.push('\n');
    }
    s.push_str("}\n");
    s
}
