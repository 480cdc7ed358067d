use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::json;

use sumtrees::enumerate::{
    self, BetaMethod, CountError, EpsilonMethod, Limits, SigmaMethod, TauTable,
};
use sumtrees::floateval::{
    self, format_hex, Binding, EvalReport, Precision, Selector, SurveyReport,
};
use sumtrees::generate::{self, ShapeMode};
use sumtrees::oeis::{self, BFile, CheckReport, Sequence};
use sumtrees::{canonical_key, parse_labels, parse_shape, Label, Shape};

#[derive(Parser)]
#[command(
    name = "sumtree",
    version,
    about = "Count, enumerate and evaluate floating-point summation orders"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Override the size cap of the chosen command.
    #[arg(long, global = true, value_name = "N")]
    max_n_cap: Option<u64>,
    /// Print floating-point values as hexadecimal literals.
    #[arg(long, global = true)]
    hex: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print one exact count.
    Count(CountArgs),
    /// Print the table of forms by leaf count and S-node count.
    Table {
        #[arg(long, default_value_t = 15)]
        max_n: u64,
    },
    /// Compare a b-file fixture with the corresponding count.
    CheckOeis(CheckArgs),
    /// Stream shapes or labeled class representatives.
    Enumerate(EnumerateArgs),
    /// Evaluate one summation in floating point.
    Eval(EvalArgs),
    /// Evaluate every class of a family and summarize the errors.
    Survey(SurveyArgs),
    /// Print the canonical labeled form and canonical shape of an expression.
    Canon { expr: String },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CountKind {
    All,
    Ladder,
    Pairwise,
    Alpha,
    AlphaDistinct,
    Tau,
    TauDistinct,
    Beta,
    Epsilon,
}

#[derive(Args)]
struct CountArgs {
    #[arg(value_enum)]
    kind: CountKind,
    #[arg(long)]
    n: u64,
    #[arg(long)]
    s: Option<u64>,
    /// epsilon: recursive|closed|baruchel; pairwise: tournament|epsilon-recursive|epsilon-closed;
    /// beta: legendre|decomposition|popcount.
    #[arg(long)]
    method: Option<String>,
}

#[derive(Args)]
struct CheckArgs {
    /// Sequence id such as A001147, or `all`.
    sequence: String,
    /// b-file to check; defaults to `<dir>/b<number>.txt`.
    #[arg(long)]
    fixture: Option<PathBuf>,
    #[arg(long, default_value = "fixtures/oeis")]
    dir: PathBuf,
    #[arg(long)]
    max_terms: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EnumKind {
    Shapes,
    Classes,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Isomorphism,
    SizeOrdered,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(value_enum)]
    kind: EnumKind,
    #[arg(long)]
    n: Option<usize>,
    /// Only shapes with exactly this many S-nodes.
    #[arg(long)]
    s: Option<usize>,
    /// Classes of this shape only (labels are ignored in the expression).
    #[arg(long)]
    shape: Option<String>,
    /// Comma-separated labels; defaults to a, b, c, ...
    #[arg(long, value_delimiter = ',')]
    labels: Option<Vec<String>>,
    #[arg(long, value_enum, default_value_t = ModeArg::Isomorphism)]
    mode: ModeArg,
    #[arg(long)]
    count_only: bool,
}

#[derive(Args)]
struct EvalArgs {
    expr: String,
    /// Binding file path or inline `a=1,b=2`.
    #[arg(long)]
    bind: String,
    #[arg(long, default_value = "binary64")]
    precision: Precision,
}

#[derive(Args)]
struct SurveyArgs {
    #[arg(long)]
    n: Option<usize>,
    /// all | ladder | pairwise | shape:EXPR
    #[arg(long, default_value = "all")]
    selector: String,
    #[arg(long)]
    bind: String,
    #[arg(long, default_value = "binary64")]
    precision: Precision,
}

enum Failure {
    Check(String),
    Usage(anyhow::Error),
    Eval(anyhow::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Eval(e.into())
    }
}

fn usage(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Usage(e.into())
}

fn evaluation(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Eval(e.into())
}

const ENUMERATE_SHAPES_CAP: u64 = 24;
const ENUMERATE_CLASSES_CAP: u64 = 9;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(&cli, &mut out);
    let flushed = out.flush();
    match result {
        Ok(()) if flushed.is_ok() || is_broken_pipe(&flushed) => ExitCode::SUCCESS,
        Ok(()) => ExitCode::from(3),
        Err(Failure::Check(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}\n\nFor more information, try '--help'.");
            ExitCode::from(2)
        }
        Err(Failure::Eval(e)) => {
            if e.downcast_ref::<io::Error>()
                .is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe)
            {
                return ExitCode::SUCCESS;
            }
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}

fn is_broken_pipe(r: &io::Result<()>) -> bool {
    matches!(r, Err(e) if e.kind() == io::ErrorKind::BrokenPipe)
}

fn limits(cli: &Cli) -> Limits {
    let mut l = Limits::default();
    if let Some(cap) = cli.max_n_cap {
        l.max_small_n = cap;
        l.max_big_n = cap;
        l.max_table_n = cap;
    }
    l
}

fn run(cli: &Cli, out: &mut impl Write) -> Result<(), Failure> {
    match &cli.command {
        Command::Count(args) => count(cli, args, out),
        Command::Table { max_n } => table(cli, *max_n, out),
        Command::CheckOeis(args) => check_oeis(cli, args, out),
        Command::Enumerate(args) => enumerate_cmd(cli, args, out),
        Command::Eval(args) => eval(cli, args, out),
        Command::Survey(args) => survey(cli, args, out),
        Command::Canon { expr } => canon(cli, expr, out),
    }
}

fn count_error(e: CountError) -> Failure {
    usage(e)
}

fn method<T: std::str::FromStr<Err = String>>(
    m: &Option<String>,
    default: T,
) -> Result<T, Failure> {
    match m {
        Some(text) => text.parse().map_err(|e: String| usage(anyhow!(e))),
        None => Ok(default),
    }
}

fn count(cli: &Cli, args: &CountArgs, out: &mut impl Write) -> Result<(), Failure> {
    let lim = limits(cli);
    let n = args.n;
    let needs_s = matches!(args.kind, CountKind::Tau | CountKind::TauDistinct);
    if needs_s != args.s.is_some() {
        return Err(usage(anyhow!(if needs_s {
            "--s is required for tau"
        } else {
            "--s only applies to tau"
        })));
    }
    let takes_method = matches!(
        args.kind,
        CountKind::Pairwise | CountKind::Epsilon | CountKind::Beta
    );
    if args.method.is_some() && !takes_method {
        return Err(usage(anyhow!(
            "--method only applies to pairwise, epsilon and beta"
        )));
    }
    let (value, method_name): (BigUint, Option<String>) = match args.kind {
        CountKind::All => {
            lim.check_big("all", n).map_err(count_error)?;
            (enumerate::count_all(n).map_err(count_error)?, None)
        }
        CountKind::Ladder => {
            lim.check_big("ladder", n).map_err(count_error)?;
            (enumerate::count_ladder(n).map_err(count_error)?, None)
        }
        CountKind::Pairwise => {
            lim.check_big("pairwise", n).map_err(count_error)?;
            let m = method(&args.method, SigmaMethod::TournamentRecursive)?;
            (
                enumerate::sigma_pairwise(n, m).map_err(count_error)?,
                Some(m.to_string()),
            )
        }
        CountKind::Alpha => {
            lim.check_big("alpha", n).map_err(count_error)?;
            (enumerate::alpha(n).map_err(count_error)?, None)
        }
        CountKind::AlphaDistinct => {
            lim.check_big("alpha", n).map_err(count_error)?;
            (enumerate::alpha_distinct(n).map_err(count_error)?, None)
        }
        CountKind::Tau | CountKind::TauDistinct => {
            lim.check_big("tau", n).map_err(count_error)?;
            if n == 0 {
                return Err(count_error(CountError::OutOfDomain {
                    what: "tau",
                    n,
                    min: 1,
                }));
            }
            let s = args.s.expect("checked");
            let v = if args.kind == CountKind::Tau {
                enumerate::tau(n, s)
            } else {
                enumerate::tau_distinct(n, s)
            };
            (v, None)
        }
        CountKind::Beta => {
            lim.check_small("beta", n).map_err(count_error)?;
            let m = method(&args.method, BetaMethod::Legendre)?;
            (
                enumerate::beta_with(n, m).map_err(count_error)?.into(),
                Some(m.to_string()),
            )
        }
        CountKind::Epsilon => {
            lim.check_small("epsilon", n).map_err(count_error)?;
            let m = method(&args.method, EpsilonMethod::Recursive)?;
            (
                enumerate::epsilon(n, m).map_err(count_error)?.into(),
                Some(m.to_string()),
            )
        }
    };
    let kind = CountKind::to_possible_value(&args.kind)
        .expect("named")
        .get_name()
        .to_string();
    match cli.format {
        Format::Table => writeln!(out, "{value}")?,
        Format::Csv => {
            writeln!(out, "kind,n,s,method,value")?;
            writeln!(
                out,
                "{kind},{n},{},{},{value}",
                args.s.map(|s| s.to_string()).unwrap_or_default(),
                method_name.clone().unwrap_or_default()
            )?;
        }
        Format::Json => {
            let v = json!({
                "kind": kind,
                "n": n,
                "s": args.s,
                "method": method_name,
                "value": value.to_string(),
            });
            writeln!(out, "{v}")?;
        }
    }
    Ok(())
}

fn table(cli: &Cli, max_n: u64, out: &mut impl Write) -> Result<(), Failure> {
    if max_n == 0 {
        return Err(usage(anyhow!("--max-n must be at least 1")));
    }
    limits(cli).check_table(max_n).map_err(count_error)?;
    let max_n = max_n as usize;
    let t = TauTable::new(max_n);
    let alpha = |n: usize| -> BigUint { t.row_sum(n) };
    let cells = |n: usize| -> Vec<BigUint> { (1..n).map(|s| t.get(n, s)).collect() };
    let width_cols = max_n.saturating_sub(1);
    match cli.format {
        Format::Table => {
            let w = t.row_sum(max_n).to_string().len().max(4);
            write!(out, "{:>3} |", "n")?;
            for s in 1..=width_cols {
                write!(out, " {s:>w$}")?;
            }
            writeln!(out, " | {:>w$}", "alpha")?;
            for n in 1..=max_n {
                write!(out, "{n:>3} |")?;
                let row = cells(n);
                for s in 0..width_cols {
                    match row.get(s) {
                        Some(v) => write!(out, " {v:>w$}")?,
                        None => write!(out, " {:>w$}", "")?,
                    }
                }
                writeln!(out, " | {:>w$}", alpha(n))?;
            }
        }
        Format::Csv => {
            write!(out, "n")?;
            for s in 1..=width_cols {
                write!(out, ",s{s}")?;
            }
            writeln!(out, ",alpha")?;
            for n in 1..=max_n {
                write!(out, "{n}")?;
                let row = cells(n);
                for s in 0..width_cols {
                    match row.get(s) {
                        Some(v) => write!(out, ",{v}")?,
                        None => write!(out, ",")?,
                    }
                }
                writeln!(out, ",{}", alpha(n))?;
            }
        }
        Format::Json => {
            let rows: Vec<_> = (1..=max_n)
                .map(|n| {
                    json!({
                        "n": n,
                        "tau": cells(n).iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                        "alpha": alpha(n).to_string(),
                    })
                })
                .collect();
            writeln!(out, "{}", json!({ "max_n": max_n, "rows": rows }))?;
        }
    }
    Ok(())
}

fn check_oeis(cli: &Cli, args: &CheckArgs, out: &mut impl Write) -> Result<(), Failure> {
    let sequences: Vec<Sequence> = if args.sequence.eq_ignore_ascii_case("all") {
        if args.fixture.is_some() {
            return Err(usage(anyhow!("--fixture needs a single sequence")));
        }
        Sequence::ALL.to_vec()
    } else {
        vec![args.sequence.parse().map_err(usage)?]
    };
    let mut reports = Vec::new();
    for seq in sequences {
        let path = match &args.fixture {
            Some(p) => p.clone(),
            None => args.dir.join(format!("b{}.txt", &seq.to_string()[1..])),
        };
        let text = std::fs::read_to_string(&path)
            .with_context(|| format!("reading fixture {}", path.display()))
            .map_err(usage)?;
        let fixture = BFile::parse(&text)
            .with_context(|| format!("fixture {}", path.display()))
            .map_err(usage)?;
        reports.push(oeis::check(seq, &fixture, args.max_terms));
    }
    write_check_reports(cli.format, &reports, out)?;
    match reports.iter().find(|r| !r.passed()) {
        None => Ok(()),
        Some(r) => Err(Failure::Check(match &r.mismatch {
            Some(m) => format!(
                "{} mismatch at index {}: fixture {}, computed {}",
                r.sequence, m.index, m.expected, m.got
            ),
            None => format!("{}: no terms compared", r.sequence),
        })),
    }
}

fn write_check_reports(
    format: Format,
    reports: &[CheckReport],
    out: &mut impl Write,
) -> io::Result<()> {
    match format {
        Format::Table => {
            for r in reports {
                let status = if r.passed() { "PASS" } else { "FAIL" };
                write!(
                    out,
                    "{} {status} compared={} skipped={} mapping={}",
                    r.sequence, r.compared, r.skipped, r.mapping
                )?;
                if let Some(m) = &r.mismatch {
                    write!(
                        out,
                        " index={} expected={} got={}",
                        m.index, m.expected, m.got
                    )?;
                }
                writeln!(out)?;
            }
        }
        Format::Csv => {
            writeln!(out, "sequence,status,compared,skipped,index,expected,got")?;
            for r in reports {
                let (i, e, g) = match &r.mismatch {
                    Some(m) => (m.index.to_string(), m.expected.clone(), m.got.clone()),
                    None => Default::default(),
                };
                let status = if r.passed() { "pass" } else { "fail" };
                writeln!(
                    out,
                    "{},{status},{},{},{i},{e},{g}",
                    r.sequence, r.compared, r.skipped
                )?;
            }
        }
        Format::Json => {
            let v: Vec<_> = reports
                .iter()
                .map(|r| {
                    let mut v = serde_json::to_value(r).expect("serializable");
                    v["passed"] = r.passed().into();
                    v
                })
                .collect();
            writeln!(out, "{}", serde_json::Value::Array(v))?;
        }
    }
    Ok(())
}

fn labels_for(n: usize, given: &Option<Vec<String>>) -> Result<Vec<Label>, Failure> {
    match given {
        None => Ok(Label::alphabet(n)),
        Some(list) => list
            .iter()
            .map(|s| Label::new(s.trim()).map_err(usage))
            .collect(),
    }
}

fn enumerate_cmd(cli: &Cli, args: &EnumerateArgs, out: &mut impl Write) -> Result<(), Failure> {
    let shape: Option<Shape> = match &args.shape {
        Some(expr) => Some(parse_shape(expr).map_err(usage)?),
        None => None,
    };
    let n = match (args.n, &shape, &args.labels) {
        (Some(n), _, _) => n,
        (None, Some(s), _) => s.leaf_count(),
        (None, None, Some(l)) => l.len(),
        (None, None, None) => return Err(usage(anyhow!("--n is required"))),
    };
    if n == 0 {
        return Err(usage(anyhow!("--n must be at least 1")));
    }
    let default_cap = match args.kind {
        EnumKind::Shapes => ENUMERATE_SHAPES_CAP,
        EnumKind::Classes => ENUMERATE_CLASSES_CAP,
    };
    let cap = cli.max_n_cap.unwrap_or(default_cap);
    if n as u64 > cap {
        return Err(usage(anyhow!(
            "n = {n} exceeds the enumeration cap of {cap} (see --max-n-cap)"
        )));
    }
    let stream: Box<dyn Iterator<Item = (String, usize)>> = match args.kind {
        EnumKind::Shapes => {
            if args.shape.is_some() || args.labels.is_some() {
                return Err(usage(anyhow!("--shape and --labels apply to classes")));
            }
            let mode = match args.mode {
                ModeArg::Isomorphism => ShapeMode::Isomorphism,
                ModeArg::SizeOrdered => ShapeMode::SizeOrdered,
            };
            let s = generate::shapes_with(n, args.s, mode).map_err(usage)?;
            Box::new(s.map(|t| (t.serialize(), t.s_node_count())))
        }
        EnumKind::Classes => {
            if args.s.is_some() {
                return Err(usage(anyhow!("--s applies to shapes")));
            }
            let labels = labels_for(n, &args.labels)?;
            let s = match &shape {
                Some(sh) => generate::class_representatives(sh, &labels).map_err(usage)?,
                None => {
                    if labels.len() != n {
                        return Err(usage(anyhow!("expected {n} labels, got {}", labels.len())));
                    }
                    generate::all_classes(&labels).map_err(usage)?
                }
            };
            Box::new(s.map(|t| {
                let s = t.s_node_count();
                (t.serialize(), s)
            }))
        }
    };
    if args.count_only {
        let count = stream.count();
        match cli.format {
            Format::Table => writeln!(out, "{count}")?,
            Format::Csv => writeln!(out, "count\n{count}")?,
            Format::Json => writeln!(out, "{}", json!({ "count": count }))?,
        }
        return Ok(());
    }
    match cli.format {
        Format::Table => {
            for (text, _) in stream {
                writeln!(out, "{text}")?;
            }
        }
        Format::Csv => {
            writeln!(out, "index,tree,s_nodes")?;
            for (i, (text, s)) in stream.enumerate() {
                writeln!(out, "{i},{text},{s}")?;
            }
        }
        Format::Json => {
            write!(out, "[")?;
            for (i, (text, s)) in stream.enumerate() {
                let sep = if i == 0 { "" } else { "," };
                write!(out, "{sep}{}", json!({ "tree": text, "s_nodes": s }))?;
            }
            writeln!(out, "]")?;
        }
    }
    Ok(())
}

fn load_binding(spec: &str) -> Result<Binding, Failure> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading binding {}", path.display()))
            .map_err(usage)?;
        Binding::parse_file(&text).map_err(usage)
    } else if spec.contains('=') {
        Binding::parse_inline(spec).map_err(usage)
    } else {
        Err(usage(anyhow!(
            "binding {spec:?} is neither a file nor `label=value` pairs"
        )))
    }
}

fn float_text(x: f64, p: Precision, hex: bool) -> String {
    if hex {
        format_hex(x, p)
    } else {
        format!("{x:?}")
    }
}

fn error_text(x: f64, hex: bool) -> String {
    float_text(x, Precision::Binary64, hex)
}

fn eval(cli: &Cli, args: &EvalArgs, out: &mut impl Write) -> Result<(), Failure> {
    let tree = sumtrees::parse(&args.expr).map_err(usage)?;
    let b = load_binding(&args.bind)?;
    let r = floateval::eval(&tree, &b, args.precision).map_err(evaluation)?;
    write_eval(cli, &r, out)?;
    Ok(())
}

fn write_eval(cli: &Cli, r: &EvalReport, out: &mut impl Write) -> io::Result<()> {
    let rel = |hex| match r.relative_error {
        Some(x) => error_text(x, hex),
        None => "undefined".to_string(),
    };
    match cli.format {
        Format::Table => {
            writeln!(out, "tree       {}", r.tree)?;
            writeln!(out, "precision  {}", r.precision)?;
            writeln!(
                out,
                "rounded    {}",
                float_text(r.rounded, r.precision, cli.hex)
            )?;
            writeln!(out, "exact      {}", r.exact)?;
            writeln!(out, "abs_error  {}", error_text(r.abs_error_f64(), cli.hex))?;
            writeln!(out, "rel_error  {}", rel(cli.hex))?;
        }
        Format::Csv => {
            writeln!(out, "tree,precision,rounded,exact,abs_error,relative_error")?;
            writeln!(
                out,
                "{},{},{},{},{},{}",
                r.tree,
                r.precision,
                float_text(r.rounded, r.precision, cli.hex),
                r.exact,
                error_text(r.abs_error_f64(), cli.hex),
                r.relative_error
                    .map(|x| error_text(x, cli.hex))
                    .unwrap_or_default()
            )?;
        }
        Format::Json => writeln!(out, "{}", to_json(r))?,
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn selector(text: &str) -> Result<Selector, Failure> {
    Ok(match text {
        "all" => Selector::All,
        "ladder" => Selector::Ladder,
        "pairwise" => Selector::Pairwise,
        other => match other.strip_prefix("shape:") {
            Some(expr) => Selector::Shape(parse_shape(expr).map_err(usage)?),
            None => bail_usage(format!(
                "unknown selector {other:?} (all|ladder|pairwise|shape:EXPR)"
            ))?,
        },
    })
}

fn bail_usage<T>(msg: String) -> Result<T, Failure> {
    Err(usage(anyhow!(msg)))
}

fn survey(cli: &Cli, args: &SurveyArgs, out: &mut impl Write) -> Result<(), Failure> {
    let sel = selector(&args.selector)?;
    let b = load_binding(&args.bind)?;
    if let Some(n) = args.n {
        if n != b.len() {
            return Err(evaluation(floateval::EvalError::BindingMismatch {
                n,
                got: b.len(),
            }));
        }
    }
    if let Some(cap) = cli.max_n_cap {
        if b.len() as u64 > cap {
            return Err(evaluation(anyhow!(
                "n = {} exceeds --max-n-cap {cap}",
                b.len()
            )));
        }
    }
    let r = floateval::survey(&b, args.precision, &sel).map_err(evaluation)?;
    write_survey(cli, &r, out)?;
    Ok(())
}

fn write_survey(cli: &Cli, r: &SurveyReport, out: &mut impl Write) -> io::Result<()> {
    let p = r.precision;
    let h = cli.hex;
    let fields: Vec<(&str, String)> = vec![
        ("classes", r.classes.to_string()),
        ("distinct", r.distinct.to_string()),
        ("overflowed", r.overflowed.to_string()),
        ("min_abs_error", error_text(r.min_abs_error, h)),
        ("max_abs_error", error_text(r.max_abs_error, h)),
        ("mean_abs_error", error_text(r.mean_abs_error, h)),
        ("argmin", r.argmin.clone()),
        ("argmax", r.argmax.clone()),
        ("exact", r.exact.to_string()),
        ("compensated", float_text(r.compensated, p, h)),
        (
            "compensated_abs_error",
            error_text(r.compensated_abs_error, h),
        ),
    ];
    match cli.format {
        Format::Table => {
            let line: Vec<String> = fields.iter().map(|(k, v)| format!("{k}={v}")).collect();
            writeln!(out, "{}", line.join(" "))?;
            writeln!(out, "results {}", r.distinct_hex.join(" "))?;
        }
        Format::Csv => {
            let keys: Vec<&str> = fields.iter().map(|(k, _)| *k).collect();
            writeln!(out, "n,selector,precision,{}", keys.join(","))?;
            let vals: Vec<&str> = fields.iter().map(|(_, v)| v.as_str()).collect();
            writeln!(out, "{},{},{},{}", r.n, r.selector, p, vals.join(","))?;
        }
        Format::Json => writeln!(out, "{}", to_json(r))?,
    }
    Ok(())
}

fn canon(cli: &Cli, expr: &str, out: &mut impl Write) -> Result<(), Failure> {
    let tree = parse_labels(expr).map_err(usage)?;
    let labeled = canonical_key(&tree);
    let shape = canonical_key(&tree.shape());
    let (s, d) = (tree.s_node_count(), tree.d_node_count());
    match cli.format {
        Format::Table => {
            writeln!(out, "labeled  {labeled}")?;
            writeln!(out, "shape    {shape}")?;
            writeln!(out, "s_nodes  {s}")?;
            writeln!(out, "d_nodes  {d}")?;
        }
        Format::Csv => {
            writeln!(out, "labeled,shape,s_nodes,d_nodes")?;
            writeln!(out, "{labeled},{shape},{s},{d}")?;
        }
        Format::Json => writeln!(
            out,
            "{}",
            json!({ "labeled": labeled, "shape": shape, "s_nodes": s, "d_nodes": d })
        )?,
    }
    Ok(())
}
