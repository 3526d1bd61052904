use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use ratmle::disctriple::{
    left_kernel_basis, marked_poly_from_pair, pair_from_marked_poly, triple_check, TripleJson, TripleVerdict,
};
use ratmle::exactalg::json::{default_vars, PolyJson};
use ratmle::exactalg::rational::{format_decimal, format_rational, parse_rational, Rational};
use ratmle::exactalg::SparsePoly;
use ratmle::families::{
    run_scan, trinomial_resultant, univariate_discriminant, Family, ScanOptions, ScanReport, Shape, Sign,
};
use ratmle::horn::{find_bijection, horn_map_eval, horn_pair_check, reduce_horn, HornPair, HornPairJson};
use ratmle::stagedtree::{
    identify_florets, identify_florets_with, tree_equivalent, tree_horn, tree_horn_reduced, tree_mle, tree_validate,
    StagedTree, TreeJson,
};
use ratmle::verify::{verify_model, verify_tree, VerificationReport};
use ratmle::{Error, Result};

#[derive(Parser)]
#[command(name = "ratmle", version, about = "Exact tools for discrete models with rational maximum likelihood estimators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Staged trees
    #[command(subcommand)]
    Tree(TreeCmd),
    /// Horn matrices and Horn pairs
    #[command(subcommand)]
    Horn(HornCmd),
    /// Discriminantal triples
    #[command(subcommand)]
    Triple(TripleCmd),
    /// Discriminants of the scanned families
    #[command(subcommand)]
    Disc(DiscCmd),
    /// Family scans
    #[command(subcommand)]
    Scan(ScanCmd),
    /// Likelihood-side verification
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Subcommand)]
enum TreeCmd {
    /// List every violated staged-tree condition
    Validate {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Closed-form estimate from leaf counts
    Mle {
        file: PathBuf,
        /// Comma-separated leaf counts
        #[arg(long)]
        counts: String,
        #[command(flatten)]
        out: Output,
    },
    /// Horn matrix of the tree
    Horn {
        file: PathBuf,
        /// Remove zero and collinear rows
        #[arg(long)]
        reduced: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Decide statistical equivalence of two trees
    Equiv {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Merge two florets into one stage
    Identify {
        file: PathBuf,
        /// Two floret names or 1-based numbers, e.g. f4,f5
        #[arg(long)]
        florets: String,
        /// Optional 0-based label bijection, e.g. 1,0
        #[arg(long)]
        bijection: Option<String>,
    },
}

#[derive(Subcommand)]
enum HornCmd {
    /// Friendliness, reduction, sign and positivity checks
    Check {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Evaluate the Horn map
    Eval {
        file: PathBuf,
        #[arg(long)]
        counts: String,
        #[command(flatten)]
        out: Output,
    },
    /// Remove zero and collinear rows
    Reduce {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Decide equality of two Horn pairs up to column order
    Equal {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand)]
enum TripleCmd {
    /// Check the sign and homogeneity conditions of a triple
    Check {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Triple of a Horn pair
    FromPair {
        file: PathBuf,
    },
    /// Horn pair of a triple
    ToPair {
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum DiscCmd {
    /// Discriminant of x1 + x2 t^a + x3 t^b + x4 t^c
    Univariate {
        a: usize,
        b: usize,
        c: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Resultant of x1 + x2 t^a + x3 t^b and x4 + x5 t^c + x6 t^e
    Trinomial {
        a: usize,
        b: usize,
        c: usize,
        e: usize,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    bound: Option<u32>,
    /// Worker threads
    #[arg(long)]
    jobs: Option<usize>,
    /// Checkpoint file, read on start and appended as instances finish
    #[arg(long)]
    resume: Option<PathBuf>,
    /// Scan only the first N instances
    #[arg(long)]
    limit: Option<usize>,
    #[command(flatten)]
    out: Output,
}

#[derive(Subcommand)]
enum ScanCmd {
    Univariate(ScanArgs),
    Trinomial(ScanArgs),
    LinearMultiples(ScanArgs),
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Idempotence, critical-point and dominance checks on random data
    Model {
        /// A staged tree, Horn pair or triple
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Model points sampled per trial for the dominance check
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[command(flatten)]
        out: Output,
    },
}

/// Everything a command prints, plus whether the verification it ran held.
struct Report {
    text: String,
    passed: bool,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, passed: true }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_str(&read(path)?).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn read_tree(path: &Path) -> Result<StagedTree> {
    StagedTree::from_json(&read_json::<TreeJson>(path)?)
}

fn read_pair(path: &Path) -> Result<HornPair> {
    read_json::<HornPairJson>(path)?.to_pair()
}

fn pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn parse_list<T>(text: &str, what: &str, f: impl Fn(&str) -> Option<T>) -> Result<Vec<T>> {
    text.split(',')
        .enumerate()
        .map(|(i, s)| f(s.trim()).ok_or_else(|| Error::InvalidInput(format!("{what}[{i}]: cannot parse {s:?}"))))
        .collect()
}

fn parse_counts(text: &str) -> Result<Vec<Rational>> {
    parse_list(text, "--counts", |s| parse_rational(s).ok())
}

fn fractions(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn both(r: &Rational) -> String {
    let f = format_rational(r);
    let d = format_decimal(r, 10);
    if f == d {
        f
    } else {
        format!("{f} ({d})")
    }
}

fn named_values(names: &[String], values: &[Rational]) -> String {
    let w = names.iter().map(String::len).max().unwrap_or(0);
    names
        .iter()
        .zip(values)
        .map(|(n, v)| format!("  {n:<w$} = {}\n", both(v)))
        .collect()
}

fn pair_table(p: &HornPair) -> String {
    let lambda: Vec<String> = p.lambda.values().iter().map(format_rational).collect();
    format!("{}lambda = ({})\n", p.h, lambda.join(", "))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn floret_index(t: &StagedTree, s: &str) -> Result<usize> {
    let n = t.florets().len();
    let k = s
        .trim()
        .trim_start_matches('f')
        .parse::<usize>()
        .ok()
        .filter(|k| (1..=n).contains(k))
        .ok_or_else(|| Error::InvalidInput(format!("--florets: {s:?} is not one of f1..f{n}")))?;
    Ok(k - 1)
}

fn tree(cmd: TreeCmd) -> Result<Report> {
    match cmd {
        TreeCmd::Validate { file, out } => {
            let problems = tree_validate(&read_json::<TreeJson>(&file)?);
            if !problems.is_empty() {
                return Err(Error::InvalidTree(problems.join("; ")));
            }
            Ok(Report::ok(match out.format {
                Format::Json => pretty(&json!({ "valid": true, "problems": problems })),
                Format::Table => "valid staged tree\n".into(),
            }))
        }
        TreeCmd::Mle { file, counts, out } => {
            let t = read_tree(&file)?;
            let u = parse_counts(&counts)?;
            let (s, p) = tree_mle(&t, &u)?;
            let leaves: Vec<String> = t.leaves().iter().map(|&v| t.node_names()[v].clone()).collect();
            Ok(Report::ok(match out.format {
                Format::Json => pretty(&json!({
                    "labels": t.labels(),
                    "s_hat": fractions(&s),
                    "leaves": leaves,
                    "p_hat": fractions(&p),
                })),
                Format::Table => format!(
                    "s_hat\n{}p_hat\n{}",
                    named_values(t.labels(), &s),
                    named_values(&leaves, &p)
                ),
            }))
        }
        TreeCmd::Horn { file, reduced, out } => {
            let t = read_tree(&file)?;
            let p = if reduced {
                tree_horn_reduced(&t)?
            } else {
                let (h, l) = tree_horn(&t);
                HornPair::new(h, l)?
            };
            Ok(Report::ok(match out.format {
                Format::Json => pretty(&p.to_json()),
                Format::Table => pair_table(&p),
            }))
        }
        TreeCmd::Equiv { first, second, out } => {
            let eq = tree_equivalent(&read_tree(&first)?, &read_tree(&second)?)?;
            let text = match out.format {
                Format::Json => pretty(&json!({ "equivalent": eq })),
                Format::Table => format!("equivalent: {}\n", yes(eq)),
            };
            Ok(Report { text, passed: eq })
        }
        TreeCmd::Identify { file, florets, bijection } => {
            let t = read_tree(&file)?;
            let fs: Vec<&str> = florets.split(',').collect();
            if fs.len() != 2 {
                return Err(Error::InvalidInput("--florets needs exactly two florets".into()));
            }
            let (f1, f2) = (floret_index(&t, fs[0])?, floret_index(&t, fs[1])?);
            let merged = match bijection {
                Some(b) => identify_florets_with(&t, f1, f2, &parse_list(&b, "--bijection", |s| s.parse().ok())?)?,
                None => identify_florets(&t, f1, f2)?,
            };
            Ok(Report::ok(pretty(&merged.to_json())))
        }
    }
}

fn horn(cmd: HornCmd) -> Result<Report> {
    match cmd {
        HornCmd::Check { file, out } => {
            let p = read_pair(&file)?;
            let v = horn_pair_check(&p.h, &p.lambda);
            let text = match out.format {
                Format::Json => pretty(&v),
                Format::Table => format!(
                    "friendly: {}\nreduced: {}\nconstant row signs: {}\npositive: {}\nHorn pair: {}\nsigma = ({})\n",
                    yes(v.friendly),
                    yes(v.reduced),
                    yes(v.row_signs_constant),
                    yes(v.positive),
                    yes(v.horn),
                    v.sigma.0.iter().map(|s| format!("{s:+}")).collect::<Vec<_>>().join(", ")
                ),
            };
            Ok(Report { text, passed: v.horn })
        }
        HornCmd::Eval { file, counts, out } => {
            let p = read_pair(&file)?;
            let v = horn_map_eval(&p, &parse_counts(&counts)?)?;
            let sum: Rational = v.iter().sum();
            Ok(Report::ok(match out.format {
                Format::Json => pretty(&json!({ "value": fractions(&v), "sum": format_rational(&sum) })),
                Format::Table => {
                    let names: Vec<String> = (0..v.len()).map(|j| format!("p{j}")).collect();
                    format!("{}  sum = {}\n", named_values(&names, &v), both(&sum))
                }
            }))
        }
        HornCmd::Reduce { file, out } => {
            let p = read_pair(&file)?;
            let r = reduce_horn(&p.h, &p.lambda)?;
            Ok(Report::ok(match out.format {
                Format::Json => pretty(&r.to_json()),
                Format::Table => pair_table(&r),
            }))
        }
        HornCmd::Equal { first, second, out } => {
            let b = find_bijection(&read_pair(&first)?, &read_pair(&second)?)?;
            let text = match out.format {
                Format::Json => pretty(&json!({ "equal": b.is_some(), "bijection": b })),
                Format::Table => match &b {
                    Some(b) => format!(
                        "equal: yes\nbijection: {}\n",
                        b.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
                    ),
                    None => "equal: no\n".into(),
                },
            };
            Ok(Report { text, passed: b.is_some() })
        }
    }
}

fn triple(cmd: TripleCmd) -> Result<Report> {
    match cmd {
        TripleCmd::Check { file, out } => {
            let (a, m) = read_json::<TripleJson>(&file)?.to_parts()?;
            let t = triple_check(&a, &m);
            let v = TripleVerdict::from(&t);
            let text = match out.format {
                Format::Json => pretty(&v),
                Format::Table => format!(
                    "A-homogeneous: {}\nreduced: {}\nconstant row signs: {}\nlambda signs: {}\nverified: {}\n",
                    yes(v.homogeneous),
                    yes(v.reduced),
                    yes(v.row_signs_constant),
                    yes(v.lambda_signs),
                    yes(v.verified)
                ),
            };
            Ok(Report { text, passed: v.verified })
        }
        TripleCmd::FromPair { file } => {
            let p = read_pair(&file)?;
            let m = marked_poly_from_pair(&p)?;
            let a = left_kernel_basis(&p.h)?;
            Ok(Report::ok(pretty(&TripleJson::from_parts(&a, &m))))
        }
        TripleCmd::ToPair { file } => {
            let (_, m) = read_json::<TripleJson>(&file)?.to_parts()?;
            Ok(Report::ok(pretty(&pair_from_marked_poly(&m)?.to_json())))
        }
    }
}

fn poly_output(p: &SparsePoly, format: Format) -> String {
    let vars = default_vars(p.nvars());
    match format {
        Format::Json => pretty(&PolyJson::from_poly(p, &vars)),
        Format::Table => format!("{}\n{} terms\n", p.fmt_with(&vars), p.len()),
    }
}

fn disc(cmd: DiscCmd) -> Result<Report> {
    Ok(Report::ok(match cmd {
        DiscCmd::Univariate { a, b, c, out } => poly_output(&univariate_discriminant(a, b, c)?, out.format),
        DiscCmd::Trinomial { a, b, c, e, out } => poly_output(&trinomial_resultant(a, b, c, e)?, out.format),
    }))
}

fn scan(cmd: ScanCmd) -> Result<Report> {
    let (families, args) = match cmd {
        ScanCmd::Univariate(a) => (vec![Family::Univariate { bound: a.bound.unwrap_or(17) }], a),
        ScanCmd::Trinomial(a) => (vec![Family::Trinomial { bound: a.bound.unwrap_or(17) }], a),
        ScanCmd::LinearMultiples(a) => {
            let mut fs = Vec::new();
            for (shape, default) in [(Shape::Binomial, 8), (Shape::Trinomial, 3)] {
                for sign in [Sign::Plus, Sign::Minus] {
                    fs.push(Family::LinearMultiple { shape, sign, bound: a.bound.unwrap_or(default) });
                }
            }
            (fs, a)
        }
    };
    if args.jobs == Some(0) {
        return Err(Error::InvalidInput("--jobs must be at least 1".into()));
    }
    if families.len() > 1 && args.resume.is_some() {
        return Err(Error::InvalidInput("--resume applies to a single family".into()));
    }
    let options = ScanOptions {
        jobs: args.jobs,
        checkpoint: args.resume,
        limit: args.limit,
    };
    let reports = families
        .iter()
        .map(|f| run_scan(f, &options))
        .collect::<Result<Vec<ScanReport>>>()?;
    for r in &reports {
        eprintln!("{}: {} ms", r.family, r.elapsed_ms);
    }
    Ok(Report::ok(match args.out.format {
        Format::Json => reports.iter().map(ScanReport::to_ndjson).collect(),
        Format::Table => {
            let mut s = ScanReport::to_table(&reports);
            for r in &reports {
                s.push_str(&format!("{}: {}\n", r.family, r.summary_line()));
            }
            s
        }
    }))
}

fn verify(cmd: VerifyCmd) -> Result<Report> {
    let VerifyCmd::Model { file, seed, trials, samples, out } = cmd;
    let value: Value = read_json(&file)?;
    let report: VerificationReport = if value.get("nodes").is_some() {
        verify_tree(&read_tree(&file)?, seed, trials, samples)?
    } else if value.get("H").is_some() {
        let p = read_pair(&file)?;
        verify_model(&p, Some(&p), seed, trials, samples)
    } else if value.get("A").is_some() {
        let (_, m) = read_json::<TripleJson>(&file)?.to_parts()?;
        let p = pair_from_marked_poly(&m)?;
        verify_model(&p, Some(&p), seed, trials, samples)
    } else {
        return Err(Error::InvalidInput(format!(
            "{}: expected a staged tree, Horn pair or triple",
            file.display()
        )));
    };
    let text = match out.format {
        Format::Json => pretty(&report),
        Format::Table => {
            let mut s = format!("seed {}\n", report.seed);
            for c in &report.checks {
                s.push_str(&format!("  {:<22} {}/{}\n", c.name, c.passed, c.trials));
            }
            for f in &report.failures {
                s.push_str(&format!("failure: {f}\n"));
            }
            s
        }
    };
    Ok(Report { text, passed: report.ok() })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Tree(c) => tree(c),
        Command::Horn(c) => horn(c),
        Command::Triple(c) => triple(c),
        Command::Disc(c) => disc(c),
        Command::Scan(c) => scan(c),
        Command::Verify(c) => verify(c),
    };
    match result {
        Ok(r) => {
            print!("{}", r.text);
            if r.passed {
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
