#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use loopcalc::constructions::{all_loops, commutative_isotope, filter_by, wcip_loops, Isotope};
use loopcalc::identity::{builtin, check_identity, identity_or_builtin, parse_identity, Identity, Verdict};
use loopcalc::matrix_bruck::{
    check_identity_numeric, identity_inverse_residual, Tolerances, DEFAULT_SAMPLES, DEFAULT_SEED,
};
use loopcalc::nuclei::{is_subloop, nucleus, NucleusKind};
use loopcalc::pseudo::{enumerate_pseudo, is_pseudo};
use loopcalc::theorems::{verify, Theorem};
use loopcalc::{LoopTable, Permutation};

#[derive(Parser)]
#[command(name = "loopcalc", version, about = "Finite loop toolkit: identities, nuclei, pseudoautomorphisms")]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Subcommand)]
enum Command {
    /// Check identities on a loop.
    Check {
        file: PathBuf,
        /// Identities such as "x * (y * z) = (x * y) * z".
        identities: Vec<String>,
        /// Builtin identity names (WCIP, AIP, RIP, BOL, ...).
        #[arg(long = "builtin")]
        builtins: Vec<String>,
    },
    /// Print the left, middle and right nuclei.
    Nuclei { file: PathBuf },
    /// Enumerate pseudoautomorphisms, or test one pair.
    Pseudo {
        file: PathBuf,
        #[arg(long)]
        kind: NucleusKind,
        /// Images of sigma, e.g. "0 2 1".
        #[arg(long, requires = "companion")]
        sigma: Option<String>,
        #[arg(long, requires = "sigma")]
        companion: Option<usize>,
    },
    /// Run theorem checks on a loop file or a generated corpus.
    Verify(VerifyArgs),
    /// Print the table of x o y = x' \ y.
    Isotope { file: PathBuf },
    /// Generate all loops of an order, optionally filtered by identities.
    Generate {
        order: usize,
        /// Identities or builtin names every emitted loop must satisfy.
        #[arg(long = "filter")]
        filters: Vec<String>,
        /// Print only the number of loops.
        #[arg(long)]
        count: bool,
    },
    /// Sample the matrix Bruck loop and report identity residuals.
    MatrixDemo {
        #[arg(long = "dim", default_values_t = [2usize, 3])]
        dims: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Residual threshold for identities expected to hold.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(required_unless_present = "generate", conflicts_with = "generate")]
    file: Option<PathBuf>,
    /// Verify every loop of this order instead of a file.
    #[arg(long, value_name = "ORDER")]
    generate: Option<usize>,
    /// With --generate, keep only loops with the weak commutative inverse property.
    #[arg(long, requires = "generate")]
    wcip_only: bool,
    /// Theorem groups to check (all when omitted).
    #[arg(long = "theorem")]
    theorems: Vec<Theorem>,
}

/// A failed run: `Usage` maps to exit 2, `Check` to exit 1.
enum Failure {
    Usage(String),
    Check,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Run = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("loopcalc: {e}");
            return ExitCode::from(2);
        }
    }
    let mut out = String::new();
    let result = run(&cli, &mut out);
    print!("{out}");
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("loopcalc: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli, out: &mut String) -> Result<(), Failure> {
    let fmt = cli.format;
    let (text, ok) = match &cli.command {
        Command::Check { file, identities, builtins } => check(fmt, file, identities, builtins)?,
        Command::Nuclei { file } => (nuclei(fmt, file)?, true),
        Command::Pseudo { file, kind, sigma, companion } => pseudo(fmt, file, *kind, sigma.as_deref(), *companion)?,
        Command::Verify(args) => verify_cmd(fmt, args)?,
        Command::Isotope { file } => (isotope(fmt, file)?, true),
        Command::Generate { order, filters, count } => (generate(fmt, *order, filters, *count)?, true),
        Command::MatrixDemo { dims, samples, seed, tol } => matrix_demo(fmt, dims, *samples, *seed, *tol)?,
    };
    out.push_str(&text);
    if ok {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn load(path: &Path) -> Result<LoopTable, Failure> {
    Ok(LoopTable::load(path)?)
}

fn check(fmt: Format, file: &Path, identities: &[String], builtins: &[String]) -> Result<(String, bool), Failure> {
    if identities.is_empty() && builtins.is_empty() {
        return Err(Failure::Usage("check needs at least one identity or --builtin NAME".into()));
    }
    let l = load(file)?;
    let mut named: Vec<(String, Identity)> = Vec::new();
    for name in builtins {
        named.push((name.to_ascii_uppercase(), builtin(name)?));
    }
    for text in identities {
        let id = parse_identity(text)?;
        named.push((id.to_string(), id));
    }
    let mut out = String::new();
    let mut ok = true;
    for (label, id) in &named {
        let (status, verdict) = match check_identity(&l, id) {
            Ok(v) => (v.to_string(), Some(v)),
            Err(e) => (format!("UNDEFINED ({e})"), None),
        };
        ok &= verdict.as_ref().is_some_and(Verdict::holds);
        match fmt {
            Format::Text => writeln!(out, "{label}: {status}").unwrap(),
            Format::Records => {
                let counterexample = match &verdict {
                    Some(Verdict::Counterexample { assignment, lhs, rhs }) => {
                        let asg: serde_json::Map<_, _> =
                            assignment.iter().map(|(v, e)| (v.to_string(), json!(e))).collect();
                        json!({"assignment": asg, "lhs": lhs, "rhs": rhs})
                    }
                    _ => serde_json::Value::Null,
                };
                let rec = json!({
                    "identity": label,
                    "holds": verdict.as_ref().is_some_and(Verdict::holds),
                    "status": status,
                    "counterexample": counterexample,
                });
                writeln!(out, "{rec}").unwrap();
            }
        }
    }
    Ok((out, ok))
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn nuclei(fmt: Format, file: &Path) -> Run {
    let l = load(file)?;
    let mut out = String::new();
    for kind in NucleusKind::ALL {
        let nuc = nucleus(&l, kind);
        let sub = is_subloop(&l, &nuc);
        match fmt {
            Format::Text => {
                writeln!(out, "{kind}: {} ({})", join(&nuc), if sub { "subloop" } else { "NOT a subloop" }).unwrap()
            }
            Format::Records => writeln!(out, "{}", json!({"kind": kind, "nucleus": nuc, "subloop": sub})).unwrap(),
        }
    }
    Ok(out)
}

fn parse_perm(text: &str) -> Result<Permutation, Failure> {
    let images = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|_| Failure::Usage(format!("bad image {s:?} in --sigma"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Permutation::from_images(images)?)
}

fn pseudo(
    fmt: Format,
    file: &Path,
    kind: NucleusKind,
    sigma: Option<&str>,
    companion: Option<usize>,
) -> Result<(String, bool), Failure> {
    let l = load(file)?;
    let mut out = String::new();
    if let (Some(sigma), Some(c)) = (sigma, companion) {
        let sigma = parse_perm(sigma)?;
        if sigma.len() != l.order() {
            return Err(Failure::Usage(format!("sigma has {} images, loop has order {}", sigma.len(), l.order())));
        }
        if c >= l.order() {
            return Err(Failure::Usage(format!("companion {c} out of range for order {}", l.order())));
        }
        let holds = is_pseudo(&l, kind, &sigma, c);
        match fmt {
            Format::Text => writeln!(out, "{kind} {c} : {sigma}: {}", if holds { "HOLDS" } else { "FAILS" }).unwrap(),
            Format::Records => {
                writeln!(out, "{}", json!({"kind": kind, "sigma": sigma.images(), "companion": c, "holds": holds}))
                    .unwrap()
            }
        }
        return Ok((out, holds));
    }
    for p in enumerate_pseudo(&l, kind) {
        match fmt {
            Format::Text => writeln!(out, "{p}").unwrap(),
            Format::Records => writeln!(out, "{}", serde_json::to_string(&p)?).unwrap(),
        }
    }
    Ok((out, true))
}

fn verify_cmd(fmt: Format, args: &VerifyArgs) -> Result<(String, bool), Failure> {
    let theorems: Vec<Theorem> = if args.theorems.is_empty() { Theorem::ALL.to_vec() } else { args.theorems.clone() };
    let corpus: Vec<(String, LoopTable)> = match (&args.file, args.generate) {
        (Some(path), _) => vec![(path.display().to_string(), load(path)?)],
        (None, Some(n)) => {
            let loops = if args.wcip_only { wcip_loops(n)? } else { all_loops(n)?.collect() };
            loops.into_iter().enumerate().map(|(i, l)| (format!("n{n}-{i}"), l)).collect()
        }
        (None, None) => unreachable!("clap requires a file or --generate"),
    };
    let reports: Vec<_> = corpus.par_iter().map(|(id, l)| verify(id, l, &theorems)).collect();
    let mut out = String::new();
    for r in &reports {
        out.push_str(&match fmt {
            Format::Text => r.to_text(),
            Format::Records => r.to_records(),
        });
    }
    Ok((out, reports.iter().all(|r| r.passed())))
}

fn rows_text(rows: &[Vec<usize>]) -> String {
    let mut out = format!("{}\n", rows.len());
    for row in rows {
        out.push_str(&join(row));
        out.push('\n');
    }
    out
}

fn isotope(fmt: Format, file: &Path) -> Run {
    let l = load(file)?;
    let iso = commutative_isotope(&l)?;
    let is_loop = matches!(iso, Isotope::Loop(_));
    let commutative = iso.is_commutative();
    Ok(match fmt {
        Format::Text => format!(
            "# {}, {}\n{}",
            if is_loop { "loop" } else { "quasigroup" },
            if commutative { "commutative" } else { "not commutative" },
            rows_text(&iso.rows())
        ),
        Format::Records => {
            format!("{}\n", json!({"loop": is_loop, "commutative": commutative, "rows": iso.rows()}))
        }
    })
}

fn generate(fmt: Format, order: usize, filters: &[String], count: bool) -> Run {
    let ids = filters.iter().map(|f| identity_or_builtin(f)).collect::<Result<Vec<_>, _>>()?;
    let mut out = String::new();
    let mut total = 0usize;
    for l in filter_by(all_loops(order)?, &ids) {
        let l = l?;
        if !count {
            match fmt {
                Format::Text => write!(out, "# loop {total}\n{}", l.to_text()).unwrap(),
                Format::Records => writeln!(out, "{}", json!({"index": total, "rows": l.rows()})).unwrap(),
            }
        }
        total += 1;
    }
    if count {
        match fmt {
            Format::Text => writeln!(out, "{total}").unwrap(),
            Format::Records => writeln!(out, "{}", json!({"order": order, "count": total})).unwrap(),
        }
    }
    Ok(out)
}

/// Identities sampled by `matrix-demo`, with whether each should hold.
const DEMO_IDENTITIES: [(&str, bool); 8] = [
    ("BOL", true),
    ("AIP", true),
    ("RIP", true),
    ("WCIP", true),
    ("WCIP2", true),
    ("LIP", false),
    ("COMM", false),
    ("ASSOC", false),
];

fn matrix_demo(fmt: Format, dims: &[usize], samples: usize, seed: u64, tol: f64) -> Result<(String, bool), Failure> {
    if dims.contains(&0) || samples == 0 || !(tol > 0.0) {
        return Err(Failure::Usage("--dim and --samples must be positive and --tol > 0".into()));
    }
    let tolerances = Tolerances::default();
    let mut out = String::new();
    let mut ok = true;
    if fmt == Format::Text {
        writeln!(out, "{:<10} {:>3} {:>7} {:>12}  status", "identity", "dim", "samples", "max_resid").unwrap();
    }
    let mut emit = |out: &mut String, name: &str, dim: usize, resid: f64, expect_hold: bool| {
        let pass = if expect_hold { resid < tol } else { resid > 1e-3 };
        ok &= pass;
        let status = match (expect_hold, pass) {
            (true, true) => "holds",
            (false, true) => "fails (expected)",
            (true, false) => "VIOLATED",
            (false, false) => "UNEXPECTEDLY HOLDS",
        };
        match fmt {
            Format::Text => writeln!(out, "{name:<10} {dim:>3} {samples:>7} {resid:>12.3e}  {status}").unwrap(),
            Format::Records => writeln!(
                out,
                "{}",
                json!({"identity": name, "dim": dim, "samples": samples, "max_residual": resid, "pass": pass})
            )
            .unwrap(),
        }
    };
    for (name, expect_hold) in DEMO_IDENTITIES {
        let id = builtin(name)?;
        for r in check_identity_numeric(&id, samples, dims, &tolerances, seed)? {
            emit(&mut out, name, r.dim, r.max_residual, expect_hold);
        }
    }
    for &dim in dims {
        let resid = identity_inverse_residual(dim, samples, &tolerances, seed)?;
        emit(&mut out, "ID/INV", dim, resid, true);
    }
    Ok((out, ok))
}
