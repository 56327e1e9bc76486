//! `rook-crystal`: enumeration, products, module decompositions, crystal export and
//! verification of the structural theorems on small instances.
//!
//! Exit codes: 0 on success, 1 when a verification finds a counterexample, 2 on
//! usage or input errors.

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rook_crystal::algebra::{from_x_basis, to_x_basis, AlgebraElement};
use rook_crystal::categorified::{
    class_label_text, clambda_crystal, clambda_nodes, cm_crystal, highest_component, highest_tuple,
};
use rook_crystal::crystal::Crystal;
use rook_crystal::diagram::{enumerate_diagrams_with, monoid_order, Cap, Diagram};
use rook_crystal::modules::{all_classes, decompose, induce, regular_module_with, restrict, simple, ClassLabel};
use rook_crystal::tableaux::{box_crystal, row_crystal, ssyt_crystal};
use rook_crystal::verify::{self, Bound, Mutation, Scope, Target};
use rook_crystal::Error;

/// Environment variable that lifts enumeration caps, like `--force`.
const FORCE_ENV: &str = "ROOK_FORCE";

#[derive(Parser)]
#[command(name = "rook-crystal", version, about = "Colored planar rook algebras and their crystals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the diagrams of P_m^n, or count them
    Enumerate {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count_only: bool,
        /// Ignore the enumeration cap
        #[arg(long)]
        force: bool,
    },
    /// Multiply two diagrams or elements read from JSON files ("-" for stdin)
    Multiply {
        left: String,
        right: String,
        /// Read and write coefficients in the x basis
        #[arg(long)]
        x_basis: bool,
    },
    /// List the simple classes of CP_m with their dimensions
    Simples {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Decompose a module into simple classes
    Decompose(DecomposeArgs),
    /// Build a crystal and write it as JSON or DOT
    Crystal(CrystalArgs),
    /// Check a theorem exhaustively on small instances
    Verify(VerifyArgs),
}

#[derive(Args)]
struct DecomposeArgs {
    /// The regular module CP_m
    #[arg(long, requires_all = ["m", "n"], conflicts_with_all = ["simple", "restrict", "induce", "class"])]
    regular: bool,
    /// The simple module of --class
    #[arg(long, requires = "class", conflicts_with_all = ["restrict", "induce"])]
    simple: bool,
    /// Res_i of the simple module of --class
    #[arg(long, value_name = "I", requires = "class", conflicts_with = "induce")]
    restrict: Option<usize>,
    /// Ind_i of the simple module of --class
    #[arg(long, value_name = "I", requires = "class")]
    induce: Option<usize>,
    /// Class as "m,n:m0,...,mn"
    #[arg(long, value_parser = parse_class)]
    class: Option<ClassLabel>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum CrystalKind {
    Box,
    Row,
    Ssyt,
    Cm,
    Clambda,
    /// The component of [C_λ] through the highest class tuple
    Blambda,
}

#[derive(Args)]
struct CrystalArgs {
    #[arg(value_enum)]
    kind: CrystalKind,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: usize,
    /// Partition or composition as a comma list
    #[arg(long, value_delimiter = ',')]
    shape: Option<Vec<usize>>,
    /// DOT output path ("-" for stdout)
    #[arg(long)]
    dot: Option<String>,
    /// JSON output path ("-" for stdout)
    #[arg(long)]
    json: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_parser = parse_target)]
    target: Target,
    #[arg(long, conflicts_with = "max_m")]
    m: Option<usize>,
    #[arg(long, conflicts_with = "max_n")]
    n: Option<usize>,
    #[arg(long)]
    max_m: Option<usize>,
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long, hide = true, value_parser = parse_mutation)]
    inject_mutation: Option<Mutation>,
}

fn parse_class(s: &str) -> Result<ClassLabel, String> {
    let (size, counts) = s.split_once(':').ok_or("expected m,n:m0,...,mn")?;
    let (m, n) = size.split_once(',').ok_or("expected m,n before the colon")?;
    let m = m.trim().parse().map_err(|e| format!("bad m: {e}"))?;
    let n = n.trim().parse().map_err(|e| format!("bad n: {e}"))?;
    ClassLabel::with_size(m, n, parse_list(counts)?).map_err(|e| e.to_string())
}

fn parse_list(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| format!("bad entry {p:?}: {e}")))
        .collect()
}

fn parse_target(s: &str) -> Result<Target, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_mutation(s: &str) -> Result<Mutation, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failure modes mapped to exit codes.
enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn emit(path: &str, text: &str) -> io::Result<()> {
    if path == "-" {
        let mut out = io::stdout().lock();
        out.write_all(text.as_bytes())?;
        out.flush()
    } else {
        fs::write(path, text)
    }
}

fn cap_from(force: bool) -> Cap {
    let env = std::env::var(FORCE_ENV).is_ok_and(|v| !v.is_empty() && v != "0");
    if force || env {
        Cap::Override
    } else {
        Cap::Enforce
    }
}

fn enumerate(m: usize, n: usize, count_only: bool, force: bool) -> Outcome {
    let diagrams = enumerate_diagrams_with(m, n, cap_from(force))?;
    let expected = monoid_order(m, n);
    if diagrams.len() as u128 != expected {
        return Err(Failure::Check(format!(
            "enumerated {} diagrams but the multinomial count is {expected}",
            diagrams.len()
        )));
    }
    let out = if count_only {
        serde_json::json!(diagrams.len())
    } else {
        serde_json::to_value(&diagrams).expect("diagrams serialize")
    };
    emit("-", &format!("{}\n", pretty(&out)))?;
    Ok(())
}

fn read_input(path: &str) -> Result<serde_json::Value, Failure> {
    let text = if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{path}: {e}")))
}

/// A diagram document or an element document.
fn read_element(path: &str) -> Result<AlgebraElement, Failure> {
    let value = read_input(path)?;
    let parsed = if value.get("terms").is_some() {
        serde_json::from_value::<AlgebraElement>(value)
    } else {
        serde_json::from_value::<Diagram>(value).map(|d| AlgebraElement::from_diagram(&d))
    };
    parsed.map_err(|e| Failure::Usage(format!("{path}: {e}")))
}

fn multiply(left: &str, right: &str, x_basis: bool) -> Outcome {
    let (a, b) = (read_element(left)?, read_element(right)?);
    let product = if x_basis {
        let a = from_x_basis(a.m(), a.n(), a.terms())?;
        let b = from_x_basis(b.m(), b.n(), b.terms())?;
        let p = a.mul(&b)?;
        AlgebraElement::from_terms(p.m(), p.n(), to_x_basis(&p))?
    } else {
        a.mul(&b)?
    };
    let value = serde_json::to_value(&product).expect("elements serialize");
    emit("-", &format!("{}\n", pretty(&value)))?;
    Ok(())
}

fn simples(m: usize, n: usize) -> Outcome {
    if n == 0 {
        return Err(Error::NoColors.into());
    }
    let classes: Vec<serde_json::Value> = all_classes(m, n)
        .iter()
        .map(|c| serde_json::json!({ "counts": c.counts(), "dimension": c.dimension() }))
        .collect();
    let out = serde_json::json!({ "m": m, "n": n, "classes": classes });
    emit("-", &format!("{}\n", pretty(&out)))?;
    Ok(())
}

fn decompose_cmd(args: &DecomposeArgs) -> Outcome {
    let module = if args.regular {
        let (m, n) = (args.m.unwrap_or_default(), args.n.unwrap_or_default());
        regular_module_with(m, n, cap_from(args.force))?
    } else {
        let Some(class) = &args.class else {
            return Err(Failure::Usage("choose --regular or give --class".into()));
        };
        let base = || simple(class).map(|w| w.to_explicit());
        match (args.restrict, args.induce) {
            (Some(i), _) => restrict(i, &base()?)?,
            (_, Some(i)) => induce(i, class)?,
            _ => base()?,
        }
    };
    let d = decompose(&module)?;
    let mut out = d.to_json();
    out["m"] = serde_json::json!(d.m);
    out["n"] = serde_json::json!(d.n);
    emit("-", &format!("{}\n", pretty(&out)))?;
    Ok(())
}

fn require<T: Copy>(v: Option<T>, flag: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("this crystal needs {flag}")))
}

fn crystal_cmd(args: &CrystalArgs) -> Outcome {
    let n = args.n;
    let shape = || {
        args.shape
            .clone()
            .ok_or_else(|| Failure::Usage("this crystal needs --shape".into()))
    };
    let (crystal, labels): (Crystal, Option<Vec<String>>) = match args.kind {
        CrystalKind::Box => (box_crystal(n)?, None),
        CrystalKind::Row => (row_crystal(require(args.m, "--m")?, n)?, None),
        CrystalKind::Ssyt => (ssyt_crystal(&shape()?, n)?, None),
        CrystalKind::Cm => {
            let m = require(args.m, "--m")?;
            let labels = all_classes(m, n).iter().map(class_label_text).collect();
            ((*cm_crystal(m, n)?).clone(), Some(labels))
        }
        CrystalKind::Clambda => {
            let lambda = shape()?;
            let labels = clambda_nodes(&lambda, n)?.iter().map(|t| t.label()).collect();
            ((*clambda_crystal(&lambda, n)?).clone(), Some(labels))
        }
        CrystalKind::Blambda => {
            let lambda = shape()?;
            highest_tuple(&lambda, n)?;
            let component = highest_component(&lambda, n)?;
            let by_key: std::collections::HashMap<String, String> = clambda_nodes(&lambda, n)?
                .iter()
                .map(|t| (t.key(), t.label()))
                .collect();
            let labels = component.keys().iter().map(|k| by_key[k].clone()).collect();
            (component, Some(labels))
        }
    };
    let (dot, json) = match (&args.dot, &args.json) {
        (None, None) => (None, Some("-".to_string())),
        (d, j) => (d.clone(), j.clone()),
    };
    if let Some(path) = json {
        emit(&path, &format!("{}\n", pretty(&crystal.to_json())))?;
    }
    if let Some(path) = dot {
        let text = match &labels {
            Some(l) => crystal.to_dot_with(|b| l[b].clone()),
            None => crystal.to_dot(),
        };
        emit(&path, &text)?;
    }
    Ok(())
}

fn verify_cmd(args: &VerifyArgs) -> Outcome {
    let bound = |exact: Option<usize>, max: Option<usize>| match (exact, max) {
        (Some(v), _) => Bound::Exact(v),
        (None, Some(v)) => Bound::Max(v),
        (None, None) => Bound::Default,
    };
    let scope = Scope {
        m: bound(args.m, args.max_m),
        n: bound(args.n, args.max_n),
    };
    let report = verify::run(args.target, scope, args.inject_mutation)?;
    emit("-", &format!("{}\n", pretty(&report.to_json())))?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "{}: {} of {} checks failed",
            report.target, report.failed, report.checked
        )))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Enumerate {
            m,
            n,
            count_only,
            force,
        } => enumerate(*m, *n, *count_only, *force),
        Command::Multiply { left, right, x_basis } => multiply(left, right, *x_basis),
        Command::Simples { m, n } => simples(*m, *n),
        Command::Decompose(args) => decompose_cmd(args),
        Command::Crystal(args) => crystal_cmd(args),
        Command::Verify(args) => verify_cmd(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
