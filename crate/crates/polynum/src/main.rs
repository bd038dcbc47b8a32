//! Command-line surface: build polytopes from expressions, print
//! sequences and decomposition forms, export lattices and
//! triangulations, run identity calculators, and drive the verification
//! suites. Exit codes: 0 pass, 1 verification failure, 2 usage or parse
//! error, 3 enumeration budget exceeded.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use polynum::budget::Budget;
use polynum::decompose::{
    decompose_t1_shelling, decompose_t1_solve, decompose_t2, decompose_t2_solve, decompose_t31,
    decompose_t31_solve, decompose_t32, decompose_t4, DecompositionForm, TheoremTag,
};
use polynum::export::{
    form_json, polytope_json, sequence_bfile, sequence_csv, sequence_json, sequence_plain,
    triangulation_json,
};
use polynum::identities::{
    ballot_path_coeffs, eulerian, eulerian_row, generalized_eulerian, generalized_eulerian_row,
    lattice_path_coeffs, macmahon_box, narayana, plane_partition_oracle, stirling2,
    stirling_descent_check, worpitzky_check, young_poly_coeffs, young_tableaux_count,
    CheckReport,
};
use polynum::numbers::interpolate_polynomial;
use polynum::shelling::shell;
use polynum::triangulate::build_triangulation;
use polynum::verify::{run_suite, SuiteConfig};
use polynum::{Error, GenericFunctional, NumberContext, PolytopeExpr, Result};

/// Writes one line to stdout, exiting quietly if the reader has gone
/// away (e.g. the output is piped into `head`).
fn out(text: std::fmt::Arguments) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    if stdout
        .write_fmt(text)
        .and_then(|_| stdout.write_all(b"\n"))
        .is_err()
    {
        std::process::exit(0);
    }
}

macro_rules! outln {
    ($($t:tt)*) => { out(format_args!($($t)*)) };
}

#[derive(Parser)]
#[command(
    name = "polynum",
    version,
    about = "Exact polytope numbers: sequences, decompositions, and cross-checks",
    after_help = "Polytope expressions: simplex:d | cross:d | cube:d | hypersimplex:d,k \
                  | pyr(E) | bipyr(E) | prod(E,E,...). \
                  POLYNUM_BUDGET caps enumeration work (integer, or \
                  points=N,shelling=M)."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Bfile,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Count,
    Solve,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print P(0..n), and the interior variant with --interior
    Seq {
        expr: String,
        /// Largest n to print
        #[arg(long, default_value_t = 10)]
        n: u32,
        /// Also print the interior sequence (extra line or column)
        #[arg(long)]
        interior: bool,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
        /// Functional coefficients c1,c2,... (integers or rationals p/q)
        #[arg(long)]
        functional: Option<String>,
    },
    /// Print one decomposition form as JSON
    Decompose {
        expr: String,
        /// Which decomposition: 1, 2, 3-1, 3-2, or 4
        #[arg(long)]
        theorem: String,
        /// Extraction path: combinatorial count or matrix solve
        #[arg(long, value_enum, default_value_t = Method::Count)]
        method: Method,
        /// Run both paths and fail on disagreement
        #[arg(long)]
        check: bool,
        #[arg(long)]
        functional: Option<String>,
    },
    /// Run a verification suite and print its JSON report
    Verify {
        /// counts, decompositions, identities, moebius, product, or all
        suite: String,
        #[arg(long, default_value_t = 4)]
        max_d: u32,
        #[arg(long, default_value_t = 6)]
        max_n: u32,
        /// Restrict polytope-driven suites to one expression
        #[arg(long)]
        expr: Option<String>,
    },
    /// Print the face lattice and exact vertex coordinates as JSON
    Lattice { expr: String },
    /// Print the pointed triangulation as JSON
    Triangulate {
        expr: String,
        /// Include a shelling order and its level counts
        #[arg(long)]
        shelling: bool,
        #[arg(long)]
        functional: Option<String>,
    },
    /// Classical identity calculators
    #[command(subcommand)]
    Identity(IdentityCmd),
}

#[derive(Subcommand)]
enum IdentityCmd {
    /// Eulerian numbers: the full row for d, or one entry with --i
    Eulerian {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        i: Option<u32>,
    },
    /// Multiset descent counts for the multiset {1^d1, 2^d2, ...}
    GeneralizedEulerian {
        #[arg(long, value_delimiter = ',')]
        d_list: Vec<u32>,
        #[arg(long)]
        i: Option<u32>,
    },
    /// Stirling number of the second kind
    Stirling2 {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r: u32,
    },
    /// Check r! S(d,r) against the Eulerian descent sum
    StirlingDescent {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r: u32,
    },
    /// Check the Worpitzky expansion of n^d
    Worpitzky {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n: u32,
    },
    /// Narayana number N(d1, k)
    Narayana {
        #[arg(long)]
        d1: u32,
        #[arg(long)]
        k: u32,
    },
    /// Plane partitions in an a x b x c box (product formula)
    Macmahon {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        c: u32,
        /// Also run the brute-force oracle and compare
        #[arg(long)]
        oracle: bool,
    },
    /// Descent counts of monotone lattice paths to (d1, d2, ...)
    LatticePaths {
        #[arg(long, value_delimiter = ',')]
        d_list: Vec<u32>,
    },
    /// Descent counts of ballot paths to (d1, d2)
    Ballot {
        #[arg(long)]
        d1: u32,
        #[arg(long)]
        d2: u32,
    },
    /// Descent counts of l x m rectangular standard Young tableaux
    Young {
        #[arg(long)]
        l: u32,
        #[arg(long)]
        m: u32,
        /// Print only the tableau count
        #[arg(long)]
        count_only: bool,
    },
}

fn parse_functional(text: &str, ambient: usize) -> Result<GenericFunctional> {
    let coeffs = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|e| Error::Parse(format!("functional coefficient '{s}': {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if coeffs.len() != ambient {
        return Err(Error::Parse(format!(
            "functional has {} coefficients, ambient dimension is {ambient}",
            coeffs.len()
        )));
    }
    Ok(GenericFunctional::new(coeffs))
}

fn functional_for(text: &Option<String>, ambient: usize) -> Result<GenericFunctional> {
    match text {
        Some(s) => parse_functional(s, ambient),
        None => Ok(GenericFunctional::index(ambient)),
    }
}

fn print_report(report: &CheckReport) -> u8 {
    if report.ok() {
        outln!("{}: {} = {} ok", report.label, report.lhs, report.rhs);
        0
    } else {
        outln!("{}: {} != {} MISMATCH", report.label, report.lhs, report.rhs);
        1
    }
}

fn counts_line(counts: &[i128]) -> String {
    counts
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_seq(
    expr: &str,
    n: u32,
    interior: bool,
    format: Format,
    functional: &Option<String>,
) -> Result<u8> {
    let parsed: PolytopeExpr = expr.parse()?;
    let p = parsed.build()?;
    let f = functional_for(functional, p.ambient_dim)?;
    let mut ctx = NumberContext::new(&p, &f);
    let values = ctx.sequence(n, false);
    let inner = if interior {
        Some(ctx.sequence(n, true))
    } else {
        None
    };
    match format {
        Format::Plain => {
            outln!("{}", sequence_plain(&values));
            if let Some(inner) = &inner {
                outln!("{}", sequence_plain(inner));
            }
        }
        Format::Bfile => match &inner {
            None => outln!("{}", sequence_bfile(&values)),
            Some(inner) => {
                for (i, (v, s)) in values.iter().zip(inner).enumerate() {
                    outln!("{i} {v} {s}");
                }
            }
        },
        Format::Csv => outln!("{}", sequence_csv(&values, inner.as_deref())),
        Format::Json => {
            let poly = interpolate_polynomial(&mut ctx)?;
            let doc = sequence_json(&parsed.to_string(), p.dim, &values, &poly, inner.as_deref());
            outln!("{}", serde_json::to_string_pretty(&doc)?);
        }
    }
    Ok(0)
}

fn cmd_decompose(
    expr: &str,
    theorem: &str,
    method: Method,
    check: bool,
    functional: &Option<String>,
    budget: &Budget,
) -> Result<u8> {
    let tag: TheoremTag = theorem.parse()?;
    let parsed: PolytopeExpr = expr.parse()?;
    let p = parsed.build()?;
    let f = functional_for(functional, p.ambient_dim)?;
    let t = build_triangulation(&p, &f)?;
    let mut ctx = NumberContext::with_apexes(&p, t.apexes.clone());

    let counted: DecompositionForm = match tag {
        TheoremTag::T1 => decompose_t1_shelling(&p, &t, &f, budget)?,
        TheoremTag::T2 => decompose_t2(&p, &t),
        TheoremTag::T31 => decompose_t31(&p, &t),
        TheoremTag::T32 => decompose_t32(&p, &t),
        TheoremTag::T4 => decompose_t4(&t),
    };
    let solved: Option<DecompositionForm> = match tag {
        TheoremTag::T1 => Some(decompose_t1_solve(&mut ctx)),
        TheoremTag::T2 => Some(decompose_t2_solve(&mut ctx)),
        TheoremTag::T31 => Some(decompose_t31_solve(&mut ctx)),
        TheoremTag::T32 | TheoremTag::T4 => None,
    };

    if method == Method::Solve && solved.is_none() {
        return Err(Error::Parse(format!(
            "theorem {tag} has no solve path; use --method count"
        )));
    }
    if check {
        if let Some(solved) = &solved {
            if solved.coeffs != counted.coeffs {
                eprintln!(
                    "paths disagree: count gives {:?}, solve gives {:?}",
                    counted.coeffs, solved.coeffs
                );
                return Ok(1);
            }
        }
    }

    let form = if method == Method::Solve {
        solved.expect("solve path checked above")
    } else {
        counted
    };
    let hi = 2 * p.dim.max(0) as u32 + 2;
    for n in 0..=hi {
        let direct = ctx.poly_number(p.top_id(), n);
        if form.eval(n as i128) != direct {
            eprintln!(
                "form disagrees with the sequence at n = {n}: {} vs {direct}",
                form.eval(n as i128)
            );
            return Ok(1);
        }
    }
    outln!("{}", serde_json::to_string_pretty(&form_json(&form, hi))?);
    Ok(0)
}

fn cmd_verify(
    suite: &str,
    max_d: u32,
    max_n: u32,
    expr: &Option<String>,
    budget: Budget,
) -> Result<u8> {
    let cfg = SuiteConfig {
        max_d,
        max_n,
        expr: expr.as_deref().map(str::parse).transpose()?,
        budget,
    };
    let report = run_suite(suite, &cfg)?;
    outln!("{}", serde_json::to_string_pretty(&report.to_json())?);
    Ok(if report.ok() { 0 } else { 1 })
}

fn cmd_lattice(expr: &str) -> Result<u8> {
    let parsed: PolytopeExpr = expr.parse()?;
    let p = parsed.build()?;
    outln!("{}", serde_json::to_string_pretty(&polytope_json(&p))?);
    Ok(0)
}

fn cmd_triangulate(
    expr: &str,
    with_shelling: bool,
    functional: &Option<String>,
    budget: &Budget,
) -> Result<u8> {
    let parsed: PolytopeExpr = expr.parse()?;
    let p = parsed.build()?;
    let f = functional_for(functional, p.ambient_dim)?;
    let t = build_triangulation(&p, &f)?;
    let sh = if with_shelling {
        Some(shell(&p, &t, &f, budget)?)
    } else {
        None
    };
    outln!(
        "{}",
        serde_json::to_string_pretty(&triangulation_json(&t, sh.as_ref()))?
    );
    Ok(0)
}

fn cmd_identity(cmd: &IdentityCmd) -> Result<u8> {
    match cmd {
        IdentityCmd::Eulerian { d, i } => match i {
            Some(i) => outln!("{}", eulerian(*d, *i)?),
            None => outln!("{}", counts_line(&eulerian_row(*d))),
        },
        IdentityCmd::GeneralizedEulerian { d_list, i } => match i {
            Some(i) => outln!("{}", generalized_eulerian(d_list, *i)?),
            None => outln!("{}", counts_line(&generalized_eulerian_row(d_list)?)),
        },
        IdentityCmd::Stirling2 { d, r } => outln!("{}", stirling2(*d, *r)?),
        IdentityCmd::StirlingDescent { d, r } => {
            return Ok(print_report(&stirling_descent_check(*d, *r)?));
        }
        IdentityCmd::Worpitzky { d, n } => {
            return Ok(print_report(&worpitzky_check(*d, *n)?));
        }
        IdentityCmd::Narayana { d1, k } => outln!("{}", narayana(*d1, *k)?),
        IdentityCmd::Macmahon { a, b, c, oracle } => {
            let v = macmahon_box(*a, *b, *c);
            if *oracle {
                let w = plane_partition_oracle(*a, *b, *c)?;
                if v != w {
                    outln!("{v} != {w} MISMATCH");
                    return Ok(1);
                }
                outln!("{v} = {w} ok");
            } else {
                outln!("{v}");
            }
        }
        IdentityCmd::LatticePaths { d_list } => {
            outln!("{}", counts_line(&lattice_path_coeffs(d_list)?.counts));
        }
        IdentityCmd::Ballot { d1, d2 } => {
            outln!("{}", counts_line(ballot_path_coeffs(*d1, *d2)?.trimmed()));
        }
        IdentityCmd::Young { l, m, count_only } => {
            if *count_only {
                outln!("{}", young_tableaux_count(*l, *m));
            } else {
                outln!("{}", counts_line(young_poly_coeffs(*l, *m)?.trimmed()));
            }
        }
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    // Parsed up front so a malformed POLYNUM_BUDGET fails every
    // subcommand the same way, not just the ones that enumerate.
    let budget = Budget::from_env()?;
    match &cli.cmd {
        Cmd::Seq {
            expr,
            n,
            interior,
            format,
            functional,
        } => cmd_seq(expr, *n, *interior, *format, functional),
        Cmd::Decompose {
            expr,
            theorem,
            method,
            check,
            functional,
        } => cmd_decompose(expr, theorem, *method, *check, functional, &budget),
        Cmd::Verify {
            suite,
            max_d,
            max_n,
            expr,
        } => cmd_verify(suite, *max_d, *max_n, expr, budget),
        Cmd::Lattice { expr } => cmd_lattice(expr),
        Cmd::Triangulate {
            expr,
            shelling,
            functional,
        } => cmd_triangulate(expr, *shelling, functional, &budget),
        Cmd::Identity(id) => cmd_identity(id),
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::OutOfRange(_) | Error::OracleInput(_)
        | Error::DegenerateChain(_) => 2,
        Error::Budget(_) => 3,
        Error::SearchExhausted(_) | Error::Inconsistent(_) => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
