//! Command-line surface for the exact curve-counting engine: Severi degree
//! computations (with expansion trees and an optional persistent cache), an
//! embedded verification table, and the tacnode deformation lab.

mod verify;

use std::fs;
use std::io::BufReader;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use severi_core::tacnode::{
    chebyshev, cusp_locus_verify, fiber_discriminant, node_profile, psi_point, swallowtail,
    ChebyshevKind, VersalPoint,
};
use severi_core::{count, count_irr, expand, parse_tally, CountTable, SeveriKey, TermOrigin};

const RECURSION_CITATION: &str =
    "L. Caporaso, J. Harris, Counting plane curves of any genus, Invent. Math. 131 (1998)";
const TACNODE_CITATION: &str =
    "L. Caporaso, J. Harris, Parameter spaces for curves on surfaces, Compositio Math. 113 (1998)";

#[derive(Parser)]
#[command(
    name = "severi",
    version,
    about = "Exact Severi degrees, classical surface formulas, and the tacnode lab",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a generalized Severi degree N^{d,delta}(alpha, beta)
    Count(CountArgs),
    /// Run the embedded verification table of reference values
    Verify(VerifyArgs),
    /// Versal deformation lab for m-tacnodes
    Tacnode {
        #[command(subcommand)]
        op: TacnodeCmd,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct CountArgs {
    /// Curve degree (>= 1)
    #[arg(long)]
    d: u32,
    /// Number of nodes
    #[arg(long, allow_hyphen_values = true)]
    delta: i64,
    /// Assigned contact tally: bare integer or bracketed list, e.g. 2 or [0,1]
    #[arg(long, default_value = "[]")]
    alpha: String,
    /// Unassigned contact tally, same grammar
    #[arg(long, default_value = "[]")]
    beta: String,
    /// Count irreducible curves only
    #[arg(long)]
    irr: bool,
    /// Also print the recursion expansion of the key
    #[arg(long)]
    expand: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Optional memo cache file (newline-delimited JSON); loaded if present,
    /// rewritten after the computation
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Restrict to one suite
    #[arg(long, value_enum)]
    only: Option<verify::Suite>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum TacnodeCmd {
    /// Fiber discriminant of a versal point
    Disc(PointArgs),
    /// Node profile (double roots, worse flag) of a versal point
    Profile(PointArgs),
    /// Point of the smoothing curve at parameter t
    Psi {
        #[arg(long)]
        m: u32,
        /// Rational parameter, e.g. 1, 1/2, -2/3
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        /// Print the node profile of the fiber instead of the coordinates
        #[arg(long)]
        profile: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Symbolic discriminant of the 2-tacnode deformation (the swallowtail)
    Swallowtail {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Verify the cusp locus parametrization of the swallowtail
    Cusp {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Chebyshev polynomial of a given kind and index
    Cheb {
        /// T, U, V or W
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
struct PointArgs {
    /// Tacnode order (>= 2)
    #[arg(long)]
    m: u32,
    /// Comma-separated rationals a_0,...,a_{m-2}
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    alpha: String,
    /// Comma-separated rationals b_0,...,b_{m-1}
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    beta: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Count(args) => cmd_count(args),
        Command::Verify(args) => verify::cmd_verify(args.only, args.format),
        Command::Tacnode { op } => cmd_tacnode(op),
    }
}

fn parse_rationals(s: &str) -> anyhow::Result<Vec<BigRational>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| {
            BigRational::from_str(p.trim())
                .map_err(|e| anyhow::anyhow!("bad rational {p:?}: {e}"))
        })
        .collect()
}

fn tally_json(t: &severi_core::Tally) -> Value {
    Value::Array(t.entries().iter().map(|&e| json!(e)).collect())
}

fn cmd_count(args: CountArgs) -> anyhow::Result<ExitCode> {
    let alpha = parse_tally(&args.alpha)?;
    let beta = parse_tally(&args.beta)?;
    let key = SeveriKey::new(args.d, args.delta, alpha, beta)?;

    let memo = CountTable::new();
    if let Some(path) = &args.cache {
        if path.exists() {
            // the cache is advisory: unreadable or corrupt data is skipped,
            // never trusted and never fatal
            match fs::File::open(path).and_then(|f| memo.load(BufReader::new(f))) {
                Ok((_, skipped)) if skipped > 0 => eprintln!(
                    "warning: skipped {skipped} corrupt cache record(s) in {}",
                    path.display()
                ),
                Ok(_) => {}
                Err(e) => eprintln!("warning: ignoring cache {}: {e}", path.display()),
            }
        }
    }

    let value = if args.irr {
        count_irr(&key, &memo)?
    } else {
        count(&key, &memo)?
    };

    let terms = if args.expand { Some(expand(&key)?) } else { None };

    if let Some(path) = &args.cache {
        match fs::File::create(path) {
            Ok(mut file) => memo.save(&mut file)?,
            Err(e) => eprintln!("warning: cannot write cache {}: {e}", path.display()),
        }
    }

    let label = if args.irr {
        format!("N_irr^{{{},{}}}({},{})", key.d, key.delta, key.alpha, key.beta)
    } else {
        key.to_string()
    };

    match args.format {
        Format::Text => {
            println!("{label} = {value}");
            if let Some(terms) = &terms {
                for t in terms {
                    let origin = match t.origin {
                        TermOrigin::FirstSum { order } => format!("first_sum(k={order})"),
                        TermOrigin::SecondSum => "second_sum".into(),
                    };
                    println!("  {} * {}  [{origin}]", t.coeff, t.child);
                }
            }
        }
        Format::Json => {
            let mut result = json!({ "value": value.to_string() });
            if let Some(terms) = &terms {
                result["terms"] = Value::Array(
                    terms
                        .iter()
                        .map(|t| {
                            json!({
                                "coeff": t.coeff.to_string(),
                                "child": {
                                    "d": t.child.d,
                                    "delta": t.child.delta,
                                    "alpha": tally_json(&t.child.alpha),
                                    "beta": tally_json(&t.child.beta),
                                },
                                "origin": match t.origin {
                                    TermOrigin::FirstSum { order } => format!("first_sum(k={order})"),
                                    TermOrigin::SecondSum => "second_sum".into(),
                                },
                            })
                        })
                        .collect(),
                );
            }
            let record = json!({
                "command": "count",
                "inputs": {
                    "d": key.d,
                    "delta": key.delta,
                    "alpha": tally_json(&key.alpha),
                    "beta": tally_json(&key.beta),
                    "irr": args.irr,
                },
                "result": if terms.is_some() { result } else { Value::String(value.to_string()) },
                "citations": [RECURSION_CITATION],
            });
            println!("{}", serde_json::to_string_pretty(&record)?);
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(std::io::stdout());
            w.write_record(["expression", "result"])?;
            w.write_record([label.as_str(), &value.to_string()])?;
            w.flush()?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn versal_point(args: &PointArgs) -> anyhow::Result<VersalPoint> {
    let alpha = parse_rationals(&args.alpha)?;
    let beta = parse_rationals(&args.beta)?;
    Ok(VersalPoint::new(args.m, alpha, beta)?)
}

fn rational_list(values: &[BigRational]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn print_simple(
    format: Format,
    command: &str,
    inputs: Value,
    text: &str,
    result: Value,
) -> anyhow::Result<()> {
    match format {
        Format::Text => println!("{text}"),
        Format::Json => {
            let record = json!({
                "command": command,
                "inputs": inputs,
                "result": result,
                "citations": [TACNODE_CITATION],
            });
            println!("{}", serde_json::to_string_pretty(&record)?);
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(std::io::stdout());
            w.write_record(["expression", "result"])?;
            w.write_record([command, text])?;
            w.flush()?;
        }
    }
    Ok(())
}

fn cmd_tacnode(op: TacnodeCmd) -> anyhow::Result<ExitCode> {
    match op {
        TacnodeCmd::Disc(args) => {
            let p = versal_point(&args)?;
            let delta = fiber_discriminant(&p);
            let inputs = json!({
                "m": args.m,
                "alpha": rational_list(p.alpha()),
                "beta": rational_list(p.beta()),
            });
            print_simple(
                args.format,
                "tacnode disc",
                inputs,
                &delta.to_string(),
                Value::String(delta.to_string()),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        TacnodeCmd::Profile(args) => {
            let p = versal_point(&args)?;
            let profile = node_profile(&p);
            let text = format!("({}, {})", profile.double_roots, profile.worse);
            let inputs = json!({
                "m": args.m,
                "alpha": rational_list(p.alpha()),
                "beta": rational_list(p.beta()),
            });
            print_simple(
                args.format,
                "tacnode profile",
                inputs,
                &text,
                json!({ "double_roots": profile.double_roots, "worse": profile.worse }),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        TacnodeCmd::Psi { m, t, profile, format } => {
            let t = BigRational::from_str(t.trim())
                .map_err(|e| anyhow::anyhow!("bad rational {t:?}: {e}"))?;
            let p = psi_point(m, &t)?;
            let inputs = json!({ "m": m, "t": t.to_string() });
            if profile {
                let np = node_profile(&p);
                let text = format!("({}, {})", np.double_roots, np.worse);
                print_simple(
                    format,
                    "tacnode psi",
                    inputs,
                    &text,
                    json!({ "double_roots": np.double_roots, "worse": np.worse }),
                )?;
            } else {
                let text = format!(
                    "alpha = [{}], beta = [{}]",
                    rational_list(p.alpha()),
                    rational_list(p.beta())
                );
                print_simple(
                    format,
                    "tacnode psi",
                    inputs,
                    &text,
                    json!({
                        "alpha": p.alpha().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                        "beta": p.beta().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                    }),
                )?;
            }
            Ok(ExitCode::SUCCESS)
        }
        TacnodeCmd::Swallowtail { format } => {
            let s = swallowtail()?;
            let qh = s
                .quasi_degree(&[("a0", 2), ("b0", 4), ("b1", 3)])
                .expect("swallowtail is quasi-homogeneous");
            let text = format!("{s}\nquasi-degree {qh} for weights (a0,b0,b1) = (2,4,3)");
            print_simple(
                format,
                "tacnode swallowtail",
                json!({}),
                &text,
                json!({ "polynomial": s.to_string(), "quasi_degree": qh }),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        TacnodeCmd::Cusp { format } => {
            let ok = cusp_locus_verify();
            print_simple(
                format,
                "tacnode cusp",
                json!({}),
                if ok {
                    "cusp locus generators vanish identically: true"
                } else {
                    "cusp locus check FAILED"
                },
                json!(ok),
            )?;
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        TacnodeCmd::Cheb { kind, n, format } => {
            let kind = ChebyshevKind::from_letter(&kind)?;
            let p = chebyshev(kind, n);
            print_simple(
                format,
                "tacnode cheb",
                json!({ "kind": kind.letter(), "n": n }),
                &p.to_string(),
                Value::String(p.to_string()),
            )?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
