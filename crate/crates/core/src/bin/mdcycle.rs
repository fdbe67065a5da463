use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use mdcycle::certify::{certify_prop_p7, certify_theorem_mt, verify_certificate, Certificate};
use mdcycle::cycle::{
    brute_pushforward_with_cap, cycle_from_q, project_pushforward, smash_certificate,
    subset_cap_from_env, GeneralCycle,
};
use mdcycle::exact::parse_rational;
use mdcycle::linear::{check_lemma2_params, independence_check, lemma2_membership};
use mdcycle::operator::{coeff_table, lemma1_expand, r_poly};
use mdcycle::Error;

const EXIT_OK: u8 = 0;
const EXIT_NONE: u8 = 1;
const EXIT_PARAMS: u8 = 2;
const EXIT_PARSE: u8 = 3;

#[derive(Parser)]
#[command(name = "mdcycle", version, about = "Exact certificates for modified diagonal cycle coefficient systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the moment system with κ ≠ 0 and emit a theorem-mt certificate.
    SolveMt {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: Option<usize>,
        /// Output file; `-` is standard output.
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Sweep m for a prop-p7 certificate.
    SolveP7 {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        m_max: usize,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Re-check a certificate from scratch; `-` reads standard input.
    Verify { file: PathBuf },
    /// Scan m for the first non-member of the shifted-operator span.
    Lemma2Scan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        #[arg(long, default_value_t = 200)]
        m_max: usize,
        /// Keep scanning after the first non-member.
        #[arg(long)]
        all: bool,
    },
    /// Rank checks of {x^n(1+x)^(m-n), r_1, r_2, r_4, …, r_2t}.
    IndependenceScan {
        #[arg(long, default_value_t = 3)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        m_max: usize,
        /// Single t; every t with 2t < m when omitted.
        #[arg(long)]
        t: Option<usize>,
    },
    /// Print the factorized and expanded forms of T^i (1+x)^m.
    Expand {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        i: usize,
    },
    /// Project a symmetric cycle onto the first n factors.
    Pushforward {
        /// Comma-separated coefficients a_1..a_m.
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long)]
        n: usize,
        /// Cross-check against subset enumeration.
        #[arg(long)]
        brute: bool,
    },
    /// Beauville components and degree of a symmetric cycle.
    SmashReport {
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long)]
        g: usize,
    },
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } => EXIT_PARSE,
        _ => EXIT_PARAMS,
    }
}

fn emit(out: &str, text: &str) -> io::Result<()> {
    if out == "-" {
        io::stdout().write_all(text.as_bytes())
    } else {
        fs::write(out, text)
    }
}

fn json_line<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("record serializes"));
}

#[derive(Serialize)]
struct Record<P: Serialize> {
    params: P,
    verdict: &'static str,
    rank: usize,
}

#[derive(Serialize)]
struct IndependenceParams {
    n: usize,
    m: usize,
    t: usize,
}

#[derive(Serialize)]
struct Lemma2Params {
    n: usize,
    i: usize,
    m: usize,
}

#[derive(Serialize)]
struct Status<'a> {
    status: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    check: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

fn parse_q(text: &str) -> mdcycle::Result<Vec<mdcycle::Rational>> {
    text.split(',').map(parse_rational).collect()
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::SolveMt { g, n, m, out } => {
            let cert = certify_theorem_mt(g, n, m)?;
            emit(&out, &cert.to_json()).map_err(|e| Error::InvalidInput(e.to_string()))?;
            Ok(EXIT_OK)
        }
        Command::SolveP7 { g, n, i, m_max, out } => match certify_prop_p7(g, n, i, m_max)? {
            Some(cert) => {
                emit(&out, &cert.to_json()).map_err(|e| Error::InvalidInput(e.to_string()))?;
                Ok(EXIT_OK)
            }
            None => {
                json_line(&Status {
                    status: "none",
                    check: None,
                    reason: Some(format!("no m in {}..={m_max} admits a certificate", n + 1)),
                });
                Ok(EXIT_NONE)
            }
        },
        Command::Verify { file } => {
            let text = if file.as_os_str() == "-" {
                let mut s = String::new();
                io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| Error::InvalidInput(e.to_string()))?;
                s
            } else {
                fs::read_to_string(&file)
                    .map_err(|e| Error::InvalidInput(format!("{}: {e}", file.display())))?
            };
            let cert = Certificate::from_json(&text)?;
            match verify_certificate(&cert) {
                Ok(()) => {
                    json_line(&Status { status: "pass", check: None, reason: None });
                    Ok(EXIT_OK)
                }
                Err(f) => {
                    json_line(&Status { status: "fail", check: Some(f.check), reason: Some(f.reason) });
                    Ok(EXIT_NONE)
                }
            }
        }
        Command::Lemma2Scan { n, i, m_max, all } => {
            check_lemma2_params(n, i)?;
            let mut found = false;
            for m in n + 1..=m_max {
                let r = lemma2_membership(n, i, m)?;
                json_line(&Record {
                    params: Lemma2Params { n, i, m },
                    verdict: if r.member { "member" } else { "non-member" },
                    rank: r.augmented_rank,
                });
                found |= !r.member;
                if found && !all {
                    break;
                }
            }
            Ok(if found { EXIT_OK } else { EXIT_NONE })
        }
        Command::IndependenceScan { n_min, n_max, m_max, t } => {
            let mut all_independent = true;
            for n in n_min..=n_max {
                for m in n + 1..=m_max {
                    let ts: Vec<usize> = match t {
                        Some(t) if 2 * t < m => vec![t],
                        Some(_) => Vec::new(),
                        None => (1..).take_while(|t| 2 * t < m).collect(),
                    };
                    for t in ts {
                        let r = independence_check(m, n, t)?;
                        all_independent &= r.independent;
                        json_line(&Record {
                            params: IndependenceParams { n, m, t },
                            verdict: if r.independent { "independent" } else { "dependent" },
                            rank: r.rank,
                        });
                    }
                }
            }
            Ok(if all_independent { EXIT_OK } else { EXIT_NONE })
        }
        Command::Expand { m, i } => {
            let table = coeff_table(i);
            let form = lemma1_expand(m, i, &table)?;
            let expanded = r_poly(m, i)?;
            println!("factorized: {form}");
            println!("expanded: {expanded}");
            Ok(if form.expand() == expanded { EXIT_OK } else { EXIT_NONE })
        }
        Command::Pushforward { q, n, brute } => {
            let q = parse_q(&q)?;
            let cycle = cycle_from_q(q.len(), q)?;
            let projected = project_pushforward(&cycle, n)?;
            json_line(&projected);
            if brute {
                let cap = subset_cap_from_env();
                let general = GeneralCycle::from_symmetric(&cycle, cap)?;
                let oracle = brute_pushforward_with_cap(&general, n, cap)?.collapse_symmetric();
                if oracle.as_ref() != Some(&projected) {
                    json_line(&Status { status: "mismatch", check: Some("brute".into()), reason: None });
                    return Ok(EXIT_NONE);
                }
            }
            Ok(EXIT_OK)
        }
        Command::SmashReport { q, g } => {
            let q = parse_q(&q)?;
            let cycle = cycle_from_q(q.len(), q)?;
            let report = smash_certificate(&cycle, g)?;
            json_line(&report);
            Ok(if report.certified { EXIT_OK } else { EXIT_NONE })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("mdcycle: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}
