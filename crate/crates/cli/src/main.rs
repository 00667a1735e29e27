use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use picardcm::input::{parse_ids, parse_q_list, parse_z, read_curve, read_order_basis, read_points};
use picardcm::{error_json, run, BoundInput, Command, JobSpec, OutputFormat, EXIT_VALIDATION};
use picardcm_core::Result;

#[derive(Parser)]
#[command(name = "picardcm", version, about = "Denominator bounds for invariants of CM Picard curves")]
struct Cli {
    /// Print JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate candidates and compute N_mu with its certificate.
    Bound {
        /// Coefficients c0,c1,c2 of x^3 + c2 x^2 + c1 x + c0.
        #[arg(long, allow_hyphen_values = true)]
        field_poly: String,
        /// Power-basis coordinates q0,q1,q2 of mu.
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        /// JSON file {"order_basis": [...]} replacing the maximal order.
        #[arg(long)]
        order_basis: Option<PathBuf>,
        /// Expected Tr(mu^2); rejected when it differs.
        #[arg(long)]
        t2: Option<String>,
        /// Worker threads for candidate evaluation.
        #[arg(long)]
        parallel: Option<usize>,
        /// Use the modified isogeny (not available).
        #[arg(long)]
        alt_isogeny: bool,
    },
    /// List mu in Z + 2O+ with Tr(mu^2) up to the cap.
    FindMu {
        #[arg(long, allow_hyphen_values = true)]
        field_poly: String,
        /// Largest Tr(mu^2); defaults to the Minkowski bound.
        #[arg(long)]
        cap: Option<String>,
    },
    /// Absolute invariants and denominators of a curve.
    Invariants {
        /// JSON file {"a": "...", "b": "...", "c": "..."}.
        #[arg(long)]
        curve: PathBuf,
    },
    /// Reduction type of a curve at a prime p >= 5.
    Classify {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        prime: String,
    },
    /// Class polynomials H1 and H2hat of a list of (j1, j2).
    Classpoly {
        /// JSON file [{"j1": "...", "j2": "..."}, ...].
        #[arg(long)]
        points: PathBuf,
    },
    /// The constant B of the CM field K+(zeta_3).
    #[command(name = "constant-B")]
    ConstantB {
        #[arg(long, allow_hyphen_values = true)]
        field_poly: String,
    },
    /// Recompute the bundled examples and compare exactly.
    VerifyExamples {
        /// Comma-separated example ids; all when omitted.
        #[arg(long)]
        ids: Option<String>,
        #[arg(long)]
        parallel: Option<usize>,
    },
}

fn build(cli: &Cli) -> Result<JobSpec> {
    let command = match &cli.command {
        Cmd::Bound {
            field_poly,
            mu,
            order_basis,
            t2,
            parallel,
            alt_isogeny,
        } => Command::Bound(Box::new(BoundInput {
            field_poly: parse_q_list(field_poly)?,
            mu: parse_q_list(mu)?,
            order_basis: order_basis.as_deref().map(read_order_basis).transpose()?,
            t2: t2.as_deref().map(parse_z).transpose()?,
            threads: *parallel,
            alt_isogeny: *alt_isogeny,
        })),
        Cmd::FindMu { field_poly, cap } => Command::FindMu {
            field_poly: parse_q_list(field_poly)?,
            cap: cap.as_deref().map(parse_z).transpose()?,
        },
        Cmd::Invariants { curve } => Command::Invariants {
            curve: read_curve(curve)?,
        },
        Cmd::Classify { curve, prime } => Command::Classify {
            curve: read_curve(curve)?,
            prime: parse_z(prime)?,
        },
        Cmd::Classpoly { points } => Command::ClassPoly {
            points: read_points(points)?,
        },
        Cmd::ConstantB { field_poly } => Command::ConstantB {
            field_poly: parse_q_list(field_poly)?,
        },
        Cmd::VerifyExamples { ids, parallel } => Command::VerifyExamples {
            ids: ids.as_deref().map(parse_ids).transpose()?.unwrap_or_default(),
            threads: *parallel,
        },
    };
    Ok(JobSpec {
        command,
        output_format: if cli.json { OutputFormat::Json } else { OutputFormat::Table },
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = build(&cli).and_then(|spec| run(&spec).map(|out| (spec, out)));
    match result {
        Ok((spec, out)) => {
            print!("{}", out.render(spec.output_format));
            ExitCode::from(out.status.exit_code() as u8)
        }
        Err(e) => {
            if cli.json {
                println!("{}", error_json(&e));
            } else {
                eprintln!("error [{}]: {e}", e.code());
            }
            ExitCode::from(EXIT_VALIDATION as u8)
        }
    }
}
