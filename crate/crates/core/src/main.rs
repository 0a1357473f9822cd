use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use zerodiv_core::cli::{
    cmd_cm, cmd_corpus, cmd_export, cmd_homology, cmd_surface, error_exit_code, Method, Only, Target,
};
use zerodiv_core::homology::Coefficients;
use zerodiv_core::DEFAULT_FACE_BUDGET;

/// Zero-divisor complexes of finite commutative rings: homology, the
/// Cohen-Macaulay property and surface obstructions.
#[derive(Parser)]
#[command(name = "zerodiv", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Maximum number of faces to enumerate before giving up.
    #[arg(long, env = "ZERODIV_BUDGET", default_value_t = DEFAULT_FACE_BUDGET)]
    budget: usize,
    /// Emit JSON (the default).
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Emit a human-readable summary.
    #[arg(long)]
    text: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced (or unreduced) homology of K(R).
    Homology {
        /// Ring, e.g. "Z4 x GF(3^2)" or "F2[x,y]/(x^2, y^2)".
        spec: String,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        /// Z, Q or Fp.
        #[arg(long, default_value = "Z")]
        coeff: Coefficients,
        #[arg(long, conflicts_with = "unreduced")]
        reduced: bool,
        #[arg(long)]
        unreduced: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Cohen-Macaulay classification, cross-checked with Reisner's criterion.
    Cm {
        spec: String,
        /// Q or Fp.
        #[arg(long, default_value = "Q")]
        coeff: Coefficients,
        #[command(flatten)]
        common: Common,
    },
    /// Why K(R) is not a closed surface.
    Surface {
        spec: String,
        #[command(flatten)]
        common: Common,
    },
    /// Runs the checks over Z_n and a fixed list of small rings.
    Corpus {
        #[arg(long, default_value_t = 120)]
        max_n: u64,
        #[arg(long, value_enum)]
        only: Option<Only>,
        #[command(flatten)]
        common: Common,
    },
    /// Writes K(R) or K0(R) as a facet list.
    Export {
        spec: String,
        #[arg(long, value_enum, default_value_t = Target::K)]
        target: Target,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

fn emit<T: serde::Serialize>(common: &Common, value: &T, text: impl FnOnce() -> String) {
    if common.text {
        println!("{}", text());
    } else {
        println!("{}", serde_json::to_string_pretty(value).expect("results serialize"));
    }
}

fn run(cli: Cli) -> zerodiv_core::Result<i32> {
    match cli.command {
        Command::Homology {
            spec,
            method,
            coeff,
            unreduced,
            common,
            ..
        } => {
            let r = cmd_homology(&spec, method, !unreduced, coeff, common.budget)?;
            emit(&common, &r, || r.to_text());
            Ok(r.exit_code())
        }
        Command::Cm { spec, coeff, common } => {
            let r = cmd_cm(&spec, coeff, common.budget)?;
            emit(&common, &r, || r.to_text());
            Ok(r.exit_code())
        }
        Command::Surface { spec, common } => {
            let r = cmd_surface(&spec, common.budget)?;
            emit(&common, &r, || r.to_text());
            Ok(r.exit_code())
        }
        Command::Corpus { max_n, only, common } => {
            let s = cmd_corpus(max_n, only, common.budget)?;
            emit(&common, &s, || s.to_text());
            Ok(s.exit_code())
        }
        Command::Export {
            spec,
            target,
            out,
            common,
        } => {
            let s = cmd_export(&spec, target, &out, common.budget)?;
            emit(&common, &s, || format!("wrote {} facets on {} vertices to {}", s.facets, s.vertices, s.path));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_exit_code(&e) as u8)
        }
    }
}
