//! The `wkl` command line: parse a job, run the pipeline, render a report.

pub mod lambda;
pub mod render;
pub mod report;

use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};
use wkl::charformula::{
    invert_multiplicities, regular_formula, require_antidominant_regular, singular_formula,
    verma_mode,
};
use wkl::cosetlab::{stabilizer_data, ThetaCosets};
use wkl::klengine::KLTable;
use wkl::oracle::verify_suite;
use wkl::{RootSystem, WeylGroup};

pub use lambda::{parse_lambda, ParseLambdaError};
use render::Section;
use report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

/// Only deterministic ordering exists; the flag documents that.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeedOrder {
    Fixed,
}

#[derive(Debug, Parser)]
#[command(name = "wkl", version, about = "Whittaker Kazhdan-Lusztig polynomials and character formulas")]
pub struct Cli {
    /// Root system, e.g. A3, B2, G2, F4.
    #[arg(long = "type", global = true)]
    pub root_type: Option<String>,
    /// Simple roots of Θ: names (α,β or alpha,beta), a1,a2, or 1-based indices; "" for ∅.
    #[arg(long, global = true, default_value = "", allow_hyphen_values = true)]
    pub theta: String,
    /// Coroot coordinates α_i^∨(λ), e.g. "-5-4*t1, -5+4*t1, -5". Defaults to −ρ.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, global = true, value_enum, default_value_t = SeedOrder::Fixed)]
    pub seed_order: SeedOrder,
    #[arg(long, global = true, default_value_t = wkl::rootsystem::MAX_RANK)]
    pub max_rank: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrality flags, Σ_λ, Π_λ, A_λ, A_Θ,λ and the integral models.
    Info,
    /// Right W_Θ-cosets with their longest and shortest elements and covers.
    Cosets,
    /// Whittaker Kazhdan-Lusztig polynomial tables, one per integral model.
    Klpolys,
    /// Character formulas ch L = Σ ± ch M.
    Characters {
        /// Also print multiplicities [M : L].
        #[arg(long)]
        invert: bool,
        /// Force Θ = ∅ and label by Weyl group elements.
        #[arg(long)]
        verma: bool,
    },
    /// Run the oracle suite; exits with 2 if any check fails.
    Verify,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Lambda(#[from] ParseLambdaError),
    #[error("--type is required (e.g. --type A3)")]
    MissingType,
    #[error("unknown simple root {0:?} in --theta")]
    Theta(String),
    #[error("rank {rank} exceeds --max-rank {max}")]
    MaxRank { rank: usize, max: usize },
    #[error(transparent)]
    Core(#[from] wkl::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(wkl::Error::Invariant(_)) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn parse_theta(rs: &RootSystem, text: &str) -> Result<Vec<usize>, CliError> {
    let mut out = Vec::new();
    for name in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        out.push(rs.simple_index(name).ok_or_else(|| CliError::Theta(name.into()))?);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Runs one job; the report and whether verification (if any) passed.
pub fn execute(cli: &Cli) -> Result<(String, bool), CliError> {
    let name = cli.root_type.as_deref().ok_or(CliError::MissingType)?;
    let rs = RootSystem::from_name(name)?;
    if rs.rank() > cli.max_rank {
        return Err(CliError::MaxRank {
            rank: rs.rank(),
            max: cli.max_rank,
        });
    }
    let lambda = match &cli.lambda {
        Some(t) => parse_lambda(t)?,
        None => rs.rho().scaled(-1),
    };
    rs.check_rank(&lambda)?;
    let mut theta = parse_theta(&rs, &cli.theta)?;
    if let Command::Characters { verma: true, .. } = cli.command {
        theta.clear();
    }
    let g = WeylGroup::enumerate(rs)?;
    let tc = ThetaCosets::build(&g, &theta)?;
    let mut rep = Report {
        context: report::context(&g, &theta, &lambda)?,
        ..Report::default()
    };
    let mut passed = true;
    let sections: Vec<Section> = match &cli.command {
        Command::Info => {
            let kl = KLTable::compute(&tc, &lambda)?;
            rep.integral = Some(report::integral_info(&g, &kl));
            rep.models = report::model_infos(&tc, &kl);
            vec![Section::Info]
        }
        Command::Cosets => {
            rep.cosets = report::coset_rows(&tc);
            vec![Section::Cosets]
        }
        Command::Klpolys => {
            let kl = KLTable::compute(&tc, &lambda)?;
            rep.models = report::model_infos(&tc, &kl);
            rep.kl_polynomials = report::poly_entries(&tc, &kl);
            vec![Section::Polys]
        }
        Command::Characters { invert, verma } => {
            let cf = if *verma {
                verma_mode(&g, &lambda)?
            } else {
                let kl = KLTable::compute(&tc, &lambda)?;
                if require_antidominant_regular(g.root_system(), &lambda).is_ok() {
                    regular_formula(&tc, &kl)?
                } else {
                    let stab = stabilizer_data(&tc, &lambda)?;
                    singular_formula(&tc, &kl, &stab)?
                }
            };
            rep.context.mode = Some(report::mode_name(cf.mode).into());
            rep.characters = report::character_rows(&tc, &cf);
            if *invert {
                let inv = invert_multiplicities(&cf)?;
                rep.multiplicities = report::multiplicity_rows(&tc, &inv);
                vec![Section::Characters, Section::Multiplicities]
            } else {
                vec![Section::Characters]
            }
        }
        Command::Verify => {
            let v = verify_suite(&tc, &lambda)?;
            passed = v.passed();
            rep.verification = Some(v);
            vec![Section::Verification]
        }
    };
    let out = match cli.format {
        Format::Json => serde_json::to_string_pretty(&rep)? + "\n",
        Format::Text => render::text(&rep, &sections),
        Format::Latex => render::latex(&rep, &sections),
    };
    Ok((out, passed))
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok((stdout, true)) => Outcome { code: 0, stdout, stderr: String::new() },
        Ok((stdout, false)) => Outcome {
            code: 2,
            stdout,
            stderr: "error: verification failed\n".into(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
