use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use twinrank::commands::{self, Outcome, VerifyOptions};
use twinrank::config::RunConfig;
use twinrank::{EXIT_OK, EXIT_USAGE, EXIT_VERIFY};
use twinrank_core::families::FamilyId;

#[derive(Parser)]
#[command(name = "twinrank", version, about = "Certified rank-2 quadratic twists of Legendre curve pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Thm51,
    Thm53,
    /// User-supplied pipeline inputs (verify-identities --pipeline only).
    Custom,
}

#[derive(Subcommand)]
enum Command {
    /// Run every symbolic identity and print PASS/FAIL per identity.
    VerifyIdentities {
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
        /// TOML with lambda1, lambda2, h1, h2, t (and optionally g) for --family custom.
        #[arg(long)]
        pipeline: Option<PathBuf>,
        /// Test mode: perturb one point, e.g. `thm51:P1`.
        #[arg(long, hide = true)]
        perturb: Option<String>,
    },
    /// Walk C_alpha and write certified twists as JSON lines (plus a CSV summary).
    Generate(GenerateArgs),
    /// Re-verify a certificate file from its exact data.
    Recheck {
        file: PathBuf,
        /// Also recompute the regulator evidence.
        #[arg(long)]
        heights: bool,
    },
    /// Describe a curve: legendre(l), legendre(l, d), weierstrass(a, b),
    /// weierstrass(a1, a2, a3, a4, a6) or quartic(c4, c3, c2, c1, c0).
    Inspect { curve: String },
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long)]
    count: Option<usize>,
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    #[arg(long)]
    config: Option<PathBuf>,
    /// JSON-lines output; the CSV summary goes next to it.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    relation_bound: Option<u32>,
    #[arg(long)]
    doublings: Option<u32>,
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long)]
    trial_bound: Option<u64>,
    #[arg(long)]
    rho_budget: Option<u64>,
    #[arg(long)]
    max_candidates: Option<usize>,
}

fn shipped(f: FamilyArg) -> anyhow::Result<FamilyId> {
    match f {
        FamilyArg::Thm51 => Ok(FamilyId::Thm51),
        FamilyArg::Thm53 => Ok(FamilyId::Thm53),
        FamilyArg::Custom => anyhow::bail!("the generator only walks the shipped families thm51 and thm53"),
    }
}

impl GenerateArgs {
    fn resolve(self) -> anyhow::Result<RunConfig> {
        let mut c = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        if let Some(f) = self.family {
            c.family = shipped(f)?;
        }
        c.alpha = self.alpha.or(c.alpha);
        c.out = self.out.or(c.out);
        c.count = self.count.unwrap_or(c.count);
        c.relation_bound = self.relation_bound.unwrap_or(c.relation_bound);
        c.doublings = self.doublings.unwrap_or(c.doublings);
        c.tolerance = self.tolerance.unwrap_or(c.tolerance);
        c.trial_bound = self.trial_bound.unwrap_or(c.trial_bound);
        c.rho_budget = self.rho_budget.unwrap_or(c.rho_budget);
        c.max_candidates = self.max_candidates.unwrap_or(c.max_candidates);
        Ok(c)
    }
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let mut stdout = std::io::stdout().lock();
    match cli.command {
        Command::VerifyIdentities { family, pipeline, perturb } => {
            let family = match family {
                Some(FamilyArg::Custom) if pipeline.is_none() => anyhow::bail!("--family custom needs --pipeline"),
                Some(FamilyArg::Custom) | None => None,
                Some(f) => Some(shipped(f)?),
            };
            let perturb = perturb.as_deref().map(commands::parse_perturbation).transpose()?;
            commands::verify_identities(&VerifyOptions { family, pipeline, perturb }, &mut stdout)
        }
        Command::Generate(args) => commands::generate(&args.resolve()?),
        Command::Recheck { file, heights } => commands::recheck(&file, heights, &mut stdout),
        Command::Inspect { curve } => commands::inspect(&curve, &mut stdout).map(|_| Outcome::Success),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(Outcome::Success) => EXIT_OK,
        Ok(Outcome::Failed) => EXIT_VERIFY,
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<twinrank_core::Error>() {
                Some(twinrank_core::Error::IdentityFailure(_)) => EXIT_VERIFY,
                _ => EXIT_USAGE,
            }
        }
    };
    ExitCode::from(code as u8)
}
