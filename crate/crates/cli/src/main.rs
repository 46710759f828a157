//! `gradedgrowth`: word metrics, filtration growth, tilings and
//! Golod–Shafarevich certificates from the command line.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "gradedgrowth", version, about = "Growth, tiling and amenability computations for finitely generated groups")]
struct Cli {
    /// JSON file of extra named groups; built-ins stay available.
    #[arg(long, global = true)]
    registry: Option<PathBuf>,
    /// Seed for any randomized selection.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// List built-in and registry groups.
    Groups,
    /// Graded dimensions of the augmentation filtration.
    Growth(GrowthArgs),
    /// Dead ends of the word metric up to a radius.
    Deadends(DeadendsArgs),
    /// Search balls and boxes for a set with small K-boundary.
    Folner(FolnerArgs),
    /// Build a tiling transversal certificate.
    Tile(TileArgs),
    /// Experimental tiling run over F_p[Z^d] with a unit basis.
    TileAlgebraProbe(ProbeArgs),
    /// Hecke deformation operations.
    Crystal(CrystalArgs),
    /// Check ideal generators from a complement on random right ideals.
    RsCheck(RsArgs),
    /// Golod–Shafarevich certificate.
    Gs(GsArgs),
    /// Re-check a tiling or GS certificate.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct GrowthArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub p: u32,
    /// Report degrees 0..=max_n at most.
    #[arg(long)]
    pub max_n: Option<usize>,
    /// For Z^d and the Heisenberg group: compare the quotients mod p^level
    /// and p^(level+1).
    #[arg(long, default_value_t = 3)]
    pub level: u32,
}

#[derive(Args, Debug, Serialize)]
pub struct DeadendsArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub radius: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct FolnerArgs {
    #[arg(long)]
    pub group: String,
    /// Comma-separated elements, or `ball:R`.
    #[arg(long)]
    pub k: String,
    /// Target defect, e.g. `1/10`.
    #[arg(long)]
    pub bound: String,
    #[arg(long, default_value_t = 12)]
    pub max_radius: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct TileArgs {
    #[arg(long)]
    pub group: String,
    /// Comma-separated elements containing the identity, or `ball:R`.
    #[arg(long)]
    pub k: String,
    #[arg(long)]
    pub epsilon: String,
    /// Base of the chain of quotients mod base^n and of the tower boxes.
    #[arg(long, default_value_t = 2)]
    pub base: u64,
    /// JSON chain of coset tables, replacing the built-in chain.
    #[arg(long)]
    pub chain: Option<PathBuf>,
    /// Fixed tower height.
    #[arg(long)]
    pub height: Option<usize>,
    #[arg(long)]
    pub delta: Option<String>,
    #[arg(long)]
    pub zeta: Option<String>,
    #[arg(long, default_value_t = 12)]
    pub max_radius: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct ProbeArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub p: u32,
    /// One basis element per flag, e.g. `--basis "(0)" --basis "1*(1)"`.
    #[arg(long, required = true)]
    pub basis: Vec<String>,
    #[arg(long)]
    pub epsilon: String,
    #[arg(long, default_value_t = 2)]
    pub base: u64,
    #[arg(long)]
    pub height: Option<usize>,
}

#[derive(Args, Debug, Serialize)]
pub struct CrystalArgs {
    #[command(subcommand)]
    pub op: CrystalOp,
}

#[derive(Args, Debug, Serialize)]
pub struct CrystalCommon {
    #[arg(long)]
    pub group: String,
    /// `z`, `q` or a prime p for GF(p).
    #[arg(long, default_value = "z")]
    pub ring: String,
    #[arg(long, default_value = "0")]
    pub lambda: String,
    /// Radius of the ball holding every product.
    #[arg(long, default_value_t = 6)]
    pub radius: usize,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum CrystalOp {
    /// Product of two elements such as `2*ab - b`.
    Mul {
        #[command(flatten)]
        #[serde(flatten)]
        common: CrystalCommon,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Image in the undeformed group ring.
    Untwist {
        #[command(flatten)]
        #[serde(flatten)]
        common: CrystalCommon,
        #[arg(long)]
        a: String,
    },
    /// Whether basis products in the crystal algebra are monomial.
    CheckMonomial {
        #[command(flatten)]
        #[serde(flatten)]
        common: CrystalCommon,
        /// Check products of elements up to this length.
        #[arg(long)]
        check_radius: usize,
        /// Check this many random pairs instead of all of them.
        #[arg(long)]
        sample: Option<usize>,
    },
}

#[derive(Args, Debug, Serialize)]
pub struct RsArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub p: u32,
    #[arg(long, default_value_t = 20)]
    pub ideals: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct GsArgs {
    /// Presentation file {"generators": [...], "relators": [...]}.
    #[arg(long, conflicts_with_all = ["d", "degrees"])]
    pub presentation: Option<PathBuf>,
    /// Generator count.
    #[arg(long, requires = "degrees")]
    pub d: Option<u32>,
    /// Comma-separated relator degrees; `a..b` is an inclusive range.
    #[arg(long, requires = "d")]
    pub degrees: Option<String>,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long, default_value_t = 12)]
    pub max_deg: usize,
    /// Treat "degree above D" as D+1.
    #[arg(long)]
    pub assume_min_degree: bool,
    #[arg(long, default_value_t = 100)]
    pub grid: u32,
    /// User-asserted bound on the sum over omitted relators.
    #[arg(long)]
    pub tail_bound: Option<String>,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    #[arg(long)]
    pub certificate: PathBuf,
    /// Group name for tiling certificates; defaults to the one recorded.
    #[arg(long)]
    pub group: Option<String>,
}

/// Global settings resolved before dispatch.
pub struct Context {
    pub registry: gradedgrowth::group::registry::Registry,
    pub seed: u64,
    pub format: Option<Format>,
    /// Element cap derived from GRADEDGROWTH_BUDGET_MB.
    pub budget: Option<usize>,
    pub config: serde_json::Value,
}

const BUDGET_VAR: &str = "GRADEDGROWTH_BUDGET_MB";

fn context(cli: &Cli) -> gradedgrowth::Result<Context> {
    use gradedgrowth::Error;
    let registry = match &cli.registry {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
            gradedgrowth::group::registry::Registry::from_json(&text)?
        }
        None => Default::default(),
    };
    let budget_mb = match std::env::var(BUDGET_VAR) {
        Ok(v) => Some(v.trim().parse::<usize>().map_err(|_| Error::Parse(format!("{BUDGET_VAR}={v:?} is not a number")))?),
        Err(_) => None,
    };
    // roughly 64 bytes per stored element
    let budget = budget_mb.map(|mb| mb.saturating_mul(1 << 14).max(1));
    let config = json!({
        "args": &cli.command,
        "seed": cli.seed,
        "registry": cli.registry.as_ref().map(|p| p.display().to_string()),
        "budget_mb": budget_mb,
        "version": env!("CARGO_PKG_VERSION"),
    });
    Ok(Context { registry, seed: cli.seed, format: cli.format, budget, config })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = context(&cli).and_then(|ctx| commands::run(&cli.command, &ctx));
    let report = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    if let Err(e) = output::write(&report.body, cli.output.as_deref()) {
        eprintln!("error: {e}");
        return ExitCode::from(e.exit_code() as u8);
    }
    ExitCode::from(report.code as u8)
}
