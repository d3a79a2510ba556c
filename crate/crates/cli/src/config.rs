use std::path::{Path, PathBuf};

use belldecomp::{BellOutcome, PairingConvention, DEFAULT_EQ_TOL, DEFAULT_INV_TOL};
use clap::{Args, Parser, Subcommand};

/// Relative `--output` paths are resolved against this directory when set.
pub const OUTPUT_DIR_ENV: &str = "BELLDECOMP_OUTPUT_DIR";

#[derive(Debug, Clone, Parser)]
#[command(
    name = "belldecomp",
    version,
    about = "Bell-basis decomposition of N-qubit teleportation"
)]
pub struct ExperimentConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Max-abs tolerance for state and matrix comparisons
    #[arg(long, global = true, default_value_t = DEFAULT_EQ_TOL)]
    pub tol_eq: f64,

    /// Threshold on |Y1*Y4 - Y2*Y3| below which a pair is treated as singular
    #[arg(long, global = true, default_value_t = DEFAULT_INV_TOL)]
    pub tol_inv: f64,

    /// Write the report here instead of stdout
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Print the sub-matrix table, the decomposition matrix for one outcome and its inverse
    Decompose(DecomposeArgs),
    /// Sample Alice's outcome and run Bob's recovery
    Teleport(TeleportArgs),
    /// Cross-check the decomposition formulas against the brute-force oracle
    Verify(VerifyArgs),
    /// Vary one pair as (cos t, 0, 0, sin t) and tabulate outcome probabilities as CSV
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ConventionArg {
    /// Which qubit of each pair Bob keeps
    #[arg(long, default_value = "bob-holds-second", value_parser = parse_convention)]
    pub convention: PairingConvention,
}

fn parse_convention(s: &str) -> Result<PairingConvention, String> {
    s.parse()
}

fn parse_outcome(s: &str) -> Result<BellOutcome, String> {
    s.parse().map_err(|e: belldecomp::Error| e.to_string())
}

#[derive(Debug, Clone, Args)]
pub struct DecomposeArgs {
    #[arg(long)]
    pub channel: PathBuf,
    /// Bell indices, e.g. 234 or 2,3,4
    #[arg(long, value_parser = parse_outcome)]
    pub outcome: BellOutcome,
    #[command(flatten)]
    pub convention: ConventionArg,
}

#[derive(Debug, Clone, Args)]
pub struct TeleportArgs {
    #[arg(long)]
    pub state: PathBuf,
    #[arg(long)]
    pub channel: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub convention: ConventionArg,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, requires = "channel", conflicts_with = "random")]
    pub state: Option<PathBuf>,
    #[arg(long, requires = "state")]
    pub channel: Option<PathBuf>,
    /// Verify seeded random instances with this many qubits instead of files
    #[arg(long, value_name = "N", required_unless_present = "state")]
    pub random: Option<usize>,
    /// Number of random instances
    #[arg(long, default_value_t = 20)]
    pub instances: u64,
    /// Seed of the first random instance; instance i uses seed + i
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub state: PathBuf,
    #[arg(long)]
    pub channel: PathBuf,
    /// 1-based index of the pair to vary
    #[arg(long, default_value_t = 1)]
    pub pair: usize,
    #[arg(long, default_value_t = 0.0)]
    pub theta_min: f64,
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2)]
    pub theta_max: f64,
    /// Grid points, endpoints included
    #[arg(long, default_value_t = 11)]
    pub steps: usize,
    #[command(flatten)]
    pub convention: ConventionArg,
}

impl ExperimentConfig {
    /// Output path after applying [`OUTPUT_DIR_ENV`].
    pub fn resolved_output(&self) -> Option<PathBuf> {
        let dir = std::env::var_os(OUTPUT_DIR_ENV).map(PathBuf::from);
        self.output
            .as_deref()
            .map(|p| resolve_output(p, dir.as_deref()))
    }
}

pub fn resolve_output(path: &Path, dir: Option<&Path>) -> PathBuf {
    match dir {
        Some(d) if path.is_relative() => d.join(path),
        _ => path.to_path_buf(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decompose() {
        let cfg = ExperimentConfig::try_parse_from([
            "belldecomp",
            "decompose",
            "--channel",
            "c.json",
            "--outcome",
            "2,3,4",
            "--convention",
            "bob-holds-first",
            "--tol-inv",
            "1e-6",
        ])
        .unwrap();
        assert_eq!(cfg.tol_inv, 1e-6);
        assert_eq!(cfg.tol_eq, DEFAULT_EQ_TOL);
        match cfg.command {
            Command::Decompose(a) => {
                assert_eq!(a.outcome.alphas(), &[2, 3, 4]);
                assert_eq!(a.convention.convention, PairingConvention::BobHoldsFirst);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn verify_needs_files_or_random() {
        assert!(ExperimentConfig::try_parse_from(["belldecomp", "verify"]).is_err());
        assert!(
            ExperimentConfig::try_parse_from(["belldecomp", "verify", "--state", "s"]).is_err()
        );
        assert!(
            ExperimentConfig::try_parse_from(["belldecomp", "verify", "--random", "2"]).is_ok()
        );
    }

    #[test]
    fn bad_outcome_rejected() {
        assert!(ExperimentConfig::try_parse_from([
            "belldecomp",
            "decompose",
            "--channel",
            "c",
            "--outcome",
            "15"
        ])
        .is_err());
    }

    #[test]
    fn output_dir_applies_to_relative_paths() {
        let dir = Path::new("/tmp/out");
        assert_eq!(
            resolve_output(Path::new("a.csv"), Some(dir)),
            dir.join("a.csv")
        );
        assert_eq!(
            resolve_output(Path::new("/x/a.csv"), Some(dir)),
            PathBuf::from("/x/a.csv")
        );
        assert_eq!(
            resolve_output(Path::new("a.csv"), None),
            PathBuf::from("a.csv")
        );
    }
}
