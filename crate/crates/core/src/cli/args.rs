use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use super::run::{synth, InputSource, OutputFormat, RunConfig};
use super::CliError;
use crate::estimators::{DfaInput, Method};
use crate::pipeline::MethodConfigs;
use crate::synthetic::CohortSpec;

#[derive(Debug, Parser)]
#[command(name = "hurst", version, about = "Rolling-window self-similarity exponent study")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate H on rolling windows and report forward returns by H bucket.
    Run(RunArgs),
    /// Write a synthetic drifted-fBm cohort as long-format CSV.
    Synth(SynthArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CohortArgs {
    /// Number of synthetic series.
    #[arg(long = "n", default_value_t = 60)]
    pub n: usize,
    /// Prices per series.
    #[arg(long = "len", default_value_t = 2048)]
    pub len: usize,
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.3, 0.5, 0.7])]
    pub h_values: Vec<f64>,
    /// Per-step log drift for each H value.
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.0, 0.0002, 0.0004])]
    pub drifts: Vec<f64>,
    /// Standard deviation of a one-step log-price increment.
    #[arg(long, default_value_t = CohortSpec::DEFAULT_SCALE)]
    pub scale: f64,
}

impl CohortArgs {
    fn spec(&self, seed: u64) -> CohortSpec {
        CohortSpec {
            n_series: self.n,
            length: self.len,
            h_values: self.h_values.clone(),
            drifts: self.drifts.clone(),
            scale: self.scale,
            seed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DfaProfileArg {
    Profile,
    Raw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Table,
    Csv,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Long-format CSV (`instrument,date,price`).
    #[arg(long, conflicts_with_all = ["input_dir", "synthetic_cohort"])]
    pub input: Option<PathBuf>,
    /// Directory of CSV files, one instrument per file or long format.
    #[arg(long, conflicts_with = "synthetic_cohort")]
    pub input_dir: Option<PathBuf>,
    /// Use a generated drifted-fBm cohort instead of input files.
    #[arg(long)]
    pub synthetic_cohort: bool,
    #[command(flatten)]
    pub cohort: CohortArgs,
    #[arg(long, value_delimiter = ',', default_values_t = vec![32, 64, 128, 256, 512])]
    pub windows: Vec<usize>,
    #[arg(long, default_value_t = 20)]
    pub roll: usize,
    #[arg(long, value_delimiter = ',', default_values = ["ghe", "dfa", "gm2"])]
    pub methods: Vec<Method>,
    #[arg(long, default_value_t = 19)]
    pub tau_max: usize,
    /// Moment order for GHE.
    #[arg(long, default_value_t = 1.0)]
    pub q_ghe: f64,
    /// Moment order for DFA.
    #[arg(long, default_value_t = 2.0)]
    pub q_dfa: f64,
    /// Smallest block size exponent for DFA and GM2 (m = 2^k).
    #[arg(long, default_value_t = 2)]
    pub k_min: u32,
    /// Largest block size exponent; defaults to the largest k with 2^k <= window / 2.
    #[arg(long)]
    pub k_max: Option<u32>,
    #[arg(long, value_enum, default_value_t = DfaProfileArg::Profile)]
    pub dfa_profile: DfaProfileArg,
    /// Roll by a full window so estimation windows do not overlap.
    #[arg(long)]
    pub non_overlapping: bool,
    /// Leave estimates outside (0, 2) out of the reports.
    #[arg(long)]
    pub exclude_suspect: bool,
    #[arg(long, value_enum, default_value_t = FormatArg::Table)]
    pub format: FormatArg,
    #[arg(long, default_value = "hurst-out")]
    pub out: PathBuf,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
}

impl RunArgs {
    pub fn into_config(self) -> Result<RunConfig, CliError> {
        let input = match (self.input, self.input_dir, self.synthetic_cohort) {
            (Some(p), None, false) => InputSource::Csv(p),
            (None, Some(d), false) => InputSource::Dir(d),
            (None, None, true) => InputSource::Synthetic(self.cohort.spec(self.seed)),
            _ => return Err(CliError::Config("give exactly one of --input, --input-dir, --synthetic-cohort".into())),
        };
        let mut configs = MethodConfigs::default();
        configs.ghe.q = self.q_ghe;
        configs.ghe.tau_max = self.tau_max;
        configs.dfa.q = self.q_dfa;
        configs.dfa.dfa_input = match self.dfa_profile {
            DfaProfileArg::Profile => DfaInput::Profile,
            DfaProfileArg::Raw => DfaInput::RawLogPrice,
        };
        for cfg in [&mut configs.dfa, &mut configs.gm2] {
            cfg.k_min = self.k_min;
            cfg.k_max = self.k_max;
        }
        Ok(RunConfig {
            input,
            windows: self.windows,
            roll_step: self.roll,
            methods: self.methods,
            configs,
            non_overlapping: self.non_overlapping,
            exclude_suspect: self.exclude_suspect,
            format: match self.format {
                FormatArg::Table => OutputFormat::Table,
                FormatArg::Csv => OutputFormat::Csv,
            },
            out_dir: self.out,
        })
    }
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[command(flatten)]
    pub cohort: CohortArgs,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl SynthArgs {
    pub fn execute(self) -> Result<(), CliError> {
        let csv = synth(&self.cohort.spec(self.seed))?;
        match self.out {
            Some(path) => fs::write(&path, csv).map_err(|e| CliError::Io { path, message: e.to_string() }),
            None => {
                print!("{csv}");
                Ok(())
            }
        }
    }
}
