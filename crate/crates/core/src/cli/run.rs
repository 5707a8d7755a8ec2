use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::ingest::{emit_csv, ingest_csv, ingest_dir};
use super::CliError;
use crate::estimators::Method;
use crate::pipeline::{
    observations_csv, render_method_table, render_report, render_report_csv, report, scan, BucketReport,
    BucketScheme, MethodConfigs, Observation, ScanSpec,
};
use crate::series::PriceSeries;
use crate::synthetic::{generate_drifted_cohort, CohortSpec};

#[derive(Debug, Clone, PartialEq)]
pub enum InputSource {
    Csv(PathBuf),
    Dir(PathBuf),
    Synthetic(CohortSpec),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Csv,
}

impl OutputFormat {
    fn extension(self) -> &'static str {
        match self {
            OutputFormat::Table => "txt",
            OutputFormat::Csv => "csv",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub input: InputSource,
    pub windows: Vec<usize>,
    pub roll_step: usize,
    pub methods: Vec<Method>,
    pub configs: MethodConfigs,
    pub non_overlapping: bool,
    pub exclude_suspect: bool,
    pub format: OutputFormat,
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    /// Written files, in write order.
    pub files: Vec<PathBuf>,
    /// Text printed to standard output.
    pub text: String,
}

fn load(input: &InputSource) -> Result<Vec<PriceSeries>, CliError> {
    match input {
        InputSource::Csv(path) => ingest_csv(path),
        InputSource::Dir(dir) => ingest_dir(dir),
        InputSource::Synthetic(spec) => Ok(generate_drifted_cohort(spec)?),
    }
}

fn write(path: PathBuf, contents: &str, files: &mut Vec<PathBuf>) -> Result<(), CliError> {
    fs::write(&path, contents).map_err(|e| CliError::Io { path: path.clone(), message: e.to_string() })?;
    files.push(path);
    Ok(())
}

fn report_file(dir: &Path, kind: &str, method: Method, window: usize, format: OutputFormat) -> PathBuf {
    dir.join(format!("{kind}_{}_w{window}.{}", method.as_str().to_ascii_lowercase(), format.extension()))
}

/// Writes, per `(window, method)`, the observation CSV plus one quintile and
/// one tail report, and returns a per-method summary across windows.
pub fn run(config: &RunConfig) -> Result<RunSummary, CliError> {
    if config.windows.is_empty() || config.methods.is_empty() {
        return Err(CliError::Config("need at least one window size and one method".into()));
    }
    let universe = load(&config.input)?;
    fs::create_dir_all(&config.out_dir)
        .map_err(|e| CliError::Io { path: config.out_dir.clone(), message: e.to_string() })?;

    let mut files = Vec::new();
    let mut text = String::new();
    writeln!(text, "instruments: {}", universe.len()).unwrap();

    let mut quintiles: Vec<BucketReport> = Vec::new();
    let mut tails: Vec<BucketReport> = Vec::new();
    for &window in &config.windows {
        let spec = ScanSpec {
            window,
            roll_step: if config.non_overlapping { window } else { config.roll_step },
            methods: config.methods.clone(),
            configs: config.configs,
        };
        let out = scan(&universe, &spec)?;
        writeln!(
            text,
            "window {window}: {} observations, {} short series, {} skipped estimates",
            out.observations.len(),
            out.diagnostics.short_series.len(),
            out.diagnostics.failure_count()
        )
        .unwrap();
        for ((method, kind), count) in &out.diagnostics.failed_estimates {
            writeln!(text, "  {method}: {count} x {kind}").unwrap();
        }

        for &method in &config.methods {
            let of_method: Vec<Observation> = out.observations.iter().filter(|o| o.method == method).cloned().collect();
            let obs_path = config.out_dir.join(format!("observations_{}_w{window}.csv", method.as_str().to_ascii_lowercase()));
            write(obs_path, &observations_csv(&of_method), &mut files)?;

            let pooled: Vec<Observation> = if config.exclude_suspect {
                of_method.into_iter().filter(|o| !o.suspect).collect()
            } else {
                of_method
            };
            for (scheme, kind, sink) in
                [(BucketScheme::Quintile, "quintile", &mut quintiles), (BucketScheme::Tail, "tail", &mut tails)]
            {
                let rep = report(&pooled, window, method, scheme).map_err(|source| CliError::Pipeline {
                    window,
                    method: method.to_string(),
                    source,
                })?;
                let body = match config.format {
                    OutputFormat::Table => render_report(&rep),
                    OutputFormat::Csv => render_report_csv(&rep),
                };
                write(report_file(&config.out_dir, kind, method, window, config.format), &body, &mut files)?;
                sink.push(rep);
            }
        }
    }

    for &method in &config.methods {
        for set in [&quintiles, &tails] {
            let of_method: Vec<BucketReport> = set.iter().filter(|r| r.method == method).cloned().collect();
            text.push('\n');
            text.push_str(&render_method_table(&of_method));
        }
    }
    Ok(RunSummary { files, text })
}

/// Long-format CSV for a generated cohort.
pub fn synth(spec: &CohortSpec) -> Result<String, CliError> {
    Ok(emit_csv(&generate_drifted_cohort(spec)?))
}
