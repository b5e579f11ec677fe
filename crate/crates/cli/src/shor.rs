use qdouble_core::shor::{postprocess, Backend, EnsembleReport, FactorResult, NoiseConfig, Simulator};
use serde::Serialize;

use crate::output::{csv_string, emit, to_json, CliError};
use crate::{BackendArg, DataFormat, ShorArgs};

#[derive(Serialize)]
struct Row {
    nu: f64,
    y: usize,
    mean_prob: f64,
    stderr: f64,
    discarded: u64,
}

#[derive(Serialize)]
struct Config<'a> {
    command: &'a str,
    nu: &'a [f64],
    realizations: u64,
    seed: u64,
    backend: &'static str,
}

#[derive(Serialize)]
struct Level {
    nu: f64,
    rows: Vec<Row>,
    discarded: u64,
    stderr_defined: bool,
    tvd: f64,
}

#[derive(Serialize)]
struct Document<'a> {
    version: &'static str,
    config: Config<'a>,
    results: Vec<Level>,
    postprocessing: Vec<FactorResult>,
}

fn rows(r: &EnsembleReport) -> Vec<Row> {
    (0..4).map(|y| Row { nu: r.nu, y, mean_prob: r.mean[y], stderr: r.stderr[y], discarded: r.discarded }).collect()
}

pub fn run(command: &str, nus: &[f64], args: &ShorArgs) -> Result<(), CliError> {
    if nus.is_empty() {
        return Err(CliError::usage("at least one --nu value is required"));
    }
    let backend = match args.backend {
        BackendArg::Ideal => Backend::Ideal,
        BackendArg::Braided => Backend::Braided,
    };
    let configs: Vec<NoiseConfig> = nus.iter().map(|&nu| NoiseConfig { nu, realizations: args.realizations, seed: args.seed }).collect();
    for c in &configs {
        c.validate()?;
    }
    let sim = Simulator::new(backend)?;
    let reports = configs.iter().map(|c| sim.ensemble(c)).collect::<Result<Vec<_>, _>>()?;
    let (body, ext) = match args.format {
        DataFormat::Csv => (csv_string(reports.iter().flat_map(rows))?, "csv"),
        DataFormat::Json => {
            let doc = Document {
                version: env!("CARGO_PKG_VERSION"),
                config: Config { command, nu: nus, realizations: args.realizations, seed: args.seed, backend: backend.name() },
                results: reports
                    .iter()
                    .map(|r| Level { nu: r.nu, rows: rows(r), discarded: r.discarded, stderr_defined: r.stderr_defined, tvd: r.tvd() })
                    .collect(),
                postprocessing: (0..4).map(postprocess).collect::<Result<_, _>>()?,
            };
            (to_json(&doc)?, "json")
        }
    };
    emit(&body, args.out.output.clone(), args.out.output_dir.clone(), &format!("shor_{command}.{ext}"))
}
