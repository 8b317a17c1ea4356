//! Executes a [`StudyConfig`]: projection, moments, Sobol' indices and the
//! optional Monte-Carlo comparison.

use std::path::Path;

use serde::Serialize;
use uq_core::montecarlo::{self, GENERATOR, NORMAL_TRANSFORM};
use uq_core::pce::{enumerate_basis, moments, project, sobol};
use uq_core::{InputSpec, MomentSummary, PceSurrogate, SampleSet, SobolReport};

use crate::config::{McConfig, StudyConfig};
use crate::error::CliError;
use crate::models::BoundModel;
use crate::table::ResultTable;

pub const RUN_SCHEMA: &str = "uq-run/1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub struct StudyOutcome {
    pub config: StudyConfig,
    pub surrogate: PceSurrogate,
    pub moments: MomentSummary,
    pub sobol: Option<SobolReport>,
    pub mc: Option<MomentSummary>,
}

fn bound_model(cfg: &StudyConfig) -> Result<(BoundModel, InputSpec), CliError> {
    let spec = cfg.input_spec()?;
    let names: Vec<&str> = cfg.uncertain.iter().map(|u| u.name.as_str()).collect();
    Ok((cfg.model.bind(&names)?, spec))
}

pub fn execute(cfg: &StudyConfig) -> Result<StudyOutcome, CliError> {
    cfg.validate()?;
    let (model, spec) = bound_model(cfg)?;
    let basis = enumerate_basis(cfg.p, spec.tables(cfg.p + 1)?)?;
    let surrogate = project(&model, &spec, &basis, &vec![cfg.n_g; spec.dim()])?;
    let summary = moments(&surrogate, cfg.moment_points())?;
    let sobol = if cfg.sobol { Some(sobol(&surrogate)?) } else { None };
    let mc = match cfg.monte_carlo {
        Some(McConfig { samples, seed }) => Some(montecarlo::mc_moments(&model, &spec, samples, seed)?),
        None => None,
    };
    Ok(StudyOutcome {
        config: cfg.clone(),
        surrogate,
        moments: summary,
        sobol,
        mc,
    })
}

/// Draws and evaluates Monte-Carlo samples of the true model.
pub fn sample(cfg: &StudyConfig, mc: McConfig) -> Result<SampleSet, CliError> {
    cfg.validate()?;
    let (model, spec) = bound_model(cfg)?;
    let mut set = montecarlo::draw_samples(&spec, mc.samples, mc.seed);
    montecarlo::evaluate_samples(&model, &spec, &mut set)?;
    Ok(set)
}

impl StudyOutcome {
    /// Indices of the reported outputs.
    pub fn selected(&self) -> Vec<usize> {
        let labels = self.surrogate.output_labels();
        match &self.config.outputs {
            Some(sel) => sel
                .iter()
                .filter_map(|s| labels.iter().position(|l| l == s))
                .collect(),
            None => (0..labels.len()).collect(),
        }
    }

    fn pick(&self, values: &[f64]) -> Vec<f64> {
        self.selected().into_iter().map(|i| values[i]).collect()
    }

    /// `mean, variance, skewness, kurtosis`, MC columns and Sobol' columns.
    pub fn results_table(&self) -> Result<ResultTable, CliError> {
        let rows = self
            .selected()
            .into_iter()
            .map(|i| self.surrogate.output_labels()[i].clone())
            .collect();
        let mut t = ResultTable::new(rows);
        describe(&mut t, &self.config);
        let m = &self.moments;
        t.push_column("mean", self.pick(&m.mean), 1.0)?;
        t.push_column("variance", self.pick(&m.variance), 1.0)?;
        t.push_column("skewness", self.pick(&m.skewness), 1.0)?;
        t.push_column("kurtosis", self.pick(&m.kurtosis), 1.0)?;
        if let Some(mc) = &self.mc {
            let n = self.config.monte_carlo.map_or(1, |c| c.samples) as f64;
            let se: Vec<f64> = mc.variance.iter().map(|v| (v / n).sqrt()).collect();
            t.push_column("mc_mean", self.pick(&mc.mean), 1.0)?;
            t.push_column("mc_mean_se", self.pick(&se), 1.0)?;
            t.push_column("mc_variance", self.pick(&mc.variance), 1.0)?;
            t.push_column("mc_skewness", self.pick(&mc.skewness), 1.0)?;
            t.push_column("mc_kurtosis", self.pick(&mc.kurtosis), 1.0)?;
        }
        if let Some(report) = &self.sobol {
            let names = &report.inputs;
            let d = names.len();
            let col = |f: &dyn Fn(&uq_core::pce::SobolIndices<f64>) -> f64| -> Vec<f64> {
                let all: Vec<f64> = report.outputs.iter().map(f).collect();
                self.pick(&all)
            };
            for (i, name) in names.iter().enumerate() {
                t.push_column(format!("S_{name}"), col(&|o| o.first_order(i)), 1.0)?;
            }
            for i in 0..d {
                for j in i + 1..d {
                    t.push_column(format!("S_{}_{}", names[i], names[j]), col(&|o| o.second_order(i, j)), 1.0)?;
                }
            }
            for (i, name) in names.iter().enumerate() {
                t.push_column(format!("ST_{name}"), col(&|o| o.total(i)), 1.0)?;
            }
        }
        Ok(t)
    }

    pub fn run_metadata(&self) -> RunMetadata<'_> {
        let d = self.surrogate.dim();
        RunMetadata {
            schema: RUN_SCHEMA,
            version: TOOL_VERSION,
            config: &self.config,
            inputs: self.surrogate.input_spec().names().into_iter().map(String::from).collect(),
            outputs: self
                .selected()
                .into_iter()
                .map(|i| self.surrogate.output_labels()[i].clone())
                .collect(),
            basis_size: self.surrogate.basis().len(),
            model_evaluations: self.config.n_g.pow(d as u32),
            moment_points: self.config.moment_points(),
            monte_carlo: self.config.monte_carlo.map(|mc| McMetadata {
                samples: mc.samples,
                seed: mc.seed,
                generator: GENERATOR,
                normal_transform: NORMAL_TRANSFORM,
            }),
        }
    }

    /// Writes `results.csv`, `surrogate.json` and `run-metadata.json`.
    pub fn write_to(&self, dir: &Path) -> Result<(), CliError> {
        std::fs::create_dir_all(dir)?;
        let table = self.results_table()?;
        table.write_csv(std::fs::File::create(dir.join("results.csv"))?)?;
        std::fs::write(dir.join("surrogate.json"), self.surrogate.to_json()?)?;
        let meta = serde_json::to_string_pretty(&self.run_metadata())?;
        std::fs::write(dir.join("run-metadata.json"), meta + "\n")?;
        Ok(())
    }
}

#[derive(Debug, Serialize)]
pub struct McMetadata {
    pub samples: usize,
    pub seed: u64,
    pub generator: &'static str,
    pub normal_transform: &'static str,
}

#[derive(Debug, Serialize)]
pub struct RunMetadata<'a> {
    pub schema: &'static str,
    pub version: &'static str,
    pub config: &'a StudyConfig,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub basis_size: usize,
    pub model_evaluations: usize,
    pub moment_points: usize,
    pub monte_carlo: Option<McMetadata>,
}

/// Standard metadata lines describing a study.
pub fn describe(t: &mut ResultTable, cfg: &StudyConfig) {
    t.push_meta("tool", format!("uq {TOOL_VERSION}"));
    t.push_meta("model", cfg.model.name());
    let inputs: Vec<String> = cfg
        .uncertain
        .iter()
        .map(|u| format!("{}={}+{}*eps({})", u.name, u.mean, u.sigma, u.germ.name()))
        .collect();
    t.push_meta("inputs", inputs.join(" "));
    t.push_meta("p", cfg.p);
    t.push_meta("n_g", cfg.n_g);
    t.push_meta("moment_points", cfg.moment_points());
    if let Some(mc) = cfg.monte_carlo {
        t.push_meta("mc_samples", mc.samples);
        t.push_meta("seed", mc.seed);
        t.push_meta("generator", GENERATOR);
        t.push_meta("normal_transform", NORMAL_TRANSFORM);
    }
}
