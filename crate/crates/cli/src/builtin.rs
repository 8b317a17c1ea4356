//! Built-in studies and the tables they reproduce.

use uq_core::montecarlo::kde;
use uq_core::{ServiceDistribution, UncertainParam};

use crate::config::{McConfig, StudyConfig, STUDY_SCHEMA};
use crate::error::CliError;
use crate::models::ModelSpec;
use crate::study::{describe, execute, sample, StudyOutcome};
use crate::table::ResultTable;

pub const TABLE_IDS: [&str; 17] = [
    "me2-mean",
    "me2-var",
    "me2-skew",
    "me2-kurt",
    "mh2-mean",
    "mh2-var",
    "mh2-skew",
    "mh2-kurt",
    "me2-density",
    "mh2-density",
    "mm1-sobol1",
    "mm1-sobol2",
    "mm1-sobol-total",
    "mm1-mean",
    "mm1-var",
    "mm1-skew",
    "mm1-kurt",
];

/// Sample size and seed used by density tables when none are given.
pub const DEFAULT_DENSITY_MC: McConfig = McConfig {
    samples: 10_000,
    seed: 1,
};
pub const DEFAULT_KDE_GRID: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinStudy {
    /// M/E2/1/7 with uncertain breakdown probability.
    Erlang,
    /// M/H2/1/7 with uncertain breakdown probability.
    Hyperexp,
    /// M/M/1/5 threshold model, all four rates uncertain.
    Threshold4,
    /// M/M/1/5 threshold model, only `lambda` uncertain.
    ThresholdLambda,
    /// M/M/1/5 threshold model, only `alpha` uncertain.
    ThresholdAlpha,
}

fn mg1n(service: ServiceDistribution) -> ModelSpec {
    ModelSpec::Mg1n {
        capacity: 7,
        lambda: 1.0,
        r: 0.4,
        theta: 0.5,
        service,
    }
}

const MM1: ModelSpec = ModelSpec::Mm1Threshold {
    capacity: 5,
    q: 3,
    lambda: 2.0,
    mu: 7.3,
    alpha: 3.0,
    beta: 4.0,
};

fn mm1_alpha() -> UncertainParam {
    UncertainParam::normal("alpha", 3.0, 0.04)
}

fn mm1_lambda() -> UncertainParam {
    UncertainParam::normal("lambda", 2.0, 0.04)
}

impl BuiltinStudy {
    pub fn config(self) -> StudyConfig {
        let theta = || vec![UncertainParam::uniform("theta", 0.5, 0.28)];
        let (model, uncertain, p, n_g) = match self {
            BuiltinStudy::Erlang => (
                mg1n(ServiceDistribution::GeneralizedErlang2 { mu1: 4.0, mu2: 2.0 }),
                theta(),
                4,
                6,
            ),
            BuiltinStudy::Hyperexp => (
                mg1n(ServiceDistribution::Hyperexponential2 {
                    gamma: 0.3,
                    mu1: 1.5,
                    mu2: 3.0,
                }),
                theta(),
                4,
                6,
            ),
            BuiltinStudy::Threshold4 => (
                MM1,
                vec![
                    mm1_alpha(),
                    UncertainParam::normal("beta", 4.0, 0.02),
                    mm1_lambda(),
                    UncertainParam::normal("mu", 7.3, 0.02),
                ],
                3,
                5,
            ),
            BuiltinStudy::ThresholdLambda => (MM1, vec![mm1_lambda()], 3, 5),
            BuiltinStudy::ThresholdAlpha => (MM1, vec![mm1_alpha()], 3, 5),
        };
        StudyConfig {
            schema: STUDY_SCHEMA.into(),
            model,
            uncertain,
            p,
            n_g,
            moment_points: None,
            monte_carlo: None,
            outputs: None,
            sobol: self == BuiltinStudy::Threshold4,
        }
    }
}

/// The study behind a table id (for density, the study whose outputs are estimated).
pub fn study_for(table_id: &str) -> Result<BuiltinStudy, CliError> {
    if !TABLE_IDS.contains(&table_id) {
        return Err(CliError::Validation(format!(
            "unknown table id '{table_id}'; valid ids: {}",
            TABLE_IDS.join(", ")
        )));
    }
    Ok(match table_id.split('-').next() {
        Some("me2") => BuiltinStudy::Erlang,
        Some("mh2") => BuiltinStudy::Hyperexp,
        _ => BuiltinStudy::Threshold4,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Stat {
    Mean,
    Var,
    Skew,
    Kurt,
}

impl Stat {
    fn parse(suffix: &str) -> Option<Self> {
        Some(match suffix {
            "mean" => Stat::Mean,
            "var" => Stat::Var,
            "skew" => Stat::Skew,
            "kurt" => Stat::Kurt,
            _ => return None,
        })
    }

    fn of(self, m: &uq_core::MomentSummary) -> Vec<f64> {
        match self {
            Stat::Mean => m.mean.clone(),
            Stat::Var => m.variance.clone(),
            Stat::Skew => m.skewness.clone(),
            Stat::Kurt => m.kurtosis.clone(),
        }
    }
}

/// Published column order for the M/M/1 Sobol' tables: α, μ, β, λ.
const SOBOL_ORDER: [&str; 4] = ["alpha", "mu", "beta", "lambda"];
/// Pairs and display scales of the second-order table.
const SOBOL_PAIRS: [(&str, &str, f64); 6] = [
    ("alpha", "mu", 1e-8),
    ("alpha", "beta", 1e-8),
    ("alpha", "lambda", 1e-6),
    ("mu", "beta", 1e-9),
    ("mu", "lambda", 1e-8),
    ("beta", "lambda", 1e-7),
];

/// Rows whose 1-r.v. column uses `alpha` instead of `lambda`.
pub const ALPHA_ONLY_ROWS: [&str; 2] = ["pi_0_1", "pi_1_3"];

fn with_mc(mut cfg: StudyConfig, mc: Option<McConfig>) -> StudyConfig {
    cfg.monte_carlo = mc;
    cfg
}

fn mc_columns(t: &mut ResultTable, outcome: &StudyOutcome, stat: Stat, suffix: &str, scale: f64) -> Result<(), CliError> {
    if let (Some(mc), Some(c)) = (&outcome.mc, outcome.config.monte_carlo) {
        t.push_column(format!("mc{suffix}"), stat.of(mc), scale)?;
        if stat == Stat::Mean {
            let se = mc.variance.iter().map(|v| (v / c.samples as f64).sqrt()).collect();
            t.push_column(format!("mc{suffix}_se"), se, 1.0)?;
        }
    }
    Ok(())
}

fn position(names: &[String], name: &str) -> usize {
    names.iter().position(|n| n == name).expect("built-in input present")
}

/// Builds the table `table_id`; `mc` adds Monte-Carlo columns where defined.
pub fn reproduce(table_id: &str, mc: Option<McConfig>) -> Result<ResultTable, CliError> {
    let study = study_for(table_id)?;
    let (_, kind) = table_id.split_once('-').expect("ids contain '-'");
    if kind == "density" {
        let mc = mc.unwrap_or(DEFAULT_DENSITY_MC);
        return density(table_id, mc, DEFAULT_KDE_GRID);
    }
    if kind.starts_with("sobol") && mc.is_some() {
        return Err(CliError::Validation(format!(
            "Monte-Carlo columns are not defined for '{table_id}'"
        )));
    }
    let cfg = with_mc(study.config(), mc);
    let outcome = execute(&cfg)?;
    let labels = outcome.surrogate.output_labels().to_vec();
    let mut t = ResultTable::new(labels.clone()).meta("table", table_id);
    describe(&mut t, &cfg);

    if let Some(stat) = Stat::parse(kind) {
        match study {
            BuiltinStudy::Erlang | BuiltinStudy::Hyperexp => {
                let scale = if stat == Stat::Var { 1e-4 } else { 1.0 };
                t.push_column("pc", stat.of(&outcome.moments), scale)?;
                mc_columns(&mut t, &outcome, stat, "", scale)?;
            }
            _ => {
                let scale = if stat == Stat::Var { 1e-6 } else { 1.0 };
                let by_lambda = execute(&BuiltinStudy::ThresholdLambda.config())?;
                let by_alpha = execute(&BuiltinStudy::ThresholdAlpha.config())?;
                let (l, a) = (stat.of(&by_lambda.moments), stat.of(&by_alpha.moments));
                let one_rv = labels
                    .iter()
                    .enumerate()
                    .map(|(i, r)| if ALPHA_ONLY_ROWS.contains(&r.as_str()) { a[i] } else { l[i] })
                    .collect();
                t.push_meta("one_rv_input", format!("lambda (alpha for {})", ALPHA_ONLY_ROWS.join(", ")));
                t.push_column("pc_1rv", one_rv, scale)?;
                t.push_column("pc_4rv", stat.of(&outcome.moments), scale)?;
                mc_columns(&mut t, &outcome, stat, "_4rv", scale)?;
            }
        }
        return Ok(t);
    }

    let report = outcome.sobol.as_ref().expect("threshold study computes Sobol' indices");
    let names = &report.inputs;
    match kind {
        "sobol1" | "sobol-total" => {
            let total = kind == "sobol-total";
            for name in SOBOL_ORDER {
                let i = position(names, name);
                let values = report
                    .outputs
                    .iter()
                    .map(|o| if total { o.total(i) } else { o.first_order(i) })
                    .collect();
                let col = if total { format!("ST_{name}") } else { format!("S_{name}") };
                t.push_column(col, values, 1.0)?;
            }
        }
        "sobol2" => {
            for (a, b, scale) in SOBOL_PAIRS {
                let (i, j) = (position(names, a), position(names, b));
                let values = report.outputs.iter().map(|o| o.second_order(i, j)).collect();
                t.push_column(format!("S_{a}_{b}"), values, scale)?;
            }
        }
        _ => unreachable!("table ids are validated"),
    }
    Ok(t)
}

/// Long-format KDE curves (`output, abscissa, density`) for each output of
/// the study behind `table_id`.
pub fn density(table_id: &str, mc: McConfig, grid: usize) -> Result<ResultTable, CliError> {
    let cfg = with_mc(study_for(table_id)?.config(), Some(mc));
    let samples = sample(&cfg, mc)?;
    let mut rows = Vec::new();
    let mut xs = Vec::new();
    let mut fs = Vec::new();
    let mut bandwidths = Vec::new();
    for (l, label) in samples.output_labels.iter().enumerate() {
        let curve = kde(&samples.output_column(l), grid)?;
        rows.extend(std::iter::repeat_n(label.clone(), grid));
        xs.extend(curve.abscissae);
        fs.extend(curve.density);
        bandwidths.push(format!("{label}={:.6e}", curve.bandwidth));
    }
    let mut t = ResultTable::new(rows).meta("table", table_id);
    describe(&mut t, &cfg);
    t.push_meta("kernel", "gaussian");
    t.push_meta("bandwidth_rule", "silverman 1.06*s*n^(-1/5)");
    t.push_meta("bandwidth", bandwidths.join(" "));
    t.push_meta("grid", grid);
    t.push_column("abscissa", xs, 1.0)?;
    t.push_column("density", fs, 1.0)?;
    Ok(t)
}
