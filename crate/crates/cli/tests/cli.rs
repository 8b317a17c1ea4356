use std::path::Path;
use std::process::{Command, Output};

use uq_cli::builtin::BuiltinStudy;
use uq_cli::{density, reproduce, McConfig, ResultTable, StudyConfig, TABLE_IDS};

fn uq(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_uq"));
    cmd.args(args);
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn write_config(dir: &Path, cfg: &StudyConfig) -> String {
    let path = dir.join("study.json");
    std::fs::write(&path, cfg.to_json()).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn run_matches_reproduce() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = write_config(dir.path(), &BuiltinStudy::Erlang.config());
    let out = dir.path().join("out");
    let o = uq(&["run", &cfg_path, "--out", out.to_str().unwrap()], &[]);
    stdout(&o);
    let run = ResultTable::from_csv_str(&std::fs::read_to_string(out.join("results.csv")).unwrap()).unwrap();
    let table = ResultTable::from_csv_str(&stdout(&uq(&["reproduce", "me2-mean"], &[]))).unwrap();
    assert_eq!(run.rows, table.rows);
    assert_eq!(run.column("mean").unwrap().values, table.column("pc").unwrap().values);

    let surrogate = std::fs::read_to_string(out.join("surrogate.json")).unwrap();
    let s = uq_core::PceSurrogate::from_json(&surrogate).unwrap();
    assert_eq!(s.degree(), 4);
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("run-metadata.json")).unwrap()).unwrap();
    assert_eq!(meta["schema"], "uq-run/1");
    assert_eq!(meta["config"]["p"], 4);
    assert_eq!(meta["model_evaluations"], 6);
}

#[test]
fn degree_zero_study() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = BuiltinStudy::Erlang.config();
    cfg.p = 0;
    cfg.n_g = 1;
    let out = dir.path().join("out");
    stdout(&uq(&["run", &write_config(dir.path(), &cfg), "--out", out.to_str().unwrap()], &[]));
    let t = ResultTable::from_csv_str(&std::fs::read_to_string(out.join("results.csv")).unwrap()).unwrap();
    assert!(t.column("variance").unwrap().values.iter().all(|&v| v == 0.0));

    cfg.sobol = true;
    let o = uq(&["run", &write_config(dir.path(), &cfg)], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("sobol"));
}

#[test]
fn validation_and_numerical_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = BuiltinStudy::Erlang.config();
    cfg.n_g = 4;
    let o = uq(&["run", &write_config(dir.path(), &cfg)], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("n_g"));

    // breakdown probability leaves [0,1] at outer Gauss-Hermite nodes
    let mut cfg = BuiltinStudy::Erlang.config();
    cfg.uncertain = vec![uq_core::UncertainParam::normal("theta", 0.5, 0.3).allow_nonpositive()];
    let o = uq(&["run", &write_config(dir.path(), &cfg)], &[]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stderr).contains("germ node"));

    std::fs::write(dir.path().join("bad.json"), "{not json").unwrap();
    let o = uq(&["run", dir.path().join("bad.json").to_str().unwrap()], &[]);
    assert_eq!(o.status.code(), Some(2));

    let o = uq(&["reproduce", "me2-mean"], &[("UQ_THREADS", "zero")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reproduce_is_deterministic_across_runs_and_threads() {
    let args = ["reproduce", "me2-var", "--mc", "2000", "--seed", "11"];
    let a = stdout(&uq(&args, &[]));
    let b = stdout(&uq(&args, &[("UQ_THREADS", "1")]));
    let c = stdout(&uq(&args, &[("UQ_THREADS", "3")]));
    assert_eq!(a, b);
    assert_eq!(a, c);
    assert!(a.contains("# seed: 11") && a.contains("# normal_transform: marsaglia-polar"));
    let d = stdout(&uq(&["reproduce", "me2-var", "--mc", "2000", "--seed", "12"], &[]));
    assert_ne!(a, d);
}

#[test]
fn every_table_round_trips_through_csv() {
    let small = McConfig { samples: 300, seed: 4 };
    for id in TABLE_IDS {
        let mc = if id.ends_with("density") { Some(small) } else { None };
        let t = reproduce(id, mc).unwrap();
        let text = t.to_csv_string().unwrap();
        let back = ResultTable::from_csv_str(&text).unwrap();
        assert_eq!(back, t, "{id}");
        assert_eq!(back.to_csv_string().unwrap(), text, "{id}");
        assert!(text.lines().find(|l| !l.starts_with('#')).unwrap().starts_with("output,"));
    }
}

#[test]
fn density_command_curves_integrate_to_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.csv");
    stdout(&uq(
        &["density", "mh2-density", "--samples", "5000", "--seed", "3", "--out", path.to_str().unwrap()],
        &[],
    ));
    let t = ResultTable::from_csv_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let x = &t.column("abscissa").unwrap().values;
    let f = &t.column("density").unwrap().values;
    for label in (0..7).map(|i| format!("pi_{i}")) {
        let idx: Vec<usize> = (0..t.rows.len()).filter(|&i| t.rows[i] == label).collect();
        assert!(idx.windows(2).all(|w| x[w[1]] > x[w[0]]));
        let mass: f64 = idx.windows(2).map(|w| (x[w[1]] - x[w[0]]) * (f[w[0]] + f[w[1]]) / 2.0).sum();
        assert!((0.98..=1.001).contains(&mass), "{label}: {mass}");
    }
    let lib = density("mh2-density", McConfig { samples: 5000, seed: 3 }, 512).unwrap();
    assert_eq!(lib, t);
}

#[test]
fn output_selection_and_sobol_columns() {
    let mut cfg = BuiltinStudy::Threshold4.config();
    cfg.outputs = Some(vec!["pi_0_1".into(), "pi_1_3".into()]);
    let outcome = uq_cli::execute(&cfg).unwrap();
    let t = outcome.results_table().unwrap();
    assert_eq!(t.rows, vec!["pi_0_1", "pi_1_3"]);
    let s_alpha = t.value("pi_0_1", "S_alpha").unwrap();
    let st_alpha = t.value("pi_0_1", "ST_alpha").unwrap();
    assert!(st_alpha >= s_alpha && s_alpha > 0.7);
    assert!(t.column("S_alpha_beta").is_some());
}
