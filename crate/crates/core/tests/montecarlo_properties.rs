use uq_core::montecarlo::{draw_samples, evaluate_samples, kde, mc_moments, sample_moments};
use uq_core::pce::{default_moment_points, enumerate_basis, moments, project, InputSpec, UncertainParam};
use uq_core::queueing::{mg1n_matrix, stationary_dtmc, MG1NParams, ServiceDistribution};
use uq_core::FnModel;

fn germ_column(spec: &InputSpec<f64>, n: usize, seed: u64) -> Vec<f64> {
    draw_samples(spec, n, seed).germs.into_iter().map(|g| g[0]).collect()
}

fn mean_var(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    let v = xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1.0);
    (m, v)
}

#[test]
fn uniform_germ_moments() {
    let spec = InputSpec::new(vec![UncertainParam::uniform("u", 0.0, 1.0).allow_nonpositive()]).unwrap();
    let xs = germ_column(&spec, 1_000_000, 2024);
    let (m, v) = mean_var(&xs);
    assert!(m.abs() < 0.004, "mean {m}");
    assert!((v - 1.0 / 3.0).abs() < 0.01, "var {v}");
    assert!(xs.iter().all(|&x| (-1.0..1.0).contains(&x)));
}

#[test]
fn normal_germ_kurtosis() {
    let spec = InputSpec::new(vec![UncertainParam::normal("z", 0.0, 1.0).allow_nonpositive()]).unwrap();
    let xs = germ_column(&spec, 1_000_000, 77);
    let (m, v) = mean_var(&xs);
    let m4 = xs.iter().map(|x| (x - m).powi(4)).sum::<f64>() / xs.len() as f64;
    let kurt = m4 / (v * v);
    assert!((kurt - 3.0).abs() < 0.05, "kurtosis {kurt}");
    assert!(m.abs() < 0.005 && (v - 1.0).abs() < 0.01);
}

#[test]
fn kde_of_standard_normal() {
    let spec = InputSpec::new(vec![UncertainParam::normal("z", 0.0, 1.0).allow_nonpositive()]).unwrap();
    let xs = germ_column(&spec, 100_000, 5);
    let curve = kde(&xs, 513).unwrap();
    let h = curve.bandwidth;
    let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    assert!((curve.abscissae[0] - (lo - 3.0 * h)).abs() < 1e-12);
    assert!((curve.abscissae[512] - (hi + 3.0 * h)).abs() < 1e-12);
    // evaluate at 0 by interpolating the grid
    let i = curve.abscissae.iter().position(|&x| x >= 0.0).unwrap();
    let (x0, x1) = (curve.abscissae[i - 1], curve.abscissae[i]);
    let t = -x0 / (x1 - x0);
    let at0 = curve.density[i - 1] * (1.0 - t) + curve.density[i] * t;
    assert!((at0 - 0.3989).abs() < 0.02, "{at0}");
    assert!((curve.integral() - 1.0).abs() < 0.02);
}

#[test]
fn determinism_across_thread_counts() {
    let spec = InputSpec::new(vec![
        UncertainParam::uniform("a", 2.0, 0.5),
        UncertainParam::normal("b", 3.0, 0.1),
    ])
    .unwrap();
    let model = FnModel::new(["y", "z"], |t: &[f64]| Ok(vec![t[0] * t[1], (t[0] / t[1]).sin()]));
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let mut s = draw_samples(&spec, 20_000, 99);
            evaluate_samples(&model, &spec, &mut s).unwrap();
            s
        })
    };
    let (one, four) = (run(1), run(4));
    assert_eq!(one, four);
    let m1 = sample_moments(&one).unwrap();
    let m4 = mc_moments(&model, &spec, 20_000, 99).unwrap();
    assert_eq!(m1, m4);
}

#[test]
fn mc_agrees_with_pc_on_erlang_queue() {
    let spec = InputSpec::new(vec![UncertainParam::uniform("theta", 0.5, 0.28)]).unwrap();
    let labels: Vec<String> = (0..7).map(|i| format!("pi_{i}")).collect();
    let model = FnModel::new(labels, |t: &[f64]| {
        let p = MG1NParams {
            capacity: 7,
            lambda: 1.0,
            r: 0.4,
            theta: t[0],
            service: ServiceDistribution::GeneralizedErlang2 { mu1: 4.0, mu2: 2.0 },
        };
        Ok(stationary_dtmc(&mg1n_matrix(&p)?)?.probabilities)
    });
    let basis = enumerate_basis(4, spec.tables(5).unwrap()).unwrap();
    let pc = project(&model, &spec, &basis, &[6]).unwrap();
    let pc_m = moments(&pc, default_moment_points(4)).unwrap();
    let n = 100_000;
    let mc = mc_moments(&model, &spec, n, 1).unwrap();
    for l in 0..7 {
        let se = (mc.variance[l] / n as f64).sqrt();
        let z = (mc.mean[l] - pc_m.mean[l]).abs() / se;
        assert!(z < 4.0, "{}: MC {} PC {} ({z:.2} SE)", mc.labels[l], mc.mean[l], pc_m.mean[l]);
        // variances of a smooth function agree to sampling accuracy
        assert!((mc.variance[l] / pc_m.variance[l] - 1.0).abs() < 0.05);
    }
}
