use proptest::prelude::*;
use uq_core::pce::{
    basis_size, default_moment_points, enumerate_basis, moments, project, sobol, total_degree_indices, Germ,
    InputSpec, PceSurrogate, UncertainParam,
};
use uq_core::{FnModel, Model};

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Germ-space inputs: θ_i = ε_i.
fn unit_spec(germs: &[Germ]) -> InputSpec<f64> {
    InputSpec::new(
        germs
            .iter()
            .enumerate()
            .map(|(i, &g)| UncertainParam::new(format!("x{i}"), g, 0.0, 1.0).allow_nonpositive())
            .collect(),
    )
    .unwrap()
}

/// Random polynomial `Σ c_α x^α` over the total-degree-`p` monomials.
struct Poly {
    terms: Vec<(Vec<usize>, f64)>,
}

impl Poly {
    fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(a, c)| c * a.iter().zip(x).map(|(&k, &v)| v.powi(k as i32)).product::<f64>())
            .sum()
    }
}

fn fit(spec: &InputSpec<f64>, p: usize, model: &dyn Model<f64>) -> PceSurrogate<f64> {
    let basis = enumerate_basis(p, spec.tables(p + 1).unwrap()).unwrap();
    project(model, spec, &basis, &vec![p + 1; spec.dim()]).unwrap()
}

fn germs_strategy() -> impl Strategy<Value = Vec<Germ>> {
    prop::collection::vec(prop_oneof![Just(Germ::Uniform), Just(Germ::Normal)], 1..=3)
}

#[test]
fn basis_cardinality() {
    for d in 1..=5 {
        for p in 0..=5 {
            let expect = binomial(p + d, d);
            assert_eq!(basis_size(d, p), expect);
            let idx = total_degree_indices(d, p);
            assert_eq!(idx.len(), expect);
            assert!(idx.iter().all(|a| a.total_degree() <= p));
            let unique: std::collections::HashSet<_> = idx.iter().collect();
            assert_eq!(unique.len(), expect);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn reproduces_polynomials(germs in germs_strategy(), p in 1usize..=3, seed in any::<u64>()) {
        let d = germs.len();
        let spec = unit_spec(&germs);
        let mut state = seed | 1;
        let mut next = move || {
            // xorshift; only used to pick coefficients and probe points
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
        };
        let poly = Poly {
            terms: total_degree_indices(d, p)
                .into_iter()
                .map(|a| (a.as_slice().to_vec(), next() * 2.0))
                .collect(),
        };
        let model = FnModel::new(["y"], |x: &[f64]| Ok(vec![poly.eval(x)]));
        let s = fit(&spec, p, &model);
        for _ in 0..100 {
            let x: Vec<f64> = (0..d).map(|_| next() * 2.0).collect();
            let got = s.eval(&x).unwrap()[0];
            let want = poly.eval(&x);
            prop_assert!((got - want).abs() <= 1e-10 * want.abs().max(1.0), "{got} vs {want} at {x:?}");
        }
    }

    #[test]
    fn variance_and_sobol_consistency(germs in germs_strategy(), p in 1usize..=3, c in -2.0f64..2.0) {
        let spec = unit_spec(&germs);
        let model = FnModel::new(["y"], |x: &[f64]| {
            let s: f64 = x.iter().enumerate().map(|(i, v)| (i as f64 + 1.0) * v).sum();
            Ok(vec![(0.3 * s).exp() + c * x.iter().product::<f64>()])
        });
        let s = fit(&spec, p, &model);
        let var = s.variance()[0];
        let m = moments(&s, default_moment_points(p)).unwrap();
        prop_assert!((m.variance[0] - var).abs() <= 1e-12 * var.max(1e-300));
        prop_assert!((m.mean[0] - s.mean()[0]).abs() <= 1e-12 * s.mean()[0].abs().max(1.0));
        prop_assert!(m.kurtosis[0] >= 1.0 + m.skewness[0].powi(2) - 1e-9);

        let r = sobol(&s).unwrap();
        let o = &r.outputs[0];
        let total: f64 = o.iter().map(|(_, v)| v).sum();
        prop_assert!((total - 1.0).abs() <= 1e-10);
        for i in 0..spec.dim() {
            prop_assert!(o.total(i) >= o.first_order(i) - 1e-12);
            prop_assert!(o.total(i) <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn sobol_is_scale_invariant(germs in germs_strategy(), k in 0.1f64..50.0) {
        let spec = unit_spec(&germs);
        let f = |x: &[f64]| x.iter().enumerate().map(|(i, v)| (v + 0.5 * i as f64).sin()).sum::<f64>();
        let base = FnModel::new(["y"], |x: &[f64]| Ok(vec![f(x)]));
        let scaled = FnModel::new(["y"], |x: &[f64]| Ok(vec![k * f(x) + 3.0]));
        let (a, b) = (fit(&spec, 3, &base), fit(&spec, 3, &scaled));
        prop_assert!((b.variance()[0] - k * k * a.variance()[0]).abs() <= 1e-10 * b.variance()[0]);
        let (sa, sb) = (sobol(&a).unwrap(), sobol(&b).unwrap());
        for ((ta, va), (tb, vb)) in sa.outputs[0].iter().zip(sb.outputs[0].iter()) {
            prop_assert_eq!(ta, tb);
            prop_assert!((va - vb).abs() <= 1e-10);
        }
    }
}

#[test]
fn additive_model_has_no_interactions() {
    let spec = unit_spec(&[Germ::Normal, Germ::Uniform, Germ::Normal]);
    let model = FnModel::new(["y"], |x: &[f64]| Ok(vec![x[0] + 2.0 * x[1].powi(2) + (0.5 * x[2]).exp()]));
    let s = fit(&spec, 4, &model);
    let o = &sobol(&s).unwrap().outputs[0];
    for (subset, v) in o.iter() {
        if subset.len() > 1 {
            assert!(v.abs() < 1e-14, "{subset:?}: {v}");
        }
    }
    for i in 0..3 {
        assert!((o.total(i) - o.first_order(i)).abs() < 1e-12);
    }
}
