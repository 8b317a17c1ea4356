use proptest::prelude::*;
use uq_core::orthopoly::{standard_table, stieltjes_recurrence, StandardFamily, DEFAULT_STIELTJES_RESOLUTION};
use uq_core::quadrature::{gauss_rule, integrate, TensorGrid};

const FAMILIES: [StandardFamily; 2] = [StandardFamily::HermiteProbabilists, StandardFamily::LegendreUniform];

/// E[x^k] under the family's probability measure.
fn exact_moment(family: StandardFamily, k: u32) -> f64 {
    if k % 2 == 1 {
        return 0.0;
    }
    match family {
        // (k−1)!!
        StandardFamily::HermiteProbabilists => (1..k).step_by(2).map(f64::from).product(),
        StandardFamily::LegendreUniform => 1.0 / f64::from(k + 1),
    }
}

#[test]
fn gram_matrix_is_identity() {
    for family in FAMILIES {
        let table = standard_table::<f64>(family, 8).unwrap();
        let rule = gauss_rule(&table, 8).unwrap();
        for i in 0..=5 {
            for j in 0..=5 {
                let g = rule.integrate_1d(|x| {
                    table.eval_orthonormal(i, x).unwrap() * table.eval_orthonormal(j, x).unwrap()
                });
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((g - e).abs() <= 1e-12, "{family:?} <{i},{j}> = {g}");
            }
        }
    }
}

#[test]
fn stieltjes_matches_legendre() {
    let uniform = |_x: f64| 0.5;
    for n in 1..=8 {
        let computed = stieltjes_recurrence(&uniform, -1.0, 1.0, n, DEFAULT_STIELTJES_RESOLUTION).unwrap();
        let exact = standard_table::<f64>(StandardFamily::LegendreUniform, n).unwrap();
        for (c, e) in computed.a().iter().zip(exact.a()) {
            assert!((c - e).abs() <= 1e-10, "n={n}: a {c} vs {e}");
        }
        assert_eq!(computed.b().len(), exact.b().len());
        for (c, e) in computed.b().iter().zip(exact.b()) {
            assert!((c - e).abs() <= 1e-10, "n={n}: b {c} vs {e}");
        }
    }
}

#[test]
fn quadrature_exact_to_degree_2n_minus_1_and_not_beyond() {
    for family in FAMILIES {
        for n_g in 2..=6 {
            let table = standard_table::<f64>(family, n_g).unwrap();
            let rule = gauss_rule(&table, n_g).unwrap();
            for k in 0..2 * n_g as u32 {
                let q = rule.integrate_1d(|x| x.powi(k as i32));
                let e = exact_moment(family, k);
                // odd moments vanish by cancellation, so measure against Σ w|x|^k
                let scale = rule.integrate_1d(|x| x.abs().powi(k as i32));
                assert!((q - e).abs() <= 1e-12 * scale, "{family:?} n_g={n_g} k={k}: {q} vs {e}");
            }
            let k = 2 * n_g as u32;
            let q = rule.integrate_1d(|x| x.powi(k as i32));
            let e = exact_moment(family, k);
            assert!((q - e).abs() > 1e-6 * e, "{family:?} n_g={n_g} unexpectedly exact at {k}");
        }
    }
}

#[test]
fn node_placement() {
    for n_g in 1..=12 {
        let l = gauss_rule(&standard_table::<f64>(StandardFamily::LegendreUniform, n_g).unwrap(), n_g).unwrap();
        assert!(l.nodes().iter().all(|&x| x > -1.0 && x < 1.0));
        assert!(l.weights().iter().all(|&w| w > 0.0));
        assert!((l.weights().iter().sum::<f64>() - 1.0).abs() < 1e-14);

        let h = gauss_rule(&standard_table::<f64>(StandardFamily::HermiteProbabilists, n_g).unwrap(), n_g).unwrap();
        let (x, w) = (h.nodes(), h.weights());
        for i in 0..n_g {
            assert!((x[i] + x[n_g - 1 - i]).abs() < 1e-12, "asymmetric nodes {x:?}");
            assert!((w[i] - w[n_g - 1 - i]).abs() < 1e-12, "asymmetric weights {w:?}");
        }
        assert!(x.windows(2).all(|p| p[0] < p[1]));
    }
}

#[test]
fn tensor_grid_integrates_products() {
    let h = standard_table::<f64>(StandardFamily::HermiteProbabilists, 4).unwrap();
    let l = standard_table::<f64>(StandardFamily::LegendreUniform, 3).unwrap();
    let grid = TensorGrid::new(vec![gauss_rule(&h, 4).unwrap(), gauss_rule(&l, 3).unwrap()]).unwrap();
    assert_eq!(grid.len(), 12);
    // E[x^4 y^2] = 3 · 1/3
    let v = integrate(|p: &[f64]| vec![p[0].powi(4) * p[1].powi(2), 1.0], &grid).unwrap();
    assert!((v[0] - 1.0).abs() < 1e-13);
    assert!((v[1] - 1.0).abs() < 1e-14);
}

proptest! {
    #[test]
    fn monic_kth_difference_is_factorial(k in 0usize..=7, x0 in -2.0f64..2.0, hermite in any::<bool>()) {
        let family = if hermite { StandardFamily::HermiteProbabilists } else { StandardFamily::LegendreUniform };
        let table = standard_table::<f64>(family, 8).unwrap();
        // k-th forward difference with unit step: Σ (−1)^{k−i} C(k,i) P(x0+i)
        let mut diff = 0.0;
        let mut binom = 1.0;
        for i in 0..=k {
            let sign = if (k - i) % 2 == 0 { 1.0 } else { -1.0 };
            diff += sign * binom * table.eval_ortho(k, x0 + i as f64).unwrap();
            binom = binom * (k - i) as f64 / (i + 1) as f64;
        }
        let fact: f64 = (1..=k).map(|v| v as f64).product();
        prop_assert!((diff - fact).abs() <= 1e-8 * fact.max(1.0), "k={k}: {diff} vs {fact}");
    }

    #[test]
    fn random_polynomials_integrate_exactly(
        coeffs in prop::collection::vec(-3.0f64..3.0, 1..=10),
        hermite in any::<bool>(),
    ) {
        let family = if hermite { StandardFamily::HermiteProbabilists } else { StandardFamily::LegendreUniform };
        let deg = coeffs.len() - 1;
        let n_g = deg / 2 + 1;
        let table = standard_table::<f64>(family, n_g).unwrap();
        let rule = gauss_rule(&table, n_g).unwrap();
        let q = rule.integrate_1d(|x| coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c));
        let exact: f64 = coeffs.iter().enumerate().map(|(k, c)| c * exact_moment(family, k as u32)).sum();
        let scale: f64 = coeffs.iter().enumerate().map(|(k, c)| (c * exact_moment(family, k as u32)).abs()).sum();
        prop_assert!((q - exact).abs() <= 1e-12 * scale.max(1.0));
    }
}
