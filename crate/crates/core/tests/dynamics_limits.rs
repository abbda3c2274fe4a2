use std::f64::consts::FRAC_PI_2;

use cspin_core::dynamics::{
    initial_state, squeezing_time_series, uniform_grid, IsotropicPropagator, Propagation, SpectralPropagator,
};
use cspin_core::squeezing::squeezing_report;
use cspin_core::{ModelKind, ModelParams};

fn sup_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[test]
fn central_series_converges_to_lmg_with_eta() {
    let times = uniform_grid(0.0, 10.0, 101);
    let mut prev = f64::INFINITY;
    for eta in [1e3, 1e4, 1e5] {
        let p = ModelParams::new(200, 1.0, eta, 2.0, 0.0).unwrap();
        let exact = squeezing_time_series(ModelKind::Central, &p, FRAC_PI_2, &times, Propagation::Exact).unwrap();
        let lmg = squeezing_time_series(ModelKind::Lmg, &p, FRAC_PI_2, &times, Propagation::Numeric).unwrap();
        let d = sup_diff(&exact.xi_s2, &lmg.xi_s2);
        assert!(d < prev, "η={eta}: {d} !< {prev}");
        prev = d;
    }
}

#[test]
fn analytic_moments_equal_isotropic_lmg_evolution() {
    let p = ModelParams::new(60, 1.0, 1e5, 2.0, 0.0).unwrap();
    let times = uniform_grid(0.0, 12.0, 61);
    let a = squeezing_time_series(ModelKind::Lmg, &p, 1.1, &times, Propagation::Analytic).unwrap();
    let n = squeezing_time_series(ModelKind::Lmg, &p, 1.1, &times, Propagation::Numeric).unwrap();
    assert!(sup_diff(&a.xi_s2, &n.xi_s2) < 1e-9);
}

#[test]
fn anisotropic_evolution_conserves_norm_and_wineland_identity() {
    let p = ModelParams::new(24, 1.0, 20.0, 1.5, 0.4).unwrap();
    let psi0 = initial_state(ModelKind::Central, 24, 0.9).unwrap();
    let prop = SpectralPropagator::new(&ModelKind::Central.hamiltonian(&p)).unwrap();
    for t in [0.0, 1.3, 7.7, 30.0] {
        let psi = prop.evolve(&psi0, t).unwrap();
        let norm: f64 = psi.amplitudes().iter().map(|z| z.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-10);
        let r = squeezing_report(&psi);
        if let Some(xr) = r.xi_r2 {
            let lhs = xr * r.mean_spin_norm.powi(2);
            let rhs = r.xi_s2 * 12.0 * 12.0;
            assert!((lhs - rhs).abs() < 1e-9 * rhs.max(1.0));
        }
    }
}

#[test]
fn isotropic_propagator_composes_in_time() {
    let p = ModelParams::new(16, 1.0, 8.0, 1.2, 0.0).unwrap();
    let prop = IsotropicPropagator::new(&p, 0.6).unwrap();
    let spectral = SpectralPropagator::new(&ModelKind::Central.hamiltonian(&p)).unwrap();
    let mid = prop.state_at(2.0).unwrap();
    let later = spectral.evolve(&mid, 3.5).unwrap();
    assert!(later.distance(&prop.state_at(5.5).unwrap()).unwrap() < 1e-9);
}
