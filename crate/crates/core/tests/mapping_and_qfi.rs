use cspin_core::criticality::{qfi_peak, qfi_scan};
use cspin_core::spectrum::lowest_energies;
use cspin_core::swmap::mapping_report;
use cspin_core::{ModelKind, ModelParams};

#[test]
fn low_energy_spectrum_matches_lmg_block() {
    let p = ModelParams::new(50, 1.0, 1e5, 1.0, 1.0).unwrap();
    let central = lowest_energies(ModelKind::Central, &p, 5).unwrap();
    let lmg = lowest_energies(ModelKind::Lmg, &p, 5).unwrap();
    for (a, b) in central.iter().zip(&lmg) {
        assert!((a - b).abs() <= 1e-3 * a.abs());
    }
}

#[test]
fn block_error_falls_about_a_decade_per_decade() {
    let errs: Vec<f64> = [1e2, 1e3, 1e4]
        .iter()
        .map(|&eta| mapping_report(&ModelParams::new(20, 1.0, eta, 1.0, 1.0).unwrap()).unwrap().block_error_abs)
        .collect();
    for w in errs.windows(2) {
        let decades = (w[0] / w[1]).log10();
        assert!((0.7..=2.3).contains(&decades), "{decades}");
    }
}

#[test]
fn qfi_peak_grows_and_sharpens_with_size() {
    let mut prev_f = 0.0;
    let mut prev_dist = f64::INFINITY;
    for n in [100, 200, 400] {
        let p = ModelParams::new(n, 1.0, 1e5, 1.0, 1.0).unwrap();
        let curve = qfi_scan(ModelKind::Lmg, &p, 0.8, 1.3, 26).unwrap();
        let pk = qfi_peak(&curve).unwrap();
        assert!(pk.f_max > prev_f);
        let dist = (pk.g_m - 1.0).abs();
        assert!(dist < prev_dist);
        prev_f = pk.f_max;
        prev_dist = dist;
    }
}
