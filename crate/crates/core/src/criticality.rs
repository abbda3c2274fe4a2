//! Ground-state quantum Fisher information, its peak, and power-law fits.
//!
//! The QFI of a pure-state family is computed from the fidelity
//! `F ≈ 8 (1 − |⟨ψ(g)|ψ(g+δ)⟩|) / δ²`, Richardson-extrapolated in `δ`.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::model::{ModelKind, ModelParams};
use crate::spectrum::even_ground_state;

/// Maximum number of step halvings in [`qfi_of_family`].
pub const MAX_HALVINGS: u32 = 6;
/// Relative change accepted between successive step sizes.
pub const QFI_RTOL: f64 = 0.01;
const QFI_ATOL: f64 = 1e-10;

pub fn default_delta(g: f64) -> f64 {
    1e-4 * g.abs().max(1.0)
}

/// `1 − |⟨a|b⟩|`, computed as `‖a − e^{iφ} b‖² / 2` to avoid cancellation.
pub fn infidelity(a: &[C64], b: &[C64]) -> f64 {
    let ov: C64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    let r = ov.norm();
    if r == 0.0 {
        return 1.0;
    }
    let ph = ov.conj() / r;
    let d: f64 = a.iter().zip(b).map(|(x, y)| (x - y * ph).norm_sqr()).sum();
    d / 2.0
}

fn fidelity_qfi<F>(family: &mut F, psi: &[C64], g: f64, delta: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<Vec<C64>>,
{
    let shifted = family(g + delta)?;
    Ok(8.0 * infidelity(psi, &shifted) / (delta * delta))
}

/// QFI of an arbitrary normalized family at `g`, starting from step `delta`.
pub fn qfi_of_family<F>(mut family: F, g: f64, delta: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<Vec<C64>>,
{
    let psi = family(g)?;
    let mut d = delta;
    let mut coarse = fidelity_qfi(&mut family, &psi, g, d)?;
    for _ in 0..=MAX_HALVINGS {
        let fine = fidelity_qfi(&mut family, &psi, g, d / 2.0)?;
        if (fine - coarse).abs() <= QFI_RTOL * fine.abs() + QFI_ATOL {
            return Ok((2.0 * fine - coarse).max(0.0));
        }
        coarse = fine;
        d /= 2.0;
    }
    Err(Error::NonConvergence {
        halvings: MAX_HALVINGS,
    })
}

/// QFI of the even-sector ground state with respect to `g̃`.
pub fn qfi_at(kind: ModelKind, p: &ModelParams, g: f64, delta: f64) -> Result<f64> {
    qfi_of_family(
        |x| Ok(even_ground_state(kind, &p.with_g(x)?)?.state.into_amplitudes()),
        g,
        delta,
    )
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct QfiCurve {
    pub kind: ModelKind,
    pub params: ModelParams,
    pub g_values: Vec<f64>,
    pub f_values: Vec<f64>,
}

pub fn qfi_scan(kind: ModelKind, p: &ModelParams, g_start: f64, g_stop: f64, n_points: usize) -> Result<QfiCurve> {
    let g_values = crate::dynamics::uniform_grid(g_start, g_stop, n_points);
    let f_values = g_values
        .iter()
        .map(|&g| qfi_at(kind, p, g, default_delta(g)))
        .collect::<Result<Vec<_>>>()?;
    Ok(QfiCurve {
        kind,
        params: *p,
        g_values,
        f_values,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct QfiPeak {
    pub g_m: f64,
    pub f_max: f64,
}

/// Golden-section search for the maximum of `f` on `[lo, hi]`.
pub fn refine_peak<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<QfiPeak>
where
    F: FnMut(f64) -> Result<f64>,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while (b - a).abs() > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
    }
    Ok(if fc > fd {
        QfiPeak { g_m: c, f_max: fc }
    } else {
        QfiPeak { g_m: d, f_max: fd }
    })
}

/// Grid argmax of a sampled curve refined with `eval` inside the bracketing cells.
pub fn refine_sampled_peak<F>(x: &[f64], y: &[f64], eval: F, tol: f64) -> Result<QfiPeak>
where
    F: FnMut(f64) -> Result<f64>,
{
    if x.len() < 3 || x.len() != y.len() {
        return Err(Error::InsufficientPoints {
            needed: 3,
            got: x.len().min(y.len()),
        });
    }
    let (i, &fy) = y
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty");
    if i == 0 || i == x.len() - 1 {
        return Err(Error::PeakAtBoundary { at: x[i] });
    }
    let refined = refine_peak(eval, x[i - 1], x[i + 1], tol)?;
    Ok(if refined.f_max >= fy {
        refined
    } else {
        QfiPeak { g_m: x[i], f_max: fy }
    })
}

/// Peak tolerance in `g̃`.
pub const PEAK_TOL: f64 = 1e-4;

pub fn qfi_peak(curve: &QfiCurve) -> Result<QfiPeak> {
    refine_sampled_peak(
        &curve.g_values,
        &curve.f_values,
        |g| qfi_at(curve.kind, &curve.params, g, default_delta(g)),
        PEAK_TOL,
    )
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ScalingFit {
    pub exponent: f64,
    pub log_prefactor: f64,
    pub r_squared: f64,
    pub points: Vec<(f64, f64)>,
}

/// Least squares for `ln y = ln c + μ ln x`.
pub fn loglog_fit(points: &[(f64, f64)]) -> Result<ScalingFit> {
    if points.len() < 3 {
        return Err(Error::InsufficientPoints {
            needed: 3,
            got: points.len(),
        });
    }
    if let Some(&(x, y)) = points.iter().find(|(x, y)| !(*x > 0.0 && *y > 0.0)) {
        return Err(Error::NonPositiveInput { x, y });
    }
    let n = points.len() as f64;
    let lx: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ly.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = lx
        .iter()
        .zip(&ly)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let r_squared = if syy == 0.0 { 1.0 } else { (1.0 - ss_res / syy).clamp(0.0, 1.0) };
    Ok(ScalingFit {
        exponent: slope,
        log_prefactor: intercept,
        r_squared,
        points: points.to_vec(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct WindowExponent {
    pub n1: f64,
    pub n2: f64,
    pub exponent: f64,
}

/// Two-point exponents over consecutive pairs of `(N, F)` points.
pub fn windowed_exponents(points: &[(f64, f64)]) -> Result<Vec<WindowExponent>> {
    if points.len() < 2 {
        return Err(Error::InsufficientPoints {
            needed: 2,
            got: points.len(),
        });
    }
    points
        .windows(2)
        .map(|w| {
            let ((x1, y1), (x2, y2)) = (w[0], w[1]);
            if !(x1 > 0.0 && y1 > 0.0 && x2 > 0.0 && y2 > 0.0) {
                return Err(Error::NonPositiveInput { x: x1, y: y1 });
            }
            Ok(WindowExponent {
                n1: x1,
                n2: x2,
                exponent: (y2 / y1).ln() / (x2 / x1).ln(),
            })
        })
        .collect()
}

/// Scan window and resolution for a peak search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanRange {
    pub g_start: f64,
    pub g_stop: f64,
    pub n_points: usize,
}

pub fn peak_for_size(kind: ModelKind, base: &ModelParams, n_bath: usize, range: ScanRange) -> Result<QfiPeak> {
    let p = base.with_n(n_bath)?;
    let curve = qfi_scan(kind, &p, range.g_start, range.g_stop, range.n_points)?;
    qfi_peak(&curve)
}

/// Fit of `F(g̃m) ∝ N^μ` over `n_list`.
pub fn critical_exponent(kind: ModelKind, base: &ModelParams, n_list: &[usize], range: ScanRange) -> Result<ScalingFit> {
    if n_list.len() < 3 {
        return Err(Error::InsufficientPoints {
            needed: 3,
            got: n_list.len(),
        });
    }
    let points = n_list
        .iter()
        .map(|&n| peak_for_size(kind, base, n, range).map(|pk| (n as f64, pk.f_max)))
        .collect::<Result<Vec<_>>>()?;
    loglog_fit(&points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hermitian_eigen;
    use crate::linalg::CMatrix;
    use proptest::prelude::*;

    /// Ground state of `σz + g σx`.
    fn two_level(g: f64) -> Result<Vec<C64>> {
        let h = CMatrix::from_fn(2, 2, |r, c| match (r, c) {
            (0, 0) => C64::new(1.0, 0.0),
            (1, 1) => C64::new(-1.0, 0.0),
            _ => C64::new(g, 0.0),
        });
        let (_, v) = hermitian_eigen(&h)?;
        Ok(v.column(0))
    }

    #[test]
    fn two_level_oracle() {
        for i in 0..=40 {
            let g = -2.0 + 0.1 * i as f64;
            let f = qfi_of_family(two_level, g, default_delta(g)).unwrap();
            let want = 1.0 / (1.0 + g * g).powi(2);
            assert!((f - want).abs() < 1e-6, "g={g}: {f} vs {want}");
        }
    }

    #[test]
    fn constant_family_has_zero_qfi() {
        let f = qfi_of_family(|_| Ok(alloc::vec![C64::new(0.6, 0.0), C64::new(0.0, 0.8)]), 0.3, 1e-4).unwrap();
        assert!(f.abs() < 1e-6);
        let p = ModelParams::new(10, 1.0, 100.0, 0.0, 1.0).unwrap();
        let f = qfi_of_family(
            |_| Ok(even_ground_state(ModelKind::Central, &p)?.state.into_amplitudes()),
            0.0,
            1e-4,
        )
        .unwrap();
        assert!(f.abs() < 1e-6);
    }

    proptest! {
        #[test]
        fn gauge_invariance(g in -1.5f64..1.5, seed in 0u64..1000) {
            let plain = qfi_of_family(two_level, g, 1e-4).unwrap();
            let gauged = qfi_of_family(
                |x| {
                    let ph = C64::from_polar(1.0, (x * 1e3 + seed as f64).sin() * 3.0);
                    Ok(two_level(x)?.into_iter().map(|z| z * ph).collect())
                },
                g,
                1e-4,
            )
            .unwrap();
            prop_assert!((plain - gauged).abs() < 1e-10 * plain.max(1.0));
        }
    }

    #[test]
    fn lmg_peak_single_and_near_critical() {
        let p = ModelParams::new(200, 1.0, 1e5, 1.0, 1.0).unwrap();
        let curve = qfi_scan(ModelKind::Lmg, &p, 0.8, 1.2, 41).unwrap();
        assert!(curve.f_values.iter().all(|&f| f >= -1e-8));
        let pk = qfi_peak(&curve).unwrap();
        assert!((pk.g_m - 1.0).abs() < 0.1);
        let grid_max = curve.f_values.iter().cloned().fold(f64::MIN, f64::max);
        assert!(pk.f_max >= grid_max);
        let rev = qfi_scan(ModelKind::Lmg, &p, 1.2, 0.8, 41).unwrap();
        for (a, b) in curve.f_values.iter().zip(rev.f_values.iter().rev()) {
            assert!((a - b).abs() <= 1e-8 * a.abs());
        }
    }

    #[test]
    fn synthetic_parabola_peak() {
        let f = |x: f64| 5.0 - 2.0 * (x - 0.3217).powi(2);
        let x = crate::dynamics::uniform_grid(0.0, 1.0, 21);
        let y: Vec<f64> = x.iter().map(|&v| f(v)).collect();
        let pk = refine_sampled_peak(&x, &y, |v| Ok(f(v)), 1e-6).unwrap();
        assert!((pk.g_m - 0.3217).abs() < 1e-6);
        let y = x.clone();
        assert!(matches!(
            refine_sampled_peak(&x, &y, Ok, 1e-6),
            Err(Error::PeakAtBoundary { .. })
        ));
    }

    #[test]
    fn exact_power_law() {
        let pts: Vec<_> = [1.0, 2.0, 4.0, 8.0].iter().map(|&x| (x, 2.0 * x * x * x)).collect();
        let fit = loglog_fit(&pts).unwrap();
        assert!((fit.exponent - 3.0).abs() < 1e-12);
        assert!((fit.log_prefactor - 2f64.ln()).abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
        assert!(loglog_fit(&pts[..2]).is_err());
        assert!(matches!(loglog_fit(&[(1.0, 1.0), (2.0, 0.0), (3.0, 1.0)]), Err(Error::NonPositiveInput { .. })));
    }

    #[test]
    fn noisy_power_law() {
        // Deterministic ±1% multiplicative jitter.
        let pts: Vec<_> = (0..12)
            .map(|i| {
                let x = 10.0 * 1.5f64.powi(i);
                let jitter = 1.0 + 0.01 * ((i * 7919 % 13) as f64 / 6.0 - 1.0);
                (x, x.powf(-2.0 / 3.0) * jitter)
            })
            .collect();
        let fit = loglog_fit(&pts).unwrap();
        assert!((fit.exponent + 2.0 / 3.0).abs() < 0.02);
        assert!(fit.r_squared > 0.99 && fit.r_squared <= 1.0);
    }

    #[test]
    fn window_exponents() {
        let pts: Vec<_> = [100.0, 200.0, 400.0].iter().map(|&x: &f64| (x, x.powf(1.5))).collect();
        let w = windowed_exponents(&pts).unwrap();
        assert_eq!(w.len(), 2);
        assert!(w.iter().all(|e| (e.exponent - 1.5).abs() < 1e-12));
    }
}
