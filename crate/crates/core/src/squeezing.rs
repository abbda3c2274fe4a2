//! Kitagawa and Wineland squeezing parameters plus the closed-form ground
//! state predictions.
//!
//! Every squeezing quantity of a state in the maximal-spin sector is fixed
//! by five bath moments, `⟨Iz⟩`, `⟨Iz²⟩`, `⟨I+⟩`, `⟨I+²⟩` and
//! `⟨I+(2Iz + 1)⟩`, together with the Casimir `I(I + 1)`. States on the
//! central-spin basis are reduced by summing over both spin blocks.

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::model::ModelParams;
use crate::spectrum::isotropic_ground_excitation;
use crate::spinspace::{Basis, DickeBasis, StateVector};

/// Relative size below which the mean spin counts as zero.
pub const ZERO_MEAN_SPIN_RTOL: f64 = 1e-10;
/// Transverse mean spin tolerated by [`min_variance_along_z`], relative to `N/2`.
pub const ALONG_Z_RTOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinMoments {
    pub n_bath: usize,
    pub iz: f64,
    pub iz2: f64,
    pub iplus: C64,
    pub iplus2: C64,
    /// `⟨I+(2Iz + 1)⟩ = ⟨{I+, Iz}⟩`.
    pub iplus_2iz1: C64,
}

impl SpinMoments {
    pub fn casimir(&self) -> f64 {
        let j = self.n_bath as f64 / 2.0;
        j * (j + 1.0)
    }

    pub fn mean(&self) -> [f64; 3] {
        [self.iplus.re, self.iplus.im, self.iz]
    }

    /// Symmetrized second moments `½⟨{Ia, Ib}⟩`, `a, b ∈ {x, y, z}`.
    pub fn second_moments(&self) -> [[f64; 3]; 3] {
        let perp = self.casimir() - self.iz2;
        let xx = 0.5 * (perp + self.iplus2.re);
        let yy = 0.5 * (perp - self.iplus2.re);
        let xy = 0.5 * self.iplus2.im;
        let xz = 0.5 * self.iplus_2iz1.re;
        let yz = 0.5 * self.iplus_2iz1.im;
        [[xx, xy, xz], [xy, yy, yz], [xz, yz, self.iz2]]
    }

    pub fn covariance(&self) -> [[f64; 3]; 3] {
        let s = self.second_moments();
        let m = self.mean();
        let mut c = [[0.0; 3]; 3];
        for a in 0..3 {
            for b in 0..3 {
                c[a][b] = s[a][b] - m[a] * m[b];
            }
        }
        c
    }
}

/// The five bath moments of a state.
pub fn bath_moments(state: &StateVector) -> SpinMoments {
    let n_bath = state.n_bath();
    let db = DickeBasis::new(n_bath).expect("state basis is valid");
    let amps = state.amplitudes();
    let blocks: &[usize] = match state.basis() {
        Basis::Dicke(_) => &[0],
        Basis::CentralSpin(_) => &[0, n_bath + 1],
    };
    let mut out = SpinMoments {
        n_bath,
        iz: 0.0,
        iz2: 0.0,
        iplus: C64::new(0.0, 0.0),
        iplus2: C64::new(0.0, 0.0),
        iplus_2iz1: C64::new(0.0, 0.0),
    };
    for &off in blocks {
        let a = &amps[off..off + n_bath + 1];
        for n in 0..=n_bath {
            let m = db.m_of(n);
            let w = a[n].norm_sqr();
            out.iz += w * m;
            out.iz2 += w * m * m;
            if n < n_bath {
                let c = db.raising_coefficient(n);
                let t = a[n + 1].conj() * a[n] * c;
                out.iplus += t;
                out.iplus_2iz1 += t * (2.0 * m + 1.0);
                if n + 1 < n_bath {
                    out.iplus2 += a[n + 2].conj() * a[n] * (c * db.raising_coefficient(n + 1));
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SqueezingReport {
    pub xi_s2: f64,
    /// `None` when the mean spin vanishes.
    pub xi_r2: Option<f64>,
    /// Unit vector along `⟨I⟩`; `ẑ` when the mean spin vanishes.
    pub mean_spin_dir: [f64; 3],
    pub mean_spin_norm: f64,
    pub min_variance: f64,
    /// Angle from `n1` towards `n2` of the least-variance direction, in `[0, π)`.
    pub optimal_angle: f64,
}

fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn quad(c: &[[f64; 3]; 3], u: [f64; 3], v: [f64; 3]) -> f64 {
    let mut s = 0.0;
    for a in 0..3 {
        for b in 0..3 {
            s += u[a] * c[a][b] * v[b];
        }
    }
    s
}

/// Transverse frame `(n1, n2)` for a mean spin pointing along `(θ, φ)`.
pub fn transverse_frame(theta: f64, phi: f64) -> ([f64; 3], [f64; 3]) {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    ([-sp, cp, 0.0], [ct * cp, ct * sp, -st])
}

pub fn squeezing_from_moments(m: &SpinMoments) -> SqueezingReport {
    let nf = m.n_bath as f64;
    let mean = m.mean();
    let len = norm3(mean);
    let zero_mean = len <= ZERO_MEAN_SPIN_RTOL * nf;
    let dir = if zero_mean {
        [0.0, 0.0, 1.0]
    } else {
        [mean[0] / len, mean[1] / len, mean[2] / len]
    };
    let theta = dir[2].clamp(-1.0, 1.0).acos();
    let phi = if dir[0] == 0.0 && dir[1] == 0.0 {
        0.0
    } else {
        dir[1].atan2(dir[0])
    };
    let (n1, n2) = transverse_frame(theta, phi);
    let cov = m.covariance();
    let c11 = quad(&cov, n1, n1);
    let c22 = quad(&cov, n2, n2);
    let c12 = quad(&cov, n1, n2);
    let big_c = c11 + c22;
    let big_a = c11 - c22;
    let big_b = 2.0 * c12;
    let min_variance = (0.5 * (big_c - big_a.hypot(big_b))).max(0.0);
    let mut alpha = 0.5 * (big_b.atan2(big_a) + core::f64::consts::PI);
    if alpha >= core::f64::consts::PI {
        alpha -= core::f64::consts::PI;
    }
    SqueezingReport {
        xi_s2: 4.0 * min_variance / nf,
        xi_r2: (!zero_mean).then(|| nf * min_variance / (len * len)),
        mean_spin_dir: dir,
        mean_spin_norm: len,
        min_variance,
        optimal_angle: alpha,
    }
}

pub fn squeezing_report(state: &StateVector) -> SqueezingReport {
    squeezing_from_moments(&bath_moments(state))
}

/// Unit vector along `⟨I⟩`.
pub fn mean_spin_direction(state: &StateVector) -> Result<[f64; 3]> {
    let m = bath_moments(state);
    let mean = m.mean();
    let len = norm3(mean);
    if len <= ZERO_MEAN_SPIN_RTOL * m.n_bath as f64 {
        return Err(Error::ZeroMeanSpin);
    }
    Ok([mean[0] / len, mean[1] / len, mean[2] / len])
}

/// Least transverse variance for a state whose mean spin lies along `±ẑ`.
pub fn min_variance_along_z(state: &StateVector) -> Result<f64> {
    min_variance_along_z_from_moments(&bath_moments(state))
}

pub fn min_variance_along_z_from_moments(m: &SpinMoments) -> Result<f64> {
    let transverse = m.iplus.norm();
    if transverse > ALONG_Z_RTOL * m.n_bath as f64 / 2.0 {
        return Err(Error::MeanSpinNotAlongZ { transverse });
    }
    let s = m.second_moments();
    let sum = s[0][0] + s[1][1];
    let diff = s[0][0] - s[1][1];
    let cov_xy = s[0][1];
    Ok(0.5 * (sum - (diff * diff + 4.0 * cov_xy * cov_xy).sqrt()))
}

/// Squeezing of the Dicke state at (continuous) excitation `n`.
///
/// `ξR²` is `None` at `n = N/2`, where the mean spin vanishes.
pub fn dicke_xi(n_bath: usize, n: f64) -> (f64, Option<f64>) {
    let nf = n_bath as f64;
    let d = n - nf / 2.0;
    let xi_s2 = -2.0 * d * d / nf + nf / 2.0 + 1.0;
    let xi_r2 = (d != 0.0).then(|| -nf / 2.0 + nf * nf * (nf + 2.0) / (8.0 * d * d));
    (xi_s2, xi_r2)
}

/// `(ξS², ξR²)` of the analytic isotropic ground state.
///
/// Uses the exact ground-state excitation number, clamped to `[0, N]`.
pub fn isotropic_ground_xi(p: &ModelParams) -> Result<(f64, Option<f64>)> {
    let n = isotropic_ground_excitation(p)?.min(p.n_bath());
    Ok(dicke_xi(p.n_bath(), n as f64))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Phase {
    Normal,
    Broken,
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MeanFieldAngles {
    pub theta0: f64,
    pub phi0: f64,
    pub phase_label: Phase,
}

pub fn mean_field_angles(p: &ModelParams) -> MeanFieldAngles {
    let gx = p.couplings().gamma_x;
    if p.g_tilde() <= p.g_critical() || gx <= p.omega() {
        MeanFieldAngles {
            theta0: core::f64::consts::PI,
            phi0: 0.0,
            phase_label: Phase::Normal,
        }
    } else {
        MeanFieldAngles {
            theta0: (-p.omega() / gx).acos(),
            phi0: 0.0,
            phase_label: Phase::Broken,
        }
    }
}

/// Mean-field energy of a coherent state along `(θ, φ)`, without the `−Ω/2` offset.
pub fn mean_field_energy(p: &ModelParams, theta: f64, phi: f64) -> f64 {
    let nf = p.n_bath() as f64;
    let (g, l, w) = (p.g_tilde(), p.lambda(), p.omega());
    let s = theta.sin();
    nf / 2.0 * w * theta.cos() - nf * g * g * w / 16.0 * s * s * (1.0 + l * l + 2.0 * l * (2.0 * phi).cos())
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct AnisotropicXi {
    pub xi_s2: f64,
    pub phase: Phase,
    /// Set when `ξS² ≥ 1`.
    pub unsqueezed: bool,
    /// Set at `g̃ = g̃c`, where the closed forms break down and `0` is returned.
    pub at_criticality: bool,
}

/// Large-`η` ground-state `ξS²` of the anisotropic model.
pub fn anisotropic_ground_xi_analytic(p: &ModelParams) -> Result<AnisotropicXi> {
    let g = p.g_tilde();
    let l = p.lambda();
    let gc = p.g_critical();
    let (g2, gc2) = (g * g, gc * gc);
    let phase = mean_field_angles(p).phase_label;
    if g == gc {
        return Ok(AnisotropicXi {
            xi_s2: 0.0,
            phase,
            unsqueezed: false,
            at_criticality: true,
        });
    }
    let xi_s2 = match phase {
        Phase::Normal => {
            let ratio = ((1.0 - l) / (1.0 + l)).powi(2);
            ((gc2 - g2) / (gc2 - ratio * g2)).sqrt()
        }
        Phase::Broken => {
            if l == 0.0 {
                return Err(Error::UnsupportedAnisotropy(l));
            }
            ((g2 / gc2 - gc2 / g2) / (g2 * l)).sqrt()
        }
    };
    Ok(AnisotropicXi {
        xi_s2,
        phase,
        unsqueezed: xi_s2 >= 1.0,
        at_criticality: false,
    })
}

/// Holstein-Primakoff excitation gap in the phase picked by the mean field.
pub fn hp_gap(p: &ModelParams) -> Result<f64> {
    let d = p.couplings();
    let w = p.omega();
    match mean_field_angles(p).phase_label {
        Phase::Normal => {
            let disc = (w - d.gamma_x) * (w - d.gamma_y);
            if disc < 0.0 {
                return Err(Error::NegativeDiscriminant(disc));
            }
            Ok(disc.sqrt())
        }
        Phase::Broken => {
            let disc = p.g_tilde() * p.g_tilde() * p.lambda() * (d.gamma_x / w - w / d.gamma_x);
            if disc < 0.0 {
                return Err(Error::NegativeDiscriminant(disc));
            }
            Ok(w * disc.sqrt())
        }
    }
}
