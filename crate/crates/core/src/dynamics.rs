//! Time evolution from `|↓⟩ ⊗ |θ0, φ0 = 0⟩` and the resulting squeezing.
//!
//! Three routes are available:
//!
//! * [`Propagation::Exact`]: the closed-form isotropic propagator. With
//!   `λ = 0` every excitation sector is a two-level system, so the
//!   evolution is exact.
//! * [`Propagation::Analytic`]: large-`η` closed forms for the five bath
//!   moments. These describe one-axis twisting with `χ = A²/Ω`.
//! * [`Propagation::Numeric`]: spectral propagation with any Hamiltonian.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, CMatrix, C64};
use crate::model::{ModelKind, ModelParams};
use crate::spinspace::{
    spin_coherent_state, Basis, CentralSpinBasis, DickeBasis, HermitianOperator,
    Spin, StateVector,
};
use crate::squeezing::{bath_moments, squeezing_from_moments, SpinMoments};

#[inline]
fn cis(phase: f64) -> C64 {
    C64::from_polar(1.0, phase)
}

/// `sin(Ω t / 2) / Ω`, finite at `Ω = 0`.
fn half_sinc(big: f64, t: f64) -> f64 {
    let x = big * t / 2.0;
    if x.abs() < 1e-8 {
        t / 2.0 * (1.0 - x * x / 6.0)
    } else {
        x.sin() / big
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PropagatorTerm {
    /// `k_m = m (N − m + 1)`.
    pub k: usize,
    /// `Ω_m = √(Δ² + 4 k_m A²)`.
    pub omega_m: f64,
}

/// Closed-form evolution of the isotropic model.
///
/// The detuning `Δ = Ω − ω` enters the sector frequencies, which is what
/// makes the two-level reduction exact rather than a large-`η` estimate.
#[derive(Clone, Debug)]
pub struct IsotropicPropagator {
    params: ModelParams,
    basis: CentralSpinBasis,
    delta: f64,
    a: f64,
    terms: Vec<PropagatorTerm>,
    initial: Vec<C64>,
}

impl IsotropicPropagator {
    pub fn new(p: &ModelParams, theta0: f64) -> Result<Self> {
        if p.lambda() != 0.0 {
            return Err(Error::UnsupportedAnisotropy(p.lambda()));
        }
        let n = p.n_bath();
        let basis = CentralSpinBasis::new(n)?;
        let bath = spin_coherent_state(&basis.bath(), theta0, 0.0)?;
        let delta = p.big_omega() - p.omega();
        let a = p.coupling_a();
        let terms = (0..=n)
            .map(|m| {
                let k = m * (n - m + 1);
                PropagatorTerm {
                    k,
                    omega_m: (delta * delta + 4.0 * k as f64 * a * a).sqrt(),
                }
            })
            .collect();
        Ok(Self {
            params: *p,
            basis,
            delta,
            a,
            terms,
            initial: bath.into_amplitudes(),
        })
    }

    pub fn terms(&self) -> &[PropagatorTerm] {
        &self.terms
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn p_down(&self, m: usize, t: f64) -> C64 {
        let om = self.terms[m].omega_m;
        let x = om * t / 2.0;
        C64::new(x.cos(), self.delta * half_sinc(om, t))
    }

    pub fn p_up(&self, m: usize, t: f64) -> C64 {
        let term = self.terms[m];
        C64::new(0.0, -2.0 * (term.k as f64).sqrt() * self.a * half_sinc(term.omega_m, t))
    }

    pub fn state_at(&self, t: f64) -> Result<StateVector> {
        let n = self.params.n_bath();
        let w = self.params.omega();
        let mut amps = alloc::vec![C64::zero(); self.basis.dim()];
        for m in 0..=n {
            let c = self.initial[m];
            if c.is_zero() {
                continue;
            }
            let phase = cis(-(-(n as f64) / 2.0 + m as f64 - 0.5) * w * t);
            amps[self.basis.index(Spin::Down, m)] += c * phase * self.p_down(m, t);
            if m > 0 {
                amps[self.basis.index(Spin::Up, m - 1)] += c * phase * self.p_up(m, t);
            }
        }
        StateVector::new(self.basis, amps)
    }
}

pub fn evolve_isotropic_analytic(p: &ModelParams, theta0: f64, t: f64) -> Result<StateVector> {
    IsotropicPropagator::new(p, theta0)?.state_at(t)
}

/// `exp(−iHt)` through one eigendecomposition of `H`.
#[derive(Clone, Debug)]
pub struct SpectralPropagator {
    energies: Vec<f64>,
    vectors: CMatrix,
}

impl SpectralPropagator {
    pub fn new(h: &HermitianOperator) -> Result<Self> {
        let (energies, vectors) = hermitian_eigen(h.matrix())?;
        Ok(Self { energies, vectors })
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    /// Expansion coefficients `V†ψ0`.
    pub fn coefficients(&self, psi0: &StateVector) -> Result<Vec<C64>> {
        if psi0.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: psi0.dim(),
            });
        }
        Ok(self.vectors.adjoint().matvec(psi0.amplitudes()))
    }

    pub fn evolve_coefficients(&self, basis: Basis, coeffs: &[C64], t: f64) -> Result<StateVector> {
        let d = self.dim();
        let phased: Vec<C64> = coeffs
            .iter()
            .zip(&self.energies)
            .map(|(&c, &e)| c * cis(-e * t))
            .collect();
        let mut amps = alloc::vec![C64::zero(); d];
        for (r, out) in amps.iter_mut().enumerate() {
            *out = self
                .vectors
                .row(r)
                .iter()
                .zip(&phased)
                .map(|(&v, &c)| v * c)
                .sum();
        }
        StateVector::normalized(basis, amps)
    }

    pub fn evolve(&self, psi0: &StateVector, t: f64) -> Result<StateVector> {
        let c = self.coefficients(psi0)?;
        self.evolve_coefficients(psi0.basis(), &c, t)
    }
}

pub fn evolve_numeric(h: &HermitianOperator, psi0: &StateVector, times: &[f64]) -> Result<Vec<StateVector>> {
    let prop = SpectralPropagator::new(h)?;
    let c = prop.coefficients(psi0)?;
    times
        .iter()
        .map(|&t| prop.evolve_coefficients(psi0.basis(), &c, t))
        .collect()
}

/// Large-`η` closed forms for the five bath moments.
pub fn analytic_moments(p: &ModelParams, theta0: f64, t: f64) -> Result<SpinMoments> {
    if p.lambda() != 0.0 {
        return Err(Error::UnsupportedAnisotropy(p.lambda()));
    }
    let n = p.n_bath();
    let nf = n as f64;
    let chi = p.coupling_a().powi(2) / p.big_omega();
    let w = p.omega();
    let (st, ct) = theta0.sin_cos();
    let x = chi * t;
    let (sx, cx) = x.sin_cos();
    let (s2x, c2x) = (2.0 * x).sin_cos();
    let base1 = C64::new(cx, sx * ct);
    let base2 = C64::new(c2x, ct * s2x);
    let pw = |b: C64, k: usize| if k == 0 { C64::new(1.0, 0.0) } else { b.powu(k as u32) };
    let lin = cis((w - chi) * t);

    let iplus = lin * pw(base1, n - 1) * (nf / 2.0 * st);
    let iplus2 = if n >= 2 {
        cis(2.0 * (w - chi) * t) * pw(base2, n - 2) * (nf * (nf - 1.0) / 4.0 * st * st)
    } else {
        C64::zero()
    };
    let iplus_2iz1 = if n >= 2 {
        lin * pw(base1, n - 2) * C64::new(ct * cx, sx) * (nf * (nf - 1.0) / 2.0 * st)
    } else {
        C64::zero()
    };
    Ok(SpinMoments {
        n_bath: n,
        iz: nf / 2.0 * ct,
        iz2: nf / 8.0 * (nf + 1.0 + (nf - 1.0) * (2.0 * theta0).cos()),
        iplus,
        iplus2,
        iplus_2iz1,
    })
}

/// Transverse `(𝒜, ℬ, 𝒞)` at `θ0 = π/2` in closed form.
pub fn transverse_abc(p: &ModelParams, t: f64) -> (f64, f64, f64) {
    let nf = p.n_bath() as f64;
    let chi = p.coupling_a().powi(2) / p.big_omega();
    let x = chi * t;
    let e = p.n_bath().saturating_sub(2) as i32;
    let a = nf * (nf - 1.0) / 8.0 * (1.0 - (2.0 * x).cos().powi(e));
    let b = nf / 2.0 * (nf - 1.0) * x.cos().powi(e) * x.sin();
    (a, b, a + nf / 2.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Propagation {
    Analytic,
    Exact,
    Numeric,
}

#[derive(Clone, Debug)]
pub struct SqueezingTimeSeries {
    pub times: Vec<f64>,
    pub xi_s2: Vec<f64>,
    pub xi_r2: Vec<Option<f64>>,
    pub moments: Vec<SpinMoments>,
}

impl SqueezingTimeSeries {
    fn from_moments(times: &[f64], moments: Vec<SpinMoments>) -> Self {
        let reports: Vec<_> = moments.iter().map(squeezing_from_moments).collect();
        Self {
            times: times.to_vec(),
            xi_s2: reports.iter().map(|r| r.xi_s2).collect(),
            xi_r2: reports.iter().map(|r| r.xi_r2).collect(),
            moments,
        }
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// Initial state `|↓⟩ ⊗ |θ0, 0⟩` on the basis of `kind`.
pub fn initial_state(kind: ModelKind, n_bath: usize, theta0: f64) -> Result<StateVector> {
    let bath = spin_coherent_state(&DickeBasis::new(n_bath)?, theta0, 0.0)?;
    match kind {
        ModelKind::Lmg => Ok(bath),
        ModelKind::Central => StateVector::with_central(Spin::Down, &bath),
    }
}

pub fn squeezing_time_series(
    kind: ModelKind,
    p: &ModelParams,
    theta0: f64,
    times: &[f64],
    method: Propagation,
) -> Result<SqueezingTimeSeries> {
    if times.len() < 2 {
        return Err(Error::InsufficientPoints {
            needed: 2,
            got: times.len(),
        });
    }
    let moments = match method {
        Propagation::Analytic => times
            .iter()
            .map(|&t| analytic_moments(p, theta0, t))
            .collect::<Result<Vec<_>>>()?,
        Propagation::Exact => {
            if kind != ModelKind::Central {
                return Err(Error::InvalidParameter(
                    "the exact isotropic propagator needs the central spin model".into(),
                ));
            }
            let prop = IsotropicPropagator::new(p, theta0)?;
            times
                .iter()
                .map(|&t| prop.state_at(t).map(|s| bath_moments(&s)))
                .collect::<Result<Vec<_>>>()?
        }
        Propagation::Numeric => {
            let h = kind.hamiltonian(p);
            let psi0 = initial_state(kind, p.n_bath(), theta0)?;
            let prop = SpectralPropagator::new(&h)?;
            let c = prop.coefficients(&psi0)?;
            times
                .iter()
                .map(|&t| prop.evolve_coefficients(psi0.basis(), &c, t).map(|s| bath_moments(&s)))
                .collect::<Result<Vec<_>>>()?
        }
    };
    Ok(SqueezingTimeSeries::from_moments(times, moments))
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct OptimalSqueezing {
    pub t_min: f64,
    pub xi_min2: f64,
}

/// Grid minimum of `ξS²` refined by a parabola through the bracketing samples.
pub fn optimal_squeezing(series: &SqueezingTimeSeries) -> Result<OptimalSqueezing> {
    let n = series.len();
    if n < 3 {
        return Err(Error::InsufficientPoints { needed: 3, got: n });
    }
    let (i, _) = series
        .xi_s2
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty");
    if i == 0 || i == n - 1 {
        return Err(Error::PeakAtBoundary { at: series.times[i] });
    }
    let (x0, x1, x2) = (series.times[i - 1], series.times[i], series.times[i + 1]);
    let (y0, y1, y2) = (series.xi_s2[i - 1], series.xi_s2[i], series.xi_s2[i + 1]);
    Ok(parabolic_vertex([x0, x1, x2], [y0, y1, y2]).unwrap_or(OptimalSqueezing {
        t_min: x1,
        xi_min2: y1,
    }))
}

fn parabolic_vertex(x: [f64; 3], y: [f64; 3]) -> Option<OptimalSqueezing> {
    let d01 = (y[1] - y[0]) / (x[1] - x[0]);
    let d12 = (y[2] - y[1]) / (x[2] - x[1]);
    let curv = (d12 - d01) / (x[2] - x[0]);
    if !(curv > 0.0) {
        return None;
    }
    // y = y1 + b (x − x1) + curv (x − x1)², with b the slope at x1.
    let b = d01 + curv * (x[1] - x[0]);
    let dx = -b / (2.0 * curv);
    let t = x[1] + dx;
    if t < x[0] || t > x[2] {
        return None;
    }
    Some(OptimalSqueezing {
        t_min: t,
        xi_min2: y[1] + b * dx + curv * dx * dx,
    })
}

/// One-axis-twisting optimum `½ (N/3)^(−2/3)`.
pub fn oat_optimal_xi2(n_bath: usize) -> f64 {
    0.5 * (n_bath as f64 / 3.0).powf(-2.0 / 3.0)
}

/// One-axis-twisting optimal time `4·3^(1/6) N^(1/3) / (g̃² ω)`.
pub fn oat_optimal_time(p: &ModelParams) -> f64 {
    4.0 * 3f64.powf(1.0 / 6.0) * (p.n_bath() as f64).cbrt() / (p.g_tilde() * p.g_tilde() * p.omega())
}

/// Default sampling points.
pub const DEFAULT_TIME_POINTS: usize = 2000;

/// Uniform grid with `count` points over `[start, stop]`, both included.
pub fn uniform_grid(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => alloc::vec![start],
        _ => (0..count)
            .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
            .collect(),
    }
}

/// `[0, 2 t_min]` with [`DEFAULT_TIME_POINTS`] samples.
pub fn default_time_grid(p: &ModelParams) -> Vec<f64> {
    uniform_grid(0.0, 2.0 * oat_optimal_time(p), DEFAULT_TIME_POINTS)
}
