//! Eigensystems, parity-resolved ground states and the analytic isotropic
//! ground state.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, C64};
use crate::model::{parity_sector, ModelKind, ModelParams};
use crate::spinspace::{Basis, CentralSpinBasis, HermitianOperator, Spin, StateVector};

#[derive(Clone, Debug)]
pub struct EigenPair {
    pub energy: f64,
    pub state: StateVector,
}

/// Full spectrum, ascending, with phase-fixed eigenvectors.
pub fn eigensystem(h: &HermitianOperator, basis: impl Into<Basis>) -> Result<Vec<EigenPair>> {
    let basis = basis.into();
    if basis.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: basis.dim(),
            found: h.dim(),
        });
    }
    let (vals, vecs) = hermitian_eigen(h.matrix())?;
    vals.into_iter()
        .enumerate()
        .map(|(k, energy)| {
            Ok(EigenPair {
                energy,
                state: StateVector::normalized(basis, vecs.column(k))?,
            })
        })
        .collect()
}

pub fn eigenvalues(h: &HermitianOperator) -> Result<Vec<f64>> {
    Ok(hermitian_eigen(h.matrix())?.0)
}

/// Lowest eigenpair within a parity sector, by dense diagonalization of the
/// sector block.
pub fn ground_state_in_sector(
    h: &HermitianOperator,
    basis: impl Into<Basis>,
    sector: i8,
) -> Result<EigenPair> {
    let basis = basis.into();
    if basis.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: basis.dim(),
            found: h.dim(),
        });
    }
    let idx: Vec<usize> = (0..basis.dim()).filter(|&i| basis.parity_of(i) == sector).collect();
    if idx.is_empty() {
        return Err(Error::EmptySector);
    }
    let block = h.matrix().principal_submatrix(&idx);
    let (vals, vecs) = hermitian_eigen(&block)?;
    let mut amps = alloc::vec![C64::new(0.0, 0.0); basis.dim()];
    for (k, &i) in idx.iter().enumerate() {
        amps[i] = vecs[(k, 0)];
    }
    Ok(EigenPair {
        energy: vals[0],
        state: StateVector::normalized(basis, amps)?,
    })
}

/// Lowest eigenpair of a parity sector through its tridiagonal form.
pub fn sector_ground_state(kind: ModelKind, p: &ModelParams, sector: i8) -> Result<EigenPair> {
    let s = parity_sector(kind, p, sector)?;
    let (energy, v) = s.matrix.lowest_pair()?;
    Ok(EigenPair {
        energy,
        state: s.embed(&v)?,
    })
}

/// Ground state of the even sector, the one containing `|↓, 0⟩`.
pub fn even_ground_state(kind: ModelKind, p: &ModelParams) -> Result<EigenPair> {
    sector_ground_state(kind, p, 1)
}

/// Lowest state over both parity sectors.
pub fn global_ground_state(kind: ModelKind, p: &ModelParams) -> Result<EigenPair> {
    let even = sector_ground_state(kind, p, 1)?;
    match sector_ground_state(kind, p, -1) {
        Ok(odd) if odd.energy < even.energy => Ok(odd),
        Ok(_) | Err(Error::EmptySector) => Ok(even),
        Err(e) => Err(e),
    }
}

/// The `k` lowest eigenvalues over both parity sectors.
pub fn lowest_energies(kind: ModelKind, p: &ModelParams, k: usize) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(2 * k);
    for sector in [1, -1] {
        match parity_sector(kind, p, sector) {
            Ok(s) => {
                for j in 0..k.min(s.matrix.dim()) {
                    out.push(s.matrix.eigenvalue(j));
                }
            }
            Err(Error::EmptySector) => {}
            Err(e) => return Err(e),
        }
    }
    out.sort_by(f64::total_cmp);
    out.truncate(k);
    Ok(out)
}

/// Analytic isotropic ground state in the two-state excitation sector.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct IsotropicGroundParams {
    /// `Ω̃ = Δ / (2A√k)` with `Δ = Ω − ω` and `k = n(N − n + 1)`; `None` for `n = 0`.
    pub omega_tilde: Option<f64>,
    /// Amplitude on `|↑, n−1⟩`.
    pub p_up: f64,
    /// Amplitude on `|↓, n⟩`.
    pub p_down: f64,
    /// Large-`η` excitation number `(η/4)(g̃² − g̃⁻²)`, unclamped.
    pub n_star: f64,
    /// Excitation number of the exact ground state.
    pub n_ground: usize,
}

/// `(η/4)(g̃² − g̃⁻²)`, the thermodynamic-limit excitation number.
pub fn thermodynamic_excitation_number(p: &ModelParams) -> f64 {
    let g2 = p.g_tilde() * p.g_tilde();
    p.eta() / 4.0 * (g2 - 1.0 / g2)
}

fn require_isotropic(p: &ModelParams) -> Result<()> {
    if p.lambda() != 0.0 {
        return Err(Error::UnsupportedAnisotropy(p.lambda()));
    }
    Ok(())
}

/// Lowest energy in the excitation-`n` sector of the isotropic model.
pub fn isotropic_sector_energy(p: &ModelParams, n: usize) -> Result<f64> {
    require_isotropic(p)?;
    let nb = p.n_bath();
    if n > nb + 1 {
        return Err(Error::InvalidParameter("excitation number exceeds N + 1".into()));
    }
    let w = p.omega();
    let big = p.big_omega();
    let half_n = nb as f64 / 2.0;
    if n == 0 {
        return Ok(-big / 2.0 - w * half_n);
    }
    if n == nb + 1 {
        return Ok(big / 2.0 + w * half_n);
    }
    let nf = n as f64;
    let k = nf * (nb as f64 - nf + 1.0);
    let delta = big - w;
    let a = p.coupling_a();
    Ok(w * (-half_n + nf - 0.5) - 0.5 * (delta * delta + 4.0 * k * a * a).sqrt())
}

/// Excitation number of the isotropic ground state.
pub fn isotropic_ground_excitation(p: &ModelParams) -> Result<usize> {
    require_isotropic(p)?;
    let mut best = (0, isotropic_sector_energy(p, 0)?);
    for n in 1..=p.n_bath() + 1 {
        let e = isotropic_sector_energy(p, n)?;
        if e < best.1 {
            best = (n, e);
        }
    }
    Ok(best.0)
}

pub fn isotropic_ground_analytic(p: &ModelParams) -> Result<(IsotropicGroundParams, StateVector)> {
    require_isotropic(p)?;
    let nb = p.n_bath();
    let cb = CentralSpinBasis::new(nb)?;
    let n = isotropic_ground_excitation(p)?;
    let n_star = thermodynamic_excitation_number(p);
    let mut amps = alloc::vec![C64::new(0.0, 0.0); cb.dim()];
    let gp = if n == 0 || n == nb + 1 {
        let idx = if n == 0 {
            cb.index(Spin::Down, 0)
        } else {
            cb.index(Spin::Up, nb)
        };
        amps[idx] = C64::new(1.0, 0.0);
        IsotropicGroundParams {
            omega_tilde: None,
            p_up: if n == 0 { 0.0 } else { 1.0 },
            p_down: if n == 0 { 1.0 } else { 0.0 },
            n_star,
            n_ground: n,
        }
    } else {
        let nf = n as f64;
        let k = nf * (nb as f64 - nf + 1.0);
        let delta = p.big_omega() - p.omega();
        let ot = delta / (2.0 * p.coupling_a() * k.sqrt());
        let up = ot - (1.0 + ot * ot).sqrt();
        let norm = (1.0 + up * up).sqrt();
        let (p_up, p_down) = (up / norm, 1.0 / norm);
        amps[cb.index(Spin::Up, n - 1)] = C64::new(p_up, 0.0);
        amps[cb.index(Spin::Down, n)] = C64::new(p_down, 0.0);
        IsotropicGroundParams {
            omega_tilde: Some(ot),
            p_up,
            p_down,
            n_star,
            n_ground: n,
        }
    };
    Ok((gp, StateVector::normalized(cb, amps)?))
}
