//! Numerical check of the effective LMG description of the central spin model.
//!
//! The generator `S` removes the block-off-diagonal coupling to first order
//! in `A/Ω`; the spin-down block of `e^{−S} H e^{S}` is then compared with
//! the LMG Hamiltonian.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::Result;
use crate::linalg::{expm_antihermitian, CMatrix, C64};
use crate::model::{build_central_spin_h, build_lmg_h, ModelParams};
use crate::spinspace::{collective_ops, embed_matrices, pauli, CentralSpinBasis, HermitianOperator};

/// `S = A [−i(1+λ)/Ω · Ix σy + i(1−λ)/Ω · Iy σx]`.
#[derive(Clone, Debug)]
pub struct SwGenerator {
    basis: CentralSpinBasis,
    s: CMatrix,
}

impl SwGenerator {
    pub fn matrix(&self) -> &CMatrix {
        &self.s
    }

    pub fn basis(&self) -> CentralSpinBasis {
        self.basis
    }

    /// `e^{S}`, unitary.
    pub fn exp(&self) -> Result<CMatrix> {
        expm_antihermitian(&self.s)
    }

    /// `‖S + S†‖_max`.
    pub fn antihermitian_deviation(&self) -> f64 {
        (&self.s + &self.s.adjoint()).max_abs()
    }

    /// Largest entry inside the two central-spin blocks.
    pub fn within_block_max(&self) -> f64 {
        let d = self.basis.dim();
        let half = d / 2;
        let mut worst = 0.0f64;
        for r in 0..d {
            for c in 0..d {
                if (r < half) == (c < half) {
                    worst = worst.max(self.s[(r, c)].norm());
                }
            }
        }
        worst
    }
}

pub fn build_sw_generator(p: &ModelParams) -> Result<SwGenerator> {
    let basis = CentralSpinBasis::new(p.n_bath())?;
    let ops = collective_ops(&basis.bath());
    let a = p.coupling_a() / p.big_omega();
    let lam = p.lambda();
    let xy = embed_matrices(ops.ix.matrix(), &pauli::sigma_y())?
        .scale(C64::new(0.0, -(1.0 + lam) * a));
    let yx = embed_matrices(ops.iy.matrix(), &pauli::sigma_x())?
        .scale(C64::new(0.0, (1.0 - lam) * a));
    Ok(SwGenerator { basis, s: &xy + &yx })
}

/// `H' = e^{−S} H e^{S}` with the exact exponential.
pub fn conjugated_hamiltonian(p: &ModelParams) -> Result<HermitianOperator> {
    let u = build_sw_generator(p)?.exp()?;
    let h = build_central_spin_h(p);
    let hp = u.adjoint().matmul(h.matrix()).matmul(&u);
    let sym = (&hp + &hp.adjoint()).scale_real(0.5);
    HermitianOperator::new(sym)
}

/// First-order coupling `V` with `H = H0 + V`, `H0 = (Ω/2)σz + ωIz`.
pub fn coupling_operator(p: &ModelParams) -> Result<CMatrix> {
    let basis = CentralSpinBasis::new(p.n_bath())?;
    let ops = collective_ops(&basis.bath());
    let h0 = &embed_matrices(&CMatrix::identity(basis.bath().dim()), &pauli::sigma_z())?
        .scale_real(p.big_omega() / 2.0)
        + &embed_matrices(ops.iz.matrix(), &pauli::identity())?.scale_real(p.omega());
    Ok(build_central_spin_h(p).matrix() - &h0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MappingReport {
    pub eta: f64,
    /// `‖off-block(H')‖_F / ‖H‖_F`.
    pub residual_offdiag: f64,
    /// `‖down-block(H') − H↓‖_F / ‖H↓‖_F`.
    pub block_error: f64,
    /// `‖down-block(H') − H↓‖_F`.
    pub block_error_abs: f64,
}

pub fn down_block(h: &CMatrix, basis: &CentralSpinBasis) -> CMatrix {
    let idx: Vec<usize> = basis.down_block().collect();
    h.principal_submatrix(&idx)
}

fn offblock_norm(h: &CMatrix, basis: &CentralSpinBasis) -> f64 {
    let half = basis.dim() / 2;
    let mut acc = 0.0;
    for r in 0..half {
        for c in half..basis.dim() {
            acc += h[(r, c)].norm_sqr() + h[(c, r)].norm_sqr();
        }
    }
    acc.sqrt()
}

pub fn mapping_report(p: &ModelParams) -> Result<MappingReport> {
    let basis = CentralSpinBasis::new(p.n_bath())?;
    let h = build_central_spin_h(p);
    let hp = conjugated_hamiltonian(p)?;
    let lmg = build_lmg_h(p);
    let diff = &down_block(hp.matrix(), &basis) - lmg.matrix();
    let abs = diff.frobenius_norm();
    Ok(MappingReport {
        eta: p.eta(),
        residual_offdiag: offblock_norm(hp.matrix(), &basis) / h.matrix().frobenius_norm(),
        block_error: abs / lmg.matrix().frobenius_norm(),
        block_error_abs: abs,
    })
}
