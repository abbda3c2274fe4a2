//! Central spin and anisotropic LMG Hamiltonians.
//!
//! The central spin Hamiltonian is
//!
//! ```text
//! H = (Ω/2) σz + ω Iz + A [(I+ σ− + I− σ+) + λ (I+ σ+ + I− σ−)]
//! ```
//!
//! and the effective LMG Hamiltonian acting on the spin-down block is
//!
//! ```text
//! H↓ = −Ω/2 + γz Iz − (γx Ix² + γy Iy²) / N
//! ```
//!
//! Everything is parameterized by `(N, ω, η, g̃, λ)`, with `Ω = ηω` and
//! `A = g̃ √(Ωω) / (2√N)`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, CMatrix, SymTridiagonal, C64};
use crate::spinspace::{
    Basis, CentralSpinBasis, DickeBasis, HermitianOperator, Spin, StateVector,
};

/// Physical parameters; `ω` sets the energy unit.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ModelParams {
    n_bath: usize,
    omega: f64,
    eta: f64,
    g_tilde: f64,
    lambda: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DerivedCouplings {
    pub gamma_x: f64,
    pub gamma_y: f64,
    pub gamma_z: f64,
    pub g_critical: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ModelKind {
    /// Central spin coupled to the bath.
    Central,
    /// LMG Hamiltonian on the bath alone.
    Lmg,
}

fn positive_finite(name: &str, x: f64) -> Result<()> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::InvalidParameter(format!("{name} must be positive and finite, got {x}")));
    }
    Ok(())
}

impl ModelParams {
    pub fn new(n_bath: usize, omega: f64, eta: f64, g_tilde: f64, lambda: f64) -> Result<Self> {
        if n_bath == 0 {
            return Err(Error::InvalidParameter("bath size N must be at least 1".into()));
        }
        positive_finite("omega", omega)?;
        positive_finite("eta", eta)?;
        if !(g_tilde >= 0.0 && g_tilde.is_finite()) {
            return Err(Error::InvalidParameter(format!("g_tilde must be non-negative, got {g_tilde}")));
        }
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::UnsupportedAnisotropy(lambda));
        }
        Ok(Self {
            n_bath,
            omega,
            eta,
            g_tilde,
            lambda,
        })
    }

    #[inline]
    pub fn n_bath(&self) -> usize {
        self.n_bath
    }

    #[inline]
    pub fn omega(&self) -> f64 {
        self.omega
    }

    #[inline]
    pub fn eta(&self) -> f64 {
        self.eta
    }

    #[inline]
    pub fn g_tilde(&self) -> f64 {
        self.g_tilde
    }

    #[inline]
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Central spin splitting `Ω = ηω`.
    #[inline]
    pub fn big_omega(&self) -> f64 {
        self.eta * self.omega
    }

    /// Hyperfine coupling `A = g̃ √(Ωω) / (2√N)`.
    pub fn coupling_a(&self) -> f64 {
        self.g_tilde * (self.big_omega() * self.omega).sqrt() / (2.0 * (self.n_bath as f64).sqrt())
    }

    /// Inverse of [`coupling_a`](Self::coupling_a).
    pub fn g_from_coupling(a: f64, n_bath: usize, omega: f64, eta: f64) -> f64 {
        2.0 * a * (n_bath as f64).sqrt() / (eta * omega * omega).sqrt()
    }

    pub fn g_critical(&self) -> f64 {
        2.0 / (1.0 + self.lambda)
    }

    pub fn couplings(&self) -> DerivedCouplings {
        let g2w = self.g_tilde * self.g_tilde * self.omega;
        let (lp, lm) = (1.0 + self.lambda, 1.0 - self.lambda);
        DerivedCouplings {
            gamma_x: g2w * lp * lp / 4.0,
            gamma_y: g2w * lm * lm / 4.0,
            gamma_z: self.omega - g2w * lp * lm / (4.0 * self.n_bath as f64),
            g_critical: self.g_critical(),
        }
    }

    pub fn with_g(&self, g_tilde: f64) -> Result<Self> {
        Self::new(self.n_bath, self.omega, self.eta, g_tilde, self.lambda)
    }

    pub fn with_n(&self, n_bath: usize) -> Result<Self> {
        Self::new(n_bath, self.omega, self.eta, self.g_tilde, self.lambda)
    }

    pub fn with_eta(&self, eta: f64) -> Result<Self> {
        Self::new(self.n_bath, self.omega, eta, self.g_tilde, self.lambda)
    }

    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        Self::new(self.n_bath, self.omega, self.eta, self.g_tilde, lambda)
    }
}

impl ModelKind {
    pub fn basis(&self, n_bath: usize) -> Result<Basis> {
        Ok(match self {
            ModelKind::Central => CentralSpinBasis::new(n_bath)?.into(),
            ModelKind::Lmg => DickeBasis::new(n_bath)?.into(),
        })
    }

    pub fn hamiltonian(&self, p: &ModelParams) -> HermitianOperator {
        match self {
            ModelKind::Central => build_central_spin_h(p),
            ModelKind::Lmg => build_lmg_h(p),
        }
    }
}

/// Dense central spin Hamiltonian on the `(↓ block, ↑ block)` basis.
pub fn build_central_spin_h(p: &ModelParams) -> HermitianOperator {
    let cb = CentralSpinBasis::new(p.n_bath).expect("validated N");
    let db = cb.bath();
    let a = p.coupling_a();
    let half_big = p.big_omega() / 2.0;
    let mut h = CMatrix::zeros(cb.dim(), cb.dim());
    for n in 0..=p.n_bath {
        let m = db.m_of(n);
        let dn = cb.index(Spin::Down, n);
        let up = cb.index(Spin::Up, n);
        h[(dn, dn)] = C64::new(-half_big + p.omega * m, 0.0);
        h[(up, up)] = C64::new(half_big + p.omega * m, 0.0);
        if n < p.n_bath {
            let c = db.raising_coefficient(n);
            // I+ σ−: |↑, n⟩ → |↓, n+1⟩
            let i = cb.index(Spin::Down, n + 1);
            h[(i, up)] = C64::new(a * c, 0.0);
            h[(up, i)] = C64::new(a * c, 0.0);
            // λ I+ σ+: |↓, n⟩ → |↑, n+1⟩
            let j = cb.index(Spin::Up, n + 1);
            h[(j, dn)] = C64::new(p.lambda * a * c, 0.0);
            h[(dn, j)] = C64::new(p.lambda * a * c, 0.0);
        }
    }
    HermitianOperator::new(h).expect("real symmetric by construction")
}

fn lmg_diag(p: &ModelParams, dc: &DerivedCouplings, db: &DickeBasis, n: usize) -> f64 {
    let nf = p.n_bath as f64;
    let i = db.spin();
    let m = db.m_of(n);
    -p.big_omega() / 2.0 + dc.gamma_z * m - (dc.gamma_x + dc.gamma_y) * (i * (i + 1.0) - m * m) / (2.0 * nf)
}

/// `⟨n+2| H↓ |n⟩`.
fn lmg_offdiag(p: &ModelParams, dc: &DerivedCouplings, db: &DickeBasis, n: usize) -> f64 {
    let nf = p.n_bath as f64;
    -(dc.gamma_x - dc.gamma_y) / (4.0 * nf) * db.raising_coefficient(n) * db.raising_coefficient(n + 1)
}

/// Dense LMG Hamiltonian on the Dicke basis, including the `−Ω/2` offset.
pub fn build_lmg_h(p: &ModelParams) -> HermitianOperator {
    let db = DickeBasis::new(p.n_bath).expect("validated N");
    let dc = p.couplings();
    let d = db.dim();
    let mut h = CMatrix::zeros(d, d);
    for n in 0..d {
        h[(n, n)] = C64::new(lmg_diag(p, &dc, &db, n), 0.0);
        if n + 2 < d {
            let v = C64::new(lmg_offdiag(p, &dc, &db, n), 0.0);
            h[(n + 2, n)] = v;
            h[(n, n + 2)] = v;
        }
    }
    HermitianOperator::new(h).expect("real symmetric by construction")
}

/// One parity block of a model Hamiltonian as a real tridiagonal matrix.
///
/// `indices[k]` is the basis index of row `k`, so the block is ordered by
/// bath excitation.
#[derive(Clone, Debug)]
pub struct ParitySector {
    pub parity: i8,
    pub basis: Basis,
    pub indices: Vec<usize>,
    pub matrix: SymTridiagonal,
}

impl ParitySector {
    /// Lifts a sector vector back to the full basis.
    pub fn embed(&self, v: &[f64]) -> Result<StateVector> {
        let mut amps = vec![C64::zero(); self.basis.dim()];
        for (&idx, &x) in self.indices.iter().zip(v) {
            amps[idx] = C64::new(x, 0.0);
        }
        StateVector::normalized(self.basis, amps)
    }
}

fn check_parity(parity: i8) -> Result<()> {
    if parity != 1 && parity != -1 {
        return Err(Error::InvalidParameter(format!("parity must be ±1, got {parity}")));
    }
    Ok(())
}

pub fn lmg_sector(p: &ModelParams, parity: i8) -> Result<ParitySector> {
    check_parity(parity)?;
    let db = DickeBasis::new(p.n_bath)?;
    let dc = p.couplings();
    let start = if parity == 1 { 0 } else { 1 };
    let indices: Vec<usize> = (start..db.dim()).step_by(2).collect();
    if indices.is_empty() {
        return Err(Error::EmptySector);
    }
    let diag = indices.iter().map(|&n| lmg_diag(p, &dc, &db, n)).collect();
    let off = indices[..indices.len() - 1]
        .iter()
        .map(|&n| lmg_offdiag(p, &dc, &db, n))
        .collect();
    Ok(ParitySector {
        parity,
        basis: db.into(),
        indices,
        matrix: SymTridiagonal::new(diag, off)?,
    })
}

pub fn central_sector(p: &ModelParams, parity: i8) -> Result<ParitySector> {
    check_parity(parity)?;
    let cb = CentralSpinBasis::new(p.n_bath)?;
    let db = cb.bath();
    let a = p.coupling_a();
    let half_big = p.big_omega() / 2.0;
    // In the even sector bath index n pairs with ↓ for even n and ↑ for odd n.
    let spin_at = |n: usize| {
        let exc_even = n.is_multiple_of(2);
        if exc_even == (parity == 1) {
            Spin::Down
        } else {
            Spin::Up
        }
    };
    let mut indices = Vec::with_capacity(db.dim());
    let mut diag = Vec::with_capacity(db.dim());
    let mut off = Vec::with_capacity(p.n_bath);
    for n in 0..=p.n_bath {
        let s = spin_at(n);
        indices.push(cb.index(s, n));
        diag.push(half_big * s.sign() + p.omega * db.m_of(n));
        if n < p.n_bath {
            let c = db.raising_coefficient(n);
            off.push(match s {
                Spin::Down => p.lambda * a * c,
                Spin::Up => a * c,
            });
        }
    }
    Ok(ParitySector {
        parity,
        basis: cb.into(),
        indices,
        matrix: SymTridiagonal::new(diag, off)?,
    })
}

pub fn parity_sector(kind: ModelKind, p: &ModelParams, parity: i8) -> Result<ParitySector> {
    match kind {
        ModelKind::Central => central_sector(p, parity),
        ModelKind::Lmg => lmg_sector(p, parity),
    }
}

/// Largest bath for the product-space oracle.
pub const BRUTE_FORCE_MAX_N: usize = 6;

/// Ground energy of the central spin model built on the full `2^(N+1)`
/// product space and restricted to the permutation-symmetric bath sector.
///
/// Qubit 0 is the central spin. Shares no code with the Dicke-basis
/// builders, so it serves as an oracle for them.
pub fn brute_force_ground_energy(p: &ModelParams) -> Result<f64> {
    let n = p.n_bath;
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::ProductSpaceTooLarge(n));
    }
    let nq = n + 1;
    let dim = 1usize << nq;
    let a = p.coupling_a();
    let ax = (1.0 + p.lambda) * a;
    let ay = (1.0 - p.lambda) * a;

    let sx = crate::spinspace::pauli::sigma_x();
    let sy = crate::spinspace::pauli::sigma_y();
    let sz = crate::spinspace::pauli::sigma_z();
    let id = crate::spinspace::pauli::identity();
    let product = |ops: &[(usize, &CMatrix)]| -> CMatrix {
        let mut out = CMatrix::identity(1);
        for q in 0..nq {
            let f = ops.iter().find(|(k, _)| *k == q).map(|(_, m)| *m).unwrap_or(&id);
            out = out.kron(f);
        }
        out
    };

    let mut h = product(&[(0, &sz)]).scale_real(p.big_omega() / 2.0);
    for k in 1..nq {
        h = &h + &product(&[(k, &sz)]).scale_real(p.omega / 2.0);
        h = &h + &product(&[(0, &sx), (k, &sx)]).scale_real(ax / 2.0);
        h = &h + &product(&[(0, &sy), (k, &sy)]).scale_real(ay / 2.0);
    }

    // Qubit 0 is the most significant bit; a set bit means spin up.
    let mut columns: Vec<Vec<usize>> = Vec::new();
    for central in 0..2usize {
        for ups in 0..=n {
            let members: Vec<usize> = (0..1usize << n)
                .filter(|bits| bits.count_ones() as usize == ups)
                .map(|bits| (central << n) | bits)
                .collect();
            columns.push(members);
        }
    }
    let mut w = CMatrix::zeros(dim, columns.len());
    for (c, members) in columns.iter().enumerate() {
        let amp = 1.0 / (members.len() as f64).sqrt();
        for &r in members {
            w[(r, c)] = C64::new(amp, 0.0);
        }
    }
    let hs = w.adjoint().matmul(&h).matmul(&w);
    let (vals, _) = hermitian_eigen(&hs)?;
    Ok(vals[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spinspace::{collective_ops, embed_matrices, parity_operator, pauli};
    use proptest::prelude::*;

    fn params(n: usize, eta: f64, g: f64, lambda: f64) -> ModelParams {
        ModelParams::new(n, 1.0, eta, g, lambda).unwrap()
    }

    fn ground(h: &HermitianOperator) -> f64 {
        hermitian_eigen(h.matrix()).unwrap().0[0]
    }

    #[test]
    fn parameter_validation() {
        assert!(ModelParams::new(0, 1.0, 1.0, 1.0, 0.5).is_err());
        assert!(ModelParams::new(2, 0.0, 1.0, 1.0, 0.5).is_err());
        assert!(ModelParams::new(2, 1.0, -1.0, 1.0, 0.5).is_err());
        assert!(ModelParams::new(2, 1.0, 1.0, -0.1, 0.5).is_err());
        assert!(matches!(
            ModelParams::new(2, 1.0, 1.0, 1.0, 1.5),
            Err(Error::UnsupportedAnisotropy(_))
        ));
    }

    #[test]
    fn derived_couplings() {
        let p = params(10, 7.0, 2.0, 1.0);
        let d = p.couplings();
        assert_eq!(d.gamma_x, 4.0);
        assert_eq!(d.gamma_y, 0.0);
        assert_eq!(d.gamma_z, 1.0);
        assert_eq!(d.g_critical, 1.0);
        let p = params(8, 7.0, 1.0, 0.5);
        let d = p.couplings();
        assert!((d.gamma_x - 2.25 / 4.0).abs() < 1e-15);
        assert!((d.gamma_y - 0.25 / 4.0).abs() < 1e-15);
        assert!((d.gamma_z - (1.0 - 0.75 / 32.0)).abs() < 1e-15);
    }

    /// Same Hamiltonian assembled from collective operators and Pauli
    /// matrices instead of matrix elements.
    fn central_from_operators(p: &ModelParams) -> CMatrix {
        let ops = collective_ops(&DickeBasis::new(p.n_bath).unwrap());
        let idb = CMatrix::identity(p.n_bath + 1);
        let a = p.coupling_a();
        let e = |b: &CMatrix, c: &CMatrix| embed_matrices(b, c).unwrap();
        let mut h = e(&idb, &pauli::sigma_z()).scale_real(p.big_omega() / 2.0);
        h = &h + &e(ops.iz.matrix(), &pauli::identity()).scale_real(p.omega);
        let flip = &e(&ops.iplus, &pauli::sigma_minus()) + &e(&ops.iminus, &pauli::sigma_plus());
        let same = &e(&ops.iplus, &pauli::sigma_plus()) + &e(&ops.iminus, &pauli::sigma_minus());
        h = &h + &flip.scale_real(a);
        &h + &same.scale_real(a * p.lambda)
    }

    fn lmg_from_operators(p: &ModelParams) -> CMatrix {
        let ops = collective_ops(&DickeBasis::new(p.n_bath).unwrap());
        let d = p.couplings();
        let nf = p.n_bath as f64;
        let sq = |m: &CMatrix| m.matmul(m);
        let id = CMatrix::identity(p.n_bath + 1);
        let mut h = id.scale_real(-p.big_omega() / 2.0);
        h = &h + &ops.iz.matrix().scale_real(d.gamma_z);
        h = &h - &sq(ops.ix.matrix()).scale_real(d.gamma_x / nf);
        &h - &sq(ops.iy.matrix()).scale_real(d.gamma_y / nf)
    }

    #[test]
    fn builders_match_operator_algebra() {
        for (n, eta, g, l) in [(1, 2.0, 0.5, 0.0), (4, 10.0, 1.3, 0.3), (9, 3.0, 2.0, 1.0)] {
            let p = params(n, eta, g, l);
            let h = build_central_spin_h(&p);
            assert!((h.matrix() - &central_from_operators(&p)).max_abs() < 1e-12);
            let h = build_lmg_h(&p);
            assert!((h.matrix() - &lmg_from_operators(&p)).max_abs() < 1e-12);
        }
    }

    #[test]
    fn decoupled_limit() {
        let p = params(6, 4.0, 0.0, 0.7);
        let h = build_central_spin_h(&p);
        for i in 0..h.dim() {
            for j in 0..h.dim() {
                if i != j {
                    assert_eq!(h.matrix()[(i, j)], C64::zero());
                }
            }
        }
        assert!((ground(&h) - (-2.0 - 3.0)).abs() < 1e-12);
        let hl = build_lmg_h(&p);
        let (vals, vecs) = hermitian_eigen(hl.matrix()).unwrap();
        assert!((vals[0] - (-2.0 - 3.0)).abs() < 1e-12);
        assert!((vecs[(0, 0)].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn isotropic_conserves_excitations() {
        let p = params(7, 5.0, 1.7, 0.0);
        let cb = CentralSpinBasis::new(7).unwrap();
        let h = build_central_spin_h(&p);
        for i in 0..cb.dim() {
            for j in 0..cb.dim() {
                let (si, ni) = cb.decode(i);
                let (sj, nj) = cb.decode(j);
                if si.excitation() + ni != sj.excitation() + nj {
                    assert_eq!(h.matrix()[(i, j)], C64::zero());
                }
            }
        }
        let hl = build_lmg_h(&p);
        for i in 0..8 {
            for j in 0..8 {
                if i != j {
                    assert!(hl.matrix()[(i, j)].norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn sectors_reproduce_full_spectrum() {
        for kind in [ModelKind::Central, ModelKind::Lmg] {
            let p = params(9, 6.0, 1.4, 0.6);
            let (full, _) = hermitian_eigen(kind.hamiltonian(&p).matrix()).unwrap();
            let mut parts = Vec::new();
            for parity in [1, -1] {
                let s = parity_sector(kind, &p, parity).unwrap();
                let dense = kind.hamiltonian(&p).matrix().principal_submatrix(&s.indices);
                assert!((&dense - &s.matrix.to_dense()).max_abs() < 1e-14);
                parts.extend(s.matrix.eigen().unwrap().0);
            }
            parts.sort_by(f64::total_cmp);
            for (a, b) in full.iter().zip(&parts) {
                assert!((a - b).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn brute_force_single_bath_spin() {
        // N = 1, λ = 1: H = (Ω/2)σz + (ω/2)τz + A σx τx, which splits into
        // two 2x2 blocks with eigenvalues ±√((Ω±ω)²/4 + A²).
        let p = params(1, 3.0, 0.9, 1.0);
        let a = p.coupling_a();
        let w = p.big_omega();
        let want = -(((w + 1.0) / 2.0).powi(2) + a * a).sqrt();
        assert!((brute_force_ground_energy(&p).unwrap() - want).abs() < 1e-12);
        assert!((ground(&build_central_spin_h(&p)) - want).abs() < 1e-12);
    }

    #[test]
    fn brute_force_decoupled_and_limits() {
        let p = params(4, 10.0, 0.0, 0.5);
        assert!((brute_force_ground_energy(&p).unwrap() - (-5.0 - 2.0)).abs() < 1e-12);
        assert!(matches!(
            brute_force_ground_energy(&params(7, 1.0, 1.0, 1.0)),
            Err(Error::ProductSpaceTooLarge(7))
        ));
    }

    #[test]
    fn oracle_example_n2() {
        let p = params(2, 10.0, 1.0, 1.0);
        let e = ground(&build_central_spin_h(&p));
        assert!((brute_force_ground_energy(&p).unwrap() - e).abs() < 1e-10);
        let p = params(2, 10.0, 1.0, 0.0);
        let e = ground(&build_central_spin_h(&p));
        assert!((brute_force_ground_energy(&p).unwrap() - e).abs() < 1e-10);
    }

    #[test]
    fn g_coupling_roundtrip() {
        for (n, eta, g) in [(1, 2.0, 0.5), (200, 1e5, 2.5), (1500, 1e3, 0.999)] {
            let p = params(n, eta, g, 0.3);
            let back = ModelParams::g_from_coupling(p.coupling_a(), n, 1.0, eta);
            assert!((back - g).abs() <= 1e-14 * g);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn parity_commutes(n in 1usize..12, eta in 0.5..50.0f64, g in 0.0..3.0f64, l in 0.0..=1.0f64) {
            let p = params(n, eta, g, l);
            let h = build_central_spin_h(&p);
            let pi = parity_operator(&CentralSpinBasis::new(n).unwrap());
            let c = h.matrix().commutator(pi.matrix());
            prop_assert!(c.frobenius_norm() <= 1e-12 * h.matrix().frobenius_norm());
            let hl = build_lmg_h(&p);
            let bp = crate::spinspace::bath_parity_operator(&DickeBasis::new(n).unwrap());
            prop_assert!(hl.matrix().commutator(bp.matrix()).frobenius_norm() <= 1e-12 * hl.matrix().frobenius_norm());
        }

        #[test]
        fn hamiltonians_hermitian(n in 1usize..20, eta in 0.5..1e4f64, g in 0.0..4.0f64, l in 0.0..=1.0f64) {
            let p = params(n, eta, g, l);
            for h in [build_central_spin_h(&p), build_lmg_h(&p)] {
                prop_assert!(h.matrix().hermitian_deviation() <= 1e-12 * h.matrix().max_abs());
            }
        }

        #[test]
        fn coupling_roundtrip(n in 1usize..5000, eta in 1e-2..1e6f64, g in 1e-3..10.0f64, w in 0.1..10.0f64) {
            let p = ModelParams::new(n, w, eta, g, 0.0).unwrap();
            let back = ModelParams::g_from_coupling(p.coupling_a(), n, w, eta);
            prop_assert!((back - g).abs() <= 1e-14 * g);
        }
    }
}
