//! Basis orderings and spin operators for the maximal-spin Dicke sector.
//!
//! The bath is a collective spin `I = N/2`. Index `n` of a [`DickeBasis`]
//! holds `|N/2, −N/2 + n⟩`. With the central spin attached the layout is
//! the whole spin-down block followed by the whole spin-up block, so index
//! `n` is `|↓, n⟩` and index `N + 1 + n` is `|↑, n⟩`.

use alloc::vec::Vec;

use num_complex::Complex;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64};

const HERMITIAN_RTOL: f64 = 1e-12;
const NORM_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DickeBasis {
    n_bath: usize,
}

impl DickeBasis {
    pub fn new(n_bath: usize) -> Result<Self> {
        if n_bath == 0 {
            return Err(Error::InvalidParameter("bath size N must be at least 1".into()));
        }
        Ok(Self { n_bath })
    }

    #[inline]
    pub fn n_bath(&self) -> usize {
        self.n_bath
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n_bath + 1
    }

    /// Total spin `I = N/2`.
    #[inline]
    pub fn spin(&self) -> f64 {
        self.n_bath as f64 / 2.0
    }

    /// Magnetic quantum number of index `n`.
    #[inline]
    pub fn m_of(&self, n: usize) -> f64 {
        n as f64 - self.spin()
    }

    pub fn index_of_m(&self, m: f64) -> Option<usize> {
        let n = m + self.spin();
        if n < -0.25 || n > self.n_bath as f64 + 0.25 {
            return None;
        }
        let r = n.round();
        ((n - r).abs() < 1e-9).then_some(r as usize)
    }

    /// `⟨m+1| I+ |m⟩` for the state at index `n`, zero at the top.
    #[inline]
    pub fn raising_coefficient(&self, n: usize) -> f64 {
        let i = self.spin();
        let m = self.m_of(n);
        ((i - m) * (i + m + 1.0)).max(0.0).sqrt()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Spin {
    Down,
    Up,
}

impl Spin {
    /// `+1` for up, `−1` for down.
    pub fn sign(self) -> f64 {
        match self {
            Spin::Down => -1.0,
            Spin::Up => 1.0,
        }
    }

    pub fn excitation(self) -> usize {
        match self {
            Spin::Down => 0,
            Spin::Up => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CentralSpinBasis {
    n_bath: usize,
}

impl CentralSpinBasis {
    pub fn new(n_bath: usize) -> Result<Self> {
        DickeBasis::new(n_bath)?;
        Ok(Self { n_bath })
    }

    #[inline]
    pub fn n_bath(&self) -> usize {
        self.n_bath
    }

    #[inline]
    pub fn dim(&self) -> usize {
        2 * (self.n_bath + 1)
    }

    pub fn bath(&self) -> DickeBasis {
        DickeBasis { n_bath: self.n_bath }
    }

    #[inline]
    pub fn index(&self, s: Spin, n: usize) -> usize {
        debug_assert!(n <= self.n_bath);
        match s {
            Spin::Down => n,
            Spin::Up => self.n_bath + 1 + n,
        }
    }

    #[inline]
    pub fn decode(&self, idx: usize) -> (Spin, usize) {
        debug_assert!(idx < self.dim());
        if idx <= self.n_bath {
            (Spin::Down, idx)
        } else {
            (Spin::Up, idx - self.n_bath - 1)
        }
    }

    /// Index range of the spin-down block.
    pub fn down_block(&self) -> core::ops::Range<usize> {
        0..self.n_bath + 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    Dicke(DickeBasis),
    CentralSpin(CentralSpinBasis),
}

impl Basis {
    pub fn dim(&self) -> usize {
        match self {
            Basis::Dicke(b) => b.dim(),
            Basis::CentralSpin(b) => b.dim(),
        }
    }

    pub fn n_bath(&self) -> usize {
        match self {
            Basis::Dicke(b) => b.n_bath(),
            Basis::CentralSpin(b) => b.n_bath(),
        }
    }

    /// Parity `(−1)^(excitations)` of a basis index.
    pub fn parity_of(&self, idx: usize) -> i8 {
        let exc = match self {
            Basis::Dicke(_) => idx,
            Basis::CentralSpin(b) => {
                let (s, n) = b.decode(idx);
                s.excitation() + n
            }
        };
        if exc % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl From<DickeBasis> for Basis {
    fn from(b: DickeBasis) -> Self {
        Basis::Dicke(b)
    }
}

impl From<CentralSpinBasis> for Basis {
    fn from(b: CentralSpinBasis) -> Self {
        Basis::CentralSpin(b)
    }
}

/// Square complex matrix certified Hermitian at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianOperator {
    m: CMatrix,
}

impl HermitianOperator {
    pub fn new(m: CMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch {
                expected: m.rows(),
                found: m.cols(),
            });
        }
        let dev = m.hermitian_deviation();
        if dev > HERMITIAN_RTOL * m.max_abs() {
            return Err(Error::NotHermitian { deviation: dev });
        }
        Ok(Self { m })
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        Self {
            m: CMatrix::from_real_diagonal(diag),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    #[inline]
    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> CMatrix {
        self.m
    }

    /// `⟨ψ|O|ψ⟩`, real by construction.
    pub fn expectation(&self, psi: &StateVector) -> Result<f64> {
        check_dim(self.dim(), psi.dim())?;
        let ov = self.m.matvec(psi.amplitudes());
        Ok(crate::linalg::inner(psi.amplitudes(), &ov).re)
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Normalized amplitude vector tagged with its basis.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    basis: Basis,
    amps: Vec<C64>,
}

impl StateVector {
    pub fn new(basis: impl Into<Basis>, amps: Vec<C64>) -> Result<Self> {
        let basis = basis.into();
        check_dim(basis.dim(), amps.len())?;
        let norm_sq: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self { basis, amps })
    }

    /// Normalizes `amps` before wrapping them.
    pub fn normalized(basis: impl Into<Basis>, mut amps: Vec<C64>) -> Result<Self> {
        let basis = basis.into();
        check_dim(basis.dim(), amps.len())?;
        let nrm = crate::linalg::norm(&amps);
        if !(nrm > 0.0) || !nrm.is_finite() {
            return Err(Error::NotNormalized { norm_sq: nrm * nrm });
        }
        for z in amps.iter_mut() {
            *z /= nrm;
        }
        Ok(Self { basis, amps })
    }

    pub fn basis_state(basis: impl Into<Basis>, idx: usize) -> Result<Self> {
        let basis = basis.into();
        if idx >= basis.dim() {
            return Err(Error::DimensionMismatch {
                expected: basis.dim(),
                found: idx,
            });
        }
        let mut amps = alloc::vec![C64::zero(); basis.dim()];
        amps[idx] = C64::new(1.0, 0.0);
        Ok(Self { basis, amps })
    }

    #[inline]
    pub fn basis(&self) -> Basis {
        self.basis
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    #[inline]
    pub fn n_bath(&self) -> usize {
        self.basis.n_bath()
    }

    #[inline]
    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<C64> {
        check_dim(self.dim(), other.dim())?;
        Ok(crate::linalg::inner(&self.amps, &other.amps))
    }

    /// Euclidean distance `‖self − other‖`, phase-sensitive.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        check_dim(self.dim(), other.dim())?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    /// Weight outside the parity sector `sector` (±1).
    pub fn weight_outside_sector(&self, sector: i8) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| self.basis.parity_of(*i) != sector)
            .map(|(_, z)| z.norm_sqr())
            .sum()
    }

    /// `|s⟩ ⊗ |bath⟩` on the central-spin basis.
    pub fn with_central(s: Spin, bath: &StateVector) -> Result<Self> {
        let Basis::Dicke(db) = bath.basis else {
            return Err(Error::InvalidParameter(
                "bath state must live on the Dicke basis".into(),
            ));
        };
        let cb = CentralSpinBasis::new(db.n_bath())?;
        let mut amps = alloc::vec![C64::zero(); cb.dim()];
        for (n, &a) in bath.amps.iter().enumerate() {
            amps[cb.index(s, n)] = a;
        }
        Ok(Self {
            basis: cb.into(),
            amps,
        })
    }
}

/// Collective bath operators on a [`DickeBasis`].
#[derive(Clone, Debug)]
pub struct CollectiveOps {
    pub iz: HermitianOperator,
    pub ix: HermitianOperator,
    pub iy: HermitianOperator,
    pub iplus: CMatrix,
    pub iminus: CMatrix,
}

pub fn collective_ops(basis: &DickeBasis) -> CollectiveOps {
    let d = basis.dim();
    let iz_diag: Vec<f64> = (0..d).map(|n| basis.m_of(n)).collect();
    let mut iplus = CMatrix::zeros(d, d);
    for n in 0..d - 1 {
        iplus[(n + 1, n)] = C64::new(basis.raising_coefficient(n), 0.0);
    }
    let iminus = iplus.adjoint();
    let ix = (&iplus + &iminus).scale_real(0.5);
    let iy = (&iplus - &iminus).scale(C64::new(0.0, -0.5));
    CollectiveOps {
        iz: HermitianOperator::from_real_diagonal(&iz_diag),
        ix: HermitianOperator { m: ix },
        iy: HermitianOperator { m: iy },
        iplus,
        iminus,
    }
}

/// Single-spin operators in the `(↓, ↑)` ordering.
pub mod pauli {
    use super::*;

    fn m2(a: [[C64; 2]; 2]) -> CMatrix {
        CMatrix::from_fn(2, 2, |i, j| a[i][j])
    }

    const O: C64 = Complex::new(0.0, 0.0);
    const ONE: C64 = Complex::new(1.0, 0.0);
    const I: C64 = Complex::new(0.0, 1.0);

    pub fn identity() -> CMatrix {
        CMatrix::identity(2)
    }

    pub fn sigma_z() -> CMatrix {
        m2([[-ONE, O], [O, ONE]])
    }

    pub fn sigma_x() -> CMatrix {
        m2([[O, ONE], [ONE, O]])
    }

    pub fn sigma_y() -> CMatrix {
        m2([[O, I], [-I, O]])
    }

    /// `σ+ = |↑⟩⟨↓|`.
    pub fn sigma_plus() -> CMatrix {
        m2([[O, O], [ONE, O]])
    }

    pub fn sigma_minus() -> CMatrix {
        m2([[O, ONE], [O, O]])
    }
}

/// `op_central ⊗ op_bath` laid out on the central-spin basis.
pub fn embed_matrices(op_bath: &CMatrix, op_central: &CMatrix) -> Result<CMatrix> {
    if !op_bath.is_square() || op_bath.rows() < 2 {
        return Err(Error::DimensionMismatch {
            expected: op_bath.rows().max(2),
            found: op_bath.cols(),
        });
    }
    check_dim(2, op_central.rows())?;
    check_dim(2, op_central.cols())?;
    Ok(op_central.kron(op_bath))
}

pub fn embed_with_central(
    op_bath: &HermitianOperator,
    op_central: &HermitianOperator,
) -> Result<HermitianOperator> {
    Ok(HermitianOperator {
        m: embed_matrices(op_bath.matrix(), op_central.matrix())?,
    })
}

#[inline]
fn xlny(k: usize, y: f64) -> f64 {
    if k == 0 {
        0.0
    } else {
        k as f64 * y.ln()
    }
}

/// Natural logs of `C(N, n)` for `n = 0..=N`.
pub fn ln_binomials(n_total: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_total + 1);
    let mut acc = 0.0;
    out.push(acc);
    for k in 1..=n_total {
        acc += ((n_total - k + 1) as f64).ln() - (k as f64).ln();
        out.push(acc);
    }
    out
}

/// Spin coherent state pointing along `(θ0, φ0)`.
pub fn spin_coherent_state(basis: &DickeBasis, theta0: f64, phi0: f64) -> Result<StateVector> {
    if !(0.0..=core::f64::consts::PI).contains(&theta0) {
        return Err(Error::InvalidParameter("theta0 must lie in [0, π]".into()));
    }
    let n_total = basis.n_bath();
    let (s, c) = (theta0 / 2.0).sin_cos();
    let (s, c) = (s.abs(), c.abs());
    let lnb = ln_binomials(n_total);
    let amps = (0..=n_total)
        .map(|n| {
            let k = n_total - n;
            let ln_mag = 0.5 * lnb[n] + xlny(n, c) + xlny(k, s);
            let mag = if (n > 0 && c == 0.0) || (k > 0 && s == 0.0) {
                0.0
            } else {
                ln_mag.exp()
            };
            C64::from_polar(mag, phi0 * k as f64)
        })
        .collect();
    StateVector::normalized(*basis, amps)
}

/// `Π = exp[iπ(σ+σ− + Iz + N/2)]`.
pub fn parity_operator(basis: &CentralSpinBasis) -> HermitianOperator {
    let b: Basis = (*basis).into();
    let diag: Vec<f64> = (0..basis.dim()).map(|i| b.parity_of(i) as f64).collect();
    HermitianOperator::from_real_diagonal(&diag)
}

/// `exp[iπ(Iz + N/2)]` on the bath alone.
pub fn bath_parity_operator(basis: &DickeBasis) -> HermitianOperator {
    let diag: Vec<f64> = (0..basis.dim())
        .map(|n| if n % 2 == 0 { 1.0 } else { -1.0 })
        .collect();
    HermitianOperator::from_real_diagonal(&diag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn spin_half_operators() {
        let ops = collective_ops(&DickeBasis::new(1).unwrap());
        assert_eq!(ops.iz.matrix()[(0, 0)], c(-0.5));
        assert_eq!(ops.iz.matrix()[(1, 1)], c(0.5));
        assert_eq!(ops.iplus[(1, 0)], c(1.0));
        assert_eq!(ops.iplus[(0, 1)], c(0.0));
    }

    #[test]
    fn spin_one_ladder() {
        let ops = collective_ops(&DickeBasis::new(2).unwrap());
        let r2 = 2f64.sqrt();
        assert!((ops.iplus[(1, 0)] - c(r2)).norm() < 1e-15);
        assert!((ops.iplus[(2, 1)] - c(r2)).norm() < 1e-15);
    }

    fn su2_error(n: usize) -> f64 {
        let ops = collective_ops(&DickeBasis::new(n).unwrap());
        let (x, y, z) = (ops.ix.matrix(), ops.iy.matrix(), ops.iz.matrix());
        let i = C64::new(0.0, 1.0);
        let e1 = (&x.commutator(y) - &z.scale(i)).max_abs();
        let e2 = (&y.commutator(z) - &x.scale(i)).max_abs();
        let e3 = (&z.commutator(x) - &y.scale(i)).max_abs();
        e1.max(e2).max(e3)
    }

    #[test]
    fn su2_algebra_small_and_large() {
        for n in [1, 2, 3, 10, 57] {
            let j = n as f64 / 2.0;
            assert!(su2_error(n) < 1e-12 * j.max(1.0).powi(2), "N={n}");
        }
    }

    #[test]
    fn su2_algebra_n2000() {
        // Entries reach I² ~ 1e6, so the bound is taken relative to that scale.
        assert!(su2_error(2000) < 1e-12 * 1000.0 * 1000.0);
    }

    #[test]
    fn casimir() {
        for n in [1, 4, 31] {
            let ops = collective_ops(&DickeBasis::new(n).unwrap());
            let sq = |m: &CMatrix| m.matmul(m);
            let cas = &(&sq(ops.ix.matrix()) + &sq(ops.iy.matrix())) + &sq(ops.iz.matrix());
            let j = n as f64 / 2.0;
            let target = CMatrix::identity(n + 1).scale_real(j * (j + 1.0));
            assert!((&cas - &target).max_abs() < 1e-10);
        }
    }

    #[test]
    fn embedding_examples() {
        let b = DickeBasis::new(1).unwrap();
        let ops = collective_ops(&b);
        let id2 = HermitianOperator::new(pauli::identity()).unwrap();
        let sz = HermitianOperator::new(pauli::sigma_z()).unwrap();
        let idb = HermitianOperator::new(CMatrix::identity(2)).unwrap();

        let e = embed_with_central(&idb, &sz).unwrap();
        let d: Vec<f64> = (0..4).map(|i| e.matrix()[(i, i)].re).collect();
        assert_eq!(d, [-1.0, -1.0, 1.0, 1.0]);

        let e = embed_with_central(&ops.iz, &id2).unwrap();
        let d: Vec<f64> = (0..4).map(|i| e.matrix()[(i, i)].re).collect();
        assert_eq!(d, [-0.5, 0.5, -0.5, 0.5]);

        let e = embed_with_central(&ops.iz, &sz).unwrap();
        let d: Vec<f64> = (0..4).map(|i| e.matrix()[(i, i)].re).collect();
        assert_eq!(d, [0.5, -0.5, -0.5, 0.5]);
        assert!(e.matrix().is_real());

        assert!(embed_matrices(&CMatrix::identity(2), &CMatrix::identity(3)).is_err());
    }

    #[test]
    fn coherent_state_examples() {
        let b = DickeBasis::new(2).unwrap();
        let psi = spin_coherent_state(&b, core::f64::consts::FRAC_PI_2, 0.0).unwrap();
        let want = [0.5, core::f64::consts::FRAC_1_SQRT_2, 0.5];
        for (a, w) in psi.amplitudes().iter().zip(want) {
            assert!((a - c(w)).norm() < 1e-15);
        }
        let b = DickeBasis::new(7).unwrap();
        let up = spin_coherent_state(&b, 0.0, 0.3).unwrap();
        assert!((up.amplitudes()[7] - c(1.0)).norm() < 1e-15);
        let down = spin_coherent_state(&b, core::f64::consts::PI, 0.0).unwrap();
        assert!((down.amplitudes()[0].norm() - 1.0).abs() < 1e-15);
        assert!(spin_coherent_state(&b, 4.0, 0.0).is_err());
    }

    #[test]
    fn coherent_state_no_overflow() {
        let b = DickeBasis::new(3000).unwrap();
        let psi = spin_coherent_state(&b, 1.1, 0.4).unwrap();
        assert!(psi.amplitudes().iter().all(|z| z.re.is_finite() && z.im.is_finite()));
    }

    #[test]
    fn parity_examples() {
        let cb = CentralSpinBasis::new(3).unwrap();
        let p = parity_operator(&cb);
        assert_eq!(p.matrix()[(cb.index(Spin::Down, 0), cb.index(Spin::Down, 0))], c(1.0));
        assert_eq!(p.matrix()[(cb.index(Spin::Up, 0), cb.index(Spin::Up, 0))], c(-1.0));
        let sq = p.matrix().matmul(p.matrix());
        assert_eq!(sq, CMatrix::identity(cb.dim()));
    }

    #[test]
    fn basis_decode_roundtrip() {
        let cb = CentralSpinBasis::new(5).unwrap();
        for idx in 0..cb.dim() {
            let (s, n) = cb.decode(idx);
            assert_eq!(cb.index(s, n), idx);
        }
        assert_eq!(cb.dim(), 12);
        let db = DickeBasis::new(5).unwrap();
        for n in 0..db.dim() {
            assert_eq!(db.index_of_m(db.m_of(n)), Some(n));
        }
        assert!(DickeBasis::new(0).is_err());
    }

    #[test]
    fn state_vector_checks() {
        let db = DickeBasis::new(1).unwrap();
        assert!(StateVector::new(db, alloc::vec![c(1.0), c(1.0)]).is_err());
        assert!(StateVector::new(db, alloc::vec![c(1.0)]).is_err());
        assert!(StateVector::normalized(db, alloc::vec![c(0.0), c(0.0)]).is_err());
        let h = CMatrix::from_rows(2, 2, alloc::vec![c(0.0), c(1.0), c(0.0), c(0.0)]).unwrap();
        assert!(matches!(HermitianOperator::new(h), Err(Error::NotHermitian { .. })));
    }

    proptest! {
        #[test]
        fn coherent_moments(theta in 0.0..core::f64::consts::PI, phi in -3.0..3.0f64, idx in 0usize..3) {
            let n = [1usize, 10, 100][idx];
            let b = DickeBasis::new(n).unwrap();
            let psi = spin_coherent_state(&b, theta, phi).unwrap();
            let nf = n as f64;
            let (mut z, mut z2) = (0.0, 0.0);
            for (k, a) in psi.amplitudes().iter().enumerate() {
                let m = b.m_of(k);
                z += a.norm_sqr() * m;
                z2 += a.norm_sqr() * m * m;
            }
            prop_assert!((z - nf / 2.0 * theta.cos()).abs() < 1e-9);
            let want = nf / 8.0 * (nf + 1.0 + (nf - 1.0) * (2.0 * theta).cos());
            prop_assert!((z2 - want).abs() < 1e-9);
        }
    }
}
