//! Two-mode Schwinger operator algebra for a fixed total photon number.
//!
//! The two field modes map onto spin operators J1, J2, J3 with total spin
//! l = N/2 acting on the (N+1)-dimensional photon-number-difference space.
//! J3 generates phase shifts between the interferometer paths; J1 is the
//! input/output intensity difference. All values are in units of hbar = 1.

use ndarray::Array2;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::linalg::sym_tridiag_eigen;
use crate::real::Real;

/// Experiment knobs: total photon number N, input half photon-number
/// difference m_psi, and output half photon-number difference m.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwoModeConfig {
    n: u32,
    m_psi: HalfInt,
    m: HalfInt,
}

impl TwoModeConfig {
    /// Validates range (|m| <= N/2, |m_psi| <= N/2) and parity (2m and 2m_psi
    /// must have the same parity as N so the port photon counts N/2 +/- m are
    /// nonnegative integers).
    pub fn new(n: u32, m_psi: HalfInt, m: HalfInt) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPhotonNumber(n));
        }
        for (name, v) in [("m_psi", m_psi), ("m", m)] {
            if v.doubled().unsigned_abs() > n {
                return Err(Error::DiffOutOfRange {
                    name,
                    value: v.value::<f64>(),
                    limit: f64::from(n) / 2.0,
                });
            }
            if v.doubled().rem_euclid(2) != (n % 2) as i32 {
                return Err(Error::ParityMismatch {
                    name,
                    doubled: v.doubled(),
                    n,
                });
            }
        }
        Ok(TwoModeConfig { n, m_psi, m })
    }

    /// Convenience constructor from doubled differences (integers 2m_psi, 2m).
    pub fn from_doubled(n: u32, two_m_psi: i32, two_m: i32) -> Result<Self> {
        TwoModeConfig::new(
            n,
            HalfInt::from_doubled(two_m_psi),
            HalfInt::from_doubled(two_m),
        )
    }

    pub fn photons(&self) -> u32 {
        self.n
    }

    pub fn input_diff(&self) -> HalfInt {
        self.m_psi
    }

    pub fn output_diff(&self) -> HalfInt {
        self.m
    }

    /// Configuration with input and output exchanged.
    pub fn exchanged(&self) -> TwoModeConfig {
        TwoModeConfig {
            n: self.n,
            m_psi: self.m,
            m: self.m_psi,
        }
    }

    pub fn dim(&self) -> usize {
        self.n as usize + 1
    }
}

/// Dense Hermitian matrices for J1, J2, J3 in the J3 eigenbasis, ordered by
/// descending J3 eigenvalue N/2, N/2 - 1, ..., -N/2.
#[derive(Clone, Debug)]
pub struct OperatorSet<T: Real> {
    dim: usize,
    j1: Array2<Complex<T>>,
    j2: Array2<Complex<T>>,
    j3: Array2<Complex<T>>,
    j3_eigenvalues: Vec<T>,
}

impl<T: Real> OperatorSet<T> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn j1(&self) -> &Array2<Complex<T>> {
        &self.j1
    }

    pub fn j2(&self) -> &Array2<Complex<T>> {
        &self.j2
    }

    pub fn j3(&self) -> &Array2<Complex<T>> {
        &self.j3
    }

    pub fn j3_eigenvalues(&self) -> &[T] {
        &self.j3_eigenvalues
    }
}

/// Builds the spin-(N/2) operator triple from the ladder-operator matrix
/// elements. Rejects N = 0, where the algebra degenerates to one dimension.
pub fn build_operator_set<T: Real>(n: u32) -> Result<OperatorSet<T>> {
    if n == 0 {
        return Err(Error::InvalidPhotonNumber(n));
    }
    let dim = n as usize + 1;
    let l = T::of(f64::from(n) / 2.0);

    let eigenvalues: Vec<T> = (0..dim).map(|k| l - T::of(k as f64)).collect();

    let mut j1 = Array2::<Complex<T>>::zeros((dim, dim));
    let mut j2 = Array2::<Complex<T>>::zeros((dim, dim));
    let mut j3 = Array2::<Complex<T>>::zeros((dim, dim));

    for k in 0..dim {
        j3[[k, k]] = Complex::new(eigenvalues[k], T::zero());
    }
    let half = T::of(0.5);
    for k in 0..dim - 1 {
        // <l, m_k | J+ | l, m_{k+1}> = sqrt(l(l+1) - m_k m_{k+1}).
        let c = (l * (l + T::one()) - eigenvalues[k] * eigenvalues[k + 1]).sqrt();
        j1[[k, k + 1]] = Complex::new(half * c, T::zero());
        j1[[k + 1, k]] = Complex::new(half * c, T::zero());
        j2[[k, k + 1]] = Complex::new(T::zero(), -half * c);
        j2[[k + 1, k]] = Complex::new(T::zero(), half * c);
    }

    Ok(OperatorSet {
        dim,
        j1,
        j2,
        j3,
        j3_eigenvalues: eigenvalues,
    })
}

/// Which operator a measurement basis diagonalizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisLabel {
    /// Input/output photon-number difference basis.
    J1,
    /// Path (interferometer arm) difference basis.
    J3,
}

/// Orthonormal eigenbasis of a J component, columns ordered by descending
/// eigenvalue and expressed in the J3 basis. All components are real; each
/// column's first nonzero entry (scanning from the m3 = N/2 end) is positive.
#[derive(Clone, Debug)]
pub struct MeasurementBasis<T: Real> {
    label: BasisLabel,
    vectors: Array2<T>,
    eigenvalues: Vec<T>,
}

impl<T: Real> MeasurementBasis<T> {
    pub fn label(&self) -> BasisLabel {
        self.label
    }

    /// Column k is the eigenvector for eigenvalue N/2 - k.
    pub fn vectors(&self) -> &Array2<T> {
        &self.vectors
    }

    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Index of the eigenvector with eigenvalue `m`, using the descending
    /// ordering m = N/2 - k.
    pub fn index_of(&self, m: HalfInt) -> usize {
        level_index(self.dim() as u32 - 1, m)
    }
}

/// Eigenbasis of J1, built by explicit diagonalization of its tridiagonal
/// representation in the J3 basis, sorted by descending eigenvalue and
/// sign-fixed.
pub fn j1_eigenbasis<T: Real>(ops: &OperatorSet<T>) -> Result<MeasurementBasis<T>> {
    let dim = ops.dim();
    let diag = vec![T::zero(); dim];
    let offdiag: Vec<T> = (0..dim - 1).map(|k| ops.j1[[k, k + 1]].re).collect();

    let (vals, vecs) = sym_tridiag_eigen(&diag, &offdiag)?;

    // Sort columns by descending eigenvalue.
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| vals[b].partial_cmp(&vals[a]).unwrap());

    let mut vectors = Array2::<T>::zeros((dim, dim));
    let mut eigenvalues = Vec::with_capacity(dim);
    let sign_floor = T::epsilon() * T::of(16.0);
    for (col, &src) in order.iter().enumerate() {
        eigenvalues.push(vals[src]);
        let mut sign = T::one();
        for row in 0..dim {
            let v = vecs[[row, src]];
            if v.abs() > sign_floor {
                if v < T::zero() {
                    sign = -T::one();
                }
                break;
            }
        }
        for row in 0..dim {
            vectors[[row, col]] = sign * vecs[[row, src]];
        }
    }

    Ok(MeasurementBasis {
        label: BasisLabel::J1,
        vectors,
        eigenvalues,
    })
}

/// The trivial J3 eigenbasis (identity matrix), provided for completeness.
pub fn j3_eigenbasis<T: Real>(n: u32) -> Result<MeasurementBasis<T>> {
    let ops = build_operator_set::<T>(n)?;
    Ok(MeasurementBasis {
        label: BasisLabel::J3,
        vectors: Array2::<T>::eye(ops.dim()),
        eigenvalues: ops.j3_eigenvalues.clone(),
    })
}

/// Index of eigenvalue `m` in the descending ordering m = N/2 - k.
pub fn level_index(n: u32, m: HalfInt) -> usize {
    let k2 = i64::from(n) - i64::from(m.doubled());
    debug_assert!(k2 >= 0 && k2 % 2 == 0, "m out of range for N");
    (k2 / 2) as usize
}
