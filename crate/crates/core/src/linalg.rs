use ndarray::Array2;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::real::Real;

/// Eigendecomposition of a real symmetric tridiagonal matrix by the implicit
/// QL method with Wilkinson shifts. `diag` holds the n diagonal entries,
/// `offdiag` the n-1 subdiagonal entries. Returns unsorted eigenvalues and
/// the orthogonal matrix whose columns are the matching eigenvectors.
pub fn sym_tridiag_eigen<T: Real>(diag: &[T], offdiag: &[T]) -> Result<(Vec<T>, Array2<T>)> {
    let n = diag.len();
    assert!(n > 0, "empty matrix");
    assert_eq!(offdiag.len(), n.saturating_sub(1));

    let mut d = diag.to_vec();
    let mut e = offdiag.to_vec();
    e.push(T::zero());
    let mut z = Array2::<T>::eye(n);

    let two = T::of(2.0);
    for l in 0..n {
        let mut iter = 0usize;
        loop {
            // Look for a negligible subdiagonal element to split the matrix.
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= T::epsilon() * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 64 {
                return Err(Error::EigenNoConvergence);
            }

            // Wilkinson-style shift from the leading 2x2 block.
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(T::one());
            g = d[m] - d[l] + e[l] / (g + copysign(r, g));
            let mut s = T::one();
            let mut c = T::one();
            let mut p = T::zero();

            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] -= p;
                    e[m] = T::zero();
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for k in 0..n {
                    f = z[[k, i + 1]];
                    z[[k, i + 1]] = s * z[[k, i]] + c * f;
                    z[[k, i]] = c * z[[k, i]] - s * f;
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = T::zero();
        }
    }

    Ok((d, z))
}

fn copysign<T: Real>(magnitude: T, sign: T) -> T {
    if sign >= T::zero() {
        magnitude.abs()
    } else {
        -magnitude.abs()
    }
}

/// Dense complex matrix exponential by scaling and squaring with a Taylor
/// kernel. Intended as an independent cross-check of spectral methods, not a
/// large-scale solver.
pub fn expm<T: Real>(a: &Array2<Complex<T>>) -> Array2<Complex<T>> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "expm requires a square matrix");

    // Column-sum norm decides the number of halvings.
    let norm = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| a[[i, j]].norm())
                .fold(T::zero(), |acc, v| acc + v)
        })
        .fold(T::zero(), |acc, v| if v > acc { v } else { acc });

    let mut squarings = 0u32;
    let mut scale = T::one();
    if norm > T::of(0.5) {
        let exp = (norm / T::of(0.5)).log2().ceil();
        squarings = exp.to_u32().unwrap_or(0).min(64);
        scale = T::of(0.5).powi(squarings as i32);
    }

    let b = a.mapv(|v| v * Complex::new(scale, T::zero()));

    // Taylor series of exp(b); converges fast since ||b|| <= 1/2.
    let mut result = Array2::<Complex<T>>::eye(n);
    let mut term = Array2::<Complex<T>>::eye(n);
    for k in 1..=24u32 {
        term = term.dot(&b);
        let inv_k = Complex::new(T::one() / T::of(f64::from(k)), T::zero());
        term.mapv_inplace(|v| v * inv_k);
        result += &term;
    }

    for _ in 0..squarings {
        result = result.dot(&result);
    }
    result
}

/// [a, b] = ab - ba.
pub fn commutator<T: Real>(a: &Array2<Complex<T>>, b: &Array2<Complex<T>>) -> Array2<Complex<T>> {
    a.dot(b) - b.dot(a)
}

/// Largest entrywise |a[i,j] - conj(a[j,i])|.
pub fn hermiticity_error<T: Real>(a: &Array2<Complex<T>>) -> T {
    let n = a.nrows();
    let mut worst = T::zero();
    for i in 0..n {
        for j in 0..n {
            let dev = (a[[i, j]] - a[[j, i]].conj()).norm();
            if dev > worst {
                worst = dev;
            }
        }
    }
    worst
}

/// Largest entrywise modulus of a - b.
pub fn max_abs_diff<T: Real>(a: &Array2<Complex<T>>, b: &Array2<Complex<T>>) -> T {
    let mut worst = T::zero();
    for (x, y) in a.iter().zip(b.iter()) {
        let dev = (*x - *y).norm();
        if dev > worst {
            worst = dev;
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn tridiag_eigen_identity() {
        let (vals, vecs) = sym_tridiag_eigen::<f64>(&[1.0, 1.0, 1.0], &[0.0, 0.0]).unwrap();
        for v in vals {
            assert!((v - 1.0).abs() < 1e-14);
        }
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((vecs[[i, j]] - expect).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn tridiag_eigen_known_2x2() {
        // [[0, 1/2], [1/2, 0]] has eigenvalues +/- 1/2.
        let (mut vals, vecs) = sym_tridiag_eigen::<f64>(&[0.0, 0.0], &[0.5]).unwrap();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((vals[0] + 0.5).abs() < 1e-14);
        assert!((vals[1] - 0.5).abs() < 1e-14);
        // Columns orthonormal.
        for j in 0..2 {
            let norm: f64 = (0..2).map(|i| vecs[[i, j]] * vecs[[i, j]]).sum();
            assert!((norm - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn tridiag_eigen_residuals() {
        // A random-ish symmetric tridiagonal matrix; check A v = lambda v.
        let d = [0.3, -1.2, 2.0, 0.7, -0.1];
        let e = [1.1, 0.4, -0.9, 0.6];
        let (vals, vecs) = sym_tridiag_eigen::<f64>(&d, &e).unwrap();
        for j in 0..5 {
            for i in 0..5 {
                let mut av = d[i] * vecs[[i, j]];
                if i > 0 {
                    av += e[i - 1] * vecs[[i - 1, j]];
                }
                if i + 1 < 5 {
                    av += e[i] * vecs[[i + 1, j]];
                }
                assert!(
                    (av - vals[j] * vecs[[i, j]]).abs() < 1e-12,
                    "residual too large at ({i}, {j})"
                );
            }
        }
    }

    #[test]
    fn expm_diagonal() {
        let mut a = Array2::<Complex64>::zeros((2, 2));
        a[[0, 0]] = Complex64::new(0.0, 1.0);
        a[[1, 1]] = Complex64::new(0.0, -2.0);
        let e = expm(&a);
        assert!((e[[0, 0]] - Complex64::cis(1.0)).norm() < 1e-14);
        assert!((e[[1, 1]] - Complex64::cis(-2.0)).norm() < 1e-14);
        assert!(e[[0, 1]].norm() < 1e-15);
    }

    #[test]
    fn expm_pauli_x_rotation() {
        // exp(-i t X) = cos(t) I - i sin(t) X.
        let t = 0.77;
        let mut a = Array2::<Complex64>::zeros((2, 2));
        a[[0, 1]] = Complex64::new(0.0, -t);
        a[[1, 0]] = Complex64::new(0.0, -t);
        let e = expm(&a);
        assert!((e[[0, 0]] - Complex64::new(t.cos(), 0.0)).norm() < 1e-14);
        assert!((e[[0, 1]] - Complex64::new(0.0, -t.sin())).norm() < 1e-14);
    }
}
