//! Quadrature kernels: an adaptive Gauss-Kronrod rule for the action
//! integrals and a fixed-order composite Gauss-Legendre rule used as an
//! independent cross-check.

#![allow(clippy::excessive_precision)] // canonical quadrature node tables

use crate::error::{Error, Result};
use crate::real::Real;

// 15-point Kronrod nodes on [-1, 1] (nonnegative half; symmetric).
const KRONROD_NODES: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

const KRONROD_WEIGHTS: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

// Embedded 7-point Gauss weights (for Kronrod nodes 1, 3, 5, 7).
const GAUSS_WEIGHTS: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T) -> (T, T) {
    let half = T::of(0.5);
    let center = half * (a + b);
    let half_len = half * (b - a);

    let mut kronrod = T::zero();
    let mut gauss = T::zero();
    for (i, (&x, &wk)) in KRONROD_NODES.iter().zip(&KRONROD_WEIGHTS).enumerate() {
        let x = T::of(x);
        let wk = T::of(wk);
        let value = if i == 7 {
            f(center)
        } else {
            f(center + half_len * x) + f(center - half_len * x)
        };
        kronrod += wk * value;
        if i % 2 == 1 {
            gauss += T::of(GAUSS_WEIGHTS[i / 2]) * value;
        }
    }
    let integral = kronrod * half_len;
    let error = ((kronrod - gauss) * half_len).abs();
    (integral, error)
}

/// Integrates f over [a, b] (a may exceed b) to the requested absolute
/// tolerance by adaptive bisection of the Gauss-Kronrod 7/15 pair.
pub fn adaptive_quadrature<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T, abs_tol: T) -> Result<T> {
    if a == b {
        return Ok(T::zero());
    }
    let (lo, hi, flip) = if a < b { (a, b, false) } else { (b, a, true) };

    const MAX_DEPTH: usize = 52;
    let mut total = T::zero();
    let mut stack = vec![(lo, hi, 0usize)];
    let floor = T::epsilon() * T::of(4.0);
    while let Some((x0, x1, depth)) = stack.pop() {
        let (integral, error) = gk15(f, x0, x1);
        let local_tol = abs_tol * ((x1 - x0) / (hi - lo));
        if error <= local_tol || error <= floor * integral.abs() {
            total += integral;
        } else if depth >= MAX_DEPTH {
            return Err(Error::QuadratureNoConvergence);
        } else {
            let mid = T::of(0.5) * (x0 + x1);
            if mid <= x0 || mid >= x1 {
                return Err(Error::QuadratureNoConvergence);
            }
            stack.push((x0, mid, depth + 1));
            stack.push((mid, x1, depth + 1));
        }
    }
    Ok(if flip { -total } else { total })
}

// 10-point Gauss-Legendre nodes and weights on [-1, 1] (nonnegative half).
const GL10_NODES: [f64; 5] = [
    0.148874338981631210884826001129720,
    0.433395394129247190799265943165784,
    0.679409568299024406234327365114874,
    0.865063366688984510732096688423493,
    0.973906528517171720077964012084452,
];

const GL10_WEIGHTS: [f64; 5] = [
    0.295524224714752870173892994651338,
    0.269266719309996355091226921569469,
    0.219086362515982043995534934228163,
    0.149451349150580593145776339657697,
    0.066671344308688137593568809893332,
];

/// Composite fixed-order Gauss-Legendre rule; independent of the adaptive
/// path, used to cross-validate action integrals.
pub fn gauss_legendre_fixed<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T, panels: usize) -> T {
    let panels = panels.max(1);
    let step = (b - a) / T::of(panels as f64);
    let half = T::of(0.5);
    let mut total = T::zero();
    for p in 0..panels {
        let x0 = a + step * T::of(p as f64);
        let x1 = x0 + step;
        let center = half * (x0 + x1);
        let half_len = half * (x1 - x0);
        for (&x, &w) in GL10_NODES.iter().zip(&GL10_WEIGHTS) {
            let x = T::of(x);
            let w = T::of(w);
            total += w * half_len * (f(center + half_len * x) + f(center - half_len * x));
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn constant_and_linear() {
        let v = adaptive_quadrature(&|_x: f64| 4.0, -1.0, 5.0, 1e-12).unwrap();
        assert!((v - 24.0).abs() < 1e-12);
        let v = adaptive_quadrature(&|x: f64| x + 2.0, 1.0, -1.0, 1e-12).unwrap();
        assert!((v + 4.0).abs() < 1e-12);
    }

    #[test]
    fn oscillating() {
        let v = adaptive_quadrature(&|x: f64| x.sin(), 0.0, 1.5 * PI, 1e-12).unwrap();
        assert!((v - 1.0).abs() < 1e-11);
    }

    #[test]
    fn sqrt_endpoint_singularity_in_derivative() {
        // int_0^1 sqrt(x) dx = 2/3; derivative blows up at 0.
        let v = adaptive_quadrature(&|x: f64| x.sqrt(), 0.0, 1.0, 1e-10).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn adaptive_matches_fixed_rule() {
        let f = |x: f64| (3.0 * x).cos() * (-x).exp();
        let adaptive = adaptive_quadrature(&f, 0.1, 2.3, 1e-12).unwrap();
        let fixed = gauss_legendre_fixed(&f, 0.1, 2.3, 64);
        assert!((adaptive - fixed).abs() < 1e-11);
    }
}
