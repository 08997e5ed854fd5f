//! Adaptive Dormand-Prince 5(4) integrator with local error control and
//! step-size adaptation. Small fixed-dimension state vectors are enough for
//! the second-order fringe equation.

use crate::error::{Error, Result};
use crate::real::Real;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

// 5th-order solution weights (also the final stage of the FSAL pair).
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;

// Difference between the 5th- and 4th-order weights (error estimate).
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn axpy<T: Real, const D: usize>(y: &[T; D], pairs: &[(f64, &[T; D])], h: T) -> [T; D] {
    let mut out = *y;
    for (coef, k) in pairs {
        let c = T::of(*coef) * h;
        for i in 0..D {
            out[i] += c * k[i];
        }
    }
    out
}

/// Integrates y' = f(t, y) from `t0` to the last entry of `points`,
/// recording the solution at every requested point. Points must be strictly
/// increasing and not precede `t0`.
pub fn integrate_to_points<T: Real, const D: usize, F>(
    f: F,
    t0: T,
    y0: [T; D],
    points: &[T],
    rtol: T,
    atol: T,
) -> Result<Vec<[T; D]>>
where
    F: Fn(T, &[T; D]) -> [T; D],
{
    let mut output = Vec::with_capacity(points.len());
    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, &y);

    let span = match points.last() {
        Some(&last) => last - t0,
        None => return Ok(output),
    };
    if span < T::zero() {
        return Err(Error::Domain("output points precede the start".into()));
    }

    let mut h = (span / T::of(128.0)).max(T::epsilon().sqrt());
    let safety = T::of(0.9);
    let min_scale = T::of(0.2);
    let max_scale = T::of(5.0);
    let order_root = T::of(0.2);

    for &target in points {
        if target < t {
            return Err(Error::Domain("output points must be increasing".into()));
        }
        while t < target {
            let h_step = h.min(target - t);
            let floor = T::epsilon() * T::of(64.0) * t.abs().max(T::one());
            if h_step < floor {
                return Err(Error::StepSizeUnderflow { phi: t.as_f64() });
            }

            let k2 = f(t + T::of(C2) * h_step, &axpy(&y, &[(A21, &k1)], h_step));
            let k3 = f(
                t + T::of(C3) * h_step,
                &axpy(&y, &[(A31, &k1), (A32, &k2)], h_step),
            );
            let k4 = f(
                t + T::of(C4) * h_step,
                &axpy(&y, &[(A41, &k1), (A42, &k2), (A43, &k3)], h_step),
            );
            let k5 = f(
                t + T::of(C5) * h_step,
                &axpy(
                    &y,
                    &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)],
                    h_step,
                ),
            );
            let k6 = f(
                t + h_step,
                &axpy(
                    &y,
                    &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
                    h_step,
                ),
            );
            let y_new = axpy(
                &y,
                &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)],
                h_step,
            );
            let k7 = f(t + h_step, &y_new);

            // Weighted RMS error of the embedded pair.
            let mut err_sq = T::zero();
            for i in 0..D {
                let e = h_step
                    * (T::of(E1) * k1[i]
                        + T::of(E3) * k3[i]
                        + T::of(E4) * k4[i]
                        + T::of(E5) * k5[i]
                        + T::of(E6) * k6[i]
                        + T::of(E7) * k7[i]);
                let scale = atol + rtol * y[i].abs().max(y_new[i].abs());
                err_sq += (e / scale) * (e / scale);
            }
            let err = (err_sq / T::of(D as f64)).sqrt();

            if err <= T::one() {
                t += h_step;
                y = y_new;
                k1 = k7;
                let grow = if err == T::zero() {
                    max_scale
                } else {
                    (safety * err.powf(-order_root)).min(max_scale)
                };
                h = h_step * grow.max(min_scale);
            } else {
                h = h_step * (safety * err.powf(-order_root)).max(min_scale);
            }
        }
        output.push(y);
    }
    Ok(output)
}
