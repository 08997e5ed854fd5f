use crate::error::{Error, Result};
use crate::real::Real;

/// Bisection root finder on [lo, hi]; f(lo) and f(hi) must straddle zero.
/// Runs until the bracket is narrower than `xtol`.
pub fn bisect<T: Real, F: Fn(T) -> T>(f: F, lo: T, hi: T, xtol: T) -> Result<T> {
    let mut lo = lo;
    let mut hi = hi;
    let mut flo = f(lo);
    let fhi = f(hi);

    if flo == T::zero() {
        return Ok(lo);
    }
    if fhi == T::zero() {
        return Ok(hi);
    }
    if (flo > T::zero()) == (fhi > T::zero()) {
        return Err(Error::NoBracket {
            lo: lo.as_f64(),
            hi: hi.as_f64(),
        });
    }

    let half = T::of(0.5);
    // The bracket halves every step; 200 iterations is past f64 exhaustion.
    for _ in 0..200 {
        let mid = half * (lo + hi);
        if mid <= lo || mid >= hi || (hi - lo) < xtol {
            return Ok(mid);
        }
        let fmid = f(mid);
        if fmid == T::zero() {
            return Ok(mid);
        }
        if (fmid > T::zero()) == (flo > T::zero()) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    Ok(half * (lo + hi))
}
