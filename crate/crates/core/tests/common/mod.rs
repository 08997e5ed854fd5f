//! Independent oracles shared by the integration tests. Everything here is
//! computed from closed forms or textbook recurrences, never through the
//! library code paths under test.

#![allow(dead_code)]

/// ln(n!) by direct summation.
pub fn ln_factorial(n: i64) -> f64 {
    assert!(n >= 0);
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Wigner small-d matrix element d^j_{mp,m}(beta) from the factorial sum
/// formula, with doubled arguments so half-integer spins stay exact.
pub fn wigner_d(two_j: i64, two_mp: i64, two_m: i64, beta: f64) -> f64 {
    assert!(two_mp.abs() <= two_j && two_m.abs() <= two_j);
    assert_eq!((two_j + two_mp) % 2, 0);
    assert_eq!((two_j + two_m) % 2, 0);
    let jpm = (two_j + two_m) / 2;
    let jmm = (two_j - two_m) / 2;
    let jpmp = (two_j + two_mp) / 2;
    let jmmp = (two_j - two_mp) / 2;

    let prefactor =
        0.5 * (ln_factorial(jpmp) + ln_factorial(jmmp) + ln_factorial(jpm) + ln_factorial(jmm));
    let (cos_half, sin_half) = ((beta / 2.0).cos(), (beta / 2.0).sin());

    let s_min = 0.max(-(two_mp - two_m) / 2);
    let s_max = jpm.min(jmmp);
    let mut sum = 0.0;
    for s in s_min..=s_max {
        let mpmm = (two_mp - two_m) / 2;
        let ln_den = ln_factorial(jpm - s)
            + ln_factorial(s)
            + ln_factorial(mpmm + s)
            + ln_factorial(jmmp - s);
        // cos^(2j + m - mp - 2s), sin^(mp - m + 2s).
        let e_cos = two_j + (two_m - two_mp) / 2 - 2 * s;
        let e_sin = mpmm + 2 * s;
        let sign = if ((mpmm + s) % 2).rem_euclid(2) == 1 {
            -1.0
        } else {
            1.0
        };
        sum += sign
            * (prefactor - ln_den).exp()
            * cos_half.powi(e_cos as i32)
            * sin_half.powi(e_sin as i32);
    }
    sum
}

/// Legendre polynomial P_l(x) by the three-term recurrence.
pub fn legendre_p(l: u32, x: f64) -> f64 {
    match l {
        0 => 1.0,
        1 => x,
        _ => {
            let mut pm2 = 1.0;
            let mut pm1 = x;
            for k in 1..l {
                let k = k as f64;
                let p = ((2.0 * k + 1.0) * x * pm1 - k * pm2) / (k + 1.0);
                pm2 = pm1;
                pm1 = p;
            }
            pm1
        }
    }
}

/// Closed-form classical support bounds inside (0, pi): the radicand is a
/// downward quadratic in cos(phi), so the endpoints are
/// cos(phi) = (m_psi m +/- sqrt((C - m_psi^2)(C - m^2))) / C
/// with C the squared vector length.
pub fn analytic_support(c: f64, m_psi: f64, m: f64) -> Option<(f64, f64)> {
    let disc = (c - m_psi * m_psi) * (c - m * m);
    if disc < 0.0 {
        return None;
    }
    let c_hi = ((m_psi * m + disc.sqrt()) / c).min(1.0);
    let c_lo = ((m_psi * m - disc.sqrt()) / c).max(-1.0);
    Some((c_hi.acos(), c_lo.acos()))
}
