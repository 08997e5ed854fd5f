//! Classical path-intensity difference, action, and envelope.
//!
//! The classical J3 follows from the length of the J vector and the input
//! and output intensity differences. The action obeys dS/dphi = -J3 and is
//! evaluated by adaptive quadrature; the envelope squared is the classical
//! random-phase density hbar*rho0 / |sin(phi) J3| with rho0 = 1/(2 pi).
//! A seeded Monte-Carlo model of random-phase interference serves as an
//! independent statistical oracle for the envelope.
//!
//! Two support-boundary estimates circulate for the m_psi = 0 case: the
//! radicand of the J3 formula vanishes at sin(phi) = 2m/sqrt(N(N+2)), while
//! a cruder interference argument suggests phi ~ arcsin(m/(N+1)). This
//! module uses the radicand boundary throughout; the cruder value is about
//! half as large and is not used.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grid::PhaseGrid;
use crate::quad::adaptive_quadrature;
use crate::real::Real;
use crate::roots::bisect;
use crate::spin::TwoModeConfig;

/// Absolute tolerance for support-endpoint bisection.
pub const SUPPORT_BISECT_TOL: f64 = 1e-10;

/// Absolute quadrature tolerance for action integrals.
pub const ACTION_QUAD_TOL: f64 = 1e-10;

/// Default margin (radians) kept from support endpoints by the approximate
/// amplitude.
pub const APPROX_MARGIN: f64 = 0.05;

/// Which total J-vector length backs the classical formulas: the exact
/// sqrt(N(N+2))/2 or the (N+1)/2 shorthand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VectorLength {
    Exact,
    NPlusOne,
}

impl VectorLength {
    /// L^2 for the chosen convention.
    pub fn squared_length<T: Real>(self, n: u32) -> T {
        let n = f64::from(n);
        match self {
            VectorLength::Exact => T::of(n * (n + 2.0) / 4.0),
            VectorLength::NPlusOne => T::of((n + 1.0) * (n + 1.0) / 4.0),
        }
    }

    pub fn length<T: Real>(self, n: u32) -> T {
        self.squared_length::<T>(n).sqrt()
    }
}

/// Inputs of the classical formulas. The intensity differences are real
/// numbers here: the classical relations are not restricted to half-integer
/// eigenvalues.
#[derive(Clone, Copy, Debug)]
pub struct ClassicalParams<T: Real> {
    pub n: u32,
    pub m_psi: T,
    pub m: T,
    pub convention: VectorLength,
}

impl<T: Real> ClassicalParams<T> {
    pub fn new(n: u32, m_psi: T, m: T) -> Self {
        ClassicalParams {
            n,
            m_psi,
            m,
            convention: VectorLength::Exact,
        }
    }

    pub fn from_config(config: &TwoModeConfig) -> Self {
        ClassicalParams::new(
            config.photons(),
            config.input_diff().value(),
            config.output_diff().value(),
        )
    }

    pub fn with_convention(mut self, convention: VectorLength) -> Self {
        self.convention = convention;
        self
    }

    fn squared_length(&self) -> T {
        self.convention.squared_length(self.n)
    }

    /// J3^2 as a function of phase. Removable 0/0 points (phi = 0 with
    /// m = m_psi, phi = +/-pi with m = -m_psi) are evaluated by their
    /// algebraic limits; genuinely singular points are rejected.
    pub fn radicand(&self, phi: T) -> Result<T> {
        let c = self.squared_length();
        let two = T::of(2.0);
        let cos = phi.cos();
        if self.m == self.m_psi {
            let denom = T::one() + cos;
            if self.m == T::zero() {
                return Ok(c);
            }
            if denom <= T::zero() {
                return Err(Error::SinSingular { phi: phi.as_f64() });
            }
            return Ok(c - two * self.m * self.m / denom);
        }
        if self.m == -self.m_psi {
            let denom = T::one() - cos;
            if denom <= T::zero() {
                return Err(Error::SinSingular { phi: phi.as_f64() });
            }
            return Ok(c - two * self.m * self.m / denom);
        }
        let sin = phi.sin();
        if sin.abs() <= T::epsilon() * T::of(8.0) * phi.abs().max(T::one()) {
            return Err(Error::SinSingular { phi: phi.as_f64() });
        }
        let mix = self.m_psi * self.m_psi - two * cos * self.m_psi * self.m + self.m * self.m;
        Ok(c - mix / (sin * sin))
    }

    /// cos(phi) at which J3 is maximal (the single interior extremum).
    pub fn peak_cos(&self) -> T {
        let b = T::of(2.0) * self.m_psi * self.m;
        if b == T::zero() {
            return T::zero();
        }
        let a = self.m_psi * self.m_psi + self.m * self.m;
        let disc = (self.m_psi * self.m_psi - self.m * self.m).abs();
        (a - disc) / b
    }

    pub fn peak_phi(&self) -> T {
        self.peak_cos().min(T::one()).max(-T::one()).acos()
    }

    /// Maximal classical |J3| over (0, pi).
    pub fn peak_j3(&self) -> Result<T> {
        let r = self.radicand(self.peak_phi())?;
        Ok(r.max(T::zero()).sqrt())
    }
}

/// Classical J3 value, or the magnitude of its imaginary continuation where
/// the radicand is negative (the evanescent region).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ClassicalJ3<T: Real> {
    Propagating(T),
    Evanescent(T),
}

impl<T: Real> ClassicalJ3<T> {
    pub fn propagating(&self) -> Option<T> {
        match self {
            ClassicalJ3::Propagating(v) => Some(*v),
            ClassicalJ3::Evanescent(_) => None,
        }
    }

    pub fn is_evanescent(&self) -> bool {
        matches!(self, ClassicalJ3::Evanescent(_))
    }
}

/// Classical intensity difference |J3(m, m_psi, phi)| between the paths,
/// flagged evanescent (with the imaginary magnitude) when the radicand is
/// negative.
pub fn classical_j3<T: Real>(params: &ClassicalParams<T>, phi: T) -> Result<ClassicalJ3<T>> {
    let r = params.radicand(phi)?;
    if r >= T::zero() {
        Ok(ClassicalJ3::Propagating(r.sqrt()))
    } else {
        Ok(ClassicalJ3::Evanescent((-r).sqrt()))
    }
}

/// Maximal intervals inside (0, pi) where J3^2 >= 0. Endpoints are located
/// by bisection; an endpoint of exactly 0 or pi means the support extends to
/// that (removable) boundary. The result is empty or a single interval.
pub fn classical_support<T: Real>(params: &ClassicalParams<T>) -> Vec<(T, T)> {
    let pi = T::PI();
    const CELLS: usize = 4096;
    let step = pi / T::of(CELLS as f64);
    let half = T::of(0.5);
    let value = |phi: T| params.radicand(phi).unwrap_or(-T::infinity());

    let mids: Vec<T> = (0..CELLS)
        .map(|k| step * (T::of(k as f64) + half))
        .collect();
    let signs: Vec<bool> = mids.iter().map(|&p| value(p) >= T::zero()).collect();

    let tol = T::of(SUPPORT_BISECT_TOL);
    let refine = |lo: T, hi: T| bisect(value, lo, hi, tol).unwrap_or(half * (lo + hi));

    let mut intervals = Vec::new();
    let mut open_start: Option<T> = None;
    if signs[0] {
        // Support reaches toward phi = 0: closed there only if the limit is
        // finite and nonnegative (the removable m = m_psi case).
        let at_zero = params.radicand(T::zero());
        let start = match at_zero {
            Ok(r) if r >= T::zero() => T::zero(),
            _ => refine(T::epsilon(), mids[0]),
        };
        open_start = Some(start);
    }
    for k in 1..CELLS {
        match (signs[k - 1], signs[k]) {
            (false, true) => open_start = Some(refine(mids[k - 1], mids[k])),
            (true, false) => {
                if let Some(start) = open_start.take() {
                    intervals.push((start, refine(mids[k - 1], mids[k])));
                }
            }
            _ => {}
        }
    }
    if let Some(start) = open_start {
        let at_pi = params.radicand(pi);
        let end = match at_pi {
            Ok(r) if r >= T::zero() => pi,
            _ => refine(mids[CELLS - 1], pi - T::epsilon() * pi),
        };
        intervals.push((start, end));
    }
    intervals
}

fn interval_containing<T: Real>(support: &[(T, T)], phi: T) -> Option<(T, T)> {
    support
        .iter()
        .copied()
        .find(|&(lo, hi)| phi >= lo && phi <= hi)
}

/// S(phi) = reference_action - integral of J3 from reference_phi to phi.
/// Both phases must lie in the same support interval.
pub fn action<T: Real>(
    params: &ClassicalParams<T>,
    phi: T,
    reference_phi: T,
    reference_action: T,
) -> Result<T> {
    let support = classical_support(params);
    interval_containing(&support, phi)
        .filter(|&(lo, hi)| reference_phi >= lo && reference_phi <= hi)
        .ok_or(Error::OutsideSupport { phi: phi.as_f64() })?;
    let integrand = |p: T| {
        params
            .radicand(p)
            .map(|r| r.max(T::zero()).sqrt())
            .unwrap_or(T::zero())
    };
    let integral = adaptive_quadrature(&integrand, reference_phi, phi, T::of(ACTION_QUAD_TOL))?;
    Ok(reference_action - integral)
}

/// Envelope A(phi) = sqrt( (1/2pi) / |sin(phi) J3| ), defined strictly
/// inside the classical support.
pub fn envelope<T: Real>(params: &ClassicalParams<T>, phi: T) -> Result<T> {
    envelope_sq(params, phi).map(|a2| a2.sqrt())
}

/// A^2(phi); kept separate since the density comparisons use it directly.
pub fn envelope_sq<T: Real>(params: &ClassicalParams<T>, phi: T) -> Result<T> {
    let r = params.radicand(phi)?;
    if r <= T::zero() {
        return Err(Error::OutsideSupport { phi: phi.as_f64() });
    }
    let sin = phi.sin();
    if sin == T::zero() {
        return Err(Error::SinSingular { phi: phi.as_f64() });
    }
    let rho0 = (T::of(2.0) * T::PI()).recip();
    Ok(rho0 / (sin.abs() * r.sqrt()))
}

/// Anchor fixing the integration constant of the action.
#[derive(Clone, Copy, Debug)]
pub struct ActionAnchor<T: Real> {
    pub phi: T,
    pub action: T,
}

/// Fixes the action constant so the approximate amplitude's zero nearest the
/// J3 peak coincides with the supplied exact-amplitude zero. This is a
/// calibration of the one free constant, not a prediction.
pub fn calibrate_anchor<T: Real>(
    params: &ClassicalParams<T>,
    interval: (T, T),
    exact_zero: T,
) -> Result<ActionAnchor<T>> {
    let anchor_phi = params.peak_phi().max(interval.0).min(interval.1);
    let raw = action(params, exact_zero, anchor_phi, T::zero())?;
    // Need S(exact_zero) = pi/2 (mod pi): wrap the correction into
    // (-pi/2, pi/2].
    let pi = T::PI();
    let half_pi = T::FRAC_PI_2();
    let mut s0 = half_pi - raw;
    s0 = s0 - pi * (s0 / pi).floor();
    if s0 > half_pi {
        s0 -= pi;
    }
    Ok(ActionAnchor {
        phi: anchor_phi,
        action: s0,
    })
}

/// Approximate amplitude 2 A(phi) cos(S(phi)), valid inside the support and
/// away from its endpoints by `margin`.
pub fn approx_amplitude<T: Real>(
    params: &ClassicalParams<T>,
    anchor: &ActionAnchor<T>,
    phi: T,
    margin: T,
) -> Result<T> {
    let support = classical_support(params);
    let (lo, hi) =
        interval_containing(&support, phi).ok_or(Error::OutsideSupport { phi: phi.as_f64() })?;
    if phi < lo + margin || phi > hi - margin {
        return Err(Error::TooCloseToTurningPoint {
            phi: phi.as_f64(),
            margin: margin.as_f64(),
        });
    }
    let s = action(params, phi, anchor.phi, anchor.action)?;
    let a = envelope(params, phi)?;
    Ok(T::of(2.0) * a * s.cos())
}

/// Residual of the transport relation d/dphi( sin(phi) A^2 dS/dphi ) = 0,
/// assembled from the closed-form derivatives. It vanishes identically up to
/// floating-point cancellation, so it cross-checks the derivative formulas.
pub fn continuity_residual<T: Real>(params: &ClassicalParams<T>, phi: T) -> Result<T> {
    let r = params.radicand(phi)?;
    if r <= T::zero() {
        return Err(Error::OutsideSupport { phi: phi.as_f64() });
    }
    let sin = phi.sin();
    let cos = phi.cos();
    if sin == T::zero() {
        return Err(Error::SinSingular { phi: phi.as_f64() });
    }
    let two = T::of(2.0);

    let a_coef = self_mix_a(params);
    let b_coef = two * params.m_psi * params.m;
    let g_prime = (b_coef * sin * sin - two * cos * (a_coef - b_coef * cos)) / (sin * sin * sin);

    let j3 = r.sqrt();
    let j3_prime = -g_prime / (two * j3);

    let rho0 = (two * T::PI()).recip();
    let a_sq = rho0 / (sin.abs() * j3);
    let a = a_sq.sqrt();
    // dA/dphi from A = sqrt(rho0) (sin J3)^(-1/2).
    let a_prime =
        -T::of(0.5) * rho0.sqrt() * (sin * j3).powf(-T::of(1.5)) * (cos * j3 + sin * j3_prime);

    let s_prime = -j3;
    let s_second = -j3_prime;

    Ok(cos * a_sq * s_prime + two * sin * a * a_prime * s_prime + sin * a_sq * s_second)
}

fn self_mix_a<T: Real>(params: &ClassicalParams<T>) -> T {
    params.m_psi * params.m_psi + params.m * params.m
}

/// Per-phase classical curve: J3 (or its evanescent magnitude), action, and
/// envelope on a grid, plus the support intervals.
#[derive(Clone, Debug)]
pub struct SemiclassicalCurve<T: Real> {
    pub grid: PhaseGrid<T>,
    pub j3: Vec<ClassicalJ3<T>>,
    pub action: Vec<Option<T>>,
    pub envelope: Vec<Option<T>>,
    pub support: Vec<(T, T)>,
    pub rho0: T,
}

impl<T: Real> SemiclassicalCurve<T> {
    /// Builds the curve. Without an anchor the action is zeroed at the J3
    /// peak of each support interval. The action is accumulated segment by
    /// segment along the grid, so per-point cost stays flat.
    pub fn build(
        params: &ClassicalParams<T>,
        grid: PhaseGrid<T>,
        anchor: Option<&ActionAnchor<T>>,
    ) -> Result<Self> {
        let support = classical_support(params);
        let n = grid.len();
        let mut j3 = Vec::with_capacity(n);
        for &phi in grid.values() {
            j3.push(classical_j3(params, phi)?);
        }
        let mut act = vec![None; n];
        let mut env = vec![None; n];

        let integrand = |p: T| {
            params
                .radicand(p)
                .map(|r| r.max(T::zero()).sqrt())
                .unwrap_or(T::zero())
        };
        let seg_tol = T::of(ACTION_QUAD_TOL);

        for &(lo, hi) in &support {
            let inside: Vec<usize> = (0..n)
                .filter(|&k| {
                    let phi = grid.values()[k];
                    phi >= lo && phi <= hi && !j3[k].is_evanescent()
                })
                .collect();
            if inside.is_empty() {
                continue;
            }
            let (ref_phi, ref_action) = match anchor {
                Some(a) if a.phi >= lo && a.phi <= hi => (a.phi, a.action),
                _ => (params.peak_phi().max(lo).min(hi), T::zero()),
            };
            let first = inside[0];
            let mut running = ref_action
                - adaptive_quadrature(&integrand, ref_phi, grid.values()[first], seg_tol)?;
            act[first] = Some(running);
            env[first] = envelope_sq(params, grid.values()[first])
                .ok()
                .map(|a2| a2.sqrt());
            for pair in inside.windows(2) {
                let (prev, cur) = (pair[0], pair[1]);
                running -= adaptive_quadrature(
                    &integrand,
                    grid.values()[prev],
                    grid.values()[cur],
                    seg_tol,
                )?;
                act[cur] = Some(running);
                env[cur] = envelope_sq(params, grid.values()[cur])
                    .ok()
                    .map(|a2| a2.sqrt());
            }
        }
        Ok(SemiclassicalCurve {
            grid,
            j3,
            action: act,
            envelope: env,
            support,
            rho0: (T::of(2.0) * T::PI()).recip(),
        })
    }
}

/// Classical random-phase model: the input fixes J1 = m_psi, the transverse
/// components lie on a circle of radius R = sqrt(L^2 - m_psi^2), and the
/// phase difference theta between the input modes is uniform on [0, 2 pi).
#[derive(Clone, Copy, Debug)]
pub struct ClassicalPhaseModel<T: Real> {
    n: u32,
    m_psi: T,
    convention: VectorLength,
}

impl<T: Real> ClassicalPhaseModel<T> {
    /// Uses the (N+1)/2 vector length, which matches the envelope
    /// normalization of the quantum formulas.
    pub fn new(n: u32, m_psi: T) -> Result<Self> {
        ClassicalPhaseModel::with_convention(n, m_psi, VectorLength::NPlusOne)
    }

    pub fn with_convention(n: u32, m_psi: T, convention: VectorLength) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPhotonNumber(n));
        }
        let length = convention.length::<T>(n);
        if m_psi.abs() > length {
            return Err(Error::DiffOutOfRange {
                name: "m_psi",
                value: m_psi.as_f64(),
                limit: length.as_f64(),
            });
        }
        Ok(ClassicalPhaseModel {
            n,
            m_psi,
            convention,
        })
    }

    pub fn photons(&self) -> u32 {
        self.n
    }

    /// Transverse radius R.
    pub fn radius(&self) -> T {
        let length = self.convention.length::<T>(self.n);
        (length * length - self.m_psi * self.m_psi).sqrt()
    }
}

/// Histogram of simulated output intensity differences, binned into
/// unit-width bins centered on the eigenvalue ladder m = -N/2 ... N/2.
#[derive(Clone, Debug)]
pub struct McHistogram<T: Real> {
    pub centers: Vec<T>,
    pub counts: Vec<u64>,
    pub frequencies: Vec<T>,
    pub samples: u64,
    pub seed: u64,
}

/// Samples the random phase theta, propagates J_phi = cos(phi) m_psi -
/// sin(phi) J2 with J2 = R cos(theta), and bins the outcomes. Deterministic
/// for a fixed (seed, samples) pair. Out-of-range values pile up in the edge
/// bins, which is expected near the support boundary.
pub fn classical_envelope_oracle<T: Real>(
    model: &ClassicalPhaseModel<T>,
    phi: T,
    samples: u64,
    seed: u64,
) -> McHistogram<T> {
    let n = model.photons() as usize;
    let half_n = T::of(n as f64 / 2.0);
    let centers: Vec<T> = (0..=n).map(|j| T::of(j as f64) - half_n).collect();
    let mut counts = vec![0u64; n + 1];

    let radius = model.radius();
    let cos_phi = phi.cos();
    let sin_phi = phi.sin();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let two_pi = 2.0 * std::f64::consts::PI;
    for _ in 0..samples {
        let theta = T::of(rng.gen::<f64>() * two_pi);
        let j2 = radius * theta.cos();
        let j_phi = cos_phi * model.m_psi - sin_phi * j2;
        // Bin index: round(j_phi + N/2), clamped to the ladder.
        let idx = (j_phi + half_n)
            .round()
            .to_i64()
            .unwrap_or(0)
            .clamp(0, n as i64);
        counts[idx as usize] += 1;
    }

    let total = T::of(samples as f64);
    let frequencies = counts.iter().map(|&c| T::of(c as f64) / total).collect();
    McHistogram {
        centers,
        counts,
        frequencies,
        samples,
        seed,
    }
}
