//! Exact phase evolution of output amplitudes.
//!
//! The primary algorithm is spectral: expand input and output states in the
//! J3 eigenbasis, where the phase-shift unitary is diagonal. Amplitudes,
//! analytic phase derivatives, and weak values of J3 and J3^2 all come from
//! the same spectral sum. A dense matrix exponential and an adaptive ODE
//! integration of the per-fringe equation are kept as independent oracles.

use ndarray::Array2;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::grid::PhaseGrid;
use crate::half::HalfInt;
use crate::linalg::expm;
use crate::ode::integrate_to_points;
use crate::real::Real;
use crate::spin::{
    build_operator_set, j1_eigenbasis, level_index, MeasurementBasis, TwoModeConfig,
};

/// Relative threshold below which an amplitude counts as a fringe zero for
/// weak-value purposes; weak values legitimately diverge there.
pub const SINGULARITY_THRESHOLD: f64 = 1e-6;

/// Allowed constant-phase residual when realizing a complex trace.
pub const REALIZE_IM_TOL: f64 = 1e-9;

/// Minimal margin that ODE integration spans must keep from 0 and +/-pi.
pub const ODE_SPAN_MARGIN: f64 = 0.05;

fn cot_checked<T: Real>(phi: T) -> Result<T> {
    let s = phi.sin();
    if s.abs() <= T::epsilon() * T::of(8.0) * phi.abs().max(T::one()) {
        return Err(Error::CotSingular { phi: phi.as_f64() });
    }
    Ok(phi.cos() / s)
}

/// The bracket N(N+2)/4 - (m_psi^2 - 2 cos(phi) m_psi m + m^2)/sin^2(phi)
/// that drives both the weak-value identity and the per-fringe equation.
fn fringe_potential<T: Real>(n: u32, m_psi: T, m: T, phi: T) -> T {
    let casimir = T::of(f64::from(n) * (f64::from(n) + 2.0) / 4.0);
    let s = phi.sin();
    let mix = m_psi * m_psi - T::of(2.0) * phi.cos() * m_psi * m + m * m;
    casimir - mix / (s * s)
}

/// Spectral decomposition of one input/output pair: J3 eigenvalues and the
/// overlap products `<m|m3><m3|input>`.
#[derive(Clone, Debug)]
pub struct SpectralSum<T: Real> {
    levels: Vec<T>,
    overlaps: Vec<Complex<T>>,
}

impl<T: Real> SpectralSum<T> {
    /// Overlaps for a photon-number input |m_psi; J1> and outcome m.
    pub fn for_config(basis: &MeasurementBasis<T>, config: &TwoModeConfig) -> Self {
        debug_assert_eq!(basis.dim(), config.dim(), "basis built for a different N");
        let n = config.photons();
        let col_out = level_index(n, config.output_diff());
        let col_in = level_index(n, config.input_diff());
        let dim = basis.dim();
        let v = basis.vectors();
        let levels = basis.eigenvalues().to_vec();
        let overlaps = (0..dim)
            .map(|k| Complex::new(v[[k, col_out]] * v[[k, col_in]], T::zero()))
            .collect();
        SpectralSum { levels, overlaps }
    }

    /// Overlaps for a superposition input over J3 eigenstates and outcome m.
    pub fn for_superposition(
        basis: &MeasurementBasis<T>,
        input: &SuperpositionInput<T>,
        m: HalfInt,
    ) -> Self {
        debug_assert_eq!(
            basis.dim(),
            input.photons() as usize + 1,
            "basis built for a different N"
        );
        let n = input.photons();
        let col_out = level_index(n, m);
        let dim = basis.dim();
        let v = basis.vectors();
        let levels = basis.eigenvalues().to_vec();
        let overlaps = (0..dim)
            .map(|k| input.dense()[k] * v[[k, col_out]])
            .collect();
        SpectralSum { levels, overlaps }
    }

    fn moments(&self, phi: T) -> [Complex<T>; 3] {
        let mut s = [Complex::new(T::zero(), T::zero()); 3];
        for (&m3, &o) in self.levels.iter().zip(&self.overlaps) {
            let term = o * Complex::cis(-phi * m3);
            s[0] += term;
            s[1] += term * m3;
            s[2] += term * (m3 * m3);
        }
        s
    }

    /// <m| U(phi) |input>.
    pub fn amplitude(&self, phi: T) -> Complex<T> {
        self.moments(phi)[0]
    }

    /// Analytic d/dphi of the amplitude (each J3 level contributes -i m3).
    pub fn derivative(&self, phi: T) -> Complex<T> {
        let s1 = self.moments(phi)[1];
        Complex::new(T::zero(), -T::one()) * s1
    }

    /// Analytic d^2/dphi^2 of the amplitude.
    pub fn second_derivative(&self, phi: T) -> Complex<T> {
        -self.moments(phi)[2]
    }

    /// Weak value of J3: <m|J3|psi(phi)> / <m|psi(phi)>.
    pub fn j3_weak(&self, phi: T) -> Complex<T> {
        let s = self.moments(phi);
        s[1] / s[0]
    }

    /// Weak value of J3^2.
    pub fn j3sq_weak(&self, phi: T) -> Complex<T> {
        let s = self.moments(phi);
        s[2] / s[0]
    }
}

/// Weak value together with its near-zero-denominator flag.
#[derive(Clone, Copy, Debug)]
pub struct WeakValue<T: Real> {
    pub value: Complex<T>,
    pub singular: bool,
}

/// Fixed input/output photon-number pair with its spectral machinery.
#[derive(Clone, Debug)]
pub struct Propagator<T: Real> {
    config: TwoModeConfig,
    sum: SpectralSum<T>,
}

impl<T: Real> Propagator<T> {
    pub fn new(config: TwoModeConfig) -> Result<Self> {
        let ops = build_operator_set::<T>(config.photons())?;
        let basis = j1_eigenbasis(&ops)?;
        Ok(Propagator::with_basis(config, &basis))
    }

    /// Reuses an already-computed J1 eigenbasis for the same N.
    pub fn with_basis(config: TwoModeConfig, basis: &MeasurementBasis<T>) -> Self {
        let sum = SpectralSum::for_config(basis, &config);
        Propagator { config, sum }
    }

    pub fn config(&self) -> &TwoModeConfig {
        &self.config
    }

    pub fn spectral(&self) -> &SpectralSum<T> {
        &self.sum
    }

    pub fn amplitude(&self, phi: T) -> Complex<T> {
        self.sum.amplitude(phi)
    }

    pub fn probability(&self, phi: T) -> T {
        self.sum.amplitude(phi).norm_sqr()
    }

    /// Weak value of J3 with the absolute singularity flag (|amplitude| is
    /// bounded by 1, so the threshold is used as-is).
    pub fn weak_value_j3(&self, phi: T) -> WeakValue<T> {
        let s = self.sum.moments(phi);
        WeakValue {
            value: s[1] / s[0],
            singular: s[0].norm() < T::of(SINGULARITY_THRESHOLD),
        }
    }

    pub fn weak_value_j3sq(&self, phi: T) -> WeakValue<T> {
        let s = self.sum.moments(phi);
        WeakValue {
            value: s[2] / s[0],
            singular: s[0].norm() < T::of(SINGULARITY_THRESHOLD),
        }
    }

    /// Residual modulus of the weak-value/eigenvalue relation
    /// `J3^2_w + i cot(phi) J3_w = N(N+2)/4 - (m_psi^2 - 2 cos m_psi m + m^2)/sin^2`.
    pub fn weak_identity_residual(&self, phi: T) -> Result<T> {
        let cot = cot_checked(phi)?;
        let s = self.sum.moments(phi);
        if s[0].norm() < T::of(SINGULARITY_THRESHOLD) {
            return Err(Error::SingularAmplitude { phi: phi.as_f64() });
        }
        let j3w = s[1] / s[0];
        let j3sqw = s[2] / s[0];
        let rhs = self.potential(phi);
        let lhs = j3sqw + Complex::new(T::zero(), cot) * j3w;
        Ok((lhs - Complex::new(rhs, T::zero())).norm())
    }

    /// Residual modulus of the per-fringe differential equation
    /// `a'' + cot(phi) a' + potential * a = 0`, with analytic derivatives
    /// taken from the spectral sum (no finite differences).
    pub fn ode_residual(&self, phi: T) -> Result<T> {
        let cot = cot_checked(phi)?;
        let s = self.sum.moments(phi);
        let second = -s[2];
        let first = Complex::new(T::zero(), -T::one()) * s[1];
        let q = self.potential(phi);
        let residual = second + Complex::new(cot, T::zero()) * first + s[0] * q;
        Ok(residual.norm())
    }

    fn potential(&self, phi: T) -> T {
        fringe_potential(
            self.config.photons(),
            self.config.input_diff().value(),
            self.config.output_diff().value(),
            phi,
        )
    }
}

/// <m; J1| U(phi) |m_psi; J1>. One-shot convenience around `Propagator`.
pub fn amplitude<T: Real>(config: &TwoModeConfig, phi: T) -> Result<Complex<T>> {
    Ok(Propagator::new(*config)?.amplitude(phi))
}

/// All output probabilities P(m; phi), ordered by descending m. Sums to one.
pub fn probability_distribution<T: Real>(n: u32, m_psi: HalfInt, phi: T) -> Result<Vec<T>> {
    // Range and parity checks ride on the config validation.
    TwoModeConfig::new(n, m_psi, m_psi)?;
    let ops = build_operator_set::<T>(n)?;
    let basis = j1_eigenbasis(&ops)?;
    let dim = basis.dim();
    let col_in = level_index(n, m_psi);
    let v = basis.vectors();
    let mut out = Vec::with_capacity(dim);
    for col_out in 0..dim {
        let mut acc = Complex::new(T::zero(), T::zero());
        for k in 0..dim {
            let o = v[[k, col_out]] * v[[k, col_in]];
            acc += Complex::cis(-phi * basis.eigenvalues()[k]) * o;
        }
        out.push(acc.norm_sqr());
    }
    Ok(out)
}

/// Independent amplitude oracle: expresses -i phi J3 in the numerically
/// diagonalized J1 eigenbasis, exponentiates the dense matrix by scaling and
/// squaring, and reads off the matrix element.
pub fn matrix_exponential_amplitude<T: Real>(config: &TwoModeConfig, phi: T) -> Result<Complex<T>> {
    let n = config.photons();
    let ops = build_operator_set::<T>(n)?;
    let basis = j1_eigenbasis(&ops)?;
    let dim = basis.dim();
    let v = basis.vectors();

    // M = V^T (-i phi J3) V, dense in the J1 basis.
    let mut generator = Array2::<Complex<T>>::zeros((dim, dim));
    for a in 0..dim {
        for b in 0..dim {
            let mut acc = T::zero();
            for k in 0..dim {
                acc += v[[k, a]] * basis.eigenvalues()[k] * v[[k, b]];
            }
            generator[[a, b]] = Complex::new(T::zero(), -phi * acc);
        }
    }
    let u = expm(&generator);
    let row = level_index(n, config.output_diff());
    let col = level_index(n, config.input_diff());
    Ok(u[[row, col]])
}

/// Per-phase complex amplitudes factored into one constant unit phase and a
/// real-valued trace.
#[derive(Clone, Debug)]
pub struct AmplitudeTrace<T: Real> {
    grid: PhaseGrid<T>,
    amplitudes: Vec<Complex<T>>,
    global_phase: Complex<T>,
    realized: Vec<T>,
}

impl<T: Real> AmplitudeTrace<T> {
    /// Computes amplitudes on the grid and realizes them.
    pub fn compute(sum: &SpectralSum<T>, grid: PhaseGrid<T>) -> Result<Self> {
        let amplitudes: Vec<Complex<T>> = grid
            .values()
            .iter()
            .map(|&phi| sum.amplitude(phi))
            .collect();
        AmplitudeTrace::realize(grid, amplitudes)
    }

    /// Factors a raw complex trace as `global_phase * realized` with the
    /// default tolerance on the imaginary residual.
    pub fn realize(grid: PhaseGrid<T>, amplitudes: Vec<Complex<T>>) -> Result<Self> {
        AmplitudeTrace::realize_with_tol(grid, amplitudes, T::of(REALIZE_IM_TOL))
    }

    pub fn realize_with_tol(
        grid: PhaseGrid<T>,
        amplitudes: Vec<Complex<T>>,
        tol: T,
    ) -> Result<Self> {
        if grid.len() != amplitudes.len() {
            return Err(Error::Domain(
                "amplitude count does not match grid length".into(),
            ));
        }
        // The phase of the largest-modulus entry defines the global phase.
        let mut best = T::zero();
        let mut global_phase = Complex::new(T::one(), T::zero());
        for a in &amplitudes {
            let norm = a.norm();
            if norm > best {
                best = norm;
                global_phase = *a / norm;
            }
        }
        let conj = global_phase.conj();
        let mut worst = T::zero();
        let realized: Vec<T> = amplitudes
            .iter()
            .map(|&a| {
                let rotated = conj * a;
                if rotated.im.abs() > worst {
                    worst = rotated.im.abs();
                }
                rotated.re
            })
            .collect();
        if worst > tol {
            return Err(Error::NonRealizable {
                residual: worst.as_f64(),
                tolerance: tol.as_f64(),
            });
        }
        Ok(AmplitudeTrace {
            grid,
            amplitudes,
            global_phase,
            realized,
        })
    }

    pub fn grid(&self) -> &PhaseGrid<T> {
        &self.grid
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn global_phase(&self) -> Complex<T> {
        self.global_phase
    }

    pub fn realized(&self) -> &[T] {
        &self.realized
    }

    /// Continuous realized amplitude at an arbitrary phase, using the
    /// trace's frozen global phase.
    pub fn realized_at(&self, sum: &SpectralSum<T>, phi: T) -> T {
        (self.global_phase.conj() * sum.amplitude(phi)).re
    }
}

/// See `AmplitudeTrace::realize`.
pub fn realize_amplitudes<T: Real>(
    grid: PhaseGrid<T>,
    amplitudes: Vec<Complex<T>>,
) -> Result<AmplitudeTrace<T>> {
    AmplitudeTrace::realize(grid, amplitudes)
}

/// Weak values of J3 and J3^2 along a grid, with singular flags relative to
/// the largest amplitude modulus seen on the grid.
#[derive(Clone, Debug)]
pub struct WeakValueTrace<T: Real> {
    grid: PhaseGrid<T>,
    j3_weak: Vec<Complex<T>>,
    j3sq_weak: Vec<Complex<T>>,
    singular: Vec<bool>,
}

impl<T: Real> WeakValueTrace<T> {
    pub fn compute(sum: &SpectralSum<T>, grid: PhaseGrid<T>) -> Self {
        let moments: Vec<[Complex<T>; 3]> =
            grid.values().iter().map(|&phi| sum.moments(phi)).collect();
        let peak = moments
            .iter()
            .map(|s| s[0].norm())
            .fold(T::zero(), |acc, v| if v > acc { v } else { acc });
        let threshold = T::of(SINGULARITY_THRESHOLD) * peak;
        let mut j3_weak = Vec::with_capacity(moments.len());
        let mut j3sq_weak = Vec::with_capacity(moments.len());
        let mut singular = Vec::with_capacity(moments.len());
        for s in &moments {
            j3_weak.push(s[1] / s[0]);
            j3sq_weak.push(s[2] / s[0]);
            singular.push(s[0].norm() < threshold);
        }
        WeakValueTrace {
            grid,
            j3_weak,
            j3sq_weak,
            singular,
        }
    }

    pub fn grid(&self) -> &PhaseGrid<T> {
        &self.grid
    }

    pub fn j3_weak(&self) -> &[Complex<T>] {
        &self.j3_weak
    }

    pub fn j3sq_weak(&self) -> &[Complex<T>] {
        &self.j3sq_weak
    }

    pub fn singular_flags(&self) -> &[bool] {
        &self.singular
    }
}

/// Normalized superposition over J3 eigenstates (path eigenstates).
#[derive(Clone, Debug)]
pub struct SuperpositionInput<T: Real> {
    n: u32,
    dense: Vec<Complex<T>>,
}

impl<T: Real> SuperpositionInput<T> {
    /// Builds from sparse (m3, coefficient) components. Components must be
    /// valid J3 eigenvalues for N, free of duplicates, and normalized.
    pub fn new(n: u32, components: &[(HalfInt, Complex<T>)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPhotonNumber(n));
        }
        let dim = n as usize + 1;
        let mut dense = vec![Complex::new(T::zero(), T::zero()); dim];
        let mut seen = vec![false; dim];
        let mut norm = T::zero();
        for &(m3, c) in components {
            if m3.doubled().unsigned_abs() > n {
                return Err(Error::DiffOutOfRange {
                    name: "m3",
                    value: m3.value::<f64>(),
                    limit: f64::from(n) / 2.0,
                });
            }
            if m3.doubled().rem_euclid(2) != (n % 2) as i32 {
                return Err(Error::ParityMismatch {
                    name: "m3",
                    doubled: m3.doubled(),
                    n,
                });
            }
            let k = level_index(n, m3);
            if seen[k] {
                return Err(Error::Domain(format!("duplicate component m3 = {m3}")));
            }
            seen[k] = true;
            dense[k] = c;
            norm += c.norm_sqr();
        }
        if (norm - T::one()).abs() > T::of(1e-12) {
            return Err(Error::NotNormalized {
                norm: norm.as_f64(),
            });
        }
        Ok(SuperpositionInput { n, dense })
    }

    /// (|m3> + |-m3>)/sqrt(2); with m3 = N/2 this is the NOON state.
    pub fn balanced_pair(n: u32, m3: HalfInt) -> Result<Self> {
        let c = Complex::new(T::one() / T::of(2.0).sqrt(), T::zero());
        SuperpositionInput::new(n, &[(m3, c), (-m3, c)])
    }

    pub fn noon(n: u32) -> Result<Self> {
        SuperpositionInput::balanced_pair(n, HalfInt::from_doubled(n as i32))
    }

    pub fn photons(&self) -> u32 {
        self.n
    }

    pub fn dense(&self) -> &[Complex<T>] {
        &self.dense
    }

    /// True when coefficient(m3) = conj(coefficient(-m3)) for every m3,
    /// the condition for real amplitudes at all phases.
    pub fn is_path_symmetric(&self) -> bool {
        let dim = self.dense.len();
        let tol = T::of(1e-12);
        (0..dim).all(|k| {
            let d = self.dense[k] - self.dense[dim - 1 - k].conj();
            d.norm() <= tol
        })
    }
}

/// <m; J1| U(phi) |input> for a superposition input.
pub fn superposition_amplitude<T: Real>(
    input: &SuperpositionInput<T>,
    m: HalfInt,
    phi: T,
) -> Result<Complex<T>> {
    let ops = build_operator_set::<T>(input.photons())?;
    let basis = j1_eigenbasis(&ops)?;
    let sum = SpectralSum::for_superposition(&basis, input, m);
    Ok(sum.amplitude(phi))
}

/// Integrates the per-fringe differential equation with initial conditions
/// taken from the exact amplitude and its analytic derivative at `span.0`,
/// returning the integrated amplitude at each requested point.
///
/// This is a cross-validation path: adaptive Runge-Kutta with local error
/// control, entirely independent of the spectral evaluation it is checked
/// against. The span must stay clear of the cot(phi) singularities.
pub fn ode_solve_oracle<T: Real>(
    prop: &Propagator<T>,
    span: (T, T),
    points: &[T],
) -> Result<Vec<Complex<T>>> {
    let (lo, hi) = span;
    let margin = T::of(ODE_SPAN_MARGIN);
    let pi = T::PI();
    let valid =
        lo < hi && ((lo >= margin && hi <= pi - margin) || (lo >= -pi + margin && hi <= -margin));
    if !valid {
        return Err(Error::SpanTooCloseToSingularity {
            lo: lo.as_f64(),
            hi: hi.as_f64(),
            margin: ODE_SPAN_MARGIN,
        });
    }
    for &p in points {
        if p < lo || p > hi {
            return Err(Error::Domain(format!(
                "output point {p} outside integration span"
            )));
        }
    }

    let n = prop.config.photons();
    let m_psi: T = prop.config.input_diff().value();
    let m: T = prop.config.output_diff().value();

    let a0 = prop.sum.amplitude(lo);
    let d0 = prop.sum.derivative(lo);
    let y0 = [a0.re, a0.im, d0.re, d0.im];

    let rhs = move |phi: T, y: &[T; 4]| {
        let cot = phi.cos() / phi.sin();
        let q = fringe_potential(n, m_psi, m, phi);
        [y[2], y[3], -cot * y[2] - q * y[0], -cot * y[3] - q * y[1]]
    };

    let states = integrate_to_points(rhs, lo, y0, points, T::of(1e-10), T::of(1e-13))?;
    Ok(states
        .into_iter()
        .map(|y| Complex::new(y[0], y[1]))
        .collect())
}
