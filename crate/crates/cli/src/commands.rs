use fringelab_core::*;
use rayon::prelude::*;
use serde_json::json;

use crate::args::{
    build_config, validate_window, Cli, CliError, CliResult, Command, CurveArgs, Format, McArgs,
    TraceArgs,
};
use crate::output::{write_json, write_table_csv, Cell, Table};

pub fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Fringes(args) => fringes(&args),
        Command::WeakValues(args) => weak_values(&args),
        Command::Envelope(args) => envelope_curve(&args),
        Command::Semiclassical(args) => semiclassical_curve(&args),
        Command::ClassicalMc(args) => classical_mc(&args),
        Command::ReproducePaper(args) => crate::reproduce::run(&args),
    }
}

fn grid_for(args: &TraceArgs) -> CliResult<PhaseGrid<f64>> {
    validate_window(args.phi_min, args.phi_max, args.samples)?;
    PhaseGrid::open_uniform(args.phi_min, args.phi_max, args.samples as usize)
        .map_err(CliError::from)
}

fn trace_params_json(args: &TraceArgs, kind: &str) -> serde_json::Value {
    json!({
        "command": kind,
        "photons": args.photons,
        "input_diff": args.input_diff,
        "output_diff": args.output_diff,
        "phi_min": args.phi_min,
        "phi_max": args.phi_max,
        "samples": args.samples,
    })
}

fn emit(args: &TraceArgs, kind: &str, table: Table) -> CliResult<()> {
    match args.format {
        Format::Csv => write_table_csv(args.out.as_ref(), &table),
        Format::Json => write_json(
            args.out.as_ref(),
            &table.json(kind, trace_params_json(args, kind)),
        ),
    }
}

fn in_support(support: &[(f64, f64)], phi: f64) -> bool {
    support.iter().any(|&(lo, hi)| phi >= lo && phi <= hi)
}

fn fringes(args: &TraceArgs) -> CliResult<()> {
    let config = build_config(args.photons, args.input_diff, args.output_diff)?;
    let grid = grid_for(args)?;
    let prop = Propagator::<f64>::new(config)?;
    let params = ClassicalParams::from_config(&config);
    let support = classical_support(&params);

    let rows: Vec<Vec<Cell>> = grid
        .values()
        .par_iter()
        .map(|&phi| {
            let probability = prop.probability(phi);
            let envelope = envelope_sq(&params, phi)
                .map(|a2| 4.0 * a2)
                .unwrap_or(f64::NAN);
            vec![
                Cell::Float(phi),
                Cell::Float(probability),
                Cell::Float(envelope),
                Cell::Bool(in_support(&support, phi)),
            ]
        })
        .collect();

    let mut table = Table::new(vec!["phi", "probability", "envelope", "in_support"]);
    table.rows = rows;
    emit(args, "fringes", table)
}

fn weak_values(args: &TraceArgs) -> CliResult<()> {
    let config = build_config(args.photons, args.input_diff, args.output_diff)?;
    let grid = grid_for(args)?;
    let prop = Propagator::<f64>::new(config)?;
    let weak = WeakValueTrace::compute(prop.spectral(), grid.clone());

    let mut table = Table::new(vec![
        "phi",
        "amplitude_re",
        "amplitude_im",
        "probability",
        "j3_weak_re",
        "j3_weak_im",
        "j3sq_weak_re",
        "j3sq_weak_im",
        "singular",
    ]);
    for (k, &phi) in grid.values().iter().enumerate() {
        let amplitude = prop.amplitude(phi);
        table.push(vec![
            Cell::Float(phi),
            Cell::Float(amplitude.re),
            Cell::Float(amplitude.im),
            Cell::Float(amplitude.norm_sqr()),
            Cell::Float(weak.j3_weak()[k].re),
            Cell::Float(weak.j3_weak()[k].im),
            Cell::Float(weak.j3sq_weak()[k].re),
            Cell::Float(weak.j3sq_weak()[k].im),
            Cell::Bool(weak.singular_flags()[k]),
        ]);
    }
    emit(args, "weak-values", table)
}

fn envelope_curve(args: &CurveArgs) -> CliResult<()> {
    let config = build_config(
        args.trace.photons,
        args.trace.input_diff,
        args.trace.output_diff,
    )?;
    let grid = grid_for(&args.trace)?;
    let params =
        ClassicalParams::from_config(&config).with_convention(args.convention.vector_length());
    let support = classical_support(&params);

    let mut table = Table::new(vec!["phi", "a", "a_sq", "four_a_sq", "in_support"]);
    for &phi in grid.values() {
        let a_sq = envelope_sq(&params, phi).unwrap_or(f64::NAN);
        table.push(vec![
            Cell::Float(phi),
            Cell::Float(a_sq.sqrt()),
            Cell::Float(a_sq),
            Cell::Float(4.0 * a_sq),
            Cell::Bool(in_support(&support, phi)),
        ]);
    }
    emit(&args.trace, "envelope", table)
}

fn semiclassical_curve(args: &CurveArgs) -> CliResult<()> {
    let config = build_config(
        args.trace.photons,
        args.trace.input_diff,
        args.trace.output_diff,
    )?;
    let grid = grid_for(&args.trace)?;
    let params =
        ClassicalParams::from_config(&config).with_convention(args.convention.vector_length());
    let curve = SemiclassicalCurve::build(&params, grid, None)?;

    let mut table = Table::new(vec![
        "phi",
        "j3",
        "j3_evanescent",
        "action",
        "a",
        "in_support",
    ]);
    for (k, &phi) in curve.grid.values().iter().enumerate() {
        let (j3, evanescent) = match curve.j3[k] {
            ClassicalJ3::Propagating(v) => (v, f64::NAN),
            ClassicalJ3::Evanescent(v) => (f64::NAN, v),
        };
        table.push(vec![
            Cell::Float(phi),
            Cell::Float(j3),
            Cell::Float(evanescent),
            Cell::Float(curve.action[k].unwrap_or(f64::NAN)),
            Cell::Float(curve.envelope[k].unwrap_or(f64::NAN)),
            Cell::Bool(in_support(&curve.support, phi)),
        ]);
    }
    emit(&args.trace, "semiclassical", table)
}

fn classical_mc(args: &McArgs) -> CliResult<()> {
    if args.samples < 10_000 {
        return Err(CliError::Invalid(format!(
            "samples must be at least 10000 for the Monte-Carlo oracle, got {}",
            args.samples
        )));
    }
    if !args.phi.is_finite() || args.phi.abs() > std::f64::consts::PI * (1.0 + 1e-12) {
        return Err(CliError::Invalid(format!(
            "phi = {} must lie within [-pi, pi]",
            args.phi
        )));
    }
    // Parity/range checks ride on the config validation with m = m_psi.
    let config = build_config(args.photons, args.input_diff, args.input_diff)?;
    let m_psi: f64 = config.input_diff().value();

    let model = ClassicalPhaseModel::<f64>::new(args.photons, m_psi)?;
    let hist = classical_envelope_oracle(&model, args.phi, args.samples, args.seed);

    let mut table = Table::new(vec!["m", "count", "frequency", "envelope_2a_sq"]);
    for (k, &center) in hist.centers.iter().enumerate() {
        let reference = ClassicalParams::new(args.photons, m_psi, center)
            .with_convention(VectorLength::NPlusOne);
        let two_a_sq = envelope_sq(&reference, args.phi)
            .map(|a2| 2.0 * a2)
            .unwrap_or(f64::NAN);
        table.push(vec![
            Cell::Float(center),
            Cell::Int(hist.counts[k] as i64),
            Cell::Float(hist.frequencies[k]),
            Cell::Float(two_a_sq),
        ]);
    }

    let params = json!({
        "command": "classical-mc",
        "photons": args.photons,
        "input_diff": args.input_diff,
        "phi": args.phi,
        "samples": args.samples,
        "seed": args.seed,
    });
    match args.format {
        Format::Csv => write_table_csv(args.out.as_ref(), &table),
        Format::Json => write_json(args.out.as_ref(), &table.json("classical-mc", params)),
    }
}
