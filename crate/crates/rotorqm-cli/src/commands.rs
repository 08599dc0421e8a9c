//! One function per subcommand, each turning a resolved `RunConfig`
//! into a `Document`. Grid sizes are fixed constants rather than flags
//! so that identical configs always produce identical tables.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde_json::json;

use rotorqm::classical::{
    gamma_factor, leading_order_delta_t, roundtrip_delta_t, timing_trace, ClosedPath,
};
use rotorqm::core::{
    BoundaryCondition, FluxSpec, Particle, RotatingFrame, Sector,
};
use rotorqm::cylinder::{
    anomalous_interference, dirichlet_energy, negative_energy_census_3d, neumann_energy,
    CylinderMode,
};
use rotorqm::shell::{
    flux_spectrum, geometric_potential, negative_energy_census_shell, periodic_full_energy,
    periodic_reduced_energy, repeated_root_energy, sector_interference, shell_coefficients,
    SectorAmplitude, SpectrumFamily, SpectrumPoint,
};
use rotorqm::specfun::{
    bessel_prime_zero_with_tol, bessel_zero_with_tol, DEFAULT_ROOT_TOL,
};
use rotorqm::Result;

use crate::config::{CommandKind, RunConfig, WallChoice};
use crate::output::{Cell, Document};

/// Rows in the classical timing audit trace.
const TIMING_ROWS: usize = 64;
/// Angular samples in the interference trace (full turn, end excluded).
const ANGLE_ROWS: usize = 64;
/// Radial samples in the beat trace, wall included.
const RADIAL_ROWS: usize = 33;
/// Time samples in the beat trace, one full period inclusive.
const TIME_ROWS: usize = 65;

const SPECTRUM_COLUMNS: [&str; 10] = [
    "family",
    "sector",
    "p_or_m",
    "k",
    "flux_ratio",
    "omega",
    "energy_J",
    "E0_J",
    "correction_J",
    "negative_flag",
];

const CYLINDER_COLUMNS: [&str; 6] = ["bc", "n", "s_label", "s_index", "omega", "energy_J"];

pub fn run(config: &RunConfig) -> Result<Document> {
    match config.command {
        CommandKind::ClassicalSagnac => classical_sagnac(config),
        CommandKind::ShellSpectrum => shell_spectrum(config),
        CommandKind::FluxSpectrum => flux_spectrum_sweep(config),
        CommandKind::CylinderSpectrum => cylinder_spectrum(config),
        CommandKind::Interference => interference(config),
        CommandKind::Beat => beat(config),
        CommandKind::Census => census(config),
        CommandKind::BesselTable => bessel_table(config),
    }
}

fn frame_of(config: &RunConfig) -> Result<RotatingFrame> {
    RotatingFrame::new(config.omega, config.radius)
}

fn particle_of(config: &RunConfig) -> Result<Particle> {
    Particle::new(config.mass)
}

fn family_name(family: SpectrumFamily) -> &'static str {
    match family {
        SpectrumFamily::RepeatedRoot => "repeated_root",
        SpectrumFamily::PeriodicReduced => "periodic_reduced",
        SpectrumFamily::PeriodicFull => "periodic_full",
        SpectrumFamily::FluxCoupled => "flux_coupled",
        SpectrumFamily::CylinderDirichlet => "cylinder_dirichlet",
        SpectrumFamily::CylinderNeumann => "cylinder_neumann",
    }
}

fn sector_name(sector: Sector) -> &'static str {
    match sector {
        Sector::Plus => "plus",
        Sector::Minus => "minus",
    }
}

fn wall_of(choice: WallChoice) -> BoundaryCondition {
    match choice {
        WallChoice::Dirichlet => BoundaryCondition::Dirichlet,
        WallChoice::Neumann => BoundaryCondition::Neumann,
    }
}

fn wall_name(bc: BoundaryCondition) -> &'static str {
    match bc {
        BoundaryCondition::Dirichlet => "dirichlet",
        BoundaryCondition::Neumann => "neumann",
        BoundaryCondition::None => "none",
    }
}

fn spectrum_row(point: &SpectrumPoint, flux_ratio: f64, omega: f64) -> Vec<Cell> {
    vec![
        Cell::Text(family_name(point.family)),
        Cell::Text(sector_name(point.mode.sector)),
        Cell::Int(point.mode.angular_qn as i64),
        Cell::Num(point.mode.axial_k),
        Cell::Num(flux_ratio),
        Cell::Num(omega),
        Cell::Num(point.energy),
        Cell::Num(point.nonrotating_energy),
        Cell::Num(point.rotation_correction),
        Cell::Int(point.is_negative() as i64),
    ]
}

fn classical_sagnac(config: &RunConfig) -> Result<Document> {
    let frame = frame_of(config)?;
    let timing = roundtrip_delta_t(&frame, config.radius)?;
    let area = PI * config.radius * config.radius;
    let path = ClosedPath::circle(config.radius)?;
    let trace = timing_trace(&frame, &path, TIMING_ROWS)?;
    let rows = trace
        .iter()
        .map(|p| vec![Cell::Num(p.phi), Cell::Num(p.r), Cell::Num(p.dt_contribution)])
        .collect();
    let summary = json!({
        "rim_speed": frame.rim_speed(),
        "gamma": gamma_factor(&frame, config.radius)?,
        "t_cw": timing.t_cw,
        "t_ccw": timing.t_ccw,
        "delta_t": timing.delta_t,
        "delta_t_leading": leading_order_delta_t(&frame, area),
    });
    Ok(Document {
        config: config.clone(),
        columns: vec!["phi", "r", "dt_contribution"],
        rows,
        summary: Some(summary),
    })
}

/// Optional constant confinement shift, applied uniformly to shell rows.
fn shell_shift(config: &RunConfig, particle: &Particle) -> f64 {
    if config.with_geometric_potential {
        geometric_potential(particle, config.radius)
    } else {
        0.0
    }
}

fn shell_spectrum(config: &RunConfig) -> Result<Document> {
    let frame = frame_of(config)?;
    let particle = particle_of(config)?;
    let shift = shell_shift(config, &particle);
    let mut points = vec![repeated_root_energy(&frame, &particle, config.k)];
    for p in config.p_min..=config.p_max {
        points.push(periodic_reduced_energy(&frame, &particle, p, config.k));
        points.push(periodic_full_energy(&frame, &particle, p, config.k));
    }
    if shift != 0.0 {
        points = points.iter().map(|pt| pt.shifted_by(shift)).collect();
    }
    let negative = points.iter().filter(|pt| pt.is_negative()).count();
    let rows = points
        .iter()
        .map(|pt| spectrum_row(pt, 0.0, config.omega))
        .collect();
    Ok(spectrum_table(config, rows, negative))
}

fn flux_spectrum_sweep(config: &RunConfig) -> Result<Document> {
    let frame = frame_of(config)?;
    let particle = particle_of(config)?;
    let flux = FluxSpec::new(config.flux_ratio)?;
    let shift = shell_shift(config, &particle);
    let mut points = Vec::new();
    for p in config.p_min..=config.p_max {
        let point = flux_spectrum(&frame, &particle, &flux, p, config.k);
        points.push(if shift != 0.0 { point.shifted_by(shift) } else { point });
    }
    let negative = points.iter().filter(|pt| pt.is_negative()).count();
    let rows = points
        .iter()
        .map(|pt| spectrum_row(pt, config.flux_ratio, config.omega))
        .collect();
    Ok(spectrum_table(config, rows, negative))
}

fn spectrum_table(config: &RunConfig, rows: Vec<Vec<Cell>>, negative: usize) -> Document {
    let summary = json!({ "rows": rows.len(), "negative_count": negative });
    Document {
        config: config.clone(),
        columns: SPECTRUM_COLUMNS.to_vec(),
        rows,
        summary: Some(summary),
    }
}

fn walls_of(config: &RunConfig) -> Vec<BoundaryCondition> {
    match config.bc {
        Some(choice) => vec![wall_of(choice)],
        None => vec![BoundaryCondition::Dirichlet, BoundaryCondition::Neumann],
    }
}

fn cylinder_row(config: &RunConfig, point: &SpectrumPoint) -> Vec<Cell> {
    let s_index = point.mode.radial_index as i64;
    let label_offset = config.zero_based_radial as i64;
    vec![
        Cell::Text(wall_name(point.mode.bc)),
        Cell::Int(point.mode.angular_qn as i64),
        Cell::Int(s_index - label_offset),
        Cell::Int(s_index),
        Cell::Num(config.omega),
        Cell::Num(point.energy),
    ]
}

fn cylinder_spectrum(config: &RunConfig) -> Result<Document> {
    let frame = frame_of(config)?;
    let particle = particle_of(config)?;
    let mut rows = Vec::new();
    let mut negative = 0;
    for bc in walls_of(config) {
        for s in 1..=config.s {
            let point = if bc == BoundaryCondition::Neumann {
                neumann_energy(&frame, &particle, config.n, s, config.k)?
            } else {
                dirichlet_energy(&frame, &particle, config.n, s, config.k)?
            };
            negative += point.is_negative() as usize;
            rows.push(cylinder_row(config, &point));
        }
    }
    let summary = json!({ "rows": rows.len(), "negative_count": negative });
    Ok(Document {
        config: config.clone(),
        columns: CYLINDER_COLUMNS.to_vec(),
        rows,
        summary: Some(summary),
    })
}

fn interference(config: &RunConfig) -> Result<Document> {
    let frame = frame_of(config)?;
    let particle = particle_of(config)?;
    // Only the first-order coefficient feeds the trace; the energies
    // passed here shift the quadratics without touching it.
    let coeffs = shell_coefficients(&frame, &particle, config.k, config.k, 0.0, 0.0);
    let plus = SectorAmplitude::new(Sector::Plus, Complex64::new(1.0, 0.0));
    let minus = SectorAmplitude::new(Sector::Minus, Complex64::new(1.0, 0.0));
    let grid: Vec<f64> = (0..ANGLE_ROWS)
        .map(|i| TAU * i as f64 / ANGLE_ROWS as f64)
        .collect();
    let trace = sector_interference(&plus, &minus, coeffs.a(), &grid);
    let rows = grid
        .iter()
        .zip(trace.total_density.iter().zip(&trace.cross_term))
        .map(|(&phi, (&density, &cross))| {
            vec![Cell::Num(phi), Cell::Num(density), Cell::Num(cross)]
        })
        .collect();
    let summary = json!({
        "extracted_phase": trace.extracted_phase,
        "winding": trace.winding,
        "roundtrip_phase": coeffs.roundtrip_phase(),
        "no_sagnac": trace.no_sagnac,
        "sectors": [sector_name(trace.sectors_used.0), sector_name(trace.sectors_used.1)],
    });
    Ok(Document {
        config: config.clone(),
        columns: vec!["phi", "total_density", "cross_term"],
        rows,
        summary: Some(summary),
    })
}

fn beat(config: &RunConfig) -> Result<Document> {
    let frame = frame_of(config)?;
    let particle = particle_of(config)?;
    let bc = wall_of(config.bc.expect("validated upstream"));
    let r_grid: Vec<f64> = (0..RADIAL_ROWS)
        .map(|i| config.radius * i as f64 / (RADIAL_ROWS - 1) as f64)
        .collect();
    let oscillates = config.n != 0 && config.omega != 0.0;
    let t_grid: Vec<f64> = if oscillates {
        let period = PI / (config.n.abs() as f64 * config.omega.abs());
        (0..TIME_ROWS)
            .map(|i| period * i as f64 / (TIME_ROWS - 1) as f64)
            .collect()
    } else {
        vec![0.0]
    };
    let trace = anomalous_interference(&frame, &particle, config.n, config.s, bc, &r_grid, &t_grid)?;
    let scale = if config.normalize_modes {
        let mode = CylinderMode::new(&frame, &particle, bc, config.n.abs(), config.s, 0.0)?;
        1.0 / (TAU * mode.l2_radial_norm()?)
    } else {
        1.0
    };
    let mut rows = Vec::with_capacity(r_grid.len() * t_grid.len());
    for (i, &r) in r_grid.iter().enumerate() {
        for (j, &t) in t_grid.iter().enumerate() {
            let cross = trace.cross_term[i * t_grid.len() + j];
            rows.push(vec![Cell::Num(r), Cell::Num(t), Cell::Num(scale * cross)]);
        }
    }
    let summary = json!({
        "beat_period": trace.beat_period,
        "time_dependent": trace.time_dependent,
        "normalized": config.normalize_modes,
    });
    Ok(Document {
        config: config.clone(),
        columns: vec!["r", "t", "cross_term"],
        rows,
        summary: Some(summary),
    })
}

fn census(config: &RunConfig) -> Result<Document> {
    let frame = frame_of(config)?;
    let particle = particle_of(config)?;
    match config.bc {
        Some(choice) => {
            let points = negative_energy_census_3d(
                &frame,
                &particle,
                wall_of(choice),
                config.n as u32,
                config.s,
            )?;
            let rows: Vec<Vec<Cell>> =
                points.iter().map(|pt| cylinder_row(config, pt)).collect();
            let summary = json!({ "rows": rows.len(), "negative_count": rows.len() });
            Ok(Document {
                config: config.clone(),
                columns: CYLINDER_COLUMNS.to_vec(),
                rows,
                summary: Some(summary),
            })
        }
        None => {
            let flux = FluxSpec::new(config.flux_ratio)?;
            let shift = shell_shift(config, &particle);
            // The library census filters unshifted energies, so with the
            // confinement shift on, rebuild the sweep and filter after
            // shifting; negativity then refers to what gets printed.
            let points: Vec<SpectrumPoint> = if shift != 0.0 {
                (config.p_min..=config.p_max)
                    .map(|p| flux_spectrum(&frame, &particle, &flux, p, 0.0).shifted_by(shift))
                    .filter(SpectrumPoint::is_negative)
                    .collect()
            } else {
                negative_energy_census_shell(
                    &frame,
                    &particle,
                    &flux,
                    config.p_min..=config.p_max,
                )
            };
            let rows: Vec<Vec<Cell>> = points
                .iter()
                .map(|pt| spectrum_row(pt, config.flux_ratio, config.omega))
                .collect();
            Ok(spectrum_table(config, rows, points.len()))
        }
    }
}

fn bessel_table(config: &RunConfig) -> Result<Document> {
    let tol = config.precision.unwrap_or(DEFAULT_ROOT_TOL);
    let mut rows = Vec::new();
    for (kind, find) in [
        ("function", bessel_zero_with_tol as fn(i32, u32, f64) -> Result<f64>),
        ("derivative", bessel_prime_zero_with_tol),
    ] {
        for n in 0..=config.n {
            for s in 1..=config.s {
                let root = find(n, s, tol)?;
                rows.push(vec![
                    Cell::Int(n as i64),
                    Cell::Text(kind),
                    Cell::Int(s as i64),
                    Cell::Num(root),
                ]);
            }
        }
    }
    Ok(Document {
        config: config.clone(),
        columns: vec!["n", "kind", "s", "root"],
        rows,
        summary: None,
    })
}
