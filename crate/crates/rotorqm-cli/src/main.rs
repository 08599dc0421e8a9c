//! Command-line front end for the rotorqm library: classical timing
//! splits, shell and cylinder spectra, interference traces and zero
//! tables, emitted as CSV or JSON with a self-describing header.

mod commands;
mod config;
mod output;

use std::path::Path;

use chrono::{SecondsFormat, Utc};
use clap::{Args, Parser, Subcommand};

use rotorqm::core::constants::{ELECTRON_MASS, NEUTRON_MASS};

use crate::config::{CommandKind, OutputFormat, ParticleKind, PresetKind, RunConfig, WallChoice};

#[derive(Parser)]
#[command(
    name = "rotorqm",
    version,
    about = "Timing splits and quantum spectra on rotating rings and cylinders"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Arrival-time split between counter-propagating rim signals
    ClassicalSagnac(CommonArgs),
    /// Closed-form shell levels: repeated-root row plus both periodic families
    ShellSpectrum(CommonArgs),
    /// Shell levels with a flux line through the axis, swept over windings
    FluxSpectrum(CommonArgs),
    /// Cylinder levels over radial zeros, one or both wall types
    CylinderSpectrum(CommonArgs),
    /// Density of a two-sector shell superposition around the loop
    Interference(CommonArgs),
    /// Time-oscillating cross term of counter-wound cylinder modes
    Beat(CommonArgs),
    /// Negative-energy states: shell flux sweep, or wall modes with --bc
    Census(CommonArgs),
    /// Bessel function and derivative zeros up to the given order and index
    BesselTable(CommonArgs),
}

impl Command {
    fn parts(&self) -> (CommandKind, &CommonArgs) {
        match self {
            Command::ClassicalSagnac(a) => (CommandKind::ClassicalSagnac, a),
            Command::ShellSpectrum(a) => (CommandKind::ShellSpectrum, a),
            Command::FluxSpectrum(a) => (CommandKind::FluxSpectrum, a),
            Command::CylinderSpectrum(a) => (CommandKind::CylinderSpectrum, a),
            Command::Interference(a) => (CommandKind::Interference, a),
            Command::Beat(a) => (CommandKind::Beat, a),
            Command::Census(a) => (CommandKind::Census, a),
            Command::BesselTable(a) => (CommandKind::BesselTable, a),
        }
    }
}

#[derive(Args)]
struct CommonArgs {
    /// Frame angular velocity in rad/s
    #[arg(long, allow_hyphen_values = true)]
    omega: Option<f64>,
    /// Rim speed in m/s, converted to omega via the radius
    #[arg(long, conflicts_with = "omega", allow_hyphen_values = true)]
    linear_velocity: Option<f64>,
    /// Loop or wall radius in m
    #[arg(long)]
    radius: Option<f64>,
    /// Rest mass in kg
    #[arg(long, conflicts_with = "particle")]
    mass: Option<f64>,
    /// Built-in particle (default: electron)
    #[arg(long, value_enum)]
    particle: Option<ParticleKind>,
    /// Axis flux in flux quanta
    #[arg(long, allow_hyphen_values = true)]
    flux_ratio: Option<f64>,
    /// Axial wavenumber in 1/m
    #[arg(long, allow_hyphen_values = true)]
    k: Option<f64>,
    /// Angular order, or order bound for census and zero-table sweeps
    #[arg(long, allow_hyphen_values = true)]
    n: Option<i32>,
    /// Radial zero index (1-based), or index bound for sweeps
    #[arg(long)]
    s: Option<u32>,
    /// Lowest winding in spectrum sweeps
    #[arg(long, allow_hyphen_values = true)]
    p_min: Option<i32>,
    /// Highest winding in spectrum sweeps
    #[arg(long, allow_hyphen_values = true)]
    p_max: Option<i32>,
    /// Wall type; cylinder-spectrum runs both when omitted
    #[arg(long, value_enum)]
    bc: Option<WallChoice>,
    /// Named parameter bundle; explicit flags override its entries
    #[arg(long, value_enum)]
    preset: Option<PresetKind>,
    /// Output format
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
    /// Write here (atomically, temp file plus rename) instead of stdout
    #[arg(long)]
    out: Option<String>,
    /// Drop the generated-at header line
    #[arg(long)]
    no_timestamp: bool,
    /// Add the constant surface-confinement shift to shell levels
    #[arg(long)]
    with_geometric_potential: bool,
    /// Scale the beat trace by the mode's angular-radial squared norm
    #[arg(long)]
    normalize_modes: bool,
    /// Label radial zeros from 0 instead of 1
    #[arg(long)]
    zero_based_radial: bool,
}

/// The operating point all three presets share.
const REFERENCE_OMEGA: f64 = -1e7;
const REFERENCE_RADIUS: f64 = 1e-5;

struct PresetValues {
    command: CommandKind,
    omega: f64,
    radius: f64,
    particle: ParticleKind,
    flux_ratio: f64,
    n: i32,
    s: u32,
    p_min: i32,
    p_max: i32,
    zero_based_radial: bool,
}

fn preset_values(preset: PresetKind) -> PresetValues {
    let base = PresetValues {
        command: CommandKind::CylinderSpectrum,
        omega: REFERENCE_OMEGA,
        radius: REFERENCE_RADIUS,
        particle: ParticleKind::Electron,
        flux_ratio: 0.0,
        n: 1,
        s: 1,
        p_min: -10,
        p_max: 30,
        zero_based_radial: false,
    };
    match preset {
        PresetKind::Fig1 => PresetValues {
            command: CommandKind::FluxSpectrum,
            flux_ratio: 2.0,
            ..base
        },
        PresetKind::Fig2 => PresetValues { s: 5, zero_based_radial: true, ..base },
        PresetKind::GroundPair => base,
    }
}

fn command_name(kind: CommandKind) -> &'static str {
    match kind {
        CommandKind::ClassicalSagnac => "classical-sagnac",
        CommandKind::ShellSpectrum => "shell-spectrum",
        CommandKind::FluxSpectrum => "flux-spectrum",
        CommandKind::CylinderSpectrum => "cylinder-spectrum",
        CommandKind::Interference => "interference",
        CommandKind::Beat => "beat",
        CommandKind::Census => "census",
        CommandKind::BesselTable => "bessel-table",
    }
}

fn particle_mass(kind: ParticleKind) -> f64 {
    match kind {
        ParticleKind::Electron => ELECTRON_MASS,
        ParticleKind::Neutron => NEUTRON_MASS,
    }
}

fn build_config(kind: CommandKind, args: &CommonArgs) -> Result<RunConfig, String> {
    let preset = match args.preset {
        Some(p) => {
            let values = preset_values(p);
            if values.command != kind {
                return Err(format!(
                    "this preset belongs to the {} subcommand",
                    command_name(values.command)
                ));
            }
            Some(values)
        }
        None => None,
    };
    let p = preset.as_ref();
    let needs_frame = kind != CommandKind::BesselTable;

    let radius = match args.radius.or(p.map(|v| v.radius)) {
        Some(r) => r,
        None if needs_frame => return Err("--radius is required".into()),
        None => 1.0,
    };
    let omega = if let Some(v) = args.linear_velocity {
        v / radius
    } else {
        match args.omega.or(p.map(|v| v.omega)) {
            Some(w) => w,
            None if needs_frame => {
                return Err("--omega or --linear-velocity is required".into())
            }
            None => 0.0,
        }
    };

    let (mass, particle) = if let Some(m) = args.mass {
        (m, None)
    } else {
        let chosen = args
            .particle
            .or(p.map(|v| v.particle))
            .unwrap_or(ParticleKind::Electron);
        (particle_mass(chosen), Some(chosen))
    };

    let n = args.n.or(p.map(|v| v.n)).unwrap_or(match kind {
        CommandKind::Census | CommandKind::BesselTable => 5,
        _ => 1,
    });
    let s = args.s.or(p.map(|v| v.s)).unwrap_or(match kind {
        CommandKind::Census => 8,
        CommandKind::BesselTable => 5,
        _ => 1,
    });
    let bc = args.bc;
    let zero_based_radial = args.zero_based_radial || p.is_some_and(|v| v.zero_based_radial);

    if kind == CommandKind::Beat && bc.is_none() {
        return Err("beat needs an explicit --bc".into());
    }
    let shell_rows = matches!(kind, CommandKind::ShellSpectrum | CommandKind::FluxSpectrum)
        || (kind == CommandKind::Census && bc.is_none());
    if args.with_geometric_potential && !shell_rows {
        return Err("--with-geometric-potential only applies to shell-level output".into());
    }
    if args.normalize_modes && kind != CommandKind::Beat {
        return Err("--normalize-modes only applies to beat".into());
    }
    let labeled_rows = matches!(kind, CommandKind::CylinderSpectrum | CommandKind::Census);
    if args.zero_based_radial && !labeled_rows {
        return Err("--zero-based-radial only applies to radial-zero tables".into());
    }
    let n_sweep = kind == CommandKind::BesselTable
        || (kind == CommandKind::Census && bc.is_some());
    if n_sweep && n < 0 {
        return Err("--n must be nonnegative for this subcommand".into());
    }

    let precision = match std::env::var("ROTORQM_PRECISION") {
        Ok(text) => {
            let value: f64 = text
                .parse()
                .map_err(|_| format!("ROTORQM_PRECISION is not a number: {text}"))?;
            if !(value.is_finite() && value > 0.0) {
                return Err(format!("ROTORQM_PRECISION must be positive: {text}"));
            }
            Some(value)
        }
        Err(std::env::VarError::NotPresent) => None,
        Err(_) => return Err("ROTORQM_PRECISION is not valid unicode".into()),
    };

    Ok(RunConfig {
        command: kind,
        omega,
        radius,
        mass,
        particle,
        flux_ratio: args.flux_ratio.or(p.map(|v| v.flux_ratio)).unwrap_or(0.0),
        k: args.k.unwrap_or(0.0),
        n,
        s,
        p_min: args.p_min.or(p.map(|v| v.p_min)).unwrap_or(-10),
        p_max: args.p_max.or(p.map(|v| v.p_max)).unwrap_or(30),
        bc,
        preset: args.preset,
        format: args.format,
        out: args.out.clone(),
        with_geometric_potential: args.with_geometric_potential,
        normalize_modes: args.normalize_modes,
        zero_based_radial,
        precision,
    })
}

fn fail(code: &str, message: &str) -> ! {
    let record = serde_json::json!({ "error": code, "message": message });
    eprintln!("{record}");
    std::process::exit(1);
}

fn write_atomic(path: &Path, text: &str) -> std::io::Result<()> {
    let name = path.file_name().ok_or_else(|| {
        std::io::Error::new(std::io::ErrorKind::InvalidInput, "output path has no file name")
    })?;
    let mut tmp = path.to_path_buf();
    tmp.set_file_name(format!("{}.tmp", name.to_string_lossy()));
    std::fs::write(&tmp, text)?;
    std::fs::rename(&tmp, path)
}

fn main() {
    let cli = Cli::parse();
    let (kind, args) = cli.command.parts();
    let config = match build_config(kind, args) {
        Ok(config) => config,
        Err(message) => fail("invalid_config", &message),
    };
    let document = match commands::run(&config) {
        Ok(document) => document,
        Err(error) => fail(error.code(), &error.to_string()),
    };
    let stamp =
        (!args.no_timestamp).then(|| Utc::now().to_rfc3339_opts(SecondsFormat::Secs, true));
    let text = document.render(stamp.as_deref());
    match &config.out {
        Some(path) => {
            if let Err(error) = write_atomic(Path::new(path), &text) {
                fail("io", &error.to_string());
            }
        }
        None => print!("{text}"),
    }
}
