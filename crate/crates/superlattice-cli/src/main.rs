//! Command-line surface for the superlattice toolkit: one subcommand per
//! experiment, deterministic CSV/JSON output for plotting and regression
//! diffing.
//!
//! Exit status: 0 on success, 1 on usage/configuration errors, 2 on
//! domain/computation errors (error name on stderr).

mod config;
mod output;

use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use config::FileConfig;
use output::{Cell, Record, Table};
use superlattice::cluster::{self, StateCounts};
use superlattice::constants::PhysicalConstants;
use superlattice::eigen::jacobi_eigen;
use superlattice::fock::{enumerate_states, total_spin_label, SpinLabel, Statistics};
use superlattice::model::DimensionlessCouplings;
use superlattice::optics::{
    classify_species, detuning_class, dipole_potential, is_effective_double_well,
    josephson_frequency, recoil_energy, Detuning, DipoleField, LatticeParams, Species,
};
use superlattice::spectra::{
    evolution_frequencies, extract_couplings, transition_point, transition_point_closed_form,
    transition_point_printed_form, FrequencySet,
};
use superlattice::{build_hubbard, build_juvj, CouplingSet, LatticeGraph};

#[derive(Parser)]
#[command(
    name = "superlattice",
    version,
    about = "Double-well and small-cluster spin-ordering calculations",
    disable_help_subcommand = true
)]
struct Cli {
    /// Flat key = value config file; flags override file values.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output format (default: csv for row outputs, json for single objects).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write to this path instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Trap-level quantities: recoil energy, Josephson frequency, double-well
    /// criterion, and optionally the dipole potential and detuning class.
    Optics(OpticsArgs),
    /// Eigenvalues and spin labels of the two-site model, both sectors.
    DwSpectrum(DwSpectrumArgs),
    /// Singlet-triplet transition point at (u, v).
    Transition(TransitionArgs),
    /// Dynamic evolution frequencies of a coupling set.
    Frequencies(FrequenciesArgs),
    /// Couplings recovered from measured frequencies.
    Extract(ExtractArgs),
    /// Ground-label scan over j on a named graph (CSV columns
    /// jex_over_4j,e_afm,e_fm,ground).
    Scan(ScanArgs),
    /// Cluster state counts for two particles on n sites.
    Counts(CountsArgs),
}

#[derive(Args)]
struct OpticsArgs {
    /// Long-lattice depth, recoil units.
    #[arg(long)]
    v1: Option<f64>,
    /// Short-lattice depth, recoil units.
    #[arg(long)]
    v2: Option<f64>,
    /// Long-lattice period.
    #[arg(long)]
    d: Option<f64>,
    /// Relative phase of the two standing waves, radians.
    #[arg(long)]
    phase: Option<f64>,
    /// Atom mass.
    #[arg(long)]
    mass: Option<f64>,
    /// Short-lattice wavelength.
    #[arg(long)]
    wavelength: Option<f64>,
    /// natural (hbar = eps0 = c = 1) or physical (CODATA SI).
    #[arg(long)]
    units: Option<String>,
    /// Field intensity, for the dipole potential.
    #[arg(long)]
    intensity: Option<f64>,
    /// Re(alpha) at the driving frequency.
    #[arg(long)]
    polarizability: Option<f64>,
    /// Driving angular frequency, rad/s.
    #[arg(long)]
    laser_frequency: Option<f64>,
    /// Transition angular frequency, rad/s.
    #[arg(long)]
    transition_frequency: Option<f64>,
    /// Proton count, for species classification (with --neutrons).
    #[arg(long)]
    protons: Option<u32>,
    /// Neutron count, for species classification.
    #[arg(long)]
    neutrons: Option<u32>,
}

#[derive(Args)]
struct DwSpectrumArgs {
    /// U/4J.
    #[arg(long)]
    u: Option<f64>,
    /// V/4J.
    #[arg(long)]
    v: Option<f64>,
    /// J_ex/4J.
    #[arg(long)]
    jex: Option<f64>,
    /// Double-well bias in units of J (requires v = jex = 0).
    #[arg(long)]
    delta: Option<f64>,
}

#[derive(Args)]
struct TransitionArgs {
    /// U/4J.
    #[arg(long)]
    u: Option<f64>,
    /// V/4J.
    #[arg(long)]
    v: Option<f64>,
}

#[derive(Args)]
struct FrequenciesArgs {
    /// Tunneling J, energy units.
    #[arg(long)]
    j: Option<f64>,
    /// On-site U.
    #[arg(long)]
    u: Option<f64>,
    /// Nearest-neighbor V.
    #[arg(long)]
    v: Option<f64>,
    /// Superexchange J_ex.
    #[arg(long)]
    jex: Option<f64>,
    /// Reduced Planck constant.
    #[arg(long)]
    hbar: Option<f64>,
}

#[derive(Args)]
struct ExtractArgs {
    #[arg(long)]
    w1: Option<f64>,
    #[arg(long)]
    w2: Option<f64>,
    #[arg(long)]
    w3: Option<f64>,
    #[arg(long)]
    w4: Option<f64>,
    #[arg(long)]
    w5: Option<f64>,
    /// Reduced Planck constant.
    #[arg(long)]
    hbar: Option<f64>,
    /// Read w1..w5 from a frequencies CSV instead of flags.
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct ScanArgs {
    /// U/4J.
    #[arg(long)]
    u: Option<f64>,
    /// V/4J.
    #[arg(long)]
    v: Option<f64>,
    /// Scan upper end in J_ex/4J.
    #[arg(long)]
    jmax: Option<f64>,
    /// Grid points including both ends.
    #[arg(long)]
    steps: Option<usize>,
    /// two-site | plaquette-ring | kagome-cell | grid-4x4.
    #[arg(long)]
    graph: Option<String>,
}

#[derive(Args)]
struct CountsArgs {
    /// Number of lattice sites.
    #[arg(long)]
    sites: Option<usize>,
}

enum AppError {
    Usage(String),
    Computation(superlattice::Error),
    Io(String),
}

impl From<superlattice::Error> for AppError {
    fn from(e: superlattice::Error) -> Self {
        AppError::Computation(e)
    }
}

fn usage(msg: impl Into<String>) -> AppError {
    AppError::Usage(msg.into())
}

/// Writes to stdout, treating a closed pipe as a normal exit.
fn write_stdout(text: &str) -> Result<(), AppError> {
    use std::io::Write;
    match std::io::stdout().write_all(text.as_bytes()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(AppError::Io(format!("cannot write to stdout: {e}"))),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                let _ = write_stdout(&e.to_string());
                std::process::exit(0);
            }
            _ => {
                let line = e
                    .to_string()
                    .lines()
                    .find(|l| !l.trim().is_empty())
                    .unwrap_or("invalid arguments")
                    .to_string();
                eprintln!("{line}");
                std::process::exit(1);
            }
        },
    };
    match run(cli) {
        Ok(()) => {}
        Err(AppError::Usage(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
        Err(AppError::Computation(e)) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
        Err(AppError::Io(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
    }
}

fn run(cli: Cli) -> Result<(), AppError> {
    let allowed = allowed_keys(&cli.command);
    let file = match &cli.config {
        Some(path) => FileConfig::load(path, allowed).map_err(usage)?,
        None => FileConfig::empty(),
    };
    let format = resolve_format(&cli, &file)?;
    let rendered = match &cli.command {
        Command::Optics(args) => run_optics(args, &file, format)?,
        Command::DwSpectrum(args) => run_dw_spectrum(args, &file, format)?,
        Command::Transition(args) => run_transition(args, &file, format)?,
        Command::Frequencies(args) => run_frequencies(args, &file, format)?,
        Command::Extract(args) => run_extract(args, &file, format)?,
        Command::Scan(args) => run_scan(args, &file, format)?,
        Command::Counts(args) => run_counts(args, &file, format)?,
    };
    let output_path = match &cli.output {
        Some(p) => Some(p.clone()),
        None => file.get("output").map(PathBuf::from),
    };
    match output_path {
        Some(path) => std::fs::write(&path, rendered)
            .map_err(|e| AppError::Io(format!("cannot write {}: {e}", path.display()))),
        None => write_stdout(&rendered),
    }
}

fn allowed_keys(command: &Command) -> &'static [&'static str] {
    const COMMON: [&str; 2] = ["format", "output"];
    let _ = COMMON;
    match command {
        Command::Optics(_) => &[
            "format", "output", "v1", "v2", "d", "phase", "mass", "wavelength", "units",
            "intensity", "polarizability", "laser_frequency", "transition_frequency", "protons",
            "neutrons",
        ],
        Command::DwSpectrum(_) => &["format", "output", "u", "v", "jex", "delta"],
        Command::Transition(_) => &["format", "output", "u", "v"],
        Command::Frequencies(_) => &["format", "output", "j", "u", "v", "jex", "hbar"],
        Command::Extract(_) => &["format", "output", "w1", "w2", "w3", "w4", "w5", "hbar", "input"],
        Command::Scan(_) => &["format", "output", "u", "v", "jmax", "steps", "graph"],
        Command::Counts(_) => &["format", "output", "sites"],
    }
}

fn resolve_format(cli: &Cli, file: &FileConfig) -> Result<Format, AppError> {
    if let Some(f) = cli.format {
        return Ok(f);
    }
    match file.get("format") {
        Some("csv") => Ok(Format::Csv),
        Some("json") => Ok(Format::Json),
        Some(other) => Err(usage(format!("invalid value '{other}' for key format"))),
        None => Ok(match cli.command {
            // row-oriented outputs default to CSV, single objects to JSON
            Command::Scan(_) | Command::DwSpectrum(_) | Command::Frequencies(_) => Format::Csv,
            _ => Format::Json,
        }),
    }
}

fn render_record(record: Record, format: Format) -> String {
    match format {
        Format::Csv => record.to_csv(),
        Format::Json => record.to_json(),
    }
}

fn render_table(table: Table, format: Format) -> String {
    match format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    }
}

fn run_optics(args: &OpticsArgs, file: &FileConfig, format: Format) -> Result<String, AppError> {
    let v1 = file.f64("v1", args.v1, None).map_err(usage)?;
    let v2 = file.f64("v2", args.v2, None).map_err(usage)?;
    let d = file.f64("d", args.d, Some(1.0)).map_err(usage)?;
    let phase = file.f64("phase", args.phase, Some(0.0)).map_err(usage)?;
    let mass = file.f64("mass", args.mass, Some(1.0)).map_err(usage)?;
    let wavelength = file.f64("wavelength", args.wavelength, Some(1.0)).map_err(usage)?;
    let units = file.string("units", args.units.clone(), Some("natural")).map_err(usage)?;
    let constants = match units.as_str() {
        "natural" => PhysicalConstants::natural(),
        "physical" => PhysicalConstants::codata(),
        other => return Err(usage(format!("invalid value '{other}' for key units"))),
    };
    let params = LatticeParams::new(v1, v2, d, phase, mass, wavelength)?;
    let mut fields = vec![
        ("recoil_energy", Cell::Num(recoil_energy(mass, wavelength, &constants))),
        (
            "josephson_omega",
            match josephson_frequency(&params, &constants) {
                Ok(omega) => Cell::Num(omega),
                Err(e) => {
                    eprintln!("note: {e}");
                    Cell::Null
                }
            },
        ),
        ("effective_double_well", Cell::Bool(is_effective_double_well(&params))),
    ];
    let intensity = file.f64("intensity", args.intensity, Some(f64::NAN)).map_err(usage)?;
    let polarizability =
        file.f64("polarizability", args.polarizability, Some(f64::NAN)).map_err(usage)?;
    let laser = file.f64("laser_frequency", args.laser_frequency, Some(f64::NAN)).map_err(usage)?;
    let transition =
        file.f64("transition_frequency", args.transition_frequency, Some(f64::NAN)).map_err(usage)?;
    let dipole_inputs = [intensity, polarizability, laser, transition];
    if dipole_inputs.iter().all(|x| x.is_finite()) {
        let field = DipoleField::new(intensity, polarizability, laser, transition)?;
        fields.push(("dipole_potential", Cell::Num(dipole_potential(&field, &constants))));
        let class = match detuning_class(&field) {
            Detuning::Red => "red",
            Detuning::Blue => "blue",
            Detuning::Resonant => "resonant",
        };
        fields.push(("detuning", Cell::Text(class.to_string())));
    } else if dipole_inputs.iter().any(|x| x.is_finite()) {
        return Err(usage(
            "dipole output needs all of intensity, polarizability, laser_frequency, transition_frequency",
        ));
    }
    let protons = file.usize("protons", args.protons.map(|p| p as usize), Some(0)).map_err(usage)?;
    let neutrons = file.usize("neutrons", args.neutrons.map(|n| n as usize), Some(0)).map_err(usage)?;
    if protons > 0 {
        let species = Species::neutral(protons as u32, neutrons as u32)?;
        fields.push(("statistics", Cell::Text(classify_species(&species).to_string())));
    } else if neutrons > 0 {
        return Err(usage("species classification needs protons as well as neutrons"));
    }
    Ok(render_record(Record { fields }, format))
}

fn spin_cell(label: SpinLabel) -> Cell {
    match label {
        SpinLabel::Definite { two_s, .. } => {
            if two_s % 2 == 0 {
                Cell::Int((two_s / 2) as i64)
            } else {
                Cell::Text(format!("{two_s}/2"))
            }
        }
        SpinLabel::Mixed => Cell::Text("mixed".to_string()),
    }
}

fn run_dw_spectrum(
    args: &DwSpectrumArgs,
    file: &FileConfig,
    format: Format,
) -> Result<String, AppError> {
    let u = file.f64("u", args.u, None).map_err(usage)?;
    let v = file.f64("v", args.v, Some(0.0)).map_err(usage)?;
    let jex = file.f64("jex", args.jex, Some(0.0)).map_err(usage)?;
    let delta = file.f64("delta", args.delta, Some(0.0)).map_err(usage)?;
    if delta != 0.0 && (v != 0.0 || jex != 0.0) {
        return Err(usage("delta is a Hubbard-model bias; it requires v = 0 and jex = 0"));
    }
    let graph = LatticeGraph::two_site();
    let sz_zero = enumerate_states(2, 1, 1, Statistics::Fermion)?;
    let polarized = enumerate_states(2, 2, 0, Statistics::Fermion)?;
    let mut couplings = DimensionlessCouplings::new(u, v, jex).to_couplings();
    let mut rows: Vec<Vec<Cell>> = Vec::new();
    let h = if delta != 0.0 {
        couplings.bias_delta = delta;
        build_hubbard(&sz_zero, &graph, &couplings)?
    } else {
        build_juvj(&sz_zero, &graph, &couplings)?
    };
    let eig = jacobi_eigen(h.matrix())?;
    for (level, (value, vector)) in eig.values.iter().zip(&eig.vectors).enumerate() {
        let label = total_spin_label(&sz_zero, vector)?;
        rows.push(vec![
            Cell::Text("sz-zero".to_string()),
            Cell::Int(level as i64),
            Cell::Num(*value),
            spin_cell(label),
        ]);
    }
    let hp = if delta != 0.0 {
        build_hubbard(&polarized, &graph, &couplings)?
    } else {
        build_juvj(&polarized, &graph, &couplings)?
    };
    rows.push(vec![
        Cell::Text("polarized".to_string()),
        Cell::Int(0),
        Cell::Num(hp.entry(0, 0)),
        spin_cell(total_spin_label(&polarized, &[1.0])?),
    ]);
    let table = Table { comments: Vec::new(), header: vec!["sector", "level", "energy", "spin"], rows };
    Ok(render_table(table, format))
}

fn run_transition(
    args: &TransitionArgs,
    file: &FileConfig,
    format: Format,
) -> Result<String, AppError> {
    let u = file.f64("u", args.u, None).map_err(usage)?;
    let v = file.f64("v", args.v, Some(0.0)).map_err(usage)?;
    let j_crit = transition_point(u, v)?;
    let record = Record {
        fields: vec![
            ("j_crit", Cell::Num(j_crit)),
            ("j_crit_closed_form", Cell::Num(transition_point_closed_form(u, v))),
            ("j_crit_printed_form", Cell::Num(transition_point_printed_form(u, v))),
        ],
    };
    Ok(render_record(record, format))
}

fn run_frequencies(
    args: &FrequenciesArgs,
    file: &FileConfig,
    format: Format,
) -> Result<String, AppError> {
    let j = file.f64("j", args.j, None).map_err(usage)?;
    let u = file.f64("u", args.u, Some(0.0)).map_err(usage)?;
    let v = file.f64("v", args.v, Some(0.0)).map_err(usage)?;
    let jex = file.f64("jex", args.jex, Some(0.0)).map_err(usage)?;
    let hbar = file.f64("hbar", args.hbar, Some(1.0)).map_err(usage)?;
    let couplings = CouplingSet::new(j, u, v, jex)?;
    let freq = evolution_frequencies(&couplings, hbar)?;
    if freq.has_negative_w5() {
        eprintln!("note: w5 is negative (jex exceeds v); reported signed");
    }
    let table = Table {
        comments: Vec::new(),
        header: vec!["w1", "w2", "w3", "w4", "w5"],
        rows: vec![vec![
            Cell::Num(freq.w1),
            Cell::Num(freq.w2),
            Cell::Num(freq.w3),
            Cell::Num(freq.w4),
            Cell::Num(freq.w5),
        ]],
    };
    Ok(render_table(table, format))
}

fn parse_frequencies_csv(path: &PathBuf) -> Result<[f64; 5], AppError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| AppError::Io(format!("cannot read {}: {e}", path.display())))?;
    let mut lines = text.lines().filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let header = lines.next().ok_or_else(|| usage("frequencies file is empty"))?;
    if header.trim() != "w1,w2,w3,w4,w5" {
        return Err(usage(format!("expected header w1,w2,w3,w4,w5, got '{header}'")));
    }
    let row = lines.next().ok_or_else(|| usage("frequencies file has no data row"))?;
    let cells: Vec<&str> = row.trim().split(',').collect();
    if cells.len() != 5 {
        return Err(usage(format!("expected 5 columns, got {}", cells.len())));
    }
    let mut values = [0.0f64; 5];
    for (i, cell) in cells.iter().enumerate() {
        values[i] = cell
            .parse()
            .map_err(|_| usage(format!("invalid value '{cell}' for key w{}", i + 1)))?;
    }
    Ok(values)
}

fn run_extract(args: &ExtractArgs, file: &FileConfig, format: Format) -> Result<String, AppError> {
    let hbar = file.f64("hbar", args.hbar, Some(1.0)).map_err(usage)?;
    let input = match &args.input {
        Some(p) => Some(p.clone()),
        None => file.get("input").map(PathBuf::from),
    };
    let (w1, w2, w3, w4, w5) = match input {
        Some(path) => {
            let w = parse_frequencies_csv(&path)?;
            (w[0], w[1], w[2], w[3], w[4])
        }
        None => (
            file.f64("w1", args.w1, None).map_err(usage)?,
            file.f64("w2", args.w2, None).map_err(usage)?,
            file.f64("w3", args.w3, None).map_err(usage)?,
            file.f64("w4", args.w4, None).map_err(usage)?,
            file.f64("w5", args.w5, None).map_err(usage)?,
        ),
    };
    let freq = FrequencySet::new(w1, w2, w3, w4, w5, hbar)?;
    let extraction = extract_couplings(&freq)?;
    let record = Record {
        fields: vec![
            ("j", Cell::Num(extraction.couplings.hop_j)),
            ("u", Cell::Num(extraction.couplings.onsite_u)),
            ("v", Cell::Num(extraction.couplings.intersite_v)),
            ("jex", Cell::Num(extraction.couplings.superexchange_jex)),
            ("residual", Cell::Num(extraction.residual)),
        ],
    };
    Ok(render_record(record, format))
}

fn run_scan(args: &ScanArgs, file: &FileConfig, format: Format) -> Result<String, AppError> {
    let u = file.f64("u", args.u, Some(3.0)).map_err(usage)?;
    let v = file.f64("v", args.v, Some(0.0)).map_err(usage)?;
    let j_max = file.f64("jmax", args.jmax, Some(0.5)).map_err(usage)?;
    let steps = file.usize("steps", args.steps, Some(101)).map_err(usage)?;
    let graph_name = file.string("graph", args.graph.clone(), Some("plaquette-ring")).map_err(usage)?;
    let graph = LatticeGraph::named(&graph_name)
        .ok_or_else(|| usage(format!("invalid value '{graph_name}' for key graph")))?;
    let scan = cluster::scan_dataset(&cluster::ScanConfig { graph, u, v, j_max, steps })?;
    let sig = output::precision();
    let crossing_text = match scan.crossing {
        Some(j) => output::format_number(j, sig),
        None => "none".to_string(),
    };
    let comments = vec![
        format!("graph = {graph_name}, u = {u}, v = {v}"),
        format!("crossing_jex_over_4j = {crossing_text}"),
    ];
    let rows = scan
        .rows
        .iter()
        .map(|row| {
            vec![
                Cell::Num(row.jex_over_4j),
                Cell::Num(row.e_afm),
                Cell::Num(row.e_fm),
                Cell::Text(row.ground.to_string()),
            ]
        })
        .collect();
    let table =
        Table { comments, header: vec!["jex_over_4j", "e_afm", "e_fm", "ground"], rows };
    Ok(render_table(table, format))
}

fn run_counts(args: &CountsArgs, file: &FileConfig, format: Format) -> Result<String, AppError> {
    let sites = file.usize("sites", args.sites, None).map_err(usage)?;
    let fermion = cluster::count_cluster_states(sites, Statistics::Fermion)?;
    let boson = cluster::count_cluster_states(sites, Statistics::Boson)?;
    let (sz_zero, polarized, singlet, triplet) = match fermion {
        StateCounts::Fermion { sz_zero, polarized, singlet, triplet_sz_zero } => {
            (sz_zero, polarized, singlet, triplet_sz_zero)
        }
        _ => unreachable!("fermionic counts requested"),
    };
    let boson_total = match boson {
        StateCounts::Boson { total } => total,
        _ => unreachable!("bosonic counts requested"),
    };
    let record = Record {
        fields: vec![
            ("n_sites", Cell::Int(sites as i64)),
            ("sz_zero", Cell::Int(sz_zero as i64)),
            ("polarized", Cell::Int(polarized as i64)),
            ("boson", Cell::Int(boson_total as i64)),
            ("singlet", Cell::Int(singlet as i64)),
            ("triplet_sz_zero", Cell::Int(triplet as i64)),
        ],
    };
    Ok(render_record(record, format))
}

