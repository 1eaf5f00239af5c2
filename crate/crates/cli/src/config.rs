//! Run configuration: flat TOML sections with unit-suffixed keys.
//!
//! Every key is optional at parse time; each subcommand asks for what it
//! needs and names the missing key. Unknown keys are rejected.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Name accepted by `--config` for the bundled defaults.
pub const BUNDLED_NAME: &str = "narb-defaults";
pub const BUNDLED: &str = include_str!("../config/narb-defaults.toml");

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub molecule: MoleculeSection,
    pub line: LineSection,
    pub hyperfine: HyperfineSection,
    pub surrogate: SurrogateSection,
    pub potentials: PotentialFiles,
    pub grid: GridSection,
    pub fields: FieldsSection,
    pub scan: ScanSection,
    pub magic: MagicSection,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MoleculeSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_v_cm1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_vprime_cm1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transition_cm1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub background_parallel_au: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub background_perpendicular_au: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced_mass_da: Option<f64>,
}

/// Γ of the v'=0 line: given directly or calibrated to a crossing.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LineSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_au: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub calibrate_to_ghz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub calibrate_j_a: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub calibrate_j_b: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub calibrate_m: Option<i32>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HyperfineSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j_max: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rotational_constant_mhz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eqq_na_mhz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eqq_rb_mhz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spin_na: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spin_rb: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_na: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_rb: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dipole_debye: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_parallel_hz_w_cm2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_perpendicular_hz_w_cm2: Option<f64>,
    /// "standard" or "literal".
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadrupole_convention: Option<String>,
    /// Subset of rotation, quadrupole, zeeman, stark, polarization.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<String>>,
}

/// Overrides of the Morse surrogate parameters.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SurrogateSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub anharmonicity: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_r_e_bohr: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_omega_e_cm1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_b_e_cm1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_omega_e_cm1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_r_e_bohr: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_omega_e_cm1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub crossing_radius_bohr: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi_cm1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dipole_xa_ea0: Option<f64>,
}

/// Pointwise curve files replacing the surrogate. Relative paths are
/// taken from the config file's directory.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PotentialFiles {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ground_file: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bright_file: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dark_file: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dipole_file: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coupling_file: Option<PathBuf>,
    /// Units overriding the files' own `# units:` headers.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_unit: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub energy_unit: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dipole_unit: Option<String>,
}

impl PotentialFiles {
    pub fn is_empty(&self) -> bool {
        self.ground_file.is_none()
            && self.bright_file.is_none()
            && self.dark_file.is_none()
            && self.dipole_file.is_none()
            && self.coupling_file.is_none()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_min_bohr: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_max_bohr: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FieldsSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_field_gauss: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e_field_kv_cm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intensity_w_cm2: Option<f64>,
    /// Polarization angle from the field axis z.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polarization_deg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wavelength_nm: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScanSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detuning_start_ghz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detuning_stop_ghz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detuning_points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub angle_start_deg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub angle_stop_deg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub angle_points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wavenumber_start_cm1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wavenumber_stop_cm1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wavenumber_points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j_values: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<i32>,
    /// Excited vibrational levels kept per J' in sums over states.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub retained_levels: Option<usize>,
    /// Levels per curve and J written by solve-rovib.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub levels_per_j: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MagicSection {
    /// "detuning" or "angle".
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    /// "J=0,M=0" or, in angle mode, "dressed=<index>".
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state_a: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state_b: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bracket_ghz: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bracket_deg: Option<[f64; 2]>,
}

/// Value of a required key, or a configuration error naming it.
pub fn need<T: Clone>(value: &Option<T>, key: &str) -> Result<T, CliError> {
    value
        .clone()
        .ok_or_else(|| CliError::Config(format!("missing key `{key}`")))
}

/// Parsed configuration plus the directory relative paths refer to.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub config: RunConfig,
    pub base_dir: PathBuf,
}

/// Reads `source` (a path, or the bundled name), applies `overrides`
/// and deserializes.
pub fn load(source: &str, overrides: &[String]) -> Result<Loaded, CliError> {
    let path = Path::new(source);
    let (text, base_dir) = if source == BUNDLED_NAME && !path.exists() {
        (BUNDLED.to_string(), PathBuf::from("."))
    } else {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
        let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        (text, dir)
    };
    let config = parse(&text, overrides)?;
    Ok(Loaded { config, base_dir })
}

pub fn parse(text: &str, overrides: &[String]) -> Result<RunConfig, CliError> {
    let mut table: toml::Table = text
        .parse()
        .map_err(|e: toml::de::Error| CliError::Config(format!("config: {}", e.message())))?;
    for o in overrides {
        apply_override(&mut table, o)?;
    }
    RunConfig::deserialize(toml::Value::Table(table)).map_err(|e| CliError::Config(format!("config: {}", e.message())))
}

/// `section.key=value`; the value is read as a TOML literal and falls
/// back to a plain string.
fn apply_override(table: &mut toml::Table, spec: &str) -> Result<(), CliError> {
    let (key, raw) = spec
        .split_once('=')
        .ok_or_else(|| CliError::Config(format!("override `{spec}` is not of the form section.key=value")))?;
    let (section, name) = key
        .trim()
        .split_once('.')
        .ok_or_else(|| CliError::Config(format!("override key `{}` needs a section, e.g. scan.m", key.trim())))?;
    let value = format!("v = {}", raw.trim())
        .parse::<toml::Table>()
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| toml::Value::String(raw.trim().to_string()));
    let entry = table
        .entry(section.to_string())
        .or_insert_with(|| toml::Value::Table(toml::Table::new()));
    let toml::Value::Table(section_table) = entry else {
        return Err(CliError::Config(format!("`{section}` is not a section")));
    };
    section_table.insert(name.to_string(), value);
    Ok(())
}

/// The configuration as it was run, re-ingestable with `--config`.
pub fn dump(config: &RunConfig) -> Result<String, CliError> {
    toml::to_string(config).map_err(|e| CliError::Config(format!("cannot serialize config: {e}")))
}
