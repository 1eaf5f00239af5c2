//! Physical constants (CODATA 2018) and derived atomic-unit factors.

use std::f64::consts::PI;

/// Speed of light in vacuum (m/s).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Planck constant (J·s).
pub const PLANCK: f64 = 6.626_070_15e-34;

/// Reduced Planck constant (J·s).
pub const HBAR: f64 = PLANCK / (2.0 * PI);

/// Elementary charge (C).
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

/// Vacuum permittivity (F/m).
pub const EPSILON_0: f64 = 8.854_187_812_8e-12;

/// Bohr radius (m).
pub const BOHR_RADIUS: f64 = 5.291_772_109_03e-11;

/// Hartree energy (J).
pub const HARTREE_JOULE: f64 = 4.359_744_722_207_1e-18;

/// Hartree energy expressed as a frequency E_h/h (Hz).
pub const HARTREE_HZ: f64 = 6.579_683_920_502e15;

/// Speed of light in atomic units (inverse fine-structure constant).
pub const C_AU: f64 = 137.035_999_084;

/// Atomic mass unit in electron masses.
pub const DALTON_ME: f64 = 1_822.888_486_209;

/// Nuclear magneton over h, in Hz per gauss.
pub const NUCLEAR_MAGNETON_HZ_PER_GAUSS: f64 = 762.259_322_91;

/// One debye (C·m).
pub const DEBYE_SI: f64 = 1e-21 / SPEED_OF_LIGHT;

/// e·a₀ expressed in debye.
pub const EA0_DEBYE: f64 = ELEMENTARY_CHARGE * BOHR_RADIUS / DEBYE_SI;

/// Atomic unit of electric field (V/m).
pub const FIELD_AU_V_PER_M: f64 = HARTREE_JOULE / (ELEMENTARY_CHARGE * BOHR_RADIUS);

/// Atomic unit of time ħ/E_h (s).
pub const TIME_AU_S: f64 = HBAR / HARTREE_JOULE;

/// One atomic unit of polarizability as a light shift per intensity,
/// α/h in MHz/(W/cm²).
///
/// This is the conventional value used throughout the molecular-trapping
/// literature; a CODATA 2018 evaluation of e²a₀²/(2ε₀c·h·E_h) gives
/// 4.68712e-8, a 1.4e-4 relative difference.
pub const POLARIZABILITY_AU_MHZ_PER_W_CM2: f64 = 4.686_45e-8;

/// 1 D × 1 kV/cm expressed as an energy over h, in MHz.
pub const DEBYE_KV_PER_CM_MHZ: f64 = DEBYE_SI * 1e5 / PLANCK * 1e-6;

/// Nuclear spin of ²³Na.
pub const SPIN_NA23: f64 = 1.5;

/// Nuclear spin of ⁸⁷Rb.
pub const SPIN_RB87: f64 = 1.5;

/// Atomic mass of ²³Na (Da).
pub const MASS_NA23: f64 = 22.989_769_282_0;

/// Atomic mass of ⁸⁷Rb (Da).
pub const MASS_RB87: f64 = 86.909_180_531;

/// Reduced mass of two particles (same unit as the inputs).
pub fn reduced_mass(m1: f64, m2: f64) -> f64 {
    m1 * m2 / (m1 + m2)
}
