//! Physical quantities and multiplicative unit conversion.
//!
//! Every unit maps onto a canonical unit of its dimension by a single
//! multiplicative factor, so conversions are exact up to floating-point
//! rounding and round trips reproduce the input to ~1e-15 relative.
//! Spectroscopic energies are canonicalised as E/h in Hz, which keeps the
//! cm⁻¹ ↔ GHz factor exactly equal to the speed of light.

use std::fmt;
use std::str::FromStr;

use crate::constants::{
    BOHR_RADIUS, DALTON_ME, EA0_DEBYE, FIELD_AU_V_PER_M, HARTREE_HZ, POLARIZABILITY_AU_MHZ_PER_W_CM2, SPEED_OF_LIGHT,
    TIME_AU_S,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dimension {
    Energy,
    Polarizability,
    DipoleMoment,
    MagneticField,
    ElectricField,
    Intensity,
    Length,
    Angle,
    Mass,
    Rate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Unit {
    Hartree,
    InverseCm,
    GHz,
    MHz,
    Hz,
    /// Atomic unit of polarizability, e²a₀²/E_h.
    AtomicPolarizability,
    HzPerWCm2,
    MHzPerWCm2,
    Debye,
    /// Atomic unit of dipole moment, e·a₀.
    AtomicDipole,
    Gauss,
    Tesla,
    KVPerCm,
    VPerCm,
    AtomicField,
    WPerCm2,
    KWPerCm2,
    Bohr,
    Angstrom,
    Nanometer,
    Degree,
    Radian,
    Dalton,
    ElectronMass,
    /// Inverse atomic time unit, E_h/ħ.
    AtomicRate,
    PerSecond,
}

impl Unit {
    pub const ALL: [Unit; 26] = [
        Unit::Hartree,
        Unit::InverseCm,
        Unit::GHz,
        Unit::MHz,
        Unit::Hz,
        Unit::AtomicPolarizability,
        Unit::HzPerWCm2,
        Unit::MHzPerWCm2,
        Unit::Debye,
        Unit::AtomicDipole,
        Unit::Gauss,
        Unit::Tesla,
        Unit::KVPerCm,
        Unit::VPerCm,
        Unit::AtomicField,
        Unit::WPerCm2,
        Unit::KWPerCm2,
        Unit::Bohr,
        Unit::Angstrom,
        Unit::Nanometer,
        Unit::Degree,
        Unit::Radian,
        Unit::Dalton,
        Unit::ElectronMass,
        Unit::AtomicRate,
        Unit::PerSecond,
    ];

    pub fn dimension(self) -> Dimension {
        use Unit::*;
        match self {
            Hartree | InverseCm | GHz | MHz | Hz => Dimension::Energy,
            AtomicPolarizability | HzPerWCm2 | MHzPerWCm2 => Dimension::Polarizability,
            Debye | AtomicDipole => Dimension::DipoleMoment,
            Gauss | Tesla => Dimension::MagneticField,
            KVPerCm | VPerCm | AtomicField => Dimension::ElectricField,
            WPerCm2 | KWPerCm2 => Dimension::Intensity,
            Bohr | Angstrom | Nanometer => Dimension::Length,
            Degree | Radian => Dimension::Angle,
            Dalton | ElectronMass => Dimension::Mass,
            AtomicRate | PerSecond => Dimension::Rate,
        }
    }

    /// Size of one of this unit in the canonical unit of its dimension.
    fn factor(self) -> f64 {
        use Unit::*;
        match self {
            // canonical: E/h in Hz
            Hartree => HARTREE_HZ,
            InverseCm => SPEED_OF_LIGHT * 100.0,
            GHz => 1e9,
            MHz => 1e6,
            Hz => 1.0,
            // canonical: MHz/(W/cm²)
            AtomicPolarizability => POLARIZABILITY_AU_MHZ_PER_W_CM2,
            HzPerWCm2 => 1e-6,
            MHzPerWCm2 => 1.0,
            // canonical: debye
            Debye => 1.0,
            AtomicDipole => EA0_DEBYE,
            // canonical: gauss
            Gauss => 1.0,
            Tesla => 1e4,
            // canonical: kV/cm
            KVPerCm => 1.0,
            VPerCm => 1e-3,
            AtomicField => FIELD_AU_V_PER_M * 1e-5,
            // canonical: W/cm²
            WPerCm2 => 1.0,
            KWPerCm2 => 1e3,
            // canonical: bohr
            Bohr => 1.0,
            Angstrom => 1e-10 / BOHR_RADIUS,
            Nanometer => 1e-9 / BOHR_RADIUS,
            // canonical: radian
            Degree => std::f64::consts::PI / 180.0,
            Radian => 1.0,
            // canonical: electron mass
            Dalton => DALTON_ME,
            ElectronMass => 1.0,
            // canonical: s⁻¹
            AtomicRate => 1.0 / TIME_AU_S,
            PerSecond => 1.0,
        }
    }

    pub fn symbol(self) -> &'static str {
        use Unit::*;
        match self {
            Hartree => "hartree",
            InverseCm => "cm-1",
            GHz => "GHz",
            MHz => "MHz",
            Hz => "Hz",
            AtomicPolarizability => "au-pol",
            HzPerWCm2 => "Hz/(W/cm2)",
            MHzPerWCm2 => "MHz/(W/cm2)",
            Debye => "debye",
            AtomicDipole => "au-dipole",
            Gauss => "G",
            Tesla => "T",
            KVPerCm => "kV/cm",
            VPerCm => "V/cm",
            AtomicField => "au-field",
            WPerCm2 => "W/cm2",
            KWPerCm2 => "kW/cm2",
            Bohr => "bohr",
            Angstrom => "angstrom",
            Nanometer => "nm",
            Degree => "deg",
            Radian => "rad",
            Dalton => "Da",
            ElectronMass => "me",
            AtomicRate => "au-rate",
            PerSecond => "s-1",
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Unit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lowered = s.trim().to_ascii_lowercase();
        let unit = match lowered.as_str() {
            "hartree" | "eh" | "au-energy" => Unit::Hartree,
            "cm-1" | "cm^-1" | "1/cm" | "wavenumber" => Unit::InverseCm,
            "ghz" => Unit::GHz,
            "mhz" => Unit::MHz,
            "hz" => Unit::Hz,
            "au-pol" | "au-polarizability" => Unit::AtomicPolarizability,
            "hz/(w/cm2)" => Unit::HzPerWCm2,
            "mhz/(w/cm2)" => Unit::MHzPerWCm2,
            "debye" | "d" => Unit::Debye,
            "au-dipole" | "ea0" => Unit::AtomicDipole,
            "g" | "gauss" => Unit::Gauss,
            "t" | "tesla" => Unit::Tesla,
            "kv/cm" => Unit::KVPerCm,
            "v/cm" => Unit::VPerCm,
            "au-field" => Unit::AtomicField,
            "w/cm2" => Unit::WPerCm2,
            "kw/cm2" => Unit::KWPerCm2,
            "bohr" | "a0" => Unit::Bohr,
            "angstrom" | "a" | "ang" => Unit::Angstrom,
            "nm" => Unit::Nanometer,
            "deg" | "degree" | "degrees" => Unit::Degree,
            "rad" | "radian" | "radians" => Unit::Radian,
            "da" | "amu" | "u" => Unit::Dalton,
            "me" => Unit::ElectronMass,
            "au-rate" => Unit::AtomicRate,
            "s-1" | "1/s" => Unit::PerSecond,
            _ => return Err(Error::InvalidArgument(format!("unknown unit `{s}`"))),
        };
        Ok(unit)
    }
}

/// A value tagged with its unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantity {
    pub value: f64,
    pub unit: Unit,
}

impl Quantity {
    pub fn new(value: f64, unit: Unit) -> Self {
        Self { value, unit }
    }

    pub fn to(self, target: Unit) -> Result<Quantity> {
        convert(self, target)
    }

    /// Shorthand for converting and unwrapping the value.
    pub fn value_in(self, target: Unit) -> Result<f64> {
        convert(self, target).map(|q| q.value)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.value, self.unit)
    }
}

pub fn convert(q: Quantity, target: Unit) -> Result<Quantity> {
    if q.unit.dimension() != target.dimension() {
        return Err(Error::Unit {
            from: q.unit.to_string(),
            to: target.to_string(),
        });
    }
    if q.unit == target {
        return Ok(q);
    }
    Ok(Quantity::new(q.value * (q.unit.factor() / target.factor()), target))
}

/// Convenience for the common energy case.
pub fn energy(value: f64, from: Unit, to: Unit) -> f64 {
    debug_assert_eq!(from.dimension(), Dimension::Energy);
    debug_assert_eq!(to.dimension(), Dimension::Energy);
    value * (from.factor() / to.factor())
}

/// Vacuum wavelength of a photon of the given energy.
pub fn photon_wavelength(photon: Quantity) -> Result<Quantity> {
    let wavenumber = photon.value_in(Unit::InverseCm)?;
    if wavenumber <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "photon energy must be positive, got {photon}"
        )));
    }
    Ok(Quantity::new(1e7 / wavenumber, Unit::Nanometer))
}

/// Photon energy in Hartree for a vacuum wavelength.
pub fn photon_energy_from_wavelength(wavelength: Quantity) -> Result<f64> {
    let nm = wavelength.value_in(Unit::Nanometer)?;
    if nm <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "wavelength must be positive, got {wavelength}"
        )));
    }
    Ok(energy(1e7 / nm, Unit::InverseCm, Unit::Hartree))
}
