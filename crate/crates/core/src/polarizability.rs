//! Real and imaginary dynamic polarizabilities of ground-state rovibrational
//! levels near an excited-state vibrational line.
//!
//! All quantities are atomic units: energies in Hartree, rates in E_h/ħ,
//! dipoles in e·a₀ and polarizabilities in e²a₀²/E_h, with the light shift
//! U = −α I / (2ε₀c). In these units the resonant prefactor of the
//! two-level form is 3c³Γ/(4ω³), and a J = 0 → J' = 1 line with radial
//! transition moment d has Γ = 4ω³d²/(3c³).

use std::collections::BTreeMap;

use crate::angular::{angular_factors, resonance_offsets, AngularFactors};
use crate::constants::C_AU;
use crate::error::{Error, Result};
use crate::potentials::DipoleFunction;
use crate::radial::{linewidth, transition_dipole, DecayChannel, RovibLevel};
use crate::units::{energy, Unit};

/// Poles closer than this fraction of the local line spacing are refused.
pub const POLE_GUARD: f64 = 1e-6;

/// Detunings below this many hyperfine-scale units (10 MHz) are flagged.
const HYPERFINE_SCALE_HZ: f64 = 10e6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    pub v_prime: usize,
    /// ħω_{v'} = E(v', J'=1) − E(v=0, J=0), Hartree.
    pub hbar_omega: f64,
    /// Γ_{0,v'}, atomic units of rate.
    pub gamma: f64,
    /// Rotational constant of the upper level, Hartree.
    pub b_vprime: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Background {
    pub parallel: f64,
    pub perpendicular: f64,
}

impl Background {
    /// (A+B)(α∥ − α⊥) + α⊥.
    pub fn combine(&self, f: &AngularFactors) -> f64 {
        f.sum() * (self.parallel - self.perpendicular) + self.perpendicular
    }

    pub fn anisotropy(&self) -> f64 {
        self.parallel - self.perpendicular
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolarizabilitySpec {
    pub lines: Vec<Line>,
    /// Ground-level rotational constant B_v, Hartree.
    pub b_v: f64,
    pub background: Background,
}

impl PolarizabilitySpec {
    pub fn validate(&self) -> Result<()> {
        if self.lines.is_empty() {
            return Err(Error::InvalidArgument("polarizability spec has no lines".into()));
        }
        if !(self.b_v > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "B_v must be positive, got {}",
                self.b_v
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        for line in &self.lines {
            if !(line.gamma > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "line v'={} needs Γ > 0, got {}",
                    line.v_prime, line.gamma
                )));
            }
            if !(line.hbar_omega > 0.0 && line.b_vprime > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "line v'={} needs positive ħω and B_v'",
                    line.v_prime
                )));
            }
            if !seen.insert(line.v_prime) {
                return Err(Error::InvalidArgument(format!("duplicate line v'={}", line.v_prime)));
            }
        }
        Ok(())
    }

    /// Line whose ħω lies nearest the photon energy.
    pub fn nearest_line(&self, photon_energy: f64) -> Result<&Line> {
        self.lines
            .iter()
            .min_by(|a, b| {
                (photon_energy - a.hbar_omega)
                    .abs()
                    .total_cmp(&(photon_energy - b.hbar_omega).abs())
            })
            .ok_or_else(|| Error::InvalidArgument("polarizability spec has no lines".into()))
    }

    pub fn line(&self, v_prime: usize) -> Result<&Line> {
        self.lines
            .iter()
            .find(|l| l.v_prime == v_prime)
            .ok_or_else(|| Error::InvalidArgument(format!("no line with v'={v_prime}")))
    }

    /// A copy with every Γ multiplied by `factor`.
    pub fn with_gamma_scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        out.lines.iter_mut().for_each(|l| l.gamma *= factor);
        out
    }
}

/// Resonant prefactor 3c³Γ/(4ω³) of a line.
pub fn resonant_strength(line: &Line) -> f64 {
    3.0 * C_AU.powi(3) * line.gamma / (4.0 * line.hbar_omega.powi(3))
}

/// Γ of a J = 0 → J' = 1 line from its radial transition moment.
pub fn gamma_from_dipole(hbar_omega: f64, dipole: f64) -> f64 {
    4.0 * hbar_omega.powi(3) * dipole * dipole / (3.0 * C_AU.powi(3))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolarizabilityValue {
    pub real: f64,
    /// Never positive.
    pub imag: f64,
    pub j: u32,
    pub m: i32,
    /// Photon energy hν, Hartree.
    pub photon_energy: f64,
    pub theta_p: f64,
    /// Validity-window notes; the value is still returned.
    pub warnings: Vec<String>,
}

impl PolarizabilityValue {
    fn real(real: f64, j: u32, m: i32, photon_energy: f64, theta_p: f64) -> Self {
        Self {
            real,
            imag: 0.0,
            j,
            m,
            photon_energy,
            theta_p,
            warnings: Vec::new(),
        }
    }
}

fn hz_to_hartree(hz: f64) -> f64 {
    energy(hz, Unit::Hz, Unit::Hartree)
}

/// Real polarizability in the closed form near one vibrational line:
///
/// α = −(3c³Γ/4ω³)[A/(Δ + L_J) + B/(Δ + R_J)] + (A+B)(α∥ − α⊥) + α⊥
///
/// with Δ = hν − ħω for the line nearest the photon energy.
pub fn alpha_analytic(
    spec: &PolarizabilitySpec,
    photon_energy: f64,
    j: u32,
    m: i32,
    theta_p: f64,
) -> Result<PolarizabilityValue> {
    spec.validate()?;
    let line = spec.nearest_line(photon_energy)?;
    alpha_analytic_detuned(spec, line.v_prime, photon_energy - line.hbar_omega, j, m, theta_p)
}

/// [`alpha_analytic`] at detuning `delta` (Hartree) from line `v_prime`,
/// without forming the photon energy. Use this when Δ must keep its full
/// relative precision (root finding).
pub fn alpha_analytic_detuned(
    spec: &PolarizabilitySpec,
    v_prime: usize,
    delta: f64,
    j: u32,
    m: i32,
    theta_p: f64,
) -> Result<PolarizabilityValue> {
    spec.validate()?;
    let line = spec.line(v_prime)?;
    let f = angular_factors(j, m, theta_p)?;
    let offsets = resonance_offsets(j, spec.b_v, line.b_vprime)?;

    let guard = POLE_GUARD * (4.0 * f64::from(j) + 2.0) * line.b_vprime;
    for (weight, offset, branch) in [(f.a, offsets.l, "J-1"), (f.b, offsets.r, "J+1")] {
        if weight != 0.0 && (delta + offset).abs() < guard {
            return Err(Error::PoleProximity(format!(
                "Δ = {:.6e} Eh is within {guard:.1e} Eh of the v'={} {branch} pole of J={j}",
                delta, line.v_prime
            )));
        }
    }

    let strength = resonant_strength(line);
    let resonant = -strength * (f.a / (delta + offsets.l) + f.b / (delta + offsets.r));
    let photon_energy = line.hbar_omega + delta;
    let mut value = PolarizabilityValue::real(resonant + spec.background.combine(&f), j, m, photon_energy, theta_p);
    value.warnings = validity_warnings(spec, line, delta);
    Ok(value)
}

fn validity_warnings(spec: &PolarizabilitySpec, line: &Line, delta: f64) -> Vec<String> {
    let mut notes = Vec::new();
    let vib_spacing = spec
        .lines
        .iter()
        .filter(|l| l.v_prime != line.v_prime)
        .map(|l| (l.hbar_omega - line.hbar_omega).abs())
        .fold(f64::INFINITY, f64::min);
    if vib_spacing.is_finite() && delta.abs() > 0.1 * vib_spacing {
        notes.push(format!(
            "|Δ| = {:.3e} Eh is not small against the vibrational spacing {vib_spacing:.3e} Eh",
            delta.abs()
        ));
    }
    if delta.abs() < 10.0 * hz_to_hartree(HYPERFINE_SCALE_HZ) {
        notes.push(format!(
            "|Δ| = {:.3e} Eh is comparable to hyperfine splittings",
            delta.abs()
        ));
    }
    if delta.abs() < 10.0 * line.gamma {
        notes.push(format!(
            "|Δ| = {:.3e} Eh is comparable to ħΓ = {:.3e} Eh",
            delta.abs(),
            line.gamma
        ));
    }
    notes
}

/// Leading term of the large-|Δ| expansion of [`alpha_analytic`]:
///
/// α = (A+B)(−3c³Γ/(4ω³Δ) + α∥ − α⊥) + α⊥
pub fn alpha_fardetuned(
    spec: &PolarizabilitySpec,
    photon_energy: f64,
    j: u32,
    m: i32,
    theta_p: f64,
) -> Result<PolarizabilityValue> {
    spec.validate()?;
    let line = spec.nearest_line(photon_energy)?;
    let f = angular_factors(j, m, theta_p)?;
    let delta = photon_energy - line.hbar_omega;
    if delta == 0.0 {
        return Err(Error::PoleProximity(format!("Δ = 0 at the v'={} line", line.v_prime)));
    }
    let bracket = -resonant_strength(line) / delta + spec.background.anisotropy();
    Ok(PolarizabilityValue::real(
        f.sum() * bracket + spec.background.perpendicular,
        j,
        m,
        photon_energy,
        theta_p,
    ))
}

/// One X(v, J) → excited(v', J') transition entering a sum over states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transition {
    pub j_prime: u32,
    pub v_prime: usize,
    /// E_f − E_i, Hartree.
    pub energy: f64,
    /// Radial transition moment, e·a₀.
    pub dipole: f64,
    /// Natural width γ_f of the upper level, atomic units of rate.
    pub gamma: f64,
}

fn branch_weight(f: &AngularFactors, j: u32, j_prime: u32) -> f64 {
    if j_prime + 1 == j {
        f.a
    } else if j_prime == j + 1 {
        f.b
    } else {
        0.0
    }
}

/// Spacing used for pole guards: the smallest gap between distinct
/// resonance energies, or 1e-5 of the resonance energy for a lone line.
fn local_spacing(transitions: &[Transition], e: f64) -> f64 {
    let mut energies: Vec<f64> = transitions.iter().map(|t| t.energy).collect();
    energies.sort_by(f64::total_cmp);
    energies.dedup();
    let gap = energies.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    if gap.is_finite() {
        gap
    } else {
        1e-5 * e.abs()
    }
}

fn check_poles(transitions: &[Transition], photon_energy: f64, j: u32) -> Result<()> {
    for t in transitions {
        let spacing = local_spacing(transitions, t.energy);
        if (t.energy - photon_energy).abs() < POLE_GUARD * spacing {
            return Err(Error::PoleProximity(format!(
                "hν = {photon_energy:.9e} Eh is within {:.1e} Eh of the J={j} → v'={}, J'={} transition",
                POLE_GUARD * spacing,
                t.v_prime,
                t.j_prime
            )));
        }
    }
    Ok(())
}

/// Real polarizability as a second-order sum over the retained upper
/// levels, with rotating and counter-rotating denominators, plus the
/// background (A+B)(α∥ − α⊥) + α⊥.
pub fn alpha_sum_over_states(
    transitions: &[Transition],
    background: &Background,
    photon_energy: f64,
    j: u32,
    m: i32,
    theta_p: f64,
) -> Result<PolarizabilityValue> {
    let f = angular_factors(j, m, theta_p)?;
    check_poles(transitions, photon_energy, j)?;
    let mut resonant = 0.0;
    for t in transitions {
        let w = branch_weight(&f, j, t.j_prime);
        if w == 0.0 || t.dipole == 0.0 {
            continue;
        }
        resonant += w * t.dipole * t.dipole * (1.0 / (t.energy - photon_energy) + 1.0 / (t.energy + photon_energy));
    }
    Ok(PolarizabilityValue::real(
        resonant + background.combine(&f),
        j,
        m,
        photon_energy,
        theta_p,
    ))
}

/// Imaginary polarizability
///
/// Im α = −Σ_f γ_f F_f d_f² / |(E_f − E_i)² − (hν)²|
///
/// where F_f is A_{J,M} or B_{J,M} for J' = J ∓ 1. The absolute value
/// keeps Im α ≤ 0 on both sides of a resonance; below the lowest
/// resonance it is inert.
pub fn alpha_imag(
    transitions: &[Transition],
    photon_energy: f64,
    j: u32,
    m: i32,
    theta_p: f64,
) -> Result<PolarizabilityValue> {
    let f = angular_factors(j, m, theta_p)?;
    check_poles(transitions, photon_energy, j)?;
    let mut total = 0.0;
    for t in transitions {
        let w = branch_weight(&f, j, t.j_prime);
        if w == 0.0 {
            continue;
        }
        let denom = (t.energy * t.energy - photon_energy * photon_energy).abs();
        total -= t.gamma * w * t.dipole * t.dipole / denom;
    }
    let mut value = PolarizabilityValue::real(0.0, j, m, photon_energy, theta_p);
    value.imag = total;
    Ok(value)
}

/// How radial transition moments are assigned to rotational branches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DipoleResolution {
    /// ⟨v J | d | v' J'⟩ from the J- and J'-specific wavefunctions.
    Rotational,
    /// One moment per v', taken from the J = 0 → J' = 1 pair.
    Rotationless,
}

/// Ground levels and excited levels grouped by rotational quantum number.
#[derive(Debug, Clone, Default)]
pub struct LevelSet {
    pub ground: BTreeMap<u32, Vec<RovibLevel>>,
    pub excited: BTreeMap<u32, Vec<RovibLevel>>,
}

impl LevelSet {
    fn ground_level(&self, j: u32, v: usize) -> Result<&RovibLevel> {
        self.ground
            .get(&j)
            .and_then(|ls| ls.get(v))
            .ok_or_else(|| Error::InvalidArgument(format!("ground level v={v}, J={j} not supplied")))
    }

    fn excited_level(&self, j: u32, v: usize) -> Result<&RovibLevel> {
        self.excited
            .get(&j)
            .and_then(|ls| ls.get(v))
            .ok_or_else(|| Error::InvalidArgument(format!("excited level v'={v}, J'={j} not supplied")))
    }

    /// B_v from (E_{v,1} − E_{v,0})/2.
    pub fn ground_rotational_constant(&self, v: usize) -> Result<f64> {
        Ok(0.5 * (self.ground_level(1, v)?.energy - self.ground_level(0, v)?.energy))
    }

    /// B_{v'} from (E_{v',2} − E_{v',0})/6.
    pub fn excited_rotational_constant(&self, v_prime: usize) -> Result<f64> {
        Ok((self.excited_level(2, v_prime)?.energy - self.excited_level(0, v_prime)?.energy) / 6.0)
    }

    /// Transitions out of ground level (v, J) into the first `retained`
    /// excited levels of J' = J ± 1. Moments couple the single ground
    /// channel to excited channel `bright`.
    #[allow(clippy::too_many_arguments)]
    pub fn transitions(
        &self,
        v: usize,
        j: u32,
        retained: usize,
        dipole: &DipoleFunction,
        bright: usize,
        resolution: DipoleResolution,
        widths: Option<&[DecayChannel]>,
    ) -> Result<Vec<Transition>> {
        let initial = self.ground_level(j, v)?;
        let mut out = Vec::new();
        let branches: Vec<u32> = if j == 0 { vec![1] } else { vec![j - 1, j + 1] };
        for jp in branches {
            for vp in 0..retained {
                let upper = self.excited_level(jp, vp)?;
                let d = match resolution {
                    DipoleResolution::Rotational => transition_dipole(initial, dipole, upper, bright)?,
                    DipoleResolution::Rotationless => {
                        transition_dipole(self.ground_level(0, v)?, dipole, self.excited_level(1, vp)?, bright)?
                    }
                };
                let gamma = match widths {
                    Some(routes) => linewidth(upper, routes)?.gamma,
                    None => 0.0,
                };
                out.push(Transition {
                    j_prime: jp,
                    v_prime: vp,
                    energy: upper.energy - initial.energy,
                    dipole: d,
                    gamma,
                });
            }
        }
        Ok(out)
    }

    /// Closed-form spec for ground level v = 0 with lines for the given v'.
    ///
    /// ħω and Γ come from the J = 0 → J' = 1 pair, B constants from level
    /// spacings. With `fold_counter_rotating`, each line's counter-rotating
    /// contribution d²/(2ħω) is added to α∥, where it enters with the
    /// same (A+B) weight as in the sum over states.
    pub fn spec(
        &self,
        lines: &[usize],
        dipole: &DipoleFunction,
        bright: usize,
        background: Background,
        fold_counter_rotating: bool,
    ) -> Result<PolarizabilitySpec> {
        let x00 = self.ground_level(0, 0)?;
        let mut out = Vec::new();
        let mut parallel = background.parallel;
        for &vp in lines {
            let upper = self.excited_level(1, vp)?;
            let hbar_omega = upper.energy - x00.energy;
            let d = transition_dipole(x00, dipole, upper, bright)?;
            if fold_counter_rotating {
                parallel += d * d / (2.0 * hbar_omega);
            }
            out.push(Line {
                v_prime: vp,
                hbar_omega,
                gamma: gamma_from_dipole(hbar_omega, d),
                b_vprime: self.excited_rotational_constant(vp)?,
            });
        }
        let spec = PolarizabilitySpec {
            lines: out,
            b_v: self.ground_rotational_constant(0)?,
            background: Background {
                parallel,
                perpendicular: background.perpendicular,
            },
        };
        spec.validate()?;
        Ok(spec)
    }
}
