//! Morse surrogate of the ²³Na⁸⁷Rb X¹Σ⁺ ground state and the spin–orbit
//! coupled A¹Σ⁺–b³Π₀⁺ complex.
//!
//! The curves are not the spectroscopic NaRb potentials; they are tuned so
//! that the observables used downstream (equilibrium separation, the
//! v = 0 rotational constants, the diabatic crossing radius and the
//! X(v=0, J=0) → (A–b)(v'=0, J'=1) transition energy) take the measured
//! values. The coupling ξ₀ and the transition dipole are free choices.

use crate::constants::{reduced_mass, DALTON_ME, MASS_NA23, MASS_RB87};
use crate::error::{Error, Result};
use crate::potentials::{
    calibrate_morse_with, rotational_constant_for, CoupledModel, Coupling, DipoleFunction, PotentialCurve,
};
use crate::radial::{solve_coupled, solve_single, DecayChannel, RadialGrid, RovibLevel};

pub(crate) const HARTREE_CM1: f64 = 219_474.631_363_2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurrogateParameters {
    /// Reduced mass (Da).
    pub reduced_mass_da: f64,
    /// Anharmonicity ω_e x_e / ω_e shared by the three Morse curves.
    pub anharmonicity: f64,
    pub x_r_e: f64,
    pub x_omega_e_cm1: f64,
    /// Equilibrium rotational constant of the b curve (cm⁻¹).
    pub b_b_e_cm1: f64,
    pub b_omega_e_cm1: f64,
    pub a_r_e: f64,
    pub a_omega_e_cm1: f64,
    /// Radius where the diabatic A and b curves cross (bohr).
    pub crossing_radius: f64,
    /// Constant spin–orbit coupling ξ₀ (cm⁻¹).
    pub xi_cm1: f64,
    /// Target E(A–b, v'=0, J'=1) − E(X, v=0, J=0) (cm⁻¹).
    pub transition_cm1: f64,
    /// Constant X–A electronic transition dipole (e·a₀).
    pub dipole_xa: f64,
}

impl Default for SurrogateParameters {
    fn default() -> Self {
        Self {
            reduced_mass_da: reduced_mass(MASS_NA23, MASS_RB87),
            anharmonicity: 0.0035,
            x_r_e: 6.885,
            x_omega_e_cm1: 106.85,
            b_b_e_cm1: 0.070_08,
            b_omega_e_cm1: 100.0,
            a_r_e: 8.0,
            a_omega_e_cm1: 73.0,
            crossing_radius: 7.5,
            xi_cm1: 20.0,
            transition_cm1: 11_306.4,
            dipole_xa: 3.5,
        }
    }
}

/// Surrogate curves with the A–b shift already aligned on a given grid.
#[derive(Debug, Clone)]
pub struct NarbSurrogate {
    pub params: SurrogateParameters,
    /// Reduced mass in electron masses.
    pub mu: f64,
    pub ground: PotentialCurve,
    pub excited: CoupledModel,
    pub dipole: DipoleFunction,
    pub grid: RadialGrid,
}

impl NarbSurrogate {
    /// Builds the curves and shifts the coupled pair so that the
    /// v'=0, J'=1 ← v=0, J=0 line sits at `params.transition_cm1` on `grid`.
    pub fn new(params: SurrogateParameters, grid: RadialGrid) -> Result<Self> {
        let (ground, excited) = unshifted_curves(&params)?;
        let dipole = DipoleFunction::constant("X", "A", params.dipole_xa);
        Self::from_curves(params, ground, excited, dipole, grid)
    }

    /// As [`NarbSurrogate::new`] with caller-supplied curves, e.g. ingested
    /// pointwise data. Only `reduced_mass_da` and `transition_cm1` are
    /// read from `params`.
    pub fn from_curves(
        params: SurrogateParameters,
        ground: PotentialCurve,
        excited: CoupledModel,
        dipole: DipoleFunction,
        grid: RadialGrid,
    ) -> Result<Self> {
        let mu = params.reduced_mass_da * DALTON_ME;
        let x0 = lowest(&solve_single(&ground, &grid, mu, 0)?, "X, J=0")?;
        let mut excited = excited;
        excited.shift = 0.0;
        let ab1 = lowest(&solve_coupled(&excited, &grid, mu, 1)?, "A–b, J'=1")?;
        excited.shift = params.transition_cm1 / HARTREE_CM1 - (ab1.energy - x0.energy);
        Ok(Self {
            params,
            mu,
            ground,
            excited,
            dipole,
            grid,
        })
    }

    pub fn with_defaults() -> Result<Self> {
        Self::new(SurrogateParameters::default(), RadialGrid::default())
    }

    pub fn ground_levels(&self, j: u32) -> Result<Vec<RovibLevel>> {
        solve_single(&self.ground, &self.grid, self.mu, j)
    }

    pub fn excited_levels(&self, jp: u32) -> Result<Vec<RovibLevel>> {
        solve_coupled(&self.excited, &self.grid, self.mu, jp)
    }

    /// Radiative decay of the bright channel back to the ground curve.
    pub fn decay_routes(&self) -> Vec<DecayChannel> {
        vec![DecayChannel {
            channel: 0,
            upper: self.excited.bright.shifted(self.excited.shift),
            lower: self.ground.clone(),
            dipole: self.dipole.clone(),
        }]
    }
}

fn lowest(levels: &[RovibLevel], what: &str) -> Result<RovibLevel> {
    levels
        .first()
        .cloned()
        .ok_or_else(|| Error::Calibration(format!("surrogate has no bound {what} level")))
}

/// X curve and the coupled pair before the transition-energy shift. The
/// b minimum sits at zero and the A curve is offset so the diabatic curves
/// cross at the requested radius.
pub fn unshifted_curves(p: &SurrogateParameters) -> Result<(PotentialCurve, CoupledModel)> {
    let x_b_e = rotational_constant_for(p.x_r_e, p.reduced_mass_da);
    let mut ground = calibrate_morse_with(x_b_e, p.x_omega_e_cm1, p.reduced_mass_da, 0.0, p.anharmonicity)?;
    ground.label = "X".into();

    let mut dark = calibrate_morse_with(p.b_b_e_cm1, p.b_omega_e_cm1, p.reduced_mass_da, 0.0, p.anharmonicity)?;
    dark = dark.shifted(-dark.minimum().1);
    dark.label = "b".into();

    let a_b_e = rotational_constant_for(p.a_r_e, p.reduced_mass_da);
    let mut bright = calibrate_morse_with(a_b_e, p.a_omega_e_cm1, p.reduced_mass_da, 0.0, p.anharmonicity)?;
    let offset = dark.eval(p.crossing_radius) - bright.eval(p.crossing_radius);
    bright = bright.shifted(offset);
    bright.label = "A".into();
    if bright.minimum().1 <= dark.minimum().1 {
        return Err(Error::Calibration(format!(
            "A minimum ({:.2} cm⁻¹) must lie above the b minimum for a crossing at {} bohr",
            bright.minimum().1 * HARTREE_CM1,
            p.crossing_radius
        )));
    }
    let model = CoupledModel::new(bright, dark, Coupling::Constant(p.xi_cm1 / HARTREE_CM1));
    Ok((ground, model))
}
