//! Magic conditions: detunings where two rotational levels share a light
//! shift, polarization angles where two hyperfine states do, and the
//! one-parameter Γ calibration against a known crossing.
//!
//! Detunings are in GHz from the lowest-v' line of the spec, angles in
//! degrees.

use faer::c64;

use crate::angular::{angular_factors, resonance_offsets};
use crate::error::{Error, Result};
use crate::hyperfine::{
    build_hamiltonian, diagonalize, eigenstate_polarizability, polarizability_operator, polarization_at,
    FieldConfiguration, HyperfineBasis, Terms,
};
use crate::polarizability::{alpha_analytic_detuned, Line, PolarizabilitySpec};
use crate::roots::{brent_checked, sign_change_brackets};
use crate::units::{energy, Unit};

/// Coarse scan size for bracket discovery.
pub const DEFAULT_SCAN_POINTS: usize = 512;
/// |Δα| target for detuning roots (atomic units).
pub const DETUNING_RESIDUAL_AU: f64 = 1e-10;
/// Bracket width target for detuning roots (GHz), i.e. 1 MHz.
pub const DETUNING_BRACKET_GHZ: f64 = 1e-3;
/// Angle roots are located to this many degrees.
pub const ANGLE_TOLERANCE_DEG: f64 = 1e-4;
/// Largest step of the state-tracking scan in angle searches (degrees).
pub const TRACKING_STEP_DEG: f64 = 0.5;

const MAX_ITER: usize = 200;

fn ghz() -> f64 {
    energy(1.0, Unit::GHz, Unit::Hartree)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MagicKind {
    Detuning,
    Angle,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MagicSolution {
    pub kind: MagicKind,
    /// Δ/h in GHz or θ in degrees.
    pub location: f64,
    pub state_a: String,
    pub state_b: String,
    /// Differential polarizability re-evaluated at `location`: atomic
    /// units for detunings, Hz/(W/cm²) for angles.
    pub residual: f64,
    /// Bracket the solver was given.
    pub bracket: (f64, f64),
    /// Final bracket around the root.
    pub final_bracket: (f64, f64),
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RotorState {
    pub j: u32,
    pub m: i32,
}

impl RotorState {
    pub fn new(j: u32, m: i32) -> Self {
        Self { j, m }
    }

    fn label(&self) -> String {
        format!("J={},M={}", self.j, self.m)
    }
}

/// The line detunings are measured from.
pub fn reference_line(spec: &PolarizabilitySpec) -> Result<&Line> {
    spec.lines
        .iter()
        .min_by_key(|l| l.v_prime)
        .ok_or_else(|| Error::InvalidArgument("polarizability spec has no lines".into()))
}

/// Closed-form real polarizability (a.u.) at Δ/h = `delta_ghz`.
pub fn alpha_at(spec: &PolarizabilitySpec, state: RotorState, theta_p: f64, delta_ghz: f64) -> Result<f64> {
    let reference = reference_line(spec)?;
    let delta = delta_ghz * ghz();
    let photon = |l: &Line| (delta + reference.hbar_omega - l.hbar_omega).abs();
    let line = spec
        .lines
        .iter()
        .min_by(|a, b| photon(a).total_cmp(&photon(b)))
        .ok_or_else(|| Error::InvalidArgument("polarizability spec has no lines".into()))?;
    let local = if line.v_prime == reference.v_prime {
        delta
    } else {
        delta + (reference.hbar_omega - line.hbar_omega)
    };
    Ok(alpha_analytic_detuned(spec, line.v_prime, local, state.j, state.m, theta_p)?.real)
}

/// α_a − α_b at Δ/h = `delta_ghz` (a.u.).
pub fn differential_alpha(
    spec: &PolarizabilitySpec,
    a: RotorState,
    b: RotorState,
    theta_p: f64,
    delta_ghz: f64,
) -> Result<f64> {
    if a == b {
        alpha_at(spec, a, theta_p, delta_ghz)?;
        return Ok(0.0);
    }
    Ok(alpha_at(spec, a, theta_p, delta_ghz)? - alpha_at(spec, b, theta_p, delta_ghz)?)
}

/// Detunings (GHz) of the poles of α for one state: −L_J and −R_J of
/// every line, skipping branches with zero angular weight.
pub fn pole_detunings(spec: &PolarizabilitySpec, state: RotorState, theta_p: f64) -> Result<Vec<f64>> {
    let reference = reference_line(spec)?;
    let f = angular_factors(state.j, state.m, theta_p)?;
    let mut out = Vec::new();
    for line in &spec.lines {
        let o = resonance_offsets(state.j, spec.b_v, line.b_vprime)?;
        let shift = line.hbar_omega - reference.hbar_omega;
        for (weight, offset) in [(f.a, o.l), (f.b, o.r)] {
            if weight != 0.0 {
                out.push((shift - offset) / ghz());
            }
        }
    }
    out.sort_by(f64::total_cmp);
    out.dedup();
    Ok(out)
}

fn poles_between(spec: &PolarizabilitySpec, states: &[RotorState], theta_p: f64, lo: f64, hi: f64) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for s in states {
        out.extend(
            pole_detunings(spec, *s, theta_p)?
                .into_iter()
                .filter(|p| *p >= lo && *p <= hi),
        );
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}

/// Brent root of α_{J_a,M} − α_{J_b,M} inside `bracket` (GHz).
pub fn find_magic_detuning(
    spec: &PolarizabilitySpec,
    j_a: u32,
    j_b: u32,
    m: i32,
    theta_p: f64,
    bracket: (f64, f64),
) -> Result<MagicSolution> {
    let (a, b) = (RotorState::new(j_a, m), RotorState::new(j_b, m));
    let (lo, hi) = (bracket.0.min(bracket.1), bracket.0.max(bracket.1));
    let poles = poles_between(spec, &[a, b], theta_p, lo, hi)?;
    if let Some(p) = poles.first() {
        return Err(Error::PoleProximity(format!(
            "bracket [{lo}, {hi}] GHz contains a pole at {p:.6} GHz"
        )));
    }
    let f = |x: f64| differential_alpha(spec, a, b, theta_p, x);
    let fa = f(lo)?;
    let fb = f(hi)?;
    if fa.signum() == fb.signum() && fa != 0.0 && fb != 0.0 {
        return Err(Error::NoRoot(format!(
            "α({}) − α({}) does not change sign on [{lo}, {hi}] GHz: {fa:e} and {fb:e} au",
            a.label(),
            b.label()
        )));
    }
    let root = brent_checked(f, lo, hi, 0.0, MAX_ITER)?;
    let residual = f(root.x)?;
    if root.bracket.1 - root.bracket.0 > DETUNING_BRACKET_GHZ {
        return Err(Error::Numerical(format!(
            "detuning bracket did not shrink below 1 MHz: [{}, {}]",
            root.bracket.0, root.bracket.1
        )));
    }
    Ok(MagicSolution {
        kind: MagicKind::Detuning,
        location: root.x,
        state_a: a.label(),
        state_b: b.label(),
        residual,
        bracket: (lo, hi),
        final_bracket: root.bracket,
        iterations: root.iterations,
    })
}

/// All crossings of α_{J_a,M} and α_{J_b,M} in `range` (GHz), bracketed by
/// a `points`-sample scan. Sign changes across poles are discarded.
pub fn magic_detunings(
    spec: &PolarizabilitySpec,
    j_a: u32,
    j_b: u32,
    m: i32,
    theta_p: f64,
    range: (f64, f64),
    points: usize,
) -> Result<Vec<MagicSolution>> {
    let (a, b) = (RotorState::new(j_a, m), RotorState::new(j_b, m));
    let brackets = sign_change_brackets(|x| differential_alpha(spec, a, b, theta_p, x), range.0, range.1, points);
    let mut out = Vec::new();
    for (lo, hi) in brackets {
        if !poles_between(spec, &[a, b], theta_p, lo, hi)?.is_empty() {
            continue;
        }
        out.push(find_magic_detuning(spec, j_a, j_b, m, theta_p, (lo, hi))?);
    }
    Ok(out)
}

/// Poles of α for one state found numerically on a `points`-sample scan
/// of `range` (GHz). A sign change is a pole if |α| grows while the
/// bracket is bisected; a sample refused by the pole guard is a pole.
pub fn scan_poles(
    spec: &PolarizabilitySpec,
    state: RotorState,
    theta_p: f64,
    range: (f64, f64),
    points: usize,
) -> Result<Vec<f64>> {
    let points = points.max(2);
    let step = (range.1 - range.0) / (points - 1) as f64;
    let f = |x: f64| alpha_at(spec, state, theta_p, x);
    let mut poles = Vec::new();
    let mut previous: Option<(f64, f64)> = None;
    for k in 0..points {
        let x = range.0 + step * k as f64;
        let value = match f(x) {
            Ok(v) => v,
            Err(Error::PoleProximity(_)) => {
                poles.push(x);
                previous = None;
                continue;
            }
            Err(e) => return Err(e),
        };
        if let Some((x0, f0)) = previous {
            if f0.signum() != value.signum() {
                if let Some(p) = classify_sign_change(&f, x0, f0, x, value)? {
                    poles.push(p);
                }
            }
        }
        previous = Some((x, value));
    }
    Ok(poles)
}

fn classify_sign_change<F: Fn(f64) -> Result<f64>>(
    f: &F,
    mut lo: f64,
    f_lo: f64,
    mut hi: f64,
    f_hi: f64,
) -> Result<Option<f64>> {
    let start = f_lo.abs().max(f_hi.abs());
    let mut s_lo = f_lo.signum();
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = match f(mid) {
            Ok(v) => v,
            Err(Error::PoleProximity(_)) => return Ok(Some(mid)),
            Err(e) => return Err(e),
        };
        if v.signum() == s_lo {
            lo = mid;
            s_lo = v.signum();
        } else {
            hi = mid;
        }
    }
    let end = f(lo)
        .map(f64::abs)
        .unwrap_or(f64::INFINITY)
        .min(f(hi).map(f64::abs).unwrap_or(f64::INFINITY));
    Ok((end > 10.0 * start).then_some(0.5 * (lo + hi)))
}

/// Γ of line `v_prime` such that α_{J_a,M} = α_{J_b,M} at `target_ghz`.
///
/// The differential polarizability is affine in Γ, so two evaluations
/// fix it; the result is then re-solved as a check.
#[allow(clippy::too_many_arguments)]
pub fn calibrate_gamma(
    template: &PolarizabilitySpec,
    v_prime: usize,
    j_a: u32,
    j_b: u32,
    m: i32,
    theta_p: f64,
    target_ghz: f64,
) -> Result<PolarizabilitySpec> {
    if template.background.anisotropy() == 0.0 {
        return Err(Error::Unsolvable(
            "background anisotropy α∥ − α⊥ is zero; no Γ moves the crossing".into(),
        ));
    }
    let mut spec = template.clone();
    let index = spec
        .lines
        .iter()
        .position(|l| l.v_prime == v_prime)
        .ok_or_else(|| Error::InvalidArgument(format!("no line with v'={v_prime}")))?;
    let probe = if spec.lines[index].gamma > 0.0 {
        spec.lines[index].gamma
    } else {
        1e-12
    };
    let (a, b) = (RotorState::new(j_a, m), RotorState::new(j_b, m));
    let mut at_gamma = |g: f64| -> Result<f64> {
        spec.lines[index].gamma = g;
        differential_alpha(&spec, a, b, theta_p, target_ghz)
    };
    let f1 = at_gamma(probe)?;
    let f2 = at_gamma(2.0 * probe)?;
    let slope = (f2 - f1) / probe;
    let gamma = -(f1 - slope * probe) / slope;
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(Error::Unsolvable(format!(
            "no positive Γ puts the J={j_a}/J={j_b} crossing at {target_ghz} GHz (solution {gamma:e})"
        )));
    }
    spec.lines[index].gamma = gamma;

    let poles = [pole_detunings(&spec, a, theta_p)?, pole_detunings(&spec, b, theta_p)?].concat();
    let clearance = poles
        .iter()
        .map(|p| (p - target_ghz).abs())
        .fold(f64::INFINITY, f64::min);
    let half = (0.5 * clearance).min(5.0);
    let root = find_magic_detuning(&spec, j_a, j_b, m, theta_p, (target_ghz - half, target_ghz + half))?;
    if (root.location - target_ghz).abs() > DETUNING_BRACKET_GHZ {
        return Err(Error::Calibration(format!(
            "calibrated crossing at {} GHz misses the target {target_ghz} GHz",
            root.location
        )));
    }
    Ok(spec)
}

/// Which state's polarizability an angle search follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateSelector {
    /// Expectation value in the bare rotor state |J M⟩ (nuclear spins
    /// are spectators of the light shift).
    Pure { j: u32, m: i32 },
    /// Eigenstate of the full Hamiltonian with this energy rank at the
    /// lower end of the bracket, followed by maximal overlap.
    Dressed { index: usize },
}

impl StateSelector {
    fn label(&self) -> String {
        match self {
            StateSelector::Pure { j, m } => format!("J={j},M={m}"),
            StateSelector::Dressed { index } => format!("eigenstate {index}"),
        }
    }
}

/// Hyperfine model an angle search runs on; the polarization direction
/// of `fields` is replaced by the scanned angle in the xz-plane.
#[derive(Debug, Clone)]
pub struct AngleProblem<'a> {
    pub basis: &'a HyperfineBasis,
    pub fields: FieldConfiguration,
    pub terms: Terms,
}

struct Tracked {
    vector: Vec<c64>,
}

impl AngleProblem<'_> {
    fn at(&self, theta_deg: f64) -> FieldConfiguration {
        let mut f = self.fields;
        f.polarization = polarization_at(theta_deg.to_radians());
        f
    }

    fn pure_alpha(&self, theta_deg: f64, j: u32, m: i32) -> Result<f64> {
        let k = *self
            .basis
            .indices_of(j, m)
            .first()
            .ok_or_else(|| Error::InvalidArgument(format!("(J={j}, M={m}) is not in the basis")))?;
        let op = polarizability_operator(self.basis, &self.at(theta_deg))?;
        Ok(op[(k, k)].re)
    }

    /// α of each dressed selector at `theta_deg`, following `reference`
    /// vectors when given, otherwise by energy rank.
    fn dressed(
        &self,
        theta_deg: f64,
        selectors: &[StateSelector],
        reference: &[Option<Tracked>],
    ) -> Result<(Vec<Option<f64>>, Vec<Option<Tracked>>)> {
        if selectors.iter().all(|s| matches!(s, StateSelector::Pure { .. })) {
            return Ok((vec![None; selectors.len()], selectors.iter().map(|_| None).collect()));
        }
        let fields = self.at(theta_deg);
        let sol = diagonalize(&build_hamiltonian(self.basis, &fields, self.terms)?)?;
        let alphas = eigenstate_polarizability(&sol, &fields)?;
        let n = sol.dim();
        let mut values = Vec::new();
        let mut tracked = Vec::new();
        for (s, r) in selectors.iter().zip(reference) {
            match s {
                StateSelector::Pure { .. } => {
                    values.push(None);
                    tracked.push(None);
                }
                StateSelector::Dressed { index } => {
                    let k = match r {
                        None => {
                            if *index >= n {
                                return Err(Error::InvalidArgument(format!(
                                    "eigenstate {index} does not exist in a basis of {n}"
                                )));
                            }
                            *index
                        }
                        Some(t) => (0..n)
                            .map(|k| {
                                let mut s = c64::new(0.0, 0.0);
                                for i in 0..n {
                                    s += t.vector[i].conj() * sol.eigenvectors[(i, k)];
                                }
                                (s.norm(), k)
                            })
                            .max_by(|x, y| x.0.total_cmp(&y.0).then(y.1.cmp(&x.1)))
                            .map(|(_, k)| k)
                            .unwrap_or(0),
                    };
                    values.push(Some(alphas[k]));
                    tracked.push(Some(Tracked {
                        vector: (0..n).map(|i| sol.eigenvectors[(i, k)]).collect(),
                    }));
                }
            }
        }
        Ok((values, tracked))
    }

    fn alphas(
        &self,
        theta_deg: f64,
        selectors: &[StateSelector; 2],
        reference: &[Option<Tracked>],
    ) -> Result<([f64; 2], Vec<Option<Tracked>>)> {
        let (dressed, tracked) = self.dressed(theta_deg, selectors, reference)?;
        let mut out = [0.0; 2];
        for (slot, s) in selectors.iter().enumerate() {
            out[slot] = match (s, dressed[slot]) {
                (StateSelector::Pure { j, m }, _) => self.pure_alpha(theta_deg, *j, *m)?,
                (_, Some(v)) => v,
                _ => unreachable!(),
            };
        }
        Ok((out, tracked))
    }

    /// α_a − α_b at `theta_deg` in Hz/(W/cm²). Dressed selectors are taken
    /// by energy rank at this angle.
    pub fn differential_alpha(&self, a: StateSelector, b: StateSelector, theta_deg: f64) -> Result<f64> {
        let ([x, y], _) = self.alphas(theta_deg, &[a, b], &[None, None])?;
        Ok(x - y)
    }
}

/// Polarization angle (degrees) inside `bracket` where the two selected
/// states have equal polarizability.
pub fn find_magic_angle(
    problem: &AngleProblem<'_>,
    a: StateSelector,
    b: StateSelector,
    bracket: (f64, f64),
) -> Result<MagicSolution> {
    let (lo, hi) = (bracket.0.min(bracket.1), bracket.0.max(bracket.1));
    let selectors = [a, b];
    let steps = (((hi - lo) / TRACKING_STEP_DEG).ceil() as usize).max(1);
    let mut samples: Vec<(f64, f64, Vec<Option<Tracked>>)> = Vec::with_capacity(steps + 1);
    let mut reference: Vec<Option<Tracked>> = vec![None, None];
    for k in 0..=steps {
        let theta = if k == steps {
            hi
        } else {
            lo + (hi - lo) * k as f64 / steps as f64
        };
        let ([x, y], tracked) = problem.alphas(theta, &selectors, &reference)?;
        reference = tracked
            .iter()
            .map(|t| {
                t.as_ref().map(|t| Tracked {
                    vector: t.vector.clone(),
                })
            })
            .collect();
        samples.push((theta, x - y, tracked));
    }
    let (f_lo, f_hi) = (samples[0].1, samples[steps].1);
    if f_lo.signum() == f_hi.signum() && f_lo != 0.0 && f_hi != 0.0 {
        return Err(Error::NoRoot(format!(
            "α({}) − α({}) does not change sign on [{lo}°, {hi}°]: {f_lo:e} and {f_hi:e} Hz/(W/cm²)",
            a.label(),
            b.label()
        )));
    }
    let k = (0..steps)
        .find(|&k| samples[k].1 == 0.0 || samples[k].1.signum() != samples[k + 1].1.signum())
        .unwrap_or(0);
    let (t0, _, ref anchor) = samples[k];
    let t1 = samples[k + 1].0;
    let objective = |theta: f64| -> Result<f64> {
        let anchor: Vec<Option<Tracked>> = anchor
            .iter()
            .map(|t| {
                t.as_ref().map(|t| Tracked {
                    vector: t.vector.clone(),
                })
            })
            .collect();
        let ([x, y], _) = problem.alphas(theta, &selectors, &anchor)?;
        Ok(x - y)
    };
    let root = brent_checked(objective, t0, t1, 0.1 * ANGLE_TOLERANCE_DEG, MAX_ITER)?;
    let residual = objective(root.x)?;
    Ok(MagicSolution {
        kind: MagicKind::Angle,
        location: root.x,
        state_a: a.label(),
        state_b: b.label(),
        residual,
        bracket: (lo, hi),
        final_bracket: root.bracket,
        iterations: root.iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angular::HalfInt;
    use crate::hyperfine::{build_basis, MolecularConstants};
    use crate::polarizability::Background;
    use proptest::prelude::*;

    const HARTREE_CM1: f64 = 219_474.631_363_2;

    fn template() -> PolarizabilitySpec {
        PolarizabilitySpec {
            lines: vec![Line {
                v_prime: 0,
                hbar_omega: 11_306.4 / HARTREE_CM1,
                gamma: 1e-12,
                b_vprime: 0.069_88 / HARTREE_CM1,
            }],
            b_v: 0.069_70 / HARTREE_CM1,
            background: Background {
                parallel: 2000.0,
                perpendicular: 600.0,
            },
        }
    }

    fn calibrated() -> PolarizabilitySpec {
        calibrate_gamma(&template(), 0, 0, 1, 0, 0.0, 103.0).unwrap()
    }

    #[test]
    fn same_state_difference_is_zero() {
        let s = template();
        for d in [-30.0, 12.0, 140.0] {
            assert_eq!(
                differential_alpha(&s, RotorState::new(2, 1), RotorState::new(2, 1), 0.3, d).unwrap(),
                0.0
            );
        }
    }

    #[test]
    fn backgrounds_only_at_magic_angle() {
        // A vanishing Γ leaves only (A+B)(α∥ − α⊥) + α⊥.
        let mut s = template();
        s.lines[0].gamma = 1e-300;
        let theta = (1.0 / 3f64.sqrt()).acos();
        let d = differential_alpha(&s, RotorState::new(0, 0), RotorState::new(1, 0), theta, 60.0).unwrap();
        assert!(d.abs() < 1e-12);
    }

    #[test]
    fn sign_changes_across_the_l1_pole() {
        let s = calibrated();
        let pole = -resonance_offsets(1, s.b_v, s.lines[0].b_vprime).unwrap().l / ghz();
        let f = |d: f64| differential_alpha(&s, RotorState::new(0, 0), RotorState::new(1, 0), 0.0, d).unwrap();
        assert!(f(pole - 1e-3).signum() != f(pole + 1e-3).signum());
    }

    #[test]
    fn calibration_round_trip() {
        let s = calibrated();
        let root = find_magic_detuning(&s, 0, 1, 0, 0.0, (95.0, 110.0)).unwrap();
        assert!((root.location - 103.0).abs() < 1e-3);
        assert!(root.residual.abs() < DETUNING_RESIDUAL_AU);
        assert!(root.final_bracket.1 - root.final_bracket.0 < DETUNING_BRACKET_GHZ);
        assert!(root.location > root.bracket.0 && root.location < root.bracket.1);
    }

    /// Differential polarizability with an explicit two-branch formula,
    /// independent of the library evaluators.
    fn oracle_difference(s: &PolarizabilitySpec, j: u32, d_ghz: f64) -> f64 {
        let line = s.lines[0];
        let k = 3.0 * 137.035_999_084f64.powi(3) * line.gamma / (4.0 * line.hbar_omega.powi(3));
        let delta = d_ghz * 1.519_829_846e-7;
        let bg = s.background;
        let jf = f64::from(j);
        // θ = 0, M = 0 factors.
        let a = if j == 0 {
            0.0
        } else {
            (jf * (jf + 1.0) + (jf - 1.0) * jf) / (2.0 * (2.0 * jf + 1.0) * (2.0 * jf - 1.0))
        };
        let b = (jf * (jf + 1.0) + (jf + 1.0) * (jf + 2.0)) / (2.0 * (2.0 * jf + 1.0) * (2.0 * jf + 3.0));
        let l = jf * (jf + 1.0) * s.b_v - (jf * (jf - 1.0) - 2.0) * line.b_vprime;
        let r = jf * (jf + 1.0) * s.b_v - ((jf + 1.0) * (jf + 2.0) - 2.0) * line.b_vprime;
        let alpha_j =
            -k * (a / (delta + l) + b / (delta + r)) + (a + b) * (bg.parallel - bg.perpendicular) + bg.perpendicular;
        let alpha_0 = -k * (1.0 / 3.0) / delta + (bg.parallel + 2.0 * bg.perpendicular) / 3.0;
        alpha_0 - alpha_j
    }

    #[test]
    fn detuning_ladder_matches_independent_oracle() {
        let s = calibrated();
        let mut previous = 103.0;
        for j in 2..=5 {
            let roots = magic_detunings(&s, 0, j, 0, 0.0, (60.0, 200.0), DEFAULT_SCAN_POINTS).unwrap();
            assert_eq!(roots.len(), 1, "J={j}: {roots:?}");
            let x = roots[0].location;
            let d = oracle_difference(&s, j, x);
            // The oracle rounds c and the GHz conversion to ~10 digits.
            assert!(d.abs() < 1e-6, "J={j} {x} {d}");
            assert!(x > previous);
            previous = x;
        }
    }

    #[test]
    fn pole_inside_bracket_is_refused() {
        let s = calibrated();
        assert!(matches!(
            find_magic_detuning(&s, 0, 1, 0, 0.0, (-20.0, 50.0)),
            Err(Error::PoleProximity(_))
        ));
    }

    #[test]
    fn missing_sign_change_reports_endpoints() {
        let s = calibrated();
        match find_magic_detuning(&s, 0, 1, 0, 0.0, (120.0, 150.0)) {
            Err(Error::NoRoot(msg)) => assert!(msg.contains("120") && msg.contains("150")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn doubling_anisotropy_doubles_gamma() {
        let base = calibrated();
        let mut t = template();
        t.background.parallel = 600.0 + 2.0 * 1400.0;
        let doubled = calibrate_gamma(&t, 0, 0, 1, 0, 0.0, 103.0).unwrap();
        let ratio = doubled.lines[0].gamma / base.lines[0].gamma;
        assert!((ratio - 2.0).abs() < 1e-9, "ratio {ratio}");
    }

    #[test]
    fn zero_anisotropy_is_unsolvable() {
        let mut t = template();
        t.background.parallel = t.background.perpendicular;
        assert!(matches!(
            calibrate_gamma(&t, 0, 0, 1, 0, 0.0, 103.0),
            Err(Error::Unsolvable(_))
        ));
    }

    #[test]
    fn calibrated_crossing_survives_perpendicular_polarization() {
        let s = calibrated();
        let at_90 = magic_detunings(
            &s,
            0,
            1,
            0,
            std::f64::consts::FRAC_PI_2,
            (60.0, 200.0),
            DEFAULT_SCAN_POINTS,
        )
        .unwrap();
        assert_eq!(at_90.len(), 1);
        assert!((at_90[0].location - 103.0).abs() < 3.0, "{}", at_90[0].location);
    }

    #[test]
    fn crossing_grows_with_gamma() {
        let s = calibrated();
        let mut previous = 0.0;
        for f in [0.8, 0.9, 1.0, 1.1, 1.2] {
            let root = magic_detunings(
                &s.with_gamma_scaled(f),
                0,
                1,
                0,
                0.0,
                (40.0, 200.0),
                DEFAULT_SCAN_POINTS,
            )
            .unwrap();
            assert_eq!(root.len(), 1);
            assert!(root[0].location > previous);
            previous = root[0].location;
        }
    }

    #[test]
    fn scanned_poles_match_offsets() {
        let s = calibrated();
        let poles = scan_poles(&s, RotorState::new(1, 0), 0.0, (-50.0, 150.0), 2001).unwrap();
        let exact = pole_detunings(&s, RotorState::new(1, 0), 0.0).unwrap();
        assert_eq!(poles.len(), 2);
        for (p, e) in poles.iter().zip(&exact) {
            assert!((p - e).abs() < 0.1);
        }
        let poles = scan_poles(&s, RotorState::new(0, 0), 0.0, (-50.0, 150.0), 2001).unwrap();
        assert_eq!(poles.len(), 1);
        assert!(poles[0].abs() < 0.1 + 2.0 * s.lines[0].b_vprime / ghz());
    }

    fn hyperfine_fields() -> FieldConfiguration {
        FieldConfiguration {
            b_field_gauss: 335.6,
            ..FieldConfiguration::new(MolecularConstants {
                g_factors: Some([1.478, 1.834]),
                dipole_debye: Some(3.2),
                ..MolecularConstants::narb()
            })
        }
    }

    fn spin() -> HalfInt {
        HalfInt::from_doubled(3)
    }

    #[test]
    fn pure_magic_angle() {
        let basis = build_basis(1, spin(), spin()).unwrap();
        let problem = AngleProblem {
            basis: &basis,
            fields: hyperfine_fields(),
            terms: Terms {
                quadrupole: false,
                stark: false,
                ..Terms::ALL
            },
        };
        let root = find_magic_angle(
            &problem,
            StateSelector::Pure { j: 0, m: 0 },
            StateSelector::Pure { j: 1, m: 0 },
            (30.0, 80.0),
        )
        .unwrap();
        let exact = (1.0 / 3f64.sqrt()).acos().to_degrees();
        assert!((root.location - exact).abs() < ANGLE_TOLERANCE_DEG);
        let shifted = find_magic_angle(
            &problem,
            StateSelector::Pure { j: 0, m: 0 },
            StateSelector::Pure { j: 1, m: 0 },
            (41.3, 77.7),
        )
        .unwrap();
        assert!((shifted.location - root.location).abs() < ANGLE_TOLERANCE_DEG);
    }

    #[test]
    fn no_root_at_small_angles() {
        let basis = build_basis(1, spin(), spin()).unwrap();
        let problem = AngleProblem {
            basis: &basis,
            fields: hyperfine_fields(),
            terms: Terms::ALL,
        };
        let out = find_magic_angle(
            &problem,
            StateSelector::Pure { j: 0, m: 0 },
            StateSelector::Pure { j: 1, m: 0 },
            (0.0, 30.0),
        );
        assert!(matches!(out, Err(Error::NoRoot(_))));
    }

    #[test]
    fn dressed_pairs_have_roots_with_stark_field() {
        let basis = build_basis(1, spin(), spin()).unwrap();
        let mut fields = hyperfine_fields();
        fields.e_field_kv_cm = 0.5;
        let problem = AngleProblem {
            basis: &basis,
            fields,
            terms: Terms::ALL,
        };
        let sol = crate::hyperfine::solve(&basis, &problem.at(45.0), Terms::ALL).unwrap();
        let j0 = sol.states_with(0, 0);
        let j1 = sol.states_with(1, 0);
        assert_eq!(j0.len(), 16);
        assert_eq!(j1.len(), 16);
        for &a in j0.iter().take(2) {
            for &b in j1.iter().take(4) {
                let root = find_magic_angle(
                    &problem,
                    StateSelector::Dressed { index: a },
                    StateSelector::Dressed { index: b },
                    (45.0, 65.0),
                )
                .unwrap();
                assert!(root.location > 45.0 && root.location < 65.0);
            }
        }
    }

    proptest! {
        #[test]
        fn roots_are_stable_under_bracket_perturbation(lo in 70.0f64..100.0, hi in 104.0f64..120.0) {
            let s = calibrated();
            let r = find_magic_detuning(&s, 0, 1, 0, 0.0, (lo, hi)).unwrap();
            prop_assert!((r.location - 103.0).abs() < 1e-3);
        }
    }
}
