//! Sinc-DVR bound-state solver for one- and two-channel radial problems,
//! vibrationally averaged matrix elements, and optical-potential
//! linewidths.
//!
//! The kinetic matrix is the Colbert–Miller construction on a hard-wall
//! interval: with N = n + 1 and L = r_max − r_min, its eigenvalues are the
//! exact particle-in-a-box energies (kπ/L)²/(2μ), k = 1..n.

use std::f64::consts::PI;

use faer::{Mat, Side};
use log::warn;

use crate::constants::C_AU;
use crate::error::{Error, Result};
use crate::potentials::{coupled_matrix, CoupledModel, DipoleFunction, PotentialCurve};

/// Largest Hamiltonian dimension handed to the dense eigensolver.
pub const MAX_DENSE_DIMENSION: usize = 4000;

/// Levels closer than this to the asymptote (Hartree) are not reported.
pub const BOUND_THRESHOLD: f64 = 1e-10;

/// Probability in the outermost grid points above which a level is
/// flagged as feeling the wall.
const NEAR_THRESHOLD_PROBABILITY: f64 = 1e-6;
const WALL_POINTS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub n: usize,
}

impl Default for RadialGrid {
    fn default() -> Self {
        Self {
            r_min: 4.0,
            r_max: 20.0,
            n: 1200,
        }
    }
}

impl RadialGrid {
    pub fn new(r_min: f64, r_max: f64, n: usize) -> Result<Self> {
        if !(r_min > 0.0 && r_max > r_min && r_max.is_finite()) {
            return Err(Error::Configuration(format!(
                "grid needs 0 < r_min < r_max, got [{r_min}, {r_max}]"
            )));
        }
        if n < 50 {
            return Err(Error::Configuration(format!("grid needs n ≥ 50 points, got {n}")));
        }
        Ok(Self { r_min, r_max, n })
    }

    fn validate(&self) -> Result<()> {
        Self::new(self.r_min, self.r_max, self.n).map(|_| ())
    }

    pub fn spacing(&self) -> f64 {
        (self.r_max - self.r_min) / (self.n + 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        self.r_min + (i + 1) as f64 * self.spacing()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.point(i)).collect()
    }

    /// Highest kinetic energy the grid represents, π²/(2μΔr²).
    pub fn kinetic_cutoff(&self, mu: f64) -> f64 {
        PI * PI / (2.0 * mu * self.spacing().powi(2))
    }
}

/// Sinc-DVR kinetic-energy matrix for reduced mass `mu` (electron masses).
pub fn dvr_kinetic(grid: &RadialGrid, mu: f64) -> Result<Mat<f64>> {
    grid.validate()?;
    if !(mu > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "reduced mass must be positive, got {mu}"
        )));
    }
    let n = grid.n;
    let big_n = (n + 1) as f64;
    let length = grid.r_max - grid.r_min;
    let prefactor = PI * PI / (4.0 * mu * length * length);
    let inv_sin2 = |x: f64| 1.0 / x.sin().powi(2);
    let mut t = Mat::<f64>::zeros(n, n);
    for i in 1..=n {
        for j in 1..=i {
            let value = if i == j {
                (2.0 * big_n * big_n + 1.0) / 3.0 - inv_sin2(PI * i as f64 / big_n)
            } else {
                let sign = if (i - j) % 2 == 0 { 1.0 } else { -1.0 };
                sign * (inv_sin2(PI * (i - j) as f64 / (2.0 * big_n)) - inv_sin2(PI * (i + j) as f64 / (2.0 * big_n)))
            };
            t[(i - 1, j - 1)] = prefactor * value;
            t[(j - 1, i - 1)] = prefactor * value;
        }
    }
    Ok(t)
}

/// A bound rovibrational level on a [`RadialGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct RovibLevel {
    pub label: String,
    /// Vibrational index, counted from 0 in order of energy.
    pub v: usize,
    pub j: u32,
    /// Energy in Hartree.
    pub energy: f64,
    /// Per-channel amplitudes ψ_c(R_i), normalised so Σ_c Σ_i ψ² Δr = 1.
    pub wavefunction: Vec<Vec<f64>>,
    pub channel_fractions: Vec<f64>,
    pub grid: RadialGrid,
    /// Set when the level has non-negligible amplitude at the outer wall.
    pub near_threshold: bool,
}

impl RovibLevel {
    pub fn channels(&self) -> usize {
        self.wavefunction.len()
    }

    /// ⟨1/(2μR²)⟩, the effective rotational constant in Hartree.
    pub fn rotational_constant(&self, mu: f64) -> f64 {
        self.expectation(|_, r| 1.0 / (2.0 * mu * r * r))
    }

    /// Diagonal expectation of a per-channel function of R.
    pub fn expectation<F: Fn(usize, f64) -> f64>(&self, f: F) -> f64 {
        let dr = self.grid.spacing();
        let mut total = 0.0;
        for (c, psi) in self.wavefunction.iter().enumerate() {
            for (i, amp) in psi.iter().enumerate() {
                total += amp * amp * f(c, self.grid.point(i));
            }
        }
        total * dr
    }
}

fn check_solve_inputs(grid: &RadialGrid, mu: f64, channels: usize) -> Result<()> {
    grid.validate()?;
    if !(mu > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "reduced mass must be positive, got {mu}"
        )));
    }
    let dim = channels * grid.n;
    if dim > MAX_DENSE_DIMENSION {
        return Err(Error::Configuration(format!(
            "Hamiltonian dimension {dim} exceeds the dense limit {MAX_DENSE_DIMENSION}; reduce grid.n"
        )));
    }
    Ok(())
}

fn check_cutoff(grid: &RadialGrid, mu: f64, depth: f64, label: &str) -> Result<()> {
    let cutoff = grid.kinetic_cutoff(mu);
    if depth >= cutoff {
        return Err(Error::Configuration(format!(
            "grid spacing {:.4} bohr too coarse for the {label} well: kinetic cutoff {cutoff:.3e} Eh ≤ depth {depth:.3e} Eh",
            grid.spacing()
        )));
    }
    Ok(())
}

/// Diagonalises `h` and packages the eigenvectors below `threshold` as levels.
fn bound_levels(
    h: Mat<f64>,
    grid: &RadialGrid,
    channels: usize,
    threshold: f64,
    label: &str,
    j: u32,
) -> Result<Vec<RovibLevel>> {
    let eig = h
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::Numerical(format!("eigen-decomposition failed: {e:?}")))?;
    let values = eig.S().column_vector();
    let vectors = eig.U();
    let n = grid.n;
    let inv_sqrt_dr = 1.0 / grid.spacing().sqrt();

    let mut levels = Vec::new();
    for k in 0..values.nrows() {
        let energy = values[k];
        if energy >= threshold - BOUND_THRESHOLD {
            break;
        }
        let column = vectors.col(k);
        // Deterministic phase: largest component positive.
        let mut pivot = 0;
        for i in 0..column.nrows() {
            if column[i].abs() > column[pivot].abs() {
                pivot = i;
            }
        }
        let sign = if column[pivot] < 0.0 { -1.0 } else { 1.0 };
        let wavefunction: Vec<Vec<f64>> = (0..channels)
            .map(|c| (0..n).map(|i| sign * column[c * n + i] * inv_sqrt_dr).collect())
            .collect();
        let dr = grid.spacing();
        let mut fractions: Vec<f64> = wavefunction
            .iter()
            .map(|psi| psi.iter().map(|a| a * a).sum::<f64>() * dr)
            .collect();
        let norm: f64 = fractions.iter().sum();
        fractions.iter_mut().for_each(|f| *f /= norm);
        let wall: f64 = wavefunction
            .iter()
            .map(|psi| psi[n - WALL_POINTS..].iter().map(|a| a * a).sum::<f64>() * dr)
            .sum();
        levels.push(RovibLevel {
            label: label.to_string(),
            v: levels.len(),
            j,
            energy,
            wavefunction,
            channel_fractions: fractions,
            grid: *grid,
            near_threshold: wall > NEAR_THRESHOLD_PROBABILITY,
        });
    }
    Ok(levels)
}

/// All bound levels of a single potential for rotational quantum number `j`.
pub fn solve_single(curve: &PotentialCurve, grid: &RadialGrid, mu: f64, j: u32) -> Result<Vec<RovibLevel>> {
    check_solve_inputs(grid, mu, 1)?;
    let r = grid.points();
    let asymptote = curve.asymptote();
    let v: Vec<f64> = r.iter().map(|&x| curve.eval(x)).collect();
    let depth = asymptote - v.iter().copied().fold(f64::INFINITY, f64::min);
    check_cutoff(grid, mu, depth, &curve.label)?;

    let jj = f64::from(j) * f64::from(j + 1);
    let mut h = dvr_kinetic(grid, mu)?;
    for i in 0..grid.n {
        h[(i, i)] += v[i] + jj / (2.0 * mu * r[i] * r[i]);
    }
    bound_levels(h, grid, 1, asymptote, &curve.label, j)
}

/// Bound levels of the two-channel model for total angular momentum `jp`.
/// Channel 0 of each level is the bright channel, channel 1 the dark one.
pub fn solve_coupled(model: &CoupledModel, grid: &RadialGrid, mu: f64, jp: u32) -> Result<Vec<RovibLevel>> {
    check_solve_inputs(grid, mu, 2)?;
    let n = grid.n;
    let r = grid.points();
    let asymptote = model.asymptote();
    let mut deepest = f64::INFINITY;
    let mut matrices = Vec::with_capacity(n);
    for &x in &r {
        let m = coupled_matrix(model, x)?;
        deepest = deepest.min(m[0][0]).min(m[1][1]);
        matrices.push(m);
    }
    check_cutoff(grid, mu, asymptote - deepest, "coupled")?;

    let jj = f64::from(jp) * f64::from(jp + 1);
    let t = dvr_kinetic(grid, mu)?;
    let mut h = Mat::<f64>::zeros(2 * n, 2 * n);
    for c in 0..2 {
        for i in 0..n {
            for k in 0..n {
                h[(c * n + i, c * n + k)] = t[(i, k)];
            }
        }
    }
    for i in 0..n {
        let centrifugal = jj / (2.0 * mu * r[i] * r[i]);
        let m = matrices[i];
        h[(i, i)] += m[0][0] + centrifugal;
        h[(n + i, n + i)] += m[1][1] + centrifugal;
        h[(i, n + i)] = m[0][1];
        h[(n + i, i)] = m[1][0];
    }
    let label = format!("{}-{}", model.bright.label, model.dark.label);
    bound_levels(h, grid, 2, asymptote, &label, jp)
}

/// ⟨bra| f |ket⟩ = Σ_{c,c'} Σ_i ψ_bra,c(R_i) f(c, c', R_i) ψ_ket,c'(R_i) Δr.
///
/// `f(c, c', R)` weights bra channel `c` against ket channel `c'`; the
/// caller decides which channel pairs carry a transition moment.
pub fn radial_matrix_element<F: Fn(usize, usize, f64) -> f64>(bra: &RovibLevel, f: F, ket: &RovibLevel) -> Result<f64> {
    if bra.grid != ket.grid {
        return Err(Error::Invariant(format!(
            "levels live on different grids: {:?} vs {:?}",
            bra.grid, ket.grid
        )));
    }
    let grid = bra.grid;
    let mut total = 0.0;
    for (cb, psi_b) in bra.wavefunction.iter().enumerate() {
        for (ck, psi_k) in ket.wavefunction.iter().enumerate() {
            for i in 0..grid.n {
                let w = psi_b[i] * psi_k[i];
                if w != 0.0 {
                    total += w * f(cb, ck, grid.point(i));
                }
            }
        }
    }
    Ok(total * grid.spacing())
}

/// Transition dipole between a single-channel lower level and channel
/// `bright` of an upper level; all other channel pairs are dark.
pub fn transition_dipole(
    lower: &RovibLevel,
    dipole: &DipoleFunction,
    upper: &RovibLevel,
    bright: usize,
) -> Result<f64> {
    radial_matrix_element(
        lower,
        |cb, ck, r| if cb == 0 && ck == bright { dipole.eval(r) } else { 0.0 },
        upper,
    )
}

/// One spontaneous-decay route of an upper level: its channel `channel`
/// (on `upper`) radiates to `lower` through `dipole`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayChannel {
    pub channel: usize,
    pub upper: PotentialCurve,
    pub lower: PotentialCurve,
    pub dipole: DipoleFunction,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Linewidth {
    /// Decay rate in atomic units of angular frequency (E_h/ħ).
    pub gamma: f64,
    /// Probability weight of grid points where δE(R) < 0 was clamped to 0.
    pub clamped_weight: f64,
}

/// Local spontaneous-emission rate 4 δE³ d² / (3c³) in atomic units.
pub fn optical_potential(delta_e: f64, dipole: f64) -> f64 {
    4.0 * delta_e.powi(3) * dipole * dipole / (3.0 * C_AU.powi(3))
}

/// γ_f = ⟨f| Γ(R) |f⟩ summed over the decay routes, with
/// Γ(R) = 4 δE(R)³ d(R)² / (3c³) and δE(R) = V_upper(R) − V_lower(R).
pub fn linewidth(level: &RovibLevel, routes: &[DecayChannel]) -> Result<Linewidth> {
    let grid = level.grid;
    let dr = grid.spacing();
    let mut gamma = 0.0;
    let mut clamped = 0.0;
    for route in routes {
        let psi = level.wavefunction.get(route.channel).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "level has {} channels, decay route uses channel {}",
                level.channels(),
                route.channel
            ))
        })?;
        for (i, amp) in psi.iter().enumerate() {
            let weight = amp * amp * dr;
            if weight == 0.0 {
                continue;
            }
            let r = grid.point(i);
            let delta = route.upper.eval(r) - route.lower.eval(r);
            if delta < 0.0 {
                clamped += weight;
                continue;
            }
            gamma += weight * optical_potential(delta, route.dipole.eval(r));
        }
    }
    if clamped > 0.0 {
        warn!(
            "{} v={} J={}: δE(R) < 0 on grid points carrying probability {clamped:.3e}; clamped to 0",
            level.label, level.v, level.j
        );
    }
    Ok(Linewidth {
        gamma,
        clamped_weight: clamped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::{Coupling, Morse};
    use approx::assert_abs_diff_eq;

    const MU: f64 = 10_000.0;

    #[test]
    fn kinetic_matrix_is_symmetric() {
        let t = dvr_kinetic(&RadialGrid::new(1.0, 5.0, 80).unwrap(), 3.0).unwrap();
        for i in 0..80 {
            for j in 0..80 {
                assert_eq!(t[(i, j)], t[(j, i)]);
            }
        }
    }

    #[test]
    fn free_particle_reproduces_box_spectrum() {
        let grid = RadialGrid::new(2.0, 12.0, 500).unwrap();
        let mu = 1.5;
        let t = dvr_kinetic(&grid, mu).unwrap();
        let eig = t.self_adjoint_eigen(Side::Lower).unwrap();
        let s = eig.S().column_vector();
        let length = 10.0;
        for k in 0..5 {
            let want = ((k + 1) as f64 * PI / length).powi(2) / (2.0 * mu);
            assert!((s[k] - want).abs() / want < 1e-8, "k={k}: {} vs {want}", s[k]);
        }
    }

    #[test]
    fn harmonic_spacing_is_uniform() {
        let k = 0.05;
        let grid = RadialGrid::new(4.0, 8.0, 300).unwrap();
        let mut h = dvr_kinetic(&grid, MU).unwrap();
        for (i, r) in grid.points().into_iter().enumerate() {
            h[(i, i)] += 0.5 * k * (r - 6.0).powi(2);
        }
        let eig = h.self_adjoint_eigen(Side::Lower).unwrap();
        let s = eig.S().column_vector();
        let omega = (k / MU).sqrt();
        for n in 0..5 {
            assert!(((s[n + 1] - s[n]) - omega).abs() / omega < 1e-8);
        }
    }

    #[test]
    fn harmonic_position_matrix_element() {
        let k = 0.05;
        let grid = RadialGrid::new(4.0, 8.0, 300).unwrap();
        let mut h = dvr_kinetic(&grid, MU).unwrap();
        for (i, r) in grid.points().into_iter().enumerate() {
            h[(i, i)] += 0.5 * k * (r - 6.0).powi(2);
        }
        let levels = bound_levels(h, &grid, 1, 10.0, "ho", 0).unwrap();
        let x01 = radial_matrix_element(&levels[0], |_, _, r| r - 6.0, &levels[1]).unwrap();
        let omega = (k / MU).sqrt();
        let want = (1.0 / (2.0 * MU * omega)).sqrt();
        assert!((x01.abs() - want).abs() / want < 1e-8);
    }

    fn morse() -> Morse {
        Morse {
            depth: 0.02,
            r_e: 7.0,
            a: 0.4,
            asymptote: 0.0,
        }
    }

    #[test]
    fn morse_levels_match_closed_form() {
        let m = morse();
        let curve = PotentialCurve::morse("X", m).unwrap();
        let grid = RadialGrid::new(4.0, 20.0, 800).unwrap();
        let levels = solve_single(&curve, &grid, MU, 0).unwrap();
        let exact = m.levels(MU);
        for v in 0..10 {
            let rel = (levels[v].energy - exact[v]).abs() / exact[v].abs();
            assert!(rel < 1e-8, "v={v}: {rel:e}");
        }
    }

    #[test]
    fn levels_are_normalised_ordered_and_orthogonal() {
        let curve = PotentialCurve::morse("X", morse()).unwrap();
        let grid = RadialGrid::new(4.0, 20.0, 400).unwrap();
        let levels = solve_single(&curve, &grid, MU, 2).unwrap();
        assert!(levels.len() > 10);
        for w in levels.windows(2) {
            assert!(w[1].energy > w[0].energy);
        }
        for a in &levels[..10] {
            for b in &levels[..10] {
                let g = radial_matrix_element(a, |_, _, _| 1.0, b).unwrap();
                let want = if a.v == b.v { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(g, want, epsilon = 1e-9);
            }
            assert_abs_diff_eq!(a.channel_fractions[0], 1.0, epsilon = 1e-12);
        }
        assert!(levels.iter().all(|l| l.energy < -BOUND_THRESHOLD));
    }

    #[test]
    fn refinement_lowers_energies() {
        let curve = PotentialCurve::morse("X", morse()).unwrap();
        let mut previous = f64::INFINITY;
        for n in [160, 200, 250, 300] {
            let grid = RadialGrid::new(4.0, 20.0, n).unwrap();
            let e = solve_single(&curve, &grid, MU, 0).unwrap()[3].energy;
            assert!(e <= previous + 1e-12);
            previous = e;
        }
    }

    #[test]
    fn converged_ground_state_is_stable() {
        let curve = PotentialCurve::morse("X", morse()).unwrap();
        let a = solve_single(&curve, &RadialGrid::new(4.0, 20.0, 600).unwrap(), MU, 0).unwrap();
        let b = solve_single(&curve, &RadialGrid::new(4.0, 20.0, 1200).unwrap(), MU, 0).unwrap();
        assert!((a[0].energy - b[0].energy).abs() < 1e-10);
    }

    #[test]
    fn coarse_grid_is_a_configuration_error() {
        let curve = PotentialCurve::morse("X", Morse { depth: 50.0, ..morse() }).unwrap();
        let grid = RadialGrid::new(4.0, 20.0, 50).unwrap();
        assert!(matches!(
            solve_single(&curve, &grid, MU, 0),
            Err(Error::Configuration(_))
        ));
        assert!(RadialGrid::new(4.0, 20.0, 10).is_err());
        assert!(RadialGrid::new(-1.0, 20.0, 100).is_err());
        let big = RadialGrid::new(4.0, 20.0, 4001).unwrap();
        assert!(matches!(
            solve_single(&curve, &big, MU, 0),
            Err(Error::Configuration(_))
        ));
    }

    #[test]
    fn no_bound_state_gives_empty_list() {
        let curve = PotentialCurve::morse("X", Morse { depth: 1e-9, ..morse() }).unwrap();
        let grid = RadialGrid::new(4.0, 20.0, 100).unwrap();
        assert!(solve_single(&curve, &grid, 1.0, 0).unwrap().is_empty());
    }

    fn two_channel(xi: f64) -> CoupledModel {
        let a = PotentialCurve::morse(
            "A",
            Morse {
                depth: 0.025,
                r_e: 8.0,
                a: 0.35,
                asymptote: 0.01,
            },
        )
        .unwrap();
        let b = PotentialCurve::morse(
            "b",
            Morse {
                depth: 0.03,
                r_e: 7.0,
                a: 0.4,
                asymptote: 0.01,
            },
        )
        .unwrap();
        CoupledModel::new(a, b, Coupling::Constant(xi))
    }

    #[test]
    fn decoupled_spectrum_is_the_union() {
        let model = two_channel(0.0);
        let grid = RadialGrid::new(4.0, 20.0, 300).unwrap();
        let coupled = solve_coupled(&model, &grid, MU, 1).unwrap();
        let mut union: Vec<f64> = solve_single(&model.bright, &grid, MU, 1)
            .unwrap()
            .into_iter()
            .chain(solve_single(&model.dark, &grid, MU, 1).unwrap())
            .map(|l| l.energy)
            .collect();
        union.sort_by(f64::total_cmp);
        assert_eq!(coupled.len(), union.len());
        for (a, b) in coupled.iter().zip(&union) {
            assert_abs_diff_eq!(a.energy, *b, epsilon = 1e-10);
            assert!(a.channel_fractions.iter().any(|f| (f - 1.0).abs() < 1e-10));
        }
    }

    #[test]
    fn weak_coupling_keeps_the_lowest_level_dark() {
        let grid = RadialGrid::new(4.0, 20.0, 300).unwrap();
        let mut previous = 0.0;
        for xi in [1e-4, 1e-5, 1e-6] {
            let lowest = &solve_coupled(&two_channel(xi), &grid, MU, 0).unwrap()[0];
            let dark = lowest.channel_fractions[1];
            assert!(dark > previous);
            previous = dark;
            let total: f64 = lowest.channel_fractions.iter().sum();
            assert_abs_diff_eq!(total, 1.0, epsilon = 1e-12);
        }
        assert!(previous > 1.0 - 1e-6);
    }

    #[test]
    fn coupled_energies_are_continuous_in_coupling() {
        let grid = RadialGrid::new(4.0, 20.0, 200).unwrap();
        let step = 2e-6;
        let energies: Vec<Vec<f64>> = (0..6)
            .map(|k| {
                solve_coupled(&two_channel(k as f64 * step), &grid, MU, 0)
                    .unwrap()
                    .iter()
                    .take(5)
                    .map(|l| l.energy)
                    .collect()
            })
            .collect();
        // |∂E/∂ξ| ≤ 1 for a unit-norm state, so jumps are bounded by 10·Δξ.
        for w in energies.windows(2) {
            for (a, b) in w[0].iter().zip(&w[1]) {
                assert!((a - b).abs() <= 10.0 * step);
            }
        }
    }

    #[test]
    fn grid_mismatch_is_an_invariant_error() {
        let curve = PotentialCurve::morse("X", morse()).unwrap();
        let a = solve_single(&curve, &RadialGrid::new(4.0, 20.0, 200).unwrap(), MU, 0).unwrap();
        let b = solve_single(&curve, &RadialGrid::new(4.0, 20.0, 201).unwrap(), MU, 0).unwrap();
        assert!(matches!(
            radial_matrix_element(&a[0], |_, _, _| 1.0, &b[0]),
            Err(Error::Invariant(_))
        ));
    }

    fn flat(label: &str, value: f64) -> PotentialCurve {
        PotentialCurve::morse(
            label,
            Morse {
                depth: 1e-30,
                r_e: 7.0,
                a: 1e-3,
                asymptote: value,
            },
        )
        .unwrap()
    }

    #[test]
    fn linewidth_scaling_and_limits() {
        let curve = PotentialCurve::morse("X", morse()).unwrap();
        let grid = RadialGrid::new(4.0, 20.0, 200).unwrap();
        let level = &solve_single(&curve, &grid, MU, 0).unwrap()[0];
        let delta = 0.05;
        let d0 = 2.0;
        let route = DecayChannel {
            channel: 0,
            upper: flat("A", delta),
            lower: flat("X", 0.0),
            dipole: DipoleFunction::constant("X", "A", d0),
        };
        let gamma = linewidth(level, std::slice::from_ref(&route)).unwrap();
        let want = 4.0 * delta.powi(3) * d0 * d0 / (3.0 * C_AU.powi(3));
        assert!((gamma.gamma - want).abs() / want < 1e-12);
        assert_eq!(gamma.clamped_weight, 0.0);

        let doubled = DecayChannel {
            dipole: route.dipole.scaled(2.0),
            ..route.clone()
        };
        let g2 = linewidth(level, &[doubled]).unwrap();
        assert!((g2.gamma / gamma.gamma - 4.0).abs() < 1e-12);

        let dark = DecayChannel {
            dipole: DipoleFunction::constant("X", "A", 0.0),
            ..route.clone()
        };
        assert_eq!(linewidth(level, &[dark]).unwrap().gamma, 0.0);

        let inverted = DecayChannel {
            upper: flat("A", -delta),
            ..route
        };
        let g = linewidth(level, &[inverted]).unwrap();
        assert_eq!(g.gamma, 0.0);
        assert_abs_diff_eq!(g.clamped_weight, 1.0, epsilon = 1e-10);
    }
}
