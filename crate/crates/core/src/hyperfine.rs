//! Rotational–hyperfine Hamiltonian of a v = 0 ¹Σ⁺ molecule with two
//! nuclear spins in the uncoupled basis |J M m₁ m₂⟩ quantized along z.
//!
//! Energies are in MHz, intensities in W/cm², polarizabilities in
//! Hz/(W/cm²), magnetic fields in G and electric fields in kV/cm.

use std::f64::consts::SQRT_2;

use faer::{c64, Mat, Side};

use crate::angular::{clebsch_gordan, rot_tensor_element, HalfInt};
use crate::constants::{DEBYE_KV_PER_CM_MHZ, NUCLEAR_MAGNETON_HZ_PER_GAUSS};
use crate::error::{Error, Result};
use crate::units::{energy, Unit};

const MAX_J: u32 = 2;
const UNIT_TOLERANCE: f64 = 1e-12;
const HERMITICITY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisState {
    pub j: u32,
    pub m: i32,
    /// Projections of the first (Na) and second (Rb) nuclear spin.
    pub m1: HalfInt,
    pub m2: HalfInt,
}

/// Ordered product basis plus the operator blocks every term is built from.
#[derive(Debug, Clone)]
pub struct HyperfineBasis {
    pub j_max: u32,
    pub spins: [HalfInt; 2],
    pub states: Vec<BasisState>,
    rotor: Vec<(u32, i32)>,
    /// ⟨J'M'|C_1q|JM⟩ for q = −1, 0, 1.
    c1: [Mat<c64>; 3],
    /// ⟨J'M'|C_2q|JM⟩ for q = −2..2.
    c2: [Mat<c64>; 5],
    /// Spherical components i_q (q = −1, 0, 1) of each spin.
    spin_vector: [[Mat<c64>; 3]; 2],
    /// T_2q(i, i) (q = −2..2) of each spin.
    spin_tensor: [[Mat<c64>; 5]; 2],
}

impl HyperfineBasis {
    pub fn dim(&self) -> usize {
        self.states.len()
    }

    fn nuclear_dims(&self) -> (usize, usize) {
        (
            (self.spins[0].doubled() + 1) as usize,
            (self.spins[1].doubled() + 1) as usize,
        )
    }

    /// Basis indices belonging to rotor state (J, M).
    pub fn indices_of(&self, j: u32, m: i32) -> Vec<usize> {
        (0..self.dim())
            .filter(|&k| self.states[k].j == j && self.states[k].m == m)
            .collect()
    }

    /// rotor ⊗ spin₁ ⊗ spin₂ with `None` meaning the identity.
    fn product(&self, rotor: Option<&Mat<c64>>, s1: Option<&Mat<c64>>, s2: Option<&Mat<c64>>) -> Mat<c64> {
        let (n1, n2) = self.nuclear_dims();
        let nr = self.rotor.len();
        let dim = self.dim();
        let one = c64::new(1.0, 0.0);
        let pick = |m: Option<&Mat<c64>>, a: usize, b: usize| match m {
            Some(m) => m[(a, b)],
            None if a == b => one,
            None => c64::new(0.0, 0.0),
        };
        Mat::from_fn(dim, dim, |row, col| {
            let (ra, rb) = (row / (n1 * n2), col / (n1 * n2));
            let (a1, b1) = ((row / n2) % n1, (col / n2) % n1);
            let (a2, b2) = (row % n2, col % n2);
            debug_assert!(ra < nr && rb < nr);
            pick(rotor, ra, rb) * pick(s1, a1, b1) * pick(s2, a2, b2)
        })
    }
}

pub fn build_basis(j_max: u32, i_na: HalfInt, i_rb: HalfInt) -> Result<HyperfineBasis> {
    if j_max > MAX_J {
        return Err(Error::InvalidArgument(format!(
            "j_max = {j_max} is not supported (0, 1 or 2)"
        )));
    }
    if i_na.doubled() <= 0 || i_rb.doubled() <= 0 {
        return Err(Error::InvalidArgument(format!(
            "nuclear spins must be positive, got {i_na} and {i_rb}"
        )));
    }
    let rotor: Vec<(u32, i32)> = (0..=j_max)
        .flat_map(|j| (-(j as i32)..=j as i32).map(move |m| (j, m)))
        .collect();
    let projections = |i: HalfInt| -> Vec<HalfInt> {
        (0..=i.doubled())
            .map(|k| HalfInt::from_doubled(-i.doubled() + 2 * k))
            .collect()
    };
    let mut states = Vec::new();
    for &(j, m) in &rotor {
        for &m1 in &projections(i_na) {
            for &m2 in &projections(i_rb) {
                states.push(BasisState { j, m, m1, m2 });
            }
        }
    }

    let rot = |k: i32, q: i32| -> Result<Mat<c64>> {
        let n = rotor.len();
        let mut out = Mat::zeros(n, n);
        for (a, &(jp, mp)) in rotor.iter().enumerate() {
            for (b, &(j, m)) in rotor.iter().enumerate() {
                if mp == m + q {
                    out[(a, b)] = c64::new(rot_tensor_element(jp as i32, mp, k, q, j as i32, m)?, 0.0);
                }
            }
        }
        Ok(out)
    };
    let c1 = [rot(1, -1)?, rot(1, 0)?, rot(1, 1)?];
    let c2 = [rot(2, -2)?, rot(2, -1)?, rot(2, 0)?, rot(2, 1)?, rot(2, 2)?];
    let v1 = spin_vector(i_na);
    let v2 = spin_vector(i_rb);
    let t1 = coupled_rank2(&v1)?;
    let t2 = coupled_rank2(&v2)?;

    Ok(HyperfineBasis {
        j_max,
        spins: [i_na, i_rb],
        states,
        rotor,
        c1,
        c2,
        spin_vector: [v1, v2],
        spin_tensor: [t1, t2],
    })
}

/// Spherical components (q = −1, 0, 1) of a spin operator in the basis
/// m = −i, …, i.
fn spin_vector(i: HalfInt) -> [Mat<c64>; 3] {
    let n = (i.doubled() + 1) as usize;
    let iv = i.value();
    let m_of = |k: usize| -iv + k as f64;
    let mut plus = Mat::<c64>::zeros(n, n);
    let mut z = Mat::<c64>::zeros(n, n);
    for k in 0..n {
        let m = m_of(k);
        z[(k, k)] = c64::new(m, 0.0);
        if k + 1 < n {
            plus[(k + 1, k)] = c64::new((iv * (iv + 1.0) - m * (m + 1.0)).sqrt(), 0.0);
        }
    }
    let minus = plus.adjoint().to_owned();
    let s = c64::new(1.0 / SQRT_2, 0.0);
    [
        Mat::from_fn(n, n, |a, b| minus[(a, b)] * s),
        z,
        Mat::from_fn(n, n, |a, b| -plus[(a, b)] * s),
    ]
}

/// Rank-2 part of the coupled product of a vector operator with itself,
/// T_2q = Σ ⟨1 q₁ 1 q₂|2 q⟩ v_q₁ v_q₂.
fn coupled_rank2(v: &[Mat<c64>; 3]) -> Result<[Mat<c64>; 5]> {
    let n = v[0].nrows();
    let one = HalfInt::from_int(1);
    let two = HalfInt::from_int(2);
    let mut out: [Mat<c64>; 5] = std::array::from_fn(|_| Mat::zeros(n, n));
    for (slot, q) in (-2..=2).enumerate() {
        for q1 in -1..=1i32 {
            let q2 = q - q1;
            if q2.abs() > 1 {
                continue;
            }
            let cg = clebsch_gordan(
                one,
                HalfInt::from_int(q1),
                one,
                HalfInt::from_int(q2),
                two,
                HalfInt::from_int(q),
            )?;
            let prod = &v[(q1 + 1) as usize] * &v[(q2 + 1) as usize];
            out[slot] += Mat::from_fn(n, n, |a, b| prod[(a, b)] * cg);
        }
    }
    Ok(out)
}

/// Spherical components (q = −1, 0, 1) of a Cartesian vector.
fn spherical(v: [f64; 3]) -> [c64; 3] {
    let [x, y, z] = v;
    [
        c64::new(x / SQRT_2, -y / SQRT_2),
        c64::new(z, 0.0),
        c64::new(-x / SQRT_2, -y / SQRT_2),
    ]
}

/// T_2q(ε, ε) (q = −2..2) for a real vector.
fn vector_rank2(v: [f64; 3]) -> Result<[c64; 5]> {
    let s = spherical(v);
    let one = HalfInt::from_int(1);
    let two = HalfInt::from_int(2);
    let mut out = [c64::new(0.0, 0.0); 5];
    for (slot, q) in (-2..=2).enumerate() {
        for q1 in -1..=1i32 {
            let q2 = q - q1;
            if q2.abs() > 1 {
                continue;
            }
            let cg = clebsch_gordan(
                one,
                HalfInt::from_int(q1),
                one,
                HalfInt::from_int(q2),
                two,
                HalfInt::from_int(q),
            )?;
            out[slot] += s[(q1 + 1) as usize] * s[(q2 + 1) as usize] * cg;
        }
    }
    Ok(out)
}

fn parity(q: i32) -> f64 {
    if q.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Denominator of the quadrupole operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QuadrupoleConvention {
    /// i(2i − 1); first-order energies follow the Casimir formula.
    #[default]
    Standard,
    /// i(i − 1), as printed in some sources. Rescales each nucleus by
    /// (2i − 1)/(i − 1) and is undefined for i = 1.
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MolecularConstants {
    /// B_{v=0}/h (MHz).
    pub rotational_constant_mhz: Option<f64>,
    /// (eqQ)/h of the first and second nucleus (MHz).
    pub eqq_mhz: Option<[f64; 2]>,
    pub spins: [HalfInt; 2],
    /// Nuclear g-factors (shielding ignored).
    pub g_factors: Option<[f64; 2]>,
    /// Permanent dipole moment (D).
    pub dipole_debye: Option<f64>,
    /// α∥/h and α⊥/h at the trap wavelength (Hz/(W/cm²)).
    pub alpha_parallel: Option<f64>,
    pub alpha_perpendicular: Option<f64>,
}

impl MolecularConstants {
    /// ²³Na⁸⁷Rb v = 0 values at 1064 nm. g-factors and d₀ are left unset.
    pub fn narb() -> Self {
        Self {
            rotational_constant_mhz: Some(energy(0.069_70, Unit::InverseCm, Unit::MHz)),
            eqq_mhz: Some([0.132, -2.984]),
            spins: [HalfInt::from_doubled(3), HalfInt::from_doubled(3)],
            g_factors: None,
            dipole_debye: None,
            alpha_parallel: Some(57.904),
            alpha_perpendicular: Some(19.079),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldConfiguration {
    pub b_field_gauss: f64,
    pub b_direction: [f64; 3],
    pub e_field_kv_cm: f64,
    pub e_direction: [f64; 3],
    /// Linear polarization unit vector.
    pub polarization: [f64; 3],
    pub intensity_w_cm2: f64,
    /// Informational; α∥ and α⊥ must already refer to this wavelength.
    pub wavelength_nm: Option<f64>,
    pub constants: MolecularConstants,
    pub quadrupole: QuadrupoleConvention,
}

impl FieldConfiguration {
    /// Fields along z, polarization along z, 2 kW/cm² at 1064 nm.
    pub fn new(constants: MolecularConstants) -> Self {
        Self {
            b_field_gauss: 0.0,
            b_direction: [0.0, 0.0, 1.0],
            e_field_kv_cm: 0.0,
            e_direction: [0.0, 0.0, 1.0],
            polarization: [0.0, 0.0, 1.0],
            intensity_w_cm2: 2000.0,
            wavelength_nm: Some(1064.0),
            constants,
            quadrupole: QuadrupoleConvention::Standard,
        }
    }

    /// Polarization in the xz-plane at `theta` (radians) from z.
    pub fn with_polarization_angle(mut self, theta: f64) -> Self {
        self.polarization = polarization_at(theta);
        self
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("magnetic-field direction", self.b_direction),
            ("electric-field direction", self.e_direction),
            ("polarization", self.polarization),
        ] {
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if !((norm - 1.0).abs() <= UNIT_TOLERANCE) {
                return Err(Error::Configuration(format!(
                    "{name} must be a unit vector, |v| = {norm}"
                )));
            }
        }
        for (name, value) in [
            ("magnetic field", self.b_field_gauss),
            ("electric field", self.e_field_kv_cm),
            ("intensity", self.intensity_w_cm2),
        ] {
            if !(value >= 0.0 && value.is_finite()) {
                return Err(Error::Configuration(format!(
                    "{name} must be finite and ≥ 0, got {value}"
                )));
            }
        }
        Ok(())
    }
}

pub fn polarization_at(theta: f64) -> [f64; 3] {
    let (s, c) = theta.sin_cos();
    [s, 0.0, c]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Terms {
    pub rotation: bool,
    pub quadrupole: bool,
    pub zeeman: bool,
    pub stark: bool,
    pub polarization: bool,
}

impl Terms {
    pub const ALL: Terms = Terms {
        rotation: true,
        quadrupole: true,
        zeeman: true,
        stark: true,
        polarization: true,
    };
    pub const NONE: Terms = Terms {
        rotation: false,
        quadrupole: false,
        zeeman: false,
        stark: false,
        polarization: false,
    };
}

#[derive(Debug, Clone)]
pub struct Hamiltonian {
    pub basis: HyperfineBasis,
    /// Matrix in MHz.
    pub matrix: Mat<c64>,
}

fn require<T: Copy>(value: Option<T>, name: &str) -> Result<T> {
    value.ok_or_else(|| Error::Configuration(format!("missing molecular constant `{name}`")))
}

fn add_scaled(target: &mut Mat<c64>, term: &Mat<c64>, scale: c64) {
    *target += Mat::from_fn(term.nrows(), term.ncols(), |a, b| term[(a, b)] * scale);
}

/// v·n̂ = Σ_q (−1)^q v_q C_1,−q for a c-number vector v.
fn rotor_dot_vector(basis: &HyperfineBasis, v: [c64; 3]) -> Mat<c64> {
    let nr = basis.rotor.len();
    let mut r = Mat::<c64>::zeros(nr, nr);
    for (slot, q) in (-1..=1).enumerate() {
        add_scaled(&mut r, &basis.c1[(1 - q) as usize], v[slot] * parity(q));
    }
    basis.product(Some(&r), None, None)
}

/// −∂H/∂I: the light-shift operator per unit intensity, Hz/(W/cm²).
pub fn polarizability_operator(basis: &HyperfineBasis, fields: &FieldConfiguration) -> Result<Mat<c64>> {
    let c = fields.constants;
    let par = require(c.alpha_parallel, "alpha_parallel")?;
    let perp = require(c.alpha_perpendicular, "alpha_perpendicular")?;
    let t = vector_rank2(fields.polarization)?;
    let nr = basis.rotor.len();
    let mut r = Mat::<c64>::zeros(nr, nr);
    for (slot, q) in (-2..=2).enumerate() {
        // T_2q(ε,ε) C_2,−q
        add_scaled(&mut r, &basis.c2[(2 - q) as usize], t[slot] * parity(q));
    }
    let aniso = 6f64.sqrt() / 3.0 * (par - perp);
    let iso = (par + 2.0 * perp) / 3.0;
    let rotor = Mat::from_fn(nr, nr, |a, b| {
        let diag = if a == b { iso } else { 0.0 };
        r[(a, b)] * aniso + c64::new(diag, 0.0)
    });
    Ok(basis.product(Some(&rotor), None, None))
}

pub fn build_hamiltonian(basis: &HyperfineBasis, fields: &FieldConfiguration, terms: Terms) -> Result<Hamiltonian> {
    fields.validate()?;
    let c = fields.constants;
    if c.spins != basis.spins {
        return Err(Error::Configuration(format!(
            "basis spins ({}, {}) differ from the configured spins ({}, {})",
            basis.spins[0], basis.spins[1], c.spins[0], c.spins[1]
        )));
    }
    let dim = basis.dim();
    let mut h = Mat::<c64>::zeros(dim, dim);

    if terms.rotation {
        let b = require(c.rotational_constant_mhz, "rotational_constant")?;
        for (k, s) in basis.states.iter().enumerate() {
            h[(k, k)] += c64::new(b * f64::from(s.j * (s.j + 1)), 0.0);
        }
    }

    if terms.quadrupole {
        let eqq = require(c.eqq_mhz, "eqq")?;
        for nucleus in 0..2 {
            let i = basis.spins[nucleus].value();
            let denom = match fields.quadrupole {
                QuadrupoleConvention::Standard => i * (2.0 * i - 1.0),
                QuadrupoleConvention::Literal => i * (i - 1.0),
            };
            if denom == 0.0 {
                return Err(Error::Configuration(format!(
                    "quadrupole denominator vanishes for spin {i}"
                )));
            }
            let scale = eqq[nucleus] * 6f64.sqrt() / (4.0 * denom);
            for (slot, q) in (-2..=2).enumerate() {
                // C_2q T_2,−q(i)
                let spin = &basis.spin_tensor[nucleus][(2 - q) as usize];
                let term = if nucleus == 0 {
                    basis.product(Some(&basis.c2[slot]), Some(spin), None)
                } else {
                    basis.product(Some(&basis.c2[slot]), None, Some(spin))
                };
                add_scaled(&mut h, &term, c64::new(scale * parity(q), 0.0));
            }
        }
    }

    if terms.zeeman {
        let g = require(c.g_factors, "g_factors")?;
        let b = spherical(fields.b_direction);
        let mu_n = NUCLEAR_MAGNETON_HZ_PER_GAUSS * 1e-6 * fields.b_field_gauss;
        for nucleus in 0..2 {
            for (slot, q) in (-1..=1).enumerate() {
                // b_q i_−q
                let spin = &basis.spin_vector[nucleus][(1 - q) as usize];
                let term = if nucleus == 0 {
                    basis.product(None, Some(spin), None)
                } else {
                    basis.product(None, None, Some(spin))
                };
                add_scaled(&mut h, &term, b[slot] * (-g[nucleus] * mu_n * parity(q)));
            }
        }
    }

    if terms.stark {
        let d0 = require(c.dipole_debye, "dipole")?;
        let e = spherical(fields.e_direction);
        let term = rotor_dot_vector(basis, e);
        add_scaled(
            &mut h,
            &term,
            c64::new(-d0 * fields.e_field_kv_cm * DEBYE_KV_PER_CM_MHZ, 0.0),
        );
    }

    if terms.polarization {
        let op = polarizability_operator(basis, fields)?;
        add_scaled(&mut h, &op, c64::new(-fields.intensity_w_cm2 * 1e-6, 0.0));
    }

    Ok(Hamiltonian {
        basis: basis.clone(),
        matrix: h,
    })
}

/// Dominant rotor character of an eigenvector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Character {
    pub j: u32,
    pub m: i32,
    /// Summed probability in that (J, M) block.
    pub weight: f64,
}

#[derive(Debug, Clone)]
pub struct EigenSolution {
    pub basis: HyperfineBasis,
    /// Ascending, MHz.
    pub eigenvalues: Vec<f64>,
    /// Columns are eigenvectors.
    pub eigenvectors: Mat<c64>,
    pub labels: Vec<Character>,
    /// Per-state polarizability (Hz/(W/cm²)) once computed.
    pub polarizabilities: Option<Vec<f64>>,
}

impl EigenSolution {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Indices of the states whose dominant character is (J, M).
    pub fn states_with(&self, j: u32, m: i32) -> Vec<usize> {
        (0..self.dim())
            .filter(|&k| self.labels[k].j == j && self.labels[k].m == m)
            .collect()
    }

    pub fn overlap(&self, k: usize, other: &EigenSolution, l: usize) -> c64 {
        let a = self.eigenvectors.col(k);
        let b = other.eigenvectors.col(l);
        let mut s = c64::new(0.0, 0.0);
        for i in 0..a.nrows() {
            s += a[i].conj() * b[i];
        }
        s
    }
}

pub fn diagonalize(h: &Hamiltonian) -> Result<EigenSolution> {
    let m = &h.matrix;
    let n = m.nrows();
    if m.ncols() != n || n != h.basis.dim() {
        return Err(Error::Invariant(format!(
            "{}×{} matrix does not match a basis of dimension {}",
            n,
            m.ncols(),
            h.basis.dim()
        )));
    }
    let mut scale: f64 = 1.0;
    let mut worst: f64 = 0.0;
    for a in 0..n {
        for b in 0..n {
            scale = scale.max(m[(a, b)].norm());
            worst = worst.max((m[(a, b)] - m[(b, a)].conj()).norm());
        }
    }
    if worst > HERMITICITY_TOLERANCE * scale {
        return Err(Error::Invariant(format!(
            "matrix is not Hermitian: max |H − H†| = {worst:e}"
        )));
    }
    let eig = m
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::Numerical(format!("eigen-decomposition failed: {e:?}")))?;
    let values = eig.S().column_vector();
    let mut vectors = eig.U().to_owned();
    let mut eigenvalues = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for k in 0..n {
        eigenvalues.push(values[k].re);
        let mut pivot = 0;
        for i in 1..n {
            if vectors[(i, k)].norm() > vectors[(pivot, k)].norm() * (1.0 + 1e-12) {
                pivot = i;
            }
        }
        let p = vectors[(pivot, k)];
        let phase = p.conj() / p.norm();
        for i in 0..n {
            vectors[(i, k)] *= phase;
        }
        labels.push(character(&h.basis, &vectors, k));
    }
    Ok(EigenSolution {
        basis: h.basis.clone(),
        eigenvalues,
        eigenvectors: vectors,
        labels,
        polarizabilities: None,
    })
}

fn character(basis: &HyperfineBasis, vectors: &Mat<c64>, k: usize) -> Character {
    let (n1, n2) = basis.nuclear_dims();
    let block = n1 * n2;
    let mut best = Character {
        j: 0,
        m: 0,
        weight: -1.0,
    };
    for (r, &(j, m)) in basis.rotor.iter().enumerate() {
        let w: f64 = (r * block..(r + 1) * block).map(|i| vectors[(i, k)].norm_sqr()).sum();
        if w > best.weight + 1e-12 {
            best = Character { j, m, weight: w };
        }
    }
    best
}

/// Hellmann–Feynman polarizabilities ⟨ψ_i| −∂H/∂I |ψ_i⟩ in Hz/(W/cm²).
pub fn eigenstate_polarizability(sol: &EigenSolution, fields: &FieldConfiguration) -> Result<Vec<f64>> {
    let op = polarizability_operator(&sol.basis, fields)?;
    let product = &op * &sol.eigenvectors;
    Ok((0..sol.dim())
        .map(|k| {
            let mut s = c64::new(0.0, 0.0);
            for i in 0..sol.dim() {
                s += sol.eigenvectors[(i, k)].conj() * product[(i, k)];
            }
            s.re
        })
        .collect())
}

/// Builds, diagonalizes and attaches the per-state polarizabilities.
pub fn solve(basis: &HyperfineBasis, fields: &FieldConfiguration, terms: Terms) -> Result<EigenSolution> {
    let h = build_hamiltonian(basis, fields, terms)?;
    let mut sol = diagonalize(&h)?;
    sol.polarizabilities = Some(eigenstate_polarizability(&sol, fields)?);
    Ok(sol)
}

/// `perm[i]` is the state of `b` continuing state `i` of `a`, assigned
/// greedily by decreasing |⟨a_i|b_j⟩|.
pub fn track_states(a: &EigenSolution, b: &EigenSolution) -> Result<Vec<usize>> {
    let n = a.dim();
    if b.dim() != n || a.basis.states != b.basis.states {
        return Err(Error::Invariant(format!(
            "cannot track states between bases of dimension {n} and {}",
            b.dim()
        )));
    }
    let mut pairs = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            pairs.push((a.overlap(i, b, j).norm(), i, j));
        }
    }
    pairs.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    let mut perm = vec![usize::MAX; n];
    let mut taken = vec![false; n];
    let mut assigned = 0;
    for (_, i, j) in pairs {
        if perm[i] == usize::MAX && !taken[j] {
            perm[i] = j;
            taken[j] = true;
            assigned += 1;
            if assigned == n {
                break;
            }
        }
    }
    Ok(perm)
}

/// Overlap |⟨a_i|b_perm[i]⟩| for each tracked state.
pub fn tracked_overlaps(a: &EigenSolution, b: &EigenSolution, perm: &[usize]) -> Vec<f64> {
    perm.iter()
        .enumerate()
        .map(|(i, &j)| a.overlap(i, b, j).norm())
        .collect()
}
