//! Electronic potential curves, spin–orbit couplings and transition
//! dipole functions, plus Morse calibration and a plain-text loader.
//!
//! Everything is stored in atomic units: R in bohr, energies in Hartree,
//! dipoles in e·a₀.

use std::fs;
use std::path::Path;

use crate::constants::DALTON_ME;
use crate::error::{Error, Result};
use crate::units::{Dimension, Quantity, Unit};

/// Natural cubic spline through strictly increasing nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct CubicSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    /// Second derivatives at the nodes.
    m: Vec<f64>,
}

impl CubicSpline {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        let n = x.len();
        if n != y.len() {
            return Err(Error::InvalidArgument(format!(
                "spline needs equal-length columns, got {} and {}",
                n,
                y.len()
            )));
        }
        if n < 3 {
            return Err(Error::InvalidArgument(format!(
                "spline needs at least 3 nodes, got {n}"
            )));
        }
        for k in 1..n {
            if !(x[k] > x[k - 1]) {
                return Err(Error::InvalidArgument(format!(
                    "spline abscissae must increase strictly (node {k})"
                )));
            }
        }

        // Tridiagonal system for the interior second derivatives (Thomas algorithm).
        let mut m = vec![0.0; n];
        let mut diag = vec![0.0; n];
        let mut rhs = vec![0.0; n];
        let mut upper = vec![0.0; n];
        for i in 1..n - 1 {
            let h0 = x[i] - x[i - 1];
            let h1 = x[i + 1] - x[i];
            diag[i] = 2.0 * (h0 + h1);
            upper[i] = h1;
            rhs[i] = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
        }
        for i in 2..n - 1 {
            let w = (x[i] - x[i - 1]) / diag[i - 1];
            diag[i] -= w * upper[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        for i in (1..n - 1).rev() {
            m[i] = (rhs[i] - upper[i] * m[i + 1]) / diag[i];
        }
        Ok(Self { x, y, m })
    }

    pub fn nodes(&self) -> (&[f64], &[f64]) {
        (&self.x, &self.y)
    }

    pub fn x_min(&self) -> f64 {
        self.x[0]
    }

    pub fn x_max(&self) -> f64 {
        self.x[self.x.len() - 1]
    }

    fn segment(&self, t: f64) -> usize {
        match self.x.partition_point(|&xi| xi <= t) {
            0 => 0,
            k if k >= self.x.len() => self.x.len() - 2,
            k => k - 1,
        }
    }

    /// Value and first derivative. Outside the node span the end cubic is
    /// continued; callers apply their own extrapolation rule instead.
    pub fn eval_with_derivative(&self, t: f64) -> (f64, f64) {
        let k = self.segment(t);
        let h = self.x[k + 1] - self.x[k];
        let a = (self.x[k + 1] - t) / h;
        let b = (t - self.x[k]) / h;
        let (m0, m1) = (self.m[k], self.m[k + 1]);
        let value = a * self.y[k] + b * self.y[k + 1] + ((a * a * a - a) * m0 + (b * b * b - b) * m1) * h * h / 6.0;
        let slope = (self.y[k + 1] - self.y[k]) / h + (-(3.0 * a * a - 1.0) * m0 + (3.0 * b * b - 1.0) * m1) * h / 6.0;
        (value, slope)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.eval_with_derivative(t).0
    }
}

/// Two-column data read from a text file, converted to atomic units.
#[derive(Debug, Clone, PartialEq)]
pub struct PointwiseData {
    pub r: Vec<f64>,
    pub values: Vec<f64>,
    pub value_dimension: Dimension,
}

pub const MIN_POINTWISE_SAMPLES: usize = 8;

/// Parses a `# units: <R-unit> <value-unit>` header if present.
fn header_units(line: &str) -> Option<Result<(Unit, Unit)>> {
    let body = line.trim_start_matches('#').trim();
    let rest = body.strip_prefix("units:")?;
    let mut it = rest.split_whitespace();
    let parsed = (|| {
        let r: Unit = it
            .next()
            .ok_or_else(|| Error::InvalidArgument("units header lacks the R unit".into()))?
            .parse()?;
        let v: Unit = it
            .next()
            .ok_or_else(|| Error::InvalidArgument("units header lacks the value unit".into()))?
            .parse()?;
        Ok((r, v))
    })();
    Some(parsed)
}

/// Parses two-column whitespace-separated text. `#` starts a comment line.
///
/// Units come from `declared` when given, otherwise from a
/// `# units: <R> <V>` header, otherwise bohr and Hartree. Values are
/// returned in bohr and in Hartree or e·a₀.
pub fn parse_pointwise(text: &str, declared: Option<(Unit, Unit)>) -> Result<PointwiseData> {
    let mut units = declared;
    let mut rows: Vec<(usize, f64, f64)> = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') {
            if let Some(parsed) = header_units(line) {
                let parsed = parsed.map_err(|e| Error::Format {
                    line: line_no,
                    message: e.to_string(),
                })?;
                if declared.is_none() {
                    units = Some(parsed);
                }
            }
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::Format {
                line: line_no,
                message: format!("expected two columns, found {}", fields.len()),
            });
        }
        let parse = |token: &str| {
            token
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::Format {
                    line: line_no,
                    message: format!("`{token}` is not a finite number"),
                })
        };
        rows.push((line_no, parse(fields[0])?, parse(fields[1])?));
    }

    let (r_unit, v_unit) = units.unwrap_or((Unit::Bohr, Unit::Hartree));
    if r_unit.dimension() != Dimension::Length {
        return Err(Error::Unit {
            from: r_unit.to_string(),
            to: Unit::Bohr.to_string(),
        });
    }
    let target = match v_unit.dimension() {
        Dimension::Energy => Unit::Hartree,
        Dimension::DipoleMoment => Unit::AtomicDipole,
        _ => {
            return Err(Error::Unit {
                from: v_unit.to_string(),
                to: "energy or dipole moment".into(),
            })
        }
    };

    for pair in rows.windows(2) {
        let ((_, r0, _), (line, r1, _)) = (pair[0], pair[1]);
        if r1 == r0 {
            return Err(Error::Format {
                line,
                message: format!("duplicate R = {r1} (also on the previous data row)"),
            });
        }
        if r1 < r0 {
            return Err(Error::Format {
                line,
                message: format!("R = {r1} is not larger than the previous R = {r0}"),
            });
        }
    }
    if rows.len() < MIN_POINTWISE_SAMPLES {
        return Err(Error::Format {
            line: text.lines().count(),
            message: format!("need at least {MIN_POINTWISE_SAMPLES} data rows, found {}", rows.len()),
        });
    }

    let r_factor = Quantity::new(1.0, r_unit).value_in(Unit::Bohr)?;
    let v_factor = Quantity::new(1.0, v_unit).value_in(target)?;
    let r = rows.iter().map(|&(_, r, _)| r * r_factor).collect();
    let values = rows.iter().map(|&(_, _, v)| v * v_factor).collect();
    Ok(PointwiseData {
        r,
        values,
        value_dimension: target.dimension(),
    })
}

pub fn load_pointwise(path: &Path, declared: Option<(Unit, Unit)>) -> Result<PointwiseData> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_pointwise(&text, declared)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Morse {
    /// Well depth D_e (Hartree).
    pub depth: f64,
    /// Equilibrium separation (bohr).
    pub r_e: f64,
    /// Range parameter (1/bohr).
    pub a: f64,
    /// Dissociation asymptote (Hartree).
    pub asymptote: f64,
}

impl Morse {
    pub fn eval(&self, r: f64) -> f64 {
        let x = 1.0 - (-self.a * (r - self.r_e)).exp();
        self.depth * x * x - self.depth + self.asymptote
    }

    /// Harmonic frequency ω_e for reduced mass `mu` (electron masses).
    pub fn omega_e(&self, mu: f64) -> f64 {
        self.a * (2.0 * self.depth / mu).sqrt()
    }

    /// Closed-form J = 0 bound-state energies, lowest first.
    pub fn levels(&self, mu: f64) -> Vec<f64> {
        let omega = self.omega_e(mu);
        let lambda = (2.0 * mu * self.depth).sqrt() / self.a;
        let v_max = (lambda - 0.5).floor();
        if v_max < 0.0 {
            return Vec::new();
        }
        (0..=v_max as usize)
            .map(|v| {
                let x = omega * (v as f64 + 0.5);
                self.asymptote - self.depth + x - x * x / (4.0 * self.depth)
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CurveKind {
    Morse(Morse),
    Pointwise(CubicSpline),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PotentialCurve {
    pub label: String,
    pub kind: CurveKind,
}

impl PotentialCurve {
    pub fn morse(label: impl Into<String>, params: Morse) -> Result<Self> {
        if !(params.depth > 0.0 && params.a > 0.0 && params.r_e > 0.0) || !params.asymptote.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "Morse parameters must be positive, got D_e = {}, a = {}, R_e = {}",
                params.depth, params.a, params.r_e
            )));
        }
        Ok(Self {
            label: label.into(),
            kind: CurveKind::Morse(params),
        })
    }

    pub fn pointwise(label: impl Into<String>, data: PointwiseData) -> Result<Self> {
        if data.value_dimension != Dimension::Energy {
            return Err(Error::InvalidArgument(
                "potential samples must carry energy units".into(),
            ));
        }
        if data.r.len() < MIN_POINTWISE_SAMPLES {
            return Err(Error::InvalidArgument(format!(
                "need at least {MIN_POINTWISE_SAMPLES} samples, got {}",
                data.r.len()
            )));
        }
        Ok(Self {
            label: label.into(),
            kind: CurveKind::Pointwise(CubicSpline::new(data.r, data.values)?),
        })
    }

    /// Potential energy in Hartree.
    ///
    /// Pointwise curves extrapolate inward with an exponential wall through
    /// the first two nodes, V(R) = V₁ + (V₀ − V₁)·exp((R₀ − R)/(R₁ − R₀)),
    /// or linearly if those nodes do not rise inward, and outward with the
    /// constant value of the last node.
    pub fn eval(&self, r: f64) -> f64 {
        match &self.kind {
            CurveKind::Morse(m) => m.eval(r),
            CurveKind::Pointwise(s) => {
                let (x, y) = s.nodes();
                if r < x[0] {
                    let (r0, r1, v0, v1) = (x[0], x[1], y[0], y[1]);
                    if v0 > v1 {
                        v1 + (v0 - v1) * ((r0 - r) / (r1 - r0)).exp()
                    } else {
                        v0 + (v1 - v0) / (r1 - r0) * (r - r0)
                    }
                } else if r > s.x_max() {
                    y[y.len() - 1]
                } else {
                    s.eval(r)
                }
            }
        }
    }

    /// Energy at large R.
    pub fn asymptote(&self) -> f64 {
        match &self.kind {
            CurveKind::Morse(m) => m.asymptote,
            CurveKind::Pointwise(s) => s.nodes().1[s.nodes().1.len() - 1],
        }
    }

    /// Lowest sampled value (Morse: the exact minimum).
    pub fn minimum(&self) -> (f64, f64) {
        match &self.kind {
            CurveKind::Morse(m) => (m.r_e, m.asymptote - m.depth),
            CurveKind::Pointwise(s) => {
                let (x, y) = s.nodes();
                let k = (0..y.len()).min_by(|&i, &j| y[i].total_cmp(&y[j])).unwrap_or(0);
                (x[k], y[k])
            }
        }
    }

    /// Adds a constant to the curve.
    pub fn shifted(&self, delta: f64) -> Self {
        let kind = match &self.kind {
            CurveKind::Morse(m) => CurveKind::Morse(Morse {
                asymptote: m.asymptote + delta,
                ..*m
            }),
            CurveKind::Pointwise(s) => {
                let (x, y) = s.nodes();
                let y = y.iter().map(|v| v + delta).collect();
                // Shifting nodes leaves the second derivatives unchanged.
                CurveKind::Pointwise(CubicSpline {
                    x: x.to_vec(),
                    y,
                    m: s.m.clone(),
                })
            }
        };
        Self {
            label: self.label.clone(),
            kind,
        }
    }
}

/// Anharmonicity ω_e x_e / ω_e used by [`calibrate_morse`].
pub const DEFAULT_ANHARMONICITY: f64 = 0.0035;

/// Minimum number of bound levels a calibrated Morse curve must support.
pub const MIN_BOUND_LEVELS: usize = 20;

const HARTREE_CM1: f64 = 219_474.631_363_2;

/// Morse curve whose equilibrium rotational constant and harmonic
/// frequency equal the targets, with the default anharmonicity.
pub fn calibrate_morse(b_e_cm1: f64, omega_e_cm1: f64, reduced_mass_da: f64, asymptote: f64) -> Result<PotentialCurve> {
    calibrate_morse_with(b_e_cm1, omega_e_cm1, reduced_mass_da, asymptote, DEFAULT_ANHARMONICITY)
}

/// As [`calibrate_morse`] with an explicit anharmonicity x_e, so that
/// D_e = ω_e / (4 x_e).
pub fn calibrate_morse_with(
    b_e_cm1: f64,
    omega_e_cm1: f64,
    reduced_mass_da: f64,
    asymptote: f64,
    x_e: f64,
) -> Result<PotentialCurve> {
    if !(b_e_cm1 > 0.0 && omega_e_cm1 > 0.0 && reduced_mass_da > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "targets must be positive: B_e = {b_e_cm1}, ω_e = {omega_e_cm1}, μ = {reduced_mass_da}"
        )));
    }
    if !(x_e > 0.0 && x_e.is_finite()) {
        return Err(Error::Calibration(format!("anharmonicity must be positive, got {x_e}")));
    }
    let mu = reduced_mass_da * DALTON_ME;
    let b_e = b_e_cm1 / HARTREE_CM1;
    let omega = omega_e_cm1 / HARTREE_CM1;
    let r_e = (1.0 / (2.0 * mu * b_e)).sqrt();
    let depth = omega / (4.0 * x_e);
    let a = omega * (mu / (2.0 * depth)).sqrt();
    let params = Morse {
        depth,
        r_e,
        a,
        asymptote,
    };
    let count = params.levels(mu).len();
    if count < MIN_BOUND_LEVELS {
        return Err(Error::Calibration(format!(
            "D_e = {:.3} cm⁻¹ supports only {count} bound levels (need {MIN_BOUND_LEVELS})",
            depth * HARTREE_CM1
        )));
    }
    PotentialCurve::morse(format!("morse(B_e={b_e_cm1}, w_e={omega_e_cm1})"), params)
}

/// Rotational constant B_e (cm⁻¹) that puts the minimum at `r_e` bohr.
pub fn rotational_constant_for(r_e: f64, reduced_mass_da: f64) -> f64 {
    HARTREE_CM1 / (2.0 * reduced_mass_da * DALTON_ME * r_e * r_e)
}

/// Spin–orbit coupling between the two channels of a [`CoupledModel`].
#[derive(Debug, Clone, PartialEq)]
pub enum Coupling {
    Constant(f64),
    Pointwise(CubicSpline),
}

impl Coupling {
    /// Coupling in Hartree; pointwise data are held constant beyond the nodes.
    pub fn eval(&self, r: f64) -> f64 {
        match self {
            Coupling::Constant(xi) => *xi,
            Coupling::Pointwise(s) => s.eval(r.clamp(s.x_min(), s.x_max())),
        }
    }
}

/// Two diabatic channels coupled by spin–orbit interaction. Channel 0 is
/// the optically bright one (A), channel 1 the dark one (b).
#[derive(Debug, Clone, PartialEq)]
pub struct CoupledModel {
    pub bright: PotentialCurve,
    pub dark: PotentialCurve,
    pub coupling: Coupling,
    /// Constant added to both channels (Hartree).
    pub shift: f64,
}

impl CoupledModel {
    pub fn new(bright: PotentialCurve, dark: PotentialCurve, coupling: Coupling) -> Self {
        Self {
            bright,
            dark,
            coupling,
            shift: 0.0,
        }
    }

    /// Lower of the two channel asymptotes, including the shift.
    pub fn asymptote(&self) -> f64 {
        self.bright.asymptote().min(self.dark.asymptote()) + self.shift
    }

    /// Radius where the diabatic curves cross, searched in [lo, hi].
    pub fn crossing_radius(&self, lo: f64, hi: f64) -> Option<f64> {
        let f = |r: f64| self.bright.eval(r) - self.dark.eval(r);
        crate::roots::brent(f, lo, hi, 1e-12, 200).ok().map(|root| root.x)
    }
}

/// The 2×2 diabatic potential matrix at `r`.
pub fn coupled_matrix(model: &CoupledModel, r: f64) -> Result<[[f64; 2]; 2]> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Range(format!("R = {r} bohr is outside (0, ∞)")));
    }
    let xi = model.coupling.eval(r);
    Ok([
        [model.bright.eval(r) + model.shift, xi],
        [xi, model.dark.eval(r) + model.shift],
    ])
}

/// Eigenvalues of a real symmetric 2×2 matrix, ascending.
pub fn eigenvalues_2x2(m: &[[f64; 2]; 2]) -> [f64; 2] {
    let mean = 0.5 * (m[0][0] + m[1][1]);
    let half_gap = (0.25 * (m[0][0] - m[1][1]).powi(2) + m[0][1] * m[1][0]).sqrt();
    [mean - half_gap, mean + half_gap]
}

/// Transition dipole moment as a function of R, in e·a₀.
#[derive(Debug, Clone, PartialEq)]
pub enum DipoleShape {
    Constant(f64),
    Pointwise(CubicSpline),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DipoleFunction {
    /// Electronic states connected, e.g. ("X", "A").
    pub pair: (String, String),
    pub shape: DipoleShape,
}

impl DipoleFunction {
    pub fn constant(lower: &str, upper: &str, value: f64) -> Self {
        Self {
            pair: (lower.into(), upper.into()),
            shape: DipoleShape::Constant(value),
        }
    }

    pub fn pointwise(lower: &str, upper: &str, data: PointwiseData) -> Result<Self> {
        if data.value_dimension != Dimension::DipoleMoment {
            return Err(Error::InvalidArgument(
                "dipole samples must carry dipole-moment units".into(),
            ));
        }
        Ok(Self {
            pair: (lower.into(), upper.into()),
            shape: DipoleShape::Pointwise(CubicSpline::new(data.r, data.values)?),
        })
    }

    /// Dipole in e·a₀; pointwise data are held constant beyond the nodes.
    pub fn eval(&self, r: f64) -> f64 {
        match &self.shape {
            DipoleShape::Constant(d) => *d,
            DipoleShape::Pointwise(s) => s.eval(r.clamp(s.x_min(), s.x_max())),
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let shape = match &self.shape {
            DipoleShape::Constant(d) => DipoleShape::Constant(d * factor),
            DipoleShape::Pointwise(s) => DipoleShape::Pointwise(CubicSpline {
                x: s.x.clone(),
                y: s.y.iter().map(|v| v * factor).collect(),
                m: s.m.iter().map(|v| v * factor).collect(),
            }),
        };
        Self {
            pair: self.pair.clone(),
            shape,
        }
    }
}
