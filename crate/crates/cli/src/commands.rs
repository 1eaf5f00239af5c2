use std::path::{Path, PathBuf};

use rayon::prelude::*;

use magic_trap::angular::HalfInt;
use magic_trap::hyperfine::{
    build_basis, solve, track_states, FieldConfiguration, MolecularConstants, QuadrupoleConvention, Terms,
};
use magic_trap::magic::{
    alpha_at, calibrate_gamma, find_magic_angle, magic_detunings, AngleProblem, MagicSolution, RotorState,
    StateSelector, DEFAULT_SCAN_POINTS,
};
use magic_trap::polarizability::{
    alpha_imag, Background, DipoleResolution, LevelSet, Line, PolarizabilitySpec, Transition,
};
use magic_trap::potentials::{load_pointwise, CoupledModel, Coupling, CubicSpline, DipoleFunction, PotentialCurve};
use magic_trap::radial::RadialGrid;
use magic_trap::surrogate::{NarbSurrogate, SurrogateParameters};
use magic_trap::units::{energy, Quantity, Unit};

use crate::config::{need, Loaded, RunConfig};
use crate::error::CliError;
use crate::output::{sci, Table};

pub struct Report {
    pub table: Table,
    pub summary: String,
}

fn cm1_to_hartree(x: f64) -> f64 {
    energy(x, Unit::InverseCm, Unit::Hartree)
}

fn hartree_to_cm1(x: f64) -> f64 {
    energy(x, Unit::Hartree, Unit::InverseCm)
}

fn linspace(start: f64, stop: f64, n: usize, key: &str) -> Result<Vec<f64>, CliError> {
    if n == 0 {
        return Err(CliError::Config(format!("`{key}` must be at least 1")));
    }
    if n == 1 {
        return Ok(vec![start]);
    }
    Ok((0..n)
        .map(|k| {
            if k == n - 1 {
                stop
            } else {
                start + (stop - start) * k as f64 / (n - 1) as f64
            }
        })
        .collect())
}

fn j_values(c: &RunConfig) -> Result<(Vec<u32>, i32), CliError> {
    let js = c.scan.j_values.clone().unwrap_or_else(|| (0..=5).collect());
    let m = c.scan.m.unwrap_or(0);
    if let Some(j) = js.iter().find(|&&j| m.unsigned_abs() > j) {
        return Err(CliError::Config(format!(
            "`scan.m` = {m} exceeds J = {j} in `scan.j_values`"
        )));
    }
    Ok((js, m))
}

fn theta(c: &RunConfig) -> f64 {
    c.fields.polarization_deg.unwrap_or(0.0).to_radians()
}

/// Closed-form spec of the v'=0 line with Γ given or calibrated.
pub fn detuning_spec(c: &RunConfig) -> Result<PolarizabilitySpec, CliError> {
    let m = &c.molecule;
    let template = PolarizabilitySpec {
        lines: vec![Line {
            v_prime: 0,
            hbar_omega: cm1_to_hartree(need(&m.transition_cm1, "molecule.transition_cm1")?),
            gamma: 1e-12,
            b_vprime: cm1_to_hartree(need(&m.b_vprime_cm1, "molecule.b_vprime_cm1")?),
        }],
        b_v: cm1_to_hartree(need(&m.b_v_cm1, "molecule.b_v_cm1")?),
        background: Background {
            parallel: need(&m.background_parallel_au, "molecule.background_parallel_au")?,
            perpendicular: need(&m.background_perpendicular_au, "molecule.background_perpendicular_au")?,
        },
    };
    let line = &c.line;
    match (line.gamma_au, line.calibrate_to_ghz) {
        (Some(_), Some(_)) => Err(CliError::Config(
            "set only one of `line.gamma_au` and `line.calibrate_to_ghz`".into(),
        )),
        (None, None) => Err(CliError::Config(
            "missing key `line.gamma_au` (or `line.calibrate_to_ghz`)".into(),
        )),
        (Some(gamma), None) => {
            let mut spec = template;
            spec.lines[0].gamma = gamma;
            spec.validate()?;
            Ok(spec)
        }
        (None, Some(target)) => Ok(calibrate_gamma(
            &template,
            0,
            line.calibrate_j_a.unwrap_or(0),
            line.calibrate_j_b.unwrap_or(1),
            line.calibrate_m.unwrap_or(0),
            theta(c),
            target,
        )?),
    }
}

fn surrogate_parameters(c: &RunConfig) -> SurrogateParameters {
    let d = SurrogateParameters::default();
    let s = &c.surrogate;
    SurrogateParameters {
        reduced_mass_da: c.molecule.reduced_mass_da.unwrap_or(d.reduced_mass_da),
        anharmonicity: s.anharmonicity.unwrap_or(d.anharmonicity),
        x_r_e: s.x_r_e_bohr.unwrap_or(d.x_r_e),
        x_omega_e_cm1: s.x_omega_e_cm1.unwrap_or(d.x_omega_e_cm1),
        b_b_e_cm1: s.b_b_e_cm1.unwrap_or(d.b_b_e_cm1),
        b_omega_e_cm1: s.b_omega_e_cm1.unwrap_or(d.b_omega_e_cm1),
        a_r_e: s.a_r_e_bohr.unwrap_or(d.a_r_e),
        a_omega_e_cm1: s.a_omega_e_cm1.unwrap_or(d.a_omega_e_cm1),
        crossing_radius: s.crossing_radius_bohr.unwrap_or(d.crossing_radius),
        xi_cm1: s.xi_cm1.unwrap_or(d.xi_cm1),
        transition_cm1: c.molecule.transition_cm1.unwrap_or(d.transition_cm1),
        dipole_xa: s.dipole_xa_ea0.unwrap_or(d.dipole_xa),
    }
}

fn grid(c: &RunConfig) -> Result<RadialGrid, CliError> {
    let d = RadialGrid::default();
    let g = &c.grid;
    Ok(RadialGrid::new(
        g.r_min_bohr.unwrap_or(d.r_min),
        g.r_max_bohr.unwrap_or(d.r_max),
        g.points.unwrap_or(d.n),
    )?)
}

fn parse_unit(value: &Option<String>, key: &str) -> Result<Option<Unit>, CliError> {
    value
        .as_deref()
        .map(|s| s.parse::<Unit>().map_err(|e| CliError::Config(format!("`{key}`: {e}"))))
        .transpose()
}

/// Surrogate curves, or pointwise curves from `[potentials]`.
pub fn molecular_model(loaded: &Loaded) -> Result<NarbSurrogate, CliError> {
    let c = &loaded.config;
    let params = surrogate_parameters(c);
    let grid = grid(c)?;
    let files = &c.potentials;
    if files.is_empty() {
        return Ok(NarbSurrogate::new(params, grid)?);
    }
    let r_unit = parse_unit(&files.r_unit, "potentials.r_unit")?;
    let e_unit = parse_unit(&files.energy_unit, "potentials.energy_unit")?;
    let d_unit = parse_unit(&files.dipole_unit, "potentials.dipole_unit")?;
    let declared = |value: Option<Unit>| match (r_unit, value) {
        (Some(r), Some(v)) => Ok(Some((r, v))),
        (None, None) => Ok(None),
        _ => Err(CliError::Config(
            "`potentials.r_unit` and the value unit must be given together".into(),
        )),
    };
    let path = |p: &Option<PathBuf>, key: &str| -> Result<PathBuf, CliError> {
        let p = need(p, key)?;
        Ok(if p.is_absolute() { p } else { loaded.base_dir.join(p) })
    };
    let curve = |key: &str, label: &str, file: &Option<PathBuf>| -> Result<PotentialCurve, CliError> {
        let data = load_pointwise(&path(file, key)?, declared(e_unit)?)?;
        Ok(PotentialCurve::pointwise(label, data)?)
    };
    let ground = curve("potentials.ground_file", "X", &files.ground_file)?;
    let bright = curve("potentials.bright_file", "A", &files.bright_file)?;
    let dark = curve("potentials.dark_file", "b", &files.dark_file)?;
    let coupling = match &files.coupling_file {
        Some(_) => {
            let data = load_pointwise(
                &path(&files.coupling_file, "potentials.coupling_file")?,
                declared(e_unit)?,
            )?;
            Coupling::Pointwise(CubicSpline::new(data.r, data.values)?)
        }
        None => Coupling::Constant(cm1_to_hartree(params.xi_cm1)),
    };
    let dipole = match &files.dipole_file {
        Some(_) => {
            let data = load_pointwise(&path(&files.dipole_file, "potentials.dipole_file")?, declared(d_unit)?)?;
            DipoleFunction::pointwise("X", "A", data)?
        }
        None => DipoleFunction::constant("X", "A", params.dipole_xa),
    };
    Ok(NarbSurrogate::from_curves(
        params,
        ground,
        CoupledModel::new(bright, dark, coupling),
        dipole,
        grid,
    )?)
}

pub fn solve_rovib(loaded: &Loaded) -> Result<Report, CliError> {
    let c = &loaded.config;
    let model = molecular_model(loaded)?;
    let js = c.scan.j_values.clone().unwrap_or_else(|| (0..=5).collect());
    let per_j = c.scan.levels_per_j.unwrap_or(5);
    let solved: Vec<_> = js
        .par_iter()
        .map(|&j| -> Result<_, CliError> { Ok((j, model.ground_levels(j)?, model.excited_levels(j)?)) })
        .collect::<Result<_, _>>()?;
    let mut table = Table::new(&[
        "curve",
        "v",
        "J",
        "energy_cm1",
        "rotational_constant_cm1",
        "bright_fraction",
        "near_threshold",
    ]);
    let mut count = 0;
    for (j, ground, excited) in &solved {
        for (curve, levels) in [("X", ground), ("A-b", excited)] {
            for level in levels.iter().take(per_j) {
                table.push(vec![
                    curve.to_string(),
                    level.v.to_string(),
                    j.to_string(),
                    sci(hartree_to_cm1(level.energy)),
                    sci(hartree_to_cm1(level.rotational_constant(model.mu))),
                    sci(level.channel_fractions[0]),
                    u8::from(level.near_threshold).to_string(),
                ]);
                count += 1;
            }
        }
    }
    Ok(Report {
        table,
        summary: format!("solve-rovib: {count} levels for J in {js:?}"),
    })
}

pub fn alpha_scan(loaded: &Loaded) -> Result<Report, CliError> {
    let c = &loaded.config;
    let spec = detuning_spec(c)?;
    let (js, m) = j_values(c)?;
    let detunings = linspace(
        need(&c.scan.detuning_start_ghz, "scan.detuning_start_ghz")?,
        need(&c.scan.detuning_stop_ghz, "scan.detuning_stop_ghz")?,
        need(&c.scan.detuning_points, "scan.detuning_points")?,
        "scan.detuning_points",
    )?;
    let theta = theta(c);
    let jobs: Vec<(u32, f64)> = js
        .iter()
        .flat_map(|&j| detunings.iter().map(move |&d| (j, d)))
        .collect();
    let values: Vec<f64> = jobs
        .par_iter()
        .map(|&(j, d)| match alpha_at(&spec, RotorState::new(j, m), theta, d) {
            Ok(v) => Ok(v),
            Err(magic_trap::Error::PoleProximity(_)) => Ok(f64::NAN),
            Err(e) => Err(CliError::from(e)),
        })
        .collect::<Result<_, _>>()?;
    let mut table = Table::new(&["detuning_GHz", "J", "M", "alpha_au"]);
    let mut poles = 0;
    for (&(j, d), &a) in jobs.iter().zip(&values) {
        if a.is_nan() {
            poles += 1;
            log::warn!("J={j}, Δ/h = {d} GHz lies on a pole; written as NaN");
        }
        table.push(vec![sci(d), j.to_string(), m.to_string(), sci(a)]);
    }
    Ok(Report {
        table,
        summary: format!(
            "alpha-scan: Γ = {:.6e} au, {} curves × {} detunings ({poles} pole samples)",
            spec.lines[0].gamma,
            js.len(),
            detunings.len()
        ),
    })
}

pub fn imag_scan(loaded: &Loaded) -> Result<Report, CliError> {
    let c = &loaded.config;
    let model = molecular_model(loaded)?;
    let (js, m) = j_values(c)?;
    let retained = c.scan.retained_levels.unwrap_or(12);
    let wavenumbers = linspace(
        need(&c.scan.wavenumber_start_cm1, "scan.wavenumber_start_cm1")?,
        need(&c.scan.wavenumber_stop_cm1, "scan.wavenumber_stop_cm1")?,
        need(&c.scan.wavenumber_points, "scan.wavenumber_points")?,
        "scan.wavenumber_points",
    )?;
    let mut needed_ground: Vec<u32> = js.clone();
    needed_ground.push(0);
    let mut needed_excited: Vec<u32> = js.iter().flat_map(|&j| [j.saturating_sub(1), j + 1]).collect();
    needed_excited.push(1);
    needed_ground.sort_unstable();
    needed_ground.dedup();
    needed_excited.sort_unstable();
    needed_excited.dedup();
    let ground: Vec<_> = needed_ground
        .par_iter()
        .map(|&j| Ok::<_, CliError>((j, model.ground_levels(j)?)))
        .collect::<Result<_, _>>()?;
    let excited: Vec<_> = needed_excited
        .par_iter()
        .map(|&j| Ok::<_, CliError>((j, model.excited_levels(j)?)))
        .collect::<Result<_, _>>()?;
    let levels = LevelSet {
        ground: ground.into_iter().collect(),
        excited: excited.into_iter().collect(),
    };
    let routes = model.decay_routes();
    let transitions: Vec<Vec<Transition>> = js
        .iter()
        .map(|&j| {
            levels.transitions(
                0,
                j,
                retained,
                &model.dipole,
                0,
                DipoleResolution::Rotational,
                Some(&routes),
            )
        })
        .collect::<Result<_, _>>()?;
    let lowest = transitions
        .iter()
        .flatten()
        .map(|t| t.energy)
        .fold(f64::INFINITY, f64::min);
    let theta = theta(c);
    let jobs: Vec<(usize, f64)> = (0..js.len())
        .flat_map(|i| wavenumbers.iter().map(move |&w| (i, w)))
        .collect();
    let values: Vec<f64> = jobs
        .par_iter()
        .map(
            |&(i, w)| match alpha_imag(&transitions[i], cm1_to_hartree(w), js[i], m, theta) {
                Ok(v) => Ok(v.imag),
                Err(magic_trap::Error::PoleProximity(_)) => Ok(f64::NAN),
                Err(e) => Err(CliError::from(e)),
            },
        )
        .collect::<Result<_, _>>()?;
    let mut table = Table::new(&["wavenumber_cm1", "J", "M", "imag_alpha_au"]);
    for (&(i, w), &v) in jobs.iter().zip(&values) {
        table.push(vec![sci(w), js[i].to_string(), m.to_string(), sci(v)]);
    }
    let above = wavenumbers.iter().filter(|&&w| cm1_to_hartree(w) >= lowest).count();
    if above > 0 {
        log::warn!("{above} wavenumbers lie at or above the lowest resonance");
    }
    Ok(Report {
        table,
        summary: format!(
            "imag-scan: {} curves × {} wavenumbers, {retained} levels per J', lowest resonance {:.4} cm⁻¹",
            js.len(),
            wavenumbers.len(),
            hartree_to_cm1(lowest)
        ),
    })
}

fn half_int(value: Option<f64>, key: &str) -> Result<HalfInt, CliError> {
    HalfInt::from_f64(need(&value, key)?).map_err(|e| CliError::Config(format!("`{key}`: {e}")))
}

/// Hyperfine constants, fields and terms from the config.
pub fn hyperfine_setup(c: &RunConfig) -> Result<(FieldConfiguration, Terms, u32), CliError> {
    let h = &c.hyperfine;
    let pair = |a: Option<f64>, b: Option<f64>| a.zip(b).map(|(a, b)| [a, b]);
    let rotational = h
        .rotational_constant_mhz
        .or_else(|| c.molecule.b_v_cm1.map(|b| energy(b, Unit::InverseCm, Unit::MHz)));
    let constants = MolecularConstants {
        rotational_constant_mhz: rotational,
        eqq_mhz: pair(h.eqq_na_mhz, h.eqq_rb_mhz),
        spins: [
            half_int(h.spin_na, "hyperfine.spin_na")?,
            half_int(h.spin_rb, "hyperfine.spin_rb")?,
        ],
        g_factors: pair(h.g_na, h.g_rb),
        dipole_debye: h.dipole_debye,
        alpha_parallel: h.alpha_parallel_hz_w_cm2,
        alpha_perpendicular: h.alpha_perpendicular_hz_w_cm2,
    };
    let mut fields = FieldConfiguration::new(constants);
    let f = &c.fields;
    fields.b_field_gauss = f.b_field_gauss.unwrap_or(0.0);
    fields.e_field_kv_cm = f.e_field_kv_cm.unwrap_or(0.0);
    fields.intensity_w_cm2 = need(&f.intensity_w_cm2, "fields.intensity_w_cm2")?;
    fields.wavelength_nm = f.wavelength_nm;
    fields = fields.with_polarization_angle(theta(c));
    fields.quadrupole = match h.quadrupole_convention.as_deref().unwrap_or("standard") {
        "standard" => QuadrupoleConvention::Standard,
        "literal" => QuadrupoleConvention::Literal,
        other => {
            return Err(CliError::Config(format!(
                "`hyperfine.quadrupole_convention` must be \"standard\" or \"literal\", got \"{other}\""
            )))
        }
    };
    fields.validate()?;
    let terms = match &h.terms {
        None => Terms::ALL,
        Some(names) => {
            let mut t = Terms::NONE;
            for n in names {
                match n.as_str() {
                    "rotation" => t.rotation = true,
                    "quadrupole" => t.quadrupole = true,
                    "zeeman" => t.zeeman = true,
                    "stark" => t.stark = true,
                    "polarization" => t.polarization = true,
                    other => return Err(CliError::Config(format!("`hyperfine.terms`: unknown term \"{other}\""))),
                }
            }
            t
        }
    };
    Ok((fields, terms, h.j_max.unwrap_or(1)))
}

pub fn hyperfine_scan(loaded: &Loaded) -> Result<Report, CliError> {
    let c = &loaded.config;
    let (fields, terms, j_max) = hyperfine_setup(c)?;
    let basis = build_basis(j_max, fields.constants.spins[0], fields.constants.spins[1])?;
    let angles = linspace(
        need(&c.scan.angle_start_deg, "scan.angle_start_deg")?,
        need(&c.scan.angle_stop_deg, "scan.angle_stop_deg")?,
        need(&c.scan.angle_points, "scan.angle_points")?,
        "scan.angle_points",
    )?;
    let solutions: Vec<_> = angles
        .par_iter()
        .map(|&deg| {
            let f = fields.with_polarization_angle(deg.to_radians());
            solve(&basis, &f, terms).map_err(CliError::from)
        })
        .collect::<Result<_, _>>()?;
    let n = basis.dim();
    let mut order: Vec<usize> = (0..n).collect();
    let mut table = Table::new(&[
        "theta_deg",
        "state",
        "J",
        "M",
        "weight",
        "energy_MHz",
        "alpha_Hz_per_W_cm2",
    ]);
    for (k, sol) in solutions.iter().enumerate() {
        if k > 0 {
            let perm = track_states(&solutions[k - 1], sol)?;
            order = order.iter().map(|&i| perm[i]).collect();
        }
        let alphas = sol
            .polarizabilities
            .as_ref()
            .ok_or_else(|| CliError::Numerical("solver returned no polarizabilities".into()))?;
        for (state, &i) in order.iter().enumerate() {
            let label = sol.labels[i];
            table.push(vec![
                sci(angles[k]),
                state.to_string(),
                label.j.to_string(),
                label.m.to_string(),
                sci(label.weight),
                sci(sol.eigenvalues[i]),
                sci(alphas[i]),
            ]);
        }
    }
    Ok(Report {
        table,
        summary: format!("hyperfine-scan: {n} states × {} angles", angles.len()),
    })
}

fn rotor_state(text: &str, key: &str) -> Result<RotorState, CliError> {
    let bad = || CliError::Config(format!("`{key}` = \"{text}\" is not of the form \"J=<j>,M=<m>\""));
    let (j, m) = text.split_once(',').ok_or_else(bad)?;
    let j = j
        .trim()
        .strip_prefix("J=")
        .ok_or_else(bad)?
        .trim()
        .parse()
        .map_err(|_| bad())?;
    let m = m
        .trim()
        .strip_prefix("M=")
        .ok_or_else(bad)?
        .trim()
        .parse()
        .map_err(|_| bad())?;
    Ok(RotorState::new(j, m))
}

fn selector(text: &str, key: &str) -> Result<StateSelector, CliError> {
    if let Some(index) = text.trim().strip_prefix("dressed=") {
        let index = index
            .trim()
            .parse()
            .map_err(|_| CliError::Config(format!("`{key}` = \"{text}\": bad eigenstate index")))?;
        return Ok(StateSelector::Dressed { index });
    }
    let s = rotor_state(text, key)?;
    Ok(StateSelector::Pure { j: s.j, m: s.m })
}

fn solution_row(s: &MagicSolution, unit: &str) -> Vec<String> {
    vec![
        format!("{:?}", s.kind).to_lowercase(),
        sci(s.location),
        unit.to_string(),
        s.state_a.clone(),
        s.state_b.clone(),
        sci(s.residual),
        sci(s.bracket.0),
        sci(s.bracket.1),
        s.iterations.to_string(),
    ]
}

pub fn magic_find(loaded: &Loaded) -> Result<Report, CliError> {
    let c = &loaded.config;
    let mg = &c.magic;
    let mode = need(&mg.mode, "magic.mode")?;
    let a = need(&mg.state_a, "magic.state_a")?;
    let b = need(&mg.state_b, "magic.state_b")?;
    let mut table = Table::new(&[
        "kind",
        "location",
        "unit",
        "state_a",
        "state_b",
        "residual",
        "bracket_lo",
        "bracket_hi",
        "iterations",
    ]);
    let summary = match mode.as_str() {
        "detuning" => {
            let spec = detuning_spec(c)?;
            let (sa, sb) = (rotor_state(&a, "magic.state_a")?, rotor_state(&b, "magic.state_b")?);
            if sa.m != sb.m {
                return Err(CliError::Config(format!(
                    "`magic.state_a` and `magic.state_b` must share M for a detuning search, got {} and {}",
                    sa.m, sb.m
                )));
            }
            let [lo, hi] = need(&mg.bracket_ghz, "magic.bracket_ghz")?;
            let roots = magic_detunings(&spec, sa.j, sb.j, sa.m, theta(c), (lo, hi), DEFAULT_SCAN_POINTS)?;
            if roots.is_empty() {
                return Err(CliError::Numerical(format!(
                    "no crossing of {a} and {b} in `magic.bracket_ghz` = [{lo}, {hi}] GHz"
                )));
            }
            for r in &roots {
                table.push(solution_row(r, "GHz"));
            }
            let list: Vec<String> = roots.iter().map(|r| format!("{:.6}", r.location)).collect();
            format!("magic-find: {a} / {b} cross at Δ/h = {} GHz", list.join(", "))
        }
        "angle" => {
            let (fields, terms, j_max) = hyperfine_setup(c)?;
            let basis = build_basis(j_max, fields.constants.spins[0], fields.constants.spins[1])?;
            let problem = AngleProblem {
                basis: &basis,
                fields,
                terms,
            };
            let [lo, hi] = need(&mg.bracket_deg, "magic.bracket_deg")?;
            let root = find_magic_angle(
                &problem,
                selector(&a, "magic.state_a")?,
                selector(&b, "magic.state_b")?,
                (lo, hi),
            )?;
            table.push(solution_row(&root, "deg"));
            format!("magic-find: {a} / {b} magic angle θ = {:.6}°", root.location)
        }
        other => {
            return Err(CliError::Config(format!(
                "`magic.mode` must be \"detuning\" or \"angle\", got \"{other}\""
            )))
        }
    };
    Ok(Report { table, summary })
}

pub fn calibrate(loaded: &Loaded) -> Result<Report, CliError> {
    let c = &loaded.config;
    let target = need(&c.line.calibrate_to_ghz, "line.calibrate_to_ghz")?;
    let mut probe = c.clone();
    probe.line.gamma_au = None;
    let spec = detuning_spec(&probe)?;
    let gamma = spec.lines[0].gamma;
    let per_second = Quantity::new(gamma, Unit::AtomicRate).value_in(Unit::PerSecond)?;
    let (ja, jb, m) = (
        c.line.calibrate_j_a.unwrap_or(0),
        c.line.calibrate_j_b.unwrap_or(1),
        c.line.calibrate_m.unwrap_or(0),
    );
    let mut table = Table::new(&["v_prime", "J_a", "J_b", "M", "target_GHz", "gamma_au", "gamma_per_s"]);
    table.push(vec![
        "0".into(),
        ja.to_string(),
        jb.to_string(),
        m.to_string(),
        sci(target),
        sci(gamma),
        sci(per_second),
    ]);
    Ok(Report {
        table,
        summary: format!(
            "calibrate: Γ = {gamma:.6e} au ({per_second:.6e} s⁻¹) puts the J={ja}/J={jb} crossing at {target} GHz"
        ),
    })
}

pub fn output_path(out: &Path, name: &str) -> PathBuf {
    out.join(format!("{name}.csv"))
}
