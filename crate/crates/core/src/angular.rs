//! Angular-momentum algebra: Wigner 3-j symbols, matrix elements of the
//! reduced spherical harmonics C_kq in a rotor basis, and the closed-form
//! angular factors and resonance offsets of the near-resonant
//! polarizability.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A half-integer stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt(i32);

impl HalfInt {
    pub const fn from_doubled(twice: i32) -> Self {
        HalfInt(twice)
    }

    pub const fn from_int(value: i32) -> Self {
        HalfInt(2 * value)
    }

    /// Rejects anything that is not a multiple of 1/2.
    pub fn from_f64(value: f64) -> Result<Self> {
        let twice = 2.0 * value;
        if !twice.is_finite() || (twice - twice.round()).abs() > 1e-9 || twice.abs() > 1e6 {
            return Err(Error::InvalidArgument(format!("{value} is not a half-integer")));
        }
        Ok(HalfInt(twice.round() as i32))
    }

    pub const fn doubled(self) -> i32 {
        self.0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
}

impl From<i32> for HalfInt {
    fn from(value: i32) -> Self {
        HalfInt::from_int(value)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

fn factorial(n: i32) -> BigInt {
    debug_assert!(n >= 0);
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn check_pair(j: HalfInt, m: HalfInt) -> Result<()> {
    if j.0 < 0 {
        return Err(Error::InvalidArgument(format!("negative angular momentum {j}")));
    }
    if m.0.abs() > j.0 {
        return Err(Error::InvalidArgument(format!("|m| = |{m}| exceeds j = {j}")));
    }
    if (j.0 - m.0) % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "j = {j} and m = {m} differ by a non-integer"
        )));
    }
    Ok(())
}

/// Wigner 3-j symbol by the Racah summation.
///
/// The alternating sum and the square-root prefactor are accumulated as
/// exact big rationals; only the final square root is taken in floating
/// point, so the result is correctly rounded to f64 for any j that fits in
/// memory. Returns 0 when the triangle rule, the projection sum or the
/// integer-perimeter condition fails.
pub fn wigner3j(j1: HalfInt, j2: HalfInt, j3: HalfInt, m1: HalfInt, m2: HalfInt, m3: HalfInt) -> Result<f64> {
    check_pair(j1, m1)?;
    check_pair(j2, m2)?;
    check_pair(j3, m3)?;

    let (dj1, dj2, dj3) = (j1.0, j2.0, j3.0);
    let (dm1, dm2, dm3) = (m1.0, m2.0, m3.0);
    if dm1 + dm2 + dm3 != 0 {
        return Ok(0.0);
    }
    if (dj1 + dj2 + dj3) % 2 != 0 {
        return Ok(0.0);
    }
    if dj3 > dj1 + dj2 || dj3 < (dj1 - dj2).abs() {
        return Ok(0.0);
    }

    // All of these are integers once the checks above pass.
    let half = |x: i32| x / 2;
    let a = half(dj1 + dj2 - dj3);
    let b = half(dj1 - dj2 + dj3);
    let c = half(-dj1 + dj2 + dj3);
    let perimeter = half(dj1 + dj2 + dj3);

    let k_min = 0.max(half(dj2 - dj3 - dm1)).max(half(dj1 - dj3 + dm2));
    let k_max = a.min(half(dj1 - dm1)).min(half(dj2 + dm2));
    if k_min > k_max {
        return Ok(0.0);
    }

    let mut sum = BigRational::zero();
    for k in k_min..=k_max {
        let denom = factorial(k)
            * factorial(half(dj3 - dj2 + dm1) + k)
            * factorial(half(dj3 - dj1 - dm2) + k)
            * factorial(a - k)
            * factorial(half(dj1 - dm1) - k)
            * factorial(half(dj2 + dm2) - k);
        let term = BigRational::new(BigInt::one(), denom);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    if sum.is_zero() {
        return Ok(0.0);
    }

    let prefactor = BigRational::new(
        factorial(a)
            * factorial(b)
            * factorial(c)
            * factorial(half(dj1 + dm1))
            * factorial(half(dj1 - dm1))
            * factorial(half(dj2 + dm2))
            * factorial(half(dj2 - dm2))
            * factorial(half(dj3 + dm3))
            * factorial(half(dj3 - dm3)),
        factorial(perimeter + 1),
    );
    let square = &prefactor * &sum * &sum;
    let magnitude = square
        .to_f64()
        .ok_or_else(|| Error::Numerical("3-j symbol overflowed f64".into()))?
        .sqrt();

    let phase_exponent = half(dj1 - dj2 - dm3);
    let mut sign = if phase_exponent.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    if sum.is_negative() {
        sign = -sign;
    }
    Ok(sign * magnitude)
}

/// Integer-argument convenience wrapper around [`wigner3j`].
pub fn wigner3j_int(j1: i32, j2: i32, j3: i32, m1: i32, m2: i32, m3: i32) -> Result<f64> {
    wigner3j(j1.into(), j2.into(), j3.into(), m1.into(), m2.into(), m3.into())
}

/// Clebsch–Gordan coefficient ⟨j1 m1; j2 m2 | j m⟩.
pub fn clebsch_gordan(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt, j: HalfInt, m: HalfInt) -> Result<f64> {
    let w = wigner3j(j1, j2, j, m1, m2, HalfInt(-m.0))?;
    let exponent = (j1.0 - j2.0 + m.0) / 2;
    let phase = if exponent.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    Ok(phase * f64::from(j.0 + 1).sqrt() * w)
}

/// ⟨J' M'| C_kq |J M⟩ for the reduced spherical harmonic
/// C_kq = sqrt(4π/(2k+1)) Y_kq of the molecular axis.
pub fn rot_tensor_element(jp: i32, mp: i32, k: i32, q: i32, j: i32, m: i32) -> Result<f64> {
    if jp < 0 || j < 0 || k < 0 {
        return Err(Error::InvalidArgument(format!(
            "negative angular momentum in ⟨{jp} {mp}|C_{k}{q}|{j} {m}⟩"
        )));
    }
    if mp.abs() > jp || m.abs() > j || q.abs() > k {
        return Err(Error::InvalidArgument(format!(
            "projection out of range in ⟨{jp} {mp}|C_{k}{q}|{j} {m}⟩"
        )));
    }
    if mp != m + q || (jp + k + j) % 2 != 0 || jp > j + k || jp < (j - k).abs() {
        return Ok(0.0);
    }
    let phase = if mp.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let reduced = wigner3j_int(jp, k, j, 0, 0, 0)?;
    let projection = wigner3j_int(jp, k, j, -mp, q, m)?;
    Ok(phase * f64::from((2 * jp + 1) * (2 * j + 1)).sqrt() * reduced * projection)
}

/// Angular weights of the J → J−1 (`a`) and J → J+1 (`b`) branches of a
/// parallel transition driven by light linearly polarized at `theta_p` to
/// the quantization axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularFactors {
    pub a: f64,
    pub b: f64,
    pub j: u32,
    pub m: i32,
    pub theta_p: f64,
}

impl AngularFactors {
    pub fn sum(&self) -> f64 {
        self.a + self.b
    }
}

pub fn angular_factors(j: u32, m: i32, theta_p: f64) -> Result<AngularFactors> {
    let jf = f64::from(j);
    let mf = f64::from(m);
    if m.unsigned_abs() > j {
        return Err(Error::InvalidArgument(format!("|M| = {} exceeds J = {j}", m.abs())));
    }
    let cos2 = theta_p.cos().powi(2);
    let sin2 = theta_p.sin().powi(2);
    let m2 = mf * mf;

    let a = if j == 0 {
        0.0
    } else if m.unsigned_abs() < j {
        let denom = 2.0 * (2.0 * jf + 1.0) * (2.0 * jf - 1.0);
        (jf * (jf + 1.0) - 3.0 * m2) / denom * cos2 + ((jf - 1.0) * jf + m2) / denom
    } else {
        let am = mf.abs();
        (jf + am) * (jf + am - 1.0) / (4.0 * (2.0 * jf + 1.0) * (2.0 * jf - 1.0)) * sin2
    };
    let denom_b = 2.0 * (2.0 * jf + 1.0) * (2.0 * jf + 3.0);
    let b = (jf * (jf + 1.0) - 3.0 * m2) / denom_b * cos2 + ((jf + 1.0) * (jf + 2.0) + m2) / denom_b;

    Ok(AngularFactors { a, b, j, m, theta_p })
}

/// Detuning offsets of the J → J−1 (`l`) and J → J+1 (`r`) branches,
/// in the unit of the rotational constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonanceOffsets {
    pub l: f64,
    pub r: f64,
    pub b_v: f64,
    pub b_vprime: f64,
}

pub fn resonance_offsets(j: u32, b_v: f64, b_vprime: f64) -> Result<ResonanceOffsets> {
    if !(b_v > 0.0 && b_vprime > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "rotational constants must be positive, got {b_v} and {b_vprime}"
        )));
    }
    let jf = f64::from(j);
    let ground = jf * (jf + 1.0) * b_v;
    let l = ground - (jf * (jf - 1.0) - 2.0) * b_vprime;
    let r = ground - ((jf + 1.0) * (jf + 2.0) - 2.0) * b_vprime;
    Ok(ResonanceOffsets { l, r, b_v, b_vprime })
}

/// Sum over final projections of |⟨J' M'| ε·n̂ |J M⟩|² for a real unit
/// polarization vector in the xz-plane at `theta_p` from z.
///
/// Built from [`rot_tensor_element`], independently of the closed-form
/// [`angular_factors`]; the two agree branch by branch.
pub fn branch_weight(jp: u32, j: u32, m: i32, theta_p: f64) -> Result<f64> {
    let (jp, j) = (jp as i32, j as i32);
    let (s, c) = theta_p.sin_cos();
    // ε·n̂ = cosθ C_10 + sinθ (C_1,−1 − C_1,+1)/√2
    let mut total = 0.0;
    for mp in (m - 1)..=(m + 1) {
        if mp.abs() > jp {
            continue;
        }
        let q = mp - m;
        let element = match q {
            0 => c * rot_tensor_element(jp, mp, 1, 0, j, m)?,
            -1 => s * rot_tensor_element(jp, mp, 1, -1, j, m)? / std::f64::consts::SQRT_2,
            1 => -s * rot_tensor_element(jp, mp, 1, 1, j, m)? / std::f64::consts::SQRT_2,
            _ => unreachable!(),
        };
        total += element * element;
    }
    Ok(total)
}
