//! Bracketed scalar root finding (Brent's method) and sign-change scans.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub fx: f64,
    /// Final bracket, `lo < hi`, containing a sign change.
    pub bracket: (f64, f64),
    pub iterations: usize,
}

/// Brent's method on [a, b]. Stops once the bracket is narrower than
/// `x_tol` or f vanishes exactly.
pub fn brent<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, x_tol: f64, max_iter: usize) -> Result<Root> {
    brent_checked(|x| Ok(f(x)), a, b, x_tol, max_iter)
}

/// As [`brent`] for objectives that can fail; the first error aborts.
pub fn brent_checked<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    a: f64,
    b: f64,
    x_tol: f64,
    max_iter: usize,
) -> Result<Root> {
    if !(a.is_finite() && b.is_finite()) || a == b {
        return Err(Error::InvalidArgument(format!("degenerate bracket [{a}, {b}]")));
    }
    let (mut a, mut b) = (a.min(b), a.max(b));
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    if fa.is_nan() || fb.is_nan() {
        return Err(Error::Numerical(format!("objective is NaN at the bracket [{a}, {b}]")));
    }
    if fa == 0.0 {
        return Ok(Root {
            x: a,
            fx: 0.0,
            bracket: (a, a),
            iterations: 0,
        });
    }
    if fb == 0.0 {
        return Ok(Root {
            x: b,
            fx: 0.0,
            bracket: (b, b),
            iterations: 0,
        });
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoRoot(format!(
            "no sign change on [{a}, {b}]: f({a}) = {fa:e}, f({b}) = {fb:e}"
        )));
    }

    // b is the best estimate, a the previous one, c the contrapoint.
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for iteration in 1..=max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * x_tol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            let (lo, hi) = if b < c { (b, c) } else { (c, b) };
            return Ok(Root {
                x: b,
                fx: fb,
                bracket: (lo, hi),
                iterations: iteration,
            });
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b)?;
        if fb.is_nan() {
            return Err(Error::Numerical(format!("objective is NaN at {b}")));
        }
    }
    Err(Error::Numerical(format!(
        "Brent iteration did not converge in {max_iter} steps"
    )))
}

/// Evaluates `f` on `points` equally spaced samples of [lo, hi] and
/// returns every adjacent pair whose values change sign. Samples where
/// `f` fails or is not finite break the chain instead of forming a pair.
pub fn sign_change_brackets<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    lo: f64,
    hi: f64,
    points: usize,
) -> Vec<(f64, f64)> {
    let points = points.max(2);
    let step = (hi - lo) / (points - 1) as f64;
    let mut out = Vec::new();
    let mut previous: Option<(f64, f64)> = None;
    for k in 0..points {
        let x = if k + 1 == points { hi } else { lo + step * k as f64 };
        let value = f(x).ok().filter(|v| v.is_finite());
        if let (Some((x0, f0)), Some(f1)) = (previous, value) {
            if f0 == 0.0 || f0.signum() != f1.signum() {
                out.push((x0, x));
            }
        }
        previous = value.map(|v| (x, v));
    }
    out
}
