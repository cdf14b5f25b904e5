//! Small root-finding helpers shared by the threshold and region code.

use crate::error::{Error, Result};

pub const BISECT_TOL: f64 = 1e-12;
pub const BISECT_MAX_ITER: usize = 200;

/// Bisection on a bracket whose endpoints have opposite signs.
///
/// Stops when the bracket is narrower than `tol` or after `BISECT_MAX_ITER`
/// halvings. An exact zero at either end is returned as is.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if !(flo.signum() != fhi.signum()) || flo.is_nan() || fhi.is_nan() {
        return Err(Error::NoConvergence(format!(
            "bracket [{lo}, {hi}] does not change sign ({flo}, {fhi})"
        )));
    }
    for _ in 0..BISECT_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid == lo || mid == hi {
            return Ok(mid);
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Scan `[start, end]` with a fixed step for the first sign change of `f`
/// and refine it by bisection. Works in either direction.
pub fn first_root_by_scan<F: Fn(f64) -> f64>(f: F, start: f64, end: f64, step: f64) -> Result<f64> {
    let dir = if end >= start { 1.0 } else { -1.0 };
    let n = ((end - start).abs() / step).ceil() as usize;
    let mut a = start;
    let mut fa = f(a);
    for i in 1..=n {
        let b = if i == n { end } else { start + dir * step * i as f64 };
        let fb = f(b);
        if fa == 0.0 {
            return Ok(a);
        }
        if fa.is_finite() && fb.is_finite() && fa.signum() != fb.signum() {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            return bisect(&f, lo, hi, BISECT_TOL);
        }
        a = b;
        fa = fb;
    }
    Err(Error::NoConvergence(format!("no sign change on [{start}, {end}]")))
}

/// Evenly spaced grid with `n >= 2` points including both ends.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}
