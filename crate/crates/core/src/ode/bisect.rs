use crate::error::{Error, Result};

/// Bisection for the sign change of `f` on `[lo, hi]`, stopping when the bracket
/// is narrower than `tol` or no longer shrinks in floating point.
pub fn bisect_root<F>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if !(flo.signum() != fhi.signum()) || flo.is_nan() || fhi.is_nan() {
        return Err(Error::NotBracketed { target: 0.0, lo, hi });
    }
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm.is_nan() {
            return Err(Error::NonFinite(format!("bisection function at {mid}")));
        }
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

/// Illinois false position for the sign change of `f` on `[lo, hi]`.
///
/// Every iterate stays inside the current bracket; stops when the bracket is
/// narrower than `tol` or `|f| <= ftol`.
pub fn false_position_root<F>(f: F, mut lo: f64, mut hi: f64, tol: f64, ftol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let (mut flo, mut fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if !(flo.signum() != fhi.signum()) || flo.is_nan() || fhi.is_nan() {
        return Err(Error::NotBracketed { target: 0.0, lo, hi });
    }
    let mut side = 0i8;
    for _ in 0..200 {
        let mut x = (lo * fhi - hi * flo) / (fhi - flo);
        if !(x > lo && x < hi) {
            x = 0.5 * (lo + hi);
        }
        let fx = f(x);
        if fx.is_nan() {
            return Err(Error::NonFinite(format!("root function at {x}")));
        }
        if fx.abs() <= ftol {
            return Ok(x);
        }
        if fx.signum() == flo.signum() {
            lo = x;
            flo = fx;
            if side == -1 {
                fhi *= 0.5;
            }
            side = -1;
        } else {
            hi = x;
            fhi = fx;
            if side == 1 {
                flo *= 0.5;
            }
            side = 1;
        }
        if hi - lo <= tol {
            break;
        }
    }
    Ok(if flo.abs() < fhi.abs() { lo } else { hi })
}

/// Solves `f(v) = target` for an increasing `f` on `[lo, hi]`.
pub fn bisect_increasing<F>(f: F, lo: f64, hi: f64, target: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let (flo, fhi) = (f(lo), f(hi));
    if !(flo <= target && target <= fhi) {
        return Err(Error::NotBracketed { target, lo, hi });
    }
    bisect_root(|v| f(v) - target, lo, hi, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two() {
        let r = bisect_root(|x| x * x - 2.0, 0.0, 2.0, 1e-14).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn false_position_agrees_with_bisection() {
        let f = |x: f64| x.exp() - 3.0 * x - 0.5;
        let a = bisect_root(f, 1.0, 3.0, 1e-14).unwrap();
        let b = false_position_root(f, 1.0, 3.0, 1e-14, 1e-15).unwrap();
        assert!((a - b).abs() < 1e-12, "{a} {b}");
        assert!(false_position_root(f, 0.0, 0.1, 1e-12, 0.0).is_err());
    }

    #[test]
    fn unbracketed() {
        assert!(bisect_root(|x| x * x + 1.0, -1.0, 1.0, 1e-12).is_err());
        assert!(bisect_increasing(|x| x, 0.0, 1.0, 2.0, 1e-12).is_err());
    }
}
