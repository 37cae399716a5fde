//! The angle functions of the two surface families.

use std::f64::consts::PI;

use super::{integrate_symmetric, OdeSolution, Parity};
use crate::error::{Error, Result};

/// Grid resolution: nodes per length π of the integration range.
pub const GRID_POINTS_PER_PI: usize = 1 << 16;

pub fn default_step() -> f64 {
    PI / GRID_POINTS_PER_PI as f64
}

/// b′ as a function of b.
pub fn b_rate(k: f64, b: f64) -> f64 {
    (1.0 - k * (2.0 * b).cos()).sqrt()
}

/// ρ′ as a function of ρ.
pub fn rho_rate(alpha: f64, rho: f64) -> f64 {
    let s = (2.0 * rho).sin();
    (1.0 - alpha * alpha * s * s).sqrt()
}

fn check_open_unit(name: &'static str, value: f64) -> Result<()> {
    if !(value.abs() < 1.0) {
        return Err(Error::InvalidParameter { name, value, range: "(-1, 1)" });
    }
    Ok(())
}

fn check_range(v_max: f64, step: f64) -> Result<()> {
    if !(v_max > 0.0 && v_max.is_finite()) {
        return Err(Error::Precondition(format!("v_max must be positive, got {v_max}")));
    }
    if !(step > 0.0) {
        return Err(Error::Precondition(format!("step must be positive, got {step}")));
    }
    Ok(())
}

/// b on [−v_max, v_max]: b′ = √(1 − K cos 2b), b(0) = 0, extended as an odd function.
pub fn solve_b(k: f64, v_max: f64, step: f64) -> Result<OdeSolution<1>> {
    check_open_unit("K", k)?;
    check_range(v_max, step)?;
    integrate_symmetric(move |_, y: &[f64; 1]| [b_rate(k, y[0])], [0.0], v_max, step, [Parity::Odd])
}

/// (b, x₃) with x₃′ = K/(1+b′), x₃(0) = 0; both odd.
pub fn solve_b_height(k: f64, v_max: f64, step: f64) -> Result<OdeSolution<2>> {
    check_open_unit("K", k)?;
    check_range(v_max, step)?;
    integrate_symmetric(
        move |_, y: &[f64; 2]| {
            let bp = b_rate(k, y[0]);
            [bp, k / (1.0 + bp)]
        },
        [0.0, 0.0],
        v_max,
        step,
        [Parity::Odd, Parity::Odd],
    )
}

/// ρ on [−v_max, v_max]: ρ′ = √(1 − α² sin² 2ρ), ρ(0) = 0, odd.
pub fn solve_rho(alpha: f64, v_max: f64, step: f64) -> Result<OdeSolution<1>> {
    check_open_unit("alpha", alpha)?;
    check_range(v_max, step)?;
    integrate_symmetric(
        move |_, y: &[f64; 1]| [rho_rate(alpha, y[0])],
        [0.0],
        v_max,
        step,
        [Parity::Odd],
    )
}

/// (ρ, γ, F) with γ′ = −α sin 2ρ, F′ = α² sin 2ρ/(1+ρ′), γ(0) = F(0) = 0.
/// ρ is odd, γ and F are even.
pub fn solve_catenoid_profile(alpha: f64, v_max: f64, step: f64) -> Result<OdeSolution<3>> {
    check_open_unit("alpha", alpha)?;
    check_range(v_max, step)?;
    integrate_symmetric(
        move |_, y: &[f64; 3]| {
            let rp = rho_rate(alpha, y[0]);
            let s = (2.0 * y[0]).sin();
            [rp, -alpha * s, alpha * alpha * s / (1.0 + rp)]
        },
        [0.0, 0.0, 0.0],
        v_max,
        step,
        [Parity::Odd, Parity::Even, Parity::Even],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ode::{find_period, quadrature};

    fn w_oracle(k: f64) -> f64 {
        quadrature(|u| 1.0 / b_rate(k, u), 0.0, PI, 1e-12).unwrap().value
    }

    #[test]
    fn flat_case_is_identity() {
        let b = solve_b(0.0, 5.0, default_step()).unwrap();
        for k in (0..b.node_count()).step_by(997) {
            let v = b.nodes()[b.node_count() - 1 + k];
            // equal up to the rounding of the accumulated sum of steps
            assert!((b.eval(v).unwrap()[0] - v).abs() <= 1e-14 * v.abs().max(1.0));
        }
        let r = solve_catenoid_profile(0.0, 5.0, default_step()).unwrap();
        let y = r.eval(2.2).unwrap();
        assert!((y[0] - 2.2).abs() < 1e-15 && y[1] == 0.0 && y[2] == 0.0);
    }

    #[test]
    fn rejects_closed_range() {
        assert!(solve_b(1.0, 1.0, 0.1).is_err());
        assert!(solve_rho(-1.0, 1.0, 0.1).is_err());
        assert!(solve_b(0.5, -1.0, 0.1).is_err());
    }

    #[test]
    fn period_matches_quadrature() {
        let b = solve_b(0.4, 8.0, default_step()).unwrap();
        let w = find_period(&b, PI).unwrap();
        assert!((w - w_oracle(0.4)).abs() < 1e-8, "{w}");
        assert!((w - 3.245_121_313_524).abs() < 1e-10);
    }

    #[test]
    fn period_is_even_in_k() {
        let w = |k: f64| find_period(&solve_b(k, 8.0, default_step()).unwrap(), PI).unwrap();
        assert!((w(0.5) - w(-0.5)).abs() < 1e-10);
    }

    #[test]
    fn derivative_bounds_at_nodes() {
        let k: f64 = -0.7;
        let b = solve_b(k, 6.0, default_step()).unwrap();
        let (lo, hi) = ((1.0 - k.abs()).sqrt(), (1.0 + k.abs()).sqrt());
        for j in 0..b.node_count() {
            let d = b.node_derivative(j)[0];
            assert!(d >= lo - 1e-15 && d <= hi + 1e-15);
        }
    }

    #[test]
    fn catenoid_quarter_period_and_f_periodicity() {
        let a = 0.6;
        let sol = solve_catenoid_profile(a, 8.0, default_step()).unwrap();
        let v = find_period(&sol, PI).unwrap();
        assert!((sol.eval(v / 4.0).unwrap()[0] - PI / 4.0).abs() < 1e-10);
        let y = sol.eval(v).unwrap();
        assert!(y[1].abs() < 1e-10 && y[2].abs() < 1e-10, "{y:?}");
        let oracle = quadrature(|r| 1.0 / rho_rate(a, r), 0.0, PI, 1e-12).unwrap().value;
        assert!((v - oracle).abs() < 1e-8);
    }

    #[test]
    fn self_convergence() {
        let coarse = solve_b_height(0.4, 4.0, 2.0 * default_step()).unwrap();
        let fine = solve_b_height(0.4, 4.0, default_step()).unwrap();
        for v in [0.5, 1.7, 3.9] {
            let (c, f) = (coarse.eval(v).unwrap(), fine.eval(v).unwrap());
            assert!((c[0] - f[0]).abs() < 1e-10 && (c[1] - f[1]).abs() < 1e-10);
        }
    }
}
