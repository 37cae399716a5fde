//! Fixed-step integration with dense output, adaptive quadrature and bisection.
//!
//! Solutions live on a uniform grid and are interpolated by cubic Hermite
//! polynomials built from the stored values and right-hand-side derivatives,
//! so the interpolant is C¹ and reproduces the node data exactly.

mod bisect;
mod families;
mod quadrature;

pub use bisect::{bisect_increasing, bisect_root, false_position_root};
pub use families::{
    b_rate, default_step, rho_rate, solve_b, solve_b_height, solve_catenoid_profile, solve_rho,
    GRID_POINTS_PER_PI,
};
pub use quadrature::{quadrature, QuadratureResult};

use crate::error::{Error, Result};

/// Behaviour of a component under v ↦ −v.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

/// Dense solution of an N-dimensional first-order system on a uniform grid.
///
/// When `parity` is set the grid covers [0, v_end] and the solution is
/// extended to [−v_end, 0) by reflection.
#[derive(Debug, Clone)]
pub struct OdeSolution<const N: usize> {
    start: f64,
    step: f64,
    values: Vec<[f64; N]>,
    derivs: Vec<[f64; N]>,
    parity: Option<[Parity; N]>,
}

impl<const N: usize> OdeSolution<N> {
    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn node_count(&self) -> usize {
        self.values.len()
    }

    fn grid_end(&self) -> f64 {
        self.start + self.step * (self.values.len() - 1) as f64
    }

    /// The closed interval on which the solution may be evaluated.
    pub fn domain(&self) -> (f64, f64) {
        let end = self.grid_end();
        match self.parity {
            Some(_) => (-end, end),
            None => (self.start, end),
        }
    }

    /// Grid nodes, including reflected ones, in increasing order.
    pub fn nodes(&self) -> Vec<f64> {
        let n = self.values.len();
        let fwd = (0..n).map(|k| self.start + self.step * k as f64);
        match self.parity {
            Some(_) => (1..n)
                .rev()
                .map(|k| -(self.step * k as f64))
                .chain(fwd)
                .collect(),
            None => fwd.collect(),
        }
    }

    /// Stored state at forward node `k`.
    pub fn node_value(&self, k: usize) -> [f64; N] {
        self.values[k]
    }

    /// Stored right-hand side at forward node `k`.
    pub fn node_derivative(&self, k: usize) -> [f64; N] {
        self.derivs[k]
    }

    fn check_domain(&self, v: f64) -> Result<()> {
        let (lo, hi) = self.domain();
        if !(v >= lo && v <= hi) {
            return Err(Error::OutOfDomain { v, lo, hi });
        }
        Ok(())
    }

    /// Value and derivative of the Hermite interpolant on the forward grid.
    fn hermite(&self, v: f64) -> ([f64; N], [f64; N]) {
        let n = self.values.len();
        let t = (v - self.start) / self.step;
        let k = (t.floor().max(0.0) as usize).min(n - 2);
        let s = t - k as f64;
        let h = self.step;
        let (y0, y1) = (&self.values[k], &self.values[k + 1]);
        let (d0, d1) = (&self.derivs[k], &self.derivs[k + 1]);
        let s2 = s * s;
        let s3 = s2 * s;
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        let g00 = 6.0 * s2 - 6.0 * s;
        let g10 = 3.0 * s2 - 4.0 * s + 1.0;
        let g01 = -6.0 * s2 + 6.0 * s;
        let g11 = 3.0 * s2 - 2.0 * s;
        let mut y = [0.0; N];
        let mut dy = [0.0; N];
        for i in 0..N {
            y[i] = h00 * y0[i] + h10 * h * d0[i] + h01 * y1[i] + h11 * h * d1[i];
            dy[i] = (g00 * y0[i] + g01 * y1[i]) / h + g10 * d0[i] + g11 * d1[i];
        }
        (y, dy)
    }

    /// Value and derivative at `v`.
    pub fn eval_with_derivative(&self, v: f64) -> Result<([f64; N], [f64; N])> {
        self.check_domain(v)?;
        match self.parity {
            Some(par) if v < 0.0 => {
                let (mut y, mut dy) = self.hermite(-v);
                for i in 0..N {
                    match par[i] {
                        Parity::Odd => y[i] = -y[i],
                        Parity::Even => dy[i] = -dy[i],
                    }
                }
                Ok((y, dy))
            }
            _ => Ok(self.hermite(v)),
        }
    }

    pub fn eval(&self, v: f64) -> Result<[f64; N]> {
        Ok(self.eval_with_derivative(v)?.0)
    }

    /// Locates v with component `i` equal to `target`; the component must be increasing.
    pub fn find_level(&self, i: usize, target: f64) -> Result<f64> {
        let (lo, hi) = self.domain();
        let f = |v: f64| self.eval(v).map(|y| y[i]).unwrap_or(f64::NAN);
        bisect_increasing(f, lo, hi, target, 1e-12)
    }
}

/// The first component v with `sol(v) = target`, by bisection on the dense output.
pub fn find_period<const N: usize>(sol: &OdeSolution<N>, target: f64) -> Result<f64> {
    sol.find_level(0, target)
}

fn rk4_increment<const N: usize, F>(rhs: &F, v: f64, y: &[f64; N], k1: &[f64; N], h: f64) -> [f64; N]
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let shift = |a: &[f64; N], s: f64| {
        let mut out = *y;
        for i in 0..N {
            out[i] += s * a[i];
        }
        out
    };
    let k2 = rhs(v + 0.5 * h, &shift(k1, 0.5 * h));
    let k3 = rhs(v + 0.5 * h, &shift(&k2, 0.5 * h));
    let k4 = rhs(v + h, &shift(&k3, h));
    let mut out = [0.0; N];
    for i in 0..N {
        out[i] = h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

fn march<const N: usize, F>(rhs: &F, y0: [f64; N], v0: f64, v1: f64, step: f64) -> Result<OdeSolution<N>>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::Precondition(format!("step must be positive, got {step}")));
    }
    if !(v1 > v0) {
        return Err(Error::Precondition(format!("empty domain [{v0}, {v1}]")));
    }
    let n = ((v1 - v0) / step).ceil().max(1.0) as usize;
    let h = (v1 - v0) / n as f64;
    let mut values = Vec::with_capacity(n + 1);
    let mut derivs = Vec::with_capacity(n + 1);
    let mut y = y0;
    // compensated summation keeps rounding drift O(ε) over the whole grid
    let mut carry = [0.0; N];
    for k in 0..=n {
        let v = v0 + h * k as f64;
        let d = rhs(v, &y);
        if d.iter().chain(y.iter()).any(|c| !c.is_finite()) {
            return Err(Error::NonFinite(format!("ODE state or right-hand side at v = {v}")));
        }
        values.push(y);
        derivs.push(d);
        if k < n {
            let inc = rk4_increment(rhs, v, &y, &d, h);
            for i in 0..N {
                let t = inc[i] - carry[i];
                let sum = y[i] + t;
                carry[i] = (sum - y[i]) - t;
                y[i] = sum;
            }
        }
    }
    Ok(OdeSolution { start: v0, step: h, values, derivs, parity: None })
}

/// Classical fourth-order Runge–Kutta on a uniform grid over `[v_min, v_max]`,
/// starting from `y0` at `v_min`. The step is shrunk so the grid ends exactly at `v_max`.
pub fn integrate<const N: usize, F>(rhs: F, y0: [f64; N], domain: (f64, f64), step: f64) -> Result<OdeSolution<N>>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    march(&rhs, y0, domain.0, domain.1, step)
}

/// Integrates forward from v = 0 and extends to negative v by the given parities.
///
/// The right-hand side must be compatible with the parities (an odd component
/// has an even derivative) and odd components must vanish at 0.
pub fn integrate_symmetric<const N: usize, F>(
    rhs: F,
    y0: [f64; N],
    v_max: f64,
    step: f64,
    parity: [Parity; N],
) -> Result<OdeSolution<N>>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    for i in 0..N {
        if parity[i] == Parity::Odd && y0[i] != 0.0 {
            return Err(Error::Precondition(format!(
                "odd component {i} must start at 0, got {}",
                y0[i]
            )));
        }
    }
    let mut sol = march(&rhs, y0, 0.0, v_max, step)?;
    sol.parity = Some(parity);
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_rhs_is_exact() {
        let sol = integrate(|_, _| [0.0], [2.5], (0.0, 3.0), 0.1).unwrap();
        for v in [0.0, 0.05, 1.234, 3.0] {
            assert_eq!(sol.eval(v).unwrap()[0], 2.5);
        }
    }

    #[test]
    fn exponential_growth() {
        let sol = integrate(|_, y: &[f64; 1]| [y[0]], [1.0], (0.0, 1.0), 1e-3).unwrap();
        let e = sol.eval(1.0).unwrap()[0];
        assert!((e - std::f64::consts::E).abs() < 1e-10, "{e}");
    }

    #[test]
    fn fourth_order_convergence() {
        let max_err = |step: f64| {
            let sol = integrate(|v, _| [v.cos()], [0.0], (0.0, 4.0), step).unwrap();
            sol.nodes()
                .iter()
                .map(|&v| (sol.eval(v).unwrap()[0] - v.sin()).abs())
                .fold(0.0, f64::max)
        };
        let ratio = max_err(0.2) / max_err(0.1);
        assert!((12.0..20.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn derivative_matches_rhs_at_nodes() {
        let rhs = |v: f64, y: &[f64; 2]| [y[1], -y[0] + 0.1 * v];
        let sol = integrate(rhs, [1.0, 0.0], (0.0, 2.0), 0.01).unwrap();
        for k in [0, 17, 100, 200] {
            let v = sol.nodes()[k];
            let (y, dy) = sol.eval_with_derivative(v).unwrap();
            assert_eq!(dy, rhs(v, &y));
        }
    }

    #[test]
    fn interpolant_is_c1_across_nodes() {
        let sol = integrate(|_, y: &[f64; 1]| [y[0].sin() + 1.0], [0.0], (0.0, 1.0), 0.1).unwrap();
        let v = sol.nodes()[3];
        let (_, left) = sol.eval_with_derivative(v - 1e-12).unwrap();
        let (_, right) = sol.eval_with_derivative(v + 1e-12).unwrap();
        assert!((left[0] - right[0]).abs() < 1e-9);
    }

    #[test]
    fn outside_grid_is_an_error() {
        let sol = integrate(|_, _| [1.0], [0.0], (0.0, 1.0), 0.1).unwrap();
        assert!(matches!(sol.eval(1.5), Err(Error::OutOfDomain { .. })));
        assert!(sol.eval(-0.1).is_err());
    }

    #[test]
    fn non_finite_rhs_aborts() {
        let r = integrate(|v, _: &[f64; 1]| [(1.0 - v).ln()], [0.0], (0.0, 2.0), 0.01);
        assert!(matches!(r, Err(Error::NonFinite(_))));
    }

    #[test]
    fn reflection_parity() {
        let rhs = |_: f64, y: &[f64; 2]| [1.0 + y[0].cos().powi(2), y[0]];
        let sol = integrate_symmetric(rhs, [0.0, 0.0], 2.0, 0.01, [Parity::Odd, Parity::Even]).unwrap();
        for v in [0.3, 1.1, 1.99] {
            let (p, dp) = sol.eval_with_derivative(v).unwrap();
            let (m, dm) = sol.eval_with_derivative(-v).unwrap();
            assert_eq!(m[0], -p[0]);
            assert_eq!(m[1], p[1]);
            assert_eq!(dm[0], dp[0]);
            assert_eq!(dm[1], -dp[1]);
        }
        assert_eq!(sol.domain(), (-2.0, 2.0));
    }

    #[test]
    fn level_finding() {
        let sol = integrate(|_, _| [2.0], [0.0], (0.0, 3.0), 0.01).unwrap();
        let v = find_period(&sol, 5.0).unwrap();
        assert!((v - 2.5).abs() < 1e-12);
        assert!(matches!(find_period(&sol, 7.0), Err(Error::NotBracketed { .. })));
    }
}
