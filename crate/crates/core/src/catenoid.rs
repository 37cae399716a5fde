//! Minimal catenoid annuli, parametrized on ℂ modulo 2iV.
//!
//! With ρ′ = √(1 − α² sin² 2ρ), γ′ = −α sin 2ρ, F′ = α² sin 2ρ/(1 + ρ′), all
//! vanishing at 0, and E = u + γ, c = cos ρ, s = sin ρ:
//!
//! x₁ = e^{−αu−F}[e^{E}P − e^{−E}Q],   P = (cF′ − αs)/(2(1−α)),  Q = (αs + cF′)/(2(1+α)),
//! x₂ = e^{αu+F}[e^{E}R + e^{−E}S],    R = (αc + F′s)/(2(1+α)),  S = (αc − F′s)/(2(1−α)),
//! x₃ = αu + F.
//!
//! Since e^{x₃} cancels the prefactor of x₁ (and e^{−x₃} that of x₂), the frame
//! components of the partials are the bracketed derivatives:
//!
//! x_u = ((1−α)e^{E}P + (1+α)e^{−E}Q, (1+α)e^{E}R − (1−α)e^{−E}S, α),
//! x_v = (e^{E}(P′ + (γ′−F′)P) − e^{−E}(Q′ − (γ′+F′)Q),
//!        e^{E}(R′ + (F′+γ′)R) + e^{−E}(S′ + (F′−γ′)S),  F′).

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{FrameVector, IsotropyElement, Sol3Point};
use crate::jet::ImmersionJet;
use crate::ode::{default_step, find_period, quadrature, rho_rate, solve_catenoid_profile, OdeSolution};
use crate::verify::VerificationReport;
use crate::weierstrass::GaussSample;

/// Default number of section samples per closed curve.
pub const DEFAULT_SECTION_SAMPLES: usize = 1 << 9;

/// Minimum sample count accepted by the convexity certificate.
pub const MIN_CERTIFICATE_SAMPLES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatenoidProfile {
    pub rho: f64,
    pub drho: f64,
    pub d2rho: f64,
    pub gamma: f64,
    pub dgamma: f64,
    pub d2gamma: f64,
    pub f: f64,
    pub df: f64,
    pub d2f: f64,
}

#[derive(Debug, Clone)]
pub struct CatenoidModel {
    alpha: f64,
    profile: OdeSolution<3>,
    v_period: f64,
    v_max: f64,
}

pub(crate) fn check_catenoid_parameter(alpha: f64) -> Result<()> {
    if !(alpha.abs() < 1.0) || alpha == 0.0 {
        return Err(Error::InvalidParameter { name: "alpha", value: alpha, range: "(-1, 1) with alpha != 0" });
    }
    Ok(())
}

fn period_estimate(alpha: f64) -> Result<f64> {
    Ok(quadrature(|r| 1.0 / rho_rate(alpha, r), 0.0, PI, 1e-10)?.value)
}

/// The coefficient functions P, Q, R, S and their v-derivatives.
struct Coefficients {
    p: f64,
    q: f64,
    r: f64,
    s: f64,
    dp: f64,
    dq: f64,
    dr: f64,
    ds: f64,
}

impl CatenoidModel {
    /// Builds C_α on v ∈ [−4V, 4V].
    pub fn build(alpha: f64) -> Result<Self> {
        check_catenoid_parameter(alpha)?;
        Self::build_with(alpha, 4.0 * period_estimate(alpha)?)
    }

    pub fn build_with(alpha: f64, v_max: f64) -> Result<Self> {
        check_catenoid_parameter(alpha)?;
        let profile = solve_catenoid_profile(alpha, v_max, default_step())?;
        let v_period = find_period(&profile, PI)?;
        Ok(CatenoidModel { alpha, profile, v_period, v_max })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// V with ρ(V) = π; the annulus has period 2V in v.
    pub fn period_v(&self) -> f64 {
        self.v_period
    }

    pub fn v_max(&self) -> f64 {
        self.v_max
    }

    pub fn profile(&self, v: f64) -> Result<CatenoidProfile> {
        let [rho, gamma, f] = self.profile.eval(v)?;
        let a = self.alpha;
        let (s2, c2) = (2.0 * rho).sin_cos();
        let drho = rho_rate(a, rho);
        let d2rho = -2.0 * a * a * s2 * c2;
        let df = a * a * s2 / (1.0 + drho);
        let d2f = a * a * (2.0 * drho * c2 * (1.0 + drho) - s2 * d2rho) / ((1.0 + drho) * (1.0 + drho));
        Ok(CatenoidProfile {
            rho,
            drho,
            d2rho,
            gamma,
            dgamma: -a * s2,
            d2gamma: -2.0 * a * c2 * drho,
            f,
            df,
            d2f,
        })
    }

    fn coefficients(&self, p: &CatenoidProfile) -> Coefficients {
        let a = self.alpha;
        let (s, c) = p.rho.sin_cos();
        let (m, pl) = (2.0 * (1.0 - a), 2.0 * (1.0 + a));
        let (ds, dc) = (c * p.drho, -s * p.drho);
        Coefficients {
            p: (c * p.df - a * s) / m,
            q: (a * s + c * p.df) / pl,
            r: (a * c + p.df * s) / pl,
            s: (a * c - p.df * s) / m,
            dp: (dc * p.df + c * p.d2f - a * ds) / m,
            dq: (a * ds + dc * p.df + c * p.d2f) / pl,
            dr: (a * dc + p.d2f * s + p.df * ds) / pl,
            ds: (a * dc - p.d2f * s - p.df * ds) / m,
        }
    }

    pub fn immerse(&self, u: f64, v: f64) -> Result<Sol3Point> {
        let p = self.profile(v)?;
        let k = self.coefficients(&p);
        let x3 = self.alpha * u + p.f;
        let (ep, em) = ((u + p.gamma).exp(), (-u - p.gamma).exp());
        Ok(Sol3Point::new((-x3).exp() * (ep * k.p - em * k.q), x3.exp() * (ep * k.r + em * k.s), x3))
    }

    pub fn conformal_factor(&self, u: f64, v: f64) -> Result<f64> {
        let p = self.profile(v)?;
        Ok(2.0 * self.alpha * self.alpha / (1.0 + p.drho) * (u + p.gamma).cosh().powi(2))
    }

    /// (1/cosh(u+γ))[sin ρ, −cos ρ, sinh(u+γ)], the image of the Gauss map under Eq. (4)'s inverse.
    pub fn normal(&self, u: f64, v: f64) -> Result<FrameVector> {
        let p = self.profile(v)?;
        let e = u + p.gamma;
        let ch = e.cosh();
        Ok(FrameVector::new(p.rho.sin() / ch, -p.rho.cos() / ch, e.tanh()))
    }

    pub fn jet(&self, u: f64, v: f64) -> Result<ImmersionJet> {
        let p = self.profile(v)?;
        let k = self.coefficients(&p);
        let a = self.alpha;
        let (ep, em) = ((u + p.gamma).exp(), (-u - p.gamma).exp());
        let xu = FrameVector::new(
            (1.0 - a) * ep * k.p + (1.0 + a) * em * k.q,
            (1.0 + a) * ep * k.r - (1.0 - a) * em * k.s,
            a,
        );
        let xv = FrameVector::new(
            ep * (k.dp + (p.dgamma - p.df) * k.p) - em * (k.dq - (p.dgamma + p.df) * k.q),
            ep * (k.dr + (p.df + p.dgamma) * k.r) + em * (k.ds + (p.df - p.dgamma) * k.s),
            p.df,
        );
        Ok(ImmersionJet {
            u,
            v,
            position: self.immerse(u, v)?,
            xu,
            xv,
            normal: self.normal(u, v)?,
            lambda: self.conformal_factor(u, v)?,
        })
    }

    /// Gauss map −i e^{−u−γ} e^{iρ} with its Wirtinger derivatives.
    pub fn gauss_sample(&self, u: f64, v: f64) -> Result<GaussSample> {
        let p = self.profile(v)?;
        let i = Complex64::i();
        let w = -i * Complex64::from_polar((-p.gamma).exp(), p.rho);
        let rate = Complex64::new(-p.dgamma, p.drho);
        let drate = Complex64::new(-p.d2gamma, p.d2rho);
        Ok(GaussSample::separable(u, w, rate * w, (rate * rate + drate) * w))
    }

    pub fn gauss_map(&self, u: f64, v: f64) -> Result<Complex64> {
        let p = self.profile(v)?;
        Ok(-Complex64::i() * Complex64::from_polar((-u - p.gamma).exp(), p.rho))
    }

    /// The intersection with the plane {x₃ = level}, t ↦ x((level − F(t))/α + it),
    /// sampled at `samples` uniform steps of t ∈ [0, 2V] plus the closing endpoint.
    pub fn section(&self, level: f64, samples: usize) -> Result<SectionCurve> {
        if samples < 4 {
            return Err(Error::Precondition(format!("section needs at least 4 samples, got {samples}")));
        }
        let v2 = 2.0 * self.v_period;
        if v2 + SECTION_FD_STEP > self.v_max {
            return Err(Error::Precondition("model domain does not cover a full period".into()));
        }
        let a = self.alpha;
        let point = |t: f64| -> Result<[f64; 2]> {
            let f = self.profile(t)?.f;
            let x = self.immerse((level - f) / a, t)?;
            Ok([x.x1, x.x2])
        };
        let mut curve = SectionCurve {
            alpha: a,
            level,
            period: self.v_period,
            t: Vec::with_capacity(samples + 1),
            points: Vec::with_capacity(samples + 1),
            derivs: Vec::with_capacity(samples + 1),
            fd_derivs: Vec::with_capacity(samples + 1),
            rho: Vec::with_capacity(samples + 1),
        };
        for k in 0..=samples {
            let t = v2 * k as f64 / samples as f64;
            let p = self.profile(t)?;
            let scale = -(p.df * p.df + a * a) / a * ((level - p.f) / a + p.gamma).cosh();
            let (s, c) = p.rho.sin_cos();
            let h = SECTION_FD_STEP;
            let (fwd, back) = (point(t + h)?, point(t - h)?);
            curve.t.push(t);
            curve.points.push(point(t)?);
            curve.derivs.push([(-level).exp() * scale * c, level.exp() * scale * s]);
            curve.fd_derivs.push([(fwd[0] - back[0]) / (2.0 * h), (fwd[1] - back[1]) / (2.0 * h)]);
            curve.rho.push(p.rho);
        }
        Ok(curve)
    }

    /// Rotation by π about the x₃-axis (half period), reflection in {x₁ = 0},
    /// rotation about the x₂-axis, and the α ↔ −α relation, on 100 random points.
    pub fn symmetry_check(&self) -> Result<VerificationReport> {
        let mut rep = VerificationReport::new(format!("catenoid alpha={} symmetries", self.alpha));
        let mut rng = ChaCha8Rng::seed_from_u64(0x4341_5445);
        let v = self.v_period;
        let pts: Vec<(f64, f64)> = (0..100).map(|_| (rng.gen_range(-2.0..2.0), rng.gen_range(-v..v))).collect();
        let loc = |u: f64, v: f64| format!("z={u:.6}{v:+.6}i");
        let dev = |lhs: Result<Sol3Point>, rhs: Result<Sol3Point>| match (lhs, rhs) {
            (Ok(a), Ok(b)) => a.max_abs_diff(&b) / (1.0 + b.to_array().iter().fold(0.0f64, |m, c| m.max(c.abs()))),
            _ => f64::NAN,
        };
        type Map = fn(f64, f64, f64) -> (f64, f64);
        let identities: [(&str, IsotropyElement, Map); 3] = [
            ("half_period_rotation", IsotropyElement::SIGMA2, |u, w, big| (u, w + big)),
            ("reflection_x1", IsotropyElement::TAU, |u, w, _| (u, -w)),
            ("rotation_x2_axis", IsotropyElement::SIGMA2_TAU, |u, w, big| (u, -w + big)),
        ];
        for (name, word, map) in identities {
            rep.push_max(
                name,
                pts.iter().map(|&(u, w)| {
                    let (a, b) = map(u, w, v);
                    (dev(self.immerse(a, b), self.immerse(u, w).map(|p| word.apply(p))), loc(u, w))
                }),
                1e-8,
            );
        }
        let opposite = CatenoidModel::build_with(-self.alpha, self.v_max)?;
        rep.push_max(
            "parameter_sign_flip",
            pts.iter().map(|&(u, w)| {
                (
                    dev(opposite.immerse(-u, w), self.immerse(u, w).map(|p| IsotropyElement::SIGMA2.apply(p))),
                    loc(u, w),
                )
            }),
            1e-8,
        );
        Ok(rep)
    }

    /// x(u + i(v + 2V)) = x(u + iv) on 100 random points.
    pub fn periodicity_check(&self) -> VerificationReport {
        let mut rep = VerificationReport::new(format!("catenoid alpha={} periodicity", self.alpha));
        let mut rng = ChaCha8Rng::seed_from_u64(0x5045_5249);
        let v2 = 2.0 * self.v_period;
        rep.push_max(
            "annulus_periodicity",
            (0..100).map(|_| {
                let (u, v) = (rng.gen_range(-2.0..2.0), rng.gen_range(-self.v_max..self.v_max - v2));
                let r = match (self.immerse(u, v), self.immerse(u, v + v2)) {
                    (Ok(a), Ok(b)) => a.max_abs_diff(&b),
                    _ => f64::NAN,
                };
                (r, format!("z={u:.6}{v:+.6}i"))
            }),
            1e-8,
        );
        rep
    }
}

const SECTION_FD_STEP: f64 = 1e-5;

/// A horizontal section of a catenoid in the plane coordinates (x₁, x₂).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectionCurve {
    pub alpha: f64,
    pub level: f64,
    pub period: f64,
    pub t: Vec<f64>,
    pub points: Vec<[f64; 2]>,
    /// Closed-form derivatives −(e^{∓λ}/α)(F′² + α²)(cos ρ, sin ρ)·cosh((λ − F)/α + γ).
    pub derivs: Vec<[f64; 2]>,
    /// Central differences of the immersion along the section.
    pub fd_derivs: Vec<[f64; 2]>,
    pub rho: Vec<f64>,
}

impl SectionCurve {
    pub fn samples(&self) -> usize {
        self.t.len() - 1
    }
}

fn wrap_angle(a: f64) -> f64 {
    (a + PI).rem_euclid(2.0 * PI) - PI
}

/// Certifies a section is a smooth closed embedded convex curve.
///
/// Checks: nonvanishing speed; closed-form derivative against differences of the
/// immersion; closure; central symmetry c(t+V) = −c(t); sign of c₁′ opposite to
/// α on (−V/2, V/2); tangent direction equal to ρ modulo π in the flat
/// coordinates (e^{λ}c₁, e^{−λ}c₂) of the plane, with ρ strictly increasing; turning
/// number one; constant sign of polyline edge cross products.
pub fn convexity_certificate(c: &SectionCurve) -> Result<VerificationReport> {
    let n = c.samples();
    if n < MIN_CERTIFICATE_SAMPLES || !n.is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "certificate needs an even sample count of at least {MIN_CERTIFICATE_SAMPLES}, got {n}"
        )));
    }
    let mut rep = VerificationReport::new(format!("section alpha={} level={}", c.alpha, c.level));
    let at = |k: usize| format!("t={:.6}", c.t[k]);
    let size = c.points.iter().fold(0.0f64, |m, p| m.max(p[0].abs()).max(p[1].abs()));
    let speed_scale = c.derivs.iter().fold(0.0f64, |m, d| m.max(d[0].hypot(d[1])));

    rep.push_max("speed_nonvanishing", (0..=n).map(|k| (-(c.derivs[k][0].hypot(c.derivs[k][1])), at(k))), -1e-300);
    rep.push_max(
        "derivative_closed_form",
        (0..=n).map(|k| {
            let (d, f) = (c.derivs[k], c.fd_derivs[k]);
            ((d[0] - f[0]).abs().max((d[1] - f[1]).abs()) / speed_scale.max(1.0), at(k))
        }),
        1e-6,
    );
    rep.push("closure", (0..2).map(|i| (c.points[n][i] - c.points[0][i]).abs()).fold(0.0, f64::max) / size.max(1.0), 1e-8, "t=2V");
    rep.push_max(
        "central_symmetry",
        (0..=n / 2).map(|k| {
            let (p, q) = (c.points[k], c.points[k + n / 2]);
            ((p[0] + q[0]).abs().max((p[1] + q[1]).abs()) / size.max(1.0), at(k))
        }),
        1e-8,
    );
    // open half-period (−V/2, V/2) read modulo 2V on the grid
    let inside = |k: usize| 4 * k < n || 4 * k > 3 * n;
    let sign = -c.alpha.signum();
    rep.push_max(
        "first_derivative_sign",
        (0..=n).filter(|&k| inside(k)).map(|k| (if c.derivs[k][0] * sign > 0.0 { 0.0 } else { 1.0 }, at(k))),
        0.0,
    );
    let (el, eml) = (c.level.exp(), (-c.level).exp());
    rep.push_max(
        "slope_law",
        (0..=n).map(|k| {
            let d = c.fd_derivs[k];
            let angle = (eml * d[1]).atan2(el * d[0]);
            let diff = wrap_angle(angle - c.rho[k]);
            (diff.abs().min((diff.abs() - PI).abs()), at(k))
        }),
        1e-6,
    );
    rep.push_max(
        "slope_monotone",
        (0..n).map(|k| (if c.rho[k + 1] > c.rho[k] { 0.0 } else { 1.0 }, at(k))),
        0.0,
    );
    let edge = |k: usize| {
        let (p, q) = (c.points[k % n], c.points[(k + 1) % n]);
        [q[0] - p[0], q[1] - p[1]]
    };
    let mut turning = 0.0;
    let mut crosses = Vec::with_capacity(n);
    for k in 0..n {
        let (e1, e2) = (edge(k), edge(k + 1));
        let cr = e1[0] * e2[1] - e1[1] * e2[0];
        let dt = e1[0] * e2[0] + e1[1] * e2[1];
        turning += cr.atan2(dt);
        crosses.push((cr / (e1[0].hypot(e1[1]) * e2[0].hypot(e2[1])), k));
    }
    rep.push("turning_number", ((turning.abs() - 2.0 * PI) / (2.0 * PI)).abs(), 1e-9, "polyline");
    let orient = turning.signum();
    rep.push_max(
        "discrete_convexity",
        crosses.into_iter().map(|(x, k)| ((-orient * x).max(0.0), at(k + 1))),
        1e-12,
    );
    Ok(rep)
}
