//! Minimal helicoids: surfaces containing the x₃-axis, invariant under a screw motion.
//!
//! With b′ = √(1 − K cos 2b), b(0) = 0, and x₃′ = K/(1 + b′), x₃(0) = 0, the
//! immersion is, writing θ = b + π/4 and p = x₃′,
//!
//! x(u + iv) = (p cos θ e^{−x₃} sinh u, p sin θ e^{x₃} sinh u, x₃(v)).
//!
//! Hand-differentiated partials, in frame components:
//!
//! x_u = (p cos θ cosh u, p sin θ cosh u, 0),
//! x_v = (sinh u [−b′p sin θ + (p′ − p²) cos θ], sinh u [b′p cos θ + (p′ + p²) sin θ], p),
//!
//! with p′ = −K² sin 2b/(1 + b′)². Conformality reduces to p′ + p² sin 2b = 0.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_4, PI};

use crate::error::{Error, Result};
use crate::geometry::{group_mul, plane_curvature, FrameVector, IsotropyElement, Sol3Point};
use crate::jet::ImmersionJet;
use crate::ode::{b_rate, false_position_root, default_step, find_period, quadrature, solve_b_height, OdeSolution};
use crate::verify::VerificationReport;
use crate::weierstrass::GaussSample;

/// Values of the profile functions at one v.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelicoidProfile {
    pub b: f64,
    pub db: f64,
    pub d2b: f64,
    pub x3: f64,
    pub dx3: f64,
    pub d2x3: f64,
}

#[derive(Debug, Clone)]
pub struct HelicoidModel {
    k: f64,
    profile: OdeSolution<2>,
    w: f64,
    v_max: f64,
}

pub(crate) fn check_helicoid_parameter(k: f64) -> Result<()> {
    if !(k.abs() < 1.0) || k == 0.0 {
        return Err(Error::InvalidParameter { name: "K", value: k, range: "(-1, 1) with K != 0" });
    }
    Ok(())
}

/// W as ∫₀^π du/√(1 − K cos 2u); used to size integration domains.
fn period_estimate(k: f64) -> Result<f64> {
    Ok(quadrature(|u| 1.0 / b_rate(k, u), 0.0, PI, 1e-10)?.value)
}

impl HelicoidModel {
    /// Builds H_K on v ∈ [−4W, 4W].
    pub fn build(k: f64) -> Result<Self> {
        check_helicoid_parameter(k)?;
        Self::build_with(k, 4.0 * period_estimate(k)?)
    }

    /// Builds H_K on v ∈ [−v_max, v_max]; v_max must exceed W.
    pub fn build_with(k: f64, v_max: f64) -> Result<Self> {
        check_helicoid_parameter(k)?;
        let profile = solve_b_height(k, v_max, default_step())?;
        let w = find_period(&profile, PI)?;
        Ok(HelicoidModel { k, profile, w, v_max })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// W with b(W) = π.
    pub fn period_w(&self) -> f64 {
        self.w
    }

    pub fn v_max(&self) -> f64 {
        self.v_max
    }

    pub fn height_at_period(&self) -> f64 {
        self.profile.eval(self.w).expect("W lies in the domain")[1]
    }

    /// Vertical translation T = 2x₃(W) of the screw motion carrying x(z) to x(z + 2iW).
    pub fn period_t(&self) -> f64 {
        2.0 * self.height_at_period()
    }

    pub fn profile(&self, v: f64) -> Result<HelicoidProfile> {
        let [b, x3] = self.profile.eval(v)?;
        let k = self.k;
        // rates from the right-hand side keep λ as smooth as b itself
        let db = b_rate(k, b);
        let dx3 = k / (1.0 + db);
        let s2 = (2.0 * b).sin();
        Ok(HelicoidProfile {
            b,
            db,
            d2b: k * s2,
            x3,
            dx3,
            d2x3: -k * k * s2 / ((1.0 + db) * (1.0 + db)),
        })
    }

    pub fn immerse(&self, u: f64, v: f64) -> Result<Sol3Point> {
        let p = self.profile(v)?;
        let th = p.b + FRAC_PI_4;
        let s = u.sinh();
        Ok(Sol3Point::new(
            p.dx3 * th.cos() * (-p.x3).exp() * s,
            p.dx3 * th.sin() * p.x3.exp() * s,
            p.x3,
        ))
    }

    pub fn conformal_factor(&self, u: f64, v: f64) -> Result<f64> {
        let p = self.profile(v)?;
        let c = u.cosh();
        Ok(self.k * self.k * c * c / ((1.0 + p.db) * (1.0 + p.db)))
    }

    pub fn normal(&self, u: f64, v: f64) -> Result<FrameVector> {
        let p = self.profile(v)?;
        let th = p.b + FRAC_PI_4;
        let c = u.cosh();
        Ok(FrameVector::new(th.sin() / c, -th.cos() / c, u.tanh()))
    }

    pub fn jet(&self, u: f64, v: f64) -> Result<ImmersionJet> {
        let pr = self.profile(v)?;
        let (p, dp) = (pr.dx3, pr.d2x3);
        let th = pr.b + FRAC_PI_4;
        let (st, ct) = th.sin_cos();
        let (sh, ch) = (u.sinh(), u.cosh());
        let xu = FrameVector::new(p * ct * ch, p * st * ch, 0.0);
        let xv = FrameVector::new(
            sh * (-pr.db * p * st + (dp - p * p) * ct),
            sh * (pr.db * p * ct + (dp + p * p) * st),
            p,
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

    /// Gauss map e^{−u} e^{i(b − π/4)} with its Wirtinger derivatives.
    pub fn gauss_sample(&self, u: f64, v: f64) -> Result<GaussSample> {
        let p = self.profile(v)?;
        let w = Complex64::from_polar(1.0, p.b - FRAC_PI_4);
        let i = Complex64::i();
        Ok(GaussSample::separable(u, w, i * p.db * w, (i * p.d2b - p.db * p.db) * w))
    }

    pub fn gauss_map(&self, u: f64, v: f64) -> Result<Complex64> {
        let p = self.profile(v)?;
        Ok((-u).exp() * Complex64::from_polar(1.0, p.b - FRAC_PI_4))
    }

    /// Coefficients (a, c) with ∇_{x_u}N = a x_u + c x_v and ∇_{x_v}N = c x_u − a x_v.
    pub fn shape_operator_coefficients(&self, u: f64, v: f64) -> Result<(f64, f64)> {
        let p = self.profile(v)?;
        let ch = u.cosh();
        let a = -(2.0 * p.b).sin() * u.tanh();
        let c = (1.0 + p.db) / (self.k * ch * ch) - (2.0 * p.b).cos();
        Ok((a, c))
    }

    /// −1 + (1/cosh²u)(2(1+b′)cos 2b/K − (1+b′)²/(K² cosh²u) + sin² 2b).
    ///
    /// This is the determinant of the shape operator, −a² − c².
    pub fn shape_determinant(&self, u: f64, v: f64) -> Result<f64> {
        let p = self.profile(v)?;
        let (k, c2) = (self.k, u.cosh().powi(2));
        let s = (2.0 * p.b).sin();
        Ok(-1.0
            + (2.0 * (1.0 + p.db) * (2.0 * p.b).cos() / k - (1.0 + p.db).powi(2) / (k * k * c2) + s * s) / c2)
    }

    /// Intrinsic curvature of the induced metric: the shape-operator determinant plus
    /// the ambient sectional curvature −1 + 2N₃² of the tangent plane.
    pub fn gauss_curvature_intrinsic(&self, u: f64, v: f64) -> Result<f64> {
        let n = self.normal(u, v)?;
        Ok(self.shape_determinant(u, v)? + plane_curvature(&n))
    }

    /// The curvature density 𝒦λ = −Δ ln λ/2 of the induced metric. With λ = p²cosh²u,
    /// p = K/(1+b′), it is −1/cosh²u − (ln p)″ and has no cancellation at large |u|.
    pub fn intrinsic_curvature_density(&self, u: f64, v: f64) -> Result<f64> {
        let pr = self.profile(v)?;
        let (s2, c2) = ((2.0 * pr.b).sin(), (2.0 * pr.b).cos());
        let one = 1.0 + pr.db;
        let ln_p_dd = -2.0 * self.k * c2 * pr.db / one + (self.k * s2 / one).powi(2);
        Ok(-1.0 / u.cosh().powi(2) - ln_p_dd)
    }

    /// ∫∫ density du dv over |u| ≤ U, v ∈ [v₀, v₁].
    fn integrate_density(&self, u_max: f64, (v0, v1): (f64, f64), density: impl Fn(f64, f64) -> Result<f64>, tol: f64) -> Result<f64> {
        let inner = |v: f64| -> f64 {
            quadrature(|u| density(u, v).unwrap_or(f64::NAN), -u_max, u_max, tol)
                .map(|r| r.value)
                .unwrap_or(f64::NAN)
        };
        Ok(quadrature(inner, v0, v1, tol * 2.0 * (v1 - v0))?.value)
    }

    /// ∫∫ (−a² − c²)λ over a fundamental piece truncated at |u| ≤ U.
    pub fn total_shape_determinant(&self, u_max: f64) -> Result<f64> {
        let tol = 1e-8 * u_max.cosh().powi(2);
        self.integrate_density(u_max, (0.0, 2.0 * self.w), |u, v| Ok(self.shape_determinant(u, v)? * self.conformal_factor(u, v)?), tol)
    }

    /// Total intrinsic curvature over |u| ≤ U, v ∈ [0, 2W].
    pub fn total_curvature_intrinsic(&self, u_max: f64) -> Result<f64> {
        self.integrate_density(u_max, (0.0, 2.0 * self.w), |u, v| self.intrinsic_curvature_density(u, v), 1e-9)
    }

    /// Total intrinsic curvature over the square |u|, |v| ≤ U; needs U within the integrated domain.
    pub fn total_curvature_intrinsic_square(&self, half_side: f64) -> Result<f64> {
        if !(half_side > 0.0 && half_side <= self.v_max) {
            return Err(Error::OutOfDomain { v: half_side, lo: 0.0, hi: self.v_max });
        }
        self.integrate_density(half_side, (-half_side, half_side), |u, v| self.intrinsic_curvature_density(u, v), 1e-9)
    }

    /// The rotations by π about the x₃-axis, the line (x, x, 0) and the line (x, −x, 0),
    /// and the isometry relating H_K to H_{−K}, each on 100 random parameter points.
    pub fn symmetry_check(&self) -> Result<VerificationReport> {
        let mut rep = VerificationReport::new(format!("helicoid K={} symmetries", self.k));
        let mut rng = ChaCha8Rng::seed_from_u64(0x4845_4c49);
        let pts: Vec<(f64, f64)> = (0..100)
            .map(|_| (rng.gen_range(-2.0..2.0), rng.gen_range(-self.w..self.w)))
            .collect();
        let loc = |u: f64, v: f64| format!("z={u:.6}{v:+.6}i");
        let dev = |lhs: Result<Sol3Point>, rhs: Result<Sol3Point>| match (lhs, rhs) {
            (Ok(a), Ok(b)) => a.max_abs_diff(&b),
            _ => f64::NAN,
        };
        let words = [
            ("rotation_x3_axis", IsotropyElement::SIGMA2, -1.0, 1.0),
            ("rotation_diagonal", IsotropyElement::SIGMA_TAU, 1.0, -1.0),
            ("rotation_antidiagonal", IsotropyElement::SIGMA3_TAU, -1.0, -1.0),
        ];
        for (name, word, su, sv) in words {
            rep.push_max(
                name,
                pts.iter().map(|&(u, v)| {
                    (dev(self.immerse(su * u, sv * v), self.immerse(u, v).map(|p| word.apply(p))), loc(u, v))
                }),
                1e-10,
            );
        }
        let opposite = HelicoidModel::build_with(-self.k, self.v_max)?;
        let shift = Sol3Point::new(0.0, 0.0, self.profile(self.w / 2.0)?.x3);
        rep.push_max(
            "parameter_sign_flip",
            pts.iter().map(|&(u, v)| {
                let rhs = self
                    .immerse(u, v + self.w / 2.0)
                    .map(|p| group_mul(shift, IsotropyElement::SIGMA3.apply(p)));
                (dev(opposite.immerse(u, v), rhs), loc(u, v))
            }),
            1e-8,
        );
        Ok(rep)
    }

    /// (0, 0, T) ∗ x(z) = x(z + 2iW) on 100 random points.
    pub fn screw_invariance_check(&self) -> VerificationReport {
        let mut rep = VerificationReport::new(format!("helicoid K={} screw motion", self.k));
        let mut rng = ChaCha8Rng::seed_from_u64(0x5343_5257);
        let t = Sol3Point::new(0.0, 0.0, self.period_t());
        let (lo, hi) = (-self.v_max, self.v_max - 2.0 * self.w);
        rep.push_max(
            "screw_invariance",
            (0..100).map(|_| {
                let (u, v) = (rng.gen_range(-2.0..2.0), rng.gen_range(lo..hi));
                let r = match (self.immerse(u, v), self.immerse(u, v + 2.0 * self.w)) {
                    (Ok(a), Ok(b)) => group_mul(t, a).max_abs_diff(&b),
                    _ => f64::NAN,
                };
                (r, format!("z={u:.6}{v:+.6}i"))
            }),
            1e-8,
        );
        rep
    }
}

/// T(K) = 2x₃(W) for K in [0, 1), with T(0) = 0.
fn period_of(k: f64) -> Result<f64> {
    if k == 0.0 {
        return Ok(0.0);
    }
    let w = period_estimate(k)?;
    Ok(HelicoidModel::build_with(k, 1.05 * w + 0.1)?.period_t())
}

/// The unique K ∈ (−1, 1) \ {0} whose helicoid has screw translation T.
///
/// T_{−K} = −T_K, so negative T is inverted through the sign flip. T grows only
/// logarithmically as K → 1; translations beyond the value at 1 − 1e−12 are rejected.
pub fn invert_period(t: f64) -> Result<f64> {
    if !(t != 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter { name: "T", value: t, range: "nonzero and finite" });
    }
    if t < 0.0 {
        return invert_period(-t).map(|k| -k);
    }
    let mut hi = 0.5;
    loop {
        if period_of(hi)? > t {
            break;
        }
        if 1.0 - hi < 1e-12 {
            return Err(Error::NotBracketed { target: t, lo: 0.0, hi });
        }
        hi = 1.0 - (1.0 - hi) / 4.0;
    }
    false_position_root(|k| period_of(k).map(|p| p - t).unwrap_or(f64::NAN), 0.0, hi, 1e-14, 1e-13 * t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::coord_components_to_frame;

    fn fd_partials(m: &HelicoidModel, u: f64, v: f64, h: f64) -> (FrameVector, FrameVector) {
        let p = m.immerse(u, v).unwrap();
        let d = |a: Sol3Point, b: Sol3Point| {
            coord_components_to_frame(p, [(a.x1 - b.x1) / (2.0 * h), (a.x2 - b.x2) / (2.0 * h), (a.x3 - b.x3) / (2.0 * h)])
        };
        (
            d(m.immerse(u + h, v).unwrap(), m.immerse(u - h, v).unwrap()),
            d(m.immerse(u, v + h).unwrap(), m.immerse(u, v - h).unwrap()),
        )
    }

    #[test]
    fn degenerate_parameters_rejected() {
        assert!(matches!(HelicoidModel::build(0.0), Err(Error::InvalidParameter { .. })));
        assert!(HelicoidModel::build(1.0).is_err());
        assert!(HelicoidModel::build(-1.5).is_err());
    }

    #[test]
    fn special_curves() {
        let m = HelicoidModel::build(0.4).unwrap();
        assert_eq!(m.immerse(0.0, 0.0).unwrap(), Sol3Point::ORIGIN);
        let axis = m.immerse(0.0, 1.3).unwrap();
        assert_eq!((axis.x1, axis.x2), (0.0, 0.0));
        let line = m.immerse(0.8, 0.0).unwrap();
        // at v = 0: b = 0, b′ = √(1 − K)
        let expect = 2f64.sqrt() / 2.0 * 0.4 / (1.0 + 0.6f64.sqrt()) * 0.8f64.sinh();
        assert!((line.x1 - expect).abs() < 1e-15 && (line.x2 - expect).abs() < 1e-15 && line.x3 == 0.0);
    }

    #[test]
    fn factor_at_origin() {
        let m = HelicoidModel::build(0.4).unwrap();
        let l = m.conformal_factor(0.0, 0.0).unwrap();
        assert!((l - 0.16 / (1.0 + 0.6f64.sqrt()).powi(2)).abs() < 1e-15);
    }

    #[test]
    fn analytic_partials_match_fd() {
        for k in [0.4, -0.7] {
            let m = HelicoidModel::build(k).unwrap();
            for (u, v) in [(0.3, 0.2), (-1.1, 2.9), (1.7, -4.0)] {
                let j = m.jet(u, v).unwrap();
                let (fu, fv) = fd_partials(&m, u, v, 1e-5);
                let s = j.lambda.sqrt();
                assert!((fu - j.xu).max_abs() < 1e-6 * s.max(1.0), "{k} {u} {v}");
                assert!((fv - j.xv).max_abs() < 1e-6 * s.max(1.0), "{k} {u} {v}");
                let (a, b, c) = j.conformality_defects();
                assert!(a < 1e-12 && b < 1e-12 && c < 1e-12);
                assert!(j.normal_defect() < 1e-12);
            }
        }
    }

    #[test]
    fn period_oracles() {
        let k = 0.4;
        let m = HelicoidModel::build(k).unwrap();
        let w = quadrature(|u| 1.0 / b_rate(k, u), 0.0, PI, 1e-12).unwrap().value;
        let x3w = k * quadrature(|u| 1.0 / (b_rate(k, u) * (1.0 + b_rate(k, u))), 0.0, PI, 1e-12)
            .unwrap()
            .value;
        assert!((m.period_w() - w).abs() < 1e-8);
        assert!((m.height_at_period() - x3w).abs() < 1e-8);
        assert!((m.height_at_period() - 0.663_088_273_98).abs() < 1e-10);
        let neg = HelicoidModel::build(-k).unwrap();
        assert!((neg.period_t() + m.period_t()).abs() < 1e-10);
    }

    #[test]
    fn invert_round_trip() {
        let m = HelicoidModel::build(0.4).unwrap();
        let k = invert_period(m.period_t()).unwrap();
        assert!((k - 0.4).abs() < 1e-6, "{k}");
        assert!(invert_period(1e-6).unwrap() < 1e-5);
        assert!(invert_period(8.0).unwrap() > 0.99);
        assert!(invert_period(0.0).is_err());
        assert!((invert_period(-m.period_t()).unwrap() + k).abs() < 1e-12);
    }

    #[test]
    fn shape_determinant_limits() {
        let m = HelicoidModel::build(0.4).unwrap();
        for v in [0.1, 1.0, 2.5] {
            assert!((m.shape_determinant(10.0, v).unwrap() + 1.0).abs() < 1e-6);
            assert!((m.shape_determinant(-10.0, v).unwrap() + 1.0).abs() < 1e-6);
            let (p, q) = (m.shape_determinant(0.7, v).unwrap(), m.shape_determinant(-0.7, v).unwrap());
            assert_eq!(p, q);
            let (a, c) = m.shape_operator_coefficients(0.7, v).unwrap();
            assert!((p + a * a + c * c).abs() < 1e-12);
        }
    }

    #[test]
    fn symmetries_and_screw_motion() {
        let m = HelicoidModel::build(0.4).unwrap();
        let rep = m.symmetry_check().unwrap();
        assert!(rep.all_passed(), "{rep}");
        assert!(m.screw_invariance_check().all_passed());
    }

    #[test]
    fn curvature_density_matches_pointwise_curvature() {
        let m = HelicoidModel::build(-0.7).unwrap();
        for &(u, v) in &[(0.0, 0.0), (0.7, 1.3), (-1.9, -2.4), (2.5, 4.1)] {
            let direct = m.gauss_curvature_intrinsic(u, v).unwrap() * m.conformal_factor(u, v).unwrap();
            let d = m.intrinsic_curvature_density(u, v).unwrap();
            assert!((d - direct).abs() < 1e-9 * (1.0 + m.conformal_factor(u, v).unwrap()), "{d} {direct}");
        }
    }

    #[test]
    fn intrinsic_total_over_a_period() {
        // the (ln p)″ term integrates to zero over a period in v
        let m = HelicoidModel::build(0.4).unwrap();
        let t = m.total_curvature_intrinsic(3.0).unwrap();
        assert!((t + 4.0 * m.period_w() * 3f64.tanh()).abs() < 1e-7, "{t}");
    }
}
