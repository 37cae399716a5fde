//! The Gauss map of a conformal minimal immersion and the quantities built from it.
//!
//! The Gauss map is the stereographic image, from the south pole, of the frame
//! components of the unit normal. It is harmonic into the singular metric on the
//! sphere that degenerates where g² = ḡ², that is, on the real and imaginary axes.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::FrameVector;

/// Value and Wirtinger derivatives of a Gauss map at one parameter point z = u + iv.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussSample {
    pub g: Complex64,
    pub g_z: Complex64,
    pub g_zbar: Complex64,
    pub g_zzbar: Complex64,
}

impl GaussSample {
    /// From real partials: g_z = ½(g_u − i g_v), g_z̄ = ½(g_u + i g_v), g_zz̄ = ¼(g_uu + g_vv).
    pub fn from_partials(g: Complex64, g_u: Complex64, g_v: Complex64, g_uu: Complex64, g_vv: Complex64) -> Self {
        let i = Complex64::i();
        GaussSample {
            g,
            g_z: 0.5 * (g_u - i * g_v),
            g_zbar: 0.5 * (g_u + i * g_v),
            g_zzbar: 0.25 * (g_uu + g_vv),
        }
    }

    /// For g = e^{−u}·w(v), given w, w′, w″ at v.
    pub fn separable(u: f64, w: Complex64, dw: Complex64, d2w: Complex64) -> Self {
        let e = (-u).exp();
        let g = e * w;
        Self::from_partials(g, -g, e * dw, g, e * d2w)
    }

    /// The map i·g.
    pub fn times_i(&self) -> Self {
        let i = Complex64::i();
        GaussSample { g: i * self.g, g_z: i * self.g_z, g_zbar: i * self.g_zbar, g_zzbar: i * self.g_zzbar }
    }

    /// The map 1/g. Requires g ≠ 0.
    pub fn reciprocal(&self) -> Self {
        let g = self.g;
        let g2 = g * g;
        GaussSample {
            g: 1.0 / g,
            g_z: -self.g_z / g2,
            g_zbar: -self.g_zbar / g2,
            g_zzbar: 2.0 * self.g_z * self.g_zbar / (g2 * g) - self.g_zzbar / g2,
        }
    }

    /// The map ḡ; ∂_z ḡ is the conjugate of ∂_z̄ g.
    pub fn conjugate(&self) -> Self {
        GaussSample {
            g: self.g.conj(),
            g_z: self.g_zbar.conj(),
            g_zbar: self.g_z.conj(),
            g_zzbar: self.g_zzbar.conj(),
        }
    }

    /// g² − ḡ², rejecting the singular locus where it vanishes.
    fn denominator(&self) -> Result<Complex64> {
        let g = self.g;
        if g.re == 0.0 || g.im == 0.0 {
            return Err(Error::SingularLocus { re: g.re, im: g.im });
        }
        Ok(g * g - g.conj() * g.conj())
    }
}

/// Central-difference Gauss sample for an arbitrary map (u, v) ↦ g.
pub fn fd_gauss_sample<G>(g: G, u: f64, v: f64, h: f64) -> GaussSample
where
    G: Fn(f64, f64) -> Complex64,
{
    let c = g(u, v);
    let (ue, uw) = (g(u + h, v), g(u - h, v));
    let (vn, vs) = (g(u, v + h), g(u, v - h));
    GaussSample::from_partials(
        c,
        (ue - uw) / (2.0 * h),
        (vn - vs) / (2.0 * h),
        (ue - 2.0 * c + uw) / (h * h),
        (vn - 2.0 * c + vs) / (h * h),
    )
}

/// Unit normal (2 Re g, 2 Im g, 1 − |g|²)/(1 + |g|²).
pub fn normal_from_gauss(g: Complex64) -> FrameVector {
    let m = g.norm_sqr();
    let d = 1.0 + m;
    FrameVector::new(2.0 * g.re / d, 2.0 * g.im / d, (1.0 - m) / d)
}

/// Stereographic image (N₁ + iN₂)/(1 + N₃) of a unit vector.
pub fn gauss_from_normal(n: &FrameVector) -> Result<Complex64> {
    let [n1, n2, n3] = n.0;
    let d = 1.0 + n3;
    if d == 0.0 {
        return Err(Error::SouthPole);
    }
    Ok(Complex64::new(n1 / d, n2 / d))
}

/// |(g² − ḡ²)·g_zz̄ − 2g·g_z·g_z̄|, zero exactly for harmonic maps into the singular sphere metric.
pub fn harmonic_residual(s: &GaussSample) -> Result<f64> {
    let d = s.denominator()?;
    Ok((d * s.g_zzbar - 2.0 * s.g * s.g_z * s.g_zbar).norm())
}

/// Coefficient q of the Hopf differential q dz²: g_z·(ḡ)_z/(g² − ḡ²).
pub fn hopf_q(s: &GaussSample) -> Result<Complex64> {
    let d = s.denominator()?;
    Ok(s.g_z * s.g_zbar.conj() / d)
}

/// Right-hand sides (x₁_z, x₂_z, x₃_z) of the representation formula at height x₃.
pub fn representation_rhs(s: &GaussSample, x3: f64) -> Result<[Complex64; 3]> {
    let d = s.denominator()?;
    let gb = s.g.conj();
    let gb2 = gb * gb;
    let i = Complex64::i();
    Ok([
        (-x3).exp() * (gb2 - 1.0) * s.g_z / d,
        i * x3.exp() * (gb2 + 1.0) * s.g_z / d,
        2.0 * gb * s.g_z / d,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pole_values() {
        assert_eq!(normal_from_gauss(c(0.0, 0.0)).0, [0.0, 0.0, 1.0]);
        assert_eq!(normal_from_gauss(c(1.0, 0.0)).0, [1.0, 0.0, 0.0]);
        assert_eq!(gauss_from_normal(&FrameVector::new(0.0, 0.0, 1.0)).unwrap(), c(0.0, 0.0));
        assert_eq!(gauss_from_normal(&FrameVector::new(1.0, 0.0, 0.0)).unwrap(), c(1.0, 0.0));
        assert_eq!(gauss_from_normal(&FrameVector::new(0.0, 0.0, -1.0)), Err(Error::SouthPole));
    }

    #[test]
    fn singular_locus_is_rejected() {
        let s = GaussSample::separable(0.0, c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0));
        assert!(matches!(harmonic_residual(&s), Err(Error::SingularLocus { .. })));
        assert!(hopf_q(&s.times_i()).is_err());
    }

    // g = e^{-u} e^{i(v - π/4)} is the flat member of the helicoid family: harmonic with q = 0.
    #[test]
    fn degenerate_family_has_zero_hopf() {
        let v: f64 = 0.37;
        let w = Complex64::from_polar(1.0, v - std::f64::consts::FRAC_PI_4);
        let s = GaussSample::separable(0.2, w, Complex64::i() * w, -w);
        assert!(harmonic_residual(&s).unwrap() < 1e-15);
        assert!(hopf_q(&s).unwrap().norm() < 1e-15);
    }

    #[test]
    fn transforms_match_finite_differences() {
        let g = |u: f64, v: f64| Complex64::new((-u).exp() * (v.sin() + 2.0), u * v + 0.5);
        let (u, v, h) = (0.3, -0.4, 1e-4);
        let s = fd_gauss_sample(g, u, v, h);
        let checks = [
            (s.times_i(), fd_gauss_sample(|a, b| Complex64::i() * g(a, b), u, v, h)),
            (s.reciprocal(), fd_gauss_sample(|a, b| 1.0 / g(a, b), u, v, h)),
            (s.conjugate(), fd_gauss_sample(|a, b| g(a, b).conj(), u, v, h)),
        ];
        for (analytic, fd) in checks {
            assert!((analytic.g - fd.g).norm() < 1e-14);
            assert!((analytic.g_z - fd.g_z).norm() < 1e-7);
            assert!((analytic.g_zbar - fd.g_zbar).norm() < 1e-7);
            assert!((analytic.g_zzbar - fd.g_zzbar).norm() < 1e-5);
        }
    }

    proptest! {
        #[test]
        fn stereographic_round_trip(re in -50.0f64..50.0, im in -50.0f64..50.0) {
            let g = c(re, im);
            let n = normal_from_gauss(g);
            prop_assert!((n.norm() - 1.0).abs() < 1e-14);
            let back = gauss_from_normal(&n).unwrap();
            prop_assert!((back - g).norm() <= 1e-14 * (1.0 + g.norm_sqr()));
        }

        #[test]
        fn unit_vector_round_trip(theta in 0.0f64..3.1, phi in 0.0f64..std::f64::consts::TAU) {
            let n = FrameVector::new(theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos());
            let back = normal_from_gauss(gauss_from_normal(&n).unwrap());
            prop_assert!((back - n).max_abs() < 1e-14 / (1.0 + theta.cos()).max(1e-2));
        }
    }
}
