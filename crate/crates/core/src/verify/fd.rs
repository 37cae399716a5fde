//! Central-difference jets and the curvature quantities built from them.
//!
//! Truncation error is O(h²) and rounding error O(ε/h²) for second partials,
//! balanced near h = 1e−4 in double precision.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{coord_components_to_frame, covariant_second_derivatives, ConnectionTable, FrameVector, Sol3Point};
use crate::jet::{ImmersionJet, SecondOrderJet};
use crate::verify::VerificationReport;

pub const DEFAULT_FD_STEP: f64 = 1e-4;

/// Conformality defect above which the conformal mean-curvature formula is refused.
const CONFORMALITY_GUARD: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvatureSample {
    pub mean: f64,
    pub gauss_intrinsic: f64,
    /// ⟨∇_{∂u}x_u, N⟩, ⟨∇_{∂v}x_v, N⟩.
    pub second_fundamental: [f64; 2],
}

fn sub(a: Sol3Point, b: Sol3Point, s: f64) -> [f64; 3] {
    [(a.x1 - b.x1) * s, (a.x2 - b.x2) * s, (a.x3 - b.x3) * s]
}

/// Coordinate partials up to second order by central differences with step `h`.
pub fn fd_jet<S>(surface: &S, u: f64, v: f64, h: f64) -> Result<SecondOrderJet>
where
    S: Fn(f64, f64) -> Result<Sol3Point>,
{
    if !(1e-6..=1e-3).contains(&h) {
        return Err(Error::Precondition(format!("finite-difference step {h} outside [1e-6, 1e-3]")));
    }
    let c = surface(u, v)?;
    let e = surface(u + h, v)?;
    let w = surface(u - h, v)?;
    let n = surface(u, v + h)?;
    let s = surface(u, v - h)?;
    let ne = surface(u + h, v + h)?;
    let nw = surface(u - h, v + h)?;
    let se = surface(u + h, v - h)?;
    let sw = surface(u - h, v - h)?;
    for p in [c, e, w, n, s, ne, nw, se, sw] {
        if !p.is_finite() {
            return Err(Error::NonFinite(format!("surface near ({u}, {v})")));
        }
    }
    let h2 = 1.0 / (h * h);
    let second = |a: Sol3Point, b: Sol3Point| {
        [(a.x1 - 2.0 * c.x1 + b.x1) * h2, (a.x2 - 2.0 * c.x2 + b.x2) * h2, (a.x3 - 2.0 * c.x3 + b.x3) * h2]
    };
    let a = sub(ne, nw, 1.0);
    let b = sub(se, sw, 1.0);
    let q = 0.25 * h2;
    Ok(SecondOrderJet {
        position: c,
        xu: sub(e, w, 0.5 / h),
        xv: sub(n, s, 0.5 / h),
        xuu: second(e, w),
        xvv: second(n, s),
        xuv: [(a[0] - b[0]) * q, (a[1] - b[1]) * q, (a[2] - b[2]) * q],
    })
}

/// Frame-component first-order jet with N = x_u × x_v/|x_u × x_v| and λ = (‖x_u‖² + ‖x_v‖²)/2.
pub fn first_order_jet(j: &SecondOrderJet, u: f64, v: f64) -> ImmersionJet {
    let xu = coord_components_to_frame(j.position, j.xu);
    let xv = coord_components_to_frame(j.position, j.xv);
    ImmersionJet {
        u,
        v,
        position: j.position,
        xu,
        xv,
        normal: xu.cross(&xv).normalized(),
        lambda: 0.5 * (xu.norm_sq() + xv.norm_sq()),
    }
}

/// H = (⟨∇_{x_u}x_u, N⟩ + ⟨∇_{x_v}x_v, N⟩)/(2λ) for a conformal parametrization.
pub fn mean_curvature<S>(surface: &S, u: f64, v: f64, h: f64) -> Result<f64>
where
    S: Fn(f64, f64) -> Result<Sol3Point>,
{
    let j = fd_jet(surface, u, v, h)?;
    let first = first_order_jet(&j, u, v);
    let (a, b, c) = first.conformality_defects();
    if a.max(b).max(c) > CONFORMALITY_GUARD {
        return Err(Error::Precondition(format!(
            "parametrization is not conformal at ({u}, {v}): defect {:.3e}",
            a.max(b).max(c)
        )));
    }
    let (uu, vv) = covariant_second_derivatives(&j);
    Ok((uu.dot(&first.normal) + vv.dot(&first.normal)) / (2.0 * first.lambda))
}

/// 𝒦 = −Δ ln λ/(2λ) with the five-point Laplacian.
pub fn intrinsic_gauss_curvature<L>(lambda: &L, u: f64, v: f64, h: f64) -> Result<f64>
where
    L: Fn(f64, f64) -> Result<f64>,
{
    let ln = |a: f64, b: f64| -> Result<f64> {
        let l = lambda(a, b)?;
        if !(l > 0.0) {
            return Err(Error::Precondition(format!("conformal factor {l} is not positive at ({a}, {b})")));
        }
        Ok(l.ln())
    };
    let c = ln(u, v)?;
    let lap = (ln(u + h, v)? + ln(u - h, v)? + ln(u, v + h)? + ln(u, v - h)? - 4.0 * c) / (h * h);
    Ok(-lap / (2.0 * c.exp()))
}

/// Curvature data of a surface at one point from finite differences.
pub fn curvature_sample<S, L>(surface: &S, lambda: &L, u: f64, v: f64, h: f64) -> Result<CurvatureSample>
where
    S: Fn(f64, f64) -> Result<Sol3Point>,
    L: Fn(f64, f64) -> Result<f64>,
{
    let j = fd_jet(surface, u, v, h)?;
    let first = first_order_jet(&j, u, v);
    let (uu, vv) = covariant_second_derivatives(&j);
    let ii = [uu.dot(&first.normal), vv.dot(&first.normal)];
    Ok(CurvatureSample {
        mean: (ii[0] + ii[1]) / (2.0 * first.lambda),
        gauss_intrinsic: intrinsic_gauss_curvature(lambda, u, v, h)?,
        second_fundamental: ii,
    })
}

/// Covariant derivatives ∇_{x_u}N, ∇_{x_v}N expressed in the basis (x_u, x_v).
///
/// N is differentiated as a frame field: ∇_X N = X(nⁱ)Eᵢ + Σ Xⁱnʲ∇_{Eᵢ}Eⱼ.
/// Returns [[⟨∇_{x_u}N, x_u⟩/λ, ⟨∇_{x_u}N, x_v⟩/λ], [⟨∇_{x_v}N, x_u⟩/λ, ⟨∇_{x_v}N, x_v⟩/λ]].
pub fn shape_operator<S, N>(surface: &S, normal: &N, u: f64, v: f64, h: f64) -> Result<[[f64; 2]; 2]>
where
    S: Fn(f64, f64) -> Result<Sol3Point>,
    N: Fn(f64, f64) -> Result<FrameVector>,
{
    let j = fd_jet(surface, u, v, h)?;
    let first = first_order_jet(&j, u, v);
    if !(first.lambda > 1e-300) {
        return Err(Error::Precondition(format!("degenerate tangent plane at ({u}, {v})")));
    }
    let n = normal(u, v)?;
    let du = (normal(u + h, v)? - normal(u - h, v)?) * (0.5 / h);
    let dv = (normal(u, v + h)? - normal(u, v - h)?) * (0.5 / h);
    let table = ConnectionTable::sol3();
    let nu = du + table.covariant(&first.xu, &n);
    let nv = dv + table.covariant(&first.xv, &n);
    let l = first.lambda;
    Ok([
        [nu.dot(&first.xu) / l, nu.dot(&first.xv) / l],
        [nv.dot(&first.xu) / l, nv.dot(&first.xv) / l],
    ])
}

/// Compares finite-difference shape-operator coefficients with expected values
/// `[[a, c], [c, −a]]` produced by `expected`, and checks the trace vanishes.
pub fn shape_operator_check<S, N, E>(
    surface: &S,
    normal: &N,
    expected: &E,
    points: &[(f64, f64)],
    h: f64,
    tol: f64,
) -> Result<VerificationReport>
where
    S: Fn(f64, f64) -> Result<Sol3Point>,
    N: Fn(f64, f64) -> Result<FrameVector>,
    E: Fn(f64, f64) -> Result<(f64, f64)>,
{
    let mut rep = VerificationReport::new("shape operator");
    let mut coeff = Vec::new();
    let mut trace = Vec::new();
    for &(u, v) in points {
        let m = shape_operator(surface, normal, u, v, h)?;
        let (a, c) = expected(u, v)?;
        let scale = 1.0 + a.abs().max(c.abs());
        let d = [(m[0][0] - a), (m[0][1] - c), (m[1][0] - c), (m[1][1] + a)]
            .iter()
            .fold(0.0f64, |acc, x| acc.max(x.abs()))
            / scale;
        let loc = format!("z={u:.6}{v:+.6}i");
        coeff.push((d, loc.clone()));
        trace.push(((m[0][0] + m[1][1]).abs() / scale, loc));
    }
    rep.push_max("shape_operator_coefficients", coeff, tol);
    rep.push_max("shape_operator_trace", trace, tol);
    Ok(rep)
}
