//! The two ends of the catenoid family.
//!
//! As α → 0, the catenoid rescaled by u′ = u + ln α converges to a plane.
//! At α = 1 the angle functions have closed forms, and the immersion (translated
//! by (−1/2, 0, 0)) is an entire minimal graph x₂ = f(x₁, x₃).

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::catenoid::CatenoidModel;
use crate::error::{Error, Result};
use crate::geometry::{group_mul, FrameVector, Sol3Point};
use crate::ode::{default_step, integrate_symmetric, Parity};
use crate::verify::{mean_curvature, VerificationReport, DEFAULT_FD_STEP};
use crate::weierstrass::{harmonic_residual, normal_from_gauss, GaussSample};

/// ρ at α = 1: arctan(tanh v).
pub fn graph_rho(v: f64) -> f64 {
    v.tanh().atan()
}

/// γ at α = 1: −½ ln cosh 2v.
pub fn graph_gamma(v: f64) -> f64 {
    -0.5 * (2.0 * v).cosh().ln()
}

/// F at α = 1: ln cosh v.
pub fn graph_height(v: f64) -> f64 {
    v.cosh().ln()
}

/// Analytic derivatives (ρ′, γ′, F′) = (1/cosh 2v, −tanh 2v, tanh v).
pub fn graph_profile_rates(v: f64) -> [f64; 3] {
    [1.0 / (2.0 * v).cosh(), -(2.0 * v).tanh(), v.tanh()]
}

/// 𝐱(u + iv) = (−tanh v (1 + e^{−2u})/2, e^{2u}/4 − u/2 − cosh 2v/4, u + ln cosh v).
pub fn graph_immerse(u: f64, v: f64) -> Sol3Point {
    Sol3Point::new(
        -0.5 * v.tanh() * (1.0 + (-2.0 * u).exp()),
        0.25 * (2.0 * u).exp() - 0.5 * u - 0.25 * (2.0 * v).cosh(),
        u + graph_height(v),
    )
}

/// The α = 1 immersion before translation; its first coordinate is
/// −e^{−2u} tanh v/2 + e^{−v}/(2 cosh v).
pub fn graph_immerse_untranslated(u: f64, v: f64) -> Sol3Point {
    let t = graph_immerse(u, v);
    Sol3Point::new(-0.5 * (-2.0 * u).exp() * v.tanh() + (-v).exp() / (2.0 * v.cosh()), t.x2, t.x3)
}

/// g = −i e^{−u}(cosh v + i sinh v) with Wirtinger derivatives.
pub fn graph_gauss_sample(u: f64, v: f64) -> GaussSample {
    let w = Complex64::new(v.sinh(), -v.cosh());
    let dw = Complex64::new(v.cosh(), -v.sinh());
    GaussSample::separable(u, w, dw, w)
}

pub fn graph_normal(u: f64, v: f64) -> FrameVector {
    normal_from_gauss(graph_gauss_sample(u, v).g)
}

/// Frame component N₂ = −2 cosh v e^{−u}/(1 + e^{−2u} cosh 2v); ⟨N, ∂₂⟩ = e^{−x₃}N₂.
pub fn graph_transversality(u: f64, v: f64) -> f64 {
    -2.0 * v.cosh() * (-u).exp() / (1.0 + (-2.0 * u).exp() * (2.0 * v).cosh())
}

/// The section of the graph by {x₃ = level}: t ↦ 𝐱(level − ln cosh t + it).
pub fn graph_section(level: f64, t: f64) -> [f64; 2] {
    let c2 = t.cosh().powi(2);
    [
        -0.5 * t.tanh() * (1.0 + (-2.0 * level).exp() * c2),
        (2.0 * level).exp() / (4.0 * c2) - 0.5 * level + 0.5 * graph_height(t) - 0.25 * (2.0 * t).cosh(),
    ]
}

/// d/dt of the first section coordinate: (tanh² t − 1)/2 − e^{−2λ}(cosh² t + sinh² t)/2.
pub fn graph_section_x1_rate(level: f64, t: f64) -> f64 {
    0.5 * (t.tanh().powi(2) - 1.0) - 0.5 * (-2.0 * level).exp() * (2.0 * t).cosh()
}

/// Relative residual allowed for |𝐱₁(t) − x₁| in `graph_eval`.
pub const GRAPH_EVAL_RESIDUAL: f64 = 1e-10;

/// f(x₁, x₃): the x₂ coordinate of the unique point of the graph above (x₁, x₃).
///
/// The first section coordinate is a decreasing bijection of ℝ, so a doubling
/// search brackets the preimage and bisection locates it.
pub fn graph_eval(x1: f64, x3: f64) -> Result<f64> {
    if !(x1.is_finite() && x3.is_finite()) {
        return Err(Error::NonFinite(format!("graph argument ({x1}, {x3})")));
    }
    let g = |t: f64| graph_section(x3, t)[0] - x1;
    let mut span = 1.0f64;
    while !(g(-span) >= 0.0 && g(span) <= 0.0) {
        span *= 2.0;
        if span > 1e3 {
            return Err(Error::NotBracketed { target: x1, lo: -span, hi: span });
        }
    }
    let (mut lo, mut hi) = (-span, span);
    while hi - lo > 0.0 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = if g(lo).abs() <= g(hi).abs() { lo } else { hi };
    let residual = g(t).abs();
    if residual > GRAPH_EVAL_RESIDUAL * x1.abs().max(1.0) {
        return Err(Error::Precondition(format!("graph bisection residual {residual:e} at x1 = {x1}")));
    }
    Ok(graph_section(x3, t)[1])
}

/// Integrates ρ′ = cos 2ρ, γ′ = −sin 2ρ, F′ = sin 2ρ/(1 + cos 2ρ) and compares
/// with the closed forms on [−5, 5].
pub fn closed_form_check() -> Result<VerificationReport> {
    let sol = integrate_symmetric(
        |_, y: &[f64; 3]| {
            let (s, c) = (2.0 * y[0]).sin_cos();
            [c, -s, s / (1.0 + c)]
        },
        [0.0, 0.0, 0.0],
        5.0,
        default_step(),
        [Parity::Odd, Parity::Even, Parity::Even],
    )?;
    let mut rep = VerificationReport::new("graph profile closed forms");
    let vs: Vec<f64> = sol.nodes().into_iter().step_by(61).chain([5.0]).collect();
    let closed: [fn(f64) -> f64; 3] = [graph_rho, graph_gamma, graph_height];
    for (i, name) in ["rho_closed_form", "gamma_closed_form", "height_closed_form"].into_iter().enumerate() {
        rep.push_max(
            name,
            vs.iter().map(|&v| ((sol.eval(v).map(|y| y[i]).unwrap_or(f64::NAN) - closed[i](v)).abs(), format!("v={v:.6}"))),
            1e-8,
        );
    }
    let grid: Vec<f64> = (0..=200).map(|k| -5.0 + 0.05 * k as f64).collect();
    rep.push_max(
        "rho_equation",
        grid.iter().map(|&v| ((graph_profile_rates(v)[0] - (2.0 * graph_rho(v)).cos()).abs(), format!("v={v:.3}"))),
        1e-12,
    );
    rep.push_max(
        "gamma_equation",
        grid.iter().map(|&v| ((graph_profile_rates(v)[1] + (2.0 * graph_rho(v)).sin()).abs(), format!("v={v:.3}"))),
        1e-12,
    );
    rep.push_max(
        "height_equation",
        grid.iter().map(|&v| {
            let r = 2.0 * graph_rho(v);
            ((graph_profile_rates(v)[2] - r.sin() / (1.0 + r.cos())).abs(), format!("v={v:.3}"))
        }),
        1e-12,
    );
    Ok(rep)
}

/// Grid for the α → 0 comparison: 21 values of u′ in [−1, 1], 41 of v′ in [0, 2π].
pub const PLANE_LIMIT_GRID: (usize, usize) = (21, 41);

/// Sup-distance threshold at α = 10⁻³, calibrated once against the direct evaluation.
pub const PLANE_LIMIT_THRESHOLD: f64 = 1.5e-2;

/// The plane (−e^{u′} sin v′/2, e^{u′} cos v′/2, 0).
pub fn plane_limit(u: f64, v: f64) -> Sol3Point {
    Sol3Point::new(-0.5 * u.exp() * v.sin(), 0.5 * u.exp() * v.cos(), 0.0)
}

/// Sup-distance between the rescaled catenoid and its planar limit, and the
/// largest |x₃| on the grid.
pub fn plane_limit_distance(alpha: f64) -> Result<(f64, f64)> {
    if !(alpha > 0.0 && alpha <= 0.1) {
        return Err(Error::InvalidParameter { name: "alpha", value: alpha, range: "(0, 0.1]" });
    }
    let m = CatenoidModel::build(alpha)?;
    let (nu, nv) = PLANE_LIMIT_GRID;
    let shift = alpha.ln();
    let (mut dist, mut height) = (0.0f64, 0.0f64);
    for i in 0..nu {
        let up = -1.0 + 2.0 * i as f64 / (nu - 1) as f64;
        for j in 0..nv {
            let vp = 2.0 * PI * j as f64 / (nv - 1) as f64;
            let x = m.immerse(up - shift, vp)?;
            dist = dist.max(x.coord_distance(&plane_limit(up, vp)));
            height = height.max(x.x3.abs());
        }
    }
    Ok((dist, height))
}

/// The α → 0 rescaled limit at α ∈ {10⁻¹, 10⁻², 10⁻³}.
pub fn alpha_zero_limit_check() -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("plane limit");
    let alphas = [1e-1, 1e-2, 1e-3];
    let data: Vec<(f64, f64)> = alphas.iter().map(|&a| plane_limit_distance(a)).collect::<Result<_>>()?;
    for (a, (d, h)) in alphas.iter().zip(&data) {
        rep.push(format!("sup_distance_alpha_{a:e}"), *d, f64::INFINITY, "grid");
        rep.push(format!("height_alpha_{a:e}"), *h, f64::INFINITY, "grid");
    }
    rep.push_condition("distance_decreasing", data[0].0 > data[1].0 && data[1].0 > data[2].0, "alpha=1e-1,1e-2,1e-3");
    rep.push_condition("height_decreasing", data[0].1 > data[1].1 && data[1].1 > data[2].1, "alpha=1e-1,1e-2,1e-3");
    rep.push("sup_distance_alpha_1e-3_threshold", data[2].0, PLANE_LIMIT_THRESHOLD, "grid");
    Ok(rep)
}

/// Values of x₂/(x₁ e^{2x₃}) at the level, for the given first coordinates.
pub fn asymptote_ratios(level: f64, x1s: &[f64]) -> Result<Vec<f64>> {
    x1s.iter().map(|&x1| Ok(graph_eval(x1, level)? / (x1 * (2.0 * level).exp()))).collect()
}

/// Harmonicity, minimality, transversality and section monotonicity of the graph.
pub fn residual_suite_graph() -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("entire graph");
    // offset keeps v away from 0, where g is pure imaginary
    let off = 1.0 / 2f64.sqrt() * 0.1;
    let grid: Vec<(f64, f64)> = (0..41)
        .flat_map(|i| (0..41).map(move |j| (-2.0 + 0.1 * i as f64 + off * 0.37, -2.0 + 0.1 * j as f64 + off)))
        .collect();
    rep.push_max(
        "harmonic_residual",
        grid.iter().map(|&(u, v)| {
            (harmonic_residual(&graph_gauss_sample(u, v)).unwrap_or(f64::NAN), format!("z={u:.4}{v:+.4}i"))
        }),
        1e-10,
    );
    let surface = |u: f64, v: f64| Ok(graph_immerse(u, v));
    rep.push_max(
        "mean_curvature",
        grid.iter().step_by(7).map(|&(u, v)| {
            (mean_curvature(&surface, u, v, DEFAULT_FD_STEP).map(f64::abs).unwrap_or(f64::NAN), format!("z={u:.4}{v:+.4}i"))
        }),
        1e-4,
    );
    let mut worst = f64::NEG_INFINITY;
    let mut worst_at = String::new();
    for i in 0..101 {
        for j in 0..101 {
            let (u, v) = (-5.0 + 0.1 * i as f64, -5.0 + 0.1 * j as f64);
            let n2 = graph_transversality(u, v);
            if n2 > worst {
                worst = n2;
                worst_at = format!("z={u:.1}{v:+.1}i");
            }
        }
    }
    rep.push_condition("transversality_sign", worst < 0.0, worst_at);
    let mut rates = Vec::new();
    for level in [-2.0, 0.0, 10.0] {
        for k in 0..=200 {
            let t = -5.0 + 0.05 * k as f64;
            rates.push((graph_section_x1_rate(level, t), format!("level={level} t={t:.2}")));
        }
    }
    rep.push_condition("section_decreasing", rates.iter().all(|(r, _)| *r < 0.0), "levels -2,0,10");
    let translated = grid.iter().map(|&(u, v)| {
        let p = group_mul(Sol3Point::new(-0.5, 0.0, 0.0), graph_immerse_untranslated(u, v));
        (p.max_abs_diff(&graph_immerse(u, v)), format!("z={u:.4}{v:+.4}i"))
    });
    rep.push_max("translated_form", translated, 1e-12);
    let reflection = grid.iter().map(|&(u, v)| {
        let (p, q) = (graph_immerse(u, v), graph_immerse(u, -v));
        (Sol3Point::new(-p.x1, p.x2, p.x3).max_abs_diff(&q), format!("z={u:.4}{v:+.4}i"))
    });
    rep.push_max("reflection_x1", reflection, 1e-12);
    Ok(rep)
}
