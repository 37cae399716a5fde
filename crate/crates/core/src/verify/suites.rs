//! Full invariant suites for each surface kind.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::catenoid::{convexity_certificate, CatenoidModel, DEFAULT_SECTION_SAMPLES};
use crate::error::Result;
use crate::geometry::Sol3Point;
use crate::helicoid::HelicoidModel;
use crate::limits::{
    alpha_zero_limit_check, asymptote_ratios, closed_form_check, graph_eval, graph_immerse, residual_suite_graph,
};
use crate::ode::{b_rate, quadrature, rho_rate};
use crate::verify::{
    fd_jet, first_order_jet, intrinsic_gauss_curvature, mean_curvature, shape_operator_check, VerificationReport,
    DEFAULT_FD_STEP,
};
use crate::weierstrass::{fd_gauss_sample, harmonic_residual, hopf_q, representation_rhs, GaussSample};

/// Fractional grid offsets; irrational so grid lines miss the singular loci.
pub const GRID_OFFSET: (f64, f64) = (FRAC_1_SQRT_2 - 0.5, 0.618_033_988_749_895 - 0.5);

/// n × n points in the open square (−r, r)², shifted by `GRID_OFFSET` cells.
pub fn offset_grid(n: usize, r: f64) -> Vec<(f64, f64)> {
    let h = 2.0 * r / n as f64;
    let (ou, ov) = (GRID_OFFSET.0 + 0.5, GRID_OFFSET.1 + 0.5);
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (-r + h * (i as f64 + ou), -r + h * (j as f64 + ov))))
        .collect()
}

/// The 41 × 41 grid over [−2, 2]² used by the harmonicity and Hopf checks.
pub fn standard_grid() -> Vec<(f64, f64)> {
    offset_grid(41, 2.0)
}

fn loc(u: f64, v: f64) -> String {
    format!("z={u:.6}{v:+.6}i")
}

/// Harmonicity of g, ig, 1/g, ḡ; Hopf constancy; analytic-vs-FD Gauss derivatives.
fn gauss_map_checks<G, M>(rep: &mut VerificationReport, sample: G, map: M, q_expected: Complex64, grid: &[(f64, f64)])
where
    G: Fn(f64, f64) -> Result<GaussSample>,
    M: Fn(f64, f64) -> Result<Complex64>,
{
    let samples: Vec<(f64, f64, Option<GaussSample>)> =
        grid.iter().map(|&(u, v)| (u, v, sample(u, v).ok())).collect();
    let resid = |f: &dyn Fn(&GaussSample) -> GaussSample| {
        samples
            .iter()
            .map(|(u, v, s)| (s.as_ref().and_then(|s| harmonic_residual(&f(s)).ok()).unwrap_or(f64::NAN), loc(*u, *v)))
            .collect::<Vec<_>>()
    };
    rep.push_max("harmonic_residual", resid(&|s| *s), 1e-9);
    rep.push_max("harmonic_residual_times_i", resid(&|s| s.times_i()), 1e-9);
    rep.push_max("harmonic_residual_reciprocal", resid(&|s| s.reciprocal()), 1e-9);
    rep.push_max("harmonic_residual_conjugate", resid(&|s| s.conjugate()), 1e-9);
    let qs: Vec<(Complex64, String)> = samples
        .iter()
        .map(|(u, v, s)| {
            (s.as_ref().and_then(|s| hopf_q(s).ok()).unwrap_or(Complex64::new(f64::NAN, f64::NAN)), loc(*u, *v))
        })
        .collect();
    rep.push_max("hopf_value", qs.iter().map(|(q, l)| ((q - q_expected).norm(), l.clone())), 1e-8);
    let spread = |part: fn(&Complex64) -> f64| {
        let (lo, hi) = qs.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), (q, _)| {
            let x = part(q);
            if x.is_nan() {
                (f64::NAN, f64::NAN)
            } else {
                (a.min(x), b.max(x))
            }
        });
        hi - lo
    };
    rep.push("hopf_spread", spread(|q| q.re).max(spread(|q| q.im)), 1e-9, "grid");
    rep.push_max(
        "gauss_derivatives_fd",
        samples.iter().step_by(13).map(|(u, v, s)| {
            let fd = fd_gauss_sample(|a, b| map(a, b).unwrap_or(Complex64::new(f64::NAN, 0.0)), *u, *v, 1e-4);
            let r = match s {
                Some(s) => {
                    let scale = s.g.norm().max(1e-300);
                    [(s.g_z - fd.g_z).norm(), (s.g_zbar - fd.g_zbar).norm(), (s.g_zzbar - fd.g_zzbar).norm()]
                        .iter()
                        .fold(0.0f64, |m, x| m.max(*x))
                        / scale
                }
                None => f64::NAN,
            };
            (r, loc(*u, *v))
        }),
        1e-5,
    );
}

/// FD partials of the immersion against the representation formula.
fn representation_checks<S, G>(rep: &mut VerificationReport, surface: &S, sample: G, grid: &[(f64, f64)])
where
    S: Fn(f64, f64) -> Result<Sol3Point>,
    G: Fn(f64, f64) -> Result<GaussSample>,
{
    let i = Complex64::i();
    rep.push_max(
        "representation_formula",
        grid.iter().step_by(11).map(|&(u, v)| {
            let r = (|| -> Result<f64> {
                let j = fd_jet(surface, u, v, DEFAULT_FD_STEP)?;
                let rhs = representation_rhs(&sample(u, v)?, j.position.x3)?;
                let mut worst = 0.0f64;
                for k in 0..3 {
                    let xz = 0.5 * (Complex64::new(j.xu[k], 0.0) - i * j.xv[k]);
                    worst = worst.max((xz - rhs[k]).norm() / (1.0 + rhs[k].norm()));
                }
                Ok(worst)
            })();
            (r.unwrap_or(f64::NAN), loc(u, v))
        }),
        1e-6,
    );
}

/// Conformality with the closed-form factor, for analytic and FD jets, and FD mean curvature.
fn metric_checks<S, J, L>(rep: &mut VerificationReport, surface: &S, jet: J, lambda: L, grid: &[(f64, f64)])
where
    S: Fn(f64, f64) -> Result<Sol3Point>,
    J: Fn(f64, f64) -> Result<crate::jet::ImmersionJet>,
    L: Fn(f64, f64) -> Result<f64>,
{
    let defect = |j: &crate::jet::ImmersionJet, l: f64| {
        (j.xu.dot(&j.xv).abs() / l).max((j.xu.norm_sq() - l).abs() / l).max((j.xv.norm_sq() - l).abs() / l)
    };
    rep.push_max(
        "conformality_analytic",
        grid.iter().map(|&(u, v)| {
            let r = jet(u, v).and_then(|j| Ok(defect(&j, lambda(u, v)?).max(j.normal_defect())));
            (r.unwrap_or(f64::NAN), loc(u, v))
        }),
        1e-6,
    );
    rep.push_max(
        "conformality_fd",
        grid.iter().step_by(5).map(|&(u, v)| {
            let r = fd_jet(surface, u, v, DEFAULT_FD_STEP).and_then(|j| Ok(defect(&first_order_jet(&j, u, v), lambda(u, v)?)));
            (r.unwrap_or(f64::NAN), loc(u, v))
        }),
        1e-6,
    );
    rep.push_max(
        "mean_curvature",
        grid.iter().map(|&(u, v)| {
            (mean_curvature(surface, u, v, DEFAULT_FD_STEP).map(f64::abs).unwrap_or(f64::NAN), loc(u, v))
        }),
        1e-4,
    );
}

/// Dense sample points of [lo, hi] for the ODE structure checks.
fn dense_points(lo: f64, hi: f64, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts: Vec<f64> = (0..=400).map(|k| lo + (hi - lo) * k as f64 / 400.0).collect();
    pts.extend((0..200).map(|_| rng.gen_range(lo..hi)));
    pts
}

pub fn helicoid_suite(m: &HelicoidModel) -> Result<VerificationReport> {
    let k = m.k();
    let mut rep = VerificationReport::new(format!("helicoid K={k}"));
    let grid = standard_grid();
    let surface = |u: f64, v: f64| m.immerse(u, v);

    gauss_map_checks(&mut rep, |u, v| m.gauss_sample(u, v), |u, v| m.gauss_map(u, v), Complex64::new(0.0, k / 8.0), &grid);
    representation_checks(&mut rep, &surface, |u, v| m.gauss_sample(u, v), &grid);
    rep.push_max(
        "height_independent_of_u",
        grid.iter().map(|&(u, v)| {
            let r = m.gauss_sample(u, v).and_then(|s| representation_rhs(&s, m.profile(v)?.x3));
            (r.map(|x| (2.0 * x[2].re).abs()).unwrap_or(f64::NAN), loc(u, v))
        }),
        1e-12,
    );
    metric_checks(&mut rep, &surface, |u, v| m.jet(u, v), |u, v| m.conformal_factor(u, v), &grid);

    // period integrals
    let w_oracle = quadrature(|u| 1.0 / b_rate(k, u), 0.0, PI, 1e-12)?.value;
    let h_oracle = k * quadrature(|u| 1.0 / (b_rate(k, u) * (1.0 + b_rate(k, u))), 0.0, PI, 1e-12)?.value;
    rep.push("period_w_quadrature", (m.period_w() - w_oracle).abs(), 1e-8, format!("W={:.12}", m.period_w()));
    rep.push("period_height_quadrature", (m.height_at_period() - h_oracle).abs(), 1e-8, format!("x3(W)={:.12}", m.height_at_period()));

    // ODE structure
    let w = m.period_w();
    let (vm, h_w) = (m.v_max(), m.height_at_period());
    let pts = dense_points(-vm, vm - w - 1e-9, 0x4f44_4531);
    rep.push_max(
        "angle_translation",
        pts.iter().map(|&v| {
            let r = (|| Ok::<f64, crate::Error>((m.profile(v + w)?.b - m.profile(v)?.b - PI).abs()))();
            (r.unwrap_or(f64::NAN), format!("v={v:.6}"))
        }),
        1e-8,
    );
    rep.push_max(
        "height_translation",
        pts.iter().map(|&v| {
            let r = (|| Ok::<f64, crate::Error>((m.profile(v + w)?.x3 - m.profile(v)?.x3 - h_w).abs()))();
            (r.unwrap_or(f64::NAN), format!("v={v:.6}"))
        }),
        1e-8,
    );
    let sym = dense_points(0.0, vm, 0x4f44_4532);
    rep.push_max(
        "angle_parity",
        sym.iter().map(|&v| {
            let r = (|| Ok::<f64, crate::Error>((m.profile(-v)?.b + m.profile(v)?.b).abs() + (m.profile(-v)?.x3 + m.profile(v)?.x3).abs()))();
            (r.unwrap_or(f64::NAN), format!("v={v:.6}"))
        }),
        1e-10,
    );
    let mut half = Vec::new();
    let mut j = -((vm / (w / 2.0)).floor() as i64);
    while (j as f64) * w / 2.0 <= vm {
        if j % 2 != 0 {
            let v = j as f64 * w / 2.0;
            half.push((m.profile(v).map(|p| (p.b - j as f64 * PI / 2.0).abs()).unwrap_or(f64::NAN), format!("k={j}")));
        }
        j += 1;
    }
    rep.push_max("angle_half_period", half, 1e-8);
    let (lo, hi) = ((1.0 - k.abs()).sqrt(), (1.0 + k.abs()).sqrt());
    rep.push_max(
        "angle_rate_bounds",
        sym.iter().map(|&v| {
            let d = m.profile(v).map(|p| p.db).unwrap_or(f64::NAN);
            (((lo - d).max(d - hi)).max(0.0), format!("v={v:.6}"))
        }),
        1e-15,
    );

    rep.extend(m.screw_invariance_check());
    rep.extend(m.symmetry_check()?);

    // curvature
    let inner: Vec<(f64, f64)> = grid.iter().copied().step_by(3).collect();
    let lam = |u: f64, v: f64| m.conformal_factor(u, v);
    rep.push_max(
        "gauss_curvature_intrinsic",
        inner.iter().map(|&(u, v)| {
            let r = (|| Ok::<f64, crate::Error>((intrinsic_gauss_curvature(&lam, u, v, DEFAULT_FD_STEP)? - m.gauss_curvature_intrinsic(u, v)?).abs()))();
            (r.unwrap_or(f64::NAN), loc(u, v))
        }),
        1e-3,
    );
    // the determinant alone omits the ambient term; the gap is reported, not enforced
    rep.push_max(
        "shape_determinant_gap",
        inner.iter().map(|&(u, v)| {
            let r = (|| Ok::<f64, crate::Error>((intrinsic_gauss_curvature(&lam, u, v, DEFAULT_FD_STEP)? - m.shape_determinant(u, v)?).abs()))();
            (r.unwrap_or(f64::NAN), loc(u, v))
        }),
        f64::INFINITY,
    );
    let shape_pts: Vec<(f64, f64)> = grid.iter().copied().step_by(17).collect();
    rep.extend(shape_operator_check(
        &surface,
        &|u, v| m.normal(u, v),
        &|u, v| m.shape_operator_coefficients(u, v),
        &shape_pts,
        DEFAULT_FD_STEP,
        1e-4,
    )?);

    // embeddedness proxy: x₃ strictly monotone in v, (x₁, x₂) injective in u
    let vs: Vec<f64> = (0..=800).map(|i| -vm + 2.0 * vm * i as f64 / 800.0).collect();
    let heights: Vec<f64> = vs.iter().map(|&v| m.profile(v).map(|p| p.x3).unwrap_or(f64::NAN)).collect();
    let monotone = heights.windows(2).all(|p| (p[1] - p[0]) * k.signum() > 0.0);
    rep.push_condition("height_monotone", monotone, "v grid");
    let mut injective = true;
    for &v in vs.iter().step_by(40) {
        let row: Vec<Sol3Point> = (0..=200).filter_map(|i| m.immerse(-3.0 + 0.03 * i as f64, v).ok()).collect();
        let dir = [row[200].x1 - row[0].x1, row[200].x2 - row[0].x2];
        injective &= row.windows(2).all(|p| (p[1].x1 - p[0].x1) * dir[0] + (p[1].x2 - p[0].x2) * dir[1] > 0.0);
    }
    rep.push_condition("horizontal_lines_injective", injective, "u rows");
    Ok(rep)
}

pub fn catenoid_suite(m: &CatenoidModel) -> Result<VerificationReport> {
    let a = m.alpha();
    let mut rep = VerificationReport::new(format!("catenoid alpha={a}"));
    let grid = standard_grid();
    let surface = |u: f64, v: f64| m.immerse(u, v);

    gauss_map_checks(&mut rep, |u, v| m.gauss_sample(u, v), |u, v| m.gauss_map(u, v), Complex64::new(-a / 4.0, 0.0), &grid);
    representation_checks(&mut rep, &surface, |u, v| m.gauss_sample(u, v), &grid);
    rep.push_max(
        "height_partials",
        grid.iter().map(|&(u, v)| {
            let r = (|| -> Result<f64> {
                let p = m.profile(v)?;
                let x = representation_rhs(&m.gauss_sample(u, v)?, a * u + p.f)?;
                Ok((2.0 * x[2].re - a).abs().max((-2.0 * x[2].im - p.df).abs()))
            })();
            (r.unwrap_or(f64::NAN), loc(u, v))
        }),
        1e-8,
    );
    metric_checks(&mut rep, &surface, |u, v| m.jet(u, v), |u, v| m.conformal_factor(u, v), &grid);

    let v_oracle = quadrature(|r| 1.0 / rho_rate(a, r), 0.0, PI, 1e-12)?.value;
    let big = m.period_v();
    rep.push("period_v_quadrature", (big - v_oracle).abs(), 1e-8, format!("V={big:.12}"));
    let at_v = m.profile(big)?;
    rep.push("height_profile_closes", at_v.f.abs(), 1e-8, "v=V");
    let f_integral = quadrature(
        |v| m.profile(v).map(|p| a * a * (2.0 * p.rho).sin() / (1.0 + p.drho)).unwrap_or(f64::NAN),
        0.0,
        2.0 * big,
        1e-12,
    )?;
    rep.push("height_profile_integral", f_integral.value.abs(), 1e-8, "[0, 2V]");

    let vm = m.v_max();
    let pts = dense_points(-vm, vm - big - 1e-9, 0x4f44_4533);
    rep.push_max(
        "angle_translation",
        pts.iter().map(|&v| {
            let r = (|| -> Result<f64> {
                let (p, q) = (m.profile(v)?, m.profile(v + big)?);
                Ok((q.rho - p.rho - PI).abs().max((q.gamma - p.gamma).abs()).max((q.f - p.f).abs()))
            })();
            (r.unwrap_or(f64::NAN), format!("v={v:.6}"))
        }),
        1e-8,
    );
    let sym = dense_points(0.0, vm, 0x4f44_4534);
    rep.push_max(
        "profile_parity",
        sym.iter().map(|&v| {
            let r = (|| -> Result<f64> {
                let (p, q) = (m.profile(v)?, m.profile(-v)?);
                Ok((p.rho + q.rho).abs().max((p.gamma - q.gamma).abs()).max((p.f - q.f).abs()))
            })();
            (r.unwrap_or(f64::NAN), format!("v={v:.6}"))
        }),
        1e-10,
    );
    let mut half = Vec::new();
    let mut j = -((vm / (big / 2.0)).floor() as i64);
    while (j as f64) * big / 2.0 <= vm {
        if j % 2 != 0 {
            let v = j as f64 * big / 2.0;
            half.push((m.profile(v).map(|p| (p.rho - j as f64 * PI / 2.0).abs()).unwrap_or(f64::NAN), format!("k={j}")));
        }
        j += 1;
    }
    half.push((m.profile(big / 4.0).map(|p| (p.rho - PI / 4.0).abs()).unwrap_or(f64::NAN), "v=V/4".to_string()));
    rep.push_max("angle_half_period", half, 1e-8);
    let refl = dense_points(-vm + big / 2.0, vm - big / 2.0, 0x4f44_4535);
    rep.push_max(
        "angle_reflection",
        refl.iter().map(|&v| {
            let r = (|| Ok::<f64, crate::Error>((m.profile(-v + big / 2.0)?.rho + m.profile(v)?.rho - PI / 2.0).abs()))();
            (r.unwrap_or(f64::NAN), format!("v={v:.6}"))
        }),
        1e-8,
    );
    let lo = (1.0 - a * a).sqrt();
    rep.push_max(
        "angle_rate_bounds",
        sym.iter().map(|&v| {
            let d = m.profile(v).map(|p| p.drho).unwrap_or(f64::NAN);
            (((lo - d).max(d - 1.0)).max(0.0), format!("v={v:.6}"))
        }),
        1e-15,
    );

    rep.extend(m.periodicity_check());
    rep.extend(m.symmetry_check()?);
    for level in [-2.0, -1.0, 0.0, 1.0, 2.0] {
        let c = m.section(level, DEFAULT_SECTION_SAMPLES)?;
        let mut cert = convexity_certificate(&c)?;
        for ch in &mut cert.checks {
            ch.name = format!("section_{level}_{}", ch.name);
        }
        rep.extend(cert);
    }
    Ok(rep)
}

/// |x₁| values at which the graph asymptote is sampled by the suite.
pub const GRAPH_ASYMPTOTE_SAMPLES: [f64; 3] = [1e4, 1e5, 1e6];

pub fn graph_suite() -> Result<VerificationReport> {
    let mut rep = residual_suite_graph()?;
    rep.title = "entire graph".into();
    rep.extend(closed_form_check()?);
    let surface = |u: f64, v: f64| Ok(graph_immerse(u, v));
    let grid = standard_grid();
    representation_checks(&mut rep, &surface, |u, v| Ok(crate::limits::graph_gauss_sample(u, v)), &grid);
    rep.push_max(
        "conformality_fd",
        grid.iter().step_by(5).map(|&(u, v)| {
            let r = fd_jet(&surface, u, v, DEFAULT_FD_STEP).map(|j| {
                let (a, b, c) = first_order_jet(&j, u, v).conformality_defects();
                a.max(b).max(c)
            });
            (r.unwrap_or(f64::NAN), loc(u, v))
        }),
        1e-6,
    );
    let mut rng = ChaCha8Rng::seed_from_u64(0x4752_4150);
    rep.push_max(
        "graph_round_trip",
        (0..200).map(|_| {
            let (u, v) = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let p = graph_immerse(u, v);
            let r = graph_eval(p.x1, p.x3).map(|f| (f - p.x2).abs() / (1.0 + p.x2.abs()));
            (r.unwrap_or(f64::NAN), loc(u, v))
        }),
        1e-8,
    );
    let x1s: Vec<f64> = GRAPH_ASYMPTOTE_SAMPLES.iter().flat_map(|&x| [x, -x]).collect();
    let ratios = asymptote_ratios(0.0, &x1s)?;
    rep.push_max(
        "asymptote_ratio",
        x1s.iter().zip(&ratios).map(|(&x, &r)| ((r + x.signum()).abs(), format!("x1={x:e}"))),
        1e-3,
    );
    Ok(rep)
}

pub fn plane_limit_suite() -> Result<VerificationReport> {
    alpha_zero_limit_check()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_is_inside_and_sized() {
        let g = standard_grid();
        assert_eq!(g.len(), 41 * 41);
        assert!(g.iter().all(|&(u, v)| u.abs() < 2.0 && v.abs() < 2.0));
    }

    #[test]
    fn helicoid_suite_passes() {
        let rep = helicoid_suite(&HelicoidModel::build(0.4).unwrap()).unwrap();
        println!("{rep}");
        assert!(rep.all_passed());
    }

    #[test]
    fn catenoid_suite_passes() {
        let rep = catenoid_suite(&CatenoidModel::build(-0.6).unwrap()).unwrap();
        println!("{rep}");
        assert!(rep.all_passed());
    }

    #[test]
    fn graph_and_plane_suites_pass() {
        for rep in [graph_suite().unwrap(), plane_limit_suite().unwrap()] {
            println!("{rep}");
            assert!(rep.all_passed());
        }
    }
}
