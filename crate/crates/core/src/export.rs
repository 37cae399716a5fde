//! Mesh and CSV emission, run configuration, and the command bodies behind the CLI.
//!
//! Mesh vertices are stored row-major in (u, v): vertex `i·nv + j` is the sample
//! (u_i, v_j). Files are plain text with `{:.16e}` numbers and LF line endings,
//! so identical configurations give byte-identical output.

use std::fmt::Write as _;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::catenoid::{convexity_certificate, CatenoidModel, DEFAULT_SECTION_SAMPLES};
use crate::error::{Error, Result};
use crate::geometry::{FrameVector, Sol3Point};
use crate::helicoid::HelicoidModel;
use crate::limits::{graph_immerse, graph_normal, graph_section, plane_limit};
use crate::verify::suites::{catenoid_suite, graph_suite, helicoid_suite, plane_limit_suite};
use crate::verify::VerificationReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SurfaceKind {
    Helicoid,
    Catenoid,
    #[serde(alias = "graph-S")]
    GraphS,
    PlaneLimit,
}

impl std::fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SurfaceKind::Helicoid => "helicoid",
            SurfaceKind::Catenoid => "catenoid",
            SurfaceKind::GraphS => "graph-s",
            SurfaceKind::PlaneLimit => "plane-limit",
        })
    }
}

/// Quad mesh with optional per-vertex normals in frame components.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub vertices: Vec<[f64; 3]>,
    pub normals: Option<Vec<[f64; 3]>>,
    /// Zero-based vertex indices, counter-clockwise in (u, v).
    pub faces: Vec<[usize; 4]>,
}

impl Mesh {
    /// Uniform (nu × nv) sampling of a parameter rectangle.
    pub fn sample<S, N>(surface: S, normal: Option<N>, u: (f64, f64), v: (f64, f64), nu: usize, nv: usize) -> Result<Self>
    where
        S: Fn(f64, f64) -> Result<Sol3Point>,
        N: Fn(f64, f64) -> Result<FrameVector>,
    {
        if nu < 2 || nv < 2 {
            return Err(Error::Precondition(format!("sample counts must be at least 2, got {nu} x {nv}")));
        }
        let at = |lo: f64, hi: f64, n: usize, k: usize| lo + (hi - lo) * k as f64 / (n - 1) as f64;
        let mut vertices = Vec::with_capacity(nu * nv);
        let mut normals = normal.as_ref().map(|_| Vec::with_capacity(nu * nv));
        for i in 0..nu {
            let ui = at(u.0, u.1, nu, i);
            for j in 0..nv {
                let vj = at(v.0, v.1, nv, j);
                let p = surface(ui, vj)?;
                if !p.is_finite() {
                    return Err(Error::NonFinite(format!("surface at ({ui}, {vj})")));
                }
                vertices.push(p.to_array());
                if let (Some(f), Some(ns)) = (&normal, &mut normals) {
                    ns.push(f(ui, vj)?.0);
                }
            }
        }
        let faces = (0..nu - 1)
            .flat_map(|i| (0..nv - 1).map(move |j| [i * nv + j, (i + 1) * nv + j, (i + 1) * nv + j + 1, i * nv + j + 1]))
            .collect();
        let mesh = Mesh { vertices, normals, faces };
        mesh.validate()?;
        Ok(mesh)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.vertices.len();
        if let Some(ns) = &self.normals {
            if ns.len() != n {
                return Err(Error::Precondition(format!("{} normals for {n} vertices", ns.len())));
            }
        }
        for (k, f) in self.faces.iter().enumerate() {
            if f.iter().any(|&i| i >= n) {
                return Err(Error::Precondition(format!("face {k} index out of range")));
            }
            for a in 0..4 {
                for b in a + 1..4 {
                    if f[a] == f[b] {
                        return Err(Error::Precondition(format!("face {k} repeats vertex {}", f[a])));
                    }
                }
            }
        }
        Ok(())
    }

    /// OBJ text: `v`, then `vn` if present, then one-based `f` lines.
    pub fn to_obj(&self) -> String {
        let mut s = String::new();
        for p in &self.vertices {
            let _ = writeln!(s, "v {:.16e} {:.16e} {:.16e}", p[0], p[1], p[2]);
        }
        if let Some(ns) = &self.normals {
            for p in ns {
                let _ = writeln!(s, "vn {:.16e} {:.16e} {:.16e}", p[0], p[1], p[2]);
            }
        }
        for f in &self.faces {
            let [a, b, c, d] = f.map(|i| i + 1);
            if self.normals.is_some() {
                let _ = writeln!(s, "f {a}//{a} {b}//{b} {c}//{c} {d}//{d}");
            } else {
                let _ = writeln!(s, "f {a} {b} {c} {d}");
            }
        }
        s
    }
}

/// CSV with header `t,c1,c2`.
pub fn section_csv(t: &[f64], points: &[[f64; 2]]) -> String {
    let mut s = String::from("t,c1,c2\n");
    for (t, p) in t.iter().zip(points) {
        let _ = writeln!(s, "{t:.16e},{:.16e},{:.16e}", p[0], p[1]);
    }
    s
}

/// Full run configuration; every field is optional so file and flags can be layered.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub kind: Option<SurfaceKind>,
    #[serde(rename = "K")]
    pub k: Option<f64>,
    pub alpha: Option<f64>,
    pub u_min: Option<f64>,
    pub u_max: Option<f64>,
    pub v_min: Option<f64>,
    pub v_max: Option<f64>,
    pub nu: Option<usize>,
    pub nv: Option<usize>,
    pub level: Option<f64>,
    pub out: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub tol_scale: Option<f64>,
    pub normals: Option<bool>,
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Precondition(format!("config: {e}")))
    }

    /// Fields of `self` take precedence over those of `base`.
    pub fn over(self, base: RunConfig) -> RunConfig {
        RunConfig {
            kind: self.kind.or(base.kind),
            k: self.k.or(base.k),
            alpha: self.alpha.or(base.alpha),
            u_min: self.u_min.or(base.u_min),
            u_max: self.u_max.or(base.u_max),
            v_min: self.v_min.or(base.v_min),
            v_max: self.v_max.or(base.v_max),
            nu: self.nu.or(base.nu),
            nv: self.nv.or(base.nv),
            level: self.level.or(base.level),
            out: self.out.or(base.out),
            report: self.report.or(base.report),
            tol_scale: self.tol_scale.or(base.tol_scale),
            normals: self.normals.or(base.normals),
        }
    }

    pub fn kind(&self) -> Result<SurfaceKind> {
        self.kind.ok_or_else(|| Error::Precondition("--kind is required".into()))
    }

    fn helicoid_k(&self) -> Result<f64> {
        self.k.ok_or_else(|| Error::Precondition("--K is required for the helicoid".into()))
    }

    fn catenoid_alpha(&self) -> Result<f64> {
        self.alpha.ok_or_else(|| Error::Precondition("--alpha is required for the catenoid".into()))
    }

    fn counts(&self) -> Result<(usize, usize)> {
        let (nu, nv) = (self.nu.unwrap_or(64), self.nv.unwrap_or(64));
        if nu < 2 || nv < 2 {
            return Err(Error::Precondition(format!("sample counts must be at least 2, got {nu} x {nv}")));
        }
        Ok((nu, nv))
    }

    fn rect(&self, u: (f64, f64), v: (f64, f64)) -> Result<((f64, f64), (f64, f64))> {
        let r = ((self.u_min.unwrap_or(u.0), self.u_max.unwrap_or(u.1)), (self.v_min.unwrap_or(v.0), self.v_max.unwrap_or(v.1)));
        for (name, (lo, hi)) in [("u", r.0), ("v", r.1)] {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::Precondition(format!("{name} range [{lo}, {hi}] is empty or not finite")));
            }
        }
        Ok(r)
    }
}

fn with_margin(v: (f64, f64), default: f64) -> f64 {
    (v.0.abs().max(v.1.abs()) * 1.01 + 0.1).max(default)
}

/// Default rectangles: helicoid [−2, 2] × [−2W, 2W]; catenoid [−2, 2] × [0, 2V];
/// graph [−2, 2]²; plane limit [−1, 1] × [0, 2π] in the rescaled variables.
pub fn surface_mesh(cfg: &RunConfig) -> Result<Mesh> {
    let (nu, nv) = cfg.counts()?;
    let want_normals = cfg.normals.unwrap_or(false);
    match cfg.kind()? {
        SurfaceKind::Helicoid => {
            let k = cfg.helicoid_k()?;
            let probe = HelicoidModel::build(k)?;
            let w = probe.period_w();
            let (u, v) = cfg.rect((-2.0, 2.0), (-2.0 * w, 2.0 * w))?;
            let m = if v.0.abs().max(v.1.abs()) < probe.v_max() { probe } else { HelicoidModel::build_with(k, with_margin(v, 0.0))? };
            Mesh::sample(|a, b| m.immerse(a, b), want_normals.then_some(|a, b| m.normal(a, b)), u, v, nu, nv)
        }
        SurfaceKind::Catenoid => {
            let a = cfg.catenoid_alpha()?;
            let probe = CatenoidModel::build(a)?;
            let big = probe.period_v();
            let (u, v) = cfg.rect((-2.0, 2.0), (0.0, 2.0 * big))?;
            let m = if v.0.abs().max(v.1.abs()) < probe.v_max() { probe } else { CatenoidModel::build_with(a, with_margin(v, 0.0))? };
            Mesh::sample(|x, y| m.immerse(x, y), want_normals.then_some(|x, y| m.normal(x, y)), u, v, nu, nv)
        }
        SurfaceKind::GraphS => {
            let (u, v) = cfg.rect((-2.0, 2.0), (-2.0, 2.0))?;
            Mesh::sample(|x, y| Ok(graph_immerse(x, y)), want_normals.then_some(|x, y| Ok(graph_normal(x, y))), u, v, nu, nv)
        }
        SurfaceKind::PlaneLimit => {
            let (u, v) = cfg.rect((-1.0, 1.0), (0.0, 2.0 * std::f64::consts::PI))?;
            let e3 = |_: f64, _: f64| Ok(FrameVector::new(0.0, 0.0, 1.0));
            match cfg.alpha {
                None => Mesh::sample(|x, y| Ok(plane_limit(x, y)), want_normals.then_some(e3), u, v, nu, nv),
                Some(a) => {
                    if !(a > 0.0 && a <= 0.1) {
                        return Err(Error::InvalidParameter { name: "alpha", value: a, range: "(0, 0.1] for the rescaled limit" });
                    }
                    let shift = a.ln();
                    let m = CatenoidModel::build_with(a, with_margin(v, 0.0))?;
                    Mesh::sample(
                        |x, y| m.immerse(x - shift, y),
                        want_normals.then_some(|x, y| m.normal(x - shift, y)),
                        u,
                        v,
                        nu,
                        nv,
                    )
                }
            }
        }
    }
}

/// Section CSV and, for catenoids, its convexity certificate.
///
/// Catenoid sections use `nv` samples over one period (default 512, closed);
/// graph sections sample t ∈ [v_min, v_max] (default [−5, 5]).
pub fn section_output(cfg: &RunConfig) -> Result<(String, Option<VerificationReport>)> {
    let level = cfg.level.ok_or_else(|| Error::Precondition("--level is required for sections".into()))?;
    if !level.is_finite() {
        return Err(Error::InvalidParameter { name: "level", value: level, range: "finite" });
    }
    match cfg.kind()? {
        SurfaceKind::Catenoid => {
            let m = CatenoidModel::build(cfg.catenoid_alpha()?)?;
            let samples = cfg.nv.unwrap_or(DEFAULT_SECTION_SAMPLES);
            let c = m.section(level, samples)?;
            let cert = convexity_certificate(&c)?;
            Ok((section_csv(&c.t, &c.points), Some(cert)))
        }
        SurfaceKind::GraphS => {
            let n = cfg.nv.unwrap_or(201);
            if n < 2 {
                return Err(Error::Precondition(format!("sample count must be at least 2, got {n}")));
            }
            let (lo, hi) = (cfg.v_min.unwrap_or(-5.0), cfg.v_max.unwrap_or(5.0));
            if !(lo < hi) {
                return Err(Error::Precondition(format!("t range [{lo}, {hi}] is empty")));
            }
            let t: Vec<f64> = (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect();
            let pts: Vec<[f64; 2]> = t.iter().map(|&s| graph_section(level, s)).collect();
            if pts.iter().flatten().any(|x| !x.is_finite()) {
                return Err(Error::NonFinite(format!("graph section at level {level}")));
            }
            Ok((section_csv(&t, &pts), None))
        }
        k => Err(Error::Precondition(format!("sections are defined for catenoid and graph-s, not {k}"))),
    }
}

/// Full invariant suite for the configured surface, with tolerances scaled by `tol_scale`.
pub fn verify_report(cfg: &RunConfig) -> Result<VerificationReport> {
    let mut rep = match cfg.kind()? {
        SurfaceKind::Helicoid => helicoid_suite(&HelicoidModel::build(cfg.helicoid_k()?)?)?,
        SurfaceKind::Catenoid => catenoid_suite(&CatenoidModel::build(cfg.catenoid_alpha()?)?)?,
        SurfaceKind::GraphS => graph_suite()?,
        SurfaceKind::PlaneLimit => plane_limit_suite()?,
    };
    if let Some(s) = cfg.tol_scale {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::InvalidParameter { name: "tol-scale", value: s, range: "(0, inf)" });
        }
        rep.scale_tolerances(s);
    }
    Ok(rep)
}

/// `x` with twelve significant digits.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let e = x.abs().log10().floor() as i32;
    if (-4..12).contains(&e) {
        format!("{:.*}", (11 - e) as usize, x)
    } else {
        format!("{x:.11e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn helicoid_cfg() -> RunConfig {
        RunConfig { kind: Some(SurfaceKind::Helicoid), k: Some(0.4), nu: Some(8), nv: Some(6), ..Default::default() }
    }

    #[test]
    fn mesh_is_row_major() {
        let m = surface_mesh(&helicoid_cfg()).unwrap();
        assert_eq!(m.vertices.len(), 48);
        assert_eq!(m.faces.len(), 7 * 5);
        let model = HelicoidModel::build(0.4).unwrap();
        let w = model.period_w();
        let p = model.immerse(-2.0 + 4.0 / 7.0, -2.0 * w + 4.0 * w * 2.0 / 5.0).unwrap();
        let q = m.vertices[6 + 2];
        assert!((p.x1 - q[0]).abs() < 1e-12 && (p.x2 - q[1]).abs() < 1e-12 && (p.x3 - q[2]).abs() < 1e-12);
    }

    #[test]
    fn full_size_mesh_count() {
        let cfg = RunConfig { nu: Some(64), nv: Some(64), ..helicoid_cfg() };
        assert_eq!(surface_mesh(&cfg).unwrap().vertices.len(), 4096);
    }

    #[test]
    fn catenoid_boundary_rings_coincide() {
        let cfg = RunConfig { kind: Some(SurfaceKind::Catenoid), alpha: Some(-0.6), nu: Some(9), nv: Some(17), ..Default::default() };
        let m = surface_mesh(&cfg).unwrap();
        for i in 0..9 {
            let (a, b) = (m.vertices[i * 17], m.vertices[i * 17 + 16]);
            let scale = 1.0 + a.iter().fold(0.0f64, |s, x| s.max(x.abs()));
            assert!((0..3).all(|k| (a[k] - b[k]).abs() <= 1e-8 * scale), "{a:?} {b:?}");
        }
    }

    #[test]
    fn obj_format() {
        let m = Mesh { vertices: vec![[0.0; 3], [1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [0.0, 1.0, 0.5]], normals: None, faces: vec![[0, 1, 2, 3]] };
        let s = m.to_obj();
        assert!(s.starts_with("v 0.0000000000000000e0 0.0000000000000000e0 0.0000000000000000e0\n"));
        assert!(s.ends_with("f 1 2 3 4\n"));
        assert!(!s.contains('\r'));
    }

    #[test]
    fn degenerate_faces_are_rejected() {
        let m = Mesh { vertices: vec![[0.0; 3]; 3], normals: None, faces: vec![[0, 1, 1, 2]] };
        assert!(m.validate().is_err());
        let m = Mesh { vertices: vec![[0.0; 3]; 3], normals: None, faces: vec![[0, 1, 2, 3]] };
        assert!(m.validate().is_err());
    }

    #[test]
    fn invalid_parameters_name_the_range() {
        let cfg = RunConfig { k: Some(0.0), ..helicoid_cfg() };
        let msg = surface_mesh(&cfg).unwrap_err().to_string();
        assert!(msg.contains("K") && msg.contains("(-1, 1)"), "{msg}");
        assert!(surface_mesh(&RunConfig { nu: Some(1), ..helicoid_cfg() }).is_err());
    }

    #[test]
    fn flags_override_file() {
        let file = RunConfig::from_toml("kind = \"catenoid\"\nalpha = 0.3\nnu = 10\n").unwrap();
        let flags = RunConfig { alpha: Some(0.6), ..Default::default() };
        let c = flags.over(file);
        assert_eq!(c.kind, Some(SurfaceKind::Catenoid));
        assert_eq!(c.alpha, Some(0.6));
        assert_eq!(c.nu, Some(10));
        assert!(RunConfig::from_toml("bogus = 1").is_err());
        assert_eq!(RunConfig::from_toml("kind = \"graph-S\"").unwrap().kind, Some(SurfaceKind::GraphS));
    }

    #[test]
    fn csv_layout() {
        let s = section_csv(&[0.0, 0.5], &[[1.0, 2.0], [3.0, -4.0]]);
        assert_eq!(s.lines().next(), Some("t,c1,c2"));
        assert_eq!(s.lines().count(), 3);
        assert!(s.ends_with('\n') && !s.contains('\r'));
    }

    #[test]
    fn graph_section_high_level_monotone() {
        let cfg = RunConfig { kind: Some(SurfaceKind::GraphS), level: Some(10.0), ..Default::default() };
        let (csv, cert) = section_output(&cfg).unwrap();
        assert!(cert.is_none());
        let x1: Vec<f64> = csv.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
        assert!(x1.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn significant_digits() {
        assert_eq!(sig12(std::f64::consts::PI), "3.14159265359");
        assert_eq!(sig12(0.66308827398), "0.663088273980");
        assert_eq!(sig12(12.5), "12.5000000000");
    }
}
