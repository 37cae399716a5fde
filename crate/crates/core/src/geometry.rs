//! The ambient space Sol₃: ℝ³ with the group law
//! `x ∗ y = (y₁e^{-x₃} + x₁, y₂e^{x₃} + x₂, x₃ + y₃)` and the left-invariant
//! metric `e^{2x₃}dx₁² + e^{-2x₃}dx₂² + dx₃²`.
//!
//! Tangent vectors come in two flavours. [`CoordVector`] holds components in
//! the coordinate basis ∂₁, ∂₂, ∂₃ and remembers its base point, because the
//! metric depends on it. [`FrameVector`] holds components in the left-invariant
//! orthonormal frame E₁ = e^{-x₃}∂₁, E₂ = e^{x₃}∂₂, E₃ = ∂₃, where the metric is
//! the Euclidean dot product and the Levi-Civita connection has constant
//! coefficients.
//!
//! All exponentials are evaluated directly; callers keep |x₃| ≤ 700.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::jet::SecondOrderJet;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Sol3Point {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl Sol3Point {
    pub const ORIGIN: Sol3Point = Sol3Point { x1: 0.0, x2: 0.0, x3: 0.0 };

    pub const fn new(x1: f64, x2: f64, x3: f64) -> Self {
        Self { x1, x2, x3 }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x1, self.x2, self.x3]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub fn is_finite(&self) -> bool {
        self.x1.is_finite() && self.x2.is_finite() && self.x3.is_finite()
    }

    /// Max-norm distance between coordinate triples (not the Sol₃ distance).
    pub fn max_abs_diff(&self, other: &Sol3Point) -> f64 {
        (self.x1 - other.x1)
            .abs()
            .max((self.x2 - other.x2).abs())
            .max((self.x3 - other.x3).abs())
    }

    /// Euclidean distance between coordinate triples.
    pub fn coord_distance(&self, other: &Sol3Point) -> f64 {
        let d = [self.x1 - other.x1, self.x2 - other.x2, self.x3 - other.x3];
        (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt()
    }
}

impl fmt::Display for Sol3Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x1, self.x2, self.x3)
    }
}

/// Group multiplication `x ∗ y`.
pub fn group_mul(x: Sol3Point, y: Sol3Point) -> Sol3Point {
    Sol3Point::new(
        y.x1 * (-x.x3).exp() + x.x1,
        y.x2 * x.x3.exp() + x.x2,
        x.x3 + y.x3,
    )
}

pub fn group_inv(x: Sol3Point) -> Sol3Point {
    Sol3Point::new(-x.x1 * x.x3.exp(), -x.x2 * (-x.x3).exp(), -x.x3)
}

/// Tangent vector in the coordinate basis, attached to `base`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoordVector {
    pub base: Sol3Point,
    pub a: [f64; 3],
}

impl CoordVector {
    pub fn new(base: Sol3Point, a: [f64; 3]) -> Self {
        Self { base, a }
    }

    /// Pushforward by the left translation `l_t`, i.e. `M_t X` attached at `t ∗ base`.
    pub fn left_translate(&self, t: Sol3Point) -> CoordVector {
        let m = [(-t.x3).exp(), t.x3.exp(), 1.0];
        CoordVector::new(
            group_mul(t, self.base),
            [m[0] * self.a[0], m[1] * self.a[1], m[2] * self.a[2]],
        )
    }
}

/// Components in the orthonormal frame E₁, E₂, E₃.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FrameVector(pub [f64; 3]);

impl FrameVector {
    pub const ZERO: FrameVector = FrameVector([0.0; 3]);

    pub const fn new(f1: f64, f2: f64, f3: f64) -> Self {
        FrameVector([f1, f2, f3])
    }

    pub fn dot(&self, other: &FrameVector) -> f64 {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Cross product in the (oriented, orthonormal) frame.
    pub fn cross(&self, o: &FrameVector) -> FrameVector {
        let a = &self.0;
        let b = &o.0;
        FrameVector([
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ])
    }

    pub fn normalized(&self) -> FrameVector {
        *self * (1.0 / self.norm())
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }
}

impl Add for FrameVector {
    type Output = FrameVector;
    fn add(self, o: FrameVector) -> FrameVector {
        FrameVector([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl Sub for FrameVector {
    type Output = FrameVector;
    fn sub(self, o: FrameVector) -> FrameVector {
        FrameVector([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl Neg for FrameVector {
    type Output = FrameVector;
    fn neg(self) -> FrameVector {
        FrameVector([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl Mul<f64> for FrameVector {
    type Output = FrameVector;
    fn mul(self, s: f64) -> FrameVector {
        FrameVector([self.0[0] * s, self.0[1] * s, self.0[2] * s])
    }
}

/// The Riemannian metric at `p`.
pub fn metric(p: Sol3Point, x: &CoordVector, y: &CoordVector) -> f64 {
    debug_assert_eq!(x.base, p, "tangent vector X is not attached at p");
    debug_assert_eq!(y.base, p, "tangent vector Y is not attached at p");
    (2.0 * p.x3).exp() * x.a[0] * y.a[0] + (-2.0 * p.x3).exp() * x.a[1] * y.a[1] + x.a[2] * y.a[2]
}

pub fn coord_to_frame(p: Sol3Point, x: &CoordVector) -> FrameVector {
    debug_assert_eq!(x.base, p, "tangent vector is not attached at p");
    coord_components_to_frame(p, x.a)
}

/// Frame components of the coordinate vector `a` at `p`, without a base-point check.
pub fn coord_components_to_frame(p: Sol3Point, a: [f64; 3]) -> FrameVector {
    FrameVector([p.x3.exp() * a[0], (-p.x3).exp() * a[1], a[2]])
}

pub fn frame_to_coord(p: Sol3Point, f: &FrameVector) -> CoordVector {
    CoordVector::new(p, [(-p.x3).exp() * f.0[0], p.x3.exp() * f.0[1], f.0[2]])
}

/// An element σ^k τ^e of the isotropy group of the origin (dihedral of order 8),
/// with σ(x) = (x₂, −x₁, −x₃) and τ(x) = (−x₁, x₂, x₃).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IsotropyElement {
    rotation: u8,
    reflection: bool,
}

impl IsotropyElement {
    pub const ID: Self = Self::word(0, false);
    pub const SIGMA: Self = Self::word(1, false);
    pub const SIGMA2: Self = Self::word(2, false);
    pub const SIGMA3: Self = Self::word(3, false);
    pub const TAU: Self = Self::word(0, true);
    pub const SIGMA_TAU: Self = Self::word(1, true);
    pub const SIGMA2_TAU: Self = Self::word(2, true);
    pub const SIGMA3_TAU: Self = Self::word(3, true);

    pub const ALL: [Self; 8] = [
        Self::ID,
        Self::SIGMA,
        Self::SIGMA2,
        Self::SIGMA3,
        Self::TAU,
        Self::SIGMA_TAU,
        Self::SIGMA2_TAU,
        Self::SIGMA3_TAU,
    ];

    /// The word σ^k τ^e (k taken mod 4).
    pub const fn word(k: u8, tau: bool) -> Self {
        Self { rotation: k % 4, reflection: tau }
    }

    pub fn rotation(&self) -> u8 {
        self.rotation
    }

    pub fn has_reflection(&self) -> bool {
        self.reflection
    }

    /// `self ∘ other`, using τσ = σ⁻¹τ.
    pub fn compose(&self, other: &Self) -> Self {
        let k = if self.reflection {
            (self.rotation + 4 - other.rotation) % 4
        } else {
            (self.rotation + other.rotation) % 4
        };
        Self::word(k, self.reflection ^ other.reflection)
    }

    pub fn inverse(&self) -> Self {
        if self.reflection {
            *self
        } else {
            Self::word((4 - self.rotation) % 4, false)
        }
    }

    /// The linear map on coordinates as a 3×3 matrix (rows).
    pub fn matrix(&self) -> [[f64; 3]; 3] {
        let mut m = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        if self.reflection {
            m[0][0] = -1.0;
        }
        // σ as a matrix: (x₁,x₂,x₃) ↦ (x₂,−x₁,−x₃)
        let sigma = [[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, -1.0]];
        for _ in 0..self.rotation {
            m = mat_mul(&sigma, &m);
        }
        m
    }

    /// Applied to a point (the isotropies are linear in these coordinates).
    pub fn apply(&self, p: Sol3Point) -> Sol3Point {
        Sol3Point::from_array(mat_vec(&self.matrix(), p.to_array()))
    }

    /// Differential applied to a coordinate vector.
    pub fn push_forward(&self, x: &CoordVector) -> CoordVector {
        CoordVector::new(self.apply(x.base), mat_vec(&self.matrix(), x.a))
    }
}

impl fmt::Display for IsotropyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.rotation {
            0 if !self.reflection => "id",
            0 => "",
            1 => "σ",
            2 => "σ²",
            _ => "σ³",
        };
        write!(f, "{}{}", s, if self.reflection { "τ" } else { "" })
    }
}

fn mat_mul(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let mut c = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

fn mat_vec(a: &[[f64; 3]; 3], v: [f64; 3]) -> [f64; 3] {
    [
        a[0][0] * v[0] + a[0][1] * v[1] + a[0][2] * v[2],
        a[1][0] * v[0] + a[1][1] * v[1] + a[1][2] * v[2],
        a[2][0] * v[0] + a[2][1] * v[1] + a[2][2] * v[2],
    ]
}

/// An isometry `x ↦ translation ∗ word(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Isometry {
    pub translation: Sol3Point,
    pub word: IsotropyElement,
}

impl Isometry {
    pub fn new(translation: Sol3Point, word: IsotropyElement) -> Self {
        Self { translation, word }
    }

    pub fn translation(t: Sol3Point) -> Self {
        Self::new(t, IsotropyElement::ID)
    }

    pub fn isotropy(word: IsotropyElement) -> Self {
        Self::new(Sol3Point::ORIGIN, word)
    }

    pub fn apply(&self, p: Sol3Point) -> Sol3Point {
        group_mul(self.translation, self.word.apply(p))
    }
}

/// Levi-Civita connection coefficients in the frame: ∇_{Eᵢ}Eⱼ = Σₖ Γ[i][j][k] Eₖ.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionTable {
    pub gamma: [[[f64; 3]; 3]; 3],
}

impl ConnectionTable {
    /// ∇_{E₁}E₁ = −E₃, ∇_{E₂}E₂ = E₃, ∇_{E₁}E₃ = E₁, ∇_{E₂}E₃ = −E₂, all others zero.
    pub fn sol3() -> Self {
        let mut gamma = [[[0.0; 3]; 3]; 3];
        gamma[0][0][2] = -1.0;
        gamma[1][1][2] = 1.0;
        gamma[0][2][0] = 1.0;
        gamma[1][2][1] = -1.0;
        Self { gamma }
    }

    /// ∇_X Y for frame vectors with constant components.
    pub fn covariant(&self, x: &FrameVector, y: &FrameVector) -> FrameVector {
        let mut out = [0.0; 3];
        for i in 0..3 {
            if x.0[i] == 0.0 {
                continue;
            }
            for j in 0..3 {
                let c = x.0[i] * y.0[j];
                if c == 0.0 {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o += c * self.gamma[i][j][k];
                }
            }
        }
        FrameVector(out)
    }

    /// Curvature `R(X,Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_{[X,Y]}Z` on left-invariant fields.
    pub fn curvature(&self, x: &FrameVector, y: &FrameVector, z: &FrameVector) -> FrameVector {
        let bracket = self.covariant(x, y) - self.covariant(y, x);
        self.covariant(x, &self.covariant(y, z))
            - self.covariant(y, &self.covariant(x, z))
            - self.covariant(&bracket, z)
    }

    /// Sectional curvature of the plane spanned by `x` and `y`.
    pub fn sectional_curvature(&self, x: &FrameVector, y: &FrameVector) -> f64 {
        let area = x.norm_sq() * y.norm_sq() - x.dot(y).powi(2);
        self.curvature(x, y, y).dot(x) / area
    }
}

/// Lie brackets of the frame: [E₁,E₂] = 0, [E₁,E₃] = E₁, [E₂,E₃] = −E₂.
pub fn frame_bracket(i: usize, j: usize) -> FrameVector {
    let mut b = [0.0; 3];
    match (i, j) {
        (0, 2) => b[0] = 1.0,
        (2, 0) => b[0] = -1.0,
        (1, 2) => b[1] = -1.0,
        (2, 1) => b[1] = 1.0,
        _ => {}
    }
    FrameVector(b)
}

/// Sectional curvature of Sol₃ on the plane orthogonal to the unit frame vector `n`:
/// −1 + 2n₃².
pub fn plane_curvature(n: &FrameVector) -> f64 {
    -1.0 + 2.0 * n.0[2] * n.0[2]
}

/// Covariant accelerations ∇_{∂u}x_u and ∇_{∂v}x_v of an immersion, in frame components.
///
/// With x_u = a₁∂₁ + a₂∂₂ + a₃∂₃ the frame components are (e^{x₃}a₁, e^{−x₃}a₂, a₃);
/// their u-derivative picks up x₃_u from the exponentials, and the connection adds
/// Σ aⁱaʲ ∇_{Eᵢ}Eⱼ.
pub fn covariant_second_derivatives(jet: &SecondOrderJet) -> (FrameVector, FrameVector) {
    let table = ConnectionTable::sol3();
    let p = jet.position;
    let accel = |d: [f64; 3], dd: [f64; 3]| {
        let e = p.x3.exp();
        let frame = coord_components_to_frame(p, d);
        let dframe = FrameVector([
            e * (d[2] * d[0] + dd[0]),
            (1.0 / e) * (-d[2] * d[1] + dd[1]),
            dd[2],
        ]);
        dframe + table.covariant(&frame, &frame)
    };
    (accel(jet.xu, jet.xuu), accel(jet.xv, jet.xvv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn identity_and_sample_product() {
        let y = Sol3Point::new(0.3, -1.2, 2.5);
        assert_eq!(group_mul(Sol3Point::ORIGIN, y), y);
        let p = group_mul(Sol3Point::new(0.0, 0.0, 1.0), Sol3Point::new(1.0, 1.0, 0.0));
        assert!(close(p.x1, 1.0 / E, 1e-15));
        assert!(close(p.x2, E, 1e-15));
        assert_eq!(p.x3, 1.0);
    }

    #[test]
    fn inverse_values() {
        assert_eq!(group_inv(Sol3Point::ORIGIN), Sol3Point::ORIGIN);
        let q = group_inv(Sol3Point::new(1.0, 2.0, 3.0));
        assert!(close(q.x1, -(3.0_f64).exp(), 1e-15));
        assert!(close(q.x2, -2.0 * (-3.0_f64).exp(), 1e-15));
        assert_eq!(q.x3, -3.0);
    }

    #[test]
    fn metric_values() {
        let o = Sol3Point::ORIGIN;
        let x = CoordVector::new(o, [1.0, 1.0, 1.0]);
        assert_eq!(metric(o, &x, &x), 3.0);
        let p = Sol3Point::new(0.0, 0.0, 1.0);
        let e1 = CoordVector::new(p, [1.0, 0.0, 0.0]);
        assert!(close(metric(p, &e1, &e1), E * E, 1e-15));
    }

    #[test]
    fn frame_conversion() {
        let o = Sol3Point::new(4.0, -2.0, 0.0);
        let x = CoordVector::new(o, [0.2, -0.7, 1.1]);
        assert_eq!(coord_to_frame(o, &x).0, x.a);
        let p = Sol3Point::new(0.0, 0.0, 1.0);
        let f = coord_to_frame(p, &CoordVector::new(p, [1.0, 1.0, 1.0]));
        assert!(close(f.0[0], E, 1e-15) && close(f.0[1], 1.0 / E, 1e-15) && f.0[2] == 1.0);
    }

    #[test]
    fn sigma_tau_on_sample() {
        let p = IsotropyElement::SIGMA_TAU.apply(Sol3Point::new(1.0, 2.0, 3.0));
        assert_eq!(p, Sol3Point::new(2.0, 1.0, -3.0));
        let q = IsotropyElement::SIGMA2_TAU.apply(Sol3Point::new(1.0, 2.0, 3.0));
        assert_eq!(q, Sol3Point::new(1.0, -2.0, 3.0));
        let r = IsotropyElement::SIGMA.apply(Sol3Point::new(1.0, 2.0, 3.0));
        assert_eq!(r, Sol3Point::new(2.0, -1.0, -3.0));
        let s = IsotropyElement::SIGMA3_TAU.apply(Sol3Point::new(1.0, 2.0, 3.0));
        assert_eq!(s, Sol3Point::new(-2.0, -1.0, -3.0));
    }

    #[test]
    fn dihedral_relations() {
        use IsotropyElement as G;
        let s = G::SIGMA;
        let t = G::TAU;
        let s4 = s.compose(&s).compose(&s).compose(&s);
        assert_eq!(s4, G::ID);
        assert_eq!(t.compose(&t), G::ID);
        assert_eq!(t.compose(&s).compose(&t), s.inverse());
        // closure and agreement with composition of maps
        let p = Sol3Point::new(0.3, -1.7, 0.9);
        for a in G::ALL {
            for b in G::ALL {
                let c = a.compose(&b);
                assert!(G::ALL.contains(&c));
                assert_eq!(c.apply(p), a.apply(b.apply(p)));
            }
            assert_eq!(a.compose(&a.inverse()), G::ID);
        }
        assert_eq!(G::word(2, true), G::SIGMA.compose(&G::SIGMA).compose(&G::TAU));
    }

    #[test]
    fn connection_table_matches_brackets() {
        let t = ConnectionTable::sol3();
        let e = |i: usize| {
            let mut v = [0.0; 3];
            v[i] = 1.0;
            FrameVector(v)
        };
        for i in 0..3 {
            for j in 0..3 {
                // torsion-free
                let torsion = t.covariant(&e(i), &e(j)) - t.covariant(&e(j), &e(i)) - frame_bracket(i, j);
                assert_eq!(torsion, FrameVector::ZERO, "torsion at ({i},{j})");
                // metric compatibility: ⟨∇_{Ei}Ej, Ek⟩ + ⟨Ej, ∇_{Ei}Ek⟩ = 0
                for k in 0..3 {
                    let s = t.covariant(&e(i), &e(j)).dot(&e(k)) + e(j).dot(&t.covariant(&e(i), &e(k)));
                    assert_eq!(s, 0.0);
                }
            }
        }
    }

    #[test]
    fn koszul_formula_recovers_table() {
        // ⟨∇_X Y, Z⟩ = ½(⟨[X,Y],Z⟩ − ⟨[Y,Z],X⟩ + ⟨[Z,X],Y⟩) for orthonormal left-invariant fields.
        let t = ConnectionTable::sol3();
        let e = |i: usize| {
            let mut v = [0.0; 3];
            v[i] = 1.0;
            FrameVector(v)
        };
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let koszul = 0.5
                        * (frame_bracket(i, j).dot(&e(k)) - frame_bracket(j, k).dot(&e(i))
                            + frame_bracket(k, i).dot(&e(j)));
                    assert_eq!(koszul, t.gamma[i][j][k], "Γ mismatch at ({i},{j},{k})");
                }
            }
        }
    }

    #[test]
    fn frame_sectional_curvatures() {
        let t = ConnectionTable::sol3();
        let e1 = FrameVector::new(1.0, 0.0, 0.0);
        let e2 = FrameVector::new(0.0, 1.0, 0.0);
        let e3 = FrameVector::new(0.0, 0.0, 1.0);
        assert_eq!(t.sectional_curvature(&e1, &e2), 1.0);
        assert_eq!(t.sectional_curvature(&e1, &e3), -1.0);
        assert_eq!(t.sectional_curvature(&e2, &e3), -1.0);
        // general plane: agrees with −1 + 2n₃²
        let x = FrameVector::new(0.3, -0.8, 0.5);
        let y = FrameVector::new(-1.1, 0.2, 0.7);
        let n = x.cross(&y).normalized();
        assert!((t.sectional_curvature(&x, &y) - plane_curvature(&n)).abs() < 1e-14);
    }

    #[test]
    fn straight_lines_through_origin() {
        let t = 0.37_f64;
        // x₃-axis with unit velocity E₃
        let jet = SecondOrderJet {
            position: Sol3Point::new(0.0, 0.0, t),
            xu: [0.0, 0.0, 1.0],
            xv: [0.0, 0.0, 0.0],
            xuu: [0.0; 3],
            xvv: [0.0; 3],
            xuv: [0.0; 3],
        };
        let (a, b) = covariant_second_derivatives(&jet);
        assert_eq!(a, FrameVector::ZERO);
        assert_eq!(b, FrameVector::ZERO);
        // diagonal line t ↦ (t/√2, t/√2, 0)
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let jet = SecondOrderJet {
            position: Sol3Point::new(s * t, s * t, 0.0),
            xu: [s, s, 0.0],
            ..jet
        };
        let (a, _) = covariant_second_derivatives(&jet);
        assert!(a.max_abs() < 1e-15);
    }
}
