//! Pointwise differential data of a parametrized surface z = u + iv ↦ Sol₃.

use serde::{Deserialize, Serialize};

use crate::geometry::{FrameVector, Sol3Point};

/// First-order data of a conformal immersion at one parameter point.
///
/// Partials and normal are frame components at `position`; `lambda` is the
/// conformal factor ‖x_u‖² = ‖x_v‖².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImmersionJet {
    pub u: f64,
    pub v: f64,
    pub position: Sol3Point,
    pub xu: FrameVector,
    pub xv: FrameVector,
    pub normal: FrameVector,
    pub lambda: f64,
}

impl ImmersionJet {
    /// Relative conformality defects: (|⟨x_u,x_v⟩|/λ, |‖x_u‖²−λ|/λ, |‖x_v‖²−λ|/λ).
    pub fn conformality_defects(&self) -> (f64, f64, f64) {
        let l = self.lambda;
        (
            self.xu.dot(&self.xv).abs() / l,
            (self.xu.norm_sq() - l).abs() / l,
            (self.xv.norm_sq() - l).abs() / l,
        )
    }

    /// Largest of |⟨N,x_u⟩|, |⟨N,x_v⟩| relative to √λ, and ||N|−1|.
    pub fn normal_defect(&self) -> f64 {
        let s = self.lambda.sqrt();
        (self.normal.dot(&self.xu).abs() / s)
            .max(self.normal.dot(&self.xv).abs() / s)
            .max((self.normal.norm() - 1.0).abs())
    }
}

/// Coordinate-basis partials up to second order at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SecondOrderJet {
    pub position: Sol3Point,
    pub xu: [f64; 3],
    pub xv: [f64; 3],
    pub xuu: [f64; 3],
    pub xvv: [f64; 3],
    pub xuv: [f64; 3],
}
