use serde::{Deserialize, Serialize};
use std::fmt;

/// One named residual with its tolerance. `passed` is `residual <= tolerance`,
/// so a NaN residual always fails.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub location: String,
    pub passed: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub title: String,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(title: impl Into<String>) -> Self {
        VerificationReport { title: title.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, name: impl Into<String>, residual: f64, tolerance: f64, location: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            residual,
            tolerance,
            location: location.into(),
            passed: residual <= tolerance,
        });
    }

    /// Records the worst of a family of residuals, keeping the location where it occurs.
    /// NaN residuals dominate so that they cannot hide behind finite ones.
    pub fn push_max<I, L>(&mut self, name: impl Into<String>, samples: I, tolerance: f64)
    where
        I: IntoIterator<Item = (f64, L)>,
        L: Into<String>,
    {
        let mut worst: Option<(f64, String)> = None;
        for (r, loc) in samples {
            let replace = match &worst {
                None => true,
                Some((w, _)) => !w.is_nan() && (r.is_nan() || r > *w),
            };
            if replace {
                worst = Some((r, loc.into()));
            }
        }
        match worst {
            Some((r, loc)) => self.push(name, r, tolerance, loc),
            None => self.push(name, f64::NAN, tolerance, "no samples"),
        }
    }

    /// A boolean condition, recorded as residual 0 (holds) or 1 (violated).
    pub fn push_condition(&mut self, name: impl Into<String>, holds: bool, location: impl Into<String>) {
        self.push(name, if holds { 0.0 } else { 1.0 }, 0.0, location);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Multiplies every tolerance by `factor` and recomputes verdicts.
    pub fn scale_tolerances(&mut self, factor: f64) {
        for c in &mut self.checks {
            c.tolerance *= factor;
            c.passed = c.residual <= c.tolerance;
        }
    }
}

impl fmt::Display for VerificationReport {
    /// One line per check: `name residual tolerance verdict location`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# {}", self.title)?;
        for c in &self.checks {
            writeln!(
                f,
                "{} {:.6e} {:.6e} {} {}",
                c.name,
                c.residual,
                c.tolerance,
                if c.passed { "PASS" } else { "FAIL" },
                c.location
            )?;
        }
        Ok(())
    }
}
