//! Named numerical tolerances shared by every solver and checker.
//!
//! All values are relative unless the field doc says otherwise.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Unitarity of eigenvector / singular vector bases.
    pub unit: f64,
    /// Reconstruction residual of decompositions and square roots.
    pub recon: f64,
    /// Moore-Penrose identity residual.
    pub penrose: f64,
    /// Slack on Loewner-order comparisons (eigen-gaps).
    pub psd: f64,
    /// Residual accepted for a solved equation; also the range-inclusion tolerance used by solvers.
    pub solve: f64,
    /// Bound on the null-space leakage of a reduced solution.
    pub reduced: f64,
    /// Minimum eigenvalue ratio for a matrix to count as nonsingular.
    pub nonsing: f64,
    /// Negative-eigenvalue clamping window for fractional powers.
    pub clamp: f64,
    /// Boundary test for the ideal M of C[0,1].
    pub ideal: f64,
    /// Pointwise agreement on grids.
    pub interp: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            unit: 1e-10,
            recon: 1e-10,
            penrose: 1e-10,
            psd: 1e-9,
            solve: 1e-8,
            reduced: 1e-8,
            nonsing: 1e-8,
            clamp: 1e-10,
            ideal: 1e-9,
            interp: 1e-9,
        }
    }
}

impl Tolerances {
    /// Applies an override string of the form `1e-7` (sets `solve`) or
    /// `solve=1e-7,psd=1e-8,...` (sets named fields).
    pub fn with_overrides(mut self, spec: &str) -> Result<Self, String> {
        let spec = spec.trim();
        if spec.is_empty() {
            return Ok(self);
        }
        if let Ok(v) = spec.parse::<f64>() {
            self.solve = check_positive("solve", v)?;
            return Ok(self);
        }
        for part in spec.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| format!("expected key=value, got `{part}`"))?;
            let key = key.trim();
            let v: f64 = value
                .trim()
                .parse()
                .map_err(|_| format!("bad number for `{key}`: `{}`", value.trim()))?;
            let v = check_positive(key, v)?;
            match key {
                "unit" => self.unit = v,
                "recon" => self.recon = v,
                "penrose" => self.penrose = v,
                "psd" => self.psd = v,
                "solve" => self.solve = v,
                "reduced" => self.reduced = v,
                "nonsing" => self.nonsing = v,
                "clamp" => self.clamp = v,
                "ideal" => self.ideal = v,
                "interp" => self.interp = v,
                other => return Err(format!("unknown tolerance `{other}`")),
            }
        }
        Ok(self)
    }
}

fn check_positive(key: &str, v: f64) -> Result<f64, String> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("tolerance `{key}` must be positive and finite, got {v}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bare_number_sets_solve() {
        let t = Tolerances::default().with_overrides("1e-6").unwrap();
        assert_eq!(t.solve, 1e-6);
        assert_eq!(t.psd, 1e-9);
    }

    #[test]
    fn named_overrides() {
        let t = Tolerances::default()
            .with_overrides("psd=1e-7, interp=2e-9")
            .unwrap();
        assert_eq!(t.psd, 1e-7);
        assert_eq!(t.interp, 2e-9);
        assert!(Tolerances::default().with_overrides("bogus=1").is_err());
        assert!(Tolerances::default().with_overrides("psd=-1").is_err());
        assert!(Tolerances::default().with_overrides("psd").is_err());
    }
}
