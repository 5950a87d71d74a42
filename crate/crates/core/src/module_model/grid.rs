use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{OpError, Result};
use crate::linalg::C64;

/// Complex samples of a function in C[0,1] at the nodes λ_j = j/n, j = 0..=n.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridFunction {
    samples: Vec<C64>,
}

impl GridFunction {
    pub const MIN_INTERVALS: usize = 16;

    pub fn new(samples: Vec<C64>) -> Result<Self> {
        let n = samples.len().saturating_sub(1);
        check_intervals(n)?;
        if let Some(j) = samples.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(OpError::InvalidGrid(format!("non-finite sample at node {j}")));
        }
        Ok(Self { samples })
    }

    pub fn sample(n: usize, f: impl Fn(f64) -> C64) -> Result<Self> {
        check_intervals(n)?;
        Self::new((0..=n).map(|j| f(j as f64 / n as f64)).collect())
    }

    pub fn sample_real(n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::sample(n, |x| C64::new(f(x), 0.0))
    }

    pub fn constant(n: usize, c: C64) -> Result<Self> {
        Self::sample(n, |_| c)
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::constant(n, C64::new(0.0, 0.0))
    }

    /// λ ↦ λ.
    pub fn coordinate(n: usize) -> Result<Self> {
        Self::sample_real(n, |x| x)
    }

    pub fn intervals(&self) -> usize {
        self.samples.len() - 1
    }

    pub fn samples(&self) -> &[C64] {
        &self.samples
    }

    pub fn node(&self, j: usize) -> f64 {
        j as f64 / self.intervals() as f64
    }

    /// Linear interpolation at x ∈ [0, 1] (clamped).
    pub fn at(&self, x: f64) -> C64 {
        let n = self.intervals();
        let t = x.clamp(0.0, 1.0) * n as f64;
        let j = (t.floor() as usize).min(n - 1);
        let frac = t - j as f64;
        if frac == 0.0 {
            return self.samples[j];
        }
        self.samples[j] * (1.0 - frac) + self.samples[j + 1] * frac
    }

    pub fn sup_norm(&self) -> f64 {
        self.samples.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        Self {
            samples: self.samples.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, c: C64) -> Self {
        self.map(|z| z * c)
    }

    pub fn check_grid(&self, other: &Self) -> Result<()> {
        if self.samples.len() == other.samples.len() {
            Ok(())
        } else {
            Err(OpError::GridMismatch {
                left: self.intervals(),
                right: other.intervals(),
            })
        }
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(C64, C64) -> C64) -> Result<Self> {
        self.check_grid(other)?;
        Ok(Self {
            samples: self.samples.iter().zip(&other.samples).map(|(&a, &b)| f(a, b)).collect(),
        })
    }
}

fn check_intervals(n: usize) -> Result<()> {
    if n < GridFunction::MIN_INTERVALS || !n.is_power_of_two() {
        return Err(OpError::InvalidGrid(format!(
            "need a power of two ≥ {} intervals, got {n}",
            GridFunction::MIN_INTERVALS
        )));
    }
    Ok(())
}

impl Mul for &GridFunction {
    type Output = GridFunction;

    fn mul(self, rhs: &GridFunction) -> GridFunction {
        self.zip_with(rhs, |a, b| a * b).expect("grid mismatch")
    }
}

impl Add for &GridFunction {
    type Output = GridFunction;

    fn add(self, rhs: &GridFunction) -> GridFunction {
        self.zip_with(rhs, |a, b| a + b).expect("grid mismatch")
    }
}

impl Sub for &GridFunction {
    type Output = GridFunction;

    fn sub(self, rhs: &GridFunction) -> GridFunction {
        self.zip_with(rhs, |a, b| a - b).expect("grid mismatch")
    }
}
