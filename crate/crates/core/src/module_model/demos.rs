//! Worked counterexamples on the C[0,1] grid model, packaged as reports.

use serde::{Deserialize, Serialize};

use super::element::{module_inner, ModuleElement};
use super::grid::GridFunction;
use super::localize::{l2_operators, local_factorization, thl2_decompose, PureState};
use super::operator::{op_adjoint, op_apply, op_compose, op_psd_gap, ModuleOperator};
use super::preimage::{in_ideal_m, multiplier_preimage};
use crate::error::Result;
use crate::linalg::C64;
use crate::tolerances::Tolerances;

pub const DEFAULT_GRID: usize = 1024;

/// States used by the localization demos, before snapping to the grid.
pub const DEMO_STATES: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

/// Scalars c tested against BB* ≤ c·AA*.
pub const MAJORIZATION_SCALARS: [f64; 3] = [1.0, 10.0, 1e6];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Demo {
    Ex1,
    Ex2,
    L2,
}

impl std::str::FromStr for Demo {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "ex1" => Ok(Self::Ex1),
            "ex2" => Ok(Self::Ex2),
            "l2" => Ok(Self::L2),
            other => Err(format!("unknown demo '{other}' (expected ex1, ex2 or l2)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DemoCheck {
    pub name: String,
    pub passed: bool,
    pub value: f64,
    pub threshold: f64,
    pub detail: String,
}

impl DemoCheck {
    fn new(name: impl Into<String>, passed: bool, value: f64, threshold: f64, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            value,
            threshold,
            detail: detail.into(),
        }
    }

    fn at_most(name: impl Into<String>, value: f64, threshold: f64, detail: impl Into<String>) -> Self {
        Self::new(name, value <= threshold, value, threshold, detail)
    }

    pub fn find<'a>(checks: &'a [DemoCheck], name: &str) -> Option<&'a DemoCheck> {
        checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DemoReport {
    pub which: Demo,
    pub grid: usize,
    pub checks: Vec<DemoCheck>,
    /// Every check came out as the construction predicts.
    pub passed: bool,
}

impl DemoReport {
    pub fn check(&self, name: &str) -> Option<&DemoCheck> {
        DemoCheck::find(&self.checks, name)
    }
}

pub fn demo(which: Demo, grid: usize, tol: &Tolerances) -> Result<DemoReport> {
    let checks = match which {
        Demo::Ex1 => ex1(grid, tol)?,
        Demo::Ex2 => ex2(grid, tol)?,
        Demo::L2 => l2(grid, tol)?,
    };
    let passed = checks.iter().all(|c| c.passed);
    Ok(DemoReport {
        which,
        grid,
        checks,
        passed,
    })
}

type Sampler = Box<dyn Fn(f64) -> C64>;

fn re(f: impl Fn(f64) -> f64) -> impl Fn(f64) -> C64 {
    move |x| C64::new(f(x), 0.0)
}

fn max_sup_diff(x: &ModuleElement, y: &ModuleElement) -> f64 {
    x.components()
        .iter()
        .zip(y.components())
        .map(|(a, b)| (*a - b).sup_norm())
        .fold(0.0, f64::max)
}

fn max_sup(x: &ModuleElement) -> f64 {
    x.components().iter().map(|c| c.sup_norm()).fold(0.0, f64::max)
}

/// Ã = [[0, λ], [0, 0]] on A ⊕ M.
fn a_tilde(n: usize) -> Result<ModuleOperator> {
    ModuleOperator::block(None, Some(GridFunction::coordinate(n)?), None, None)
}

/// ÃÃ* = C̃C̃* while (λ, 0) ∈ R(C̃) \ R(Ã).
fn ex1(n: usize, tol: &Tolerances) -> Result<Vec<DemoCheck>> {
    let lam = GridFunction::coordinate(n)?;
    let a = a_tilde(n)?;
    let c = ModuleOperator::block(Some(lam.clone()), None, None, None)?;
    let aa = op_compose(&a, &op_adjoint(&a))?;
    let cc = op_compose(&c, &op_adjoint(&c))?;

    let mut checks = Vec::new();
    let mismatch = (0..=n)
        .map(|j| (&aa.matrix_at_node(j) - &cc.matrix_at_node(j)).max_abs())
        .fold(0.0, f64::max);
    checks.push(DemoCheck::new(
        "gram equality",
        mismatch == 0.0,
        mismatch,
        0.0,
        "max over nodes of |ÃÃ*(λ) − C̃C̃*(λ)|",
    ));
    let gap = op_psd_gap(&cc, &aa, 1.0)?.min(op_psd_gap(&aa, &cc, 1.0)?);
    checks.push(DemoCheck::new(
        "equality gap",
        gap == 0.0,
        gap,
        0.0,
        "min of the gaps of ÃÃ* − C̃C̃* in both directions",
    ));

    let one = GridFunction::constant(n, C64::new(1.0, 0.0))?;
    let f0 = ModuleElement::direct(lam.clone(), GridFunction::zero(n)?)?;
    let image = op_apply(&c, &ModuleElement::direct(one, GridFunction::zero(n)?)?)?;
    let d = max_sup_diff(&image, &f0);
    checks.push(DemoCheck::new("f0 in range of C", d == 0.0, d, 0.0, "C̃(1, 0) = (λ, 0)"));

    // Ã(g', g) = (λg, 0), so the only candidate is g = f₀/λ, which must lie in M
    let p = multiplier_preimage(&re(|l| l), &re(|l| l), n, true, tol.ideal)?;
    let g0 = p.preimage.samples()[0].norm();
    checks.push(DemoCheck::new(
        "f0 not in range of A",
        !p.in_range && !p.in_ideal,
        g0,
        tol.ideal,
        format!("candidate preimage has |g(0)| = {g0}, divergence ratio {}", p.divergence_ratio),
    ));

    // Localized, majorization does give a factorization at every interior state
    let mut worst: f64 = 0.0;
    let mut all_solved = true;
    for x0 in DEMO_STATES {
        let s = local_factorization(&a, &c, PureState::at_node(x0, n)?, tol)?;
        all_solved &= s.solved;
        worst = worst.max(s.residual);
    }
    checks.push(DemoCheck::new(
        "local factorization",
        all_solved && worst <= tol.interp,
        worst,
        tol.interp,
        "π(Ã)X = π(C̃) at the demo states",
    ));
    Ok(checks)
}

/// R(D̃D̃*) ⊆ R(Ã) while R(D̃) ⊄ R(Ã), with D = multiplication by λ^{2/3}.
fn ex2(n: usize, tol: &Tolerances) -> Result<Vec<DemoCheck>> {
    let a = a_tilde(n)?;
    let d = ModuleOperator::block(None, Some(GridFunction::sample_real(n, |l| l.powf(2.0 / 3.0))?), None, None)?;
    let dd = op_compose(&d, &op_adjoint(&d))?;
    let cbrt = GridFunction::sample_real(n, f64::cbrt)?;

    let firsts: [(&str, Sampler); 4] = [
        ("1", Box::new(|_| C64::new(1.0, 0.0))),
        ("λ", Box::new(|l| C64::new(l, 0.0))),
        ("cos 3λ + iλ", Box::new(|l| C64::new((3.0 * l).cos(), l))),
        ("e^λ", Box::new(|l| C64::new(l.exp(), 0.0))),
    ];
    let second = GridFunction::sample_real(n, |l| l * (5.0 * l).sin())?;

    let mut checks = Vec::new();
    let mut worst_residual: f64 = 0.0;
    let mut worst_ideal: f64 = 0.0;
    let mut all_in_ideal = true;
    for (_, f) in &firsts {
        let f = GridFunction::sample(n, f)?;
        let x = ModuleElement::direct(f.clone(), second.clone())?;
        let lhs = op_apply(&dd, &x)?;
        let g = &cbrt * &f;
        all_in_ideal &= in_ideal_m(&g, tol.ideal);
        worst_ideal = worst_ideal.max(g.samples()[0].norm());
        let rhs = op_apply(&a, &ModuleElement::direct(GridFunction::zero(n)?, g)?)?;
        worst_residual = worst_residual.max(max_sup_diff(&lhs, &rhs) / (1.0 + max_sup(&lhs)));
    }
    let names: Vec<&str> = firsts.iter().map(|(s, _)| *s).collect();
    checks.push(DemoCheck::new(
        "preimage in M",
        all_in_ideal,
        worst_ideal,
        tol.ideal,
        format!("g = λ^(1/3)f vanishes at 0 for f ∈ {{{}}}", names.join(", ")),
    ));
    checks.push(DemoCheck::at_most(
        "DD* = A(0, g)",
        worst_residual,
        tol.interp,
        "relative sup distance between D̃D̃*(f, f') and Ã(0, g)",
    ));

    // D̃(0, λ^{1/3}) = (λ, 0); its only Ã-preimage candidate is 1, outside M
    let computed = multiplier_preimage(
        &re(|l| l.powf(2.0 / 3.0) * l.cbrt()),
        &re(|l| l),
        n,
        true,
        tol.ideal,
    )?;
    let g0 = computed.preimage.samples()[0].norm();
    checks.push(DemoCheck::new(
        "Df not in range of A",
        !computed.in_range,
        g0,
        tol.ideal,
        format!("D̃(0, λ^(1/3)) has candidate preimage with |g(0)| = {g0}"),
    ));

    // The constant witness: 1/λ is unbounded, so sup|g| doubles with the grid
    let stated = multiplier_preimage(&re(|_| 1.0), &re(|l| l), n, true, tol.ideal)?;
    let ratio = stated.divergence_ratio;
    checks.push(DemoCheck::new(
        "constant witness diverges",
        !stated.in_range && (1.9..=2.1).contains(&ratio),
        ratio,
        2.0,
        format!(
            "sup|1/λ| = {} on {n} intervals, {} on {}",
            stated.sup_norm,
            stated.refined_sup_norm,
            2 * n
        ),
    ));
    Ok(checks)
}

/// ℓ²(A) with A = λ and B = 1 on the first coordinate: R(B) ⊆ R(A) + N_{E,δ} at
/// every interior state, yet BB* ≤ c·AA* fails for every c.
fn l2(n: usize, tol: &Tolerances) -> Result<Vec<DemoCheck>> {
    let (a, b) = l2_operators(n)?;
    let zero = GridFunction::zero(n)?;
    let elements = [
        GridFunction::coordinate(n)?,
        GridFunction::constant(n, C64::new(1.0, 0.0))?,
        GridFunction::sample(n, |l| C64::new((7.0 * l).sin(), 1.0 - l * l))?,
    ];

    let mut checks = Vec::new();
    let mut worst_residual: f64 = 0.0;
    let mut worst_h: f64 = 0.0;
    for x0 in DEMO_STATES {
        let p = PureState::at_node(x0, n)?;
        for f1 in &elements {
            let f = ModuleElement::sequence(vec![f1.clone(), zero.clone()])?;
            let dec = thl2_decompose(&f, p)?;
            worst_residual = worst_residual.max(dec.residual / (1.0 + f1.sup_norm()));
            worst_h = worst_h.max(dec.h_at_state);
        }
    }
    checks.push(DemoCheck::at_most(
        "local decomposition",
        worst_residual,
        tol.interp,
        "sup|Bf − (Ag + h)| / (1 + sup|f₁|) over demo states and elements",
    ));
    checks.push(DemoCheck::at_most(
        "h vanishes at state",
        worst_h,
        tol.interp,
        "|h₁(x0)| over demo states and elements",
    ));

    let aa = op_compose(&a, &op_adjoint(&a))?;
    let bb = op_compose(&b, &op_adjoint(&b))?;
    for c in MAJORIZATION_SCALARS {
        let gap = op_psd_gap(&bb, &aa, c)?;
        checks.push(DemoCheck::new(
            format!("BB* ≰ {c}·AA*"),
            gap < -1e-6,
            gap,
            -1e-6,
            "min over nodes of c·λ² − 1",
        ));
    }

    // Quadratic forms against f = (λ, 0, …)
    let f = ModuleElement::sequence(vec![GridFunction::coordinate(n)?])?;
    let form = |t: &ModuleOperator, power: i32| -> Result<f64> {
        let q = module_inner(&op_apply(t, &f)?, &f)?;
        let expected = GridFunction::sample_real(n, |l| l.powi(power))?;
        Ok((&q - &expected).sup_norm())
    };
    let bb_form = form(&bb, 2)?;
    checks.push(DemoCheck::at_most("<BB*f,f> = λ²", bb_form, tol.interp, "sup deviation"));
    let aa_form = form(&aa, 4)?;
    checks.push(DemoCheck::at_most("<AA*f,f> = λ⁴", aa_form, tol.interp, "sup deviation"));
    Ok(checks)
}
