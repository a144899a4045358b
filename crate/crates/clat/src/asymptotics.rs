//! Periodic 2-D quadrature and the bulk-limit energy integrals of the
//! 3-12-12 and 3-6-24 lattices, plus finite-size energy tables from the
//! closed-form eigenvalue sums.

use crate::error::{Error, Result};
use crate::lattice::LatticeKind;

/// Uniform periodic tensor-grid rule with successive grid doubling.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureConfig {
    /// Starting points per axis.
    pub grid: usize,
    /// Maximum number of doublings.
    pub refine_limit: usize,
    /// Successive-refinement stopping threshold.
    pub tol: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            grid: 512,
            refine_limit: 4,
            tol: 1e-7,
        }
    }
}

impl QuadratureConfig {
    fn validate(&self) -> Result<()> {
        if self.grid < 8 {
            return Err(Error::InvalidParameter(format!(
                "quadrature grid {} below minimum 8",
                self.grid
            )));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "quadrature tolerance {} must be positive",
                self.tol
            )));
        }
        Ok(())
    }
}

/// Last value, the delta achieved between the final two refinement
/// levels, the grid used, and whether the delta met the tolerance.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureResult {
    pub value: f64,
    pub delta: f64,
    pub grid: usize,
    pub converged: bool,
}

/// Integrates a 2*pi-periodic function over `[0, 2*pi)^2` by the
/// periodic trapezoid rule (grid mean times `4*pi^2`), doubling the
/// grid until successive values differ by less than `tol` or the
/// refinement limit is hit. Non-convergence is reported in the result,
/// never silently dropped.
pub fn integrate_periodic_2d<F: Fn(f64, f64) -> f64>(
    f: F,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult> {
    cfg.validate()?;
    let four_pi_sq = 4.0 * std::f64::consts::PI * std::f64::consts::PI;
    let mut grid = cfg.grid;
    let mut value = grid_mean(&f, grid) * four_pi_sq;
    let mut delta = f64::INFINITY;
    for _ in 0..cfg.refine_limit {
        grid *= 2;
        let next = grid_mean(&f, grid) * four_pi_sq;
        delta = (next - value).abs();
        value = next;
        if delta < cfg.tol {
            return Ok(QuadratureResult {
                value,
                delta,
                grid,
                converged: true,
            });
        }
    }
    Ok(QuadratureResult {
        value,
        delta,
        grid,
        converged: false,
    })
}

/// Grid mean with compensated (Kahan) summation in a fixed row-major
/// order, so results are run-to-run identical.
fn grid_mean<F: Fn(f64, f64) -> f64>(f: &F, grid: usize) -> f64 {
    let step = std::f64::consts::TAU / grid as f64;
    let mut sum = 0.0;
    let mut carry = 0.0;
    for i in 0..grid {
        let x = i as f64 * step;
        for j in 0..grid {
            let y = f(x, j as f64 * step);
            let t = y - carry;
            let s = sum + t;
            carry = (s - sum) - t;
            sum = s;
        }
    }
    sum / (grid * grid) as f64
}

/// `3 + 2cos x + 2cos y + 2cos(x+y) = |1 + e^{ix} + e^{iy}|^2`, clamped
/// to 0 when floating point dips into `[-1e-12, 0)` at its zeros.
fn hex_symbol(x: f64, y: f64) -> f64 {
    let v = 3.0 + 2.0 * x.cos() + 2.0 * y.cos() + 2.0 * (x + y).cos();
    debug_assert!(v > -1e-12, "hex symbol evaluated to {v}");
    v.max(0.0)
}

fn t_integrand(x: f64, y: f64) -> f64 {
    let r = hex_symbol(x, y).sqrt();
    (13.0 + 4.0 * r).sqrt() + (13.0 - 4.0 * r).sqrt()
}

fn s_integrand(x: f64, y: f64) -> f64 {
    let r = hex_symbol(x, y).sqrt();
    let a = (13.0 + 4.0 * r).sqrt();
    let b = (13.0 - 4.0 * r).sqrt();
    (15.0 + 2.0 * a).sqrt() + (15.0 + 2.0 * b).sqrt() + (15.0 - 2.0 * a).sqrt()
        + (15.0 - 2.0 * b).sqrt()
}

/// Asymptotic energy per vertex:
///
/// ```text
/// 3-12-12:  1/3 + (1/(24 pi^2)) Int[ sqrt(13+4R) + sqrt(13-4R) ]          ~ 1.4825
/// 3-6-24:   (1/(72 pi^2)) Int[ sum of sqrt(15 +- 2 sqrt(13 +- 4R)) ]
///             + (sqrt 5 + sqrt 13 + 6)/18                                  ~ 1.4908
/// ```
///
/// with `R = sqrt(3 + 2cos x + 2cos y + 2cos(x+y))`.
pub fn asymptotic_energy_per_vertex(kind: LatticeKind, cfg: &QuadratureConfig) -> Result<f64> {
    let (integral, scale, shift) = match kind {
        LatticeKind::ThreeTwelveTwelve => (
            integrate_periodic_2d(t_integrand, cfg)?,
            24.0,
            1.0 / 3.0,
        ),
        LatticeKind::ThreeSixTwentyFour => (
            integrate_periodic_2d(s_integrand, cfg)?,
            72.0,
            (5.0_f64.sqrt() + 13.0_f64.sqrt() + 6.0) / 18.0,
        ),
    };
    if !integral.converged {
        return Err(Error::QuadratureNotConverged {
            value: integral.value,
            delta: integral.delta,
            grid: integral.grid,
            tol: cfg.tol,
        });
    }
    Ok(shift + integral.value / (scale * std::f64::consts::PI * std::f64::consts::PI))
}

/// One row of a finite-size energy table.
#[derive(Debug, Clone, Copy)]
pub struct EnergyRow {
    pub m: usize,
    pub n: usize,
    pub vertices: usize,
    pub per_vertex: f64,
}

/// Exact per-vertex energy of the 3-12-12 torus from the closed-form
/// eigenvalue sums (no dense eigensolve): with N = (m+1)(n+1),
/// `E = Sum_ij [sqrt(13+4R_ij) + sqrt(13-4R_ij)] + 2N` over `6N`
/// vertices.
pub fn t_energy_per_vertex(m: usize, n: usize) -> f64 {
    let cells = ((m + 1) * (n + 1)) as f64;
    (lattice_sum(m, n, t_integrand) + 2.0 * cells) / (6.0 * cells)
}

/// Exact per-vertex energy of the 3-6-24 torus: the four-term sum plus
/// `(sqrt 13 + sqrt 5 + 6) N`, over `18N` vertices.
pub fn s_energy_per_vertex(m: usize, n: usize) -> f64 {
    let cells = ((m + 1) * (n + 1)) as f64;
    let korn = (13.0_f64.sqrt() + 5.0_f64.sqrt() + 6.0) * cells;
    (lattice_sum(m, n, s_integrand) + korn) / (18.0 * cells)
}

fn lattice_sum<F: Fn(f64, f64) -> f64>(m: usize, n: usize, f: F) -> f64 {
    let tau = std::f64::consts::TAU;
    let mut sum = 0.0;
    let mut carry = 0.0;
    for i in 0..=n {
        let x = tau * i as f64 / (n + 1) as f64;
        for j in 0..=m {
            let y = tau * j as f64 / (m + 1) as f64;
            let v = f(x, y);
            let t = v - carry;
            let s = sum + t;
            carry = (s - sum) - t;
            sum = s;
        }
    }
    sum
}

/// Finite-size per-vertex energies from the closed-form sums, usable up
/// to sizes like (200, 200).
pub fn finite_size_energy_table(kind: LatticeKind, sizes: &[(usize, usize)]) -> Vec<EnergyRow> {
    sizes
        .iter()
        .map(|&(m, n)| {
            let cells = (m + 1) * (n + 1);
            let (vertices, per_vertex) = match kind {
                LatticeKind::ThreeTwelveTwelve => (6 * cells, t_energy_per_vertex(m, n)),
                LatticeKind::ThreeSixTwentyFour => (18 * cells, s_energy_per_vertex(m, n)),
            };
            EnergyRow {
                m,
                n,
                vertices,
                per_vertex,
            }
        })
        .collect()
}
