//! Finite-difference discretization of −d²/dx² + V and the localization
//! classifier for eigenpairs of the truncated problem.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::grid::{Grid1D, GridKind};
use crate::math::{abs, sqrt};
use crate::potentials::PotentialSpec;
use crate::quadrature::{integrate, QuadOptions};
use crate::tridiag::{self, InverseIterationOptions};
use crate::{Error, Result};

/// Three-point stencil over the interior nodes of a grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorMatrix {
    pub diagonal: Vec<f64>,
    pub off_diagonal: Vec<f64>,
    pub grid: Grid1D,
}

impl OperatorMatrix {
    pub fn len(&self) -> usize {
        self.diagonal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagonal.is_empty()
    }

    pub fn inf_norm(&self) -> f64 {
        tridiag::inf_norm(&self.diagonal, &self.off_diagonal)
    }

    /// Number of eigenvalues strictly below `mu`.
    pub fn count_below(&self, mu: f64) -> usize {
        tridiag::sturm_count(&self.diagonal, &self.off_diagonal, mu)
    }

    /// Dense-free product A·v.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut s = self.diagonal[i] * v[i];
                if i > 0 {
                    s += self.off_diagonal[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    s += self.off_diagonal[i] * v[i + 1];
                }
                s
            })
            .collect()
    }
}

/// Build the matrix of −d²/dx² + V on the interior nodes of `grid`.
///
/// Nodes whose cell [x − h/2, x + h/2] contains a jump of V get the cell
/// average of V instead of the point value.
pub fn discretize(spec: &PotentialSpec, grid: &Grid1D, energy: Option<f64>) -> Result<OperatorMatrix> {
    spec.validate()?;
    let want = if spec.is_radial() { GridKind::Radial } else { GridKind::Line };
    if grid.kind != want {
        return Err(Error::invalid(if spec.is_radial() {
            "radial potentials need a radial grid"
        } else {
            "full-line potentials need a line grid"
        }));
    }
    let h = grid.spacing();
    let jumps = spec.discontinuities();
    let quad = QuadOptions::with_tol(1e-12 * h);
    let mut diagonal = Vec::with_capacity(grid.interior_len());
    for x in grid.interior_points() {
        let (a, b) = (x - 0.5 * h, x + 0.5 * h);
        let v = if jumps.iter().any(|&j| j > a && j < b) {
            let mut err = None;
            let (s, _) = integrate(
                |t| match spec.evaluate(t, energy) {
                    Ok(v) => v,
                    Err(e) => {
                        err.get_or_insert(e);
                        0.0
                    }
                },
                a,
                b,
                &jumps,
                &quad,
            )?;
            if let Some(e) = err {
                return Err(e);
            }
            s / h
        } else {
            spec.evaluate(x, energy)?
        };
        diagonal.push(2.0 / (h * h) + v);
    }
    let off_diagonal = alloc::vec![-1.0 / (h * h); diagonal.len().saturating_sub(1)];
    Ok(OperatorMatrix {
        diagonal,
        off_diagonal,
        grid: *grid,
    })
}

/// Discrete localization diagnostics of one h-normalized eigenvector.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalizationRecord {
    /// Σψ²h over the inner half of the domain.
    pub mass_fraction_inner: f64,
    /// 1 / Σψ⁴h: roughly the length over which ψ is spread.
    pub participation_length: f64,
}

/// Which eigenvectors `solve_eigen` keeps after computing diagnostics.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Retention {
    All,
    /// Only vectors whose inner mass fraction reaches the given value.
    MinMassFraction(f64),
    Nothing,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveOptions {
    pub inverse_iteration: InverseIterationOptions,
    pub retention: Retention,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            inverse_iteration: InverseIterationOptions::default(),
            retention: Retention::All,
        }
    }
}

impl SolveOptions {
    pub fn with_seed(seed: u64) -> Self {
        let mut o = Self::default();
        o.inverse_iteration.seed = seed;
        o
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralResult {
    /// Ascending Schrödinger eigenvalues Ẽ.
    pub eigenvalues: Vec<f64>,
    /// Interior-node values with Σψ²h = 1; `None` when not retained.
    #[serde(skip)]
    pub eigenvectors: Vec<Option<Vec<f64>>>,
    pub localization: Vec<LocalizationRecord>,
    /// ‖Aψ − Ẽψ‖₂ / ‖A‖∞ for unit ψ.
    pub residuals: Vec<f64>,
    pub grid: Grid1D,
}

impl SpectralResult {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Σψ²h of eigenvector `k` over the nodes in [lo, hi].
    pub fn mass_in(&self, k: usize, lo: f64, hi: f64) -> Option<f64> {
        let v = self.eigenvectors.get(k)?.as_ref()?;
        Some(mass_in(&self.grid, v, lo, hi))
    }

    /// Interior node coordinates matching the eigenvector entries.
    pub fn nodes(&self) -> Vec<f64> {
        self.grid.interior_points().collect()
    }
}

fn mass_in(grid: &Grid1D, v: &[f64], lo: f64, hi: f64) -> f64 {
    let h = grid.spacing();
    grid.interior_points()
        .zip(v)
        .filter(|(x, _)| *x >= lo && *x <= hi)
        .map(|(_, p)| p * p * h)
        .sum::<f64>()
        .min(1.0)
}

/// Eigenpairs of `matrix` with eigenvalue in `window` = [lo, hi) (all when
/// `None`), by Sturm bisection and inverse iteration.
pub fn solve_eigen(matrix: &OperatorMatrix, window: Option<(f64, f64)>, opts: &SolveOptions) -> Result<SpectralResult> {
    let (lo, hi) = window.unwrap_or((f64::NEG_INFINITY, f64::INFINITY));
    if lo.is_nan() || hi.is_nan() || lo > hi {
        return Err(Error::invalid("eigenvalue window must satisfy lo ≤ hi"));
    }
    let eigenvalues = tridiag::eigenvalues_in(&matrix.diagonal, &matrix.off_diagonal, lo, hi);
    let grid = matrix.grid;
    let h = grid.spacing();
    let scale = 1.0 / sqrt(h);
    let (inner_lo, inner_hi) = grid.inner_half();
    let mut eigenvectors = Vec::with_capacity(eigenvalues.len());
    let mut localization = Vec::with_capacity(eigenvalues.len());
    let mut residuals = Vec::with_capacity(eigenvalues.len());
    tridiag::for_each_eigenvector(
        &matrix.diagonal,
        &matrix.off_diagonal,
        &eigenvalues,
        &opts.inverse_iteration,
        |_, unit, residual| {
            let psi: Vec<f64> = unit.iter().map(|u| u * scale).collect();
            let mass = mass_in(&grid, &psi, inner_lo, inner_hi);
            let p4: f64 = psi.iter().map(|p| p * p * p * p * h).sum();
            localization.push(LocalizationRecord {
                mass_fraction_inner: mass,
                participation_length: 1.0 / p4,
            });
            residuals.push(residual);
            let keep = match opts.retention {
                Retention::All => true,
                Retention::MinMassFraction(m) => mass >= m,
                Retention::Nothing => false,
            };
            eigenvectors.push(keep.then_some(psi));
            Ok(())
        },
    )?;
    Ok(SpectralResult {
        eigenvalues,
        eigenvectors,
        localization,
        residuals,
        grid,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalizationTag {
    Localized,
    Scattering,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalizationThresholds {
    pub min_mass_fraction: f64,
    /// Eigenvalues match when |Ẽ − Ẽ′| ≤ this · (1 + |Ẽ|).
    pub eigenvalue_match: f64,
}

impl Default for LocalizationThresholds {
    fn default() -> Self {
        LocalizationThresholds {
            min_mass_fraction: 0.99,
            eigenvalue_match: 1e-4,
        }
    }
}

/// Per-eigenpair verdict together with the raw numbers behind it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub tag: LocalizationTag,
    /// Best matching eigenvalue of the doubled domain, if any was in range.
    pub comparison_eigenvalue: Option<f64>,
    /// Its mass inside the original inner half.
    pub comparison_mass_fraction: Option<f64>,
}

/// Tag every eigenpair of `result` using `comparison`, a solve on the
/// doubled domain at the same spacing.
pub fn classify_localization(
    result: &SpectralResult,
    comparison: &SpectralResult,
    thresholds: &LocalizationThresholds,
) -> Result<Vec<Classification>> {
    if !result.grid.same_spacing(&comparison.grid) {
        return Err(Error::MismatchedSpacing(result.grid.spacing(), comparison.grid.spacing()));
    }
    let expected = result.grid.doubled();
    if abs(comparison.grid.span() - expected.span()) > 1e-9 * expected.span()
        || abs(comparison.grid.x_min - expected.x_min) > 1e-9 * expected.span()
    {
        return Err(Error::invalid("comparison grid must be the doubled domain"));
    }
    let (lo, hi) = result.grid.inner_half();
    let mut out = Vec::with_capacity(result.len());
    for (k, &e) in result.eigenvalues.iter().enumerate() {
        let tol = thresholds.eigenvalue_match * (1.0 + abs(e));
        let mut best: Option<(f64, f64)> = None;
        if result.localization[k].mass_fraction_inner >= thresholds.min_mass_fraction {
            for (j, &f) in comparison.eigenvalues.iter().enumerate() {
                if abs(f - e) > tol {
                    continue;
                }
                let mass = comparison.mass_in(j, lo, hi).ok_or(Error::MissingEigenvector(f))?;
                if best.map_or(true, |(_, m)| mass > m) {
                    best = Some((f, mass));
                }
            }
        }
        let tag = match best {
            Some((_, m)) if m >= thresholds.min_mass_fraction => LocalizationTag::Localized,
            _ => LocalizationTag::Scattering,
        };
        out.push(Classification {
            tag,
            comparison_eigenvalue: best.map(|b| b.0),
            comparison_mass_fraction: best.map(|b| b.1),
        });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub eigenvalue: f64,
    pub tag: LocalizationTag,
    pub localization: LocalizationRecord,
    pub comparison_eigenvalue: Option<f64>,
    pub comparison_mass_fraction: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbeddedScan {
    pub window: (f64, f64),
    pub entries: Vec<ScanEntry>,
    /// The original-domain solve; only candidate eigenvectors are retained.
    pub spectrum: SpectralResult,
}

impl EmbeddedScan {
    pub fn localized(&self) -> impl Iterator<Item = (usize, &ScanEntry)> {
        self.entries.iter().enumerate().filter(|(_, e)| e.tag == LocalizationTag::Localized)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ScanOptions {
    pub solve: InverseIterationOptions,
    pub thresholds: LocalizationThresholds,
}

/// Solve in `window` on `grid` and on the doubled domain, and classify.
///
/// The doubled domain is only solved in narrow windows around the
/// candidates (pairs that pass the inner-mass test on the original grid).
pub fn embedded_eigenvalue_scan(
    spec: &PotentialSpec,
    grid: &Grid1D,
    window: (f64, f64),
    energy: Option<f64>,
    opts: &ScanOptions,
) -> Result<EmbeddedScan> {
    let th = opts.thresholds;
    let matrix = discretize(spec, grid, energy)?;
    let solve = SolveOptions {
        inverse_iteration: opts.solve,
        retention: Retention::MinMassFraction(th.min_mass_fraction),
    };
    let spectrum = solve_eigen(&matrix, Some(window), &solve)?;

    // Merge the match intervals of all candidates into disjoint windows.
    let mut windows: Vec<(f64, f64)> = Vec::new();
    for (k, &e) in spectrum.eigenvalues.iter().enumerate() {
        if spectrum.localization[k].mass_fraction_inner < th.min_mass_fraction {
            continue;
        }
        let tol = th.eigenvalue_match * (1.0 + abs(e));
        let (a, b) = (e - tol, e + tol * (1.0 + f64::EPSILON));
        match windows.last_mut() {
            Some(w) if a <= w.1 => w.1 = w.1.max(b),
            _ => windows.push((a, b)),
        }
    }

    let doubled = grid.doubled();
    let mut comparison = SpectralResult {
        eigenvalues: Vec::new(),
        eigenvectors: Vec::new(),
        localization: Vec::new(),
        residuals: Vec::new(),
        grid: doubled,
    };
    if !windows.is_empty() {
        let big = discretize(spec, &doubled, energy)?;
        let all = SolveOptions {
            inverse_iteration: opts.solve,
            retention: Retention::All,
        };
        for w in windows {
            let part = solve_eigen(&big, Some(w), &all)?;
            comparison.eigenvalues.extend(part.eigenvalues);
            comparison.eigenvectors.extend(part.eigenvectors);
            comparison.localization.extend(part.localization);
            comparison.residuals.extend(part.residuals);
        }
    }

    let tags = classify_localization(&spectrum, &comparison, &th)?;
    let entries = spectrum
        .eigenvalues
        .iter()
        .zip(&spectrum.localization)
        .zip(tags)
        .map(|((&eigenvalue, &localization), c)| ScanEntry {
            eigenvalue,
            tag: c.tag,
            localization,
            comparison_eigenvalue: c.comparison_eigenvalue,
            comparison_mass_fraction: c.comparison_mass_fraction,
        })
        .collect();
    Ok(EmbeddedScan {
        window,
        entries,
        spectrum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn free_box_ground_state() {
        let grid = Grid1D::new(0.0, PI, 2001, GridKind::Line).unwrap();
        let m = discretize(&PotentialSpec::zero(), &grid, None).unwrap();
        let r = solve_eigen(&m, Some((0.0, 10.0)), &SolveOptions::default()).unwrap();
        assert_eq!(r.len(), 3);
        for (k, e) in r.eigenvalues.iter().enumerate() {
            let want = ((k + 1) * (k + 1)) as f64;
            assert!((e - want).abs() < 1e-5 * want, "{e} vs {want}");
        }
        for v in r.eigenvectors.iter().flatten() {
            let n: f64 = v.iter().map(|p| p * p).sum::<f64>() * grid.spacing();
            assert!((n - 1.0).abs() < 1e-8);
        }
        assert_eq!(m.count_below(0.0), 0);
    }

    #[test]
    fn even_potential_gives_symmetric_diagonal() {
        let grid = Grid1D::line(-10.0, 10.0, 0.05).unwrap();
        let m = discretize(&PotentialSpec::vnw_derived(), &grid, None).unwrap();
        let n = m.len();
        for i in 0..n {
            assert!((m.diagonal[i] - m.diagonal[n - 1 - i]).abs() < 1e-9);
        }
    }

    #[test]
    fn jump_cells_are_averaged() {
        let grid = Grid1D::line(-2.0, 2.0, 0.1).unwrap();
        let spec = PotentialSpec::square_well(5.0, 1.02).unwrap();
        let m = discretize(&spec, &grid, None).unwrap();
        // Node x = 1.0 (interior index 29) has its cell [0.95, 1.05] split at 1.02.
        assert!((grid.point(30) - 1.0).abs() < 1e-12);
        assert!((m.diagonal[29] - (200.0 - 3.5)).abs() < 1e-9);
        assert!((m.diagonal[28] - (200.0 - 5.0)).abs() < 1e-9);
        assert!((m.diagonal[30] - 200.0).abs() < 1e-9);
    }

    #[test]
    fn radial_spec_needs_radial_grid() {
        let grid = Grid1D::line(-1.0, 1.0, 0.1).unwrap();
        assert!(discretize(&PotentialSpec::coulomb(0.1, 0), &grid, Some(0.9)).is_err());
        let rgrid = Grid1D::radial(0.1, 1.0, 0.1).unwrap();
        assert!(discretize(&PotentialSpec::zero(), &rgrid, None).is_err());
    }

    #[test]
    fn mismatched_spacing_is_rejected() {
        let a = Grid1D::line(-5.0, 5.0, 0.1).unwrap();
        let b = Grid1D::line(-10.0, 10.0, 0.05).unwrap();
        let ra = solve_eigen(&discretize(&PotentialSpec::zero(), &a, None).unwrap(), Some((0.0, 0.2)), &SolveOptions::default()).unwrap();
        let rb = solve_eigen(&discretize(&PotentialSpec::zero(), &b, None).unwrap(), Some((0.0, 0.2)), &SolveOptions::default()).unwrap();
        assert!(matches!(
            classify_localization(&ra, &rb, &LocalizationThresholds::default()),
            Err(Error::MismatchedSpacing(..))
        ));
    }
}
