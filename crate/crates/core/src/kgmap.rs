//! Klein-Gordon layer: Ẽ = E² − m², the self-consistent energy loop for
//! electric potentials, absence regions and the aggregated audit.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::conditions::{
    self, check_charge_conditions, check_condition_i, check_seminorm_conditions, check_simon_conditions, ConditionReport, CoulombSplit,
    SLambdaOptions, SeminormInputs, Verdict,
};
use crate::grid::{Grid1D, GridKind};
use crate::math::{abs, sqrt};
use crate::potentials::{asymptotics, Potential, PotentialSpec};
use crate::spectral::{discretize, embedded_eigenvalue_scan, EmbeddedScan, LocalizationRecord, ScanOptions};
use crate::tridiag;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Positive,
    Negative,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Positive => 1.0,
            Branch::Negative => -1.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", content = "potential", rename_all = "snake_case")]
pub enum Interaction {
    /// q_s enters as −Δ + q_s + m².
    PureScalar(PotentialSpec),
    /// b₀ enters through V_eff = −b₀² + 2E b₀.
    PureElectric(PotentialSpec),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Dimension {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "3-radial")]
    ThreeRadial,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KGParams {
    pub mass: f64,
    pub interaction: Interaction,
    pub dimension: Dimension,
}

/// |e| < (n−2)/(2√17) with n = 3.
pub fn coulomb_charge_bound() -> f64 {
    1.0 / (2.0 * sqrt(17.0))
}

impl KGParams {
    pub fn new(mass: f64, interaction: Interaction, dimension: Dimension) -> Result<Self> {
        let p = KGParams {
            mass,
            interaction,
            dimension,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn scalar(spec: PotentialSpec, mass: f64) -> Result<Self> {
        Self::new(mass, Interaction::PureScalar(spec), Dimension::One)
    }

    pub fn coulomb(charge: f64, ell: u32, mass: f64) -> Result<Self> {
        Self::new(mass, Interaction::PureElectric(PotentialSpec::coulomb(charge, ell)), Dimension::ThreeRadial)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mass > 0.0 && self.mass.is_finite()) {
            return Err(Error::invalid("mass must be positive and finite"));
        }
        match (&self.interaction, self.dimension) {
            (Interaction::PureScalar(spec), Dimension::One) => {
                spec.validate()?;
                if spec.is_radial() || spec.is_energy_dependent() {
                    return Err(Error::invalid("a one-dimensional scalar potential must live on the full line"));
                }
            }
            (Interaction::PureElectric(spec), Dimension::ThreeRadial) => {
                spec.validate()?;
                let Potential::Coulomb3d { charge } = spec.potential else {
                    return Err(Error::UnsupportedKind {
                        operation: "electric interaction (Coulomb only)",
                    });
                };
                let bound = coulomb_charge_bound();
                if !(abs(charge) < bound) {
                    return Err(Error::invalid(format!("|e| = {} violates the charge bound |e| < {bound}", abs(charge))));
                }
            }
            (Interaction::PureScalar(_), Dimension::ThreeRadial) => return Err(Error::UnsupportedDimension(3)),
            (Interaction::PureElectric(_), Dimension::One) => return Err(Error::UnsupportedDimension(1)),
        }
        Ok(())
    }

    pub fn coulomb_charge(&self) -> Option<f64> {
        match &self.interaction {
            Interaction::PureElectric(PotentialSpec {
                potential: Potential::Coulomb3d { charge },
                ..
            }) => Some(*charge),
            _ => None,
        }
    }

    fn spec(&self) -> &PotentialSpec {
        match &self.interaction {
            Interaction::PureScalar(s) | Interaction::PureElectric(s) => s,
        }
    }
}

/// E = ±√(Ẽ + m²).
pub fn kg_energy_from_schrodinger(schrodinger: f64, m: f64, branch: Branch) -> Result<f64> {
    let s = schrodinger + m * m;
    if !(s >= 0.0) {
        return Err(Error::Domain {
            what: "kg_energy_from_schrodinger",
            value: schrodinger,
            expected: "Ẽ ≥ −m²",
        });
    }
    Ok(branch.sign() * sqrt(s))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KGEigenResult {
    pub energy: f64,
    pub branch: Branch,
    pub schrodinger_value: f64,
    /// (E_k, Ẽ(E_k)) for energy-dependent runs.
    pub iteration_trace: Vec<(f64, f64)>,
    pub converged: bool,
    pub in_continuum: bool,
    /// |E − branch·√(Ẽ(E) + m²)| re-evaluated at the final E.
    pub fixed_point_residual: Option<f64>,
    pub localization: Option<LocalizationRecord>,
    pub caveat: Option<String>,
}

const NEGATIVE_BRANCH_CAVEAT: &str = "negative branch: positivity of the energy form is not established for this eigenvalue";

/// Embedded-eigenvalue scan of q_s, with each Localized Ẽ mapped to both branches.
pub fn scalar_kg_spectrum(params: &KGParams, grid: &Grid1D, window: (f64, f64), opts: &ScanOptions) -> Result<Vec<KGEigenResult>> {
    params.validate()?;
    let Interaction::PureScalar(spec) = &params.interaction else {
        return Err(Error::UnsupportedKind {
            operation: "scalar_kg_spectrum",
        });
    };
    let scan = embedded_eigenvalue_scan(spec, grid, window, None, opts)?;
    scalar_kg_from_scan(params.mass, &scan)
}

/// Map the Localized entries of an existing scan to KG energies.
pub fn scalar_kg_from_scan(m: f64, scan: &EmbeddedScan) -> Result<Vec<KGEigenResult>> {
    let mut out = Vec::new();
    for (_, entry) in scan.localized() {
        for branch in [Branch::Positive, Branch::Negative] {
            let energy = kg_energy_from_schrodinger(entry.eigenvalue, m, branch)?;
            out.push(KGEigenResult {
                energy,
                branch,
                schrodinger_value: entry.eigenvalue,
                iteration_trace: Vec::new(),
                converged: true,
                in_continuum: abs(energy) >= m,
                fixed_point_residual: None,
                localization: Some(entry.localization),
                caveat: (branch == Branch::Negative).then(|| NEGATIVE_BRANCH_CAVEAT.into()),
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FixedPointOptions {
    pub damping: f64,
    pub tol: f64,
    pub max_iterations: usize,
}

impl Default for FixedPointOptions {
    fn default() -> Self {
        FixedPointOptions {
            damping: 0.5,
            tol: 1e-10,
            max_iterations: 200,
        }
    }
}

fn coulomb_parts(params: &KGParams) -> Result<&PotentialSpec> {
    params.validate()?;
    match &params.interaction {
        Interaction::PureElectric(spec) => Ok(spec),
        Interaction::PureScalar(_) => Err(Error::UnsupportedKind {
            operation: "electric fixed point",
        }),
    }
}

/// Discrete eigenvalues below the continuum threshold Ẽ = 0 at energy E.
fn bound_levels(spec: &PotentialSpec, grid: &Grid1D, energy: f64) -> Result<Vec<f64>> {
    let m = discretize(spec, grid, Some(energy))?;
    Ok(tridiag::eigenvalues_in(&m.diagonal, &m.off_diagonal, f64::NEG_INFINITY, 0.0))
}

/// Damped iteration E ← (1−θ)E + θ·branch·√(Ẽ(E) + m²) on a radial grid.
///
/// Ẽ(E) is the lowest discrete level on the first pass and the level
/// nearest the previous one afterwards.
pub fn electric_kg_fixed_point(params: &KGParams, branch: Branch, e_init: f64, grid: &Grid1D, opts: &FixedPointOptions) -> Result<KGEigenResult> {
    let spec = coulomb_parts(params)?;
    let m = params.mass;
    if !(abs(e_init) < 10.0 * m) {
        return Err(Error::invalid("initial energy must satisfy |E| < 10 m"));
    }
    if grid.kind != GridKind::Radial {
        return Err(Error::invalid("electric fixed point needs a radial grid"));
    }
    let select = |levels: &[f64], prev: Option<f64>, e: f64| -> Result<f64> {
        let pick = match prev {
            None => levels.first().copied(),
            Some(p) => levels.iter().copied().min_by(|a, b| abs(a - p).total_cmp(&abs(b - p))),
        };
        pick.ok_or(Error::NoEigenvalue { energy: e })
    };

    let mut e = e_init;
    let mut prev = None;
    let mut trace = Vec::new();
    let mut converged = false;
    for _ in 0..opts.max_iterations {
        let s = select(&bound_levels(spec, grid, e)?, prev, e)?;
        trace.push((e, s));
        prev = Some(s);
        let target = kg_energy_from_schrodinger(s, m, branch)?;
        let next = (1.0 - opts.damping) * e + opts.damping * target;
        let step = abs(next - e);
        e = next;
        if step < opts.tol {
            converged = true;
            break;
        }
    }
    let s = select(&bound_levels(spec, grid, e)?, prev, e)?;
    let residual = abs(e - kg_energy_from_schrodinger(s, m, branch)?);
    Ok(KGEigenResult {
        energy: e,
        branch,
        schrodinger_value: s,
        iteration_trace: trace,
        converged,
        in_continuum: abs(e) >= m,
        fixed_point_residual: Some(residual),
        localization: None,
        caveat: None,
    })
}

/// The branch whose continuum ray the absence statement covers, which is
/// also the branch that binds: E > 0 for e < 0 and E < 0 for e > 0.
pub fn coulomb_branch(charge: f64) -> Branch {
    if charge > 0.0 {
        Branch::Negative
    } else {
        Branch::Positive
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContinuumSample {
    pub energy: f64,
    /// Ẽ at which the sample energy sits on the ray.
    pub schrodinger_energy: f64,
    pub eigenvalues_scanned: usize,
    /// Localized Ẽ found with V_eff frozen at `energy`.
    pub localized: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContinuumScan {
    pub branch: Branch,
    pub window: (f64, f64),
    pub samples: Vec<ContinuumSample>,
}

impl ContinuumScan {
    pub fn localized_count(&self) -> usize {
        self.samples.iter().map(|s| s.localized.len()).sum()
    }
}

/// Localized scan of Ẽ ∈ `window` for a Coulomb potential, with V_eff
/// frozen at `samples` energies spread along the continuum ray of `branch`.
pub fn coulomb_continuum_scan(
    params: &KGParams,
    branch: Branch,
    grid: &Grid1D,
    window: (f64, f64),
    samples: usize,
    opts: &ScanOptions,
) -> Result<ContinuumScan> {
    let spec = coulomb_parts(params)?;
    let m = params.mass;
    let (lo, hi) = window;
    if !(lo >= 0.0 && hi > lo) {
        return Err(Error::invalid("continuum window must lie in Ẽ ≥ 0"));
    }
    let n = samples.max(1);
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let s = lo + (hi - lo) * (j as f64 + 0.5) / n as f64;
        let energy = kg_energy_from_schrodinger(s, m, branch)?;
        let scan = embedded_eigenvalue_scan(spec, grid, window, Some(energy), opts)?;
        out.push(ContinuumSample {
            energy,
            schrodinger_energy: s,
            eigenvalues_scanned: scan.entries.len(),
            localized: scan.localized().map(|(_, e)| e.eigenvalue).collect(),
        });
    }
    Ok(ContinuumScan {
        branch,
        window,
        samples: out,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AbsenceBasis {
    /// E² − m² < limsup x·V′ for a decaying oscillating scalar potential.
    LimsupBound,
    /// Essential spectrum only.
    EssentialSpectrum,
    /// Simon's criterion applied to V_eff on one continuum ray.
    SimonCriterion,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ray {
    pub branch: Branch,
    /// The ray is [m, ∞) for the positive branch and (−∞, −m] otherwise.
    pub threshold: f64,
}

impl Ray {
    pub fn contains(&self, e: f64) -> bool {
        match self.branch {
            Branch::Positive => e >= self.threshold,
            Branch::Negative => e <= -self.threshold,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AbsenceRegion {
    /// (−∞, −m] ∪ [m, ∞), stored as m.
    pub essential_threshold: f64,
    /// No eigenvalues with |E| above this.
    pub forbidden_above: Option<f64>,
    /// A whole ray without embedded eigenvalues.
    pub forbidden_ray: Option<Ray>,
    pub theorem_basis: AbsenceBasis,
    pub verdict: Verdict,
    /// Numeric limsup of x·V′, or the Simon conditions behind the ray.
    pub numeric_limsup_xdv: Option<f64>,
    pub supporting_conditions: Vec<ConditionReport>,
}

impl AbsenceRegion {
    /// Whether a KG energy falls inside the forbidden set.
    pub fn forbids(&self, e: f64) -> bool {
        self.forbidden_above.is_some_and(|f| abs(e) > f) || self.forbidden_ray.is_some_and(|r| r.contains(e))
    }
}

/// Largest mismatch between analytic and numeric limsup x·V′ accepted.
pub const LIMSUP_CROSS_CHECK: f64 = 0.5;

/// Settings for the Simon checks behind a Coulomb absence ray.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimonSetup {
    pub r0: f64,
    pub grid: Grid1D,
}

/// Forbidden region for the vNW scalar family or a Coulomb electric potential.
///
/// The Coulomb ray is checked at the probe energy E = ±2m on the ray; the
/// region is only asserted when (c), (d) and (e) hold there.
pub fn absence_region(params: &KGParams, simon: Option<&SimonSetup>) -> Result<AbsenceRegion> {
    params.validate()?;
    let m = params.mass;
    match &params.interaction {
        Interaction::PureScalar(spec) => {
            if !matches!(spec.potential, Potential::VnwDerived { .. } | Potential::VnwPrinted) {
                return Err(Error::UnsupportedKind {
                    operation: "absence_region",
                });
            }
            let info = asymptotics(spec)?;
            let ok = abs(info.numeric_limsup_xdv - info.limsup_xdv) <= LIMSUP_CROSS_CHECK;
            Ok(AbsenceRegion {
                essential_threshold: m,
                forbidden_above: Some(sqrt(info.limsup_xdv + m * m)),
                forbidden_ray: None,
                theorem_basis: AbsenceBasis::LimsupBound,
                verdict: if ok { Verdict::Holds } else { Verdict::Inconclusive },
                numeric_limsup_xdv: Some(info.numeric_limsup_xdv),
                supporting_conditions: Vec::new(),
            })
        }
        Interaction::PureElectric(spec) => {
            let charge = params.coulomb_charge().unwrap_or(0.0);
            let ell = spec.ell().unwrap_or(0);
            let branch = coulomb_branch(charge);
            let default;
            let setup = match simon {
                Some(s) => s,
                None => {
                    default = SimonSetup {
                        r0: 1.0,
                        grid: Grid1D::radial(1e-3, 200.0, 0.0025)?,
                    };
                    &default
                }
            };
            let split = CoulombSplit {
                charge,
                energy: branch.sign() * 2.0 * m,
                ell,
            };
            let reports = check_simon_conditions(&split, setup.r0, &setup.grid)?;
            let needed = [conditions::ConditionId::SimonC, conditions::ConditionId::SimonD, conditions::ConditionId::SimonE];
            let ok = charge != 0.0
                && reports
                    .iter()
                    .filter(|r| needed.contains(&r.condition_id))
                    .all(|r| r.verdict == Verdict::Holds);
            Ok(AbsenceRegion {
                essential_threshold: m,
                forbidden_above: None,
                forbidden_ray: Some(Ray { branch, threshold: m }),
                theorem_basis: AbsenceBasis::SimonCriterion,
                verdict: if ok { Verdict::Holds } else { Verdict::Inconclusive },
                numeric_limsup_xdv: None,
                supporting_conditions: reports,
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditOptions {
    pub scan: ScanOptions,
    pub s_lambda: SLambdaOptions,
    pub lambda_grid: Option<Vec<f64>>,
    /// Scan window for the seminorm suprema.
    pub seminorm_window: (f64, f64),
    pub quadrature_tol: f64,
    pub fixed_point: FixedPointOptions,
    pub continuum_samples: usize,
    pub simon_r0: f64,
    /// Skip the S_λ scan (the most expensive condition check).
    pub skip_condition_i: bool,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions {
            scan: ScanOptions::default(),
            s_lambda: SLambdaOptions::default(),
            lambda_grid: None,
            seminorm_window: (-conditions::DEFAULT_SCAN_HALF_WIDTH, conditions::DEFAULT_SCAN_HALF_WIDTH),
            quadrature_tol: 1e-9,
            fixed_point: FixedPointOptions::default(),
            continuum_samples: 3,
            simon_r0: 1.0,
            skip_condition_i: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Consistency {
    pub ok: bool,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub grid: Grid1D,
    pub window: (f64, f64),
    pub options: AuditOptions,
    pub formula: String,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub params: KGParams,
    pub conditions: Vec<ConditionReport>,
    pub spectrum: Vec<KGEigenResult>,
    pub continuum: Option<ContinuumScan>,
    /// Shift of the bound-state energy when r_min is halved.
    pub r_min_sensitivity: Option<f64>,
    pub absence: Option<AbsenceRegion>,
    pub consistency: Consistency,
    pub provenance: Provenance,
}

/// Tolerance for the "±m is not an eigenvalue" report-level check.
pub const THRESHOLD_EXCLUSION: f64 = 1e-6;

/// Conditions, spectrum and absence region for one parameter set, with the
/// cross-check that no Localized energy lands in the forbidden region.
///
/// For scalar potentials `window` is the Ẽ window of the embedded scan; for
/// Coulomb potentials it is the Ẽ window of the continuum scan on the ray.
pub fn theorem_audit(params: &KGParams, grid: &Grid1D, window: (f64, f64), opts: &AuditOptions) -> Result<AuditReport> {
    params.validate().map_err(|e| e.at_stage("params"))?;
    let m = params.mass;
    let mut conditions = Vec::new();
    let mut spectrum = Vec::new();
    let mut continuum = None;
    let mut r_min_sensitivity = None;
    let absence = match absence_region(params, Some(&SimonSetup {
        r0: opts.simon_r0,
        grid: if grid.kind == GridKind::Radial { *grid } else { Grid1D::radial(1e-3, 200.0, 0.0025)? },
    })) {
        Ok(a) => Some(a),
        Err(Error::UnsupportedKind { .. }) => None,
        Err(e) => return Err(e.at_stage("absence")),
    };

    match &params.interaction {
        Interaction::PureScalar(spec) => {
            if !opts.skip_condition_i {
                conditions.push(
                    check_condition_i(spec, m, opts.lambda_grid.as_deref(), &opts.s_lambda).map_err(|e| e.at_stage("condition_i"))?,
                );
            }
            conditions.extend(
                check_seminorm_conditions(&SeminormInputs::scalar(spec.clone()), 1, opts.seminorm_window, opts.quadrature_tol)
                    .map_err(|e| e.at_stage("seminorms"))?,
            );
            spectrum = scalar_kg_spectrum(params, grid, window, &opts.scan).map_err(|e| e.at_stage("spectrum"))?;
        }
        Interaction::PureElectric(spec) => {
            let charge = params.coulomb_charge().unwrap_or(0.0);
            conditions.extend(check_charge_conditions(charge, 3));
            if let Some(a) = &absence {
                conditions.extend(a.supporting_conditions.iter().cloned());
            }
            let branch = coulomb_branch(charge);
            match electric_kg_fixed_point(params, branch, branch.sign() * m, grid, &opts.fixed_point) {
                Ok(r) => {
                    let mut half = *grid;
                    half.x_min *= 0.5;
                    let half = Grid1D::with_spacing(half.x_min, grid.x_max, grid.spacing(), GridKind::Radial)
                        .map_err(|e| e.at_stage("bound_state"))?;
                    let shifted = electric_kg_fixed_point(params, branch, r.energy, &half, &opts.fixed_point)
                        .map_err(|e| e.at_stage("bound_state"))?;
                    r_min_sensitivity = Some(shifted.energy - r.energy);
                    spectrum.push(r);
                }
                Err(Error::NoEigenvalue { .. }) => {}
                Err(e) => return Err(e.at_stage("bound_state")),
            }
            let _ = spec;
            continuum = Some(
                coulomb_continuum_scan(params, branch, grid, window, opts.continuum_samples, &opts.scan).map_err(|e| e.at_stage("continuum"))?,
            );
        }
    }

    let mut violations = Vec::new();
    if let Some(a) = &absence {
        for r in &spectrum {
            if a.forbids(r.energy) {
                violations.push(format!("localized energy {} lies in the forbidden region", r.energy));
            }
        }
        if let (Some(ray), Some(c)) = (a.forbidden_ray, &continuum) {
            for s in &c.samples {
                for &l in &s.localized {
                    let e = kg_energy_from_schrodinger(l, m, ray.branch).map_err(|e| e.at_stage("consistency"))?;
                    violations.push(format!("localized state Ẽ = {l} (E = {e}) on the forbidden ray at sample E = {}", s.energy));
                }
            }
        }
    }
    for r in &spectrum {
        if abs(abs(r.energy) - m) <= THRESHOLD_EXCLUSION {
            violations.push(format!("energy {} sits on the threshold ±m", r.energy));
        }
    }

    Ok(AuditReport {
        params: params.clone(),
        conditions,
        spectrum,
        continuum,
        r_min_sensitivity,
        absence,
        consistency: Consistency {
            ok: violations.is_empty(),
            violations,
        },
        provenance: Provenance {
            grid: *grid,
            window,
            options: opts.clone(),
            formula: params.spec().label().into(),
            version: crate::VERSION.into(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn energy_map_examples() {
        assert!((kg_energy_from_schrodinger(1.0, 1.0, Branch::Positive).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(kg_energy_from_schrodinger(0.0, 1.0, Branch::Negative).unwrap(), -1.0);
        assert_eq!(kg_energy_from_schrodinger(3.0, 1.0, Branch::Positive).unwrap(), 2.0);
        assert!(kg_energy_from_schrodinger(-2.0, 1.0, Branch::Positive).is_err());
    }

    #[test]
    fn params_validation() {
        assert!(KGParams::coulomb(-0.1, 0, 1.0).is_ok());
        assert!(KGParams::coulomb(-0.5, 0, 1.0).is_err());
        assert!(KGParams::scalar(PotentialSpec::vnw_derived(), 0.0).is_err());
        assert!(KGParams::new(1.0, Interaction::PureScalar(PotentialSpec::zero()), Dimension::ThreeRadial).is_err());
    }

    #[test]
    fn vnw_absence_bound() {
        let p = KGParams::scalar(PotentialSpec::vnw_derived(), 1.0).unwrap();
        let a = absence_region(&p, None).unwrap();
        assert!((a.forbidden_above.unwrap() - 17f64.sqrt()).abs() < 1e-12);
        assert_eq!(a.verdict, Verdict::Holds);
        assert!(a.forbids(4.2) && !a.forbids(4.1));
    }

    #[test]
    fn coulomb_rays() {
        let p = KGParams::coulomb(-0.1, 0, 1.0).unwrap();
        let setup = SimonSetup {
            r0: 1.0,
            grid: Grid1D::radial(1e-3, 200.0, 0.01).unwrap(),
        };
        let a = absence_region(&p, Some(&setup)).unwrap();
        assert_eq!(a.forbidden_ray.unwrap().branch, Branch::Positive);
        assert_eq!(a.verdict, Verdict::Holds);
        let p = KGParams::coulomb(0.1, 0, 1.0).unwrap();
        let a = absence_region(&p, Some(&setup)).unwrap();
        assert_eq!(a.forbidden_ray.unwrap().branch, Branch::Negative);
        assert!(a.forbids(-1.5) && !a.forbids(1.5));
    }

    #[test]
    fn free_radial_operator_has_no_level() {
        let p = KGParams::coulomb(0.0, 0, 1.0).unwrap();
        let grid = Grid1D::radial(1e-3, 50.0, 0.01).unwrap();
        let r = electric_kg_fixed_point(&p, Branch::Positive, 1.0, &grid, &FixedPointOptions::default());
        assert!(matches!(r, Err(Error::NoEigenvalue { .. })));
    }
}
