//! The four subcommands, as library functions returning typed reports.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use kgspec::conditions::{check_seminorm_conditions, ConditionReport, SLambdaOptions, SeminormInputs, Verdict};
use kgspec::kgmap::{absence_region, scalar_kg_from_scan, theorem_audit, AbsenceRegion, AuditOptions, AuditReport, KGEigenResult, KGParams};
use kgspec::potentials::{asymptotics, formula_deviation, vnw_eigenfunction, AsymptoticInfo};
use kgspec::spectral::{embedded_eigenvalue_scan, ScanEntry, ScanOptions};
use kgspec::tridiag::InverseIterationOptions;
use kgspec::{Grid1D, PotentialSpec};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Outcome, Result};
use crate::io::{load_samples_csv, output_path, write_csv_rows, write_json, write_json_lines, EigenvectorRow};
use crate::sweep::{parallel_condition_i, run_indexed};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Formula {
    Derived,
    Printed,
}

impl Formula {
    pub fn spec(self) -> PotentialSpec {
        match self {
            Formula::Derived => PotentialSpec::vnw_derived(),
            Formula::Printed => PotentialSpec::vnw_printed(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    /// JSON report only
    Json,
    /// JSON report plus CSV tables
    Csv,
}

/// Settings shared by every subcommand.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Common {
    #[serde(skip)]
    pub out_dir: PathBuf,
    pub format: OutputFormat,
    pub seed: u64,
    #[serde(skip)]
    pub workers: usize,
}

impl Default for Common {
    fn default() -> Self {
        Common {
            out_dir: PathBuf::from("."),
            format: OutputFormat::Json,
            seed: 0,
            workers: 1,
        }
    }
}

impl Common {
    fn scan_options(&self) -> ScanOptions {
        ScanOptions {
            solve: InverseIterationOptions {
                seed: self.seed,
                ..Default::default()
            },
            ..Default::default()
        }
    }
}

/// What a subcommand produced.
#[derive(Clone, Debug)]
pub struct CommandOutput {
    pub outcome: Outcome,
    pub files: Vec<PathBuf>,
    pub summary: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunProvenance {
    pub command: String,
    pub version: String,
    pub potential: PotentialSpec,
    pub grid: Option<Grid1D>,
    pub scan: Option<ScanOptions>,
}

fn provenance(command: &str, potential: PotentialSpec, grid: Option<Grid1D>, scan: Option<ScanOptions>) -> RunProvenance {
    RunProvenance {
        command: command.into(),
        version: env!("CARGO_PKG_VERSION").into(),
        potential,
        grid,
        scan,
    }
}

fn check_window(window: (f64, f64)) -> Result<()> {
    if window.0.is_finite() && window.1.is_finite() && window.1 > window.0 {
        Ok(())
    } else {
        Err(CliError::Config(format!("window ({}, {}) must be finite with lo < hi", window.0, window.1)))
    }
}

fn check_tol(name: &str, tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(CliError::Config(format!("{name} must be positive, got {tol}")))
    }
}

// ---------------------------------------------------------------- verify-vnw

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyVnwConfig {
    pub mass: f64,
    pub x_min: f64,
    pub x_max: f64,
    pub h: f64,
    pub window: (f64, f64),
    pub tol: f64,
    pub formula: Formula,
    pub common: Common,
}

impl Default for VerifyVnwConfig {
    fn default() -> Self {
        VerifyVnwConfig {
            mass: 1.0,
            x_min: -80.0,
            x_max: 80.0,
            h: 0.005,
            window: (0.5, 1.5),
            tol: 1e-3,
            formula: Formula::Derived,
            common: Common::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalizedState {
    pub schrodinger_value: f64,
    pub shift: f64,
    pub energies: [f64; 2],
    pub mass_fraction_inner: f64,
    pub comparison_eigenvalue: Option<f64>,
    /// |⟨ψ_numeric, ψ_analytic⟩| / (‖ψ_numeric‖ ‖ψ_analytic‖).
    pub overlap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyVnwReport {
    pub config: VerifyVnwConfig,
    pub passed: bool,
    pub diagnostics: Vec<String>,
    pub expected_localized: usize,
    pub localized: Vec<LocalizedState>,
    pub spectrum: Vec<KGEigenResult>,
    pub entries: Vec<ScanEntry>,
    pub absence: AbsenceRegion,
    pub asymptotics: AsymptoticInfo,
    /// Largest |printed − derived| on [−80, 80] and where it occurs.
    pub formula_deviation: (f64, f64),
    pub provenance: RunProvenance,
}

/// Embedded-state check for the vNW potential, with the localized
/// eigenvector on the grid for plotting.
pub fn run_verify_vnw(cfg: &VerifyVnwConfig) -> Result<(VerifyVnwReport, Vec<EigenvectorRow>)> {
    check_window(cfg.window)?;
    check_tol("tol", cfg.tol)?;
    let spec = cfg.formula.spec();
    let params = KGParams::scalar(spec.clone(), cfg.mass)?;
    let grid = Grid1D::line(cfg.x_min, cfg.x_max, cfg.h)?;
    let opts = cfg.common.scan_options();
    let scan = embedded_eigenvalue_scan(&spec, &grid, cfg.window, None, &opts).map_err(|e| e.at_stage("scan"))?;
    let spectrum = scalar_kg_from_scan(cfg.mass, &scan)?;
    let absence = absence_region(&params, None)?;
    let nodes = scan.spectrum.nodes();
    let h = grid.spacing();

    let mut localized = Vec::new();
    let mut rows = Vec::new();
    for (k, entry) in scan.localized() {
        let psi = scan.spectrum.eigenvectors[k]
            .as_ref()
            .ok_or(kgspec::Error::MissingEigenvector(entry.eigenvalue))?;
        let exact: Vec<f64> = nodes.iter().map(|&x| vnw_eigenfunction(x)).collect();
        let dot: f64 = psi.iter().zip(&exact).map(|(a, b)| a * b).sum();
        let n1: f64 = psi.iter().map(|a| a * a).sum();
        let n2: f64 = exact.iter().map(|a| a * a).sum();
        let overlap = dot.abs() / (n1 * n2).sqrt();
        if localized.is_empty() {
            let scale = dot.signum() / (n2 * h).sqrt();
            for (i, &x) in nodes.iter().enumerate() {
                rows.push(EigenvectorRow {
                    x,
                    psi_numeric: psi[i],
                    psi_analytic: exact[i] * scale,
                    v: spec.evaluate(x, None)?,
                });
            }
        }
        localized.push(LocalizedState {
            schrodinger_value: entry.eigenvalue,
            shift: (entry.eigenvalue - 1.0).abs(),
            energies: [
                (entry.eigenvalue + cfg.mass * cfg.mass).sqrt(),
                -(entry.eigenvalue + cfg.mass * cfg.mass).sqrt(),
            ],
            mass_fraction_inner: entry.localization.mass_fraction_inner,
            comparison_eigenvalue: entry.comparison_eigenvalue,
            overlap,
        });
    }

    let expected = usize::from(cfg.window.0 <= 1.0 && 1.0 <= cfg.window.1);
    let mut diagnostics = Vec::new();
    if localized.len() != expected {
        diagnostics.push(format!(
            "expected {expected} localized state(s) in [{}, {}], found {}",
            cfg.window.0,
            cfg.window.1,
            localized.len()
        ));
    }
    for s in &localized {
        if s.shift >= cfg.tol {
            diagnostics.push(format!(
                "localized value {} is {:e} from 1, above tol {:e}",
                s.schrodinger_value, s.shift, cfg.tol
            ));
        }
    }
    if expected == 1 && localized.is_empty() {
        let nearest = scan
            .entries
            .iter()
            .min_by(|a, b| (a.eigenvalue - 1.0).abs().total_cmp(&(b.eigenvalue - 1.0).abs()));
        if let Some(e) = nearest {
            diagnostics.push(format!(
                "nearest eigenvalue {} has inner mass fraction {:.6} (comparison {:?})",
                e.eigenvalue, e.localization.mass_fraction_inner, e.comparison_eigenvalue
            ));
        }
    }
    for e in &spectrum {
        if absence.forbids(e.energy) {
            diagnostics.push(format!("energy {} lies above the absence bound", e.energy));
        }
    }

    let report = VerifyVnwReport {
        config: cfg.clone(),
        passed: diagnostics.is_empty(),
        diagnostics,
        expected_localized: expected,
        localized,
        spectrum,
        entries: scan.entries,
        absence,
        asymptotics: asymptotics(&spec)?,
        formula_deviation: formula_deviation(-80.0, 80.0, 160_001),
        provenance: provenance("verify-vnw", spec, Some(grid), Some(opts)),
    };
    Ok((report, rows))
}

pub fn cmd_verify_vnw(cfg: &VerifyVnwConfig) -> Result<CommandOutput> {
    let (report, rows) = run_verify_vnw(cfg)?;
    let dir = &cfg.common.out_dir;
    let mut files = vec![output_path(dir, "verify_vnw.json")?];
    write_json(&files[0], &report)?;
    if !rows.is_empty() {
        let p = output_path(dir, "verify_vnw_eigenvector.csv")?;
        write_csv_rows(&p, &rows)?;
        files.push(p);
    }
    if cfg.common.format == OutputFormat::Csv {
        let p = output_path(dir, "verify_vnw_spectrum.csv")?;
        let table: Vec<SpectrumRow> = report.entries.iter().map(SpectrumRow::from).collect();
        write_csv_rows(&p, &table)?;
        files.push(p);
    }
    let mut summary = format!(
        "[verify-vnw] {} localized state(s) in [{}, {}]",
        report.localized.len(),
        cfg.window.0,
        cfg.window.1
    );
    for s in &report.localized {
        summary.push_str(&format!(
            "\n[verify-vnw] E~ = {:.8} (shift {:.2e}), E = ±{:.8}, overlap {:.6}",
            s.schrodinger_value, s.shift, s.energies[0], s.overlap
        ));
    }
    for d in &report.diagnostics {
        summary.push_str(&format!("\n[verify-vnw] miss: {d}"));
    }
    Ok(CommandOutput {
        outcome: Outcome::from_pass(report.passed),
        files,
        summary,
    })
}

#[derive(Debug, Serialize)]
struct SpectrumRow {
    eigenvalue: f64,
    tag: String,
    mass_fraction_inner: f64,
    participation_length: f64,
    comparison_eigenvalue: Option<f64>,
    comparison_mass_fraction: Option<f64>,
}

impl From<&ScanEntry> for SpectrumRow {
    fn from(e: &ScanEntry) -> Self {
        SpectrumRow {
            eigenvalue: e.eigenvalue,
            tag: format!("{:?}", e.tag),
            mass_fraction_inner: e.localization.mass_fraction_inner,
            participation_length: e.localization.participation_length,
            comparison_eigenvalue: e.comparison_eigenvalue,
            comparison_mass_fraction: e.comparison_mass_fraction,
        }
    }
}

// ---------------------------------------------------------- check-conditions

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum PotentialChoice {
    Vnw,
    VnwPrinted,
    SquareWell,
    Zero,
    Custom,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckConditionsConfig {
    pub potential: PotentialChoice,
    pub depth: f64,
    pub half_width: f64,
    pub samples: Option<PathBuf>,
    pub mass: f64,
    /// Absolute quadrature tolerance.
    pub tol: f64,
    /// Scan window for the seminorm suprema and the S_λ supremum.
    pub window: (f64, f64),
    pub common: Common,
}

impl Default for CheckConditionsConfig {
    fn default() -> Self {
        CheckConditionsConfig {
            potential: PotentialChoice::Vnw,
            depth: 5.0,
            half_width: 1.0,
            samples: None,
            mass: 1.0,
            tol: 1e-9,
            window: (-200.0, 200.0),
            common: Common::default(),
        }
    }
}

impl CheckConditionsConfig {
    pub fn spec(&self) -> Result<PotentialSpec> {
        Ok(match self.potential {
            PotentialChoice::Vnw => PotentialSpec::vnw_derived(),
            PotentialChoice::VnwPrinted => PotentialSpec::vnw_printed(),
            PotentialChoice::SquareWell => PotentialSpec::square_well(self.depth, self.half_width)?,
            PotentialChoice::Zero => PotentialSpec::zero(),
            PotentialChoice::Custom => {
                let path = self
                    .samples
                    .as_deref()
                    .ok_or_else(|| CliError::Config("--potential custom needs --samples <file>".into()))?;
                PotentialSpec::custom(load_samples_csv(path)?)
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionsReport {
    pub config: CheckConditionsConfig,
    pub passed: bool,
    pub conditions: Vec<ConditionReport>,
    pub s_lambda: SLambdaOptions,
    pub provenance: RunProvenance,
}

pub fn run_check_conditions(cfg: &CheckConditionsConfig) -> Result<ConditionsReport> {
    check_window(cfg.window)?;
    check_tol("tol", cfg.tol)?;
    let spec = cfg.spec()?;
    let s_opts = SLambdaOptions {
        half_width: cfg.window.0.abs().max(cfg.window.1.abs()),
        tol: cfg.tol,
        ..SLambdaOptions::default()
    };
    let mut conditions = vec![parallel_condition_i(&spec, cfg.mass, None, &s_opts, cfg.common.workers)
        .map_err(|e| e.at_stage("condition_i"))?];
    conditions.extend(
        check_seminorm_conditions(&SeminormInputs::scalar(spec.clone()), 1, cfg.window, cfg.tol)
            .map_err(|e| e.at_stage("seminorms"))?,
    );
    let mut samples_free = cfg.clone();
    samples_free.samples = cfg.samples.as_deref().map(file_name);
    Ok(ConditionsReport {
        config: samples_free,
        passed: conditions.iter().all(|c| c.verdict != Verdict::Fails),
        conditions,
        s_lambda: s_opts,
        provenance: provenance("check-conditions", spec, None, None),
    })
}

fn file_name(p: &Path) -> PathBuf {
    p.file_name().map(PathBuf::from).unwrap_or_else(|| p.to_path_buf())
}

#[derive(Debug, Serialize)]
struct ConditionRow {
    condition: String,
    verdict: String,
    tail_bound: Option<f64>,
}

pub fn cmd_check_conditions(cfg: &CheckConditionsConfig) -> Result<CommandOutput> {
    let report = run_check_conditions(cfg)?;
    let dir = &cfg.common.out_dir;
    let mut files = vec![output_path(dir, "conditions.json")?];
    write_json(&files[0], &report)?;
    let rows: Vec<ConditionRow> = report
        .conditions
        .iter()
        .map(|c| ConditionRow {
            condition: condition_name(c),
            verdict: format!("{:?}", c.verdict),
            tail_bound: c.tail_bound,
        })
        .collect();
    if cfg.common.format == OutputFormat::Csv {
        let p = output_path(dir, "conditions.csv")?;
        write_csv_rows(&p, &rows)?;
        files.push(p);
    }
    let summary = rows
        .iter()
        .map(|r| format!("[check-conditions] {:<5} {}", r.condition, r.verdict))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(CommandOutput {
        outcome: Outcome::from_pass(report.passed),
        files,
        summary,
    })
}

fn condition_name(c: &ConditionReport) -> String {
    serde_json::to_value(c.condition_id)
        .ok()
        .and_then(|v| v.as_str().map(String::from))
        .unwrap_or_else(|| format!("{:?}", c.condition_id))
}

// ------------------------------------------------------------------- coulomb

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoulombConfig {
    pub charge: f64,
    pub ell: u32,
    pub mass: f64,
    pub r_min: f64,
    pub r_max: f64,
    pub h: f64,
    /// Ẽ window of the continuum scan.
    pub window: (f64, f64),
    pub continuum_samples: usize,
    pub r0: f64,
    pub common: Common,
}

impl Default for CoulombConfig {
    fn default() -> Self {
        CoulombConfig {
            charge: -0.1,
            ell: 0,
            mass: 1.0,
            r_min: 1e-3,
            r_max: 200.0,
            h: 0.0025,
            window: (0.0, 20.0),
            continuum_samples: 3,
            r0: 1.0,
            common: Common::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoulombReport {
    pub config: CoulombConfig,
    pub passed: bool,
    pub diagnostics: Vec<String>,
    pub audit: AuditReport,
}

/// Pass rule shared by `coulomb` and the Coulomb points of `scan`.
fn coulomb_diagnostics(audit: &AuditReport) -> Vec<String> {
    let m = audit.params.mass;
    let mut out = Vec::new();
    for r in &audit.spectrum {
        if r.energy.abs() >= m {
            out.push(format!("bound state E = {} has |E| >= m", r.energy));
        }
    }
    if let Some(c) = &audit.continuum {
        if c.localized_count() > 0 {
            out.push(format!("{} localized state(s) on the forbidden ray", c.localized_count()));
        }
    }
    out.extend(audit.consistency.violations.iter().cloned());
    out
}

pub fn run_coulomb(cfg: &CoulombConfig) -> Result<CoulombReport> {
    check_window(cfg.window)?;
    let params = KGParams::coulomb(cfg.charge, cfg.ell, cfg.mass)?;
    let grid = Grid1D::radial(cfg.r_min, cfg.r_max, cfg.h)?;
    let opts = AuditOptions {
        scan: cfg.common.scan_options(),
        continuum_samples: cfg.continuum_samples,
        simon_r0: cfg.r0,
        ..AuditOptions::default()
    };
    let audit = theorem_audit(&params, &grid, cfg.window, &opts)?;
    let diagnostics = coulomb_diagnostics(&audit);
    Ok(CoulombReport {
        config: cfg.clone(),
        passed: diagnostics.is_empty(),
        diagnostics,
        audit,
    })
}

#[derive(Debug, Serialize)]
struct ContinuumRow {
    energy: f64,
    schrodinger_energy: f64,
    eigenvalues_scanned: usize,
    localized: usize,
}

pub fn cmd_coulomb(cfg: &CoulombConfig) -> Result<CommandOutput> {
    let report = run_coulomb(cfg)?;
    let dir = &cfg.common.out_dir;
    let mut files = vec![output_path(dir, "coulomb.json")?];
    write_json(&files[0], &report)?;
    if cfg.common.format == OutputFormat::Csv {
        if let Some(c) = &report.audit.continuum {
            let p = output_path(dir, "coulomb_continuum.csv")?;
            let rows: Vec<ContinuumRow> = c
                .samples
                .iter()
                .map(|s| ContinuumRow {
                    energy: s.energy,
                    schrodinger_energy: s.schrodinger_energy,
                    eigenvalues_scanned: s.eigenvalues_scanned,
                    localized: s.localized.len(),
                })
                .collect();
            write_csv_rows(&p, &rows)?;
            files.push(p);
        }
    }
    let mut lines = Vec::new();
    for r in &report.audit.spectrum {
        lines.push(format!(
            "[coulomb] bound state E = {:.9} ({} iterations, residual {:.1e})",
            r.energy,
            r.iteration_trace.len(),
            r.fixed_point_residual.unwrap_or(f64::NAN)
        ));
    }
    if report.audit.spectrum.is_empty() {
        lines.push("[coulomb] no bound state".into());
    }
    if let (Some(a), Some(c)) = (&report.audit.absence, &report.audit.continuum) {
        if let Some(ray) = a.forbidden_ray {
            lines.push(format!(
                "[coulomb] forbidden ray {:?} beyond {}: {} localized state(s) over {} samples",
                ray.branch,
                ray.threshold,
                c.localized_count(),
                c.samples.len()
            ));
        }
    }
    for d in &report.diagnostics {
        lines.push(format!("[coulomb] miss: {d}"));
    }
    Ok(CommandOutput {
        outcome: Outcome::from_pass(report.passed),
        files,
        summary: lines.join("\n"),
    })
}

// ---------------------------------------------------------------------- scan

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SweepKind {
    Vnw,
    Coulomb,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub kind: SweepKind,
    pub masses: Vec<f64>,
    /// Ignored for vNW sweeps.
    pub charges: Vec<f64>,
    pub hs: Vec<f64>,
    pub ell: u32,
    pub x_min: f64,
    pub x_max: f64,
    pub window: (f64, f64),
    pub formula: Formula,
    pub skip_condition_i: bool,
    pub continuum_samples: usize,
    pub common: Common,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            kind: SweepKind::Vnw,
            masses: vec![1.0],
            charges: vec![-0.1],
            hs: vec![0.005],
            ell: 0,
            x_min: -80.0,
            x_max: 80.0,
            window: (0.5, 1.5),
            formula: Formula::Derived,
            skip_condition_i: false,
            continuum_samples: 3,
            common: Common::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub mass: f64,
    pub charge: Option<f64>,
    pub h: f64,
}

impl ScanConfig {
    pub fn points(&self) -> Vec<SweepPoint> {
        let charges: Vec<Option<f64>> = match self.kind {
            SweepKind::Vnw => vec![None],
            SweepKind::Coulomb => self.charges.iter().map(|&c| Some(c)).collect(),
        };
        let mut out = Vec::new();
        for &mass in &self.masses {
            for &charge in &charges {
                for &h in &self.hs {
                    out.push(SweepPoint { mass, charge, h });
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub index: usize,
    pub point: SweepPoint,
    pub ok: bool,
    pub error: Option<String>,
    pub consistent: Option<bool>,
    pub forbidden_above: Option<f64>,
    /// Localized Ẽ (vNW) or bound-state E (Coulomb).
    pub levels: Vec<f64>,
    pub audit: Option<AuditReport>,
}

fn run_point(cfg: &ScanConfig, index: usize, point: &SweepPoint) -> SweepRecord {
    let result = (|| -> Result<(AuditReport, Vec<String>)> {
        let opts = AuditOptions {
            scan: cfg.common.scan_options(),
            continuum_samples: cfg.continuum_samples,
            skip_condition_i: cfg.skip_condition_i,
            ..AuditOptions::default()
        };
        match point.charge {
            None => {
                let params = KGParams::scalar(cfg.formula.spec(), point.mass)?;
                let grid = Grid1D::line(cfg.x_min, cfg.x_max, point.h)?;
                let audit = theorem_audit(&params, &grid, cfg.window, &opts)?;
                let diag = audit.consistency.violations.clone();
                Ok((audit, diag))
            }
            Some(charge) => {
                let params = KGParams::coulomb(charge, cfg.ell, point.mass)?;
                let grid = Grid1D::radial(cfg.x_min, cfg.x_max, point.h)?;
                let audit = theorem_audit(&params, &grid, cfg.window, &opts)?;
                let diag = coulomb_diagnostics(&audit);
                Ok((audit, diag))
            }
        }
    })();
    match result {
        Ok((audit, diag)) => SweepRecord {
            index,
            point: *point,
            ok: true,
            error: None,
            consistent: Some(diag.is_empty()),
            forbidden_above: audit.absence.as_ref().and_then(|a| a.forbidden_above),
            levels: match point.charge {
                None => {
                    let mut v: Vec<f64> = audit.spectrum.iter().map(|r| r.schrodinger_value).collect();
                    v.dedup();
                    v
                }
                Some(_) => audit.spectrum.iter().map(|r| r.energy).collect(),
            },
            audit: Some(audit),
        },
        Err(e) => SweepRecord {
            index,
            point: *point,
            ok: false,
            error: Some(e.to_string()),
            consistent: None,
            forbidden_above: None,
            levels: Vec::new(),
            audit: None,
        },
    }
}

pub fn run_scan(cfg: &ScanConfig) -> Result<Vec<SweepRecord>> {
    check_window(cfg.window)?;
    let points = cfg.points();
    if points.is_empty() {
        return Err(CliError::Config("the sweep has no points".into()));
    }
    Ok(run_indexed(&points, cfg.common.workers, |i, p| run_point(cfg, i, p)))
}

/// Pass if at least one point ran and none is inconsistent; error if none ran.
pub fn scan_outcome(records: &[SweepRecord]) -> Result<Outcome> {
    if !records.iter().any(|r| r.ok) {
        let first = records.iter().find_map(|r| r.error.clone()).unwrap_or_default();
        return Err(CliError::Config(format!("every sweep point failed; first error: {first}")));
    }
    Ok(Outcome::from_pass(records.iter().all(|r| r.consistent != Some(false))))
}

pub fn cmd_scan(cfg: &ScanConfig) -> Result<CommandOutput> {
    let records = run_scan(cfg)?;
    let dir = &cfg.common.out_dir;
    let path = output_path(dir, "scan.jsonl")?;
    write_json_lines(&path, &records)?;
    let outcome = scan_outcome(&records)?;
    let summary = records
        .iter()
        .map(|r| match &r.error {
            None => format!(
                "[scan] #{} m={} h={}{}: levels {:?}, consistent {}",
                r.index,
                r.point.mass,
                r.point.h,
                r.point.charge.map(|c| format!(" e={c}")).unwrap_or_default(),
                r.levels,
                r.consistent.unwrap_or(false)
            ),
            Some(e) => format!("[scan] #{} failed: {e}", r.index),
        })
        .collect::<Vec<_>>()
        .join("\n");
    Ok(CommandOutput {
        outcome,
        files: vec![path],
        summary,
    })
}
