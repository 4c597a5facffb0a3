//! Numeric checks of the operator hypotheses: the S_λ criterion for
//! condition I, the N_{α,δ} seminorm memberships, the charge bounds for the
//! Coulomb case and Simon's conditions (a)–(e) for a radial split V = V₁ + V₂.

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::grid::Grid1D;
use crate::math::{abs, ceil, exp, ln, powf, sqrt};
use crate::potentials::{Potential, PotentialSpec};
use crate::quadrature::{integrate, integrate_n, QuadOptions};
use crate::search::golden_max;
use crate::{Error, Result};

/// Default half-width of the window over which suprema are scanned.
pub const DEFAULT_SCAN_HALF_WIDTH: f64 = 200.0;

/// The weight ω_α(x) in dimension `n`, at distance `r = |x|`.
pub fn omega_weight(r: f64, alpha: f64, n: u32) -> Result<f64> {
    let nf = n as f64;
    if alpha > nf {
        return Ok(1.0);
    }
    if !(r > 0.0) {
        return Err(Error::Domain {
            what: "omega_weight",
            value: r,
            expected: "|x| > 0 when alpha <= n",
        });
    }
    Ok(if alpha < nf { powf(r, alpha - nf) } else { 1.0 - ln(r) })
}

/// ∫_{|t|<δ} ω_α(t) dt in one dimension.
fn omega_mass_1d(alpha: f64, delta: f64) -> f64 {
    if alpha > 1.0 {
        2.0 * delta
    } else if alpha < 1.0 {
        2.0 * powf(delta, alpha) / alpha
    } else {
        2.0 * (2.0 * delta - delta * ln(delta))
    }
}

/// The one-dimensional resolvent kernel e^{−√λ|x|}/(2√λ).
pub fn green_kernel_1d(x: f64, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::Domain {
            what: "green_kernel_1d",
            value: lambda,
            expected: "lambda > 0",
        });
    }
    let k = sqrt(lambda);
    Ok(exp(-k * abs(x)) / (2.0 * k))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Transform {
    Identity,
    /// |V|^{1/2}
    SqrtAbs,
    /// V²
    Square,
    /// V⁻ = max(−V, 0)
    NegativePart,
}

impl Transform {
    fn apply(self, v: f64) -> f64 {
        match self {
            Transform::Identity => v,
            Transform::SqrtAbs => sqrt(abs(v)),
            Transform::Square => v * v,
            Transform::NegativePart => (-v).max(0.0),
        }
    }

    /// Bound on |transform(v)| given |v| ≤ env.
    fn envelope(self, env: f64) -> f64 {
        match self {
            Transform::Identity | Transform::NegativePart => env,
            Transform::SqrtAbs => sqrt(env),
            Transform::Square => env * env,
        }
    }
}

/// A function g(x) = transform(V(x)) on the real line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Target {
    pub spec: PotentialSpec,
    pub transform: Transform,
}

impl Target {
    pub fn new(spec: PotentialSpec, transform: Transform) -> Result<Self> {
        spec.validate()?;
        if spec.is_radial() || spec.is_energy_dependent() {
            return Err(Error::UnsupportedKind {
                operation: "one-dimensional seminorm and S_lambda checks",
            });
        }
        Ok(Target { spec, transform })
    }

    pub fn eval(&self, x: f64) -> f64 {
        // Full-line, energy-independent specs cannot fail to evaluate.
        self.transform.apply(self.spec.evaluate(x, None).unwrap_or(f64::NAN))
    }

    /// Bound on |g| over |x| ≥ r.
    pub fn envelope_beyond(&self, r: f64) -> f64 {
        self.transform
            .envelope(self.spec.envelope_beyond(r, None).unwrap_or(f64::INFINITY))
    }

    fn is_zero(&self) -> bool {
        matches!(self.spec.potential, Potential::Zero)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeminormQuery {
    pub alpha: f64,
    pub delta: f64,
    pub dimension: u32,
    pub target: Target,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeminormValue {
    pub value: f64,
    pub location: f64,
    pub quad_error: f64,
    /// Bound on the windowed integral for x outside the scan window.
    pub tail_bound: f64,
}

/// N_{α,δ}(g) = sup_x ∫_{|x−y|<δ} |g(y)|² ω_α(x−y) dy, with the sup taken
/// over `window` (dense sampling plus golden-section refinement).
pub fn seminorm_n(query: &SeminormQuery, window: (f64, f64), tol: f64) -> Result<SeminormValue> {
    let SeminormQuery {
        alpha,
        delta,
        dimension,
        ref target,
    } = *query;
    if dimension != 1 {
        return Err(Error::UnsupportedDimension(dimension));
    }
    if !(alpha > 0.0 && delta > 0.0) {
        return Err(Error::invalid("seminorm needs alpha > 0 and delta > 0"));
    }
    let (a, b) = window;
    if !(a.is_finite() && b.is_finite() && a <= b) {
        return Err(Error::invalid("scan window must be finite"));
    }
    let half = abs(a).max(abs(b));
    let tail_bound = omega_mass_1d(alpha, delta) * {
        let env = target.envelope_beyond((half - delta).max(0.0));
        env * env
    };
    if target.is_zero() {
        return Ok(SeminormValue {
            value: 0.0,
            location: 0.5 * (a + b),
            quad_error: 0.0,
            tail_bound: 0.0,
        });
    }
    let opts = QuadOptions::with_tol(tol);
    let bps = target.spec.breakpoints();
    // Integrate in t = y − x so the weight singularity sits at t = 0 with
    // full floating-point resolution.
    let windowed = |x: f64| -> Result<(f64, f64)> {
        let mut cuts: Vec<f64> = bps.iter().map(|p| p - x).collect();
        cuts.push(0.0);
        integrate(
            |t| {
                let g = target.eval(x + t);
                let w = if t != 0.0 { omega_weight(abs(t), alpha, 1).unwrap_or(0.0) } else { 0.0 };
                g * g * w
            },
            -delta,
            delta,
            &cuts,
            &opts,
        )
    };

    let step = (delta / 4.0).min(0.05);
    let n = (ceil((b - a) / step) as usize).max(1);
    let h = (b - a) / n as f64;
    let mut best = (a, f64::NEG_INFINITY);
    let mut quad_error: f64 = 0.0;
    for i in 0..=n {
        let x = if i == n { b } else { a + i as f64 * h };
        let (v, e) = windowed(x)?;
        quad_error = quad_error.max(e);
        if v > best.1 {
            best = (x, v);
        }
    }
    if h > 0.0 {
        let mut err = None;
        let refined = golden_max(
            |x| match windowed(x) {
                Ok((v, e)) => {
                    quad_error = quad_error.max(e);
                    v
                }
                Err(e) => {
                    err.get_or_insert(e);
                    f64::NEG_INFINITY
                }
            },
            (best.0 - h).max(a),
            (best.0 + h).min(b),
            60,
        );
        if let Some(e) = err {
            return Err(e);
        }
        if refined.1 > best.1 {
            best = refined;
        }
    }
    Ok(SeminormValue {
        value: best.1,
        location: best.0,
        quad_error,
        tail_bound,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SLambdaOptions {
    /// Suprema are taken over |x| ≤ half_width.
    pub half_width: f64,
    /// Spacing of the x-grid on which the convolution is tabulated.
    pub cell: f64,
    /// Absolute tolerance on the convolution values.
    pub tol: f64,
}

impl Default for SLambdaOptions {
    fn default() -> Self {
        SLambdaOptions {
            half_width: DEFAULT_SCAN_HALF_WIDTH,
            cell: 0.02,
            tol: 1e-9,
        }
    }
}

/// S_λ(g) = sup_x ∫ |g(y)| G_λ(x−y) dy with its error budget.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SLambdaValue {
    pub lambda: f64,
    /// Largest value found in the window (y truncated to |y| ≤ y_max).
    pub value: f64,
    pub location: f64,
    /// Summed quadrature error estimate on any single convolution value.
    pub quad_error: f64,
    /// Rigorous upper bound on the supremum over all x.
    pub upper: f64,
    /// upper − value.
    pub tail_bound: f64,
    /// Integration range |y| ≤ y_max.
    pub y_max: f64,
}

impl SLambdaValue {
    /// Lower bound on the true supremum: truncation only removes mass.
    pub fn lower(&self) -> f64 {
        self.value - self.quad_error
    }
}

/// The convolution of |g| with the 1D kernel, maximised over the window.
///
/// The convolution is tabulated on a uniform grid containing 0 by exact
/// exponential recurrences across cells; only the per-cell integrals use
/// quadrature. The best node is refined by golden-section search.
pub fn s_lambda(target: &Target, lambda: f64, opts: &SLambdaOptions) -> Result<SLambdaValue> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::Domain {
            what: "s_lambda",
            value: lambda,
            expected: "lambda > 0",
        });
    }
    if !(opts.half_width > 0.0 && opts.cell > 0.0 && opts.tol > 0.0) {
        return Err(Error::invalid("S_lambda options must be positive"));
    }
    let k = sqrt(lambda);
    let w = opts.half_width;
    let sup_g = target.envelope_beyond(0.0);
    let out_of_window = |sup_g: f64| -> f64 {
        let mut best = f64::INFINITY;
        for i in 0..=64 {
            let kk = w * i as f64 / 64.0;
            let b = sup_g * exp(-k * kk) / (2.0 * lambda) + target.envelope_beyond(w - kk) / lambda;
            best = best.min(b);
        }
        best
    };
    if target.is_zero() || sup_g == 0.0 {
        return Ok(SLambdaValue {
            lambda,
            value: 0.0,
            location: 0.0,
            quad_error: 0.0,
            upper: 0.0,
            tail_bound: 0.0,
            y_max: w,
        });
    }

    let d = opts.cell;
    let margin = if sup_g.is_finite() {
        (ln(sup_g / (lambda * opts.tol)) / k).clamp(0.0, w)
    } else {
        w
    };
    let half_cells = ceil((w + margin) / d) as usize;
    let y_max = half_cells as f64 * d;
    let node = |j: usize| (j as f64 - half_cells as f64) * d;
    let cells = 2 * half_cells;
    let decay = exp(-k * d);
    let bps = target.spec.breakpoints();
    let cell_tol = (opts.tol * 2.0 * k * d / (2.0 * y_max)).max(1e-14 * d * (1.0 + sup_g.min(1e6)));
    let qopts = QuadOptions::with_tol(cell_tol);

    // a[j] = ∫_cell g e^{−k(x_{j+1}−y)}, b[j] = ∫_cell g e^{−k(y−x_j)}.
    let mut a = Vec::with_capacity(cells);
    let mut b = Vec::with_capacity(cells);
    let mut err_sum = 0.0;
    for j in 0..cells {
        let (x0, x1) = (node(j), node(j + 1));
        let q = integrate_n(
            |y| {
                let g = abs(target.eval(y));
                [g * exp(-k * (x1 - y)), g * exp(-k * (y - x0))]
            },
            x0,
            x1,
            &bps,
            &qopts,
        )?;
        a.push(q.value[0]);
        b.push(q.value[1]);
        err_sum += q.error;
    }
    let mut left = Vec::with_capacity(cells + 1);
    left.push(0.0);
    for j in 0..cells {
        let prev = left[j];
        left.push(prev * decay + a[j]);
    }
    let mut right = alloc::vec![0.0; cells + 1];
    for j in (0..cells).rev() {
        right[j] = right[j + 1] * decay + b[j];
    }
    let norm = 1.0 / (2.0 * k);
    let quad_error = err_sum * norm;

    let margin_cells = half_cells - ceil(w / d - 1e-9) as usize;
    let (lo_j, hi_j) = (margin_cells, cells - margin_cells);
    let mut best = (0.0, f64::NEG_INFINITY, half_cells);
    for j in lo_j..=hi_j {
        let v = (left[j] + right[j]) * norm;
        if v > best.1 {
            best = (node(j), v, j);
        }
    }
    let grid_max = best.1;

    // Convolution at an arbitrary x inside cell c.
    let at = |x: f64| -> Result<(f64, f64)> {
        let c = (((x + y_max) / d) as usize).min(cells - 1);
        let (x0, x1) = (node(c), node(c + 1));
        let l = integrate(|y| abs(target.eval(y)) * exp(-k * (x - y)), x0, x, &bps, &qopts)?;
        let r = integrate(|y| abs(target.eval(y)) * exp(-k * (y - x)), x, x1, &bps, &qopts)?;
        let v = left[c] * exp(-k * (x - x0)) + l.0 + right[c + 1] * exp(-k * (x1 - x)) + r.0;
        Ok((v * norm, (l.1 + r.1) * norm))
    };
    let mut err = None;
    let mut extra_err: f64 = 0.0;
    let refined = golden_max(
        |x| match at(x) {
            Ok((v, e)) => {
                extra_err = extra_err.max(e);
                v
            }
            Err(e) => {
                err.get_or_insert(e);
                f64::NEG_INFINITY
            }
        },
        (best.0 - d).max(-w),
        (best.0 + d).min(w),
        60,
    );
    if let Some(e) = err {
        return Err(e);
    }
    let (location, value) = if refined.1 > best.1 { (refined.0, refined.1) } else { (best.0, best.1) };
    let quad_error = quad_error + extra_err;

    let truncated = target.envelope_beyond(y_max) * exp(-k * (y_max - w)) / lambda;
    let inside = exp(0.5 * k * d) * (grid_max + quad_error + truncated);
    let upper = inside.max(out_of_window(sup_g)).max(value + quad_error);
    Ok(SLambdaValue {
        lambda,
        value,
        location,
        quad_error,
        upper,
        tail_bound: upper - value,
        y_max,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConditionId {
    I,
    II,
    IV,
    #[serde(rename = "II'")]
    IIPrime,
    #[serde(rename = "III'")]
    IIIPrime,
    #[serde(rename = "IV'")]
    IVPrime,
    #[serde(rename = "V'")]
    VPrime,
    #[serde(rename = "VI'")]
    VIPrime,
    SimonA,
    SimonB,
    SimonC,
    SimonD,
    SimonE,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
    pub m: Option<f64>,
    pub e_charge: Option<f64>,
    pub energy: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LambdaSample {
    pub lambda: f64,
    pub value: f64,
    pub upper: f64,
    pub location: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    LambdaScan {
        /// λ with the smallest certified upper bound, when that bound is ≤ 1.
        lambda_star: Option<f64>,
        s_lambda_star: Option<f64>,
        upper_lambda_star: Option<f64>,
        /// Lower bound on S_λ at λ = m², which bounds every λ < m² from below.
        lower_bound_at_m2: f64,
        scan: Vec<LambdaSample>,
    },
    Seminorm {
        alpha: f64,
        delta: f64,
        value: f64,
        location: f64,
        /// (δ, N_{α,δ}) for a decreasing δ sequence.
        trend: Vec<(f64, f64)>,
    },
    Vacuous {
        reason: String,
    },
    Structural {
        reason: String,
    },
    Parameter {
        value: f64,
        bound: f64,
        strict: bool,
    },
    Pointwise {
        checked_points: usize,
        /// First grid point where the inequality fails: (r, lhs, rhs).
        first_violation: Option<(f64, f64, f64)>,
        /// Largest lhs − rhs over the checked points.
        worst_margin: f64,
    },
    SquareIntegrability {
        radius: f64,
        /// (ε, ∫_ε^{R₀} V² r² dr)
        table: Vec<(f64, f64)>,
        sup_outside: f64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub condition_id: ConditionId,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub parameters: Parameters,
    pub tail_bound: Option<f64>,
    pub window: Option<(f64, f64)>,
}

/// 64 log-spaced values in [min(10⁻⁴, m²/10), m²).
pub fn default_lambda_grid(m: f64) -> Vec<f64> {
    let hi = m * m;
    let lo = 1e-4f64.min(hi / 10.0);
    let ratio = hi / lo;
    (0..64).map(|i| lo * powf(ratio, i as f64 / 64.0)).collect()
}

/// Assemble the condition-I verdict from S_λ values on the scan grid and
/// the value at λ = m².
pub fn condition_i_from_scan(m: f64, scan: &[SLambdaValue], at_m2: &SLambdaValue, window: (f64, f64)) -> ConditionReport {
    let best = scan
        .iter()
        .filter(|s| s.lambda < m * m && s.upper <= 1.0)
        .min_by(|a, b| a.upper.total_cmp(&b.upper));
    let lower = at_m2.lower();
    let verdict = if best.is_some() {
        Verdict::Holds
    } else if lower > 1.0 {
        Verdict::Fails
    } else {
        Verdict::Inconclusive
    };
    let tail_bound = match best {
        Some(s) => s.tail_bound,
        None => at_m2.tail_bound,
    };
    ConditionReport {
        condition_id: ConditionId::I,
        verdict,
        witness: Some(Witness::LambdaScan {
            lambda_star: best.map(|s| s.lambda),
            s_lambda_star: best.map(|s| s.value),
            upper_lambda_star: best.map(|s| s.upper),
            lower_bound_at_m2: lower,
            scan: scan
                .iter()
                .map(|s| LambdaSample {
                    lambda: s.lambda,
                    value: s.value,
                    upper: s.upper,
                    location: s.location,
                })
                .collect(),
        }),
        parameters: Parameters {
            m: Some(m),
            ..Parameters::default()
        },
        tail_bound: Some(tail_bound),
        window: Some(window),
    }
}

/// Condition I for the scalar potential `q`: S_λ(q⁻) ≤ 1 for some λ < m².
///
/// Holds needs a λ on the grid whose certified upper bound is ≤ 1. Fails
/// is only issued when the lower bound at λ = m² exceeds 1, since S_λ is
/// non-increasing in λ.
pub fn check_condition_i(q: &PotentialSpec, m: f64, lambda_grid: Option<&[f64]>, opts: &SLambdaOptions) -> Result<ConditionReport> {
    if !(m > 0.0 && m.is_finite()) {
        return Err(Error::invalid("mass must be positive"));
    }
    let grid = match lambda_grid {
        Some(g) => g.to_vec(),
        None => default_lambda_grid(m),
    };
    if let Some(bad) = grid.iter().find(|&&l| !(l > 0.0 && l < m * m)) {
        return Err(Error::invalid(alloc::format!("lambda {bad} is outside (0, m^2)")));
    }
    let target = Target::new(q.clone(), Transform::NegativePart)?;
    let at_m2 = s_lambda(&target, m * m, opts)?;
    let scan = grid.iter().map(|&l| s_lambda(&target, l, opts)).collect::<Result<Vec<_>>>()?;
    Ok(condition_i_from_scan(m, &scan, &at_m2, (-opts.half_width, opts.half_width)))
}

/// Charge bounds in dimension n: |e| ≤ (n−2)/2 and |e| < (n−2)/(2√17).
pub fn check_charge_conditions(charge: f64, n: u32) -> Vec<ConditionReport> {
    let nf = n as f64;
    let params = Parameters {
        e_charge: Some(charge),
        ..Parameters::default()
    };
    let report = |id, bound: f64, strict: bool| {
        let e = abs(charge);
        let ok = if strict { e < bound } else { e <= bound };
        ConditionReport {
            condition_id: id,
            verdict: if ok { Verdict::Holds } else { Verdict::Fails },
            witness: Some(Witness::Parameter { value: e, bound, strict }),
            parameters: params,
            tail_bound: None,
            window: None,
        }
    };
    alloc::vec![
        report(ConditionId::II, (nf - 2.0) / 2.0, false),
        report(ConditionId::IV, (nf - 2.0) / (2.0 * sqrt(17.0)), true),
    ]
}

/// Potentials entering the primed conditions in one dimension.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeminormInputs {
    pub q: PotentialSpec,
    pub b0: Option<PotentialSpec>,
    /// Vector potential components b_i.
    pub b: Vec<PotentialSpec>,
    /// C = Σ ∂b_i/∂x_i.
    pub c: Option<PotentialSpec>,
}

impl SeminormInputs {
    pub fn scalar(q: PotentialSpec) -> Self {
        SeminormInputs {
            q,
            b0: None,
            b: Vec::new(),
            c: None,
        }
    }
}

pub const SEMINORM_DELTAS: [f64; 4] = [1.0, 0.5, 0.25, 0.125];

fn membership(id: ConditionId, targets: &[Target], alpha: f64, window: (f64, f64), tol: f64) -> Result<ConditionReport> {
    let mut worst: Option<(Vec<(f64, f64)>, SeminormValue)> = None;
    for t in targets {
        let mut trend = Vec::new();
        let mut first = None;
        for &delta in SEMINORM_DELTAS.iter() {
            let v = seminorm_n(
                &SeminormQuery {
                    alpha,
                    delta,
                    dimension: 1,
                    target: t.clone(),
                },
                window,
                tol,
            )?;
            trend.push((delta, v.value));
            first.get_or_insert(v);
        }
        let v = first.expect("at least one delta");
        if worst.as_ref().map_or(true, |(_, w)| v.value > w.value) {
            worst = Some((trend, v));
        }
    }
    let (trend, v) = worst.unwrap_or((
        SEMINORM_DELTAS.iter().map(|&d| (d, 0.0)).collect(),
        SeminormValue {
            value: 0.0,
            location: 0.0,
            quad_error: 0.0,
            tail_bound: 0.0,
        },
    ));
    let finite = v.value.is_finite() && v.tail_bound.is_finite();
    Ok(ConditionReport {
        condition_id: id,
        verdict: if finite { Verdict::Holds } else { Verdict::Inconclusive },
        witness: Some(Witness::Seminorm {
            alpha,
            delta: SEMINORM_DELTAS[0],
            value: v.value,
            location: v.location,
            trend,
        }),
        parameters: Parameters::default(),
        tail_bound: Some(v.tail_bound),
        window: Some(window),
    })
}

/// Conditions II′–VI′ in dimension n = 1: each membership is checked by
/// computing N_{α,1} over the window; the small-δ clauses only apply for
/// n ≥ 2 (or n ≥ 4) and are vacuous here.
pub fn check_seminorm_conditions(inputs: &SeminormInputs, n: u32, window: (f64, f64), tol: f64) -> Result<Vec<ConditionReport>> {
    if n != 1 {
        return Err(Error::UnsupportedDimension(n));
    }
    let all = core::iter::once(&inputs.q)
        .chain(inputs.b0.iter())
        .chain(inputs.b.iter())
        .chain(inputs.c.iter());
    for s in all {
        if s.is_radial() || s.is_energy_dependent() {
            return Err(Error::UnsupportedDimension(3));
        }
    }
    let t = |s: &PotentialSpec, tr| Target::new(s.clone(), tr);
    let b_id: Vec<Target> = inputs.b.iter().map(|s| t(s, Transform::Identity)).collect::<Result<_>>()?;
    let b_sq: Vec<Target> = inputs.b.iter().map(|s| t(s, Transform::Square)).collect::<Result<_>>()?;
    let c: Vec<Target> = inputs.c.iter().map(|s| t(s, Transform::Identity)).collect::<Result<_>>()?;
    let b0: Vec<Target> = inputs.b0.iter().map(|s| t(s, Transform::Identity)).collect::<Result<_>>()?;
    let q_sqrt = alloc::vec![t(&inputs.q, Transform::SqrtAbs)?];
    let mut q_and_b2 = alloc::vec![t(&inputs.q, Transform::Identity)?];
    q_and_b2.extend(b_sq);

    Ok(alloc::vec![
        membership(ConditionId::IIPrime, &b_id, 2.0, window, tol)?,
        membership(ConditionId::IIIPrime, &q_sqrt, 2.0, window, tol)?,
        membership(ConditionId::IVPrime, &c, 4.0, window, tol)?,
        membership(ConditionId::VPrime, &q_and_b2, 4.0, window, tol)?,
        membership(ConditionId::VIPrime, &b0, 2.0, window, tol)?,
    ])
}

/// A radial potential split V = V₁ + V₂ with V₂′ in closed form.
pub trait RadialSplit {
    fn v1(&self, r: f64) -> f64;
    fn v2(&self, r: f64) -> f64;
    fn dv2(&self, r: f64) -> f64;
    /// Whether V₁ and V₂ are C³ on r > 0.
    fn is_c3(&self) -> bool {
        true
    }
    fn parameters(&self) -> Parameters {
        Parameters::default()
    }
}

/// V₁ = −e²/r² + ℓ(ℓ+1)/r², V₂ = 2Ee/r.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoulombSplit {
    pub charge: f64,
    pub energy: f64,
    pub ell: u32,
}

impl RadialSplit for CoulombSplit {
    fn v1(&self, r: f64) -> f64 {
        let l = self.ell as f64;
        (l * (l + 1.0) - self.charge * self.charge) / (r * r)
    }

    fn v2(&self, r: f64) -> f64 {
        2.0 * self.energy * self.charge / r
    }

    fn dv2(&self, r: f64) -> f64 {
        -2.0 * self.energy * self.charge / (r * r)
    }

    fn parameters(&self) -> Parameters {
        Parameters {
            m: None,
            e_charge: Some(self.charge),
            energy: Some(self.energy),
        }
    }
}

fn pointwise<F: Fn(f64) -> (f64, f64)>(points: &[f64], f: F) -> (Verdict, Witness) {
    let mut first = None;
    let mut worst = f64::NEG_INFINITY;
    for &r in points {
        let (lhs, rhs) = f(r);
        let slack = 1e-14 * (abs(lhs) + abs(rhs));
        worst = worst.max(lhs - rhs);
        if first.is_none() && !(lhs <= rhs + slack) {
            first = Some((r, lhs, rhs));
        }
    }
    let verdict = if first.is_some() { Verdict::Fails } else { Verdict::Holds };
    (
        verdict,
        Witness::Pointwise {
            checked_points: points.len(),
            first_violation: first,
            worst_margin: worst,
        },
    )
}

/// Tolerance for max |V₁| on the outer decade in condition (c).
pub const SIMON_C_TOL: f64 = 1e-3;

/// Simon's conditions (a)–(e) for r > R₀ on the nodes of a radial grid.
///
/// (a) tracks ∫_ε^{R₀} V² r² dr as ε shrinks; steady growth means V is not
/// in L² + L^∞ near the origin. (b) is structural. (c) compares max |V₁| on
/// [R_max/10, R_max] with [`SIMON_C_TOL`]. (d) and (e) are pointwise.
pub fn check_simon_conditions<S: RadialSplit + ?Sized>(split: &S, r0: f64, grid: &Grid1D) -> Result<Vec<ConditionReport>> {
    let r_max = grid.x_max;
    if !(r0 > 0.0) {
        return Err(Error::invalid("R0 must be positive"));
    }
    if r_max <= r0 {
        return Err(Error::InsufficientDomain { r_max, r0 });
    }
    let params = split.parameters();
    let window = Some((r0, r_max));
    let points: Vec<f64> = (0..grid.n_points).map(|i| grid.point(i)).filter(|&r| r > r0).collect();
    let v = |r: f64| split.v1(r) + split.v2(r);

    // (a): substitute r = e^u so the integrand is smooth on a log scale.
    let opts = QuadOptions::with_tol(1e-10);
    let mut table = Vec::new();
    for k in 1..=8 {
        let eps = r0 * powf(10.0, -(k as f64));
        let (val, _) = integrate(
            |u| {
                let r = exp(u);
                let x = v(r);
                x * x * r * r * r
            },
            ln(eps),
            ln(r0),
            &[],
            &QuadOptions::with_tol(opts.abs_tol.max(1e-12 * table.last().map_or(1.0, |t: &(f64, f64)| t.1))),
        )?;
        table.push((eps, val));
    }
    let sup_outside = points.iter().map(|&r| abs(v(r))).fold(0.0, f64::max);
    let (prev, last) = (table[table.len() - 2].1, table[table.len() - 1].1);
    let verdict_a = if !sup_outside.is_finite() || (last >= 2.0 * prev && last > 0.0) {
        Verdict::Fails
    } else if abs(last - prev) <= 1e-3 * abs(last).max(1e-300) {
        Verdict::Holds
    } else {
        Verdict::Inconclusive
    };

    let (verdict_b, reason_b) = if split.is_c3() {
        (Verdict::Holds, "V1 and V2 are C^3 on r > 0 by construction")
    } else {
        (Verdict::Inconclusive, "smoothness of V1, V2 not declared")
    };

    let outer: Vec<f64> = points.iter().copied().filter(|&r| r >= r_max / 10.0).collect();
    let (r_c, v1_max) = outer
        .iter()
        .map(|&r| (r, abs(split.v1(r))))
        .fold((r_max, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
    let verdict_c = if v1_max <= SIMON_C_TOL { Verdict::Holds } else { Verdict::Inconclusive };

    let (verdict_d, witness_d) = pointwise(&points, |r| (split.v2(r), 0.0));
    // Strict inequality: zero is a violation.
    let verdict_d = if verdict_d == Verdict::Holds && points.iter().any(|&r| !(split.v2(r) < 0.0)) {
        Verdict::Fails
    } else {
        verdict_d
    };
    let witness_d = match witness_d {
        Witness::Pointwise {
            checked_points,
            first_violation: None,
            worst_margin,
        } if verdict_d == Verdict::Fails => Witness::Pointwise {
            checked_points,
            first_violation: points.iter().find(|&&r| !(split.v2(r) < 0.0)).map(|&r| (r, split.v2(r), 0.0)),
            worst_margin,
        },
        w => w,
    };
    let (verdict_e, witness_e) = pointwise(&points, |r| (-split.dv2(r), -split.v2(r) / r));

    let report = |id, verdict, witness, tail_bound| ConditionReport {
        condition_id: id,
        verdict,
        witness: Some(witness),
        parameters: params,
        tail_bound,
        window,
    };
    Ok(alloc::vec![
        report(
            ConditionId::SimonA,
            verdict_a,
            Witness::SquareIntegrability {
                radius: r0,
                table,
                sup_outside,
            },
            None,
        ),
        report(
            ConditionId::SimonB,
            verdict_b,
            Witness::Structural { reason: reason_b.into() },
            None,
        ),
        report(
            ConditionId::SimonC,
            verdict_c,
            Witness::Pointwise {
                checked_points: outer.len(),
                first_violation: (verdict_c != Verdict::Holds).then_some((r_c, v1_max, SIMON_C_TOL)),
                worst_margin: v1_max - SIMON_C_TOL,
            },
            Some(v1_max),
        ),
        report(ConditionId::SimonD, verdict_d, witness_d, None),
        report(ConditionId::SimonE, verdict_e, witness_e, None),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::exp;

    #[test]
    fn omega_cases() {
        assert_eq!(omega_weight(0.5, 2.0, 1).unwrap(), 1.0);
        assert!((omega_weight(exp(-1.0), 1.0, 1).unwrap() - 2.0).abs() < 1e-15);
        assert!((omega_weight(0.25, 1.0, 3).unwrap() - 16.0).abs() < 1e-12);
        assert!(omega_weight(0.0, 1.0, 1).is_err());
        assert_eq!(omega_weight(0.0, 2.0, 1).unwrap(), 1.0);
    }

    #[test]
    fn kernel_values() {
        assert_eq!(green_kernel_1d(0.0, 1.0).unwrap(), 0.5);
        assert!((green_kernel_1d(1.0, 4.0).unwrap() - 0.033833820809153176).abs() < 1e-15);
        assert!(green_kernel_1d(1.0, 0.0).is_err());
    }

    #[test]
    fn square_well_seminorm() {
        let t = Target::new(PotentialSpec::square_well(5.0, 1.0).unwrap(), Transform::SqrtAbs).unwrap();
        let q = SeminormQuery {
            alpha: 2.0,
            delta: 1.0,
            dimension: 1,
            target: t,
        };
        let v = seminorm_n(&q, (-10.0, 10.0), 1e-10).unwrap();
        assert!((v.value - 10.0).abs() < 1e-8, "{v:?}");
        assert_eq!(v.tail_bound, 0.0);
    }

    #[test]
    fn square_well_s_lambda_closed_form() {
        let t = Target::new(PotentialSpec::square_well(5.0, 1.0).unwrap(), Transform::NegativePart).unwrap();
        let opts = SLambdaOptions {
            half_width: 20.0,
            ..SLambdaOptions::default()
        };
        let s = s_lambda(&t, 1.0, &opts).unwrap();
        assert!((s.value - 3.1606027941427883).abs() < 1e-8, "{s:?}");
        assert!(s.location.abs() < 1e-4);
        assert!(s.upper >= s.value && s.upper < s.value * 1.02);
    }

    #[test]
    fn charge_predicates() {
        let r = check_charge_conditions(-0.1, 3);
        assert!(r.iter().all(|c| c.verdict == Verdict::Holds));
        let r = check_charge_conditions(-0.5, 3);
        assert_eq!(r[0].verdict, Verdict::Holds);
        assert_eq!(r[1].verdict, Verdict::Fails);
    }

    #[test]
    fn coulomb_simon_split() {
        let grid = Grid1D::radial(1e-3, 200.0, 0.01).unwrap();
        let attractive = CoulombSplit {
            charge: -0.1,
            energy: 1.0,
            ell: 0,
        };
        let r = check_simon_conditions(&attractive, 1.0, &grid).unwrap();
        let verdicts: Vec<Verdict> = r.iter().map(|c| c.verdict).collect();
        assert_eq!(
            verdicts,
            [Verdict::Fails, Verdict::Holds, Verdict::Holds, Verdict::Holds, Verdict::Holds]
        );
        let flipped = CoulombSplit { energy: -1.0, ..attractive };
        let r = check_simon_conditions(&flipped, 1.0, &grid).unwrap();
        assert_eq!(r[3].verdict, Verdict::Fails);
        assert!(matches!(
            r[3].witness,
            Some(Witness::Pointwise {
                first_violation: Some(_),
                ..
            })
        ));
        let short = Grid1D::radial(1e-3, 0.5, 0.01).unwrap();
        assert!(matches!(
            check_simon_conditions(&attractive, 1.0, &short),
            Err(Error::InsufficientDomain { .. })
        ));
    }
}
