//! Independent reference values shared by the integration tests.

#![allow(dead_code)]

use std::f64::consts::PI;

fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        let fm = f(mid);
        if (fm < 0.0) == (fa < 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

/// Bound-state energies Ẽ = −κ² of −ψ″ − V₀·1_{|x|≤a} ψ = Ẽψ, ascending.
///
/// With q = √(V₀ − κ²), even states solve q tan(qa) = κ and odd states
/// −q cot(qa) = κ. Each branch of tan/cot holds at most one root.
pub fn square_well_levels(v0: f64, a: f64) -> Vec<f64> {
    let qmax = v0.sqrt();
    let kappa = |q: f64| (v0 - q * q).max(0.0).sqrt();
    let even = |q: f64| q * (q * a).tan() - kappa(q);
    let odd = |q: f64| -q / (q * a).tan() - kappa(q);
    let mut out = Vec::new();
    let quarter = PI / (2.0 * a);
    let mut n = 0usize;
    loop {
        let lo = n as f64 * quarter;
        if lo >= qmax {
            break;
        }
        let hi = ((n + 1) as f64 * quarter).min(qmax);
        let f: &dyn Fn(f64) -> f64 = if n % 2 == 0 { &even } else { &odd };
        let eps = 1e-14 * quarter;
        let (l, h) = (lo + eps, hi - if hi == qmax { 0.0 } else { eps });
        if f(l) < 0.0 && f(h) > 0.0 {
            let q = bisect(f, l, h);
            out.push(q * q - v0);
        }
        n += 1;
    }
    out.sort_by(f64::total_cmp);
    out
}

/// Exact ℓ = 0 ground state of the Klein-Gordon Coulomb problem.
pub fn kg_coulomb_ground_state(charge: f64, m: f64) -> f64 {
    let delta = 0.5 - (0.25 - charge * charge).sqrt();
    m / (1.0 + charge * charge / ((1.0 - delta) * (1.0 - delta))).sqrt()
}

/// Dirichlet box [−L, L]: k-th level (kπ/2L)².
pub fn box_level(k: usize, half_length: f64) -> f64 {
    let w = k as f64 * PI / (2.0 * half_length);
    w * w
}

pub const ZETA_AT_ONE: f64 = 1.0907025731743183;
pub const PSI_AT_HALF_PI: f64 = 0.09199966835037524;
pub const KERNEL_X1_L4: f64 = 0.033833820809153176;
pub const WELL_S_LAMBDA: f64 = 3.1606027941427883;
pub const SQRT_17: f64 = 4.123105625617661;
pub const KG_COULOMB_E_01: f64 = 0.994936153005124;
